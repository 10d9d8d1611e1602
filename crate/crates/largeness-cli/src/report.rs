//! Claim report rendering: one human line per claim plus a deterministic
//! JSON document.

use largeness::constructions::{ClaimOutcome, ClaimVerdict};
use serde::Serialize;

pub struct Rendered {
    pub human: String,
    pub json: String,
}

#[derive(Serialize)]
struct ReportJson<'a> {
    construction: &'a str,
    claims: &'a [ClaimOutcome],
    summary: Summary,
}

#[derive(Serialize)]
struct Summary {
    total: usize,
    verified: usize,
    violated: usize,
    inconclusive: usize,
}

pub fn render(construction: &str, outcomes: &[ClaimOutcome]) -> Rendered {
    let mut human = String::new();
    let mut verified = 0;
    let mut violated = 0;
    let mut inconclusive = 0;
    for outcome in outcomes {
        let word = match outcome.verdict {
            ClaimVerdict::Verified => {
                verified += 1;
                "verified"
            }
            ClaimVerdict::Violated => {
                violated += 1;
                "VIOLATED"
            }
            ClaimVerdict::Inconclusive => {
                inconclusive += 1;
                "inconclusive"
            }
        };
        human.push_str(&format!(
            "claim {}: {word} — {}\n",
            outcome.label, outcome.detail
        ));
    }
    if outcomes.is_empty() {
        human.push_str("no claims\n");
    } else if violated == 0 && inconclusive == 0 {
        human.push_str(&format!("claims: {verified}/{} verified\n", outcomes.len()));
    } else {
        human.push_str(&format!(
            "claims: {verified} verified, {violated} violated, {inconclusive} inconclusive of {}\n",
            outcomes.len()
        ));
    }

    let report = ReportJson {
        construction,
        claims: outcomes,
        summary: Summary {
            total: outcomes.len(),
            verified,
            violated,
            inconclusive,
        },
    };
    let mut json = serde_json::to_string_pretty(&report).expect("serializable report");
    json.push('\n');
    Rendered { human, json }
}
