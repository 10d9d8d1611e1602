//! Fuzz the witness report JSON parser.

#![no_main]

use largeness::WitnessReport;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(input) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(report) = serde_json::from_str::<WitnessReport>(input) {
        let json = serde_json::to_string(&report).expect("reports serialize");
        let back: WitnessReport = serde_json::from_str(&json).expect("canonical JSON reparses");
        assert_eq!(back, report);
    }
});
