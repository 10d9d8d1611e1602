//! `largeness` — run the counterexample constructions, replay their claims,
//! search for family witnesses, export polynomial fibers, and query the
//! implication lattice.
//!
//! Exit codes: 0 all claims verified / witness found; 1 violation or witness
//! absence; 2 inconclusive (budget or certificate exhausted); 64 malformed
//! input.

mod report;

use clap::{Args, Parser, Subcommand, ValueEnum};
use largeness::constructions::{
    centralstar_counterexample, deltastar_counterexample, ipnstar_counterexample,
    ipstar_counterexample, negative_lead_failure_region, replay_claims,
    syndetic_preservation_result, thick_block_witness_result, two_polynomial_disjoint_rows,
    BlockRule, ClaimVerdict, ConstructionResult,
};
use largeness::families::{
    block_witness_2d, find_delta_witness, find_ip_witness, pws_witness, thick_run,
};
use largeness::poly::parse_poly_expr;
use largeness::{
    poly_fiber, PlaneSet, PlaneUniverse, Rect, SearchBudget, SetDescriptor, Universe, Verdict,
    Window1D,
};
use num_bigint::BigInt;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const EXIT_OK: u8 = 0;
const EXIT_VIOLATION: u8 = 1;
const EXIT_INCONCLUSIVE: u8 = 2;
const EXIT_BAD_INPUT: u8 = 64;

/// Environment variable capping search-node counts for every bounded search.
const BUDGET_ENV: &str = "LARGENESS_BUDGET";

#[derive(Parser)]
#[command(
    name = "largeness",
    version,
    about = "Exact desk-scale experiments with largeness families over N and Z"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a construction and write its replayable result JSON.
    Construct(ConstructArgs),
    /// Replay every claim of a result file.
    Verify(VerifyArgs),
    /// Run a bounded witness search.
    Witness(WitnessArgs),
    /// Materialize a polynomial fiber over a rectangle.
    Fiber(FiberArgs),
    /// Query the family implication lattice.
    Lattice(LatticeArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Theorem {
    Thick,
    SyndeticD1,
    IpStar,
    IpnStar,
    DeltaStar,
    CentralStar,
    Remark1,
    Remark2,
}

#[derive(Clone, Copy, ValueEnum)]
enum UniverseArg {
    Naturals,
    Integers,
}

impl From<UniverseArg> for Universe {
    fn from(u: UniverseArg) -> Universe {
        match u {
            UniverseArg::Naturals => Universe::Naturals,
            UniverseArg::Integers => Universe::Integers,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum PlaneArg {
    N2,
    Z2,
}

impl From<PlaneArg> for PlaneUniverse {
    fn from(p: PlaneArg) -> PlaneUniverse {
        match p {
            PlaneArg::N2 => PlaneUniverse::NaturalsSquared,
            PlaneArg::Z2 => PlaneUniverse::IntegersSquared,
        }
    }
}

#[derive(Args)]
struct ConstructArgs {
    /// Which construction to run.
    #[arg(long, value_enum)]
    theorem: Theorem,
    /// Polynomial expression, e.g. "n^2" or "n^3-300n". Default per theorem:
    /// n^2 (remark1: n^2 and 2n^2, remark2: -n^2).
    #[arg(long, allow_hyphen_values = true)]
    poly: Option<String>,
    /// Second polynomial (remark1 only; default "2n^2").
    #[arg(long, allow_hyphen_values = true)]
    poly2: Option<String>,
    /// Size cap: window size (thick), generator count (ip-star, ipn-star,
    /// delta-star), block count (central-star, remark1), n-range cap
    /// (remark2). Default 3.
    #[arg(long, default_value_t = 3)]
    cap: u64,
    /// Set descriptor JSON file (required by syndetic-d1 and remark2).
    #[arg(long)]
    set: Option<PathBuf>,
    /// Rectangle "m_lo..m_hi,n_lo..n_hi" (required by syndetic-d1).
    #[arg(long, allow_hyphen_values = true)]
    rect: Option<String>,
    /// Base of the thick block rule a_n = base^n (thick only).
    #[arg(long, default_value_t = 2)]
    base: u64,
    /// First-coordinate cap of the excluded region (remark2 only).
    #[arg(long, default_value = "10")]
    m_cap: String,
    /// Universe for the delta-star obstruction set.
    #[arg(long, value_enum, default_value = "integers")]
    universe: UniverseArg,
    /// Output path for the result JSON.
    #[arg(long, default_value = "result.json")]
    out: PathBuf,
}

#[derive(Args)]
struct VerifyArgs {
    /// Result JSON produced by `construct`.
    input: PathBuf,
    /// Also write a machine-readable claim report.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum WitnessKind {
    /// Finite-sums witness: x_1 < ... < x_k with all subset sums in the set.
    Ip,
    /// Difference witness: all pairwise differences in the set.
    Delta,
    /// A run of consecutive members.
    ThickRun,
    /// A bounded-gap sub-window between two members.
    Pws,
    /// A fully contained square block of a plane set.
    Block2d,
}

#[derive(Args)]
struct WitnessArgs {
    #[arg(long, value_enum)]
    kind: WitnessKind,
    /// Set descriptor JSON (ip, delta, thick-run, pws).
    #[arg(long)]
    set: Option<PathBuf>,
    /// Plane set JSON (block2d).
    #[arg(long)]
    plane: Option<PathBuf>,
    /// Witness length for ip/delta searches.
    #[arg(long)]
    k: Option<u32>,
    /// Largest candidate generator for ip/delta searches.
    #[arg(long)]
    bound: Option<String>,
    /// Maximum allowed gap (pws).
    #[arg(long)]
    gap: Option<String>,
    /// Run length (thick-run), sub-window width (pws) or block side
    /// (block2d).
    #[arg(long)]
    len: Option<String>,
    /// Search window "lo..hi" (thick-run, pws).
    #[arg(long, allow_hyphen_values = true)]
    window: Option<String>,
    /// Search rectangle "m_lo..m_hi,n_lo..n_hi" (block2d).
    #[arg(long, allow_hyphen_values = true)]
    rect: Option<String>,
    /// Also write the report JSON to a file.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct FiberArgs {
    /// Base set descriptor JSON.
    #[arg(long)]
    set: PathBuf,
    /// Polynomial expression; repeat for several polynomials.
    #[arg(long = "poly", required = true, allow_hyphen_values = true)]
    polys: Vec<String>,
    /// Rectangle "m_lo..m_hi,n_lo..n_hi" to materialize.
    #[arg(long, allow_hyphen_values = true)]
    rect: String,
    /// Plane the fiber lives in.
    #[arg(long, value_enum, default_value = "n2")]
    universe: PlaneArg,
    /// CSV output path (stdout when absent). One "m,n" line per member.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Optional portable bitmap (P1) rendering of the rectangle.
    #[arg(long)]
    bitmap: Option<PathBuf>,
}

#[derive(Args)]
struct LatticeArgs {
    /// Two family names: prints whether the first implies the second.
    #[arg(long, num_args = 2, value_names = ["FROM", "TO"])]
    implies: Option<Vec<String>>,
    /// Print the full edge list.
    #[arg(long)]
    edges: bool,
    /// Depth of the materialized IP_n chains.
    #[arg(long, default_value_t = 8)]
    depth: u32,
}

/// Input or environment problems map to 64; exhausted budgets and failed
/// certificates map to 2.
enum CliError {
    BadInput(String),
    Inconclusive(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::BadInput(msg) | CliError::Inconclusive(msg) => write!(f, "{msg}"),
        }
    }
}

impl From<largeness::Error> for CliError {
    fn from(e: largeness::Error) -> Self {
        match e {
            largeness::Error::Bounds(_) | largeness::Error::Inconclusive(_) => {
                CliError::Inconclusive(e.to_string())
            }
            _ => CliError::BadInput(e.to_string()),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

fn main() -> ExitCode {
    // Flag errors are input errors: keep clap's message but exit 64 so that
    // 2 stays reserved for inconclusive outcomes.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) if err.use_stderr() => {
            err.print().expect("stderr is writable");
            return ExitCode::from(EXIT_BAD_INPUT);
        }
        Err(help_or_version) => {
            help_or_version.print().expect("stdout is writable");
            return ExitCode::from(EXIT_OK);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(CliError::BadInput(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_BAD_INPUT)
        }
        Err(CliError::Inconclusive(msg)) => {
            eprintln!("inconclusive: {msg}");
            ExitCode::from(EXIT_INCONCLUSIVE)
        }
    }
}

fn run(cli: Cli) -> CliResult<u8> {
    let budget = budget_from_env()?;
    match cli.command {
        Command::Construct(args) => construct(args, &budget),
        Command::Verify(args) => verify(args, &budget),
        Command::Witness(args) => witness(args, &budget),
        Command::Fiber(args) => fiber(args),
        Command::Lattice(args) => lattice(args),
    }
}

fn budget_from_env() -> CliResult<SearchBudget> {
    match std::env::var(BUDGET_ENV) {
        Ok(raw) => raw
            .parse::<u64>()
            .map(SearchBudget::new)
            .map_err(|_| CliError::BadInput(format!("{BUDGET_ENV}={raw:?} is not a node count"))),
        Err(_) => Ok(SearchBudget::default()),
    }
}

fn construct(args: ConstructArgs, budget: &SearchBudget) -> CliResult<u8> {
    let poly = |default: &str| -> CliResult<largeness::IntPolynomial> {
        let expr = args.poly.as_deref().unwrap_or(default);
        Ok(parse_poly_expr(expr)?)
    };
    let cap_u32 = u32::try_from(args.cap)
        .map_err(|_| CliError::BadInput(format!("cap {} out of range", args.cap)))?;

    let result: ConstructionResult = match args.theorem {
        Theorem::Thick => {
            let rule = BlockRule::new(args.base)?;
            thick_block_witness_result(&rule, &[poly("n^2")?], args.cap, budget)?
        }
        Theorem::SyndeticD1 => {
            let set = read_set(args.set.as_deref(), "syndetic-d1")?;
            let rect = parse_rect(args.rect.as_deref(), "syndetic-d1")?;
            syndetic_preservation_result(&set, &poly("n^3")?, &rect)?
        }
        Theorem::IpStar => ipstar_counterexample(&poly("n^2")?, cap_u32)?,
        Theorem::IpnStar => ipnstar_counterexample(&poly("n^2")?, cap_u32)?,
        Theorem::DeltaStar => {
            deltastar_counterexample(&poly("n^2")?, cap_u32, args.universe.into())?
        }
        Theorem::CentralStar => centralstar_counterexample(&poly("n^2")?, cap_u32, budget)?,
        Theorem::Remark1 => {
            let p1 = poly("n^2")?;
            let p2 = parse_poly_expr(args.poly2.as_deref().unwrap_or("2n^2"))?;
            two_polynomial_disjoint_rows(&p1, &p2, cap_u32, budget)?
        }
        Theorem::Remark2 => {
            let set = read_set(args.set.as_deref(), "remark2")?;
            let m_cap = parse_int(&args.m_cap)?;
            let n_cap = BigInt::from(args.cap);
            negative_lead_failure_region(&set, &poly("-n^2")?, &m_cap, &n_cap)?
        }
    };

    write_atomic(&args.out, result.to_canonical_json().as_bytes())?;
    println!(
        "wrote {} ({} claims, construction {})",
        args.out.display(),
        result.claims.len(),
        result.name
    );
    Ok(EXIT_OK)
}

fn verify(args: VerifyArgs, budget: &SearchBudget) -> CliResult<u8> {
    let raw = fs::read_to_string(&args.input)
        .map_err(|e| CliError::BadInput(format!("{}: {e}", args.input.display())))?;
    let result: ConstructionResult = serde_json::from_str(&raw)
        .map_err(|e| CliError::BadInput(format!("{}: {e}", args.input.display())))?;
    let outcomes = replay_claims(&result, budget)?;
    let rendered = report::render(&result.name, &outcomes);
    print!("{}", rendered.human);
    if let Some(path) = &args.report {
        write_atomic(path, rendered.json.as_bytes())?;
    }
    let any_violated = outcomes.iter().any(|o| o.verdict == ClaimVerdict::Violated);
    let any_inconclusive = outcomes
        .iter()
        .any(|o| o.verdict == ClaimVerdict::Inconclusive);
    Ok(if any_violated {
        EXIT_VIOLATION
    } else if any_inconclusive {
        EXIT_INCONCLUSIVE
    } else {
        EXIT_OK
    })
}

fn witness(args: WitnessArgs, budget: &SearchBudget) -> CliResult<u8> {
    let report = match args.kind {
        WitnessKind::Ip | WitnessKind::Delta => {
            let set = read_set(args.set.as_deref(), "ip/delta witness")?;
            let k = args
                .k
                .ok_or_else(|| CliError::BadInput("--k is required".into()))?;
            let bound = parse_int(
                args.bound
                    .as_deref()
                    .ok_or_else(|| CliError::BadInput("--bound is required".into()))?,
            )?;
            match args.kind {
                WitnessKind::Ip => find_ip_witness(&set, k, &bound, budget)?,
                _ => find_delta_witness(&set, k, &bound, budget)?,
            }
        }
        WitnessKind::ThickRun => {
            let set = read_set(args.set.as_deref(), "thick-run witness")?;
            let len = parse_len(args.len.as_deref())?;
            let window = parse_window(args.window.as_deref())?;
            thick_run(&set, len, &window)?
        }
        WitnessKind::Pws => {
            let set = read_set(args.set.as_deref(), "pws witness")?;
            let gap = parse_int(
                args.gap
                    .as_deref()
                    .ok_or_else(|| CliError::BadInput("--gap is required".into()))?,
            )?;
            let len = parse_int(
                args.len
                    .as_deref()
                    .ok_or_else(|| CliError::BadInput("--len is required".into()))?,
            )?;
            let window = parse_window(args.window.as_deref())?;
            pws_witness(&set, &gap, &len, &window, budget)?
        }
        WitnessKind::Block2d => {
            let path = args
                .plane
                .as_deref()
                .ok_or_else(|| CliError::BadInput("--plane is required for block2d".into()))?;
            let plane: PlaneSet = read_json(path)?;
            let len = parse_len(args.len.as_deref())?;
            let rect = parse_rect(args.rect.as_deref(), "block2d")?;
            block_witness_2d(&plane, len, &rect, budget)?
        }
    };

    let mut json = serde_json::to_string_pretty(&report)
        .map_err(|e| CliError::BadInput(format!("serialize report: {e}")))?;
    json.push('\n');
    print!("{json}");
    if let Some(path) = &args.out {
        write_atomic(path, json.as_bytes())?;
    }
    Ok(match report.verdict {
        Verdict::WitnessFound => EXIT_OK,
        Verdict::Exhausted => EXIT_VIOLATION,
        Verdict::Inconclusive => EXIT_INCONCLUSIVE,
    })
}

fn fiber(args: FiberArgs) -> CliResult<u8> {
    let set: SetDescriptor = read_json(&args.set)?;
    let polys = args
        .polys
        .iter()
        .map(|raw| Ok(parse_poly_expr(raw)?))
        .collect::<CliResult<Vec<_>>>()?;
    let rect: Rect = args
        .rect
        .parse()
        .map_err(|e: largeness::Error| CliError::from(e))?;
    let (_, points) = poly_fiber(&set, &polys, &rect, args.universe.into())?;

    let mut csv = String::new();
    for p in &points {
        csv.push_str(&format!("{},{}\n", p.m, p.n));
    }
    match &args.out {
        Some(path) => write_atomic(path, csv.as_bytes())?,
        None => print!("{csv}"),
    }
    if let Some(path) = &args.bitmap {
        write_atomic(path, render_pbm(&points, &rect)?.as_bytes())?;
    }
    Ok(EXIT_OK)
}

/// P1 portable bitmap: row n_hi at the top, columns m ascending, 1 = member.
fn render_pbm(points: &[largeness::Vector2], rect: &Rect) -> CliResult<String> {
    let width = usize::try_from(rect.m_hi() - rect.m_lo() + 1u32)
        .map_err(|_| CliError::BadInput("rectangle too wide for a bitmap".into()))?;
    let height = usize::try_from(rect.n_hi() - rect.n_lo() + 1u32)
        .map_err(|_| CliError::BadInput("rectangle too tall for a bitmap".into()))?;
    let mut grid = vec![vec![b'0'; width]; height];
    for p in points {
        let col = usize::try_from(&p.m - rect.m_lo()).expect("within rect");
        let row = usize::try_from(rect.n_hi() - &p.n).expect("within rect");
        grid[row][col] = b'1';
    }
    let mut out = format!("P1\n{width} {height}\n");
    for row in grid {
        let line: Vec<String> = row.iter().map(|b| (*b as char).to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    Ok(out)
}

fn lattice(args: LatticeArgs) -> CliResult<u8> {
    let lattice = largeness::FamilyLattice::with_depth(args.depth);
    if let Some(pair) = &args.implies {
        let from: largeness::Family = pair[0].parse()?;
        let to: largeness::Family = pair[1].parse()?;
        let implied = lattice.implies(from, to)?;
        println!("{implied}");
        return Ok(EXIT_OK);
    }
    if args.edges {
        for (src, dst) in lattice.edges() {
            println!("{src} -> {dst}");
        }
        return Ok(EXIT_OK);
    }
    Err(CliError::BadInput(
        "pass --implies FROM TO or --edges".into(),
    ))
}

fn read_set(path: Option<&Path>, context: &str) -> CliResult<SetDescriptor> {
    let path = path.ok_or_else(|| CliError::BadInput(format!("{context} requires --set")))?;
    read_json(path)
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> CliResult<T> {
    let raw = fs::read_to_string(path)
        .map_err(|e| CliError::BadInput(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&raw).map_err(|e| CliError::BadInput(format!("{}: {e}", path.display())))
}

fn parse_int(raw: &str) -> CliResult<BigInt> {
    raw.parse::<BigInt>()
        .map_err(|e| CliError::BadInput(format!("bad integer {raw:?}: {e}")))
}

fn parse_len(raw: Option<&str>) -> CliResult<u64> {
    let raw = raw.ok_or_else(|| CliError::BadInput("--len is required".into()))?;
    raw.parse::<u64>()
        .map_err(|e| CliError::BadInput(format!("bad length {raw:?}: {e}")))
}

fn parse_window(raw: Option<&str>) -> CliResult<Window1D> {
    let raw = raw.ok_or_else(|| CliError::BadInput("--window is required".into()))?;
    Ok(raw.parse::<Window1D>()?)
}

fn parse_rect(raw: Option<&str>, context: &str) -> CliResult<Rect> {
    let raw = raw.ok_or_else(|| CliError::BadInput(format!("{context} requires --rect")))?;
    Ok(raw.parse::<Rect>()?)
}

/// Writes through a temporary sibling and renames, so partial artifacts are
/// never observed.
fn write_atomic(path: &Path, bytes: &[u8]) -> CliResult<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = PathBuf::from(tmp);
    fs::write(&tmp, bytes).map_err(|e| CliError::BadInput(format!("{}: {e}", tmp.display())))?;
    fs::rename(&tmp, path).map_err(|e| CliError::BadInput(format!("{}: {e}", path.display())))?;
    Ok(())
}
