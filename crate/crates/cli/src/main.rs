//! `onpp` — sweeps, segment plans, oracle verification, and state
//! diagnostics for entanglement-swapping chains.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use onpp_cli::csv::{self, SweepDocument};
use onpp_cli::{json, LRange, ParamKind};
use onpp_core::planner::{self, SweepModel};
use onpp_core::verify::{self, VERIFY_TOL};
use onpp_core::{BellDiagonal, ChainConvention, Robustness, WernerParam};

#[derive(Parser)]
#[command(
    name = "onpp",
    version,
    about = "Entanglement-swapping chain costs: sweeps, plans, verification, diagnostics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep the purification pair count M over switcher counts L.
    Sweep(SweepArgs),
    /// Plan one segment under the half-threshold switcher restriction.
    Plan(PlanArgs),
    /// Compare the fast fidelity maps against the density-matrix oracle.
    Verify(VerifyArgs),
    /// Report entanglement and nonlocality diagnostics of a state.
    Diagnose(DiagnoseArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelArg {
    Qnd,
    Werner,
}

impl From<ModelArg> for SweepModel {
    fn from(m: ModelArg) -> Self {
        match m {
            ModelArg::Qnd => SweepModel::Qnd,
            ModelArg::Werner => SweepModel::Werner,
        }
    }
}

#[derive(Clone, Copy, ValueEnum, Default)]
enum ConventionArg {
    #[default]
    Paper,
    Strict,
}

impl From<ConventionArg> for ChainConvention {
    fn from(c: ConventionArg) -> Self {
        match c {
            ConventionArg::Paper => ChainConvention::Paper,
            ConventionArg::Strict => ChainConvention::Strict,
        }
    }
}

#[derive(Clone, Copy, ValueEnum, Default)]
enum FormatArg {
    #[default]
    Csv,
    Json,
}

#[derive(Args)]
struct SweepArgs {
    /// Decoherence model of the elementary pairs.
    #[arg(long, value_enum)]
    model: ModelArg,
    /// Robustness R of the elementary pairs (qnd model).
    #[arg(long)]
    r: Option<f64>,
    /// Werner mixing parameter p of the elementary pairs (werner model).
    #[arg(long)]
    p: Option<f64>,
    /// Working fidelity b1; converted to the model's native parameter.
    #[arg(long)]
    b1: Option<f64>,
    /// Switcher range START..END[..STEP], inclusive.
    #[arg(long)]
    l: LRange,
    /// Chain exponent convention.
    #[arg(long, value_enum, default_value_t)]
    convention: ConventionArg,
    #[arg(long, value_enum, default_value_t)]
    format: FormatArg,
    /// Output path; stdout when omitted.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct PlanArgs {
    /// Number of elementary links in the full chain (N >= 2).
    #[arg(long)]
    n: u64,
    /// Working fidelity b1 of the elementary pairs.
    #[arg(long)]
    b1: f64,
    #[arg(long, value_enum, default_value = "werner")]
    model: ModelArg,
    #[arg(long, value_enum, default_value_t)]
    convention: ConventionArg,
    /// Explicit switcher count; evaluates the resource formula directly
    /// (requires --m).
    #[arg(long, requires = "m")]
    l: Option<u32>,
    /// Explicit pairs per segment and nesting level (requires --l).
    #[arg(long, requires = "l")]
    m: Option<u64>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Number of random state pairs to compare.
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    /// RNG seed; identical seeds reproduce reports byte for byte.
    #[arg(long, default_value_t = 42)]
    seed: u64,
}

#[derive(Args)]
struct DiagnoseArgs {
    /// Werner mixing parameter of the state to diagnose.
    #[arg(long)]
    p: Option<f64>,
    /// Explicit Bell-diagonal state "b1,b2,b3,b4".
    #[arg(long)]
    state: Option<String>,
}

const EXIT_VERIFY_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Sweep(args) => cmd_sweep(args),
        Command::Plan(args) => cmd_plan(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Diagnose(args) => cmd_diagnose(args),
    };
    match result {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

/// Resolves the mutually exclusive parameter flags into the model's native
/// parameter and the working fidelity.
fn resolve_sweep_param(
    model: SweepModel,
    r: Option<f64>,
    p: Option<f64>,
    b1: Option<f64>,
) -> Result<(ParamKind, f64, f64), String> {
    let given = [r.is_some(), p.is_some(), b1.is_some()]
        .iter()
        .filter(|&&g| g)
        .count();
    if given != 1 {
        return Err("give exactly one of --r, --p, --b1".into());
    }
    match (model, r, p, b1) {
        (SweepModel::Qnd, Some(r), _, _) => {
            let r = Robustness::new(r).map_err(|e| e.to_string())?;
            Ok((ParamKind::R, r.value(), r.fidelity()))
        }
        (SweepModel::Qnd, _, _, Some(b1)) => {
            let r = Robustness::new(2.0 * b1 - 1.0)
                .map_err(|_| format!("b1 = {b1} maps to a robustness outside [0, 1)"))?;
            Ok((ParamKind::B1, b1, r.fidelity()))
        }
        (SweepModel::Qnd, _, Some(_), _) => {
            Err("--p parameterizes the werner model; use --r or --b1 with qnd".into())
        }
        (SweepModel::Werner, _, Some(p), _) => {
            let p = WernerParam::new(p).map_err(|e| e.to_string())?;
            Ok((ParamKind::P, p.value(), BellDiagonal::from_werner(p).b1()))
        }
        (SweepModel::Werner, _, _, Some(b1)) => {
            WernerParam::new((4.0 * b1 - 1.0) / 3.0)
                .map_err(|_| format!("b1 = {b1} maps to a mixing parameter outside [0, 1]"))?;
            Ok((ParamKind::B1, b1, b1))
        }
        (SweepModel::Werner, Some(_), _, _) => {
            Err("--r parameterizes the qnd model; use --p or --b1 with werner".into())
        }
        (_, None, None, None) => unreachable!("exactly one flag was checked above"),
    }
}

fn cmd_sweep(args: SweepArgs) -> Result<ExitCode, String> {
    let model: SweepModel = args.model.into();
    let convention: ChainConvention = args.convention.into();
    let (param_kind, param_value, working_b1) =
        resolve_sweep_param(model, args.r, args.p, args.b1)?;

    let l_values = args.l.values();
    let curve = planner::sweep_m_of_l(model, working_b1, &l_values, convention)
        .map_err(|e| e.to_string())?;
    let doc = SweepDocument {
        curve,
        param_kind,
        param_value,
    };

    let rendered = match args.format {
        FormatArg::Csv => csv::render(&doc),
        FormatArg::Json => json::render(&doc),
    };
    match args.output {
        Some(path) => std::fs::write(&path, rendered)
            .map_err(|e| format!("cannot write {}: {e}", path.display()))?,
        None => print!("{rendered}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_plan(args: PlanArgs) -> Result<ExitCode, String> {
    if args.n < 2 {
        return Err("--n must be at least 2".into());
    }
    let model: SweepModel = args.model.into();
    let convention: ChainConvention = args.convention.into();

    if let (Some(l), Some(m)) = (args.l, args.m) {
        let total =
            planner::total_resources(args.n, l, m as f64).map_err(|e| e.to_string())?;
        let log10 =
            planner::total_resources_log10(args.n, l, m as f64).map_err(|e| e.to_string())?;
        println!("resource total: n={} l={l} m={m}", args.n);
        println!("n^(log_(l+1) m + 1): {total:.6}");
        println!("log10 total:         {log10:.6}");
        return Ok(ExitCode::SUCCESS);
    }

    let plan = planner::plan_segment(model, args.n, args.b1, convention)
        .map_err(|e| e.to_string())?;

    println!(
        "segment plan: model={} convention={}",
        plan.model.label(),
        plan.convention.label()
    );
    if !plan.onpp_in_validity_range {
        println!(
            "warning: working fidelity {} is not above 0.95; the switcher \
             restriction is outside its stated validity range (using l_max/2 directly)",
            plan.working_b1
        );
    }
    println!("working fidelity b1:   {:.6}", plan.working_b1);
    println!("segments n:            {}", plan.segments);
    println!("l_max:                 {:.6}", plan.l_max);
    println!("restriction (l_max/2): {:.6}", plan.l_onpp);
    if plan.onpp_allows_no_switcher {
        println!(
            "note: the restriction allows no switcher between repeaters; planning with l = 1"
        );
    }
    println!("planned switchers l:   {}", plan.l);
    println!("chain fidelity at l:   {:.6}", plan.chain_b1);
    println!("purification rounds m: {}", plan.rounds_m);
    println!("pairs per level 2^m:   {}", plan.pairs_m);
    if let Some(bound) = plan.qnd_pair_bound {
        println!("rapidity pair bound:   {bound}");
    }
    println!(
        "growth class up to l:  {}",
        plan.growth_class.map(|c| c.label()).unwrap_or("na")
    );
    println!("total resources n^(log_(l+1) m + 1): {:.6}", plan.total_resources);
    println!("log10 total:           {:.6}", plan.total_resources_log10);
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode, String> {
    if args.trials == 0 {
        return Err("--trials must be at least 1".into());
    }
    let report = verify::run(args.trials, args.seed).map_err(|e| e.to_string())?;

    println!(
        "verify: trials={} seed={} tolerance={:e}",
        report.trials, report.seed, VERIFY_TOL
    );
    println!("swap max deviation:         {:e}", report.swap_max_dev);
    println!("purify max deviation:       {:e}", report.purify_max_dev);
    println!("success-prob max deviation: {:e}", report.success_prob_max_dev);
    if report.passed() {
        println!("result: PASS");
        Ok(ExitCode::SUCCESS)
    } else {
        let (a, b) = &report.worst_swap_pair;
        println!("worst swap pair:   a={:?} b={:?}", a.as_array(), b.as_array());
        let (a, b) = &report.worst_purify_pair;
        println!("worst purify pair: a={:?} b={:?}", a.as_array(), b.as_array());
        println!("result: FAIL");
        Ok(ExitCode::from(EXIT_VERIFY_FAILED))
    }
}

fn parse_state(spec: &str) -> Result<BellDiagonal, String> {
    let parts: Vec<&str> = spec.split(',').collect();
    if parts.len() != 4 {
        return Err("--state takes four comma-separated fidelities b1,b2,b3,b4".into());
    }
    let mut b = [0.0f64; 4];
    for (slot, part) in b.iter_mut().zip(&parts) {
        *slot = part
            .trim()
            .parse()
            .map_err(|_| format!("cannot parse fidelity {part:?}"))?;
    }
    BellDiagonal::new(b[0], b[1], b[2], b[3]).map_err(|e| e.to_string())
}

fn cmd_diagnose(args: DiagnoseArgs) -> Result<ExitCode, String> {
    let (p, b1) = match (args.p, args.state) {
        (Some(p), None) => {
            let p = WernerParam::new(p).map_err(|e| e.to_string())?;
            let state = BellDiagonal::from_werner(p);
            println!("diagnose: werner p = {} (b1 = {})", p.value(), state.b1());
            (p, state.b1())
        }
        (None, Some(spec)) => {
            let state = parse_state(&spec)?;
            let p = state.to_werner().map_err(|_| {
                format!(
                    "b1 = {} is below 1/4: no Werner-equivalent parameter in [0, 1]",
                    state.b1()
                )
            })?;
            println!(
                "diagnose: state ({}, {}, {}, {}) with werner-equivalent p = {}",
                state.b1(),
                state.b2(),
                state.b3(),
                state.b4(),
                p.value()
            );
            (p, state.b1())
        }
        _ => return Err("give exactly one of --p or --state".into()),
    };

    let lambda = p.entanglement_factor();
    let chsh = p.bell_chsh_factor();
    let verdict = |yes: bool| if yes { "yes" } else { "no" };
    println!(
        "entanglement factor (1-3p)/2:  {:.6}  -> entangled: {}",
        lambda,
        verdict(lambda < 0.0)
    );
    println!(
        "chsh factor 2*sqrt(2)*p:       {:.6}  -> nonlocal: {}",
        chsh,
        verdict(chsh > 2.0)
    );
    println!("purifiable (b1 > 1/2):         {}", verdict(b1 > 0.5));
    Ok(ExitCode::SUCCESS)
}
