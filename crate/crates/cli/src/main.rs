//! `outerstring`: validation, analysis, extraction, bounds, generation and rendering
//! of grounded curve families. JSON goes to stdout, diagnostics to stderr.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use outerstring::bounds::explicit_chi_bound;
use outerstring::extract::{
    attempt_bracket_system, attempt_clique_system, bfs_supported, find_skeleton_supported, mcguinness, BoundParams,
    ExtractError, ExtractionReport, HypothesisMode, Outcome, StepFailure,
};
use outerstring::gen::{figure_json, generate, GenKind, GenSpec};
use outerstring::geom::io::{family_to_json, parse_curves, FamilyFileError};
use outerstring::geom::{validate_family, CurveFamily};
use outerstring::graph::{chromatic_number, clique_number, intersection_graph};
use outerstring::render::{render_svg, RenderOptions};
use outerstring::structures::{BracketJson, Skeleton};

const SEED_OVERRIDE: &str = "OUTERSTRING_SEED_OVERRIDE";

#[derive(Parser)]
#[command(name = "outerstring", version, about = "Tools for grounded curve families")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check general position and report every violation.
    Validate { family: PathBuf },
    /// Size, clique number and chromatic number with witnesses.
    Stats { family: PathBuf },
    /// Run an extraction procedure and print its report.
    Extract {
        procedure: Procedure,
        family: PathBuf,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Search for a skeleton supporting a subfamily with χ > α.
    Skeleton {
        family: PathBuf,
        #[arg(long, default_value_t = 0)]
        alpha: u64,
    },
    /// The χ-bound certified for clique number k.
    Bounds {
        #[arg(long)]
        k: u64,
    },
    /// Write a random family, or a figure transcription with `--kind figure --n <1..4>`.
    Generate {
        #[arg(long, value_enum, default_value_t = Kind::Segments)]
        kind: Kind,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 4)]
        bends: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        grid: i64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw the family as SVG.
    Render {
        family: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Comma-separated curve ids.
        #[arg(long, value_delimiter = ',')]
        highlight: Vec<String>,
        /// Skeleton JSON: {"u", "v", "supports"}.
        #[arg(long)]
        skeleton: Option<PathBuf>,
        /// Bracket JSON {"P", "S"}, or an array of them.
        #[arg(long)]
        bracket: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Procedure {
    Mcguinness,
    Bfs,
    BracketSystem,
    CliqueSystem,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Segments,
    Polylines,
    Figure,
}

#[derive(Clone, Copy, ValueEnum)]
enum Hypothesis {
    Search,
    Proof,
}

#[derive(clap::Args)]
struct ParamArgs {
    #[arg(long, default_value_t = 0)]
    alpha: u64,
    #[arg(long, default_value_t = 0)]
    beta: u64,
    #[arg(long, default_value_t = 2)]
    k: u64,
    #[arg(long, default_value_t = 1)]
    xi: u64,
    #[arg(long, default_value_t = 2)]
    t: u64,
    #[arg(long, default_value_t = 0)]
    n: u64,
    /// Surrogate for γ.
    #[arg(long)]
    gamma: Option<u64>,
    /// Surrogates for β₀..β_{k+1}, comma-separated.
    #[arg(long, value_delimiter = ',')]
    betas: Option<Vec<u64>>,
    /// Surrogate thresholds of the nested skeleton chain, comma-separated.
    #[arg(long, value_delimiter = ',')]
    skeleton_chain: Option<Vec<u64>>,
    /// Surrogate for the gap between clique anchors.
    #[arg(long)]
    gap: Option<u64>,
    #[arg(long, value_enum, default_value_t = Hypothesis::Search)]
    hypothesis: Hypothesis,
}

impl ParamArgs {
    fn params(&self) -> BoundParams {
        BoundParams {
            k: self.k,
            xi: self.xi,
            alpha: self.alpha,
            beta: self.beta,
            n: self.n,
            t: self.t,
            gamma: self.gamma,
            betas: self.betas.clone(),
            skeleton_chain: self.skeleton_chain.clone(),
            gap: self.gap,
            hypothesis: match self.hypothesis {
                Hypothesis::Search => HypothesisMode::Search,
                Hypothesis::Proof => HypothesisMode::Proof,
            },
        }
    }
}

/// Failure with its exit code: 1 for bad input, 2 for bad usage.
struct Failure(u8, String);

type Res<T> = Result<T, Failure>;

fn input(msg: impl Into<String>) -> Failure {
    Failure(1, msg.into())
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure(2, msg.into())
}

fn read(path: &Path) -> Res<String> {
    fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Res<CurveFamily> {
    let text = read(path)?;
    let curves = parse_curves(&text).map_err(|e| input(format!("{}: {e}", path.display())))?;
    validate_family(curves).map_err(|vs| {
        let lines: Vec<String> = vs.iter().map(|v| format!("  {v}")).collect();
        input(format!("{}: invalid family\n{}", path.display(), lines.join("\n")))
    })
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn print_json(v: &Value) {
    emit(&format!("{}\n", serde_json::to_string_pretty(v).expect("JSON serializes")));
}

fn write(path: &Path, text: &str) -> Res<()> {
    fs::write(path, text).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn precondition_report(e: ExtractError) -> ExtractionReport {
    let (threshold, measured) = match e {
        ExtractError::PreconditionFailure { reason, measured } => (reason, measured),
        other => (other.to_string(), 0),
    };
    ExtractionReport {
        outcome: Outcome::StepFailure,
        steps: Vec::new(),
        failure: Some(StepFailure {
            step: "precondition".into(),
            threshold,
            measured,
        }),
        structure: None,
    }
}

fn validate(path: &Path) -> Res<()> {
    let text = read(path)?;
    let curves = match parse_curves(&text) {
        Ok(c) => c,
        Err(e @ FamilyFileError::Json { .. }) | Err(e @ FamilyFileError::Coordinate { .. }) => {
            print_json(&json!({ "valid": false, "error": e.to_string() }));
            return Err(input(e.to_string()));
        }
        Err(e) => return Err(input(e.to_string())),
    };
    match validate_family(curves) {
        Ok(f) => {
            print_json(&json!({ "valid": true, "n": f.len() }));
            Ok(())
        }
        Err(vs) => {
            let list: Vec<Value> = vs
                .iter()
                .map(|v| json!({ "kind": v.kind_name(), "message": v.to_string() }))
                .collect();
            print_json(&json!({ "valid": false, "violations": list }));
            Err(input(format!("{} violation(s)", vs.len())))
        }
    }
}

fn stats(path: &Path) -> Res<()> {
    let f = load(path)?;
    let g = intersection_graph(&f);
    let (omega, clique) = clique_number(&g);
    let (chi, coloring) = chromatic_number(&g);
    let classes: Vec<Vec<String>> = coloring
        .classes()
        .into_iter()
        .map(|c| c.into_iter().map(|v| g.id(v).to_string()).collect())
        .collect();
    print_json(&json!({
        "n": f.len(),
        "omega": omega,
        "chi": chi,
        "clique": clique,
        "coloring": classes,
    }));
    Ok(())
}

fn extract(procedure: Procedure, path: &Path, args: &ParamArgs) -> Res<()> {
    let f = load(path)?;
    let params = args.params();
    params.validate().map_err(|e| usage(e.to_string()))?;
    let report = match procedure {
        Procedure::Mcguinness => match mcguinness(&f, args.alpha, args.beta) {
            Ok((_, r)) => r,
            Err(e) => precondition_report(e),
        },
        Procedure::Bfs => match bfs_supported(&f) {
            Ok(r) => r.report,
            Err(e) => precondition_report(e),
        },
        Procedure::BracketSystem => attempt_bracket_system(&f, &params),
        Procedure::CliqueSystem => attempt_clique_system(&f, args.t, args.n, &params),
    };
    if let Some(fail) = &report.failure {
        eprintln!("step {} failed: {} (measured {})", fail.step, fail.threshold, fail.measured);
    }
    emit(&report.to_json());
    Ok(())
}

fn skeleton(path: &Path, alpha: u64) -> Res<()> {
    let f = load(path)?;
    match find_skeleton_supported(&f, alpha) {
        Some((sk, p)) => print_json(&json!({ "found": true, "skeleton": sk, "supported": p })),
        None => {
            eprintln!("no skeleton supports a subfamily with χ > {alpha}");
            print_json(&json!({ "found": false }));
        }
    }
    Ok(())
}

fn generate_cmd(kind: Kind, n: usize, bends: usize, seed: u64, grid: i64, out: Option<&Path>) -> Res<()> {
    let seed = match std::env::var(SEED_OVERRIDE) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| usage(format!("{SEED_OVERRIDE} must be an unsigned integer, got {v:?}")))?,
        Err(_) => seed,
    };
    let text = if kind == Kind::Figure {
        let which = u8::try_from(n).ok().filter(|w| (1..=4).contains(w));
        which
            .and_then(figure_json)
            .ok_or_else(|| usage("figures are numbered 1 to 4"))?
            .to_string()
    } else {
        let spec = GenSpec {
            kind: if kind == Kind::Segments { GenKind::Segments } else { GenKind::Polylines },
            n,
            bends: if kind == Kind::Segments { 2 } else { bends },
            seed,
            grid,
        };
        let f = generate(&spec).map_err(|e| usage(e.to_string()))?;
        family_to_json(&f)
    };
    match out {
        Some(p) => write(p, &text),
        None => {
            emit(&text);
            Ok(())
        }
    }
}

fn render(path: &Path, out: &Path, highlight: Vec<String>, sk: Option<&Path>, br: Option<&Path>) -> Res<()> {
    let f = load(path)?;
    let mut opts = RenderOptions {
        highlight,
        ..RenderOptions::default()
    };
    if let Some(p) = sk {
        let sk: Skeleton = serde_json::from_str(&read(p)?).map_err(|e| input(format!("{}: {e}", p.display())))?;
        sk.validate(&f).map_err(|e| input(e.to_string()))?;
        opts.skeleton = Some(sk);
    }
    if let Some(p) = br {
        let v: Value = serde_json::from_str(&read(p)?).map_err(|e| input(format!("{}: {e}", p.display())))?;
        let list = if v.is_array() { v } else { Value::Array(vec![v]) };
        opts.brackets =
            serde_json::from_value::<Vec<BracketJson>>(list).map_err(|e| input(format!("{}: {e}", p.display())))?;
    }
    for id in opts.highlight.iter().chain(opts.brackets.iter().flat_map(|b| b.p.iter().chain(&b.s))) {
        if f.get(id).is_none() {
            return Err(input(format!("unknown curve id {id}")));
        }
    }
    write(out, &render_svg(&f, &opts))
}

fn run(cli: Cli) -> Res<()> {
    match cli.command {
        Command::Validate { family } => validate(&family),
        Command::Stats { family } => stats(&family),
        Command::Extract {
            procedure,
            family,
            params,
        } => extract(procedure, &family, &params),
        Command::Skeleton { family, alpha } => skeleton(&family, alpha),
        Command::Bounds { k } => {
            if k == 0 {
                return Err(usage("k must be at least 1"));
            }
            emit(&format!("{}\n", explicit_chi_bound(k)));
            Ok(())
        }
        Command::Generate {
            kind,
            n,
            bends,
            seed,
            grid,
            out,
        } => generate_cmd(kind, n, bends, seed, grid, out.as_deref()),
        Command::Render {
            family,
            out,
            highlight,
            skeleton,
            bracket,
        } => render(&family, &out, highlight, skeleton.as_deref(), bracket.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
