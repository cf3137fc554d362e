use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use gchain::functor::{compose_functors, derivative, derivatives_at, taylor};
use gchain::holim::realize::Realization;
use gchain::holim::tn::{check_oracle_range, t_n_oracle, DEFAULT_BUDGET};
use gchain::symseq::{compose, evaluate_seq, shift_base};
use gchain::verify::{run_battery, Counts, RunConfig};
use gchain::{Ctx, Error, GradedCharacter, GradedDim, PolyFunctor, SignMode, SymSeq};

/// Exit codes.
const CHECK_FAILED: u8 = 1;
const INPUT_ERROR: u8 = 2;
const BUDGET_REFUSAL: u8 = 3;
const NOT_REDUCED: u8 = 4;

#[derive(Parser)]
#[command(name = "gchain", version, about = "Exact chain-rule engine for polynomial functors")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Arity bound N.
    #[arg(long, default_value_t = 6)]
    bound: usize,
    /// Koszul-signed symmetry on odd degrees.
    #[arg(long)]
    signed: bool,
    /// Write the JSON result here instead of stdout.
    #[arg(long)]
    json_out: Option<PathBuf>,
}

impl Common {
    fn ctx(&self) -> Ctx {
        Ctx::new(self.sign(), self.bound)
    }

    fn sign(&self) -> SignMode {
        if self.signed {
            SignMode::Signed
        } else {
            SignMode::Unsigned
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Composition product A o B.
    Compose {
        a: PathBuf,
        b: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Compares d_*(FG)(X) with d_*F(GX) o d_*G(X).
    Chainrule {
        f: PathBuf,
        g: PathBuf,
        /// Base as graded dimensions, e.g. '[[0, 1], [1, 1]]'.
        #[arg(long, default_value = "[]")]
        base: String,
        #[command(flatten)]
        common: Common,
    },
    /// P_n and D_n of a functor.
    Tower {
        f: PathBuf,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        common: Common,
    },
    /// The n-th derivative at a base (verified against extraction at 0).
    Derivative {
        f: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "[]")]
        base: String,
        #[command(flatten)]
        common: Common,
    },
    /// Iterates T_n on F(X) and compares with P_nF(X).
    TnOracle {
        f: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "[[0, 1]]")]
        base: String,
        #[arg(long)]
        iterations: Option<usize>,
        /// Iterates recomputed from explicit derived limits.
        #[arg(long, default_value_t = 1)]
        explicit: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Runs the verification battery.
    Verify {
        #[arg(long, default_value_t = RunConfig::default().seed)]
        seed: u64,
        /// Only these checks (repeatable).
        #[arg(long = "check")]
        checks: Vec<String>,
        /// Corrupt compose, to see the battery catch it.
        #[arg(long)]
        mutate: bool,
        /// Small instance counts.
        #[arg(long)]
        smoke: bool,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        #[command(flatten)]
        common: Common,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BudgetExceeded(_) => BUDGET_REFUSAL,
            Error::NotReduced => NOT_REDUCED,
            Error::PathMismatch(_) => CHECK_FAILED,
            _ => INPUT_ERROR,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure {
        code: INPUT_ERROR,
        message: message.into(),
    }
}

fn read_json(path: &Path) -> Result<Value, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn read_seq(path: &Path) -> Result<SymSeq, Failure> {
    let v = read_json(path)?;
    Ok(PolyFunctor::from_json(&v)
        .map_err(|e| input_error(format!("{}: {e}", path.display())))?
        .coeffs)
}

fn read_functor(path: &Path) -> Result<PolyFunctor, Failure> {
    let v = read_json(path)?;
    let mut f = PolyFunctor::from_json(&v).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    if f.label.is_empty() {
        f.label = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
    }
    Ok(f)
}

fn parse_base(s: &str) -> Result<GradedDim, Failure> {
    serde_json::from_str(s).map_err(|e| input_error(format!("base {s:?}: {e}")))
}

fn emit(common: &Common, v: &Value) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(v).expect("serializable");
    match &common.json_out {
        Some(p) => std::fs::write(p, text + "\n").map_err(|e| input_error(format!("{}: {e}", p.display()))),
        None => {
            // a closed pipe downstream is not an error
            let _ = writeln!(std::io::stdout().lock(), "{text}");
            Ok(())
        }
    }
}

/// Per-degree comparison of two characters.
fn compare(lhs: &GradedCharacter, rhs: &GradedCharacter) -> Vec<Value> {
    let mut degrees = lhs.degrees();
    degrees.extend(rhs.degrees());
    degrees.sort_unstable();
    degrees.dedup();
    degrees
        .into_iter()
        .map(|d| {
            let (l, r) = (lhs.component(d), rhs.component(d));
            json!({"d": d, "agree": l == r, "lhs": l, "rhs": r})
        })
        .collect()
}

/// First arity whose entry is not determined by the bound, if it is needed.
fn first_unverifiable(seqs: &[&SymSeq], n: usize, base_zero: bool) -> Option<usize> {
    seqs.iter()
        .filter(|s| !s.closed())
        .map(|s| if base_zero { s.bound() + 1 } else { 1 })
        .min()
        .filter(|&k| k <= n)
}

fn cmd_compose(a: &Path, b: &Path, common: &Common) -> Result<Value, Failure> {
    let (a, b) = (read_seq(a)?, read_seq(b)?);
    let ctx = common.ctx();
    let ab = compose(&a, &b, &ctx)?;
    Ok(json!({"result": ab.to_json(), "paths_agree": true, "sign": format!("{:?}", ctx.sign).to_lowercase()}))
}

fn cmd_chainrule(f: &Path, g: &Path, base: &str, common: &Common) -> Result<(Value, bool), Failure> {
    let (f, g) = (read_functor(f)?, read_functor(g)?);
    let x = parse_base(base)?;
    let n_max = common.bound;
    if let Some(k) = first_unverifiable(&[&f.coeffs, &g.coeffs], n_max, x.is_zero()) {
        return Err(Failure {
            code: INPUT_ERROR,
            message: format!(
                "bound insufficient: d_{k}(FG)(X) needs coefficients beyond the bound of an open input; pass closed inputs or --bound {}",
                k - 1
            ),
        });
    }
    // the composite must be exact before shifting base
    let top = if x.is_zero() {
        n_max
    } else {
        n_max.max(f.coeffs.degree() * g.coeffs.degree())
    };
    let ctx = Ctx::new(common.sign(), top);
    let xl = x.to_laurent();
    let fg = compose_functors(&f, &g, &ctx)?;
    let lhs = derivatives_at(&fg, &xl, &ctx)?.seq;
    let gx = evaluate_seq(&g.coeffs, &xl, &ctx);
    let outer = shift_base(&f.coeffs, &gx, &ctx)?.seq;
    let inner = shift_base(&g.coeffs, &xl, &ctx)?.seq;
    let rhs = compose(&outer, &inner, &ctx)?;
    let mut passed = true;
    let per_n: Vec<Value> = (1..=n_max)
        .map(|n| {
            let (l, r) = (lhs.entry(n), rhs.entry(n));
            passed &= l == r;
            json!({"n": n, "agree": l == r, "degrees": compare(&l, &r)})
        })
        .collect();
    for row in &per_n {
        eprintln!(
            "n = {}: {}",
            row["n"],
            if row["agree"] == true { "agree" } else { "DIFFER" }
        );
    }
    Ok((
        json!({"f": f.label, "g": g.label, "base": x, "passed": passed, "derivatives": per_n}),
        passed,
    ))
}

fn cmd_tower(f: &Path, n: usize, common: &Common) -> Result<Value, Failure> {
    let f = read_functor(f)?;
    let slices = (0..=n).map(|k| taylor(&f, k)).collect::<Result<Vec<_>, _>>()?;
    let ctx = common.ctx();
    let rows: Vec<Value> = slices
        .iter()
        .map(|s| {
            json!({
                "n": s.n,
                "P": s.p.coeffs.to_json(),
                "D": s.d.coeffs.to_json(),
                "split_exact": s.is_split_exact(),
                "P_at_line": s.p.evaluate(&gchain::Laurent::one(), &ctx),
            })
        })
        .collect();
    Ok(json!({"functor": f.label, "tower": rows}))
}

fn cmd_derivative(f: &Path, n: usize, base: &str, common: &Common) -> Result<Value, Failure> {
    let f = read_functor(f)?;
    let x = parse_base(base)?;
    let ctx = common.ctx();
    if x.is_zero() {
        let d = derivative(&f, n, &ctx)?;
        return Ok(json!({"functor": f.label, "n": n, "base": x, "derivative": d.to_degree_json(), "verified": true}));
    }
    let shifted = derivatives_at(&f, &x.to_laurent(), &ctx)?;
    Ok(json!({
        "functor": f.label,
        "n": n,
        "base": x,
        "derivative": shifted.seq.entry(n).to_degree_json(),
        "warning": shifted.warning,
    }))
}

fn cmd_tn(
    f: &Path,
    n: usize,
    base: &str,
    iterations: Option<usize>,
    explicit: usize,
    budget: usize,
) -> Result<(Value, bool), Failure> {
    let v = read_json(f)?;
    let r = Realization::from_json(&v).map_err(|e| match e {
        Error::BudgetExceeded(_) => Failure::from(e),
        e => input_error(format!("{}: {e}", f.display())),
    })?;
    let x = parse_base(base)?;
    check_oracle_range(&r, &x, n)?;
    let report = t_n_oracle(&r, &x, n, iterations, explicit, budget)?;
    let passed = report.passed;
    Ok((serde_json::to_value(&report).expect("serializable"), passed))
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    seed: u64,
    checks: Vec<String>,
    mutate: bool,
    smoke: bool,
    budget: usize,
    common: &Common,
) -> Result<(Value, bool), Failure> {
    let cfg = RunConfig {
        seed,
        bound: common.bound,
        sign: common.sign(),
        counts: if smoke { Counts::smoke() } else { Counts::default() },
        budget,
        mutate,
        only: checks,
    };
    let report = run_battery(&cfg)?;
    for c in &report.checks {
        eprintln!(
            "{:2} {:<22} {} {:>5} instances {:>4} failed  {:.2}s",
            c.criterion,
            c.name,
            if c.passed() { "pass" } else { "FAIL" },
            c.instances,
            c.failed,
            c.wall.as_secs_f64()
        );
    }
    let passed = report.passed;
    Ok((
        serde_json::from_str(&report.to_json_string()).expect("valid json"),
        passed,
    ))
}

fn run(cli: Cli) -> Result<bool, Failure> {
    let (value, passed, common) = match cli.command {
        Command::Compose { a, b, common } => (cmd_compose(&a, &b, &common)?, true, common),
        Command::Chainrule { f, g, base, common } => {
            let (v, p) = cmd_chainrule(&f, &g, &base, &common)?;
            (v, p, common)
        }
        Command::Tower { f, n, common } => (cmd_tower(&f, n, &common)?, true, common),
        Command::Derivative { f, n, base, common } => (cmd_derivative(&f, n, &base, &common)?, true, common),
        Command::TnOracle {
            f,
            n,
            base,
            iterations,
            explicit,
            budget,
            common,
        } => {
            let (v, p) = cmd_tn(&f, n, &base, iterations, explicit, budget)?;
            (v, p, common)
        }
        Command::Verify {
            seed,
            checks,
            mutate,
            smoke,
            budget,
            common,
        } => {
            let (v, p) = cmd_verify(seed, checks, mutate, smoke, budget, &common)?;
            (v, p, common)
        }
    };
    emit(&common, &value)?;
    Ok(passed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let result = run(cli);
    eprintln!("wall time {:.3}s", start.elapsed().as_secs_f64());
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(CHECK_FAILED),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
