//! `jetdiff`: batch front end. Reports are JSON on stdout or at `--out`.
//!
//! Exit codes: 0 pass, 1 fail, 2 inconclusive, 3 input error, 4 spec violation.

use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgAction, Args, Parser, Subcommand};
use jetdiff_core::counting::{chi_cross_check, count_report, euler_characteristic, euler_coefficients};
use jetdiff_core::divisibility::solve;
use jetdiff_core::genericity::{full_genericity_audit, Verdict};
use jetdiff_core::injectivity::{verify_injectivity_theorem, GateOptions};
use jetdiff_core::jetbuilder::{JetSpec, SurfacePair};
use jetdiff_core::polyring::format_rational;
use jetdiff_core::sampling::{random_field, random_poly, random_surface, DEFAULT_SEED};
use jetdiff_core::surfacecharts::{full_chart_transfer, restrict_to_surface, verify_derivative_transfer, verify_infinity_exponents, Chart};
use jetdiff_core::Error;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "jetdiff", version, about = "Exact jet differentials on the surfaces z^d = R(x,y), t^e = S(x,y)")]
struct Cli {
    /// Random seed; defaults to a fixed constant.
    #[arg(long, global = true, env = "JETDIFF_SEED")]
    seed: Option<u64>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(short, long, global = true, action = ArgAction::Count)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Certify the generic-position hypotheses for a surface file.
    Audit {
        #[arg(long)]
        surface: PathBuf,
    },
    /// Solve the divisibility system and certify every kernel vector.
    Solve(SolveArgs),
    /// Run the injectivity, transfer and restriction suites.
    Verify(VerifyArgs),
    /// Closed-form counts for degrees d, e.
    Count {
        #[arg(long)]
        d: u64,
        #[arg(long)]
        e: u64,
        #[arg(long)]
        m: Option<u64>,
        #[arg(long)]
        a: Option<u64>,
        #[arg(long)]
        c: Option<u64>,
    },
    /// The Euler characteristic formula and its m = 0 cross-check.
    Chi {
        #[arg(long)]
        d: i64,
        #[arg(long)]
        e: i64,
        #[arg(long)]
        m: Option<i64>,
    },
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long)]
    surface: PathBuf,
    #[arg(long, default_value_t = 1)]
    m: u32,
    /// Vanishing order along y = 0; defaults to d.
    #[arg(long)]
    c: Option<u32>,
    /// Degree cap on the coefficients; defaults to max(0, c - 4m).
    #[arg(long)]
    a: Option<u32>,
    /// Solve even if the genericity audit does not pass.
    #[arg(long)]
    force: bool,
    /// Refuse specs with a > c - 4m.
    #[arg(long)]
    require_infinity: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    injectivity: bool,
    #[arg(long)]
    transfer: bool,
    #[arg(long)]
    restriction: bool,
    /// Surface file; a seeded generic surface of degrees (d, e) otherwise.
    #[arg(long)]
    surface: Option<PathBuf>,
    #[arg(long, default_value_t = 3)]
    d: u32,
    #[arg(long)]
    e: Option<u32>,
    #[arg(long, default_value_t = 1)]
    m: u32,
    /// Defaults to d - 2 (at least 0).
    #[arg(long)]
    a: Option<u32>,
    /// Defaults to a + 4m.
    #[arg(long)]
    c: Option<u32>,
    /// Degree of the random R in the transfer suite.
    #[arg(long, default_value_t = 4)]
    deg: u32,
    #[arg(long, default_value_t = 10)]
    trials: u32,
    #[arg(long)]
    override_genericity: bool,
    #[arg(long)]
    allow_degree_cap: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Exit {
    Pass = 0,
    Fail = 1,
    Inconclusive = 2,
    Input = 3,
    Spec = 4,
}

impl Exit {
    fn from_verdict(v: Verdict) -> Self {
        match v {
            Verdict::Pass => Exit::Pass,
            Verdict::Fail => Exit::Fail,
            Verdict::Inconclusive => Exit::Inconclusive,
        }
    }

    fn of_error(e: &Error) -> Self {
        match e {
            Error::Poly(_) | Error::Surface(_) | Error::Field(_) | Error::Degenerate(_) => Exit::Input,
            Error::Spec(_) | Error::DegreeCap { .. } => Exit::Spec,
            Error::GenericityGate | Error::Matrix(_) | Error::Consistency(_) => Exit::Fail,
        }
    }

    /// Input and spec errors dominate failures, which dominate inconclusive.
    fn worst(self, other: Exit) -> Exit {
        let rank = |e: Exit| match e {
            Exit::Pass => 0,
            Exit::Inconclusive => 1,
            Exit::Fail => 2,
            Exit::Input => 3,
            Exit::Spec => 4,
        };
        if rank(other) > rank(self) {
            other
        } else {
            self
        }
    }
}

struct Failure {
    code: Exit,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure { code: Exit::of_error(&e), message: e.to_string() }
    }
}

fn input_error(message: String) -> Failure {
    Failure { code: Exit::Input, message }
}

fn read_surface(path: &Path) -> Result<SurfacePair, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    SurfacePair::parse(&text).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn verdict_str(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "fail"
    }
}

struct Ctx {
    seed: u64,
    verbose: u8,
}

impl Ctx {
    fn note(&self, msg: &str) {
        if self.verbose > 0 {
            eprintln!("jetdiff: {msg}");
        }
    }
}

fn cmd_audit(ctx: &Ctx, surface: &Path) -> Result<(Value, Exit), Failure> {
    let surf = read_surface(surface)?;
    let report = full_genericity_audit(&surf, ctx.seed)?;
    ctx.note(&format!("audit verdict {}", report.verdict));
    let value = serde_json::to_value(&report).expect("report serializes");
    Ok((value, Exit::from_verdict(report.verdict)))
}

fn cmd_solve(ctx: &Ctx, args: &SolveArgs) -> Result<(Value, Exit), Failure> {
    let surf = read_surface(&args.surface)?;
    let c = args.c.unwrap_or(surf.d());
    let a = args.a.unwrap_or_else(|| c.saturating_sub(4 * args.m));
    let spec = JetSpec::new(args.m, c, a)?;
    if args.require_infinity && !spec.holomorphic_at_infinity() {
        return Err(Failure { code: Exit::Spec, message: format!("a = {a} exceeds c - 4m = {}", spec.infinity_prefactor() + i64::from(a)) });
    }
    let audit = if args.force {
        "skipped".to_string()
    } else {
        let report = full_genericity_audit(&surf, ctx.seed)?;
        if !report.pass {
            return Err(Failure {
                code: Exit::from_verdict(report.verdict),
                message: format!("genericity audit is {}; rerun with --force to solve anyway", report.verdict),
            });
        }
        report.verdict.to_string()
    };
    ctx.note(&format!("solving m={} c={c} a={a}", args.m));
    let report = solve(&surf, &spec)?;
    ctx.note(&format!("kernel dimension {}", report.dimension));
    let mut value = serde_json::to_value(&report).expect("report serializes");
    value["audit"] = json!(audit);
    Ok((value, Exit::Pass))
}

fn verify_surface(ctx: &Ctx, args: &VerifyArgs) -> Result<SurfacePair, Failure> {
    if let Some(path) = &args.surface {
        return read_surface(path);
    }
    let (d, e) = (args.d, args.e.unwrap_or(args.d));
    if d == 0 || d > e {
        return Err(Failure { code: Exit::Spec, message: format!("need 1 <= d <= e, got d = {d}, e = {e}") });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
    let mut surf = random_surface(d, e, &mut rng);
    for _ in 0..16 {
        if full_genericity_audit(&surf, ctx.seed)?.pass {
            break;
        }
        surf = random_surface(d, e, &mut rng);
    }
    Ok(surf)
}

fn suite_error(e: Error) -> (Value, Exit) {
    let code = Exit::of_error(&e);
    (json!({ "verdict": "error", "error": e.to_string() }), code)
}

fn injectivity_suite(ctx: &Ctx, args: &VerifyArgs, surf: &SurfacePair) -> (Value, Exit) {
    let a = args.a.unwrap_or(surf.d().saturating_sub(2));
    let opts = GateOptions { override_genericity: args.override_genericity, allow_degree_cap: args.allow_degree_cap, seed: ctx.seed };
    let config = json!({ "d": surf.d(), "e": surf.e(), "m": args.m, "a": a, "seed": ctx.seed });
    match verify_injectivity_theorem(surf, args.m, a, &opts) {
        Ok(out) => {
            let mut v = json!({
                "config": config,
                "rank": out.rank,
                "columns": out.columns,
                "verdict": verdict_str(out.holds),
                "hypotheses_verified": out.hypotheses_verified,
                "method": out.method,
            });
            if let Some(w) = out.kernel_witness {
                v["kernel_witness"] = json!(w);
            }
            (v, if out.holds { Exit::Pass } else { Exit::Fail })
        }
        Err(e) => {
            let (mut v, code) = suite_error(e);
            v["config"] = config;
            (v, code)
        }
    }
}

fn transfer_suite(ctx: &Ctx, args: &VerifyArgs, surf: &SurfacePair) -> Result<(Value, Exit), Error> {
    let a = args.a.unwrap_or(0);
    let c = args.c.unwrap_or(a + 4 * args.m);
    let spec = JetSpec::new(args.m, c, a)?;
    let exps = verify_infinity_exponents(&spec);
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed ^ 0x7472_616e);
    let polys: Vec<_> = (0..args.trials).map(|_| random_poly(args.deg, &mut rng)).collect();
    let field = random_field(args.m, a, &mut rng);
    let mut charts = Vec::new();
    let mut code = Exit::Pass;
    for chart in Chart::ALL {
        let mut ok = true;
        for r in &polys {
            ok &= verify_derivative_transfer(r, args.deg, chart)?;
        }
        let jet = if spec.holomorphic_at_infinity() {
            Some(full_chart_transfer(&field, surf, &spec, chart)?.identity_holds)
        } else {
            None
        };
        let identity = ok && jet.unwrap_or(true);
        code = code.worst(if identity { Exit::Pass } else { Exit::Fail });
        charts.push(json!({
            "chart": chart.to_string(),
            "identity": verdict_str(identity),
            "derivative_trials": polys.len(),
            "degree": args.deg,
            "jet_identity": jet,
            "prefactor_exponent": exps.prefactor,
            "residual_min": exps.residual_min,
        }));
    }
    Ok((json!({ "config": { "m": args.m, "c": c, "a": a, "seed": ctx.seed }, "charts": charts, "verdict": verdict_str(code == Exit::Pass) }), code))
}

fn restriction_suite(ctx: &Ctx, args: &VerifyArgs, surf: &SurfacePair) -> Result<(Value, Exit), Error> {
    let a = args.a.unwrap_or(surf.d().saturating_sub(2));
    let spec = JetSpec::new(args.m, 0, a)?;
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed ^ 0x7265_7374);
    let mut exact = 0;
    for _ in 0..args.trials {
        let field = random_field(args.m, a, &mut rng);
        exact += u32::from(restrict_to_surface(&field, surf, &spec)?.exact);
    }
    let ok = exact == args.trials;
    Ok((
        json!({ "config": { "d": surf.d(), "e": surf.e(), "m": args.m, "a": a, "seed": ctx.seed }, "trials": args.trials, "exact": exact, "verdict": verdict_str(ok) }),
        if ok { Exit::Pass } else { Exit::Fail },
    ))
}

fn cmd_verify(ctx: &Ctx, args: &VerifyArgs) -> Result<(Value, Exit), Failure> {
    let all = !(args.injectivity || args.transfer || args.restriction);
    let surf = verify_surface(ctx, args)?;
    let mut report = serde_json::Map::new();
    report.insert("surface".into(), json!({ "R": surf.r().to_string(), "S": surf.s().to_string() }));
    let mut code = Exit::Pass;
    if all || args.injectivity {
        ctx.note("injectivity suite");
        let (v, c) = injectivity_suite(ctx, args, &surf);
        report.insert("injectivity".into(), v);
        code = code.worst(c);
    }
    if all || args.transfer {
        ctx.note("transfer suite");
        let (v, c) = transfer_suite(ctx, args, &surf).unwrap_or_else(suite_error);
        report.insert("transfer".into(), v);
        code = code.worst(c);
    }
    if all || args.restriction {
        ctx.note("restriction suite");
        let (v, c) = restriction_suite(ctx, args, &surf).unwrap_or_else(suite_error);
        report.insert("restriction".into(), v);
        code = code.worst(c);
    }
    report.insert("verdict".into(), json!(verdict_str(code == Exit::Pass)));
    Ok((Value::Object(report), code))
}

fn cmd_chi(d: i64, e: i64, m: Option<i64>) -> Result<(Value, Exit), Failure> {
    if d <= 0 || e <= 0 || m.is_some_and(|m| m < 0) {
        return Err(Failure { code: Exit::Spec, message: "d, e must be positive and m non-negative".into() });
    }
    let coefficients: Vec<String> = euler_coefficients(d, e).iter().map(format_rational).collect();
    let mut v = json!({ "d": d, "e": e, "coefficients": coefficients, "cross_check": chi_cross_check(d, e) });
    if let Some(m) = m {
        v["m"] = json!(m);
        v["value"] = json!(format_rational(&euler_characteristic(d, e, m)));
    }
    Ok((v, Exit::Pass))
}

/// Writes to a temporary file beside the target, then renames it into place.
fn write_atomic(path: &Path, text: &str) -> std::io::Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(text.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

fn run(cli: &Cli) -> Result<(Value, Exit), Failure> {
    let ctx = Ctx { seed: cli.seed.unwrap_or(DEFAULT_SEED), verbose: cli.verbose };
    match &cli.command {
        Command::Audit { surface } => cmd_audit(&ctx, surface),
        Command::Solve(args) => cmd_solve(&ctx, args),
        Command::Verify(args) => cmd_verify(&ctx, args),
        Command::Count { d, e, m, a, c } => {
            let report = count_report(*d, *e, *m, *a, *c)?;
            Ok((serde_json::to_value(&report).expect("report serializes"), Exit::Pass))
        }
        Command::Chi { d, e, m } => cmd_chi(*d, *e, *m),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { Exit::Input as u8 } else { 0 });
        }
    };
    match run(&cli) {
        Ok((value, code)) => {
            let text = serde_json::to_string_pretty(&value).expect("JSON renders") + "\n";
            match &cli.out {
                Some(path) => {
                    if let Err(e) = write_atomic(path, &text) {
                        eprintln!("jetdiff: {}: {e}", path.display());
                        return ExitCode::from(Exit::Input as u8);
                    }
                }
                None => print!("{text}"),
            }
            ExitCode::from(code as u8)
        }
        Err(f) => {
            eprintln!("jetdiff: {}", f.message);
            ExitCode::from(f.code as u8)
        }
    }
}
