//! The `flatdim` command line: JSON problem files in, text or JSON reports
//! out. Exit codes are 0 for an answer, 1 for bad input, 2 for a resource
//! cap and 3 for an internal consistency failure.

pub mod problem;
pub mod report;

use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::detector::{
    cr_upper_bound, detect_flat_dimension, flatdim_oracle, loewy_bounds_koszul, remark_example, verify_tor_decomposition,
    verify_window_collapse, DetectOptions, FlatDimVerdict, Leg, Outcome,
};
use crate::error::{Error, Result};
use crate::frobenius::{kunz_test, tor_frobenius};
use crate::homological::{homology, koszul_complex, minimal_free_resolution, semifree_resolution, sup_homology, BettiTable};
use crate::invariants::find_sop;
use crate::poly::{Limits, Polynomial};

pub use problem::{ComplexSpec, Input, ModuleSpec, Options, Problem, ProblemFile};
use report::Report;

pub const ENV_MAX_DEGREE: &str = "FLATDIM_MAX_DEGREE";
pub const ENV_MAX_BASIS: &str = "FLATDIM_MAX_BASIS";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Frobenius,
    Oracle,
    Both,
}

#[derive(Parser, Debug)]
#[command(name = "flatdim", version, about = "Finite flat dimension over graded rings of prime characteristic")]
pub struct Cli {
    /// Output format; defaults to the file's `options.format`, then text.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Largest monomial degree (env FLATDIM_MAX_DEGREE).
    #[arg(long, global = true)]
    pub max_degree: Option<u32>,
    /// Largest Gröbner basis size (env FLATDIM_MAX_BASIS).
    #[arg(long, global = true)]
    pub max_basis: Option<usize>,
    /// Seed for the system-of-parameters search.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Add wall-clock timings to the report.
    #[arg(long, global = true)]
    pub timings: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Dimension, depth, multiplicity, Cohen-Macaulayness and the Kunz test.
    RingInfo {
        /// Problem file (JSON).
        file: PathBuf,
    },
    /// Betti table of a minimal free resolution.
    Resolve {
        /// Problem file (JSON).
        file: PathBuf,
        /// Number of steps; defaults to the number of variables plus one.
        #[arg(long)]
        length: Option<usize>,
    },
    /// `Tor_i(M, R through f^e)` for a range of `i` and `e`.
    TorFrob {
        /// Problem file (JSON).
        file: PathBuf,
        /// Frobenius exponents, comma separated.
        #[arg(long, value_delimiter = ',')]
        e: Vec<u32>,
        /// Lowest homological degree.
        #[arg(long)]
        lo: Option<i64>,
        /// Highest homological degree.
        #[arg(long)]
        hi: Option<i64>,
    },
    /// Decide whether the flat dimension is finite.
    Flatdim {
        /// Problem file (JSON).
        file: PathBuf,
        /// Frobenius test, resolution oracle, or both with a comparison.
        #[arg(long, value_enum, default_value = "frobenius")]
        method: Method,
        /// Frobenius exponents; defaults to the least `e` with `p^e >= e(R)`.
        #[arg(long, value_delimiter = ',')]
        e: Vec<u32>,
        /// Window start; defaults to one past the top homology.
        #[arg(long)]
        t: Option<i64>,
        /// Window length; defaults to `dim R`.
        #[arg(long)]
        window: Option<usize>,
        /// Consult the resolution oracle when the Frobenius test is inconclusive.
        #[arg(long)]
        oracle_fallback: bool,
    },
    /// Homology of `K(y; M)`; `y` defaults to a system of parameters.
    Koszul {
        /// Problem file (JSON).
        file: PathBuf,
        /// The sequence `y`, comma separated; defaults to a system of parameters.
        #[arg(long, value_delimiter = ',')]
        y: Vec<String>,
    },
    /// Loewy-length bounds for `K(y; R)`.
    LoewyBounds {
        /// Problem file (JSON).
        file: PathBuf,
        /// The sequence `y`, comma separated; defaults to a system of parameters.
        #[arg(long, value_delimiter = ',')]
        y: Vec<String>,
    },
    /// An upper bound on `c(R)`.
    CrBound {
        /// Problem file (JSON).
        file: PathBuf,
        /// Systems of parameters to try.
        #[arg(long, default_value_t = 4)]
        trials: usize,
    },
    /// Check a structural statement on an instance.
    Verify {
        #[command(subcommand)]
        check: VerifyCommand,
    },
    /// The family `F_p[x,y]/(x^n y, y^2)` with parameter `x`.
    RemarkExample {
        /// Exponent of `x` in `x^n y`.
        #[arg(long)]
        n: u32,
        /// Characteristic.
        #[arg(long, default_value_t = 2)]
        p: u64,
    },
}

#[derive(Subcommand, Debug)]
pub enum VerifyCommand {
    /// Dimensions of `Tor_n(M, K(y; R) through f^e)` against Betti numbers
    /// times Koszul homology.
    TorDecomposition {
        /// Problem file (JSON).
        file: PathBuf,
        /// Frobenius exponent; defaults to 1.
        #[arg(long)]
        e: Option<u32>,
        /// The sequence `y`, comma separated.
        #[arg(long, value_delimiter = ',')]
        y: Vec<String>,
        /// Check degrees `0..=range`.
        #[arg(long, default_value_t = 4)]
        range: usize,
    },
    /// Consequences of a vanishing Tor window.
    WindowCollapse {
        /// Problem file (JSON).
        file: PathBuf,
        /// Frobenius exponent; defaults to 1.
        #[arg(long)]
        e: Option<u32>,
        /// Window start; defaults to 1.
        #[arg(long)]
        t: Option<i64>,
    },
}

/// What a run prints and how it exits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunOutput {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Limit(_) => 2,
        Error::Consistency(_) => 3,
        _ => 1,
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::RingMismatch(_) => "ring-mismatch",
        Error::Limit(_) => "limit",
        Error::Input(_) => "input",
        Error::Parse { .. } => "parse",
        Error::Precondition(_) => "precondition",
        Error::Consistency(_) => "consistency",
    }
}

fn env_limit<T: std::str::FromStr>(name: &str) -> Result<Option<T>> {
    match std::env::var(name) {
        Ok(s) => s.trim().parse().map(Some).map_err(|_| Error::Input(format!("{name}={s:?} is not a valid limit"))),
        Err(_) => Ok(None),
    }
}

struct Context {
    file: Option<ProblemFile>,
    limits: Limits,
    seed: u64,
}

impl Context {
    fn options(&self) -> Options {
        self.file.as_ref().map(|f| f.options.clone()).unwrap_or_default()
    }

    fn problem(&self) -> Result<Problem> {
        self.file.as_ref().expect("command reads a file").load(self.limits)
    }
}

fn command_file(c: &Command) -> Option<&PathBuf> {
    match c {
        Command::RingInfo { file }
        | Command::Resolve { file, .. }
        | Command::TorFrob { file, .. }
        | Command::Flatdim { file, .. }
        | Command::Koszul { file, .. }
        | Command::LoewyBounds { file, .. }
        | Command::CrBound { file, .. } => Some(file),
        Command::Verify { check: VerifyCommand::TorDecomposition { file, .. } | VerifyCommand::WindowCollapse { file, .. } } => Some(file),
        Command::RemarkExample { .. } => None,
    }
}

/// Parses arguments (including the program name) and runs one command.
pub fn run<I, T>(args: I) -> RunOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let text = e.render().to_string();
            return if code == 0 {
                RunOutput { stdout: text, stderr: String::new(), code }
            } else {
                RunOutput { stdout: String::new(), stderr: text, code }
            };
        }
    };
    run_cli(&cli)
}

pub fn run_cli(cli: &Cli) -> RunOutput {
    let file = match command_file(&cli.command).map(read_problem).transpose() {
        Ok(f) => f,
        Err(e) => return failure(&e, cli.format.unwrap_or(Format::Text)),
    };
    let file_opts = file.as_ref().map(|f| f.options.clone()).unwrap_or_default();
    let format = match (cli.format, file_opts.format.as_deref()) {
        (Some(f), _) => f,
        (None, Some("json")) => Format::Json,
        (None, Some("text") | None) => Format::Text,
        (None, Some(other)) => return failure(&Error::Input(format!("unknown format {other:?} in options")), Format::Text),
    };
    let limits = match resolve_limits(cli, &file_opts) {
        Ok(l) => l,
        Err(e) => return failure(&e, format),
    };
    let ctx = Context { file, limits, seed: cli.seed.or(file_opts.seed).unwrap_or(0) };
    let start = Instant::now();
    match dispatch(&cli.command, &ctx) {
        Ok((value, code)) => {
            let mut value = value;
            if cli.timings {
                if let Value::Object(m) = &mut value {
                    m.insert("timings".into(), json!({ "elapsed_ms": start.elapsed().as_millis() as u64 }));
                }
            }
            let stdout = match format {
                Format::Json => report::render_json(&value),
                Format::Text => report::render_text(&value),
            };
            RunOutput { stdout, stderr: String::new(), code }
        }
        Err(e) => failure(&e, format),
    }
}

fn resolve_limits(cli: &Cli, opts: &Options) -> Result<Limits> {
    let d = Limits::default();
    let max_degree = match cli.max_degree.or(opts.max_degree) {
        Some(v) => v,
        None => env_limit(ENV_MAX_DEGREE)?.unwrap_or(d.max_degree),
    };
    let max_basis = match cli.max_basis.or(opts.max_basis) {
        Some(v) => v,
        None => env_limit(ENV_MAX_BASIS)?.unwrap_or(d.max_basis),
    };
    Ok(Limits { max_degree, max_basis })
}

fn read_problem(path: &PathBuf) -> Result<ProblemFile> {
    let src = std::fs::read_to_string(path).map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
    ProblemFile::from_json(&src).map_err(|e| match e {
        Error::Parse { position, message } => Error::Parse { position, message: format!("{}: {message}", path.display()) },
        other => other,
    })
}

fn failure(e: &Error, format: Format) -> RunOutput {
    let stdout = match format {
        Format::Json => report::render_json(&json!({ "error": { "kind": error_kind(e), "message": e.to_string() } })),
        Format::Text => String::new(),
    };
    RunOutput { stdout, stderr: format!("error: {e}\n"), code: exit_code(e) }
}

fn parse_sequence(p: &Problem, src: &[String], seed: u64) -> Result<Vec<Polynomial>> {
    if src.is_empty() {
        return Ok(find_sop(&p.ring, seed)?.elements);
    }
    src.iter().map(|s| p.ring.parse_poly(s)).collect()
}

fn pick_y(cli_y: &[String], opts: &Options) -> Vec<String> {
    if cli_y.is_empty() {
        opts.y.clone().unwrap_or_default()
    } else {
        cli_y.to_vec()
    }
}

fn pick_e(cli_e: &[u32], opts: &Options) -> Option<Vec<u32>> {
    if cli_e.is_empty() {
        opts.e.as_ref().map(|e| e.to_vec())
    } else {
        Some(cli_e.to_vec())
    }
}

fn base_report(name: &str, extra: Value, p: Option<&Problem>) -> Result<Report> {
    let mut cmd = json!({ "name": name });
    if let (Value::Object(c), Value::Object(x)) = (&mut cmd, extra) {
        c.extend(x);
    }
    let mut r = Report::new(cmd);
    if let Some(p) = p {
        let inv = p.ring.invariants()?;
        r.set("ring", report::ring(&p.ring, inv));
        match &p.input {
            Input::Module(m) => r.set("module", report::presentation(m)),
            Input::Complex(c) => r.set(
                "complex",
                json!({ "range": [c.lo(), c.hi()], "ranks": c.ranks(), "differentials": c.differentials().iter().map(report::matrix).collect::<Vec<_>>() }),
            ),
            Input::None => {}
        }
    }
    Ok(r)
}

fn verdict_code(v: &FlatDimVerdict) -> i32 {
    match &v.outcome {
        Outcome::Inconclusive { reason } if reason.starts_with("resource cap") => 2,
        _ => 0,
    }
}

fn dispatch(cmd: &Command, ctx: &Context) -> Result<(Value, i32)> {
    let opts = ctx.options();
    match cmd {
        Command::RingInfo { .. } => {
            let p = ctx.problem()?;
            let mut r = base_report("ring-info", json!({}), Some(&p))?;
            let kunz = kunz_test(&p.ring)?;
            let mut k = json!({ "regular": kunz.regular });
            if let Some(w) = &kunz.witness {
                k["witness"] = report::tor_cell(w);
            }
            r.set("kunz", k);
            r.set("resources", json!({ "ring_basis_size": p.ring.ideal_basis().len() }));
            Ok((r.value(), 0))
        }
        Command::Resolve { length, .. } => {
            let p = ctx.problem()?;
            let length = length.or(opts.length).unwrap_or(p.ring.nvars() + 1);
            let mut r = base_report("resolve", json!({ "length": length }), Some(&p))?;
            match &p.input {
                Input::Complex(c) => {
                    let res = semifree_resolution(c, length)?;
                    let shifts: Vec<Vec<i64>> = (res.lo()..=res.hi()).map(|i| res.shifts(i).to_vec()).collect();
                    r.set(
                        "resolution",
                        json!({
                            "minimal": false,
                            "lo": res.lo(),
                            "ranks": res.ranks(),
                            "betti": report::betti(&BettiTable::from_shifts(&shifts)),
                            "differentials": res.differentials().iter().map(report::matrix).collect::<Vec<_>>(),
                        }),
                    );
                }
                _ => {
                    let res = minimal_free_resolution(&p.module()?, length)?;
                    r.set(
                        "resolution",
                        json!({
                            "minimal": true,
                            "complete": res.complete,
                            "projective_dimension": res.projective_dimension(),
                            "betti": report::betti(&res.betti),
                            "differentials": res.complex.differentials().iter().map(report::matrix).collect::<Vec<_>>(),
                        }),
                    );
                }
            }
            Ok((r.value(), 0))
        }
        Command::TorFrob { e, lo, hi, .. } => {
            let p = ctx.problem()?;
            let e_list = pick_e(e, &opts).unwrap_or_else(|| vec![1]);
            let c = p.as_complex();
            let lo = lo.unwrap_or(c.lo());
            let hi = hi.unwrap_or(lo + p.ring.invariants()?.dim as i64 + 1);
            let mut r = base_report("tor-frob", json!({ "e": e_list, "range": [lo, hi] }), Some(&p))?;
            let profile = tor_frobenius(&c, &e_list, lo, hi)?;
            let code = if profile.any_unavailable() { 2 } else { 0 };
            r.set("tor", report::tor_profile(&profile));
            Ok((r.value(), code))
        }
        Command::Flatdim { method, e, t, window, oracle_fallback, .. } => {
            let p = ctx.problem()?;
            let c = p.as_complex();
            let mut r = base_report("flatdim", json!({ "method": format!("{method:?}").to_lowercase() }), Some(&p))?;
            let detect = |fallback: bool| {
                let o = DetectOptions { t: t.or(opts.t), e_list: pick_e(e, &opts), window: window.or(opts.window), consult_oracle: fallback };
                detect_flat_dimension(&c, &o)
            };
            let (value, code) = match method {
                Method::Frobenius => {
                    let v = detect(*oracle_fallback)?;
                    (report::verdict(&v), verdict_code(&v))
                }
                Method::Oracle => {
                    let v = flatdim_oracle(&p.module()?)?;
                    (report::verdict(&v), verdict_code(&v))
                }
                Method::Both => {
                    let v = detect(false)?;
                    let o = flatdim_oracle(&p.module()?)?;
                    let decisive = !v.is_inconclusive() && !o.is_inconclusive();
                    if decisive && v.is_finite() != o.is_finite() {
                        return Err(Error::Consistency(format!("detector says {}, oracle says {}", v.outcome.kind(), o.outcome.kind())));
                    }
                    let mut out = report::verdict(&v);
                    out["oracle"] = report::verdict(&o);
                    out["agree"] = if decisive { json!(true) } else { Value::Null };
                    (out, verdict_code(&v).max(verdict_code(&o)))
                }
            };
            r.set("flat_dimension", value);
            Ok((r.value(), code))
        }
        Command::Koszul { y, .. } => {
            let p = ctx.problem()?;
            let ys = parse_sequence(&p, &pick_y(y, &opts), ctx.seed)?;
            let m = p.module()?;
            let mut r = base_report("koszul", json!({ "y": report::polys(&ys) }), Some(&p))?;
            let k = koszul_complex(&ys, &m)?;
            let hs = (0..=ys.len() as i64).map(|j| homology(&k, j).map(|h| report::homology_module(&h))).collect::<Result<Vec<_>>>()?;
            r.set("homology", json!(hs));
            r.set("sup_homology", json!(sup_homology(&k)?));
            Ok((r.value(), 0))
        }
        Command::LoewyBounds { y, .. } => {
            let p = ctx.problem()?;
            let ys = parse_sequence(&p, &pick_y(y, &opts), ctx.seed)?;
            let mut r = base_report("loewy-bounds", json!({ "y": report::polys(&ys) }), Some(&p))?;
            r.set("bounds", report::loewy_bound(&loewy_bounds_koszul(&p.ring, &ys)?));
            Ok((r.value(), 0))
        }
        Command::CrBound { trials, .. } => {
            let p = ctx.problem()?;
            let mut r = base_report("cr-bound", json!({ "trials": trials, "seed": ctx.seed }), Some(&p))?;
            let c = cr_upper_bound(&p.ring, *trials, ctx.seed)?;
            r.set("cr_bound", report::cr_bound(&c));
            Ok((r.value(), 0))
        }
        Command::Verify { check: VerifyCommand::TorDecomposition { e, y, range, .. } } => {
            let p = ctx.problem()?;
            let m = p.module()?;
            let ys = parse_sequence(&p, &pick_y(y, &opts), ctx.seed)?;
            let e = e.or_else(|| pick_e(&[], &opts).and_then(|v| v.first().copied())).unwrap_or(1);
            let mut r = base_report("verify tor-decomposition", json!({ "e": e, "y": report::polys(&ys), "range": range }), Some(&p))?;
            let rep = verify_tor_decomposition(&m, e, &ys, *range)?;
            r.set(
                "tor_decomposition",
                json!({
                    "passed": true,
                    "q": rep.q,
                    "loewy_bound": rep.loewy_bound,
                    "betti": rep.betti,
                    "koszul_homology": rep.koszul_homology,
                    "rows": rep.rows.iter().map(|row| [row.n, row.lhs as i64, row.rhs as i64]).collect::<Vec<_>>(),
                }),
            );
            Ok((r.value(), 0))
        }
        Command::Verify { check: VerifyCommand::WindowCollapse { e, t, .. } } => {
            let p = ctx.problem()?;
            let m = p.module()?;
            let e = e.or_else(|| pick_e(&[], &opts).and_then(|v| v.first().copied())).unwrap_or(1);
            let t = t.or(opts.t).unwrap_or(1);
            let mut r = base_report("verify window-collapse", json!({ "e": e, "t": t }), Some(&p))?;
            let rep = verify_window_collapse(&m, e, t, ctx.seed)?;
            let leg = |l: &Option<Leg>| match l {
                None => Value::Null,
                Some(Leg::Holds) => json!("holds"),
                Some(Leg::Skipped(why)) => json!(format!("skipped: {why}")),
            };
            r.set(
                "window_collapse",
                json!({
                    "hypothesis_met": rep.hypothesis_met,
                    "message": rep.message,
                    "window": [rep.window.0, rep.window.1],
                    "koszul_leg": leg(&rep.koszul_leg),
                    "betti_leg": leg(&rep.betti_leg),
                    "sop": report::polys(&rep.sop),
                    "c_bound": rep.c_bound,
                }),
            );
            Ok((r.value(), 0))
        }
        Command::RemarkExample { n, p } => {
            let rep = remark_example(*n, *p)?;
            let mut r = base_report("remark-example", json!({ "n": n, "p": p }), None)?;
            r.set(
                "example",
                json!({
                    "ring": rep.ring,
                    "dim": rep.dim,
                    "x_is_parameter": rep.x_is_parameter,
                    "colength": rep.colength,
                    "loewy_length_quotient": rep.quotient_loewy,
                    "h1_k_dimension": rep.h1_k_dimension,
                    "h1_cycle": rep.h1_cycle,
                    "h1_cycle_degree": rep.h1_cycle_degree,
                    "h1_internal_degree": rep.h1_internal_degree,
                    "bounds": report::loewy_bound(&rep.bounds),
                    "upper_equals_n_plus_1": rep.upper_is_exact_value,
                }),
            );
            Ok((r.value(), 0))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::atomic::{AtomicUsize, Ordering};

    /// A problem file that is removed when dropped.
    struct TempProblem(std::path::PathBuf);

    impl TempProblem {
        fn arg(&self) -> String {
            self.0.display().to_string()
        }
    }

    impl Drop for TempProblem {
        fn drop(&mut self) {
            let _ = std::fs::remove_file(&self.0);
        }
    }

    fn write_problem(src: &str) -> TempProblem {
        static COUNTER: AtomicUsize = AtomicUsize::new(0);
        let n = COUNTER.fetch_add(1, Ordering::SeqCst);
        let path = std::env::temp_dir().join(format!("flatdim-cli-{}-{n}.json", std::process::id()));
        std::fs::write(&path, src).unwrap();
        TempProblem(path)
    }

    const NODE_X: &str = r#"{"char": 2, "vars": ["x","y"], "ideal": ["x*y"], "module": {"rank": 1, "relations": [["x"]]}}"#;

    #[test]
    fn flatdim_on_the_node() {
        let f = write_problem(NODE_X);
        let out = run(["flatdim", "flatdim", &f.arg(), "--format", "json"]);
        assert_eq!(out.code, 0, "{}", out.stderr);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["flat_dimension"]["outcome"], "infinite");
        assert_eq!(v["flat_dimension"]["witness"]["i"], 1);
        assert_eq!(v["flat_dimension"]["witness"]["e"], 1);
        assert_eq!(v["flat_dimension"]["witness"]["tor"]["cycles"], json!([["y"]]));
    }

    #[test]
    fn ring_info_of_the_plane() {
        let f = write_problem(r#"{"char": 2, "vars": ["x","y"], "ideal": []}"#);
        let out = run(["flatdim", "ring-info", &f.arg(), "--format", "json"]);
        assert_eq!(out.code, 0);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        let ring = &v["ring"];
        assert_eq!((ring["dim"].clone(), ring["depth"].clone(), ring["multiplicity"].clone()), (json!(2), json!(2), json!(1)));
        assert_eq!((ring["cohen_macaulay"].clone(), ring["regular"].clone()), (json!(true), json!(true)));
    }

    #[test]
    fn remark_example_report() {
        let out = run(["flatdim", "remark-example", "--n", "2", "--p", "2"]);
        assert_eq!(out.code, 0);
        assert!(out.stdout.contains("lower"));
        let out = run(["flatdim", "remark-example", "--n", "2", "--format", "json"]);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!((v["example"]["bounds"]["lower"].clone(), v["example"]["bounds"]["upper"].clone()), (json!(2), json!(3)));
    }

    #[test]
    fn exit_codes() {
        let bad = write_problem(r#"{"char": 2, "vars": ["x"], "ideal": ["x^"]}"#);
        let out = run(["flatdim", "ring-info", &bad.arg()]);
        assert_eq!(out.code, 1);
        assert!(out.stderr.contains("byte"), "{}", out.stderr);
        let out = run(["flatdim", "ring-info", "/nonexistent/problem.json"]);
        assert_eq!(out.code, 1);
        let out = run(["flatdim", "bogus-command"]);
        assert_eq!(out.code, 1);
        let f = write_problem(NODE_X);
        let out = run(["flatdim", "resolve", &f.arg(), "--max-basis", "1", "--length", "3"]);
        assert_eq!(out.code, 2, "{}{}", out.stdout, out.stderr);
    }

    #[test]
    fn text_and_json_are_deterministic() {
        let f = write_problem(NODE_X);
        for fmt in ["text", "json"] {
            let a = run(["flatdim", "flatdim", &f.arg(), "--method", "both", "--format", fmt]);
            let b = run(["flatdim", "flatdim", &f.arg(), "--method", "both", "--format", fmt]);
            assert_eq!(a.code, 0, "{}", a.stderr);
            assert_eq!(a, b);
        }
    }

    #[test]
    fn help_exits_zero() {
        assert_eq!(run(["flatdim", "--help"]).code, 0);
    }
}
