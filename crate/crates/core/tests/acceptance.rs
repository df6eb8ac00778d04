//! Acceptance suite. Prints one PASS/FAIL line per criterion with its
//! elapsed time against the time budget, and exits nonzero if any fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use flatdim::detector::{
    cr_upper_bound, detect_flat_dimension, flatdim_oracle, log_ceiling, loewy_bounds_koszul, remark_example, verify_tor_decomposition,
    verify_window_collapse, CrRoute, DetectOptions, Leg, Outcome,
};
use flatdim::frobenius::{frobenius_functor, kunz_test, tor_cell, tor_frobenius_module};
use flatdim::homological::{has_unit_entries, koszul_complex_ring, minimal_free_resolution, Complex, ModulePresentation};
use flatdim::invariants::loewy_length;
use flatdim::QuotientRing;

type Check = std::result::Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ok<T>(r: flatdim::Result<T>, ctx: &str) -> std::result::Result<T, String> {
    r.map_err(|e| format!("{ctx}: {e}"))
}

const VARS: [&str; 3] = ["x", "y", "z"];

fn kunz_suite() -> Check {
    let mut regular = 0;
    for p in [2, 3] {
        for n in 1..=3 {
            let r = ok(QuotientRing::polynomial_ring(p, &VARS[..n]), "ring")?;
            let rep = ok(kunz_test(&r), "kunz")?;
            ensure!(rep.regular, "F{p}[{n} vars] reported non-regular");
            let res = ok(minimal_free_resolution(&ModulePresentation::residue_field(&r), n + 1), "resolve k")?.complex;
            for i in 1..=n as i64 {
                let cell = ok(tor_cell(&res, i, 1, false), "tor")?;
                ensure!(cell.is_zero == Some(true), "Tor_{i}(k, fR) nonzero over F{p}[{n} vars]");
            }
            regular += 1;
        }
    }
    let singular = [(2, &["x", "y"][..], &["x*y"][..]), (2, &["x", "y"], &["x^2"]), (2, &["x", "y", "z"], &["x*y + z^2"])];
    for (p, vars, ideal) in singular {
        let r = ok(QuotientRing::parse(p, vars, ideal), "ring")?;
        let rep = ok(kunz_test(&r), "kunz")?;
        ensure!(!rep.regular, "{ideal:?} reported regular");
        let w = rep.witness.ok_or("no witness")?;
        ensure!(w.i == 1 && w.is_zero == Some(false), "{ideal:?}: witness at i = {}", w.i);
        let pres = w.presentation.ok_or("witness without presentation")?;
        ensure!(!ok(pres.is_zero(), "witness")?, "{ideal:?}: witness presentation is zero");
    }
    Ok(format!("{regular} regular rings, {} singular rings with Tor_1 witnesses", singular.len()))
}

fn finite_pd_kills_tor() -> Check {
    let mut checked = 0;
    for (ring, name, m) in common::corpus_modules() {
        let r = m.ring().clone();
        let inv = ok(r.invariants(), "invariants")?;
        if !inv.is_cohen_macaulay || ok(m.is_zero(), "zero")? {
            continue;
        }
        if !ok(flatdim_oracle(&m), "oracle")?.is_finite() {
            continue;
        }
        let n = r.nvars() as i64;
        let prof = ok(tor_frobenius_module(&m, &[1, 2], 1, n + 1), "tor")?;
        ensure!(prof.all_zero(), "{ring} {name}: nonzero Frobenius Tor");
        checked += 1;
    }
    ensure!(checked >= 10, "only {checked} finite modules over CM rings");
    Ok(format!("{checked} modules, 1 <= i <= n+1, e in {{1, 2}}"))
}

fn detector_agreement() -> Check {
    let (mut modules, mut rings, mut fallbacks) = (0, std::collections::BTreeSet::new(), 0);
    for (ring, name, m) in common::corpus_modules() {
        let r = m.ring().clone();
        let inv = ok(r.invariants(), "invariants")?.clone();
        let v = ok(detect_flat_dimension(&Complex::from_module(&m, 0), &DetectOptions { consult_oracle: true, ..Default::default() }), "detect")?;
        let o = ok(flatdim_oracle(&m), "oracle")?;
        let decided = if v.is_inconclusive() {
            ensure!(!inv.is_cohen_macaulay, "{ring} {name}: inconclusive over a CM ring");
            fallbacks += 1;
            v.oracle.as_deref().ok_or("fallback missing")?
        } else {
            &v
        };
        ensure!(decided.is_finite() == o.is_finite(), "{ring} {name}: detector {} oracle {}", decided.outcome.kind(), o.outcome.kind());
        if let Outcome::Finite { certificate, .. } = &v.outcome {
            let exact = log_ceiling(r.characteristic(), inv.multiplicity);
            ensure!(inv.is_cohen_macaulay, "{ring} {name}: finite without CM");
            ensure!(certificate.e == Some(exact.max(1)), "{ring} {name}: certificate e {:?}, expected {}", certificate.e, exact.max(1));
            ensure!(inv.is_regular || certificate.e == Some(exact), "{ring} {name}: e differs from ceil(log_p e(R))");
        }
        modules += 1;
        rings.insert(ring);
    }
    ensure!(modules >= 20 && rings.len() >= 6, "corpus too small: {modules} modules, {} rings", rings.len());
    Ok(format!("{modules} modules over {} rings, {fallbacks} oracle fallbacks (non-CM)", rings.len()))
}

fn remark_family() -> Check {
    for n in 1..=4u32 {
        let rep = ok(remark_example(n, 2), "remark")?;
        let r = ok(QuotientRing::parse(2, &["x", "y"], &[format!("x^{n}*y").as_str(), "y^2"]), "ring")?;
        let x = ok(ModulePresentation::parse_cyclic(&r, &["x"]), "R/(x)")?;
        ensure!(ok(loewy_length(&x), "loewy")? == 2, "n = {n}: lol(R/(x)) != 2");
        ensure!(rep.quotient_loewy == 2, "n = {n}: report lol {}", rep.quotient_loewy);
        ensure!(rep.h1_k_dimension == 1, "n = {n}: dim H_1 = {}", rep.h1_k_dimension);
        ensure!(rep.h1_cycle_degree == n, "n = {n}: H_1 cycle in degree {}", rep.h1_cycle_degree);
        ensure!(rep.bounds.lower == 2, "n = {n}: lower {}", rep.bounds.lower);
        ensure!(rep.bounds.upper == Some(n + 1), "n = {n}: upper {:?}", rep.bounds.upper);
        let again = ok(loewy_bounds_koszul(&r, &[ok(r.parse_poly("x"), "x")?]), "bounds")?;
        ensure!(again.upper == Some(n + 1), "n = {n}: recomputed upper {:?}", again.upper);
    }
    Ok("n = 1..4: lol 2, dim H_1 1 in degree n, bounds [2, n+1]".into())
}

fn cr_bounds() -> Check {
    let mut rings = 0;
    for c in common::corpus() {
        let inv = ok(c.ring.invariants(), "invariants")?.clone();
        if !inv.is_cohen_macaulay {
            continue;
        }
        let cr = ok(cr_upper_bound(&c.ring, 4, 0), "cr bound")?;
        ensure!(u64::from(cr.value) <= inv.multiplicity, "{}: c = {} above e(R) = {}", c.name, cr.value, inv.multiplicity);
        match c.name {
            "F2[x,y]/(xy)" | "F2[x]/(x^3)" => ensure!(
                u64::from(cr.value) == inv.multiplicity,
                "{}: c = {} but e(R) = {}",
                c.name,
                cr.value,
                inv.multiplicity
            ),
            _ => {}
        }
        if c.name == "F2[x,y]/(xy)" {
            ensure!(cr.route == CrRoute::RegularSequence, "node bound not from a regular sequence");
        }
        rings += 1;
    }
    Ok(format!("{rings} CM rings, equality at the node (2) and x^3 (3)"))
}

fn tor_decomposition() -> Check {
    let r = ok(QuotientRing::parse(2, &["x"], &["x^2"]), "ring")?;
    let rep = ok(verify_tor_decomposition(&ModulePresentation::residue_field(&r), 1, &r.variables(), 4), "artinian")?;
    ensure!(rep.rows.len() == 5 && rep.rows.iter().all(|row| row.lhs == row.rhs), "artinian rows {:?}", rep.rows);

    let r = ok(QuotientRing::parse(2, &["x", "y"], &["x*y"]), "node")?;
    let m = ok(ModulePresentation::parse_cyclic(&r, &["x + y"]), "R/(x+y)")?;
    let y = vec![ok(r.parse_poly("x + y"), "y")?];
    let rep2 = ok(verify_tor_decomposition(&m, 1, &y, 4), "node")?;
    ensure!(rep2.rows.iter().all(|row| row.lhs == row.rhs), "node rows {:?}", rep2.rows);
    let fmt = |rows: &[flatdim::detector::DecompositionRow]| rows.iter().map(|r| r.lhs.to_string()).collect::<Vec<_>>().join(",");
    Ok(format!("F2[x]/(x^2) k: [{}]; node R/(x+y): [{}]", fmt(&rep.rows), fmt(&rep2.rows)))
}

fn window_collapse() -> Check {
    let (mut met, mut skipped) = (0, 0);
    for (ring, name, m) in common::corpus_modules() {
        let r = m.ring().clone();
        let inv = ok(r.invariants(), "invariants")?.clone();
        let e = log_ceiling(r.characteristic(), inv.multiplicity).max(1);
        let rep = ok(verify_window_collapse(&m, e, 1, 0), &format!("{ring} {name}"))?;
        if rep.hypothesis_met {
            ensure!(matches!(rep.koszul_leg, Some(Leg::Holds)), "{ring} {name}: Koszul leg {:?}", rep.koszul_leg);
            met += 1;
        } else {
            ensure!(rep.message.starts_with("hypothesis not met"), "{ring} {name}: {}", rep.message);
            skipped += 1;
        }
        if ring == "F2[x,y]/(xy)" && name == "R/(x)" {
            ensure!(!rep.hypothesis_met && rep.message.starts_with("hypothesis not met"), "node R/(x): {}", rep.message);
        }
    }
    ensure!(met > 0, "no module met the hypothesis");
    Ok(format!("{met} modules collapse, {skipped} report hypothesis not met"))
}

fn kernel_invariants() -> Check {
    let mut complexes = 0;
    for c in common::corpus() {
        ensure!(ok(c.ring.groebner_basis().satisfies_buchberger_criterion(), "criterion")?, "{}: ring basis", c.name);
        let k = ok(koszul_complex_ring(&c.ring, &c.ring.variables()), "koszul")?;
        ok(k.verify(), "koszul d^2")?;
        complexes += 1;
        for (name, m) in &c.modules {
            ensure!(ok(m.basis(), "basis")?.satisfies_buchberger_criterion().unwrap_or(false), "{} {name}: module basis", c.name);
            let res = ok(minimal_free_resolution(m, 3), "resolve")?.complex;
            ok(res.verify(), "resolution d^2")?;
            ensure!(!has_unit_entries(&res), "{} {name}: unit entry in a minimal resolution", c.name);
            for e in [1, 2] {
                ok(frobenius_functor(&res, e), "functor d^2")?;
            }
            ok(ok(res.tensor(&k), "tensor")?.verify(), "tensor d^2")?;
            complexes += 4;
        }
    }
    for p in [2, 3] {
        for n in 1..=3 {
            let r = ok(QuotientRing::polynomial_ring(p, &VARS[..n]), "ring")?;
            let res = ok(minimal_free_resolution(&ModulePresentation::residue_field(&r), n + 1), "resolve")?;
            for i in 0..=n + 1 {
                let binom = (0..i).fold(1usize, |acc, j| if i > n { 0 } else { acc * (n - j) / (j + 1) });
                ensure!(res.betti.total(i) == binom, "F{p}[{n} vars]: beta_{i}(k) = {}", res.betti.total(i));
            }
        }
    }
    let dir = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("acceptance");
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let file = dir.join("node.json");
    std::fs::write(&file, r#"{"char": 2, "vars": ["x", "y"], "ideal": ["x*y"], "module": {"rank": 1, "relations": [["x"]]}}"#).map_err(|e| e.to_string())?;
    let args = ["flatdim", "--format", "json", "flatdim", "--method", "both", file.to_str().unwrap()];
    let (a, b) = (flatdim::cli::run(args), flatdim::cli::run(args));
    ensure!(a.code == 0, "cli exit {}: {}", a.code, a.stderr);
    ensure!(a.stdout == b.stdout && !a.stdout.is_empty(), "cli reports differ between runs");
    Ok(format!("{complexes} complexes square to zero, Betti(k) binomial, reports byte-identical"))
}

fn main() -> ExitCode {
    let criteria: [(&str, u64, fn() -> Check); 8] = [
        ("1 kunz suite", 30, kunz_suite),
        ("2 finite pd kills Frobenius Tor", 300, finite_pd_kills_tor),
        ("3 detector agrees with oracle", 600, detector_agreement),
        ("4 loewy bounds family", 60, remark_family),
        ("5 c(R) at most e(R)", 120, cr_bounds),
        ("6 Tor decomposition", 120, tor_decomposition),
        ("7 window collapse", 120, window_collapse),
        ("8 kernel invariants", 120, kernel_invariants),
    ];
    let mut failed = 0;
    for (name, limit, check) in criteria {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(limit);
        let (status, detail) = match (&outcome, in_time) {
            (Ok(d), true) => ("PASS", d.clone()),
            (Ok(d), false) => ("FAIL", format!("over time budget; {d}")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!("{status} {name:<34} {:>8.2}s / {limit}s  {detail}", elapsed.as_secs_f64());
    }
    println!("{} of 8 criteria passed", 8 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
