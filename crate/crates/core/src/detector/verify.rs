use crate::error::{Error, Result};
use crate::frobenius::{frobenius_functor, frobenius_q, tor_frobenius_module};
use crate::homological::{homology, koszul_complex_ring, minimal_free_resolution, Complex, ModulePresentation};
use crate::invariants::find_sop;
use crate::poly::Polynomial;

use super::bounds::{cr_upper_bound, loewy_bounds_koszul};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionRow {
    pub n: i64,
    /// `dim_k H_n(F^e(F) ⊗ K(y; R))`.
    pub lhs: u64,
    /// `sum_{i+j=n} beta_i(M) * dim_k H_j(K(y; R))`.
    pub rhs: u64,
}

#[derive(Clone, Debug)]
pub struct DecompositionReport {
    pub e: u32,
    pub q: i64,
    pub loewy_bound: u32,
    pub betti: Vec<usize>,
    pub koszul_homology: Vec<u64>,
    pub rows: Vec<DecompositionRow>,
}

fn homology_dims(c: &Complex, upto: i64) -> Result<Vec<u64>> {
    (0..=upto)
        .map(|n| {
            if n < c.lo() || n > c.hi() {
                return Ok(0);
            }
            homology(c, n)?
                .k_dimension()
                .ok_or_else(|| Error::Consistency(format!("H_{n} should have finite length")))
        })
        .collect()
}

/// Checks `Tor_n(M, K(y; R) through f^e) ≅ ⊕_{i+j=n} k^{beta_i(M)} ⊗ H_j(K(y; R))`
/// in dimensions for `0 <= n <= upto`. Requires `p^e` at least the Loewy
/// bound of `K(y; R)`; a mismatch is a consistency error.
pub fn verify_tor_decomposition(m: &ModulePresentation, e: u32, ys: &[Polynomial], upto: usize) -> Result<DecompositionReport> {
    let r = m.ring();
    let q = frobenius_q(r, e)?;
    let bounds = loewy_bounds_koszul(r, ys)?;
    let loewy_bound = bounds.best().ok_or_else(|| Error::Precondition("no Loewy bound available for K(y; R)".into()))?;
    if q < i64::from(loewy_bound) {
        return Err(Error::Precondition(format!("p^e = {q} is below the Loewy bound {loewy_bound} of K(y; R)")));
    }
    let res = minimal_free_resolution(m, upto + 1)?;
    let fe = frobenius_functor(&res.complex, e)?;
    let k = koszul_complex_ring(r, ys)?;
    let t = fe.tensor(&k)?;
    let upto = upto as i64;
    let lhs = homology_dims(&t, upto)?;
    let kh = homology_dims(&k, upto)?;
    let betti: Vec<usize> = (0..=upto as usize).map(|i| res.betti.total(i)).collect();
    let rows: Vec<DecompositionRow> = (0..=upto)
        .map(|n| {
            let rhs = (0..=n).map(|i| betti[i as usize] as u64 * kh[(n - i) as usize]).sum();
            DecompositionRow { n, lhs: lhs[n as usize], rhs }
        })
        .collect();
    if let Some(bad) = rows.iter().find(|row| row.lhs != row.rhs) {
        return Err(Error::Consistency(format!("Tor decomposition fails at n = {}: {} != {}", bad.n, bad.lhs, bad.rhs)));
    }
    Ok(DecompositionReport { e, q, loewy_bound, betti, koszul_homology: kh, rows })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Leg {
    Holds,
    /// Not applicable, with the reason.
    Skipped(String),
}

#[derive(Clone, Debug)]
pub struct WindowCollapseReport {
    pub e: u32,
    pub t: i64,
    pub window: (i64, i64),
    pub hypothesis_met: bool,
    pub message: String,
    pub koszul_leg: Option<Leg>,
    pub betti_leg: Option<Leg>,
    pub sop: Vec<Polynomial>,
    pub c_bound: Option<u32>,
}

/// When `Tor_i(M, R through f^e) = 0` for `t <= i <= t + dim R`, checks
/// that `Tor_{t+d}(M, K(y; R) through f^e) = 0` for a system of parameters
/// `y`, and that `beta_{t+d}(M) = 0` once `p^e >= c(R)`. A violated leg is
/// a consistency error.
pub fn verify_window_collapse(m: &ModulePresentation, e: u32, t: i64, seed: u64) -> Result<WindowCollapseReport> {
    let r = m.ring();
    let q = frobenius_q(r, e)?;
    let d = r.invariants()?.dim as i64;
    let window = (t, t + d);
    let profile = tor_frobenius_module(m, &[e], t, t + d)?;
    let mut report = WindowCollapseReport {
        e,
        t,
        window,
        hypothesis_met: profile.all_zero(),
        message: String::new(),
        koszul_leg: None,
        betti_leg: None,
        sop: Vec::new(),
        c_bound: None,
    };
    if !report.hypothesis_met {
        report.message = match profile.first_nonzero() {
            Some(c) => format!("hypothesis not met: Tor_{} is nonzero at e = {e}", c.i),
            None => "hypothesis not met: some Tor cells are unavailable".into(),
        };
        return Ok(report);
    }

    let top = t + d;
    let res = minimal_free_resolution(m, (top + 1) as usize)?;
    let ys = find_sop(r, seed)?.elements;
    let tensor = frobenius_functor(&res.complex, e)?.tensor(&koszul_complex_ring(r, &ys)?)?;
    // outside the support of the tensor complex the homology is zero
    let vanishes = top < tensor.lo() || top > tensor.hi() || homology(&tensor, top)?.is_zero();
    if !vanishes {
        return Err(Error::Consistency(format!("Tor_{top}(M, K(y) through f^{e}) is nonzero although the window vanishes")));
    }
    report.koszul_leg = Some(Leg::Holds);
    report.sop = ys;

    let c = cr_upper_bound(r, 4, seed)?.value;
    report.c_bound = Some(c);
    report.betti_leg = Some(if q >= i64::from(c) {
        let b = res.betti.total(top as usize);
        if b != 0 {
            return Err(Error::Consistency(format!("beta_{top}(M) = {b} although the window vanishes and p^e >= {c}")));
        }
        Leg::Holds
    } else {
        Leg::Skipped(format!("p^e = {q} is below the bound {c} on c(R)"))
    });
    report.message = format!("window [{t}, {top}] vanishes and both consequences hold");
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::QuotientRing;

    #[test]
    fn artinian_residue_field() {
        let r = QuotientRing::parse(2, &["x"], &["x^2"]).unwrap();
        let rep = verify_tor_decomposition(&ModulePresentation::residue_field(&r), 1, &[], 4).unwrap();
        assert!(rep.rows.iter().all(|row| row.lhs == 2 && row.rhs == 2));
    }

    #[test]
    fn node_with_a_regular_element() {
        let r = QuotientRing::parse(2, &["x", "y"], &["x*y"]).unwrap();
        let y = vec![r.parse_poly("x + y").unwrap()];
        let m = ModulePresentation::cyclic(&r, &y).unwrap();
        let rep = verify_tor_decomposition(&m, 1, &y, 3).unwrap();
        let lhs: Vec<u64> = rep.rows.iter().map(|row| row.lhs).collect();
        assert_eq!(lhs, vec![2, 2, 0, 0]);
    }

    #[test]
    fn decomposition_refuses_small_q() {
        let r = QuotientRing::parse(2, &["x"], &["x^3"]).unwrap();
        let k = ModulePresentation::residue_field(&r);
        assert!(matches!(verify_tor_decomposition(&k, 1, &[], 2), Err(Error::Precondition(_))));
        assert!(verify_tor_decomposition(&k, 2, &[], 2).is_ok());
    }

    #[test]
    fn window_hypothesis_fails_on_the_node() {
        let r = QuotientRing::parse(2, &["x", "y"], &["x*y"]).unwrap();
        let m = ModulePresentation::parse_cyclic(&r, &["x"]).unwrap();
        let rep = verify_window_collapse(&m, 1, 1, 0).unwrap();
        assert!(!rep.hypothesis_met);
        assert!(rep.message.starts_with("hypothesis not met"));
    }

    #[test]
    fn free_modules_collapse_past_the_koszul_length() {
        let r = QuotientRing::polynomial_ring(2, &["x", "y"]).unwrap();
        let rep = verify_window_collapse(&ModulePresentation::free(&r, vec![0]), 1, 1, 0).unwrap();
        assert!(rep.hypothesis_met);
        assert_eq!(rep.koszul_leg, Some(Leg::Holds));
    }

    #[test]
    fn window_collapses_for_a_regular_element() {
        let r = QuotientRing::parse(2, &["x", "y"], &["x*y"]).unwrap();
        let m = ModulePresentation::parse_cyclic(&r, &["x + y"]).unwrap();
        let rep = verify_window_collapse(&m, 1, 1, 0).unwrap();
        assert!(rep.hypothesis_met);
        assert_eq!(rep.koszul_leg, Some(Leg::Holds));
        assert_eq!(rep.betti_leg, Some(Leg::Holds));
    }
}
