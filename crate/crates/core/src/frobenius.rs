//! The Frobenius functor on complexes of free modules and `Tor` against
//! `R` viewed as a module through `f^e`.
//!
//! `R` through `f^e` is never built as a module. Tensoring a free complex
//! with it and reading the result over the target copy of `R` replaces
//! every differential entry `g` by `g^{p^e}`; internal degrees scale by
//! `p^e`.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::homological::{homology, homology_vanishes, minimal_free_resolution, semifree_resolution, Complex, ModulePresentation};
use crate::matrix::PolyMatrix;
use crate::ring::QuotientRing;

pub(crate) fn frobenius_q(ring: &QuotientRing, e: u32) -> Result<i64> {
    (ring.characteristic() as i64)
        .checked_pow(e)
        .filter(|&q| q <= i64::from(ring.limits().max_degree))
        .ok_or_else(|| Error::Limit(format!("p^{e} exceeds the degree cap")))
}

/// Applies `g -> g^{p^e}` to every differential entry and scales the
/// generator degrees by `p^e`. The result is checked to square to zero.
pub fn frobenius_functor(c: &Complex, e: u32) -> Result<Complex> {
    let out = frobenius_functor_unchecked(c, e)?;
    out.verify()?;
    Ok(out)
}

fn frobenius_functor_unchecked(c: &Complex, e: u32) -> Result<Complex> {
    if e == 0 {
        return Err(Error::Input("Frobenius exponent must be positive".into()));
    }
    if !c.is_free() {
        return Err(Error::Input("the Frobenius functor is applied to complexes of free modules".into()));
    }
    let ring = c.ring();
    let q = frobenius_q(ring, e)?;
    let diffs = c
        .differentials()
        .iter()
        .map(|d| d.map_entries(|g| ring.reduce(&g.frobenius_power(e)?)))
        .collect::<Result<Vec<_>>>()?;
    let shifts = (c.lo()..=c.hi()).map(|i| c.shifts(i).iter().map(|s| s * q).collect()).collect();
    c.with_differentials(diffs, shifts)
}

/// The piece `C_{i+1} -> C_i -> C_{i-1}` of `F^e(C)`, enough for `H_i`.
fn functored_window(c: &Complex, e: u32, i: i64) -> Result<Complex> {
    let ring = c.ring();
    let lo = (i - 1).max(c.lo());
    let hi = (i + 1).min(c.hi());
    let shifts: Vec<Vec<i64>> = (lo..=hi).map(|k| c.shifts(k).to_vec()).collect();
    let diffs: Vec<PolyMatrix> = (lo + 1..=hi).map(|k| c.differential(k).unwrap().clone()).collect();
    let window = Complex::new(ring, lo, shifts, diffs)?;
    frobenius_functor(&window, e)
}

/// One cell `Tor_i(M, R through f^e)`.
#[derive(Clone, Debug)]
pub struct TorCell {
    pub i: i64,
    pub e: u32,
    /// `None` when the computation hit a resource cap.
    pub is_zero: Option<bool>,
    pub presentation: Option<ModulePresentation>,
    pub k_dimension: Option<u64>,
    /// Cycle representatives of the generators, in `F_i`.
    pub cycles: Option<PolyMatrix>,
    /// The functored differentials `F_{i+1} -> F_i` and `F_i -> F_{i-1}`.
    pub incoming: Option<PolyMatrix>,
    pub outgoing: Option<PolyMatrix>,
    pub unavailable: Option<String>,
}

impl TorCell {
    fn unavailable(i: i64, e: u32, why: String) -> Self {
        TorCell { i, e, is_zero: None, presentation: None, k_dimension: None, cycles: None, incoming: None, outgoing: None, unavailable: Some(why) }
    }
}

/// `Tor_i(M, R through f^e)` for a range of `(i, e)`.
#[derive(Clone, Debug, Default)]
pub struct TorProfile {
    cells: BTreeMap<(i64, u32), TorCell>,
}

impl TorProfile {
    pub fn get(&self, i: i64, e: u32) -> Option<&TorCell> {
        self.cells.get(&(i, e))
    }

    pub fn cells(&self) -> impl Iterator<Item = &TorCell> {
        self.cells.values()
    }

    pub fn insert(&mut self, cell: TorCell) {
        self.cells.insert((cell.i, cell.e), cell);
    }

    pub fn merge(&mut self, other: TorProfile) {
        self.cells.extend(other.cells);
    }

    pub fn all_zero(&self) -> bool {
        self.cells.values().all(|c| c.is_zero == Some(true))
    }

    pub fn first_nonzero(&self) -> Option<&TorCell> {
        self.cells.values().find(|c| c.is_zero == Some(false))
    }

    pub fn any_unavailable(&self) -> bool {
        self.cells.values().any(|c| c.is_zero.is_none())
    }
}

/// A free resolution of a module or complex, long enough for `Tor_i` with
/// `i <= hi`.
pub fn resolve_for_tor(c: &Complex, hi: i64) -> Result<Complex> {
    if c.is_free() {
        return Ok(c.clone());
    }
    let length = (hi + 1 - c.lo()).max(0) as usize;
    if c.lo() == c.hi() {
        return Ok(minimal_free_resolution(&c.term(c.lo()), length)?.complex.shift(c.lo()));
    }
    semifree_resolution(c, length)
}

/// `Tor_i` from an already computed free resolution.
pub fn tor_cell(res: &Complex, i: i64, e: u32, with_presentation: bool) -> Result<TorCell> {
    let ring = res.ring();
    if i < res.lo() || i > res.hi() {
        // the resolution has no term there
        return Ok(TorCell {
            i,
            e,
            is_zero: Some(true),
            presentation: Some(ModulePresentation::free(ring, Vec::new())),
            k_dimension: Some(0),
            cycles: None,
            incoming: None,
            outgoing: None,
            unavailable: None,
        });
    }
    let w = functored_window(res, e, i)?;
    let incoming = w.differential(i + 1).cloned();
    let outgoing = w.differential(i).cloned();
    if !with_presentation {
        let z = homology_vanishes(&w, i)?;
        return Ok(TorCell { i, e, is_zero: Some(z), presentation: None, k_dimension: None, cycles: None, incoming, outgoing, unavailable: None });
    }
    let h = homology(&w, i)?;
    Ok(TorCell {
        i,
        e,
        is_zero: Some(h.is_zero()),
        k_dimension: h.k_dimension(),
        cycles: Some(h.cycles().clone()),
        presentation: Some(h.presentation().clone()),
        incoming,
        outgoing,
        unavailable: None,
    })
}

/// `Tor_i(M, R through f^e)` for `i` in `lo..=hi` and every `e` listed.
/// Cells that hit a resource cap are recorded as unavailable.
pub fn tor_frobenius(m: &Complex, e_list: &[u32], lo: i64, hi: i64) -> Result<TorProfile> {
    let mut profile = TorProfile::default();
    let res = match resolve_for_tor(m, hi) {
        Ok(r) => r,
        Err(err) if err.is_limit() => {
            for &e in e_list {
                for i in lo..=hi {
                    profile.insert(TorCell::unavailable(i, e, err.to_string()));
                }
            }
            return Ok(profile);
        }
        Err(err) => return Err(err),
    };
    for &e in e_list {
        for i in lo.max(0)..=hi {
            match tor_cell(&res, i, e, true) {
                Ok(cell) => profile.insert(cell),
                Err(err) if err.is_limit() => profile.insert(TorCell::unavailable(i, e, err.to_string())),
                Err(err) => return Err(err),
            }
        }
    }
    Ok(profile)
}

pub fn tor_frobenius_module(m: &ModulePresentation, e_list: &[u32], lo: i64, hi: i64) -> Result<TorProfile> {
    tor_frobenius(&Complex::from_module(m, 0), e_list, lo, hi)
}

/// Outcome of the Kunz test with the first nonvanishing `Tor_i(k, R through f)`.
#[derive(Clone, Debug)]
pub struct KunzReport {
    pub regular: bool,
    pub witness: Option<TorCell>,
}

/// `R` is regular iff `Tor_i(k, R through f) = 0` for `1 <= i <= n`.
pub fn kunz_test(r: &Arc<QuotientRing>) -> Result<KunzReport> {
    let n = r.nvars() as i64;
    let k = ModulePresentation::residue_field(r);
    let res = minimal_free_resolution(&k, n as usize + 1)?.complex;
    for i in 1..=n {
        let cell = tor_cell(&res, i, 1, false)?;
        if cell.is_zero == Some(false) {
            let cell = tor_cell(&res, i, 1, true)?;
            return Ok(KunzReport { regular: false, witness: Some(cell) });
        }
    }
    Ok(KunzReport { regular: true, witness: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homological::koszul_complex_ring;

    #[test]
    fn squares_the_koszul_entries() {
        let r = QuotientRing::polynomial_ring(2, &["x", "y"]).unwrap();
        let k = koszul_complex_ring(&r, &r.variables()).unwrap();
        let f = frobenius_functor(&k, 1).unwrap();
        assert_eq!(f.differential(1).unwrap().to_strings(), vec![vec!["x^2", "y^2"]]);
        assert_eq!(f.shifts(2), &[4]);
    }

    #[test]
    fn zero_complex_stays_zero() {
        let r = QuotientRing::polynomial_ring(2, &["x"]).unwrap();
        let z = frobenius_functor(&Complex::zero(&r), 2).unwrap();
        assert_eq!(z.ranks(), Vec::<usize>::new());
    }

    #[test]
    fn periodic_resolution_entries() {
        let r = QuotientRing::parse(2, &["x", "y"], &["x*y"]).unwrap();
        let m = ModulePresentation::parse_cyclic(&r, &["x"]).unwrap();
        let res = minimal_free_resolution(&m, 3).unwrap().complex;
        let f = frobenius_functor(&res, 1).unwrap();
        let entries: Vec<String> = (1..=3).map(|i| f.differential(i).unwrap().get(0, 0).to_string()).collect();
        assert_eq!(entries, vec!["x^2", "y^2", "x^2"]);
    }

    #[test]
    fn functoriality_in_e() {
        let r = QuotientRing::parse(3, &["x", "y"], &["x*y"]).unwrap();
        let m = ModulePresentation::parse_cyclic(&r, &["x"]).unwrap();
        let res = minimal_free_resolution(&m, 2).unwrap().complex;
        let twice = frobenius_functor(&frobenius_functor(&res, 1).unwrap(), 1).unwrap();
        let once = frobenius_functor(&res, 2).unwrap();
        assert_eq!(twice.differentials(), once.differentials());
        assert_eq!(twice.shifts(2), once.shifts(2));
    }

    #[test]
    fn tor_over_the_node() {
        let r = QuotientRing::parse(2, &["x", "y"], &["x*y"]).unwrap();
        let m = ModulePresentation::parse_cyclic(&r, &["x"]).unwrap();
        let t = tor_frobenius_module(&m, &[1], 0, 1).unwrap();
        let c1 = t.get(1, 1).unwrap();
        assert_eq!(c1.is_zero, Some(false));
        assert_eq!(c1.k_dimension, Some(1));
        assert_eq!(c1.cycles.as_ref().unwrap().to_strings(), vec![vec!["y"]]);
        assert_eq!(t.get(0, 1).unwrap().is_zero, Some(false));
    }

    #[test]
    fn tor_over_a_line_vanishes() {
        let r = QuotientRing::polynomial_ring(2, &["x"]).unwrap();
        let m = ModulePresentation::parse_cyclic(&r, &["x"]).unwrap();
        for e in 1..=3 {
            let t = tor_frobenius_module(&m, &[e], 1, 2).unwrap();
            assert!(t.all_zero());
        }
    }

    #[test]
    fn kunz_examples() {
        assert!(kunz_test(&QuotientRing::polynomial_ring(2, &["x", "y"]).unwrap()).unwrap().regular);
        assert!(kunz_test(&QuotientRing::polynomial_ring(3, &["x"]).unwrap()).unwrap().regular);
        let node = kunz_test(&QuotientRing::parse(2, &["x", "y"], &["x*y"]).unwrap()).unwrap();
        assert!(!node.regular);
        assert_eq!(node.witness.unwrap().i, 1);
    }
}
