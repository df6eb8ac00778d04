//! Free resolutions of bounded complexes whose terms are presented modules.
//!
//! Each term `C_j = F_j / U_j` is resolved by `P^j` with `P^j_0 = F_j`.
//! The total module `G_n = ⊕_{j+a=n} P^j_a` carries the differential
//! `D = δ + D_1 + D_2 + ...`, where `δ` is the internal differential of
//! each `P^j`, `D_1` restricted to `P^j_0` is the differential of `C`, and
//! `D_k : P^j_a -> P^{j-k}_{a+k-1}` is solved for degree by degree so that
//! `D^2 = 0`. The augmentation `G -> C` is then a quasi-isomorphism.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::groebner::{Lifter, ModuleElement};
use crate::matrix::PolyMatrix;
use crate::monomial::ModuleOrder;

use super::complex::{place, Complex};
use super::resolution::{minimal_free_resolution, relation_shifts, resolve_from};

struct TermResolution {
    shifts: Vec<Vec<i64>>,
    /// `maps[a - 1] : P_a -> P_{a-1}`
    maps: Vec<PolyMatrix>,
}

impl TermResolution {
    fn rank(&self, a: i64) -> usize {
        if a < 0 {
            return 0;
        }
        self.shifts.get(a as usize).map_or(0, Vec::len)
    }

    fn shifts(&self, a: i64) -> &[i64] {
        self.shifts.get(a as usize).map_or(&[], |s| s.as_slice())
    }
}

/// A complex of free modules `G` with `H_i(G) ≅ H_i(C)` for
/// `i < lo(C) + length`. `G` has terms in degrees `lo(C)..=lo(C)+length`.
/// Complexes of free modules are returned unchanged, and a single module
/// gets its minimal free resolution.
pub fn semifree_resolution(c: &Complex, length: usize) -> Result<Complex> {
    if c.is_free() {
        return Ok(c.clone());
    }
    let ring = c.ring();
    let amb = ring.ambient();
    let field = amb.field();
    let (lo, hi) = (c.lo(), c.hi());
    if lo == hi {
        let res = minimal_free_resolution(&c.term(lo), length)?;
        return Ok(res.complex.shift(lo));
    }
    let top = lo + length as i64;

    let mut terms: HashMap<i64, TermResolution> = HashMap::new();
    for j in lo..=hi.min(top) {
        let len = (top - j) as usize;
        let first = match c.relations(j) {
            Some(u) => {
                let m = c.term(j);
                let order = m.order();
                // keep a minimal subset of the relations but not of the generators
                let cols: Vec<ModuleElement> = u.columns_as_elements(&order);
                let mut reduced = Vec::new();
                for v in cols {
                    let v = ring.reduce_element(&v, &order)?;
                    if !v.is_zero() {
                        reduced.push(v);
                    }
                }
                let flags = crate::groebner::compute(amb, &order, &ring.relations(&order), &reduced)?.minimal;
                let kept: Vec<ModuleElement> = reduced.into_iter().zip(flags).filter(|(_, f)| *f).map(|(v, _)| v).collect();
                PolyMatrix::from_elements(amb, c.rank(j), &kept)
            }
            None => PolyMatrix::zeros(amb, c.rank(j), 0),
        };
        let fs = relation_shifts(&first, c.shifts(j));
        let (shifts, maps, _) = resolve_from(ring, c.shifts(j).to_vec(), first, fs, len)?;
        terms.insert(j, TermResolution { shifts, maps });
    }
    let rank = |j: i64, a: i64| terms.get(&j).map_or(0, |t| t.rank(a));
    let delta = |j: i64, a: i64| -> Option<&PolyMatrix> {
        if a < 1 {
            return None;
        }
        terms.get(&j).and_then(|t| t.maps.get(a as usize - 1))
    };

    // D[(k, j, a)] : P^j_a -> P^{j-k}_{a+k-1}
    let mut dmaps: HashMap<(i64, i64, i64), PolyMatrix> = HashMap::new();
    let mut lifters: HashMap<(i64, i64), Lifter> = HashMap::new();
    for m in 1..=(hi - lo) {
        for j in (lo + m)..=hi.min(top) {
            let mut a = 0;
            while j + a <= top {
                let (src_rank, tj, ta) = (rank(j, a), j - m, a + m - 1);
                let tgt_rank = rank(tj, ta);
                if src_rank == 0 {
                    a += 1;
                    continue;
                }
                if m == 1 && a == 0 {
                    dmaps.insert((1, j, 0), c.differential(j).unwrap().clone());
                    a += 1;
                    continue;
                }
                // rhs = -(D_m δ + Σ_{k=1}^{m-1} D_k D_{m-k}) : P^j_a -> P^{tj}_{ta-1}
                let rows = rank(tj, ta - 1);
                let mut rhs = PolyMatrix::zeros(amb, rows, src_rank);
                if let (Some(prev), Some(dl)) = (dmaps.get(&(m, j, a - 1)), delta(j, a)) {
                    rhs = add(&rhs, &prev.mul(dl)?)?;
                }
                for k in 1..m {
                    let inner = dmaps.get(&(m - k, j, a));
                    let outer = dmaps.get(&(k, j - m + k, a + m - k - 1));
                    if let (Some(inner), Some(outer)) = (inner, outer) {
                        rhs = add(&rhs, &outer.mul(inner)?)?;
                    }
                }
                let rhs = rhs.map_entries(|g| ring.reduce(&-g))?;
                let x = if tgt_rank == 0 || rows == 0 {
                    if rows > 0 && !rhs.is_zero() {
                        return Err(Error::Consistency(format!("no room to lift the perturbation D_{m} on P^{j}_{a}")));
                    }
                    PolyMatrix::zeros(amb, tgt_rank, src_rank)
                } else {
                    let lifter = match lifters.entry((tj, ta)) {
                        std::collections::hash_map::Entry::Occupied(e) => e.into_mut(),
                        std::collections::hash_map::Entry::Vacant(e) => {
                            let t = &terms[&tj];
                            let tgt_order = ModuleOrder::term_over_position(amb.order(), t.shifts(ta - 1).to_vec());
                            let cols = delta(tj, ta).unwrap().columns_as_elements(&tgt_order);
                            e.insert(Lifter::new(amb, &cols, t.shifts(ta - 1), t.shifts(ta), &ring.relations(&tgt_order))?)
                        }
                    };
                    let tgt_order = ModuleOrder::term_over_position(amb.order(), terms[&tj].shifts(ta - 1).to_vec());
                    let mut cols = Vec::with_capacity(src_rank);
                    for v in rhs.columns_as_elements(&tgt_order) {
                        let lifted = lifter
                            .lift(&v)?
                            .ok_or_else(|| Error::Consistency(format!("perturbation D_{m} on P^{j}_{a} does not lift")))?;
                        cols.push(ring.reduce_element(&lifted.resort(field, lifter.source_order()), lifter.source_order())?);
                    }
                    PolyMatrix::from_elements(amb, tgt_rank, &cols)
                };
                dmaps.insert((m, j, a), x);
                a += 1;
            }
        }
    }

    // assemble the total complex
    let comps = |n: i64| -> Vec<(i64, i64, usize)> {
        let mut out = Vec::new();
        let mut off = 0;
        for j in lo..=hi {
            let a = n - j;
            let r = rank(j, a);
            if a >= 0 && r > 0 {
                out.push((j, a, off));
                off += r;
            }
        }
        out
    };
    let mut shifts = Vec::new();
    for n in lo..=top {
        let mut s = Vec::new();
        for (j, a, _) in comps(n) {
            s.extend_from_slice(terms[&j].shifts(a));
        }
        shifts.push(s);
    }
    let mut diffs = Vec::new();
    for n in lo + 1..=top {
        let rows = shifts[(n - 1 - lo) as usize].len();
        let cols = shifts[(n - lo) as usize].len();
        let mut d = PolyMatrix::zeros(amb, rows, cols);
        let tgt = comps(n - 1);
        for (j, a, soff) in comps(n) {
            for &(tj, ta, toff) in &tgt {
                let k = j - tj;
                if k < 0 || ta != a + k - 1 {
                    continue;
                }
                let block = if k == 0 { delta(j, a) } else { dmaps.get(&(k, j, a)) };
                if let Some(b) = block {
                    place(&mut d, b, toff, soff);
                }
            }
        }
        diffs.push(d);
    }
    let g = Complex::new(ring, lo, shifts, diffs)?;
    g.verify()?;
    Ok(g)
}

fn add(a: &PolyMatrix, b: &PolyMatrix) -> Result<PolyMatrix> {
    let mut out = a.clone();
    place(&mut out, b, 0, 0);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homological::homology::{homology, homology_vanishes};
    use crate::homological::presentation::ModulePresentation;
    use crate::ring::QuotientRing;

    #[test]
    fn free_complex_is_returned_unchanged() {
        let r = QuotientRing::polynomial_ring(2, &["x", "y"]).unwrap();
        let k = crate::homological::koszul::koszul_complex_ring(&r, &r.variables()).unwrap();
        let g = semifree_resolution(&k, 3).unwrap();
        assert_eq!(g.ranks(), k.ranks());
    }

    #[test]
    fn single_module_gets_minimal_resolution() {
        let r = QuotientRing::polynomial_ring(2, &["x", "y"]).unwrap();
        let k = ModulePresentation::residue_field(&r);
        let g = semifree_resolution(&Complex::from_module(&k, 0), 3).unwrap();
        assert_eq!(g.ranks(), vec![1, 2, 1]);
    }

    #[test]
    fn zero_map_between_residue_fields() {
        // 0 -> k --0--> k -> 0 over F_2[x], in degrees 1 and 0
        let r = QuotientRing::polynomial_ring(2, &["x"]).unwrap();
        let amb = r.ambient();
        let u = PolyMatrix::parse(amb, &[vec!["x"]]).unwrap();
        let zero = PolyMatrix::zeros(amb, 1, 1);
        let c = Complex::with_relations(&r, 0, vec![vec![0], vec![0]], vec![zero], vec![Some(u.clone()), Some(u)]).unwrap();
        let g = semifree_resolution(&c, 3).unwrap();
        for i in 0..=1 {
            let (hg, hc) = (homology(&g, i).unwrap(), homology(&c, i).unwrap());
            assert_eq!(hg.hilbert(), hc.hilbert(), "H_{i}");
            assert_eq!(hg.k_dimension(), Some(1));
        }
        assert!(homology_vanishes(&g, 2).unwrap());
    }

    #[test]
    fn cone_of_multiplication_map() {
        // R/(x) --y--> R/(x) over F_3[x,y], placed in degrees 1 -> 0.
        let r = QuotientRing::polynomial_ring(3, &["x", "y"]).unwrap();
        let amb = r.ambient();
        let u = PolyMatrix::parse(amb, &[vec!["x"]]).unwrap();
        let d = PolyMatrix::parse(amb, &[vec!["y"]]).unwrap();
        let c = Complex::with_relations(&r, 0, vec![vec![0], vec![1]], vec![d], vec![Some(u.clone()), Some(u)]).unwrap();
        c.verify().unwrap();
        let g = semifree_resolution(&c, 3).unwrap();
        // y is regular on R/(x): H_1 = 0, H_0 = R/(x,y) = k
        assert!(homology_vanishes(&g, 1).unwrap());
        assert_eq!(homology(&g, 0).unwrap().k_dimension(), Some(1));
        assert_eq!(homology(&c, 0).unwrap().hilbert(), homology(&g, 0).unwrap().hilbert());
    }
}
