use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::homological::{module_length, ModulePresentation};
use crate::monomial::Monomial;
use crate::poly::{Polynomial, Term};
use crate::ring::QuotientRing;

use super::krull_dim;

/// A system of parameters `y` with the length of `R/(y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SopCertificate {
    pub elements: Vec<Polynomial>,
    pub colength: u64,
}

/// Whether `R/(y)` has finite length; returns the length if so.
pub fn is_parameter_ideal(r: &Arc<QuotientRing>, ys: &[Polynomial]) -> Result<Option<u64>> {
    let m = ModulePresentation::cyclic(r, ys)?;
    let gb = m.basis()?;
    let n = r.nvars();
    let mut has_power = vec![false; n];
    for (_, lm) in gb.leading_terms() {
        if lm.is_one() {
            return Ok(Some(0));
        }
        if let Some((i, _)) = lm.pure_power() {
            has_power[i] = true;
        }
    }
    if has_power.iter().all(|&b| b) {
        Ok(Some(module_length(&m)?))
    } else {
        Ok(None)
    }
}

const LINEAR_TUPLE_BUDGET: usize = 4096;
const RANDOM_TRIES_PER_DEGREE: usize = 64;
const MAX_RANDOM_DEGREE: u32 = 4;

/// Enumerates systems of parameters: tuples of 0/1 sums of variables
/// (ordered by weight, then lexicographically), then seeded random forms
/// of degree 1, 2, ... Deterministic for a fixed seed.
pub struct SopSearch {
    ring: Arc<QuotientRing>,
    dim: usize,
    candidates: Vec<Polynomial>,
    combo: Option<Vec<usize>>,
    linear_tried: usize,
    rng: ChaCha8Rng,
    degree: u32,
    random_tried: usize,
    empty_done: bool,
}

impl SopSearch {
    pub fn new(r: &Arc<QuotientRing>, seed: u64) -> Result<Self> {
        let dim = krull_dim(r)?;
        let n = r.nvars();
        let mut masks: Vec<u32> = (1..(1u32 << n)).collect();
        masks.sort_by_key(|m| (m.count_ones(), std::cmp::Reverse(m.reverse_bits())));
        let amb = r.ambient();
        let candidates: Vec<Polynomial> = masks
            .iter()
            .map(|m| (0..n).filter(|i| m & (1 << i) != 0).fold(Polynomial::zero(amb), |acc, i| &acc + &Polynomial::var(amb, i)))
            .collect();
        let combo = (dim <= candidates.len()).then(|| (0..dim).collect());
        Ok(SopSearch {
            ring: r.clone(),
            dim,
            candidates,
            combo,
            linear_tried: 0,
            rng: ChaCha8Rng::seed_from_u64(seed),
            degree: 1,
            random_tried: 0,
            empty_done: false,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn advance_combo(&mut self) {
        let k = self.dim;
        let n = self.candidates.len();
        let Some(c) = self.combo.as_mut() else { return };
        let mut i = k;
        while i > 0 {
            i -= 1;
            if c[i] < n - k + i {
                c[i] += 1;
                for j in i + 1..k {
                    c[j] = c[j - 1] + 1;
                }
                return;
            }
        }
        self.combo = None;
    }

    fn random_form(&mut self, degree: u32) -> Polynomial {
        let r = &self.ring;
        let amb = r.ambient();
        let p = r.characteristic();
        let terms: Vec<Term> = monomials_of_degree(r.nvars(), degree)
            .into_iter()
            .map(|mono| Term { coeff: self.rng.gen_range(0..p), mono })
            .filter(|t| t.coeff != 0)
            .collect();
        Polynomial::from_terms(amb, terms)
    }

    /// The next system of parameters, or `None` once the budget is spent.
    pub fn next_sop(&mut self) -> Result<Option<SopCertificate>> {
        if self.dim == 0 {
            if self.empty_done {
                return Ok(None);
            }
            self.empty_done = true;
            let colength = is_parameter_ideal(&self.ring, &[])?.expect("dimension zero");
            return Ok(Some(SopCertificate { elements: Vec::new(), colength }));
        }
        while let Some(c) = self.combo.clone() {
            if self.linear_tried >= LINEAR_TUPLE_BUDGET {
                self.combo = None;
                break;
            }
            self.linear_tried += 1;
            self.advance_combo();
            let ys: Vec<Polynomial> = c.iter().map(|&i| self.candidates[i].clone()).collect();
            if let Some(colength) = is_parameter_ideal(&self.ring, &ys)? {
                return Ok(Some(SopCertificate { elements: ys, colength }));
            }
        }
        while self.degree <= MAX_RANDOM_DEGREE {
            if self.random_tried >= RANDOM_TRIES_PER_DEGREE {
                self.degree += 1;
                self.random_tried = 0;
                continue;
            }
            self.random_tried += 1;
            let deg = self.degree;
            let ys: Vec<Polynomial> = (0..self.dim).map(|_| self.random_form(deg)).collect();
            if ys.iter().any(Polynomial::is_zero) {
                continue;
            }
            if let Some(colength) = is_parameter_ideal(&self.ring, &ys)? {
                return Ok(Some(SopCertificate { elements: ys, colength }));
            }
        }
        Ok(None)
    }
}

pub(crate) fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    fn go(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(Monomial::from_exponents(cur));
            return;
        }
        for a in (0..=left).rev() {
            cur[i] = a;
            go(i + 1, left - a, cur, out);
        }
    }
    if n == 0 {
        return if d == 0 { vec![Monomial::one(0)] } else { Vec::new() };
    }
    let mut out = Vec::new();
    go(0, d, &mut vec![0; n], &mut out);
    out
}

/// The first system of parameters in search order.
pub fn find_sop(r: &Arc<QuotientRing>, seed: u64) -> Result<SopCertificate> {
    SopSearch::new(r, seed)?.next_sop()?.ok_or_else(|| Error::Limit("no system of parameters found within the search budget".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sop_of_xy_is_sum_of_variables() {
        let r = QuotientRing::parse(2, &["x", "y"], &["x*y"]).unwrap();
        let s = find_sop(&r, 0).unwrap();
        let shown: Vec<String> = s.elements.iter().map(|g| g.to_string()).collect();
        assert_eq!(shown, vec!["x + y"]);
        assert_eq!(s.colength, 2);
    }

    #[test]
    fn sop_of_a_line() {
        let r = QuotientRing::polynomial_ring(2, &["x"]).unwrap();
        let s = find_sop(&r, 0).unwrap();
        assert_eq!(s.elements[0].to_string(), "x");
        assert_eq!(s.colength, 1);
    }

    #[test]
    fn artinian_ring_has_empty_sop() {
        let r = QuotientRing::parse(2, &["x"], &["x^3"]).unwrap();
        let s = find_sop(&r, 7).unwrap();
        assert!(s.elements.is_empty());
        assert_eq!(s.colength, 3);
    }

    #[test]
    fn candidate_order_is_weight_then_lex() {
        let r = QuotientRing::polynomial_ring(2, &["x", "y", "z"]).unwrap();
        let s = SopSearch::new(&r, 0).unwrap();
        let shown: Vec<String> = s.candidates.iter().map(|g| g.to_string()).collect();
        assert_eq!(shown, vec!["x", "y", "z", "x + y", "x + z", "y + z", "x + y + z"]);
    }

    #[test]
    fn monomial_enumeration() {
        assert_eq!(monomials_of_degree(2, 2).len(), 3);
        assert_eq!(monomials_of_degree(3, 2).len(), 6);
    }
}
