use std::cmp::Ordering;

use smallvec::SmallVec;

use crate::error::{Error, Result};

type Exps = SmallVec<[u32; 4]>;

/// A monomial `x_1^{a_1} ... x_n^{a_n}` with its total degree cached.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    exps: Exps,
    degree: u32,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial { exps: SmallVec::from_elem(0, nvars), degree: 0 }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Self::one(nvars);
        m.exps[i] = 1;
        m.degree = 1;
        m
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        Monomial { exps: exps.iter().copied().collect(), degree: exps.iter().sum() }
    }

    #[inline]
    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    /// Product, failing when the total degree would exceed `cap`.
    pub fn mul(&self, other: &Monomial, cap: u32) -> Result<Monomial> {
        let degree = self.degree as u64 + other.degree as u64;
        if degree > cap as u64 {
            return Err(Error::Limit(format!("monomial degree {degree} exceeds cap {cap}")));
        }
        let exps = self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect();
        Ok(Monomial { exps, degree: degree as u32 })
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming divisibility.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        let exps = other.exps.iter().zip(&self.exps).map(|(a, b)| a - b).collect();
        Monomial { exps, degree: other.degree - self.degree }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let exps: Exps = self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect();
        let degree = exps.iter().sum();
        Monomial { exps, degree }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Quotient of the monomial ideal colon: `self / gcd(self, by)`.
    pub fn colon(&self, by: &Monomial) -> Monomial {
        let exps: Exps = self.exps.iter().zip(&by.exps).map(|(a, b)| a.saturating_sub(*b)).collect();
        let degree = exps.iter().sum();
        Monomial { exps, degree }
    }

    /// Every exponent multiplied by `k` (the effect of `g -> g^k` on a monomial).
    pub fn scale(&self, k: u64, cap: u32) -> Result<Monomial> {
        let degree = self.degree as u64 * k;
        if degree > cap as u64 {
            return Err(Error::Limit(format!("monomial degree {degree} exceeds cap {cap}")));
        }
        let exps = self.exps.iter().map(|&a| (a as u64 * k) as u32).collect();
        Ok(Monomial { exps, degree: degree as u32 })
    }

    /// If this monomial is a pure power `x_i^a` with `a > 0`, returns `(i, a)`.
    pub fn pure_power(&self) -> Option<(usize, u32)> {
        let mut found = None;
        for (i, &a) in self.exps.iter().enumerate() {
            if a > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some((i, a));
            }
        }
        found
    }
}

/// Monomial orders on `F_p[x_1..x_n]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum MonomialOrder {
    #[default]
    DegRevLex,
    Lex,
}

impl MonomialOrder {
    pub fn is_graded(&self) -> bool {
        matches!(self, MonomialOrder::DegRevLex)
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::DegRevLex => a.degree.cmp(&b.degree).then_with(|| {
                for (x, y) in a.exps.iter().zip(&b.exps).rev() {
                    if x != y {
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            }),
            MonomialOrder::Lex => a.exps.iter().cmp(b.exps.iter()),
        }
    }
}

/// Order on module terms `m * e_i` of a free module `S^r`.
///
/// Positions are grouped into blocks; a term in a lower-numbered block is
/// always larger (elimination). Inside a block terms compare by shifted
/// degree `deg m + shift_i` (for graded monomial orders), then by the monomial
/// order, then lower position first. One block per position gives
/// position-over-term; a single block gives the shift-aware term-over-position
/// order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleOrder {
    monomial: MonomialOrder,
    shifts: Vec<i64>,
    blocks: Vec<u32>,
}

impl ModuleOrder {
    pub fn term_over_position(monomial: MonomialOrder, shifts: Vec<i64>) -> Self {
        let blocks = vec![0; shifts.len()];
        ModuleOrder { monomial, shifts, blocks }
    }

    pub fn position_over_term(monomial: MonomialOrder, rank: usize) -> Self {
        ModuleOrder { monomial, shifts: vec![0; rank], blocks: (0..rank as u32).collect() }
    }

    pub fn with_blocks(monomial: MonomialOrder, shifts: Vec<i64>, blocks: Vec<u32>) -> Self {
        assert_eq!(shifts.len(), blocks.len());
        ModuleOrder { monomial, shifts, blocks }
    }

    pub fn rank(&self) -> usize {
        self.shifts.len()
    }

    pub fn monomial(&self) -> MonomialOrder {
        self.monomial
    }

    pub fn shifts(&self) -> &[i64] {
        &self.shifts
    }

    pub fn block(&self, pos: usize) -> u32 {
        self.blocks[pos]
    }

    #[inline]
    pub fn weighted_degree(&self, pos: usize, m: &Monomial) -> i64 {
        m.degree as i64 + self.shifts[pos]
    }

    pub fn cmp(&self, (pa, ma): (usize, &Monomial), (pb, mb): (usize, &Monomial)) -> Ordering {
        self.blocks[pb]
            .cmp(&self.blocks[pa])
            .then_with(|| {
                if self.monomial.is_graded() {
                    self.weighted_degree(pa, ma).cmp(&self.weighted_degree(pb, mb))
                } else {
                    Ordering::Equal
                }
            })
            .then_with(|| self.monomial.cmp(ma, mb))
            .then_with(|| pb.cmp(&pa))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn degrevlex_basics() {
        let o = MonomialOrder::DegRevLex;
        // x^2 > xy > y^2 in two variables
        assert_eq!(o.cmp(&m(&[2, 0]), &m(&[1, 1])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[1, 1]), &m(&[0, 2])), Ordering::Greater);
        // x*z < y^2 in degrevlex on x > y > z
        assert_eq!(o.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Less);
        assert_eq!(o.cmp(&m(&[0, 0, 3]), &m(&[1, 0, 0])), Ordering::Greater);
    }

    #[test]
    fn lex_basics() {
        let o = MonomialOrder::Lex;
        assert_eq!(o.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[0, 0, 3]), &m(&[1, 0, 0])), Ordering::Less);
    }

    #[test]
    fn degree_cap_is_enforced() {
        let a = m(&[3, 0]);
        assert!(a.scale(4, 12).is_ok());
        assert!(matches!(a.scale(5, 12), Err(Error::Limit(_))));
        assert!(matches!(a.mul(&a, 5), Err(Error::Limit(_))));
    }

    #[test]
    fn module_order_blocks_eliminate() {
        let ord = ModuleOrder::with_blocks(MonomialOrder::DegRevLex, vec![0, 0, 5], vec![0, 1, 1]);
        // anything in block 0 beats block 1, regardless of degree
        assert_eq!(ord.cmp((0, &m(&[0, 0])), (2, &m(&[4, 4]))), Ordering::Greater);
        // inside block 1 the shift counts
        assert_eq!(ord.cmp((2, &m(&[0, 0])), (1, &m(&[2, 2]))), Ordering::Greater);
        assert_eq!(ord.cmp((1, &m(&[1, 0])), (2, &m(&[1, 0]))), Ordering::Less);
    }
}
