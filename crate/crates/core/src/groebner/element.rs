use std::cmp::Ordering;
use std::sync::Arc;

use crate::error::Result;
use crate::field::PrimeField;
use crate::monomial::{ModuleOrder, Monomial};
use crate::poly::{PolyRing, Polynomial, Term};

/// A term `coeff * mono * e_pos` of a free module.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModTerm {
    pub coeff: u32,
    pub pos: usize,
    pub mono: Monomial,
}

/// An element of a free module `S^r`, stored as terms sorted strictly
/// descending under some [`ModuleOrder`]. The order is not stored; every
/// operation takes it explicitly.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ModuleElement {
    terms: Vec<ModTerm>,
}

impl ModuleElement {
    pub fn zero() -> Self {
        ModuleElement { terms: Vec::new() }
    }

    pub fn unit(nvars: usize, pos: usize) -> Self {
        ModuleElement { terms: vec![ModTerm { coeff: 1, pos, mono: Monomial::one(nvars) }] }
    }

    /// Sorts and combines arbitrary terms.
    pub fn from_terms(mut terms: Vec<ModTerm>, field: PrimeField, order: &ModuleOrder) -> Self {
        terms.sort_by(|a, b| order.cmp((b.pos, &b.mono), (a.pos, &a.mono)));
        let mut out: Vec<ModTerm> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(last) if last.pos == t.pos && last.mono == t.mono => last.coeff = field.add(last.coeff, t.coeff),
                _ => out.push(t),
            }
        }
        out.retain(|t| t.coeff != 0);
        ModuleElement { terms: out }
    }

    pub fn from_column(col: &[Polynomial], order: &ModuleOrder) -> Self {
        let Some(first) = col.iter().find(|p| !p.is_zero()) else {
            return Self::zero();
        };
        let field = first.ring().field();
        let terms = col
            .iter()
            .enumerate()
            .flat_map(|(pos, p)| p.terms().iter().map(move |t| ModTerm { coeff: t.coeff, pos, mono: t.mono.clone() }))
            .collect();
        Self::from_terms(terms, field, order)
    }

    pub fn from_poly(p: &Polynomial) -> Self {
        let terms = p.terms().iter().map(|t| ModTerm { coeff: t.coeff, pos: 0, mono: t.mono.clone() }).collect();
        ModuleElement { terms }
    }

    pub fn to_column(&self, ring: &Arc<PolyRing>, rank: usize) -> Vec<Polynomial> {
        let mut buckets: Vec<Vec<Term>> = vec![Vec::new(); rank];
        for t in &self.terms {
            buckets[t.pos].push(Term { coeff: t.coeff, mono: t.mono.clone() });
        }
        buckets.into_iter().map(|ts| Polynomial::from_terms(ring, ts)).collect()
    }

    pub fn terms(&self) -> &[ModTerm] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<&ModTerm> {
        self.terms.first()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest shifted degree among the terms (the sugar of an input).
    pub fn sugar(&self, order: &ModuleOrder) -> i64 {
        self.terms.iter().map(|t| order.weighted_degree(t.pos, &t.mono)).max().unwrap_or(i64::MIN)
    }

    pub fn is_homogeneous(&self, order: &ModuleOrder) -> bool {
        match self.terms.first() {
            None => true,
            Some(t) => {
                let d = order.weighted_degree(t.pos, &t.mono);
                self.terms.iter().all(|s| order.weighted_degree(s.pos, &s.mono) == d)
            }
        }
    }

    pub fn scale(&self, c: u32, field: PrimeField) -> Self {
        if c.is_multiple_of(field.p()) {
            return Self::zero();
        }
        let terms = self.terms.iter().map(|t| ModTerm { coeff: field.mul(t.coeff, c), pos: t.pos, mono: t.mono.clone() }).collect();
        ModuleElement { terms }
    }

    pub fn make_monic(&mut self, field: PrimeField) {
        if let Some(t) = self.terms.first() {
            if t.coeff != 1 {
                let inv = field.inv(t.coeff);
                for t in &mut self.terms {
                    t.coeff = field.mul(t.coeff, inv);
                }
            }
        }
    }

    /// Multiplies every term by `c * m`; multiplication is order-preserving.
    pub fn mul_term(&self, c: u32, m: &Monomial, field: PrimeField, cap: u32) -> Result<Self> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            terms.push(ModTerm { coeff: field.mul(t.coeff, c), pos: t.pos, mono: t.mono.mul(m, cap)? });
        }
        Ok(ModuleElement { terms })
    }

    pub fn add(&self, other: &Self, field: PrimeField, order: &ModuleOrder) -> Self {
        ModuleElement { terms: merge(&self.terms, 1, None, other, field, order, u32::MAX).expect("no monomial growth") }
    }

    pub fn sub(&self, other: &Self, field: PrimeField, order: &ModuleOrder) -> Self {
        ModuleElement { terms: merge(&self.terms, field.p() - 1, None, other, field, order, u32::MAX).expect("no monomial growth") }
    }

    /// `self - c * m * other`.
    pub fn sub_mul(&self, c: u32, m: &Monomial, other: &Self, field: PrimeField, order: &ModuleOrder, cap: u32) -> Result<Self> {
        Ok(ModuleElement { terms: merge(&self.terms, field.neg(c), Some(m), other, field, order, cap)? })
    }

    /// Keeps the terms at positions `range` and renumbers them from 0.
    pub fn project(&self, range: std::ops::Range<usize>) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|t| range.contains(&t.pos))
            .map(|t| ModTerm { coeff: t.coeff, pos: t.pos - range.start, mono: t.mono.clone() })
            .collect();
        ModuleElement { terms }
    }

    /// Moves every position up by `offset`.
    pub fn offset(&self, offset: usize) -> Self {
        let terms = self.terms.iter().map(|t| ModTerm { coeff: t.coeff, pos: t.pos + offset, mono: t.mono.clone() }).collect();
        ModuleElement { terms }
    }

    /// Re-sorts under a different order.
    pub fn resort(&self, field: PrimeField, order: &ModuleOrder) -> Self {
        Self::from_terms(self.terms.clone(), field, order)
    }

    /// Applies `f` to every term's position and re-sorts.
    pub fn map_positions(&self, f: impl Fn(usize) -> usize, field: PrimeField, order: &ModuleOrder) -> Self {
        let terms = self.terms.iter().map(|t| ModTerm { coeff: t.coeff, pos: f(t.pos), mono: t.mono.clone() }).collect();
        Self::from_terms(terms, field, order)
    }

    pub(crate) fn split_at(&self, k: usize) -> (&[ModTerm], &[ModTerm]) {
        self.terms.split_at(k)
    }

    pub(crate) fn from_sorted(terms: Vec<ModTerm>) -> Self {
        ModuleElement { terms }
    }

    pub(crate) fn into_terms(self) -> Vec<ModTerm> {
        self.terms
    }
}

/// `a + scale * (m * b)`, with `m = 1` when absent.
pub(crate) fn merge(
    a: &[ModTerm],
    scale: u32,
    m: Option<&Monomial>,
    b: &ModuleElement,
    field: PrimeField,
    order: &ModuleOrder,
    cap: u32,
) -> Result<Vec<ModTerm>> {
    let mut out = Vec::with_capacity(a.len() + b.terms.len());
    let mut i = 0;
    let mut bs = b.terms.iter().peekable();
    let next_b = |t: &ModTerm| -> Result<ModTerm> {
        let mono = match m {
            Some(m) => t.mono.mul(m, cap)?,
            None => t.mono.clone(),
        };
        Ok(ModTerm { coeff: field.mul(scale, t.coeff), pos: t.pos, mono })
    };
    let mut pending: Option<ModTerm> = match bs.next() {
        Some(t) => Some(next_b(t)?),
        None => None,
    };
    while let Some(bt) = pending.take() {
        while i < a.len() && order.cmp((a[i].pos, &a[i].mono), (bt.pos, &bt.mono)) == Ordering::Greater {
            out.push(a[i].clone());
            i += 1;
        }
        if i < a.len() && a[i].pos == bt.pos && a[i].mono == bt.mono {
            let c = field.add(a[i].coeff, bt.coeff);
            if c != 0 {
                out.push(ModTerm { coeff: c, pos: bt.pos, mono: bt.mono });
            }
            i += 1;
        } else if bt.coeff != 0 {
            out.push(bt);
        }
        pending = match bs.next() {
            Some(t) => Some(next_b(t)?),
            None => None,
        };
    }
    out.extend_from_slice(&a[i..]);
    Ok(out)
}
