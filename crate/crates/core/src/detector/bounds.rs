use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groebner::{compute, Lifter, ModuleElement};
use crate::homological::{homology_vanishes, koszul_complex_ring, Complex, ModulePresentation};
use crate::invariants::{is_parameter_ideal, loewy_length, SopSearch};
use crate::matrix::PolyMatrix;
use crate::poly::Polynomial;
use crate::ring::QuotientRing;

/// Largest truncation index tried when looking for an acyclic `C^i`.
pub const MAX_TRUNCATION: usize = 16;

/// Bounds on the least Loewy length of a complex quasi-isomorphic to
/// `K(y; R)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoewyBound {
    /// `lol(R/(y))`.
    pub lower: u32,
    /// `lol(R/(y)^i)` for the least `i` with `C^i` acyclic.
    pub upper: Option<u32>,
    /// The index `i` realising `upper`.
    pub truncation: Option<usize>,
    pub exact: Option<u32>,
    pub regular_sequence: bool,
    pub justification: String,
}

impl LoewyBound {
    /// The best known upper bound: the exact value when known.
    pub fn best(&self) -> Option<u32> {
        self.exact.or(self.upper)
    }
}

/// All products of `k` entries of `ys` (with repetition), reduced.
pub(crate) fn power_products(r: &QuotientRing, ys: &[Polynomial], k: usize) -> Result<Vec<Polynomial>> {
    fn go(r: &QuotientRing, ys: &[Polynomial], start: usize, left: usize, acc: Polynomial, out: &mut Vec<Polynomial>) -> Result<()> {
        if left == 0 {
            out.push(r.reduce(&acc)?);
            return Ok(());
        }
        for i in start..ys.len() {
            go(r, ys, i, left - 1, acc.checked_mul(&ys[i])?, out)?;
        }
        Ok(())
    }
    let mut out = Vec::new();
    go(r, ys, 0, k, r.one(), &mut out)?;
    Ok(out)
}

/// Generators of `C^i_j = (y)^{i-j} K_j` as columns over the basis of `K_j`,
/// with their degrees.
fn truncation_generators(r: &QuotientRing, k: &Complex, ys: &[Polynomial], i: usize, j: i64) -> Result<(PolyMatrix, Vec<i64>)> {
    let amb = r.ambient();
    let e = i.saturating_sub(j as usize);
    let prods = power_products(r, ys, e)?;
    let rank = k.rank(j);
    let mut cols = Vec::new();
    let mut shifts = Vec::new();
    for (b, &s) in k.shifts(j).iter().enumerate() {
        for g in &prods {
            if g.is_zero() {
                continue;
            }
            let mut col = vec![Polynomial::zero(amb); rank];
            col[b] = g.clone();
            cols.push(col);
            shifts.push(s + i64::from(g.degree().unwrap()));
        }
    }
    Ok((PolyMatrix::from_columns(amb, rank, &cols), shifts))
}

/// Whether the subcomplex `C^i` of `K(y; R)` with terms `(y)^{i-j} K_j` is
/// acyclic. Cycles of `C^i_j` are pulled back through the generators and
/// tested against the image of the next generators.
pub fn truncation_is_acyclic(k: &Complex, ys: &[Polynomial], i: usize) -> Result<bool> {
    let r = k.ring();
    let amb = r.ambient();
    let field = amb.field();
    let top = ys.len() as i64;
    let gens: Vec<(PolyMatrix, Vec<i64>)> = (0..=top).map(|j| truncation_generators(r, k, ys, i, j)).collect::<Result<_>>()?;
    for j in 0..=top {
        let (g, g_shifts) = &gens[j as usize];
        if g.ncols() == 0 {
            continue;
        }
        let order = k.order(j);
        let cycles: Vec<ModuleElement> = if j == 0 {
            g.columns_as_elements(&order)
        } else {
            let dg = k.differential(j).unwrap().mul(g)?;
            let tgt_order = k.order(j - 1);
            let lifter = Lifter::new(amb, &dg.columns_as_elements(&tgt_order), k.shifts(j - 1), g_shifts, &r.relations(&tgt_order))?;
            let src_order = lifter.source_order().clone();
            let mut out = Vec::new();
            for w in lifter.kernel() {
                let w = PolyMatrix::from_elements(amb, g.ncols(), &[w.resort(field, &src_order)]);
                out.extend(g.mul(&w)?.columns_as_elements(&order));
            }
            out
        };
        let boundaries = if j < top {
            let next = &gens[j as usize + 1].0;
            k.differential(j + 1).unwrap().mul(next)?.columns_as_elements(&order)
        } else {
            Vec::new()
        };
        let gb = compute(amb, &order, &r.relations(&order), &boundaries)?.basis;
        for z in &cycles {
            if !gb.contains(z)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Lower and upper bounds on the Loewy length of `K(y; R)` in the derived
/// category, for `y` with `R/(y)` of finite length.
///
/// The lower bound is `lol(R/(y))`. The upper bound is `lol(R/(y)^i)` for
/// the least `i >= 1` such that `C^i` is acyclic, since `K(y; R)` is then
/// quasi-isomorphic to `K/C^i`. When `y` is a regular sequence `K(y; R)`
/// resolves `R/(y)` and the lower bound is exact.
pub fn loewy_bounds_koszul(r: &Arc<QuotientRing>, ys: &[Polynomial]) -> Result<LoewyBound> {
    if is_parameter_ideal(r, ys)?.is_none() {
        return Err(Error::Precondition("R/(y) does not have finite length".into()));
    }
    let quotient = ModulePresentation::cyclic(r, ys)?;
    let lower = loewy_length(&quotient)?;
    let k = koszul_complex_ring(r, ys)?;
    let mut regular = true;
    for j in 1..=ys.len() as i64 {
        if !homology_vanishes(&k, j)? {
            regular = false;
            break;
        }
    }
    let mut upper = None;
    let mut truncation = None;
    for i in 1..=MAX_TRUNCATION {
        if truncation_is_acyclic(&k, ys, i)? {
            let power = ModulePresentation::cyclic(r, &power_products(r, ys, i)?)?;
            upper = Some(loewy_length(&power)?);
            truncation = Some(i);
            break;
        }
    }
    let (exact, justification) = if regular {
        (Some(lower), "y is a regular sequence, so K(y; R) resolves R/(y)".to_string())
    } else if upper == Some(lower) {
        (Some(lower), format!("upper bound from C^{} meets the lower bound", truncation.unwrap()))
    } else {
        let why = match truncation {
            Some(i) => format!("lower bound lol(R/(y)), upper bound lol(R/(y)^{i}) from the acyclic C^{i}"),
            None => format!("lower bound lol(R/(y)); no acyclic C^i with i <= {MAX_TRUNCATION}"),
        };
        (None, why)
    };
    Ok(LoewyBound { lower, upper, truncation, exact, regular_sequence: regular, justification })
}

/// Where a [`CRBound`] value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CrRoute {
    /// The parameters form a regular sequence and the bound is exact for them.
    RegularSequence,
    /// The bound is `lol(R/(y)^i)` from an acyclic truncation `C^i`.
    Truncation,
}

impl CrRoute {
    pub fn as_str(&self) -> &'static str {
        match self {
            CrRoute::RegularSequence => "regular-sequence",
            CrRoute::Truncation => "truncation",
        }
    }
}

/// An upper bound on `c(R)`, the least Loewy length of a Koszul complex on
/// a system of parameters, with the parameters that realise it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CRBound {
    pub value: u32,
    pub witness: Vec<Polynomial>,
    pub colength: u64,
    pub route: CrRoute,
    pub bounds: LoewyBound,
    /// Systems of parameters examined.
    pub tried: usize,
}

/// Minimum of the Koszul upper bounds over the first `trials` systems of
/// parameters in search order.
pub fn cr_upper_bound(r: &Arc<QuotientRing>, trials: usize, seed: u64) -> Result<CRBound> {
    let mut search = SopSearch::new(r, seed)?;
    let mut best: Option<CRBound> = None;
    let mut tried = 0;
    while tried < trials.max(1) {
        let Some(sop) = search.next_sop()? else { break };
        tried += 1;
        let bounds = loewy_bounds_koszul(r, &sop.elements)?;
        let Some(value) = bounds.best() else { continue };
        if best.as_ref().is_none_or(|b| value < b.value) {
            let route = if bounds.regular_sequence { CrRoute::RegularSequence } else { CrRoute::Truncation };
            best = Some(CRBound { value, witness: sop.elements, colength: sop.colength, route, bounds, tried: 0 });
        }
    }
    let mut best = best.ok_or_else(|| Error::Limit("no system of parameters gave a finite bound".into()))?;
    best.tried = tried;
    Ok(best)
}
