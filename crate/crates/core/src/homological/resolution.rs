use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groebner::{compute, Lifter, ModuleElement};
use crate::matrix::PolyMatrix;
use crate::monomial::ModuleOrder;
use crate::ring::QuotientRing;

use super::complex::Complex;
use super::presentation::{find_unit, ModulePresentation};

/// Ranks of a minimal free resolution, refined by internal degree.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BettiTable {
    graded: Vec<BTreeMap<i64, usize>>,
}

impl BettiTable {
    pub fn from_shifts(shifts: &[Vec<i64>]) -> Self {
        let graded = shifts
            .iter()
            .map(|s| {
                let mut m = BTreeMap::new();
                for &d in s {
                    *m.entry(d).or_insert(0) += 1;
                }
                m
            })
            .collect();
        BettiTable { graded }
    }

    /// `beta_i`, zero beyond the computed range.
    pub fn total(&self, i: usize) -> usize {
        self.graded.get(i).map_or(0, |m| m.values().sum())
    }

    pub fn totals(&self) -> Vec<usize> {
        (0..self.graded.len()).map(|i| self.total(i)).collect()
    }

    /// `beta_{i,j}`: generators of `F_i` in internal degree `j`.
    pub fn graded(&self, i: usize, j: i64) -> usize {
        self.graded.get(i).and_then(|m| m.get(&j)).copied().unwrap_or(0)
    }

    /// Rows `(homological degree, [(internal degree, count)])`.
    pub fn rows(&self) -> Vec<(usize, Vec<(i64, usize)>)> {
        self.graded.iter().enumerate().map(|(i, m)| (i, m.iter().map(|(&d, &c)| (d, c)).collect())).collect()
    }

    /// Number of homological degrees recorded.
    pub fn len(&self) -> usize {
        self.graded.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graded.is_empty()
    }
}

/// A free resolution together with its Betti table.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub complex: Complex,
    pub betti: BettiTable,
    /// True when the resolution reached zero within the requested length,
    /// so the complex is the whole resolution.
    pub complete: bool,
}

impl Resolution {
    /// Projective dimension, when the resolution is complete.
    pub fn projective_dimension(&self) -> Option<usize> {
        self.complete.then(|| self.complex.ranks().iter().rposition(|&r| r > 0).unwrap_or(0))
    }
}

/// Minimal generators of the kernel of `d: R^{src} -> R^{tgt}`, returned
/// as (generator degrees, matrix whose columns are the generators).
pub(crate) fn kernel_step(ring: &Arc<QuotientRing>, tgt_shifts: &[i64], d: &PolyMatrix, src_shifts: &[i64]) -> Result<(Vec<i64>, PolyMatrix)> {
    let amb = ring.ambient();
    let field = amb.field();
    let src_order = ModuleOrder::term_over_position(amb.order(), src_shifts.to_vec());
    let kernel: Vec<ModuleElement> = if d.ncols() == 0 {
        Vec::new()
    } else if d.nrows() == 0 {
        (0..d.ncols()).map(|j| ModuleElement::unit(ring.nvars(), j)).collect()
    } else {
        let tgt_order = ModuleOrder::term_over_position(amb.order(), tgt_shifts.to_vec());
        let lifter = Lifter::new(amb, &d.columns_as_elements(&tgt_order), tgt_shifts, src_shifts, &ring.relations(&tgt_order))?;
        lifter.kernel()
    };
    let mut reduced = Vec::with_capacity(kernel.len());
    for v in kernel {
        let v = ring.reduce_element(&v.resort(field, &src_order), &src_order)?;
        if !v.is_zero() {
            reduced.push(v);
        }
    }
    let flags = compute(amb, &src_order, &ring.relations(&src_order), &reduced)?.minimal;
    let gens: Vec<ModuleElement> = reduced.into_iter().zip(flags).filter(|(_, f)| *f).map(|(v, _)| v).collect();
    let shifts = gens.iter().map(|g| g.sugar(&src_order)).collect();
    Ok((shifts, PolyMatrix::from_elements(amb, src_shifts.len(), &gens)))
}

/// Resolves `coker(first)` on generators of degrees `shifts0`, keeping
/// those generators, up to `F_length`. Returns the term shifts and the
/// differentials `d_1..`.
pub(crate) fn resolve_from(
    ring: &Arc<QuotientRing>,
    shifts0: Vec<i64>,
    first: PolyMatrix,
    first_shifts: Vec<i64>,
    length: usize,
) -> Result<(Vec<Vec<i64>>, Vec<PolyMatrix>, bool)> {
    let mut shifts = vec![shifts0];
    let mut diffs: Vec<PolyMatrix> = Vec::new();
    if length == 0 {
        return Ok((shifts, diffs, first.ncols() == 0));
    }
    if first.ncols() == 0 {
        return Ok((shifts, diffs, true));
    }
    shifts.push(first_shifts);
    diffs.push(first);
    while diffs.len() < length {
        let k = diffs.len();
        let (s, d) = kernel_step(ring, &shifts[k - 1], &diffs[k - 1], &shifts[k])?;
        if s.is_empty() {
            return Ok((shifts, diffs, true));
        }
        shifts.push(s);
        diffs.push(d);
    }
    // complete if the last map is injective
    let k = diffs.len();
    let (s, _) = kernel_step(ring, &shifts[k - 1], &diffs[k - 1], &shifts[k])?;
    Ok((shifts, diffs, s.is_empty()))
}

/// Column degrees of a relation matrix over generators of degrees `shifts`.
pub(crate) fn relation_shifts(m: &PolyMatrix, shifts: &[i64]) -> Vec<i64> {
    let order = ModuleOrder::term_over_position(m.ring().order(), shifts.to_vec());
    m.columns_as_elements(&order).iter().map(|c| c.sugar(&order)).collect()
}

/// The minimal graded free resolution `F_0 <- F_1 <- ... <- F_length` of `M`.
pub fn minimal_free_resolution(m: &ModulePresentation, length: usize) -> Result<Resolution> {
    let ring = m.ring();
    let min = m.minimal()?;
    let rel_shifts = relation_shifts(min.relations(), min.shifts());
    let (shifts, diffs, complete) = resolve_from(ring, min.shifts().to_vec(), min.relations().clone(), rel_shifts, length)?;
    let complex = cancel_units(Complex::new(ring, 0, shifts, diffs)?)?;
    if has_unit_entries(&complex) {
        return Err(Error::Consistency("minimal resolution still has unit entries".into()));
    }
    let betti = BettiTable::from_shifts(&(0..=complex.hi()).map(|i| complex.shifts(i).to_vec()).collect::<Vec<_>>());
    Ok(Resolution { complex, betti, complete })
}

pub fn has_unit_entries(c: &Complex) -> bool {
    (c.lo() + 1..=c.hi()).any(|i| find_unit(c.differential(i).unwrap()).is_some())
}

/// Splits off trivial summands `0 -> R -u-> R -> 0` until no differential
/// has a unit entry. Scans differentials from the bottom, each one row by
/// row.
pub fn cancel_units(mut c: Complex) -> Result<Complex> {
    let ring = c.ring().clone();
    let field = ring.ambient().field();
    'outer: loop {
        for i in c.lo() + 1..=c.hi() {
            let d = c.differential(i).unwrap();
            let Some((r, col)) = find_unit(d) else { continue };
            let uinv = field.inv(d.get(r, col).constant_term());
            let mut shifts: Vec<Vec<i64>> = (c.lo()..=c.hi()).map(|k| c.shifts(k).to_vec()).collect();
            let mut diffs: Vec<PolyMatrix> = c.differentials().to_vec();
            let k = (i - c.lo()) as usize - 1;
            // Schur complement on d_i
            let keep_rows: Vec<usize> = (0..d.nrows()).filter(|&x| x != r).collect();
            let keep_cols: Vec<usize> = (0..d.ncols()).filter(|&x| x != col).collect();
            let mut nd = d.submatrix(&keep_rows, &keep_cols);
            for (a, &x) in keep_rows.iter().enumerate() {
                for (b, &y) in keep_cols.iter().enumerate() {
                    let (cx, ry) = (d.get(x, col), d.get(r, y));
                    if cx.is_zero() || ry.is_zero() {
                        continue;
                    }
                    let v = nd.get(a, b).checked_sub(&cx.checked_mul(ry)?.scale(uinv))?;
                    nd.set(a, b, ring.reduce(&v)?);
                }
            }
            diffs[k] = nd;
            // d_{i+1} loses row `col`, d_{i-1} loses column `r`
            if k + 1 < diffs.len() {
                let nx = &diffs[k + 1];
                let rows: Vec<usize> = (0..nx.nrows()).filter(|&x| x != col).collect();
                diffs[k + 1] = nx.submatrix(&rows, &(0..nx.ncols()).collect::<Vec<_>>());
            }
            if k >= 1 {
                let pv = &diffs[k - 1];
                let cols: Vec<usize> = (0..pv.ncols()).filter(|&x| x != r).collect();
                diffs[k - 1] = pv.submatrix(&(0..pv.nrows()).collect::<Vec<_>>(), &cols);
            }
            shifts[k].remove(r);
            shifts[k + 1].remove(col);
            c = Complex::new(&ring, c.lo(), shifts, diffs)?;
            continue 'outer;
        }
        return Ok(c);
    }
}
