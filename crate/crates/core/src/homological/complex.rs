use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groebner::{compute, ModuleElement};
use crate::matrix::PolyMatrix;
use crate::monomial::ModuleOrder;
use crate::ring::QuotientRing;

use super::presentation::ModulePresentation;

/// A bounded, homologically indexed complex `C_hi -> ... -> C_lo` of graded
/// modules over a quotient ring. Each term is a free module `R^b` with
/// generator degrees, optionally modulo a submodule of relations; a complex
/// with no relations anywhere is a complex of free modules.
#[derive(Clone, Debug)]
pub struct Complex {
    ring: Arc<QuotientRing>,
    lo: i64,
    shifts: Vec<Vec<i64>>,
    relations: Vec<Option<PolyMatrix>>,
    /// `differentials[k]` maps term `lo + k + 1` to term `lo + k`.
    differentials: Vec<PolyMatrix>,
}

/// The free case is the common one; the name is kept for readability.
pub type FreeComplex = Complex;

impl Complex {
    /// A complex of free modules. `shifts[k]` are the generator degrees of
    /// the term in homological degree `lo + k`.
    pub fn new(ring: &Arc<QuotientRing>, lo: i64, shifts: Vec<Vec<i64>>, differentials: Vec<PolyMatrix>) -> Result<Self> {
        let n = shifts.len();
        let relations = vec![None; n];
        Self::with_relations(ring, lo, shifts, differentials, relations)
    }

    pub fn with_relations(
        ring: &Arc<QuotientRing>,
        lo: i64,
        shifts: Vec<Vec<i64>>,
        differentials: Vec<PolyMatrix>,
        relations: Vec<Option<PolyMatrix>>,
    ) -> Result<Self> {
        if differentials.len() + 1 != shifts.len().max(1) || relations.len() != shifts.len() {
            return Err(Error::Input(format!("{} terms need {} differentials", shifts.len(), shifts.len().saturating_sub(1))));
        }
        let c = Complex { ring: ring.clone(), lo, shifts, relations, differentials };
        c.validate()?;
        Ok(c)
    }

    /// The zero complex.
    pub fn zero(ring: &Arc<QuotientRing>) -> Self {
        Complex { ring: ring.clone(), lo: 0, shifts: Vec::new(), relations: Vec::new(), differentials: Vec::new() }
    }

    /// A module placed in homological degree `degree`.
    pub fn from_module(m: &ModulePresentation, degree: i64) -> Self {
        let relations = if m.is_free() { None } else { Some(m.relations().clone()) };
        Complex { ring: m.ring().clone(), lo: degree, shifts: vec![m.shifts().to_vec()], relations: vec![relations], differentials: Vec::new() }
    }

    fn validate(&self) -> Result<()> {
        let amb = self.ring.ambient();
        for (k, d) in self.differentials.iter().enumerate() {
            let (tgt, src) = (&self.shifts[k], &self.shifts[k + 1]);
            if d.ring() != amb {
                return Err(Error::RingMismatch("differential over another ring".into()));
            }
            if d.nrows() != tgt.len() || d.ncols() != src.len() {
                return Err(Error::Input(format!(
                    "differential d_{} is {}x{}, expected {}x{}",
                    self.lo + k as i64 + 1,
                    d.nrows(),
                    d.ncols(),
                    tgt.len(),
                    src.len()
                )));
            }
            for r in 0..d.nrows() {
                for c in 0..d.ncols() {
                    let g = d.get(r, c);
                    if g.is_zero() {
                        continue;
                    }
                    let want = src[c] - tgt[r];
                    if !g.is_homogeneous() || g.degree().map(i64::from) != Some(want) {
                        return Err(Error::Input(format!(
                            "entry ({r},{c}) of d_{} is not homogeneous of degree {want}",
                            self.lo + k as i64 + 1
                        )));
                    }
                }
            }
        }
        for (k, rel) in self.relations.iter().enumerate() {
            if let Some(u) = rel {
                ModulePresentation::new(&self.ring, self.shifts[k].clone(), u.clone())?;
            }
        }
        Ok(())
    }

    pub fn ring(&self) -> &Arc<QuotientRing> {
        &self.ring
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    /// Highest homological degree with a term; `lo - 1` when empty.
    pub fn hi(&self) -> i64 {
        self.lo + self.shifts.len() as i64 - 1
    }

    fn index(&self, i: i64) -> Option<usize> {
        (i >= self.lo && i <= self.hi()).then(|| (i - self.lo) as usize)
    }

    pub fn rank(&self, i: i64) -> usize {
        self.index(i).map_or(0, |k| self.shifts[k].len())
    }

    pub fn shifts(&self, i: i64) -> &[i64] {
        self.index(i).map_or(&[], |k| &self.shifts[k])
    }

    /// `d_i : C_i -> C_{i-1}`, when both terms exist.
    pub fn differential(&self, i: i64) -> Option<&PolyMatrix> {
        let k = self.index(i)?;
        (k >= 1).then(|| &self.differentials[k - 1])
    }

    pub fn relations(&self, i: i64) -> Option<&PolyMatrix> {
        self.index(i).and_then(|k| self.relations[k].as_ref()).filter(|m| m.ncols() > 0)
    }

    pub fn is_free(&self) -> bool {
        (self.lo..=self.hi()).all(|i| self.relations(i).is_none())
    }

    pub fn order(&self, i: i64) -> ModuleOrder {
        ModuleOrder::term_over_position(self.ring.ambient().order(), self.shifts(i).to_vec())
    }

    pub fn term(&self, i: i64) -> ModulePresentation {
        let rel = self.relations(i).cloned().unwrap_or_else(|| PolyMatrix::zeros(self.ring.ambient(), self.rank(i), 0));
        ModulePresentation::new(&self.ring, self.shifts(i).to_vec(), rel).expect("validated on construction")
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.shifts.iter().map(Vec::len).collect()
    }

    /// Homological shift: the term in degree `i` moves to `i + k`.
    pub fn shift(&self, k: i64) -> Self {
        Complex { lo: self.lo + k, ..self.clone() }
    }

    /// Checks `d_i d_{i+1} = 0` modulo the ideal (and the relations of the
    /// target, if any), and that each differential maps relations into
    /// relations.
    pub fn verify(&self) -> Result<()> {
        for i in self.lo + 1..self.hi() {
            let (a, b) = (self.differential(i).unwrap(), self.differential(i + 1).unwrap());
            let prod = a.mul(b)?;
            self.check_in_relations(i - 1, &prod, &format!("d_{} d_{}", i, i + 1))?;
        }
        for i in self.lo + 1..=self.hi() {
            if let Some(u) = self.relations(i) {
                let image = self.differential(i).unwrap().mul(u)?;
                self.check_in_relations(i - 1, &image, &format!("d_{i} of the relations"))?;
            }
        }
        Ok(())
    }

    fn check_in_relations(&self, i: i64, m: &PolyMatrix, what: &str) -> Result<()> {
        if m.ncols() == 0 || m.nrows() == 0 {
            return Ok(());
        }
        match self.relations(i) {
            None => {
                for g in m.entries() {
                    if !self.ring.is_zero(g)? {
                        return Err(Error::Consistency(format!("{what} is not zero")));
                    }
                }
            }
            Some(u) => {
                let order = self.order(i);
                let gb = compute(self.ring.ambient(), &order, &self.ring.relations(&order), &u.columns_as_elements(&order))?.basis;
                for v in m.columns_as_elements(&order) {
                    if !gb.contains(&v)? {
                        return Err(Error::Consistency(format!("{what} does not land in the relations")));
                    }
                }
            }
        }
        Ok(())
    }

    /// Tensor product of two complexes of free modules, with the sign
    /// `d(a ⊗ b) = da ⊗ b + (-1)^|a| a ⊗ db`.
    pub fn tensor(&self, other: &Complex) -> Result<Complex> {
        if *self.ring != *other.ring {
            return Err(Error::RingMismatch("tensor of complexes over different rings".into()));
        }
        if !self.is_free() || !other.is_free() {
            return Err(Error::Input("tensor product needs complexes of free modules".into()));
        }
        if self.shifts.is_empty() || other.shifts.is_empty() {
            return Ok(Complex::zero(&self.ring));
        }
        let amb = self.ring.ambient();
        let lo = self.lo + other.lo;
        let hi = self.hi() + other.hi();
        // components of total degree n: (a, offset) for a in self's range
        let comps = |n: i64| -> Vec<(i64, usize)> {
            let mut out = Vec::new();
            let mut off = 0;
            for a in self.lo..=self.hi() {
                let b = n - a;
                let r = self.rank(a) * other.rank(b);
                if r > 0 {
                    out.push((a, off));
                    off += r;
                }
            }
            out
        };
        let mut shifts = Vec::new();
        for n in lo..=hi {
            let mut s = Vec::new();
            for (a, _) in comps(n) {
                for x in self.shifts(a) {
                    for y in other.shifts(n - a) {
                        s.push(x + y);
                    }
                }
            }
            shifts.push(s);
        }
        let mut diffs = Vec::new();
        for n in lo + 1..=hi {
            let (src, tgt) = (comps(n), comps(n - 1));
            let rows = shifts[(n - 1 - lo) as usize].len();
            let cols = shifts[(n - lo) as usize].len();
            let mut d = PolyMatrix::zeros(amb, rows, cols);
            for &(a, soff) in &src {
                let b = n - a;
                // d_a ⊗ 1 into (a-1, b)
                if let (Some(da), Some(&(_, toff))) = (self.differential(a), tgt.iter().find(|(x, _)| *x == a - 1)) {
                    let block = da.kronecker(&PolyMatrix::identity(amb, other.rank(b)))?;
                    place(&mut d, &block, toff, soff);
                }
                // ±1 ⊗ d_b into (a, b-1)
                if let (Some(db), Some(&(_, toff))) = (other.differential(b), tgt.iter().find(|(x, _)| *x == a)) {
                    let mut block = PolyMatrix::identity(amb, self.rank(a)).kronecker(db)?;
                    if a.rem_euclid(2) == 1 {
                        block = block.map_entries(|g| Ok(-g))?;
                    }
                    place(&mut d, &block, toff, soff);
                }
            }
            diffs.push(d);
        }
        Complex::new(&self.ring, lo, shifts, diffs)
    }

    /// Reduces every differential entry modulo the ideal.
    pub fn reduced(&self) -> Result<Complex> {
        let diffs = self.differentials.iter().map(|d| d.map_entries(|g| self.ring.reduce(g))).collect::<Result<Vec<_>>>()?;
        Ok(Complex { differentials: diffs, ..self.clone() })
    }

    pub fn differentials(&self) -> &[PolyMatrix] {
        &self.differentials
    }

    /// Replaces the differentials (same shapes), e.g. after a change of rings.
    pub(crate) fn with_differentials(&self, differentials: Vec<PolyMatrix>, shifts: Vec<Vec<i64>>) -> Result<Complex> {
        Complex::with_relations(&self.ring, self.lo, shifts, differentials, self.relations.clone())
    }

    /// Columns of `d_i` as module elements of the target, for lifting.
    pub(crate) fn differential_columns(&self, i: i64) -> Vec<ModuleElement> {
        match self.differential(i) {
            Some(d) => d.columns_as_elements(&self.order(i - 1)),
            None => Vec::new(),
        }
    }
}

/// Writes `block` into `m` with its top-left corner at `(row, col)`.
pub(crate) fn place(m: &mut PolyMatrix, block: &PolyMatrix, row: usize, col: usize) {
    for i in 0..block.nrows() {
        for j in 0..block.ncols() {
            let g = block.get(i, j);
            if !g.is_zero() {
                let cur = m.get(row + i, col + j).clone();
                m.set(row + i, col + j, &cur + g);
            }
        }
    }
}
