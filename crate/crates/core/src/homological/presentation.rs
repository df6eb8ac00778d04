use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::groebner::{column_degree, compute, GroebnerBasis, ModuleElement};
use crate::invariants::HilbertSeries;
use crate::matrix::PolyMatrix;
use crate::monomial::ModuleOrder;
use crate::poly::Polynomial;
use crate::ring::QuotientRing;

/// A graded module `coker(R^a -> R^b)`: generators in degrees `shifts`,
/// relations given by the columns of a `b x a` matrix.
#[derive(Clone)]
pub struct ModulePresentation {
    ring: Arc<QuotientRing>,
    shifts: Vec<i64>,
    relations: PolyMatrix,
    basis: OnceLock<GroebnerBasis>,
}

impl fmt::Debug for ModulePresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ModulePresentation").field("shifts", &self.shifts).field("relations", &self.relations.to_strings()).finish()
    }
}

impl fmt::Display for ModulePresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.shifts.iter().map(|s| format!("R({})", -s)).collect();
        write!(f, "coker on {}", if gens.is_empty() { "0".to_string() } else { gens.join(" + ") })?;
        if self.relations.ncols() > 0 {
            write!(f, " by\n{}", self.relations)?;
        }
        Ok(())
    }
}

impl ModulePresentation {
    pub fn new(ring: &Arc<QuotientRing>, shifts: Vec<i64>, relations: PolyMatrix) -> Result<Self> {
        if relations.ring() != ring.ambient() {
            return Err(Error::RingMismatch("relation matrix over another ring".into()));
        }
        if relations.nrows() != shifts.len() {
            return Err(Error::Input(format!("relation matrix has {} rows for {} generators", relations.nrows(), shifts.len())));
        }
        let order = ModuleOrder::term_over_position(ring.ambient().order(), shifts.clone());
        for col in relations.columns_as_elements(&order) {
            column_degree(&col, &order)?;
        }
        Ok(ModulePresentation { ring: ring.clone(), shifts, relations, basis: OnceLock::new() })
    }

    pub fn free(ring: &Arc<QuotientRing>, shifts: Vec<i64>) -> Self {
        let relations = PolyMatrix::zeros(ring.ambient(), shifts.len(), 0);
        ModulePresentation { ring: ring.clone(), shifts, relations, basis: OnceLock::new() }
    }

    /// `R/(gens)`.
    pub fn cyclic(ring: &Arc<QuotientRing>, gens: &[Polynomial]) -> Result<Self> {
        let m = PolyMatrix::from_rows(ring.ambient(), vec![gens.to_vec()])?;
        let m = if gens.is_empty() { PolyMatrix::zeros(ring.ambient(), 1, 0) } else { m };
        Self::new(ring, vec![0], m)
    }

    pub fn parse_cyclic(ring: &Arc<QuotientRing>, gens: &[&str]) -> Result<Self> {
        let gens = gens.iter().map(|s| ring.parse_poly(s)).collect::<Result<Vec<_>>>()?;
        Self::cyclic(ring, &gens)
    }

    /// The residue field `k = R/m`.
    pub fn residue_field(ring: &Arc<QuotientRing>) -> Self {
        Self::cyclic(ring, &ring.variables()).expect("variables are homogeneous")
    }

    pub fn ring(&self) -> &Arc<QuotientRing> {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.shifts.len()
    }

    pub fn shifts(&self) -> &[i64] {
        &self.shifts
    }

    pub fn relations(&self) -> &PolyMatrix {
        &self.relations
    }

    /// Term-over-position order weighted by the generator degrees.
    pub fn order(&self) -> ModuleOrder {
        ModuleOrder::term_over_position(self.ring.ambient().order(), self.shifts.clone())
    }

    pub fn relation_elements(&self) -> Vec<ModuleElement> {
        self.relations.columns_as_elements(&self.order())
    }

    /// Gröbner basis of the relations together with `I * S^b`.
    pub fn basis(&self) -> Result<&GroebnerBasis> {
        if let Some(b) = self.basis.get() {
            return Ok(b);
        }
        let order = self.order();
        let gb = compute(self.ring.ambient(), &order, &self.ring.relations(&order), &self.relation_elements())?.basis;
        let _ = self.basis.set(gb);
        Ok(self.basis.get().unwrap())
    }

    pub fn is_zero(&self) -> Result<bool> {
        let nvars = self.ring.nvars();
        let gb = self.basis()?;
        for i in 0..self.rank() {
            if !gb.contains(&ModuleElement::unit(nvars, i))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_free(&self) -> bool {
        self.relations.ncols() == 0
    }

    pub fn hilbert(&self) -> Result<HilbertSeries> {
        Ok(HilbertSeries::from_basis(self.basis()?))
    }

    /// Whether `v` (an element of `R^b`) is zero in the module.
    pub fn element_is_zero(&self, v: &[Polynomial]) -> Result<bool> {
        self.basis()?.contains(&ModuleElement::from_column(v, &self.order()))
    }

    /// Same generators and the same relation submodule.
    pub fn same_presentation(&self, other: &ModulePresentation) -> Result<bool> {
        if self.shifts != other.shifts || *self.ring != *other.ring {
            return Ok(false);
        }
        let (a, b) = (self.basis()?, other.basis()?);
        for v in self.relation_elements() {
            if !b.contains(&v)? {
                return Ok(false);
            }
        }
        for v in other.relation_elements() {
            if !a.contains(&v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Internal degree shift: generators move from degree `s` to `s + k`.
    pub fn twist(&self, k: i64) -> Self {
        let shifts = self.shifts.iter().map(|s| s + k).collect();
        ModulePresentation { ring: self.ring.clone(), shifts, relations: self.relations.clone(), basis: OnceLock::new() }
    }

    /// A presentation with a minimal set of generators and of relations,
    /// and relation entries reduced modulo the ideal.
    pub fn minimal(&self) -> Result<ModulePresentation> {
        let ring = &self.ring;
        let mut shifts = self.shifts.clone();
        let mut mat = self.relations.map_entries(|g| ring.reduce(g))?;
        while let Some((r, c)) = find_unit(&mat) {
            let u = mat.get(r, c).constant_term();
            let field = ring.ambient().field();
            let uinv = field.inv(u);
            let pivot_col = mat.column(c);
            for j in 0..mat.ncols() {
                if j == c || mat.get(r, j).is_zero() {
                    continue;
                }
                let factor = mat.get(r, j).scale(uinv);
                for i in 0..mat.nrows() {
                    let v = mat.get(i, j).checked_sub(&factor.checked_mul(&pivot_col[i])?)?;
                    mat.set(i, j, ring.reduce(&v)?);
                }
            }
            let rows: Vec<usize> = (0..mat.nrows()).filter(|&i| i != r).collect();
            let cols: Vec<usize> = (0..mat.ncols()).filter(|&j| j != c).collect();
            mat = mat.submatrix(&rows, &cols);
            shifts.remove(r);
        }
        let order = ModuleOrder::term_over_position(ring.ambient().order(), shifts.clone());
        let cols: Vec<ModuleElement> = mat.columns_as_elements(&order).into_iter().filter(|c| !c.is_zero()).collect();
        let flags = compute(ring.ambient(), &order, &ring.relations(&order), &cols)?.minimal;
        let kept: Vec<ModuleElement> = cols.into_iter().zip(flags).filter(|(_, f)| *f).map(|(c, _)| c).collect();
        let relations = PolyMatrix::from_elements(ring.ambient(), shifts.len(), &kept);
        ModulePresentation::new(ring, shifts, relations)
    }
}

/// First entry with a nonzero constant term, scanning rows then columns.
pub(crate) fn find_unit(m: &PolyMatrix) -> Option<(usize, usize)> {
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            if m.get(i, j).constant_term() != 0 {
                return Some((i, j));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residue_field_has_length_one() {
        let r = QuotientRing::parse(2, &["x", "y"], &["x*y"]).unwrap();
        let k = ModulePresentation::residue_field(&r);
        assert_eq!(k.hilbert().unwrap().length(), Some(1));
        assert!(!k.is_zero().unwrap());
    }

    #[test]
    fn unit_relation_kills_generator() {
        let r = QuotientRing::polynomial_ring(3, &["x", "y"]).unwrap();
        let rel = PolyMatrix::parse(r.ambient(), &[vec!["1", "0"], vec!["x", "y"]]).unwrap();
        let m = ModulePresentation::new(&r, vec![1, 0], rel).unwrap();
        let min = m.minimal().unwrap();
        assert_eq!(min.rank(), 1);
        assert_eq!(min.shifts(), &[0]);
        assert_eq!(min.relations().to_strings(), vec![vec!["y".to_string()]]);
        assert_eq!(min.hilbert().unwrap(), m.hilbert().unwrap());
    }

    #[test]
    fn redundant_relations_are_dropped() {
        let r = QuotientRing::parse(2, &["x", "y"], &["x*y"]).unwrap();
        let m = ModulePresentation::parse_cyclic(&r, &["x", "x^2", "x*y"]).unwrap().minimal().unwrap();
        assert_eq!(m.relations().to_strings(), vec![vec!["x".to_string()]]);
    }

    #[test]
    fn inhomogeneous_relation_rejected() {
        let r = QuotientRing::polynomial_ring(2, &["x", "y"]).unwrap();
        assert!(ModulePresentation::parse_cyclic(&r, &["x + y^2"]).is_err());
    }

    #[test]
    fn whole_ring_quotient_is_zero() {
        let r = QuotientRing::polynomial_ring(2, &["x"]).unwrap();
        assert!(ModulePresentation::parse_cyclic(&r, &["1"]).unwrap().is_zero().unwrap());
    }
}
