use std::sync::Arc;

use crate::error::{Error, Result};
use crate::matrix::PolyMatrix;
use crate::monomial::{ModuleOrder, Monomial};
use crate::poly::{PolyRing, Polynomial};

use super::buchberger::{compute, GroebnerBasis};
use super::element::{ModTerm, ModuleElement};

/// The relations `f * e_i` that turn `S^rank` into `(S/I)^rank`.
pub fn ideal_relations(ideal: &[Polynomial], order: &ModuleOrder) -> Vec<ModuleElement> {
    let mut out = Vec::new();
    for i in 0..order.rank() {
        for f in ideal {
            if !f.is_zero() {
                let terms = f.terms().iter().map(|t| ModTerm { coeff: t.coeff, pos: i, mono: t.mono.clone() }).collect();
                out.push(ModuleElement::from_terms(terms, f.ring().field(), order));
            }
        }
    }
    out
}

/// Gröbner data for a map `A: S^m -> S^b / N`, where `N` is spanned by
/// `relations`. Kernels and preimages are both read off one basis of the
/// graph `{(A c + n, c)}` under an order that eliminates the target.
pub struct Lifter {
    target_rank: usize,
    source_rank: usize,
    source_order: ModuleOrder,
    gb: GroebnerBasis,
}

impl Lifter {
    /// `columns` and `relations` are sorted under the term-over-position
    /// order with `target_shifts`.
    pub fn new(
        ring: &Arc<PolyRing>,
        columns: &[ModuleElement],
        target_shifts: &[i64],
        source_shifts: &[i64],
        relations: &[ModuleElement],
    ) -> Result<Self> {
        assert_eq!(columns.len(), source_shifts.len());
        let (b, m) = (target_shifts.len(), source_shifts.len());
        let shifts: Vec<i64> = target_shifts.iter().chain(source_shifts).copied().collect();
        let blocks: Vec<u32> = (0..b).map(|_| 0).chain((0..m).map(|_| 1)).collect();
        let order = ModuleOrder::with_blocks(ring.order(), shifts, blocks);
        let field = ring.field();
        let nvars = ring.nvars();
        let gens: Vec<ModuleElement> = columns
            .iter()
            .enumerate()
            .map(|(j, c)| {
                let mut terms = c.terms().to_vec();
                terms.push(ModTerm { coeff: 1, pos: b + j, mono: Monomial::one(nvars) });
                ModuleElement::from_terms(terms, field, &order)
            })
            .collect();
        let ambient: Vec<ModuleElement> = relations.iter().map(|r| r.resort(field, &order)).collect();
        let gb = compute(ring, &order, &ambient, &gens)?.basis;
        let source_order = ModuleOrder::term_over_position(ring.order(), source_shifts.to_vec());
        Ok(Lifter { target_rank: b, source_rank: m, source_order, gb })
    }

    /// Generators of `{c : A c ∈ N}`, as elements of `S^m`.
    pub fn kernel(&self) -> Vec<ModuleElement> {
        let b = self.target_rank;
        self.gb
            .elements()
            .iter()
            .filter(|e| e.leading().unwrap().pos >= b)
            .map(|e| e.project(b..b + self.source_rank))
            .collect()
    }

    /// Some `c` with `A c ≡ y (mod N)`, or `None` when `y` is not in the image.
    pub fn lift(&self, y: &ModuleElement) -> Result<Option<ModuleElement>> {
        let field = self.gb.ring().field();
        let nf = self.gb.normal_form(&y.resort(field, self.gb.order()))?;
        if nf.terms().iter().any(|t| t.pos < self.target_rank) {
            return Ok(None);
        }
        let c = nf.project(self.target_rank..self.target_rank + self.source_rank);
        Ok(Some(c.scale(field.p() - 1, field)))
    }

    pub fn source_order(&self) -> &ModuleOrder {
        &self.source_order
    }

    pub fn basis_len(&self) -> usize {
        self.gb.len()
    }
}

/// A submodule of `(S/I)^rank` with a cached Gröbner basis of its preimage
/// in `S^rank` (generators together with `I * S^rank`).
#[derive(Clone, Debug)]
pub struct SubmoduleData {
    ring: Arc<PolyRing>,
    ideal: Vec<Polynomial>,
    order: ModuleOrder,
    generators: Vec<ModuleElement>,
    basis: GroebnerBasis,
}

impl SubmoduleData {
    pub fn new(ring: &Arc<PolyRing>, shifts: Vec<i64>, ideal: &[Polynomial], generators: Vec<ModuleElement>) -> Result<Self> {
        let order = ModuleOrder::term_over_position(ring.order(), shifts);
        let field = ring.field();
        let generators: Vec<ModuleElement> = generators.into_iter().map(|g| g.resort(field, &order)).collect();
        let ambient = ideal_relations(ideal, &order);
        let basis = compute(ring, &order, &ambient, &generators)?.basis;
        Ok(SubmoduleData { ring: ring.clone(), ideal: ideal.to_vec(), order, generators, basis })
    }

    pub fn from_columns(m: &PolyMatrix, shifts: Vec<i64>, ideal: &[Polynomial]) -> Result<Self> {
        let order = ModuleOrder::term_over_position(m.ring().order(), shifts.clone());
        Self::new(m.ring(), shifts, ideal, m.columns_as_elements(&order))
    }

    pub fn rank(&self) -> usize {
        self.order.rank()
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn order(&self) -> &ModuleOrder {
        &self.order
    }

    pub fn generators(&self) -> &[ModuleElement] {
        &self.generators
    }

    pub fn basis(&self) -> &GroebnerBasis {
        &self.basis
    }

    pub fn ideal(&self) -> &[Polynomial] {
        &self.ideal
    }

    pub fn contains(&self, v: &ModuleElement) -> Result<bool> {
        self.basis.contains(&v.resort(self.ring.field(), &self.order))
    }

    /// True when the submodule is zero in `(S/I)^rank`.
    pub fn is_zero(&self) -> Result<bool> {
        let ideal_gb = self.basis_of_ideal_only()?;
        for g in &self.generators {
            if !ideal_gb.normal_form(g)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn basis_of_ideal_only(&self) -> Result<GroebnerBasis> {
        let ambient = ideal_relations(&self.ideal, &self.order);
        Ok(compute(&self.ring, &self.order, &ambient, &[])?.basis)
    }

    pub fn generator_columns(&self) -> PolyMatrix {
        PolyMatrix::from_elements(&self.ring, self.rank(), &self.generators)
    }
}

/// Equality of two submodules of the same free module: each generating set
/// reduces to zero against the other's basis.
pub fn submodule_equal(u: &SubmoduleData, v: &SubmoduleData) -> Result<bool> {
    if u.rank() != v.rank() || u.ring() != v.ring() {
        return Err(Error::RingMismatch("submodules of different free modules".into()));
    }
    for g in u.generators() {
        if !v.contains(g)? {
            return Ok(false);
        }
    }
    for g in v.generators() {
        if !u.contains(g)? {
            return Ok(false);
        }
    }
    // The ideal parts must agree too.
    let uo = &u.order;
    for f in ideal_relations(v.ideal(), uo) {
        if !u.contains(&f)? {
            return Ok(false);
        }
    }
    for f in ideal_relations(u.ideal(), v.order()) {
        if !v.contains(&f)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Shifted degree of a homogeneous column, given target shifts.
pub(crate) fn column_degree(col: &ModuleElement, order: &ModuleOrder) -> Result<Option<i64>> {
    if col.is_zero() {
        return Ok(None);
    }
    if !col.is_homogeneous(order) {
        return Err(Error::Input("matrix column is not homogeneous".into()));
    }
    Ok(Some(col.sugar(order)))
}

/// Kernel of `A: R^a -> R^b` for `R = S/I` (or `S` when `ideal` is empty),
/// returned as a submodule of `R^a`. Target generators sit in degree 0 and
/// source generator `j` in the degree of column `j`.
pub fn syzygies(a: &PolyMatrix, ideal: &[Polynomial]) -> Result<SubmoduleData> {
    let ring = a.ring();
    let target_shifts = vec![0; a.nrows()];
    let order = ModuleOrder::term_over_position(ring.order(), target_shifts.clone());
    let cols = a.columns_as_elements(&order);
    let source_shifts = cols
        .iter()
        .map(|c| Ok(column_degree(c, &order)?.unwrap_or(0)))
        .collect::<Result<Vec<_>>>()?;
    let lifter = Lifter::new(ring, &cols, &target_shifts, &source_shifts, &ideal_relations(ideal, &order))?;
    let kernel = lifter.kernel();
    let sub = SubmoduleData::new(ring, source_shifts, ideal, kernel)?;
    // keep only generators that are nonzero over S/I
    let ideal_gb = sub.basis_of_ideal_only()?;
    let gens: Vec<ModuleElement> = sub
        .generators()
        .iter()
        .map(|g| ideal_gb.normal_form(g))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|g| !g.is_zero())
        .collect();
    Ok(SubmoduleData { generators: gens, ..sub })
}
