use crate::error::{Error, Result};
use crate::groebner::{compute, GroebnerBasis, Lifter, ModuleElement};
use crate::invariants::hilbert::count_standard_monomials;
use crate::invariants::HilbertSeries;
use crate::matrix::PolyMatrix;
use crate::monomial::{ModuleOrder, Monomial};

use super::complex::Complex;
use super::presentation::ModulePresentation;

/// `H_i = Z_i / B_i` of a complex, flattened into a presentation whose
/// generators are cycle representatives in `C_i`.
#[derive(Clone, Debug)]
pub struct HomologyModule {
    degree: i64,
    presentation: ModulePresentation,
    cycles: PolyMatrix,
    hilbert: HilbertSeries,
    k_dimension: Option<u64>,
}

impl HomologyModule {
    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn presentation(&self) -> &ModulePresentation {
        &self.presentation
    }

    /// Cycle representatives, one column per generator of the presentation.
    pub fn cycles(&self) -> &PolyMatrix {
        &self.cycles
    }

    pub fn is_zero(&self) -> bool {
        self.presentation.rank() == 0
    }

    pub fn hilbert(&self) -> &HilbertSeries {
        &self.hilbert
    }

    pub fn finite_length(&self) -> bool {
        self.k_dimension.is_some()
    }

    pub fn k_dimension(&self) -> Option<u64> {
        self.k_dimension
    }

    /// Internal degrees of the generators.
    pub fn generator_degrees(&self) -> &[i64] {
        self.presentation.shifts()
    }
}

/// Generators of the cycles `Z_i`, as elements of `S^{rank C_i}` sorted
/// under the order of `C_i`.
fn cycle_generators(c: &Complex, i: i64) -> Result<Vec<ModuleElement>> {
    let ring = c.ring();
    let amb = ring.ambient();
    let order = c.order(i);
    let rank = c.rank(i);
    let nvars = ring.nvars();
    if rank == 0 {
        return Ok(Vec::new());
    }
    if c.rank(i - 1) == 0 || c.differential(i).is_none() {
        return Ok((0..rank).map(|k| ModuleElement::unit(nvars, k)).collect());
    }
    let tgt_order = c.order(i - 1);
    let mut rels = ring.relations(&tgt_order);
    if let Some(u) = c.relations(i - 1) {
        rels.extend(u.columns_as_elements(&tgt_order));
    }
    let lifter = Lifter::new(amb, &c.differential_columns(i), c.shifts(i - 1), c.shifts(i), &rels)?;
    let field = amb.field();
    let mut out = Vec::new();
    for z in lifter.kernel() {
        let z = ring.reduce_element(&z.resort(field, &order), &order)?;
        if !z.is_zero() {
            out.push(z);
        }
    }
    Ok(out)
}

/// Boundaries plus the relations of `C_i` (without the ideal).
fn boundary_generators(c: &Complex, i: i64) -> Vec<ModuleElement> {
    let order = c.order(i);
    let mut out = c.differential_columns(i + 1).into_iter().map(|v| v.resort(c.ring().ambient().field(), &order)).collect::<Vec<_>>();
    if let Some(u) = c.relations(i) {
        out.extend(u.columns_as_elements(&order));
    }
    out
}

/// Whether `H_i(C) = 0`, without building a presentation.
pub fn homology_vanishes(c: &Complex, i: i64) -> Result<bool> {
    check_range(c, i)?;
    if c.rank(i) == 0 {
        return Ok(true);
    }
    let ring = c.ring();
    let order = c.order(i);
    let z = cycle_generators(c, i)?;
    if z.is_empty() {
        return Ok(true);
    }
    let gb = compute(ring.ambient(), &order, &ring.relations(&order), &boundary_generators(c, i))?.basis;
    for v in &z {
        if !gb.contains(v)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn check_range(c: &Complex, i: i64) -> Result<()> {
    if i < c.lo() || i > c.hi() {
        return Err(Error::Input(format!("homological degree {i} outside {}..{}", c.lo(), c.hi())));
    }
    Ok(())
}

/// `H_i(C)` as a module presentation. Generators are a minimal set of
/// cycles modulo boundaries; relations are the syzygies of those cycles
/// modulo boundaries, minimalized.
pub fn homology(c: &Complex, i: i64) -> Result<HomologyModule> {
    check_range(c, i)?;
    let ring = c.ring();
    let amb = ring.ambient();
    let field = amb.field();
    let order = c.order(i);
    let z = cycle_generators(c, i)?;
    let mut ambient = ring.relations(&order);
    ambient.extend(boundary_generators(c, i));
    let flags = compute(amb, &order, &ambient, &z)?.minimal;
    let gens: Vec<ModuleElement> = z.into_iter().zip(flags).filter(|(_, f)| *f).map(|(v, _)| v).collect();
    let shifts: Vec<i64> = gens.iter().map(|g| g.sugar(&order)).collect();
    let cycles = PolyMatrix::from_elements(amb, c.rank(i), &gens);

    let relations = if gens.is_empty() {
        PolyMatrix::zeros(amb, 0, 0)
    } else {
        let lifter = Lifter::new(amb, &gens, c.shifts(i), &shifts, &ambient)?;
        let src_order = ModuleOrder::term_over_position(amb.order(), shifts.clone());
        let syz: Vec<ModuleElement> = lifter
            .kernel()
            .into_iter()
            .map(|v| ring.reduce_element(&v.resort(field, &src_order), &src_order))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .filter(|v| !v.is_zero())
            .collect();
        let keep = compute(amb, &src_order, &ring.relations(&src_order), &syz)?.minimal;
        let syz: Vec<ModuleElement> = syz.into_iter().zip(keep).filter(|(_, f)| *f).map(|(v, _)| v).collect();
        PolyMatrix::from_elements(amb, gens.len(), &syz)
    };
    let presentation = ModulePresentation::new(ring, shifts, relations)?;
    let hilbert = presentation.hilbert()?;
    let k_dimension = finite_k_dimension(presentation.basis()?, &hilbert)?;
    Ok(HomologyModule { degree: i, presentation, cycles, hilbert, k_dimension })
}

/// Length from the Hilbert series, cross-checked against a direct count of
/// standard monomials. `None` when the module has positive dimension.
pub(crate) fn finite_k_dimension(gb: &GroebnerBasis, hilbert: &HilbertSeries) -> Result<Option<u64>> {
    let Some(len) = hilbert.length() else {
        return Ok(None);
    };
    let mut per_pos: Vec<Vec<Monomial>> = vec![Vec::new(); gb.rank()];
    for (pos, m) in gb.leading_terms() {
        per_pos[pos].push(m.clone());
    }
    let counted = count_standard_monomials(gb.ring().nvars(), &per_pos);
    if counted != Some(len) {
        return Err(Error::Consistency(format!("length {len} from the Hilbert series, {counted:?} by counting")));
    }
    Ok(Some(len))
}

/// Total `F_p`-dimension of a finite-length homology module.
pub fn k_dimension(h: &HomologyModule) -> Result<u64> {
    h.k_dimension.ok_or_else(|| Error::Precondition(format!("H_{} does not have finite length", h.degree)))
}

/// Length of a finite-length module.
pub fn module_length(m: &ModulePresentation) -> Result<u64> {
    let hilbert = m.hilbert()?;
    finite_k_dimension(m.basis()?, &hilbert)?.ok_or_else(|| Error::Precondition("module does not have finite length".into()))
}

/// Largest `i` with `H_i(C) != 0`, or `None` when the complex is exact.
pub fn sup_homology(c: &Complex) -> Result<Option<i64>> {
    for i in (c.lo()..=c.hi()).rev() {
        if !homology_vanishes(c, i)? {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

/// All homology modules of a complex.
pub fn all_homology(c: &Complex) -> Result<Vec<HomologyModule>> {
    (c.lo()..=c.hi()).map(|i| homology(c, i)).collect()
}
