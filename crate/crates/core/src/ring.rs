//! Standard graded quotient rings `R = F_p[x_1..x_n]/I`.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::groebner::{buchberger, GroebnerBasis, ModTerm, ModuleElement};
use crate::invariants::RingInvariants;
use crate::monomial::{ModuleOrder, MonomialOrder};
use crate::poly::{Limits, PolyRing, Polynomial};

/// A quotient of a polynomial ring by a homogeneous ideal, with its reduced
/// Gröbner basis and a write-once cache of numerical invariants.
pub struct QuotientRing {
    ambient: Arc<PolyRing>,
    ideal: Vec<Polynomial>,
    gb: GroebnerBasis,
    gb_polys: Vec<Polynomial>,
    invariants: OnceLock<RingInvariants>,
}

impl fmt::Debug for QuotientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for QuotientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}[{}]", self.characteristic(), self.ambient.vars().join(","))?;
        if !self.gb_polys.is_empty() {
            let gens: Vec<String> = self.ideal.iter().map(|g| g.to_string()).collect();
            write!(f, "/({})", gens.join(", "))?;
        }
        Ok(())
    }
}

impl PartialEq for QuotientRing {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.gb == other.gb
    }
}

impl QuotientRing {
    pub fn new(ambient: &Arc<PolyRing>, ideal: Vec<Polynomial>) -> Result<Arc<Self>> {
        for g in &ideal {
            if g.ring() != ambient {
                return Err(Error::RingMismatch("ideal generator from another ring".into()));
            }
            if !g.is_homogeneous() {
                return Err(Error::Input(format!("ideal generator {g} is not homogeneous")));
            }
        }
        let ideal: Vec<Polynomial> = ideal.into_iter().filter(|g| !g.is_zero()).collect();
        let order = ModuleOrder::term_over_position(ambient.order(), vec![0]);
        let gens: Vec<ModuleElement> = ideal.iter().map(ModuleElement::from_poly).collect();
        let gb = buchberger(ambient, &gens, &order)?;
        let gb_polys = gb.elements().iter().map(|e| e.to_column(ambient, 1).remove(0)).collect();
        Ok(Arc::new(QuotientRing { ambient: ambient.clone(), ideal, gb, gb_polys, invariants: OnceLock::new() }))
    }

    /// Builds `F_p[vars]/(ideal)` from text.
    pub fn parse(p: u64, vars: &[&str], ideal: &[&str]) -> Result<Arc<Self>> {
        Self::parse_with(p, vars, ideal, Limits::default())
    }

    pub fn parse_with(p: u64, vars: &[&str], ideal: &[&str], limits: Limits) -> Result<Arc<Self>> {
        let ambient = PolyRing::with_options(p, vars.iter().map(|s| s.to_string()).collect(), MonomialOrder::default(), limits)?;
        let gens = ideal.iter().map(|s| Polynomial::parse(&ambient, s)).collect::<Result<Vec<_>>>()?;
        Self::new(&ambient, gens)
    }

    pub fn polynomial_ring(p: u64, vars: &[&str]) -> Result<Arc<Self>> {
        Self::parse(p, vars, &[])
    }

    pub fn ambient(&self) -> &Arc<PolyRing> {
        &self.ambient
    }

    pub fn ideal(&self) -> &[Polynomial] {
        &self.ideal
    }

    /// Reduced Gröbner basis of the ideal.
    pub fn groebner_basis(&self) -> &GroebnerBasis {
        &self.gb
    }

    /// The reduced Gröbner basis as polynomials; used as the relation set
    /// whenever a module over `R` is lifted to the polynomial ring.
    pub fn ideal_basis(&self) -> &[Polynomial] {
        &self.gb_polys
    }

    pub fn nvars(&self) -> usize {
        self.ambient.nvars()
    }

    pub fn characteristic(&self) -> u32 {
        self.ambient.characteristic()
    }

    pub fn limits(&self) -> Limits {
        self.ambient.limits()
    }

    pub fn variables(&self) -> Vec<Polynomial> {
        (0..self.nvars()).map(|i| Polynomial::var(&self.ambient, i)).collect()
    }

    pub fn parse_poly(&self, src: &str) -> Result<Polynomial> {
        Polynomial::parse(&self.ambient, src)
    }

    pub fn one(&self) -> Polynomial {
        Polynomial::constant(&self.ambient, 1)
    }

    /// Normal form modulo the ideal.
    pub fn reduce(&self, g: &Polynomial) -> Result<Polynomial> {
        if self.gb.is_empty() || g.is_zero() {
            return Ok(g.clone());
        }
        let nf = self.gb.normal_form(&ModuleElement::from_poly(g))?;
        Ok(nf.to_column(&self.ambient, 1).remove(0))
    }

    pub fn is_zero(&self, g: &Polynomial) -> Result<bool> {
        Ok(self.reduce(g)?.is_zero())
    }

    /// `f * e_i` for every basis element `f` of the ideal and every position.
    pub fn relations(&self, order: &ModuleOrder) -> Vec<ModuleElement> {
        crate::groebner::ideal_relations(&self.gb_polys, order)
    }

    /// Position-wise normal form of a module element modulo `I * S^r`.
    pub fn reduce_element(&self, v: &ModuleElement, order: &ModuleOrder) -> Result<ModuleElement> {
        if self.gb.is_empty() || v.is_zero() {
            return Ok(v.clone());
        }
        let field = self.ambient.field();
        let mut terms = Vec::with_capacity(v.len());
        let mut by_pos: Vec<(usize, Vec<ModTerm>)> = Vec::new();
        for t in v.terms() {
            match by_pos.iter_mut().find(|(p, _)| *p == t.pos) {
                Some((_, ts)) => ts.push(t.clone()),
                None => by_pos.push((t.pos, vec![t.clone()])),
            }
        }
        let poly_order = ModuleOrder::term_over_position(self.ambient.order(), vec![0]);
        for (pos, ts) in by_pos {
            let as_poly = ModuleElement::from_terms(ts.into_iter().map(|t| ModTerm { pos: 0, ..t }).collect(), field, &poly_order);
            let nf = self.gb.normal_form(&as_poly)?;
            terms.extend(nf.terms().iter().map(|t| ModTerm { pos, ..t.clone() }));
        }
        Ok(ModuleElement::from_terms(terms, field, order))
    }

    /// Cached invariants, computed on first use.
    pub fn invariants(self: &Arc<Self>) -> Result<&RingInvariants> {
        if let Some(inv) = self.invariants.get() {
            return Ok(inv);
        }
        let computed = crate::invariants::compute_ring_invariants(self)?;
        if let Err(other) = self.invariants.set(computed) {
            if self.invariants.get() != Some(&other) {
                return Err(Error::Consistency("ring invariants recomputed differently".into()));
            }
        }
        Ok(self.invariants.get().unwrap())
    }

    /// The invariants if they have been computed already.
    pub fn cached_invariants(&self) -> Option<&RingInvariants> {
        self.invariants.get()
    }
}
