//! Buchberger's algorithm for submodules of free modules over `F_p[x_1..x_n]`.
//!
//! Pairs are chosen by the normal strategy with sugar, and the pair set is
//! maintained with the Gebauer–Möller criteria. For homogeneous input the
//! engine runs degree by degree, which lets it report which input
//! generators are part of a minimal generating set.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::monomial::{ModuleOrder, Monomial};
use crate::poly::PolyRing;

use super::element::{merge, ModTerm, ModuleElement};

/// A reduced Gröbner basis of a submodule of `S^r`.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: Arc<PolyRing>,
    order: ModuleOrder,
    elements: Vec<ModuleElement>,
    by_pos: Vec<Vec<usize>>,
}

impl PartialEq for GroebnerBasis {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.elements == other.elements
    }
}

impl GroebnerBasis {
    fn new(ring: Arc<PolyRing>, order: ModuleOrder, mut elements: Vec<ModuleElement>) -> Self {
        elements.sort_by(|a, b| {
            let (x, y) = (a.leading().unwrap(), b.leading().unwrap());
            order.cmp((x.pos, &x.mono), (y.pos, &y.mono))
        });
        let mut by_pos = vec![Vec::new(); order.rank()];
        for (k, e) in elements.iter().enumerate() {
            by_pos[e.leading().unwrap().pos].push(k);
        }
        GroebnerBasis { ring, order, elements, by_pos }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn order(&self) -> &ModuleOrder {
        &self.order
    }

    pub fn rank(&self) -> usize {
        self.order.rank()
    }

    /// Basis elements, monic, sorted ascending by leading term.
    pub fn elements(&self) -> &[ModuleElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Leading terms `(pos, monomial)` of the basis.
    pub fn leading_terms(&self) -> impl Iterator<Item = (usize, &Monomial)> {
        self.elements.iter().map(|e| {
            let t = e.leading().unwrap();
            (t.pos, &t.mono)
        })
    }

    fn reducer(&self, pos: usize, m: &Monomial) -> Option<&ModuleElement> {
        self.by_pos[pos].iter().map(|&k| &self.elements[k]).find(|e| e.leading().unwrap().mono.divides(m))
    }

    /// Remainder of full division by the basis; zero iff `v` is in the submodule.
    pub fn normal_form(&self, v: &ModuleElement) -> Result<ModuleElement> {
        reduce_full(v, &self.ring, &self.order, |pos, m| self.reducer(pos, m))
    }

    pub fn contains(&self, v: &ModuleElement) -> Result<bool> {
        Ok(self.normal_form(v)?.is_zero())
    }

    /// True when the standard monomial `m * e_pos` is not a leading term multiple.
    pub fn is_standard(&self, pos: usize, m: &Monomial) -> bool {
        self.reducer(pos, m).is_none()
    }

    /// Checks Buchberger's criterion directly: every S-pair reduces to zero.
    pub fn satisfies_buchberger_criterion(&self) -> Result<bool> {
        let field = self.ring.field();
        let cap = self.ring.limits().max_degree;
        for i in 0..self.elements.len() {
            for j in (i + 1)..self.elements.len() {
                let (a, b) = (&self.elements[i], &self.elements[j]);
                let (la, lb) = (a.leading().unwrap(), b.leading().unwrap());
                if la.pos != lb.pos {
                    continue;
                }
                let l = la.mono.lcm(&lb.mono);
                let sa = a.mul_term(1, &la.mono.quotient_of(&l), field, cap)?;
                let s = sa.sub_mul(1, &lb.mono.quotient_of(&l), b, field, &self.order, cap)?;
                if !self.normal_form(&s)?.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Whether the basis is reduced: monic, and no term of any element is
    /// divisible by the leading term of another.
    pub fn is_reduced(&self) -> bool {
        self.elements.iter().enumerate().all(|(i, e)| {
            e.leading().unwrap().coeff == 1
                && e.terms().iter().all(|t| {
                    self.elements
                        .iter()
                        .enumerate()
                        .all(|(j, o)| j == i || { let l = o.leading().unwrap(); l.pos != t.pos || !l.mono.divides(&t.mono) })
                })
        })
    }
}

/// Full reduction of `v`; `find` returns a monic reducer whose leading
/// monomial divides `m` at position `pos`.
pub(crate) fn reduce_full<'a>(
    v: &ModuleElement,
    ring: &PolyRing,
    order: &ModuleOrder,
    find: impl Fn(usize, &Monomial) -> Option<&'a ModuleElement>,
) -> Result<ModuleElement> {
    let field = ring.field();
    let cap = ring.limits().max_degree;
    let mut rem: Vec<ModTerm> = Vec::new();
    let mut cur: Vec<ModTerm> = v.terms().to_vec();
    let mut start = 0;
    while start < cur.len() {
        let t = &cur[start];
        match find(t.pos, &t.mono) {
            Some(g) => {
                let lg = g.leading().unwrap();
                let q = lg.mono.quotient_of(&t.mono);
                let c = field.neg(t.coeff);
                cur = merge(&cur[start..], c, Some(&q), g, field, order, cap)?;
                start = 0;
            }
            None => {
                rem.push(t.clone());
                start += 1;
                if start == cur.len() {
                    break;
                }
            }
        }
    }
    Ok(ModuleElement::from_sorted(rem))
}

struct Elem {
    v: ModuleElement,
    lm: Monomial,
    sugar: i64,
    active: bool,
}

#[derive(Clone)]
struct Pair {
    i: usize,
    j: usize,
    pos: usize,
    lcm: Monomial,
    sugar: i64,
}

/// Output of a Gröbner computation with generator bookkeeping.
pub struct GbOutput {
    pub basis: GroebnerBasis,
    /// For each entry of `gens`: whether it survived reduction against
    /// everything of lower or equal degree processed before it. For
    /// homogeneous input the flagged generators minimally generate the
    /// submodule modulo the ambient relations.
    pub minimal: Vec<bool>,
}

struct Engine<'a> {
    ring: &'a Arc<PolyRing>,
    order: &'a ModuleOrder,
    basis: Vec<Elem>,
    by_pos: Vec<Vec<usize>>,
    pairs: Vec<Pair>,
    ideal_case: bool,
}

impl<'a> Engine<'a> {
    fn find(&self, pos: usize, m: &Monomial) -> Option<&ModuleElement> {
        self.by_pos[pos]
            .iter()
            .map(|&k| &self.basis[k])
            .find(|e| e.active && e.lm.divides(m))
            .map(|e| &e.v)
    }

    fn reduce(&self, v: &ModuleElement) -> Result<ModuleElement> {
        reduce_full(v, self.ring, self.order, |pos, m| self.find(pos, m))
    }

    fn insert(&mut self, mut h: ModuleElement, sugar: i64) -> Result<()> {
        let max = self.ring.limits().max_basis;
        if self.basis.len() >= max {
            return Err(Error::Limit(format!("Gröbner basis exceeded {max} elements")));
        }
        h.make_monic(self.ring.field());
        let lt = h.leading().unwrap().clone();
        let idx = self.basis.len();
        self.update_pairs(idx, lt.pos, &lt.mono, sugar);
        for &k in &self.by_pos[lt.pos] {
            let e = &mut self.basis[k];
            if e.active && lt.mono.divides(&e.lm) {
                e.active = false;
            }
        }
        self.basis.push(Elem { v: h, lm: lt.mono, sugar, active: true });
        self.by_pos[lt.pos].push(idx);
        Ok(())
    }

    /// Gebauer–Möller update for a new element with leading term `lm * e_pos`.
    fn update_pairs(&mut self, h: usize, pos: usize, lm: &Monomial, sugar: i64) {
        let mut cands: Vec<Pair> = self.by_pos[pos]
            .iter()
            .filter(|&&g| self.basis[g].active)
            .map(|&g| {
                let e = &self.basis[g];
                let lcm = lm.lcm(&e.lm);
                let s = (sugar + (lcm.degree() - lm.degree()) as i64).max(e.sugar + (lcm.degree() - e.lm.degree()) as i64);
                Pair { i: g, j: h, pos, lcm, sugar: s }
            })
            .collect();
        let disjoint = |p: &Pair, basis: &[Elem]| self.ideal_case && basis[p.i].lm.is_coprime(lm);

        let mut kept: Vec<Pair> = Vec::new();
        while !cands.is_empty() {
            let p = cands.remove(0);
            let dominated = cands.iter().chain(kept.iter()).any(|o| o.lcm.divides(&p.lcm));
            if disjoint(&p, &self.basis) || !dominated {
                kept.push(p);
            }
        }
        let new_pairs: Vec<Pair> = kept.into_iter().filter(|p| !disjoint(p, &self.basis)).collect();

        let basis = &self.basis;
        self.pairs.retain(|p| {
            if p.pos != pos || !lm.divides(&p.lcm) {
                return true;
            }
            let li = basis[p.i].lm.lcm(lm);
            let lj = basis[p.j].lm.lcm(lm);
            li == p.lcm || lj == p.lcm
        });
        self.pairs.extend(new_pairs);
    }

    fn s_poly(&self, p: &Pair) -> Result<ModuleElement> {
        let field = self.ring.field();
        let cap = self.ring.limits().max_degree;
        let (a, b) = (&self.basis[p.i], &self.basis[p.j]);
        let sa = a.v.mul_term(1, &a.lm.quotient_of(&p.lcm), field, cap)?;
        sa.sub_mul(1, &b.lm.quotient_of(&p.lcm), &b.v, field, self.order, cap)
    }

    fn take_pair(&mut self) -> Pair {
        let order = self.order;
        let best = (0..self.pairs.len())
            .min_by(|&x, &y| {
                let (a, b) = (&self.pairs[x], &self.pairs[y]);
                a.sugar
                    .cmp(&b.sugar)
                    .then_with(|| order.cmp((a.pos, &a.lcm), (b.pos, &b.lcm)))
                    .then_with(|| (a.i, a.j).cmp(&(b.i, b.j)))
            })
            .unwrap();
        self.pairs.swap_remove(best)
    }

    fn min_pair_sugar(&self) -> Option<i64> {
        self.pairs.iter().map(|p| p.sugar).min()
    }
}

/// Computes the reduced Gröbner basis of the submodule generated by
/// `ambient` and `gens`, flagging which `gens` are needed.
///
/// Inputs are processed in order of sugar; within a degree all pending
/// S-pairs come first, then ambient relations, then generators in their
/// given order. The result is deterministic for a fixed input order.
pub fn compute(ring: &Arc<PolyRing>, order: &ModuleOrder, ambient: &[ModuleElement], gens: &[ModuleElement]) -> Result<GbOutput> {
    let mut inputs: Vec<(i64, usize, usize, &ModuleElement)> = Vec::new();
    for (k, v) in ambient.iter().enumerate() {
        if !v.is_zero() {
            inputs.push((v.sugar(order), 0, k, v));
        }
    }
    for (k, v) in gens.iter().enumerate() {
        if !v.is_zero() {
            inputs.push((v.sugar(order), 1, k, v));
        }
    }
    inputs.sort_by_key(|a| (a.0, a.1, a.2));

    let mut engine = Engine {
        ring,
        order,
        basis: Vec::new(),
        by_pos: vec![Vec::new(); order.rank()],
        pairs: Vec::new(),
        ideal_case: order.rank() == 1,
    };
    let mut minimal = vec![false; gens.len()];
    let mut next = 0;
    loop {
        let pair_deg = engine.min_pair_sugar();
        let input_deg = inputs.get(next).map(|x| x.0);
        let use_pair = match (pair_deg, input_deg) {
            (None, None) => break,
            (Some(_), None) => true,
            (None, Some(_)) => false,
            (Some(a), Some(b)) => a <= b,
        };
        if use_pair {
            let p = engine.take_pair();
            let s = engine.s_poly(&p)?;
            let h = engine.reduce(&s)?;
            if !h.is_zero() {
                engine.insert(h, p.sugar)?;
            }
        } else {
            let (sugar, kind, k, v) = inputs[next];
            next += 1;
            let h = engine.reduce(v)?;
            if !h.is_zero() {
                if kind == 1 {
                    minimal[k] = true;
                }
                engine.insert(h, sugar)?;
            }
        }
    }

    // interreduce the surviving elements
    let field = ring.field();
    let active: Vec<usize> = (0..engine.basis.len()).filter(|&k| engine.basis[k].active).collect();
    let mut out = Vec::with_capacity(active.len());
    for &k in &active {
        let v = &engine.basis[k].v;
        let (head, tail) = v.split_at(1);
        let tail = engine.reduce(&ModuleElement::from_sorted(tail.to_vec()))?;
        let mut terms = head.to_vec();
        terms.extend(tail.into_terms());
        let mut e = ModuleElement::from_sorted(terms);
        e.make_monic(field);
        out.push(e);
    }
    Ok(GbOutput { basis: GroebnerBasis::new(ring.clone(), order.clone(), out), minimal })
}

/// The reduced Gröbner basis of the submodule generated by `gens`.
pub fn buchberger(ring: &Arc<PolyRing>, gens: &[ModuleElement], order: &ModuleOrder) -> Result<GroebnerBasis> {
    Ok(compute(ring, order, &[], gens)?.basis)
}
