//! Sparse polynomials over `F_p` and the text grammar they are read from.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::monomial::{Monomial, MonomialOrder};

/// Resource caps shared by every computation over a ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Limits {
    /// Largest total degree any monomial may reach.
    pub max_degree: u32,
    /// Largest number of elements a Gröbner basis may grow to.
    pub max_basis: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_degree: 1 << 16, max_basis: 20_000 }
    }
}

/// `F_p[x_1..x_n]` with named variables and a monomial order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    field: PrimeField,
    vars: Vec<String>,
    order: MonomialOrder,
    limits: Limits,
}

impl PolyRing {
    pub fn new(p: u64, vars: &[&str]) -> Result<Arc<Self>> {
        Self::with_options(p, vars.iter().map(|s| s.to_string()).collect(), MonomialOrder::default(), Limits::default())
    }

    pub fn with_options(p: u64, vars: Vec<String>, order: MonomialOrder, limits: Limits) -> Result<Arc<Self>> {
        let field = PrimeField::new(p)?;
        for (i, v) in vars.iter().enumerate() {
            let ok = !v.is_empty()
                && v.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ok {
                return Err(Error::Input(format!("invalid variable name {v:?}")));
            }
            if vars[..i].contains(v) {
                return Err(Error::Input(format!("duplicate variable name {v:?}")));
            }
        }
        Ok(Arc::new(PolyRing { field, vars, order, limits }))
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn characteristic(&self) -> u32 {
        self.field.p()
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }
}

/// One nonzero term `coeff * mono`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub coeff: u32,
    pub mono: Monomial,
}

/// A polynomial in canonical form: nonzero coefficients, distinct monomials,
/// terms strictly descending in the ring's monomial order.
#[derive(Clone, Debug)]
pub struct Polynomial {
    ring: Arc<PolyRing>,
    terms: Vec<Term>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl Polynomial {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn constant(ring: &Arc<PolyRing>, c: i64) -> Self {
        let c = ring.field.from_i64(c);
        Self::monomial(ring, c, Monomial::one(ring.nvars()))
    }

    pub fn var(ring: &Arc<PolyRing>, i: usize) -> Self {
        Self::monomial(ring, 1, Monomial::var(ring.nvars(), i))
    }

    pub fn monomial(ring: &Arc<PolyRing>, coeff: u32, mono: Monomial) -> Self {
        let terms = if coeff.is_multiple_of(ring.characteristic()) {
            Vec::new()
        } else {
            vec![Term { coeff: coeff % ring.characteristic(), mono }]
        };
        Polynomial { ring: ring.clone(), terms }
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms(ring: &Arc<PolyRing>, mut terms: Vec<Term>) -> Self {
        let order = ring.order;
        let f = ring.field;
        terms.sort_by(|a, b| order.cmp(&b.mono, &a.mono));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for t in terms {
            let c = t.coeff % f.p();
            match out.last_mut() {
                Some(last) if last.mono == t.mono => last.coeff = f.add(last.coeff, c),
                _ => out.push(Term { coeff: c, mono: t.mono }),
            }
        }
        out.retain(|t| t.coeff != 0);
        Polynomial { ring: ring.clone(), terms: out }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_term(&self) -> Option<&Term> {
        self.terms.first()
    }

    /// Coefficient of the constant monomial.
    pub fn constant_term(&self) -> u32 {
        match self.terms.last() {
            Some(t) if t.mono.is_one() => t.coeff,
            _ => 0,
        }
    }

    /// Total degree of the leading term; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.mono.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some(t) => self.terms.iter().all(|s| s.mono.degree() == t.mono.degree()),
        }
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch(format!(
                "operands live in F_{}[{}] and F_{}[{}]",
                self.ring.characteristic(),
                self.ring.vars.join(","),
                other.ring.characteristic(),
                other.ring.vars.join(",")
            )))
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.merge(other, 1))
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.merge(other, self.ring.characteristic() - 1))
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let cap = self.ring.limits.max_degree;
        let f = self.ring.field;
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                terms.push(Term { coeff: f.mul(a.coeff, b.coeff), mono: a.mono.mul(&b.mono, cap)? });
            }
        }
        Ok(Polynomial::from_terms(&self.ring, terms))
    }

    /// `self + scale * other`, both already sorted.
    fn merge(&self, other: &Polynomial, scale: u32) -> Polynomial {
        let f = self.ring.field;
        let order = self.ring.order;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (a, b) = (&self.terms[i], &other.terms[j]);
            match order.cmp(&a.mono, &b.mono) {
                Ordering::Greater => {
                    out.push(a.clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(Term { coeff: f.mul(scale, b.coeff), mono: b.mono.clone() });
                    j += 1;
                }
                Ordering::Equal => {
                    let c = f.add(a.coeff, f.mul(scale, b.coeff));
                    if c != 0 {
                        out.push(Term { coeff: c, mono: a.mono.clone() });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(other.terms[j..].iter().map(|b| Term { coeff: f.mul(scale, b.coeff), mono: b.mono.clone() }));
        Polynomial { ring: self.ring.clone(), terms: out }
    }

    pub fn scale(&self, c: u32) -> Polynomial {
        let f = self.ring.field;
        let c = c % f.p();
        if c == 0 {
            return Polynomial::zero(&self.ring);
        }
        let terms = self.terms.iter().map(|t| Term { coeff: f.mul(t.coeff, c), mono: t.mono.clone() }).collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    pub fn pow(&self, mut k: u64) -> Result<Polynomial> {
        let mut acc = Polynomial::constant(&self.ring, 1);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.checked_mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.checked_mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// The `e`-th iterate of Frobenius, `g -> g^{p^e}`.
    ///
    /// Over `F_p` the coefficients are fixed and the map is additive, so
    /// it suffices to scale every exponent vector by `p^e`. The order of
    /// terms is preserved because monomial orders are multiplicative.
    pub fn frobenius_power(&self, e: u32) -> Result<Polynomial> {
        if e == 0 {
            return Err(Error::Input("Frobenius exponent must be at least 1".into()));
        }
        let cap = self.ring.limits.max_degree;
        let q = (self.ring.characteristic() as u64)
            .checked_pow(e)
            .filter(|q| *q <= cap as u64)
            .ok_or_else(|| Error::Limit(format!("p^e = {}^{} exceeds degree cap {cap}", self.ring.characteristic(), e)))?;
        let terms = self
            .terms
            .iter()
            .map(|t| Ok(Term { coeff: t.coeff, mono: t.mono.scale(q, cap)? }))
            .collect::<Result<Vec<_>>>()?;
        Ok(Polynomial { ring: self.ring.clone(), terms })
    }

    /// Parses the text grammar `x^2*y + 2*y^3 - 1` over `ring`.
    pub fn parse(ring: &Arc<PolyRing>, src: &str) -> Result<Polynomial> {
        Parser { ring, src: src.as_bytes(), pos: 0 }.polynomial()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, t) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let mut factors = Vec::new();
            if t.coeff != 1 || t.mono.is_one() {
                factors.push(t.coeff.to_string());
            }
            for (i, &a) in t.mono.exponents().iter().enumerate() {
                match a {
                    0 => {}
                    1 => factors.push(self.ring.vars[i].clone()),
                    _ => factors.push(format!("{}^{}", self.ring.vars[i], a)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("polynomial addition")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("polynomial subtraction")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("polynomial multiplication")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(self.ring.characteristic() - 1)
    }
}

struct Parser<'a> {
    ring: &'a Arc<PolyRing>,
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse { position: self.pos, message: message.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn polynomial(&mut self) -> Result<Polynomial> {
        let f = self.ring.field();
        let mut terms = Vec::new();
        let mut sign = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                f.p() - 1
            }
            Some(b'+') => {
                self.pos += 1;
                1
            }
            None => return self.err("empty polynomial"),
            _ => 1,
        };
        loop {
            let mut t = self.term()?;
            t.coeff = f.mul(t.coeff, sign);
            terms.push(t);
            match self.peek() {
                None => break,
                Some(b'+') => sign = 1,
                Some(b'-') => sign = f.p() - 1,
                Some(c) => return self.err(format!("unexpected character {:?}", c as char)),
            }
            self.pos += 1;
        }
        Ok(Polynomial::from_terms(self.ring, terms))
    }

    fn term(&mut self) -> Result<Term> {
        let f = self.ring.field();
        let cap = self.ring.limits.max_degree;
        let mut coeff = 1u32;
        let mut mono = Monomial::one(self.ring.nvars());
        loop {
            let mut after_number = false;
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let n = self.number()?;
                    coeff = f.mul(coeff, (n % f.p() as u64) as u32);
                    after_number = true;
                }
                Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                    let start = self.pos;
                    while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
                        self.pos += 1;
                    }
                    let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                    let Some(i) = self.ring.vars.iter().position(|v| v == name) else {
                        self.pos = start;
                        return self.err(format!("unknown variable {name:?}"));
                    };
                    let mut exp = 1u64;
                    if self.peek() == Some(b'^') {
                        self.pos += 1;
                        if !self.peek().is_some_and(|c| c.is_ascii_digit()) {
                            return self.err("expected exponent after '^'");
                        }
                        exp = self.number()?;
                    }
                    if exp > cap as u64 {
                        return Err(Error::Limit(format!("exponent {exp} at byte {} exceeds degree cap {cap}", self.pos)));
                    }
                    let mut e = vec![0u32; self.ring.nvars()];
                    e[i] = exp as u32;
                    let at = self.pos;
                    mono = mono.mul(&Monomial::from_exponents(&e), cap).map_err(|err| match err {
                        Error::Limit(m) => Error::Limit(format!("at byte {at}: {m}")),
                        other => other,
                    })?;
                }
                Some(c) => return self.err(format!("expected coefficient or variable, found {:?}", c as char)),
                None => return self.err("unexpected end of input"),
            }
            match self.peek() {
                Some(b'*') => self.pos += 1,
                // `2x` reads as `2*x`
                Some(c) if after_number && (c.is_ascii_alphabetic() || c == b'_') => {}
                _ => break,
            }
        }
        Ok(Term { coeff, mono })
    }

    fn number(&mut self) -> Result<u64> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        text.parse::<u64>().map_err(|_| Error::Parse { position: start, message: format!("number {text} too large") })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ring(p: u64, vars: &[&str]) -> Arc<PolyRing> {
        PolyRing::new(p, vars).unwrap()
    }

    fn parse(r: &Arc<PolyRing>, s: &str) -> Polynomial {
        Polynomial::parse(r, s).unwrap()
    }

    #[test]
    fn characteristic_two_cancellation() {
        let r = ring(2, &["x", "y"]);
        assert_eq!(&parse(&r, "x+y") + &parse(&r, "x"), parse(&r, "y"));
        assert_eq!(&parse(&r, "x+y") * &parse(&r, "x+y"), parse(&r, "x^2+y^2"));
    }

    #[test]
    fn characteristic_three_products() {
        let r = ring(3, &["x"]);
        assert_eq!(&parse(&r, "2x") * &parse(&r, "2*x"), parse(&r, "x^2"));
    }

    #[test]
    fn frobenius_examples() {
        let r2 = ring(2, &["x", "y"]);
        assert_eq!(parse(&r2, "x+y").frobenius_power(1).unwrap(), parse(&r2, "x^2+y^2"));
        assert_eq!(parse(&r2, "x*y+1").frobenius_power(2).unwrap(), parse(&r2, "x^4*y^4+1"));
        let r3 = ring(3, &["x"]);
        assert_eq!(parse(&r3, "2x").frobenius_power(1).unwrap(), parse(&r3, "2x^3"));
    }

    #[test]
    fn frobenius_respects_degree_cap() {
        let limits = Limits { max_degree: 10, ..Limits::default() };
        let r = PolyRing::with_options(3, vec!["x".into()], MonomialOrder::DegRevLex, limits).unwrap();
        let g = parse(&r, "x^2");
        assert!(g.frobenius_power(1).is_ok());
        assert!(matches!(g.frobenius_power(2), Err(Error::Limit(_))));
    }

    #[test]
    fn mixed_rings_are_rejected() {
        let a = parse(&ring(2, &["x"]), "x");
        let b = parse(&ring(3, &["x"]), "x");
        assert!(matches!(a.checked_add(&b), Err(Error::RingMismatch(_))));
        assert!(matches!(a.checked_mul(&b), Err(Error::RingMismatch(_))));
    }

    #[test]
    fn printing_is_canonical() {
        let r = ring(5, &["x", "y"]);
        let g = parse(&r, "2*y^3 + x^2*y - 1");
        assert_eq!(g.to_string(), "x^2*y + 2*y^3 + 4");
        assert_eq!(Polynomial::zero(&r).to_string(), "0");
        assert_eq!(parse(&r, "x - x").to_string(), "0");
    }

    #[test]
    fn parse_errors_carry_positions() {
        let r = ring(2, &["x", "y"]);
        match Polynomial::parse(&r, "x + z") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 4),
            other => panic!("{other:?}"),
        }
        assert!(matches!(Polynomial::parse(&r, "x^"), Err(Error::Parse { .. })));
        assert!(matches!(Polynomial::parse(&r, ""), Err(Error::Parse { .. })));
        assert!(matches!(Polynomial::parse(&r, "x ++ y"), Err(Error::Parse { .. })));
    }

    fn arb_poly(r: Arc<PolyRing>) -> impl Strategy<Value = Polynomial> {
        let p = r.characteristic();
        let n = r.nvars();
        prop::collection::vec((1..p, prop::collection::vec(0u32..4, n)), 0..=5).prop_map(move |ts| {
            let terms = ts.into_iter().map(|(c, e)| Term { coeff: c, mono: Monomial::from_exponents(&e) }).collect();
            Polynomial::from_terms(&r, terms)
        })
    }

    fn arb_ring_and_polys() -> impl Strategy<Value = (Polynomial, Polynomial)> {
        prop_oneof![Just(2u64), Just(3u64)]
            .prop_flat_map(|p| {
                let r = ring(p, &["x", "y", "z"]);
                (arb_poly(r.clone()), arb_poly(r))
            })
    }

    proptest! {
        #[test]
        fn frobenius_is_repeated_multiplication((g, _) in arb_ring_and_polys(), e in 1u32..=2) {
            let q = (g.ring().characteristic() as u64).pow(e);
            let mut acc = g.clone();
            for _ in 1..q {
                acc = &acc * &g;
            }
            prop_assert_eq!(g.frobenius_power(e).unwrap(), acc);
        }

        #[test]
        fn frobenius_is_additive((a, b) in arb_ring_and_polys(), e in 1u32..=2) {
            let lhs = (&a + &b).frobenius_power(e).unwrap();
            let rhs = &a.frobenius_power(e).unwrap() + &b.frobenius_power(e).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn print_parse_roundtrip((g, _) in arb_ring_and_polys()) {
            let back = Polynomial::parse(g.ring(), &g.to_string()).unwrap();
            prop_assert_eq!(back, g);
        }
    }
}
