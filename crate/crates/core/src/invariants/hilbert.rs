//! Hilbert series of graded modules, read off leading-term data.

use crate::groebner::GroebnerBasis;
use crate::monomial::Monomial;

/// `H(t) = t^offset * N(t) / (1-t)^nvars`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertSeries {
    nvars: usize,
    offset: i64,
    numerator: Vec<i64>,
}

/// Dimension and multiplicity derived from a Hilbert series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertData {
    /// Coefficients of `N(t)`, starting at `t^offset`.
    pub numerator: Vec<i64>,
    pub offset: i64,
    /// Krull dimension; `None` for the zero module.
    pub dim: Option<usize>,
    /// `N(t) = h(t) (1-t)^(n - dim)` with `h(1) != 0`; this is `h`.
    pub reduced: Vec<i64>,
    pub multiplicity: u64,
}

fn trim(v: &mut Vec<i64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn poly_add(a: &mut Vec<i64>, b: &[i64], shift: usize, sign: i64) {
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, 0);
    }
    for (k, &c) in b.iter().enumerate() {
        a[k + shift] += sign * c;
    }
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Drops generators divisible by another one.
fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| m.degree());
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !out.iter().any(|h| h.divides(&g)) {
            out.push(g);
        }
    }
    out
}

/// Numerator of `S/J` for a monomial ideal `J`, by pivoting on a variable
/// power until the generators are pairwise coprime.
pub(crate) fn monomial_numerator(gens: &[Monomial], nvars: usize) -> Vec<i64> {
    let gens = minimalize(gens.to_vec());
    numerator_rec(gens, nvars)
}

fn numerator_rec(gens: Vec<Monomial>, nvars: usize) -> Vec<i64> {
    if gens.iter().any(Monomial::is_one) {
        return Vec::new();
    }
    // choose the variable that occurs in the most generators
    let mut counts = vec![0usize; nvars];
    for g in &gens {
        for (i, &a) in g.exponents().iter().enumerate() {
            if a > 0 {
                counts[i] += 1;
            }
        }
    }
    let (var, &count) = counts.iter().enumerate().max_by_key(|&(i, c)| (*c, std::cmp::Reverse(i))).unwrap_or((0, &0));
    if count <= 1 {
        // pairwise coprime: product of (1 - t^deg)
        let mut out = vec![1];
        for g in &gens {
            let mut f = vec![0; g.degree() as usize + 1];
            f[0] = 1;
            f[g.degree() as usize] -= 1;
            out = poly_mul(&out, &f);
        }
        trim(&mut out);
        return out;
    }
    let e = gens.iter().map(|g| g.exponents()[var]).filter(|&a| a > 0).min().unwrap();
    let mut pe = vec![0u32; nvars];
    pe[var] = e;
    let pivot = Monomial::from_exponents(&pe);
    // N(J) = N(J + (P)) + t^e N(J : P)
    let mut plus: Vec<Monomial> = gens.iter().filter(|g| !pivot.divides(g)).cloned().collect();
    plus.push(pivot.clone());
    let colon: Vec<Monomial> = gens.iter().map(|g| g.colon(&pivot)).collect();
    let mut out = numerator_rec(minimalize(plus), nvars);
    poly_add(&mut out, &numerator_rec(minimalize(colon), nvars), e as usize, 1);
    trim(&mut out);
    out
}

impl HilbertSeries {
    /// Series of `S^r / LT(U)` where `U` has Gröbner basis `gb` under a
    /// term-over-position order whose shifts are the generator degrees.
    pub fn from_basis(gb: &GroebnerBasis) -> Self {
        let order = gb.order();
        let nvars = gb.ring().nvars();
        let shifts = order.shifts();
        let mut per_pos: Vec<Vec<Monomial>> = vec![Vec::new(); order.rank()];
        for (pos, m) in gb.leading_terms() {
            per_pos[pos].push(m.clone());
        }
        Self::from_leading_terms(nvars, shifts, &per_pos)
    }

    pub fn from_leading_terms(nvars: usize, shifts: &[i64], per_pos: &[Vec<Monomial>]) -> Self {
        let offset = shifts.iter().copied().min().unwrap_or(0);
        let mut numerator = Vec::new();
        for (pos, gens) in per_pos.iter().enumerate() {
            let n = monomial_numerator(gens, nvars);
            poly_add(&mut numerator, &n, (shifts[pos] - offset) as usize, 1);
        }
        trim(&mut numerator);
        HilbertSeries { nvars, offset, numerator }
    }

    pub fn zero(nvars: usize) -> Self {
        HilbertSeries { nvars, offset: 0, numerator: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_empty()
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn numerator(&self) -> &[i64] {
        &self.numerator
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    /// Hilbert function value `dim_k M_d`.
    pub fn value(&self, d: i64) -> i64 {
        let n = self.nvars as i64;
        let mut total = 0i64;
        for (k, &c) in self.numerator.iter().enumerate() {
            let m = d - self.offset - k as i64;
            if m < 0 || c == 0 {
                continue;
            }
            total += c * if n == 0 { i64::from(m == 0) } else { binomial(m + n - 1, n - 1) };
        }
        total
    }

    pub fn data(&self) -> HilbertData {
        if self.numerator.is_empty() {
            return HilbertData { numerator: Vec::new(), offset: self.offset, dim: None, reduced: Vec::new(), multiplicity: 0 };
        }
        let mut h = self.numerator.clone();
        let mut factors = 0;
        while factors < self.nvars && h.iter().sum::<i64>() == 0 {
            h = divide_by_one_minus_t(&h);
            factors += 1;
        }
        let multiplicity = h.iter().sum::<i64>();
        assert!(multiplicity > 0, "Hilbert numerator with non-positive multiplicity");
        HilbertData {
            numerator: self.numerator.clone(),
            offset: self.offset,
            dim: Some(self.nvars - factors),
            reduced: h,
            multiplicity: multiplicity as u64,
        }
    }

    pub fn dim(&self) -> Option<usize> {
        self.data().dim
    }

    pub fn multiplicity(&self) -> u64 {
        self.data().multiplicity
    }

    /// Total length when the module has finite length.
    pub fn length(&self) -> Option<u64> {
        match self.data().dim {
            None => Some(0),
            Some(0) => Some(self.multiplicity()),
            Some(_) => None,
        }
    }
}

fn divide_by_one_minus_t(h: &[i64]) -> Vec<i64> {
    // h = (1 - t) q  =>  q_k = sum_{j <= k} h_j
    let mut q = Vec::with_capacity(h.len());
    let mut acc = 0;
    for &c in &h[..h.len() - 1] {
        acc += c;
        q.push(acc);
    }
    trim(&mut q);
    q
}

pub(crate) fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || n < k {
        return 0;
    }
    let k = k.min(n - k);
    let mut out: i64 = 1;
    for i in 0..k {
        out = out * (n - i) / (i + 1);
    }
    out
}

/// Counts the monomials outside `J_pos` for each position, provided every
/// `J_pos` contains a power of every variable.
pub(crate) fn count_standard_monomials(nvars: usize, per_pos: &[Vec<Monomial>]) -> Option<u64> {
    let mut total = 0u64;
    for gens in per_pos {
        if gens.iter().any(Monomial::is_one) {
            continue;
        }
        let mut bounds = vec![u32::MAX; nvars];
        for g in gens {
            if let Some((i, a)) = g.pure_power() {
                bounds[i] = bounds[i].min(a);
            }
        }
        if bounds.contains(&u32::MAX) {
            return None;
        }
        let mut exps = vec![0u32; nvars];
        'walk: loop {
            let m = Monomial::from_exponents(&exps);
            if !gens.iter().any(|g| g.divides(&m)) {
                total += 1;
            }
            // odometer over the box
            for i in 0..nvars {
                exps[i] += 1;
                if exps[i] < bounds[i] {
                    continue 'walk;
                }
                exps[i] = 0;
            }
            break;
        }
    }
    Some(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn numerators_of_monomial_ideals() {
        assert_eq!(monomial_numerator(&[], 2), vec![1]);
        // (xy): 1 - t^2
        assert_eq!(monomial_numerator(&[mono(&[1, 1])], 2), vec![1, 0, -1]);
        // (x^2, xy, y^2): 1 - 3t^2 + 2t^3
        assert_eq!(monomial_numerator(&[mono(&[2, 0]), mono(&[1, 1]), mono(&[0, 2])], 2), vec![1, 0, -3, 2]);
    }

    #[test]
    fn data_of_xy() {
        let h = HilbertSeries::from_leading_terms(2, &[0], &[vec![mono(&[1, 1])]]);
        let d = h.data();
        assert_eq!(d.dim, Some(1));
        assert_eq!(d.multiplicity, 2);
        assert_eq!(d.reduced, vec![1, 1]);
        assert_eq!((0..6).map(|k| h.value(k)).collect::<Vec<_>>(), vec![1, 2, 2, 2, 2, 2]);
    }

    #[test]
    fn standard_monomial_count_matches_length() {
        let gens = vec![mono(&[2, 0]), mono(&[1, 1]), mono(&[0, 2])];
        let h = HilbertSeries::from_leading_terms(2, &[0], std::slice::from_ref(&gens));
        assert_eq!(h.length(), Some(3));
        assert_eq!(count_standard_monomials(2, &[gens]), Some(3));
        assert_eq!(count_standard_monomials(2, &[vec![mono(&[1, 1])]]), None);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(3, 0), 1);
        assert_eq!(binomial(2, 3), 0);
    }
}
