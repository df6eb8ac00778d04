//! Structural invariants checked on random homogeneous input.

mod common;

use std::sync::Arc;

use proptest::prelude::*;

use flatdim::detector::{detect_flat_dimension, flatdim_oracle, DetectOptions};
use flatdim::frobenius::{frobenius_functor, tor_frobenius_module};
use flatdim::homological::{has_unit_entries, homology_vanishes, koszul_complex_ring, minimal_free_resolution, Complex, ModulePresentation};
use flatdim::invariants::{depth, depth_ring, hilbert_module};
use flatdim::QuotientRing;

const VARS: [&str; 3] = ["x", "y", "z"];

fn monomials(n: usize, d: u32) -> Vec<Vec<u32>> {
    if n == 1 {
        return vec![vec![d]];
    }
    (0..=d).rev().flat_map(|a| monomials(n - 1, d - a).into_iter().map(move |mut rest| {
        rest.insert(0, a);
        rest
    })).collect()
}

fn render(n: usize, d: u32, coeffs: &[u32]) -> String {
    let terms: Vec<String> = monomials(n, d)
        .into_iter()
        .zip(coeffs)
        .filter(|(_, &c)| c != 0)
        .map(|(e, c)| {
            let factors: Vec<String> = e.iter().enumerate().filter(|(_, &a)| a > 0).map(|(i, &a)| format!("{}^{a}", VARS[i])).collect();
            if factors.is_empty() {
                c.to_string()
            } else {
                format!("{c}*{}", factors.join("*"))
            }
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

/// `(p, n, generators)`: up to three homogeneous forms of degree 1 or 2.
fn arb_forms() -> impl Strategy<Value = (u64, usize, Vec<String>)> {
    (prop_oneof![Just(2u64), Just(3u64)], 1usize..=3).prop_flat_map(|(p, n)| {
        let form = (1u32..=2).prop_flat_map(move |d| {
            let k = monomials(n, d).len();
            prop::collection::vec(0..p as u32, k).prop_map(move |c| render(n, d, &c))
        });
        (Just(p), Just(n), prop::collection::vec(form, 1..=3))
    })
}

fn arb_ring_and_module() -> impl Strategy<Value = (Arc<QuotientRing>, ModulePresentation)> {
    (0usize..6, arb_forms()).prop_filter_map("module over a corpus ring", |(k, (_, _, forms))| {
        let c = &common::corpus()[k];
        let n = c.ring.nvars();
        // keep only forms in the ring's variables
        let forms: Vec<&str> = forms.iter().map(String::as_str).filter(|f| VARS[n..].iter().all(|v| !f.contains(v))).collect();
        let m = ModulePresentation::parse_cyclic(&c.ring, &forms).ok()?;
        Some((c.ring.clone(), m))
    })
}

#[test]
fn betti_numbers_of_k_are_binomial() {
    for p in [2, 3] {
        for n in 1..=3 {
            let r = QuotientRing::polynomial_ring(p, &VARS[..n]).unwrap();
            let res = minimal_free_resolution(&ModulePresentation::residue_field(&r), n + 1).unwrap();
            let expected: Vec<usize> = (0..=n).map(|i| binomial(n, i)).chain([0]).collect();
            let totals: Vec<usize> = (0..=n + 1).map(|i| res.betti.total(i)).collect();
            assert_eq!(totals, expected, "p = {p}, n = {n}");
            assert!(res.complete);
            for i in 0..=n {
                assert_eq!(res.betti.graded(i, i as i64), binomial(n, i));
            }
        }
    }
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn resolutions_are_exact_and_minimal((r, m) in arb_ring_and_module()) {
        let res = minimal_free_resolution(&m, 3).unwrap();
        let c = &res.complex;
        c.verify().unwrap();
        prop_assert!(!has_unit_entries(c));
        for i in 1..c.hi() {
            prop_assert!(homology_vanishes(c, i).unwrap(), "H_{} of a resolution over {}", i, r);
        }
        prop_assert!(r.groebner_basis().satisfies_buchberger_criterion().unwrap());
        prop_assert!(m.basis().unwrap().satisfies_buchberger_criterion().unwrap());
    }

    #[test]
    fn auslander_buchsbaum_over_regular_rings((p, n, forms) in arb_forms()) {
        let r = QuotientRing::polynomial_ring(p, &VARS[..n]).unwrap();
        let refs: Vec<&str> = forms.iter().map(String::as_str).collect();
        let m = ModulePresentation::parse_cyclic(&r, &refs).unwrap();
        prop_assume!(!m.is_zero().unwrap());
        let res = minimal_free_resolution(&m, n + 1).unwrap();
        prop_assert!(res.complete);
        let pd = res.projective_dimension().unwrap();
        prop_assert_eq!(pd + depth(&m).unwrap(), n);
    }

    #[test]
    fn frobenius_is_flat_over_regular_rings((p, n, forms) in arb_forms(), e in 1u32..=2) {
        let r = QuotientRing::polynomial_ring(p, &VARS[..n]).unwrap();
        let refs: Vec<&str> = forms.iter().map(String::as_str).collect();
        let m = ModulePresentation::parse_cyclic(&r, &refs).unwrap();
        prop_assume!(!m.is_zero().unwrap());
        prop_assert!(tor_frobenius_module(&m, &[e], 1, n as i64 + 1).unwrap().all_zero());
    }

    #[test]
    fn finite_projective_dimension_kills_frobenius_tor((r, m) in arb_ring_and_module(), e in 1u32..=2) {
        prop_assume!(!m.is_zero().unwrap());
        let o = flatdim_oracle(&m).unwrap();
        if let Some(pd) = o.finite_bound() {
            prop_assert!(pd as usize <= depth_ring(&r).unwrap());
            prop_assert!(tor_frobenius_module(&m, &[e], 1, r.nvars() as i64 + 1).unwrap().all_zero());
        }
    }

    #[test]
    fn detector_matches_oracle((r, m) in arb_ring_and_module()) {
        prop_assume!(!m.is_zero().unwrap());
        let v = detect_flat_dimension(&Complex::from_module(&m, 0), &DetectOptions { consult_oracle: true, ..Default::default() }).unwrap();
        let o = flatdim_oracle(&m).unwrap();
        let decided = if v.is_inconclusive() {
            prop_assert!(!r.invariants().unwrap().is_cohen_macaulay);
            v.oracle.as_deref().unwrap().clone()
        } else {
            v.clone()
        };
        prop_assert_eq!(decided.is_finite(), o.is_finite());
        let again = detect_flat_dimension(&Complex::from_module(&m, 0), &DetectOptions { consult_oracle: true, ..Default::default() }).unwrap();
        prop_assert_eq!(format!("{:?}", again), format!("{:?}", v));
    }

    #[test]
    fn functored_complexes_square_to_zero((r, m) in arb_ring_and_module(), e in 1u32..=2) {
        let res = minimal_free_resolution(&m, 2).unwrap().complex;
        frobenius_functor(&res, e).unwrap().verify().unwrap();
        let k = koszul_complex_ring(&r, &r.variables()).unwrap();
        k.verify().unwrap();
        res.tensor(&k).unwrap().verify().unwrap();
    }

    #[test]
    fn hilbert_series_is_additive_on_twists((r, m) in arb_ring_and_module(), s in 0i64..3) {
        let h = hilbert_module(&m).unwrap();
        let t = hilbert_module(&m.twist(s)).unwrap();
        for d in 0..6 {
            prop_assert_eq!(h.value(d), t.value(d + s));
        }
        prop_assert!(r.groebner_basis().satisfies_buchberger_criterion().unwrap());
    }
}
