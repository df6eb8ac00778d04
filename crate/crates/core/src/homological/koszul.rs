use std::sync::Arc;

use crate::error::{Error, Result};
use crate::matrix::PolyMatrix;
use crate::poly::Polynomial;
use crate::ring::QuotientRing;

use super::complex::Complex;
use super::presentation::ModulePresentation;

/// `j`-element subsets of `0..r` in lexicographic order.
pub(crate) fn subsets(r: usize, j: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, r: usize, j: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == j {
            out.push(cur.clone());
            return;
        }
        for k in start..r {
            cur.push(k);
            go(k + 1, r, j, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, r, j, &mut Vec::new(), &mut out);
    out
}

fn check_sequence(ring: &Arc<QuotientRing>, ys: &[Polynomial]) -> Result<Vec<i64>> {
    ys.iter()
        .map(|y| {
            if y.ring() != ring.ambient() {
                return Err(Error::RingMismatch("Koszul element from another ring".into()));
            }
            if !y.is_homogeneous() {
                return Err(Error::Input(format!("Koszul element {y} is not homogeneous")));
            }
            Ok(y.degree().map_or(0, i64::from))
        })
        .collect()
}

/// `K(y; R)`: term `j` has basis the `j`-subsets `S` of the sequence, in
/// degree `sum_{s in S} deg y_s`, and `d(e_S) = sum_k (-1)^k y_{s_k} e_{S - s_k}`.
pub fn koszul_complex_ring(ring: &Arc<QuotientRing>, ys: &[Polynomial]) -> Result<Complex> {
    koszul_complex(ys, &ModulePresentation::free(ring, vec![0]))
}

/// `K(y; M) = K(y; R) ⊗ M`, with the relations of `M` copied into every
/// summand.
pub fn koszul_complex(ys: &[Polynomial], m: &ModulePresentation) -> Result<Complex> {
    let ring = m.ring();
    let amb = ring.ambient();
    let degs = check_sequence(ring, ys)?;
    let r = ys.len();
    let b = m.rank();
    let bases: Vec<Vec<Vec<usize>>> = (0..=r).map(|j| subsets(r, j)).collect();
    let shifts: Vec<Vec<i64>> = bases
        .iter()
        .map(|subs| {
            let mut out = Vec::new();
            for s in subs {
                let d: i64 = s.iter().map(|&k| degs[k]).sum();
                out.extend(m.shifts().iter().map(|&t| t + d));
            }
            out
        })
        .collect();
    let mut diffs = Vec::new();
    for j in 1..=r {
        let (src, tgt) = (&bases[j], &bases[j - 1]);
        let mut d = PolyMatrix::zeros(amb, tgt.len(), src.len());
        for (c, s) in src.iter().enumerate() {
            for (k, &v) in s.iter().enumerate() {
                let face: Vec<usize> = s.iter().copied().filter(|&w| w != v).collect();
                let row = tgt.iter().position(|t| *t == face).unwrap();
                let y = if k % 2 == 0 { ys[v].clone() } else { -&ys[v] };
                d.set(row, c, y);
            }
        }
        diffs.push(d.kronecker(&PolyMatrix::identity(amb, b))?);
    }
    let relations = if m.is_free() {
        vec![None; r + 1]
    } else {
        (0..=r).map(|j| Ok(Some(PolyMatrix::identity(amb, bases[j].len()).kronecker(m.relations())?))).collect::<Result<Vec<_>>>()?
    };
    Complex::with_relations(ring, 0, shifts, diffs, relations)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homological::homology::{homology, homology_vanishes, k_dimension, sup_homology};

    #[test]
    fn koszul_on_one_element() {
        let r = QuotientRing::parse(2, &["x", "y"], &["x*y"]).unwrap();
        let k = koszul_complex_ring(&r, &[r.parse_poly("x").unwrap()]).unwrap();
        assert_eq!(k.ranks(), vec![1, 1]);
        assert_eq!(k.shifts(1), &[1]);
    }

    #[test]
    fn koszul_on_variables_of_the_plane() {
        let r = QuotientRing::polynomial_ring(2, &["x", "y"]).unwrap();
        let k = koszul_complex_ring(&r, &r.variables()).unwrap();
        assert_eq!(k.ranks(), vec![1, 2, 1]);
        assert_eq!(k.differential(1).unwrap().to_strings(), vec![vec!["x", "y"]]);
        assert_eq!(k.differential(2).unwrap().to_strings(), vec![vec!["y"], vec!["x"]]);
        k.verify().unwrap();
        assert!(homology_vanishes(&k, 1).unwrap());
        assert!(homology_vanishes(&k, 2).unwrap());
        let h0 = homology(&k, 0).unwrap();
        assert_eq!(k_dimension(&h0).unwrap(), 1);
        assert_eq!(sup_homology(&k).unwrap(), Some(0));
    }

    #[test]
    fn signs_in_odd_characteristic() {
        let r = QuotientRing::polynomial_ring(3, &["x", "y", "z"]).unwrap();
        let k = koszul_complex_ring(&r, &r.variables()).unwrap();
        assert_eq!(k.ranks(), vec![1, 3, 3, 1]);
        k.verify().unwrap();
        for i in 1..=3 {
            assert!(homology_vanishes(&k, i).unwrap());
        }
    }

    #[test]
    fn remark_ring_first_koszul_homology() {
        // R = F_2[x,y]/(x^2 y, y^2): H_1(K(x;R)) = (xy), one-dimensional.
        let r = QuotientRing::parse(2, &["x", "y"], &["x^2*y", "y^2"]).unwrap();
        let k = koszul_complex_ring(&r, &[r.parse_poly("x").unwrap()]).unwrap();
        let h1 = homology(&k, 1).unwrap();
        assert_eq!(k_dimension(&h1).unwrap(), 1);
        assert_eq!(h1.cycles().to_strings(), vec![vec!["x*y"]]);
        // the cycle xy sits in C_1 = R(-1), so the class has degree 2 + 1
        assert_eq!(h1.generator_degrees(), &[3]);
    }

    #[test]
    fn socle_class_in_top_koszul_homology() {
        let r = QuotientRing::parse(2, &["x", "y"], &["x^2", "x*y"]).unwrap();
        let k = koszul_complex_ring(&r, &r.variables()).unwrap();
        assert!(!homology_vanishes(&k, 2).unwrap());
        let h2 = homology(&k, 2).unwrap();
        assert_eq!(h2.cycles().to_strings(), vec![vec!["x"]]);
        assert_eq!(k_dimension(&h2).unwrap(), 1);
    }

    #[test]
    fn koszul_with_module_coefficients() {
        let r = QuotientRing::polynomial_ring(2, &["x", "y"]).unwrap();
        let m = ModulePresentation::parse_cyclic(&r, &["x"]).unwrap();
        let k = koszul_complex(&r.variables(), &m).unwrap();
        k.verify().unwrap();
        // H_1(x,y; R/(x)) = k and H_2 = 0
        assert_eq!(k_dimension(&homology(&k, 1).unwrap()).unwrap(), 1);
        assert!(homology_vanishes(&k, 2).unwrap());
    }

    #[test]
    fn subsets_in_lex_order() {
        assert_eq!(subsets(3, 2), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(subsets(2, 0), vec![Vec::<usize>::new()]);
    }
}
