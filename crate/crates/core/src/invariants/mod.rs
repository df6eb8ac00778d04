//! Numerical invariants of `R = F_p[x_1..x_n]/I` at the homogeneous
//! maximal ideal: Hilbert series, dimension, multiplicity, depth, the
//! Cohen–Macaulay and regularity flags, systems of parameters and Loewy
//! lengths.

pub mod hilbert;
mod loewy;
mod sop;

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::homological::{homology_vanishes, koszul_complex, minimal_free_resolution, ModulePresentation};
use crate::ring::QuotientRing;

pub use hilbert::{HilbertData, HilbertSeries};
pub use loewy::loewy_length;
pub use sop::{find_sop, is_parameter_ideal, SopCertificate, SopSearch};

/// The cached invariants of a ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingInvariants {
    pub hilbert: HilbertData,
    pub dim: usize,
    pub depth: usize,
    pub multiplicity: u64,
    pub is_cohen_macaulay: bool,
    pub is_regular: bool,
}

pub fn hilbert_ring(r: &QuotientRing) -> HilbertSeries {
    HilbertSeries::from_basis(r.groebner_basis())
}

pub fn hilbert_module(m: &ModulePresentation) -> Result<HilbertSeries> {
    m.hilbert()
}

fn nonzero_ring(r: &QuotientRing) -> Result<HilbertData> {
    let data = hilbert_ring(r).data();
    if data.dim.is_none() {
        return Err(Error::Input("the ideal is the whole ring".into()));
    }
    Ok(data)
}

pub fn krull_dim(r: &QuotientRing) -> Result<usize> {
    Ok(nonzero_ring(r)?.dim.unwrap())
}

/// `e(R)`; the length of `R` when `dim R = 0`.
pub fn multiplicity(r: &QuotientRing) -> Result<u64> {
    Ok(nonzero_ring(r)?.multiplicity)
}

/// `n - sup { i : H_i(x_1..x_n; M) != 0 }`.
pub fn depth(m: &ModulePresentation) -> Result<usize> {
    if m.is_zero()? {
        return Err(Error::Precondition("depth of the zero module is not defined".into()));
    }
    let r = m.ring();
    let n = r.nvars();
    let k = koszul_complex(&r.variables(), m)?;
    for i in (0..=n as i64).rev() {
        if !homology_vanishes(&k, i)? {
            return Ok(n - i as usize);
        }
    }
    Err(Error::Consistency("H_0 of the Koszul complex vanished on a nonzero module".into()))
}

pub fn depth_ring(r: &Arc<QuotientRing>) -> Result<usize> {
    depth(&ModulePresentation::free(r, vec![0]))
}

pub fn is_cohen_macaulay(r: &Arc<QuotientRing>) -> Result<bool> {
    Ok(r.invariants()?.is_cohen_macaulay)
}

pub fn is_regular(r: &Arc<QuotientRing>) -> Result<bool> {
    Ok(r.invariants()?.is_regular)
}

/// Regularity from the Betti numbers of `k`: the resolution is the Koszul
/// complex on `beta_1` elements exactly when `beta_i = C(beta_1, i)` for
/// `i <= beta_1 + 1`.
pub fn betti_pattern_regular(r: &Arc<QuotientRing>) -> Result<bool> {
    let k = ModulePresentation::residue_field(r);
    let b1 = minimal_free_resolution(&k, 1)?.betti.total(1);
    let res = minimal_free_resolution(&k, b1 + 1)?;
    Ok((0..=b1 + 1).all(|i| res.betti.total(i) as i64 == hilbert::binomial(b1 as i64, i as i64)))
}

pub(crate) fn compute_ring_invariants(r: &Arc<QuotientRing>) -> Result<RingInvariants> {
    let hilbert = nonzero_ring(r)?;
    let dim = hilbert.dim.unwrap();
    let depth = depth_ring(r)?;
    if depth > dim {
        return Err(Error::Consistency(format!("depth {depth} exceeds dimension {dim}")));
    }
    let kunz = crate::frobenius::kunz_test(r)?.regular;
    let betti = betti_pattern_regular(r)?;
    if kunz != betti {
        return Err(Error::Consistency(format!("Kunz test says regular = {kunz}, Betti numbers of k say {betti}")));
    }
    let multiplicity = hilbert.multiplicity;
    Ok(RingInvariants { hilbert, dim, depth, multiplicity, is_cohen_macaulay: depth == dim, is_regular: kunz })
}
