use crate::error::{Error, Result};
use crate::homological::{homology, koszul_complex_ring, ModulePresentation};
use crate::invariants::{is_parameter_ideal, loewy_length};
use crate::ring::QuotientRing;

use super::bounds::{loewy_bounds_koszul, LoewyBound};

/// The family `R = F_p[x,y]/(x^n y, y^2)` with the parameter `x`. The
/// Koszul bounds are `2` and `n + 1`, so the gap grows with `n`.
#[derive(Clone, Debug)]
pub struct RemarkReport {
    pub n: u32,
    pub p: u64,
    pub ring: String,
    pub dim: usize,
    pub x_is_parameter: bool,
    pub colength: u64,
    /// `lol(R/(x))`.
    pub quotient_loewy: u32,
    pub h1_k_dimension: u64,
    /// The cycle generating `H_1(K(x; R))`.
    pub h1_cycle: String,
    /// Degree of the cycle polynomial `x^{n-1} y`.
    pub h1_cycle_degree: u32,
    /// Internal degree of the generator of `H_1`, with `K_1 = R(-1)`.
    pub h1_internal_degree: i64,
    pub bounds: LoewyBound,
    /// Whether the upper bound equals the known exact value `n + 1`.
    pub upper_is_exact_value: bool,
}

pub fn remark_example(n: u32, p: u64) -> Result<RemarkReport> {
    if n < 1 {
        return Err(Error::Input("the example needs n >= 1".into()));
    }
    let gen = format!("x^{n}*y");
    let r = QuotientRing::parse(p, &["x", "y"], &[gen.as_str(), "y^2"])?;
    let dim = r.invariants()?.dim;
    let x = vec![r.parse_poly("x")?];
    let colength = is_parameter_ideal(&r, &x)?;
    let quotient_loewy = loewy_length(&ModulePresentation::cyclic(&r, &x)?)?;
    let h1 = homology(&koszul_complex_ring(&r, &x)?, 1)?;
    let h1_k_dimension = h1.k_dimension().ok_or_else(|| Error::Consistency("H_1 should have finite length".into()))?;
    let cycle = h1.cycles().get(0, 0).clone();
    let bounds = loewy_bounds_koszul(&r, &x)?;
    Ok(RemarkReport {
        n,
        p,
        ring: r.to_string(),
        dim,
        x_is_parameter: colength.is_some(),
        colength: colength.unwrap_or(0),
        quotient_loewy,
        h1_k_dimension,
        h1_cycle: cycle.to_string(),
        h1_cycle_degree: cycle.degree().unwrap_or(0),
        h1_internal_degree: h1.generator_degrees()[0],
        upper_is_exact_value: bounds.upper == Some(n + 1),
        bounds,
    })
}
