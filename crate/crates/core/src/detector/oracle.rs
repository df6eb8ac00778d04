use crate::error::{Error, Result};
use crate::homological::{minimal_free_resolution, ModulePresentation};
use crate::invariants::depth_ring;

use super::verdict::{Certificate, FlatDimVerdict, Outcome, Route, Witness};

/// Flat dimension from a minimal resolution. Over a graded ring a finite
/// projective dimension is at most `depth R`, so the resolution decides the
/// question once it has `depth R + 1` steps.
pub fn flatdim_oracle(m: &ModulePresentation) -> Result<FlatDimVerdict> {
    match oracle_inner(m) {
        Err(e) if e.is_limit() => Ok(FlatDimVerdict::inconclusive(format!("resource cap: {e}"))),
        other => other,
    }
}

fn oracle_inner(m: &ModulePresentation) -> Result<FlatDimVerdict> {
    if m.is_zero()? {
        return Err(Error::Precondition("flat dimension of the zero module".into()));
    }
    let r = m.ring();
    let depth = depth_ring(r)?;
    let res = minimal_free_resolution(m, depth + 1)?;
    let beyond = res.betti.total(depth + 1);
    let outcome = if beyond == 0 {
        let pd = res.betti.totals().iter().rposition(|&b| b > 0).unwrap_or(0);
        Outcome::Finite {
            bound: pd as i64,
            certificate: Certificate {
                route: Route::Oracle,
                cohen_macaulay: None,
                e: None,
                window: None,
                justification: format!("minimal resolution stops at step {pd} <= depth R = {depth}"),
            },
        }
    } else {
        Outcome::Infinite {
            witness: Witness { i: depth as i64 + 1, e: None, betti: Some(beyond), cell: None },
        }
    };
    let mut v = FlatDimVerdict::from_outcome(outcome);
    v.betti = Some(res.betti);
    v.depth = Some(depth);
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::QuotientRing;

    #[test]
    fn residue_field_of_the_plane() {
        let r = QuotientRing::polynomial_ring(2, &["x", "y"]).unwrap();
        let v = flatdim_oracle(&ModulePresentation::residue_field(&r)).unwrap();
        assert_eq!(v.finite_bound(), Some(2));
    }

    #[test]
    fn periodic_module_is_infinite() {
        let r = QuotientRing::parse(2, &["x", "y"], &["x*y"]).unwrap();
        let v = flatdim_oracle(&ModulePresentation::parse_cyclic(&r, &["x"]).unwrap()).unwrap();
        match v.outcome {
            Outcome::Infinite { witness } => assert_eq!((witness.i, witness.betti), (2, Some(1))),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn free_module_has_dimension_zero() {
        let r = QuotientRing::parse(2, &["x", "y"], &["x*y"]).unwrap();
        let v = flatdim_oracle(&ModulePresentation::free(&r, vec![0])).unwrap();
        assert_eq!(v.finite_bound(), Some(0));
    }
}
