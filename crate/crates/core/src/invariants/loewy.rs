use crate::error::{Error, Result};
use crate::groebner::{ModTerm, ModuleElement};
use crate::homological::ModulePresentation;

use super::sop::monomials_of_degree;

/// `lol(M) = min { l : m^l M = 0 }` for a nonzero module of finite length.
///
/// Tested directly on products of degree-`l` monomials with generators.
/// When all generators share one degree `s`, the answer must also equal
/// `top - s + 1` for the top nonzero degree `top`.
pub fn loewy_length(m: &ModulePresentation) -> Result<u32> {
    let hilbert = m.hilbert()?;
    match hilbert.length() {
        None => return Err(Error::Precondition("Loewy length needs a module of finite length".into())),
        Some(0) => return Err(Error::Precondition("Loewy length of the zero module".into())),
        Some(_) => {}
    }
    let gb = m.basis()?;
    let order = m.order();
    let field = m.ring().ambient().field();
    let n = m.ring().nvars();
    let mut l = 1u32;
    let direct = loop {
        let monos = monomials_of_degree(n, l);
        let mut all_zero = true;
        'scan: for pos in 0..m.rank() {
            for mono in &monos {
                let v = ModuleElement::from_terms(vec![ModTerm { coeff: 1, pos, mono: mono.clone() }], field, &order);
                if !gb.normal_form(&v)?.is_zero() {
                    all_zero = false;
                    break 'scan;
                }
            }
        }
        if all_zero {
            break l;
        }
        l += 1;
    };

    let shifts = m.shifts();
    if shifts.iter().all(|&s| s == shifts[0]) {
        let s = shifts[0];
        let mut top = s;
        let mut d = s;
        // the Hilbert function vanishes past the last nonzero numerator term
        let last = hilbert.offset() + hilbert.numerator().len() as i64;
        while d <= last {
            if hilbert.value(d) != 0 {
                top = d;
            }
            d += 1;
        }
        let graded = (top - s + 1) as u32;
        if graded != direct {
            return Err(Error::Consistency(format!("Loewy length {direct} by products, {graded} from the top degree")));
        }
    }
    Ok(direct)
}
