use crate::error::{Error, Result};
use crate::frobenius::{tor_frobenius, TorCell, TorProfile};
use crate::homological::{sup_homology, BettiTable, Complex};

use super::oracle::flatdim_oracle;

/// How a verdict was reached.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    /// Vanishing of `Tor_i(M, R through f^e)` on a window of length `dim R`
    /// over a Cohen–Macaulay ring with `p^e >= e(R)`.
    FrobeniusWindow,
    /// A nonzero `Tor_i(M, R through f^e)` with `i > sup H(M)`.
    FrobeniusWitness,
    /// Read off a minimal free resolution.
    Oracle,
}

impl Route {
    pub fn as_str(&self) -> &'static str {
        match self {
            Route::FrobeniusWindow => "frobenius-window",
            Route::FrobeniusWitness => "frobenius-witness",
            Route::Oracle => "oracle",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Certificate {
    pub route: Route,
    pub cohen_macaulay: Option<bool>,
    pub e: Option<u32>,
    pub window: Option<(i64, i64)>,
    pub justification: String,
}

#[derive(Clone, Debug)]
pub struct Witness {
    pub i: i64,
    pub e: Option<u32>,
    /// Betti number at `i` (oracle witnesses).
    pub betti: Option<usize>,
    /// The nonzero Tor cell (Frobenius witnesses).
    pub cell: Option<TorCell>,
}

#[derive(Clone, Debug)]
pub enum Outcome {
    Finite { bound: i64, certificate: Certificate },
    Infinite { witness: Witness },
    Inconclusive { reason: String },
}

impl Outcome {
    pub fn kind(&self) -> &'static str {
        match self {
            Outcome::Finite { .. } => "finite",
            Outcome::Infinite { .. } => "infinite",
            Outcome::Inconclusive { .. } => "inconclusive",
        }
    }
}

/// The answer of the detector or the oracle, with its evidence.
#[derive(Clone, Debug)]
pub struct FlatDimVerdict {
    pub outcome: Outcome,
    /// `sup H(M)`.
    pub s: Option<i64>,
    pub t: Option<i64>,
    pub window_length: Option<usize>,
    pub e_list: Vec<u32>,
    /// Least `e` with `p^e >= e(R)`.
    pub e_bound: Option<u32>,
    pub evidence: TorProfile,
    pub betti: Option<BettiTable>,
    pub depth: Option<usize>,
    /// The oracle's verdict, when it was consulted.
    pub oracle: Option<Box<FlatDimVerdict>>,
}

impl FlatDimVerdict {
    pub(crate) fn from_outcome(outcome: Outcome) -> Self {
        FlatDimVerdict {
            outcome,
            s: None,
            t: None,
            window_length: None,
            e_list: Vec::new(),
            e_bound: None,
            evidence: TorProfile::default(),
            betti: None,
            depth: None,
            oracle: None,
        }
    }

    pub(crate) fn inconclusive(reason: String) -> Self {
        Self::from_outcome(Outcome::Inconclusive { reason })
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.outcome, Outcome::Finite { .. })
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self.outcome, Outcome::Infinite { .. })
    }

    pub fn is_inconclusive(&self) -> bool {
        matches!(self.outcome, Outcome::Inconclusive { .. })
    }

    pub fn finite_bound(&self) -> Option<i64> {
        match &self.outcome {
            Outcome::Finite { bound, .. } => Some(*bound),
            _ => None,
        }
    }
}

/// Options for [`detect_flat_dimension`].
#[derive(Clone, Debug, Default)]
pub struct DetectOptions {
    /// Window start; defaults to `sup H(M) + 1`.
    pub t: Option<i64>,
    /// Frobenius exponents to try; defaults to the least `e` with
    /// `p^e >= e(R)` (at least 1).
    pub e_list: Option<Vec<u32>>,
    /// Window length; defaults to `dim R`.
    pub window: Option<usize>,
    /// Ask the oracle when the Frobenius test is inconclusive on a module.
    pub consult_oracle: bool,
}

/// Least `e >= 0` with `p^e >= mult`.
pub fn log_ceiling(p: u32, mult: u64) -> u32 {
    let mut e = 0;
    let mut q: u64 = 1;
    while q < mult {
        q *= p as u64;
        e += 1;
    }
    e
}

/// Decides finiteness of flat dimension from `Tor_i(M, R through f^e)` on
/// the window `t <= i <= t + dim R`.
///
/// A nonzero cell with `i > sup H(M)` proves the flat dimension infinite.
/// If every cell vanishes, the ring is Cohen–Macaulay and some `e` in the
/// list has `p^e >= e(R)`, the flat dimension is at most `t + dim R`.
/// Otherwise the answer is inconclusive, since for other rings vanishing
/// is only conclusive for infinitely many `e`.
pub fn detect_flat_dimension(m: &Complex, opts: &DetectOptions) -> Result<FlatDimVerdict> {
    match detect_inner(m, opts) {
        Err(e) if e.is_limit() => Ok(FlatDimVerdict::inconclusive(format!("resource cap: {e}"))),
        other => other,
    }
}

fn detect_inner(m: &Complex, opts: &DetectOptions) -> Result<FlatDimVerdict> {
    let r = m.ring();
    let inv = r.invariants()?.clone();
    let s = sup_homology(m)?.ok_or_else(|| Error::Precondition("the input has no homology".into()))?;
    let t = opts.t.unwrap_or(s + 1);
    if t < s {
        return Err(Error::Input(format!("window start t = {t} is below sup H = {s}")));
    }
    let d = opts.window.unwrap_or(inv.dim);
    let e_bound = log_ceiling(r.characteristic(), inv.multiplicity);
    let e_list = opts.e_list.clone().unwrap_or_else(|| vec![e_bound.max(1)]);
    if e_list.is_empty() || e_list.contains(&0) {
        return Err(Error::Input("Frobenius exponents must be positive".into()));
    }
    let hi = t + d as i64;
    let profile = tor_frobenius(m, &e_list, t, hi)?;

    let mut v = FlatDimVerdict::from_outcome(Outcome::Inconclusive { reason: String::new() });
    v.s = Some(s);
    v.t = Some(t);
    v.window_length = Some(d);
    v.e_list = e_list.clone();
    v.e_bound = Some(e_bound);

    let witness = profile.cells().find(|c| c.is_zero == Some(false) && c.i > s).cloned();
    v.outcome = if let Some(cell) = witness {
        Outcome::Infinite { witness: Witness { i: cell.i, e: Some(cell.e), betti: None, cell: Some(cell) } }
    } else if profile.any_unavailable() {
        Outcome::Inconclusive { reason: "resource cap on some Tor cells".into() }
    } else if !profile.all_zero() {
        Outcome::Inconclusive { reason: format!("Tor_{s} is nonzero and the window starts at t = s") }
    } else {
        let good_e = e_list.iter().copied().filter(|&e| e >= e_bound).min();
        match (inv.is_cohen_macaulay, good_e) {
            (true, Some(e)) => Outcome::Finite {
                bound: hi,
                certificate: Certificate {
                    route: Route::FrobeniusWindow,
                    cohen_macaulay: Some(true),
                    e: Some(e),
                    window: Some((t, hi)),
                    justification: format!("Tor_i vanishes for {t} <= i <= {hi} at e = {e}, R is Cohen-Macaulay and p^e >= e(R) = {}", inv.multiplicity),
                },
            },
            (true, None) => Outcome::Inconclusive { reason: format!("window vanished but every e has p^e < e(R) = {}", inv.multiplicity) },
            (false, _) => Outcome::Inconclusive {
                reason: format!("window vanished for e in {e_list:?}; R is not Cohen-Macaulay, where vanishing is needed for infinitely many e"),
            },
        }
    };
    v.evidence = profile;

    if v.is_inconclusive() && opts.consult_oracle && m.lo() == m.hi() && m.lo() == 0 {
        let o = flatdim_oracle(&m.term(0))?;
        v.oracle = Some(Box::new(o));
    }
    Ok(v)
}
