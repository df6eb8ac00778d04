use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homological::{Complex, ModulePresentation};
use crate::matrix::PolyMatrix;
use crate::monomial::MonomialOrder;
use crate::poly::{Limits, PolyRing, Polynomial};
use crate::ring::QuotientRing;

/// One problem: a ring, optionally a module or a bounded complex over it,
/// and default options.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    #[serde(rename = "char")]
    pub characteristic: u64,
    pub vars: Vec<String>,
    #[serde(default)]
    pub ideal: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub module: Option<ModuleSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub complex: Option<ComplexSpec>,
    #[serde(default, skip_serializing_if = "Options::is_empty")]
    pub options: Options,
}

/// `coker(relations)` on free generators of the given degrees.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleSpec {
    pub rank: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shifts: Option<Vec<i64>>,
    /// `rank` rows, one column per relation.
    #[serde(default)]
    pub relations: Vec<Vec<String>>,
}

/// Terms in homological degrees `range[0]..=range[1]`; `differentials[k]`
/// maps the term in degree `range[0] + k + 1` to the one below.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexSpec {
    pub range: [i64; 2],
    pub ranks: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shifts: Option<Vec<Vec<i64>>>,
    #[serde(default)]
    pub differentials: Vec<Vec<Vec<String>>>,
    /// Per term, relations making it a quotient of a free module.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relations: Option<Vec<Option<Vec<Vec<String>>>>>,
}

/// A single exponent or a list of them.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Exponents {
    One(u32),
    Many(Vec<u32>),
}

impl Exponents {
    pub fn to_vec(&self) -> Vec<u32> {
        match self {
            Exponents::One(e) => vec![*e],
            Exponents::Many(v) => v.clone(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e: Option<Exponents>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_degree: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_basis: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<String>,
    /// Sequence for the Koszul commands.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub length: Option<usize>,
}

impl Options {
    fn is_empty(&self) -> bool {
        *self == Options::default()
    }
}

/// Byte offset of a 1-based line and column.
fn byte_offset(src: &str, line: usize, column: usize) -> usize {
    let start: usize = src.split_inclusive('\n').take(line.saturating_sub(1)).map(str::len).sum();
    (start + column.saturating_sub(1)).min(src.len())
}

impl ProblemFile {
    pub fn from_json(src: &str) -> Result<Self> {
        serde_json::from_str(src).map_err(|e| Error::Parse {
            position: byte_offset(src, e.line(), e.column()),
            message: format!("line {} column {}: {e}", e.line(), e.column()),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("problem files serialize")
    }

    /// Builds the ring and the input it describes.
    pub fn load(&self, limits: Limits) -> Result<Problem> {
        let amb = PolyRing::with_options(self.characteristic, self.vars.clone(), MonomialOrder::default(), limits)?;
        let ideal = self
            .ideal
            .iter()
            .enumerate()
            .map(|(k, s)| parse_at(&amb, s, &format!("ideal[{k}]")))
            .collect::<Result<Vec<_>>>()?;
        let ring = QuotientRing::new(&amb, ideal)?;
        let input = match (&self.module, &self.complex) {
            (Some(_), Some(_)) => return Err(Error::Input("a problem has a module or a complex, not both".into())),
            (Some(m), None) => Input::Module(m.build(&ring)?),
            (None, Some(c)) => Input::Complex(c.build(&ring)?),
            (None, None) => Input::None,
        };
        Ok(Problem { ring, input })
    }

    /// The same problem with every polynomial in printed normal form.
    pub fn canonical(&self) -> Result<ProblemFile> {
        let amb = PolyRing::with_options(self.characteristic, self.vars.clone(), MonomialOrder::default(), Limits::default())?;
        let canon = |s: &String, at: &str| parse_at(&amb, s, at).map(|p| p.to_string());
        let canon_matrix = |m: &Vec<Vec<String>>, at: &str| -> Result<Vec<Vec<String>>> {
            m.iter()
                .enumerate()
                .map(|(i, row)| row.iter().enumerate().map(|(j, s)| canon(s, &format!("{at}[{i}][{j}]"))).collect())
                .collect()
        };
        let mut out = self.clone();
        out.ideal = self.ideal.iter().enumerate().map(|(k, s)| canon(s, &format!("ideal[{k}]"))).collect::<Result<_>>()?;
        if let Some(m) = out.module.as_mut() {
            m.relations = canon_matrix(&m.relations, "module.relations")?;
        }
        if let Some(c) = out.complex.as_mut() {
            c.differentials = c
                .differentials
                .iter()
                .enumerate()
                .map(|(k, d)| canon_matrix(d, &format!("complex.differentials[{k}]")))
                .collect::<Result<_>>()?;
            if let Some(rels) = c.relations.as_mut() {
                for (k, r) in rels.iter_mut().enumerate() {
                    if let Some(m) = r.as_mut() {
                        *m = canon_matrix(m, &format!("complex.relations[{k}]"))?;
                    }
                }
            }
        }
        Ok(out)
    }
}

fn parse_at(amb: &Arc<PolyRing>, src: &str, at: &str) -> Result<Polynomial> {
    Polynomial::parse(amb, src).map_err(|e| match e {
        Error::Parse { position, message } => Error::Parse { position, message: format!("in {at} {src:?}: {message}") },
        other => other,
    })
}

fn parse_matrix(amb: &Arc<PolyRing>, rows: &[Vec<String>], nrows: usize, ncols: Option<usize>, at: &str) -> Result<PolyMatrix> {
    let width = rows.first().map_or(0, Vec::len);
    if rows.is_empty() || width == 0 {
        if rows.iter().any(|r| !r.is_empty()) {
            return Err(Error::Input(format!("{at}: ragged matrix")));
        }
        return Ok(PolyMatrix::zeros(amb, nrows, ncols.unwrap_or(0)));
    }
    if rows.len() != nrows {
        return Err(Error::Input(format!("{at}: expected {nrows} rows, found {}", rows.len())));
    }
    if let Some(c) = ncols {
        if width != c {
            return Err(Error::Input(format!("{at}: expected {c} columns, found {width}")));
        }
    }
    let entries = rows
        .iter()
        .enumerate()
        .map(|(i, row)| {
            if row.len() != width {
                return Err(Error::Input(format!("{at}: row {i} has {} entries, expected {width}", row.len())));
            }
            row.iter().enumerate().map(|(j, s)| parse_at(amb, s, &format!("{at}[{i}][{j}]"))).collect()
        })
        .collect::<Result<Vec<Vec<Polynomial>>>>()?;
    PolyMatrix::from_rows(amb, entries)
}

impl ModuleSpec {
    pub fn build(&self, ring: &Arc<QuotientRing>) -> Result<ModulePresentation> {
        let shifts = self.shifts.clone().unwrap_or_else(|| vec![0; self.rank]);
        if shifts.len() != self.rank {
            return Err(Error::Input(format!("module.shifts has {} entries for rank {}", shifts.len(), self.rank)));
        }
        let rel = parse_matrix(ring.ambient(), &self.relations, self.rank, None, "module.relations")?;
        ModulePresentation::new(ring, shifts, rel)
    }
}

impl ComplexSpec {
    pub fn build(&self, ring: &Arc<QuotientRing>) -> Result<Complex> {
        let [lo, hi] = self.range;
        if hi < lo {
            return Ok(Complex::zero(ring));
        }
        let n = (hi - lo + 1) as usize;
        if self.ranks.len() != n {
            return Err(Error::Input(format!("complex.ranks needs {n} entries for range [{lo}, {hi}]")));
        }
        if self.differentials.len() != n - 1 {
            return Err(Error::Input(format!("complex.differentials needs {} matrices", n - 1)));
        }
        let amb = ring.ambient();
        let diffs = self
            .differentials
            .iter()
            .enumerate()
            .map(|(k, d)| parse_matrix(amb, d, self.ranks[k], Some(self.ranks[k + 1]), &format!("complex.differentials[{k}]")))
            .collect::<Result<Vec<_>>>()?;
        let shifts = match &self.shifts {
            Some(s) => {
                if s.len() != n || s.iter().zip(&self.ranks).any(|(v, &r)| v.len() != r) {
                    return Err(Error::Input("complex.shifts must match complex.ranks".into()));
                }
                s.clone()
            }
            None => infer_shifts(&self.ranks, &diffs),
        };
        let relations = match &self.relations {
            None => vec![None; n],
            Some(rels) => {
                if rels.len() != n {
                    return Err(Error::Input(format!("complex.relations needs {n} entries")));
                }
                rels.iter()
                    .enumerate()
                    .map(|(k, r)| match r {
                        None => Ok(None),
                        Some(m) => parse_matrix(amb, m, self.ranks[k], None, &format!("complex.relations[{k}]")).map(Some),
                    })
                    .collect::<Result<Vec<_>>>()?
            }
        };
        Complex::with_relations(ring, lo, shifts, diffs, relations)
    }
}

/// Degree-zero generators at the bottom; above, each generator sits in the
/// degree of its image (the first nonzero entry of its column).
fn infer_shifts(ranks: &[usize], diffs: &[PolyMatrix]) -> Vec<Vec<i64>> {
    let mut shifts = vec![vec![0; ranks[0]]];
    for (k, d) in diffs.iter().enumerate() {
        let below = shifts[k].clone();
        let col_shift = |j: usize| {
            (0..d.nrows())
                .find(|&i| !d.get(i, j).is_zero())
                .map_or(0, |i| below[i] + i64::from(d.get(i, j).degree().unwrap()))
        };
        shifts.push((0..ranks[k + 1]).map(col_shift).collect());
    }
    shifts
}

/// A loaded problem.
pub struct Problem {
    pub ring: Arc<QuotientRing>,
    pub input: Input,
}

pub enum Input {
    Module(ModulePresentation),
    Complex(Complex),
    None,
}

impl Problem {
    /// The input as a complex; the ring itself when none is given.
    pub fn as_complex(&self) -> Complex {
        match &self.input {
            Input::Module(m) => Complex::from_module(m, 0),
            Input::Complex(c) => c.clone(),
            Input::None => Complex::from_module(&ModulePresentation::free(&self.ring, vec![0]), 0),
        }
    }

    /// The input as a module; the ring itself when none is given.
    pub fn module(&self) -> Result<ModulePresentation> {
        match &self.input {
            Input::Module(m) => Ok(m.clone()),
            Input::Complex(_) => Err(Error::Input("this command needs a module, not a complex".into())),
            Input::None => Ok(ModulePresentation::free(&self.ring, vec![0])),
        }
    }
}
