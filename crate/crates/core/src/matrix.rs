use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groebner::ModuleElement;
use crate::monomial::ModuleOrder;
use crate::poly::{PolyRing, Polynomial};

/// A dense matrix of polynomials. Columns are read as elements of the free
/// module of rank `nrows`, so a `b x a` matrix is a map `R^a -> R^b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    ring: Arc<PolyRing>,
    nrows: usize,
    ncols: usize,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn zeros(ring: &Arc<PolyRing>, nrows: usize, ncols: usize) -> Self {
        PolyMatrix { ring: ring.clone(), nrows, ncols, entries: vec![Polynomial::zero(ring); nrows * ncols] }
    }

    pub fn identity(ring: &Arc<PolyRing>, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, Polynomial::constant(ring, 1));
        }
        m
    }

    pub fn from_rows(ring: &Arc<PolyRing>, rows: Vec<Vec<Polynomial>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::Input("ragged matrix rows".into()));
        }
        Ok(PolyMatrix { ring: ring.clone(), nrows, ncols, entries: rows.into_iter().flatten().collect() })
    }

    pub fn from_columns(ring: &Arc<PolyRing>, nrows: usize, cols: &[Vec<Polynomial>]) -> Self {
        let mut m = Self::zeros(ring, nrows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), nrows, "column length");
            for (i, p) in c.iter().enumerate() {
                m.set(i, j, p.clone());
            }
        }
        m
    }

    /// Parses rows of polynomial strings.
    pub fn parse(ring: &Arc<PolyRing>, rows: &[Vec<&str>]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|s| Polynomial::parse(ring, s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(ring, rows)
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.ncols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Polynomial) {
        self.entries[i * self.ncols + j] = p;
    }

    pub fn entries(&self) -> impl Iterator<Item = &Polynomial> {
        self.entries.iter()
    }

    pub fn column(&self, j: usize) -> Vec<Polynomial> {
        (0..self.nrows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row(&self, i: usize) -> Vec<Polynomial> {
        (0..self.ncols).map(|j| self.get(i, j).clone()).collect()
    }

    pub fn rows(&self) -> Vec<Vec<Polynomial>> {
        (0..self.nrows).map(|i| self.row(i)).collect()
    }

    pub fn columns_as_elements(&self, order: &ModuleOrder) -> Vec<ModuleElement> {
        (0..self.ncols).map(|j| ModuleElement::from_column(&self.column(j), order)).collect()
    }

    pub fn from_elements(ring: &Arc<PolyRing>, nrows: usize, cols: &[ModuleElement]) -> Self {
        let cols: Vec<Vec<Polynomial>> = cols.iter().map(|c| c.to_column(ring, nrows)).collect();
        Self::from_columns(ring, nrows, &cols)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Polynomial::is_zero)
    }

    pub fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.ncols != other.nrows {
            return Err(Error::Input(format!("cannot multiply {}x{} by {}x{}", self.nrows, self.ncols, other.nrows, other.ncols)));
        }
        let mut out = Self::zeros(&self.ring, self.nrows, other.ncols);
        for i in 0..self.nrows {
            for j in 0..other.ncols {
                let mut acc = Polynomial::zero(&self.ring);
                for k in 0..self.ncols {
                    let (a, b) = (self.get(i, k), other.get(k, j));
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.checked_add(&a.checked_mul(b)?)?;
                    }
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn map_entries(&self, f: impl Fn(&Polynomial) -> Result<Polynomial>) -> Result<PolyMatrix> {
        let entries = self.entries.iter().map(f).collect::<Result<Vec<_>>>()?;
        Ok(PolyMatrix { ring: self.ring.clone(), nrows: self.nrows, ncols: self.ncols, entries })
    }

    pub fn transpose(&self) -> PolyMatrix {
        let mut out = Self::zeros(&self.ring, self.ncols, self.nrows);
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// Keeps the listed rows and columns, in the given order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> PolyMatrix {
        let mut out = Self::zeros(&self.ring, rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                out.set(a, b, self.get(i, j).clone());
            }
        }
        out
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kronecker(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        let mut out = Self::zeros(&self.ring, self.nrows * other.nrows, self.ncols * other.ncols);
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.nrows {
                    for l in 0..other.ncols {
                        let b = other.get(k, l);
                        if !b.is_zero() {
                            out.set(i * other.nrows + k, j * other.ncols + l, a.checked_mul(b)?);
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn hstack(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.nrows, other.nrows);
        let cols: Vec<Vec<Polynomial>> = (0..self.ncols).map(|j| self.column(j)).chain((0..other.ncols).map(|j| other.column(j))).collect();
        Self::from_columns(&self.ring, self.nrows, &cols)
    }

    /// Every entry as a string, row by row.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.nrows).map(|i| (0..self.ncols).map(|j| self.get(i, j).to_string()).collect()).collect()
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.to_strings().into_iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}
