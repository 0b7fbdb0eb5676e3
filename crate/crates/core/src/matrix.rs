use std::fmt;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::poly::Polynomial;

/// A `rows × cols` matrix of homogeneous polynomials of one common degree.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entry_degree: u32,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    /// Builds from row-major entries; every nonzero entry must be homogeneous
    /// of degree `entry_degree`.
    pub fn new(rows: usize, cols: usize, entry_degree: u32, entries: Vec<Polynomial>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Shape("matrix must have at least one row and column".into()));
        }
        if entries.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        let nvars = entries[0].nvars();
        for e in &entries {
            if e.nvars() != nvars {
                return Err(Error::Dimension {
                    expected: nvars,
                    found: e.nvars(),
                });
            }
            match e.homogeneous_degree()? {
                Some(d) if d != entry_degree => {
                    return Err(Error::DegreeMismatch(format!(
                        "entry of degree {d}, expected {entry_degree}"
                    )))
                }
                _ => {}
            }
        }
        Ok(PolyMatrix {
            rows,
            cols,
            entry_degree,
            entries,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry_degree(&self) -> u32 {
        self.entry_degree
    }

    pub fn nvars(&self) -> usize {
        self.entries[0].nvars()
    }

    pub fn field(&self) -> PrimeField {
        self.entries[0].field()
    }

    /// 0-based access.
    pub fn get(&self, row: usize, col: usize) -> &Polynomial {
        &self.entries[row * self.cols + col]
    }

    pub fn entries(&self) -> &[Polynomial] {
        &self.entries
    }

    /// Entries of the first `k` columns, column by column
    /// (`a_{1,1}, …, a_{p,1}, a_{1,2}, …`).
    pub fn column_major_prefix(&self, k: usize) -> Vec<Polynomial> {
        (0..k.min(self.cols))
            .flat_map(|c| (0..self.rows).map(move |r| (r, c)))
            .map(|(r, c)| self.get(r, c).clone())
            .collect()
    }

    /// Copy with column `src` written over column `dst`.
    pub fn with_column_copied(&self, src: usize, dst: usize) -> PolyMatrix {
        let mut out = self.clone();
        for r in 0..self.rows {
            out.entries[r * self.cols + dst] = self.get(r, src).clone();
        }
        out
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "PolyMatrix {}x{} (degree {})", self.rows, self.cols, self.entry_degree)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}
