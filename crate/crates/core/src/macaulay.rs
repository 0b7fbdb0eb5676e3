//! Degree-`d` Macaulay matrices with signature-tagged rows, and their
//! echelonization by valid row operations only.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Coeff, PrimeField};
use crate::monomial::{enumerate_monomials, Monomial};
use crate::poly::Polynomial;

/// `tau * e_gen`, with `gen` 1-based.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Signature {
    pub gen: usize,
    pub tau: Monomial,
}

impl Signature {
    pub fn new(gen: usize, tau: Monomial) -> Self {
        Signature { gen, tau }
    }
}

impl Ord for Signature {
    fn cmp(&self, other: &Self) -> Ordering {
        self.gen.cmp(&other.gen).then_with(|| self.tau.cmp(&other.tau))
    }
}

impl PartialOrd for Signature {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*e{}", self.tau, self.gen)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RowStats {
    #[serde(rename = "d")]
    pub degree: u32,
    pub rows_built: usize,
    pub rows_skipped: usize,
    pub zero_reductions: usize,
    pub rank: usize,
}

/// Monomials of one degree, column 0 being the largest.
#[derive(Debug)]
pub struct Columns {
    monos: Vec<Monomial>,
    index: HashMap<Monomial, u32>,
}

impl Columns {
    pub fn new(nvars: usize, degree: u32) -> Self {
        let monos = enumerate_monomials(nvars, degree);
        let index = monos.iter().enumerate().map(|(i, m)| (m.clone(), i as u32)).collect();
        Columns { monos, index }
    }

    pub fn len(&self) -> usize {
        self.monos.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monos.is_empty()
    }

    pub fn monomial(&self, col: usize) -> &Monomial {
        &self.monos[col]
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).map(|&c| c as usize)
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monos
    }
}

/// Row contents. Before echelonization rows are sparse; afterwards nonzero
/// rows are dense from their pivot column to the end, with a unit pivot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RowData {
    Sparse(Vec<(u32, Coeff)>),
    Dense { lead: u32, coeffs: Vec<Coeff> },
    Zero,
}

impl RowData {
    pub fn lead(&self) -> Option<usize> {
        match self {
            RowData::Sparse(v) => v.first().map(|&(c, _)| c as usize),
            RowData::Dense { lead, .. } => Some(*lead as usize),
            RowData::Zero => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, RowData::Zero)
    }

    /// Nonzero `(column, coefficient)` pairs in increasing column order.
    pub fn entries(&self) -> Vec<(usize, Coeff)> {
        match self {
            RowData::Sparse(v) => v.iter().map(|&(c, x)| (c as usize, x)).collect(),
            RowData::Dense { lead, coeffs } => coeffs
                .iter()
                .enumerate()
                .filter(|(_, &x)| x != 0)
                .map(|(k, &x)| (*lead as usize + k, x))
                .collect(),
            RowData::Zero => Vec::new(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct MacaulayRow {
    pub sig: Signature,
    pub data: RowData,
}

#[derive(Clone, Debug)]
pub struct MacaulayMatrix {
    field: PrimeField,
    nvars: usize,
    degree: u32,
    gen_degrees: Vec<u32>,
    columns: Arc<Columns>,
    rows: Vec<MacaulayRow>,
    echelon: bool,
}

fn check_generators(gens: &[Polynomial]) -> Result<(PrimeField, usize, Vec<u32>)> {
    let first = gens.first().ok_or_else(|| Error::Shape("no generators".into()))?;
    let (field, nvars) = (first.field(), first.nvars());
    let mut degrees = Vec::with_capacity(gens.len());
    for g in gens {
        if g.nvars() != nvars {
            return Err(Error::Dimension {
                expected: nvars,
                found: g.nvars(),
            });
        }
        degrees.push(g.homogeneous_degree()?.ok_or(Error::ZeroPolynomial)?);
    }
    Ok((field, nvars, degrees))
}

/// Every row `tau * f_i` with `deg tau = d - deg f_i`.
pub fn build_macaulay(gens: &[Polynomial], d: u32) -> Result<MacaulayMatrix> {
    let (_, nvars, degrees) = check_generators(gens)?;
    let sigs = degrees
        .iter()
        .enumerate()
        .filter(|(_, &di)| di <= d)
        .flat_map(|(i, &di)| {
            enumerate_monomials(nvars, d - di)
                .into_iter()
                .map(move |tau| Signature::new(i + 1, tau))
        })
        .collect();
    MacaulayMatrix::from_signatures(gens, d, sigs)
}

impl MacaulayMatrix {
    /// Rows for the given signatures only; `gens` are indexed from 1.
    pub fn from_signatures(gens: &[Polynomial], d: u32, sigs: Vec<Signature>) -> Result<Self> {
        let (field, nvars, gen_degrees) = check_generators(gens)?;
        Self::with_columns(gens, d, sigs, Arc::new(Columns::new(nvars, d)), field, gen_degrees)
    }

    pub(crate) fn with_columns(
        gens: &[Polynomial],
        d: u32,
        sigs: Vec<Signature>,
        columns: Arc<Columns>,
        field: PrimeField,
        gen_degrees: Vec<u32>,
    ) -> Result<Self> {
        let nvars = gens[0].nvars();
        let rows = sigs
            .into_iter()
            .map(|sig| {
                let g = gens.get(sig.gen.wrapping_sub(1)).ok_or_else(|| {
                    Error::Shape(format!("signature {sig} names a missing generator"))
                })?;
                if sig.tau.degree() + gen_degrees[sig.gen - 1] != d {
                    return Err(Error::DegreeMismatch(format!("signature {sig} in degree {d}")));
                }
                let mut entries: Vec<(u32, Coeff)> = g
                    .terms()
                    .map(|(m, c)| {
                        let col = columns.index_of(&m.mul(&sig.tau)).expect("column of degree d");
                        (col as u32, c)
                    })
                    .collect();
                entries.sort_unstable_by_key(|&(c, _)| c);
                let data = if entries.is_empty() {
                    RowData::Zero
                } else {
                    RowData::Sparse(entries)
                };
                Ok(MacaulayRow { sig, data })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(MacaulayMatrix {
            field,
            nvars,
            degree: d,
            gen_degrees,
            columns,
            rows,
            echelon: false,
        })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn gen_degrees(&self) -> &[u32] {
        &self.gen_degrees
    }

    pub fn columns(&self) -> &Columns {
        &self.columns
    }

    pub fn rows(&self) -> &[MacaulayRow] {
        &self.rows
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn is_echelon(&self) -> bool {
        self.echelon
    }

    /// Rows in increasing signature order, each reduced only by pivots of
    /// smaller signature. Zero rows keep their signature.
    pub fn echelonize_valid(&mut self) {
        self.rows.sort_by(|a, b| a.sig.cmp(&b.sig));
        for w in self.rows.windows(2) {
            assert!(w[0].sig != w[1].sig, "duplicate signature {}", w[0].sig);
        }
        let ncols = self.columns.len();
        let mut piv = Pivots::new(ncols);
        let budget = self.field.lazy_budget();
        let p = self.field.modulus() as u64;
        let block = 32usize.max(self.rows.len() / (8 * rayon::current_num_threads().max(1)));
        let field = self.field;
        let mut start = 0;
        while start < self.rows.len() {
            let end = (start + block).min(self.rows.len());
            let old_cols = piv.sorted_cols.clone();
            let piv_ref = &piv;
            let reduced: Vec<Option<(usize, Vec<u64>)>> = self.rows[start..end]
                .par_iter()
                .enumerate()
                .map_init(
                    || vec![0u64; ncols],
                    |acc, (k, row)| {
                        let first = load(acc, &row.data)?;
                        reduce(acc, first, piv_ref, &old_cols, p, budget, start + k);
                        take(acc, first, p)
                    },
                )
                .collect();
            let mut acc = vec![0u64; ncols];
            let mut new_cols: Vec<u32> = Vec::new();
            for (k, red) in reduced.into_iter().enumerate() {
                let idx = start + k;
                let Some((first, dense)) = red else {
                    self.rows[idx].data = RowData::Zero;
                    continue;
                };
                acc[first..].copy_from_slice(&dense);
                reduce(&mut acc, first, &piv, &new_cols, p, budget, idx);
                match take(&mut acc, first, p) {
                    None => self.rows[idx].data = RowData::Zero,
                    Some((lead, dense)) => {
                        let inv = field.inv((dense[0] % p) as Coeff);
                        let coeffs: Vec<Coeff> = dense.iter().map(|&x| field.mul((x % p) as Coeff, inv)).collect();
                        piv.insert(lead, idx, coeffs.clone());
                        let pos = new_cols.partition_point(|&c| (c as usize) < lead);
                        new_cols.insert(pos, lead as u32);
                        self.rows[idx].data = RowData::Dense {
                            lead: lead as u32,
                            coeffs,
                        };
                    }
                }
            }
            piv.merge_sorted();
            start = end;
        }
        self.echelon = true;
    }

    pub fn rank(&self) -> usize {
        if self.echelon {
            self.rows.iter().filter(|r| !r.data.is_zero()).count()
        } else {
            plain_rank(&self.dense_rows(), self.field)
        }
    }

    /// Each row as the polynomial `Σ coeff * column`.
    pub fn rows_as_elements(&self) -> Vec<(Signature, Polynomial)> {
        self.rows
            .iter()
            .map(|r| (r.sig.clone(), self.row_polynomial(&r.data)))
            .collect()
    }

    pub fn row_polynomial(&self, data: &RowData) -> Polynomial {
        Polynomial::from_terms(
            self.field,
            self.nvars,
            data.entries()
                .into_iter()
                .map(|(c, x)| (self.columns.monomial(c).clone(), x)),
        )
    }

    /// Full rows, for oracle use.
    pub fn dense_rows(&self) -> Vec<Vec<Coeff>> {
        let n = self.columns.len();
        self.rows
            .iter()
            .map(|r| {
                let mut v = vec![0; n];
                for (c, x) in r.data.entries() {
                    v[c] = x;
                }
                v
            })
            .collect()
    }

    /// Rows `idx` of an echelonized matrix, reduced against every pivot
    /// regardless of signature.
    pub fn fully_reduced(&self, idx: &[usize]) -> Vec<Polynomial> {
        assert!(self.echelon, "matrix is not echelonized");
        let ncols = self.columns.len();
        let p = self.field.modulus() as u64;
        let mut piv = Pivots::new(ncols);
        for (k, r) in self.rows.iter().enumerate() {
            if let RowData::Dense { lead, coeffs } = &r.data {
                piv.insert(*lead as usize, k, coeffs.clone());
            }
        }
        piv.merge_sorted();
        let mut acc = vec![0u64; ncols];
        idx.iter()
            .map(|&k| {
                let lead = self.rows[k].data.lead().expect("nonzero row");
                load(&mut acc, &self.rows[k].data);
                acc[lead] = 0;
                reduce(&mut acc, lead + 1, &piv, &piv.sorted_cols, p, self.field.lazy_budget(), usize::MAX);
                let mut terms = vec![(self.columns.monomial(lead).clone(), 1)];
                for c in lead + 1..ncols {
                    let x = (acc[c] % p) as Coeff;
                    acc[c] = 0;
                    if x != 0 {
                        terms.push((self.columns.monomial(c).clone(), x));
                    }
                }
                Polynomial::from_terms(self.field, self.nvars, terms)
            })
            .collect()
    }

    /// One line per row: `signature ; monomial:coeff ...`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for r in &self.rows {
            out += &r.sig.to_string();
            out += " ;";
            for (c, x) in r.data.entries() {
                out += &format!(" {}:{}", self.columns.monomial(c), x);
            }
            out.push('\n');
        }
        out
    }
}

pub(crate) struct Pivots {
    /// column -> (row index, coefficients from the pivot column onwards)
    by_col: Vec<Option<(usize, Vec<Coeff>)>>,
    sorted_cols: Vec<u32>,
    pending: Vec<u32>,
}

impl Pivots {
    pub(crate) fn new(ncols: usize) -> Self {
        Pivots {
            by_col: vec![None; ncols],
            sorted_cols: Vec::new(),
            pending: Vec::new(),
        }
    }

    fn insert(&mut self, col: usize, row: usize, coeffs: Vec<Coeff>) {
        debug_assert!(self.by_col[col].is_none());
        self.by_col[col] = Some((row, coeffs));
        self.pending.push(col as u32);
    }

    fn merge_sorted(&mut self) {
        self.sorted_cols.append(&mut self.pending);
        self.sorted_cols.sort_unstable();
    }
}

/// Copies a row into the zeroed accumulator; returns its first column.
fn load(acc: &mut [u64], data: &RowData) -> Option<usize> {
    match data {
        RowData::Zero => None,
        RowData::Sparse(v) => {
            for &(c, x) in v {
                acc[c as usize] = x as u64;
            }
            v.first().map(|&(c, _)| c as usize)
        }
        RowData::Dense { lead, coeffs } => {
            let l = *lead as usize;
            for (k, &x) in coeffs.iter().enumerate() {
                acc[l + k] = x as u64;
            }
            Some(l)
        }
    }
}

/// Eliminates, left to right, every entry sitting in one of `cols`.
#[allow(clippy::too_many_arguments)]
fn reduce(acc: &mut [u64], first: usize, piv: &Pivots, cols: &[u32], p: u64, budget: u64, row: usize) {
    let mut since = 0u64;
    let from = cols.partition_point(|&c| (c as usize) < first);
    for &c in &cols[from..] {
        let c = c as usize;
        let a = acc[c] % p;
        acc[c] = 0;
        if a == 0 {
            continue;
        }
        let (prow, coeffs) = piv.by_col[c].as_ref().expect("pivot column");
        assert!(*prow < row, "reduction by a row of larger signature");
        if since >= budget {
            for x in acc[c..].iter_mut() {
                *x %= p;
            }
            since = 0;
        }
        let mult = p - a;
        for (x, &y) in acc[c + 1..].iter_mut().zip(&coeffs[1..]) {
            *x += mult * y as u64;
        }
        since += 1;
    }
}

/// Drains the accumulator from `first` on; returns the leading column and
/// the unreduced tail if the row is nonzero.
fn take(acc: &mut [u64], first: usize, p: u64) -> Option<(usize, Vec<u64>)> {
    let mut lead = None;
    for (c, x) in acc.iter_mut().enumerate().skip(first) {
        *x %= p;
        if *x != 0 {
            lead = Some(c);
            break;
        }
    }
    let lead = lead?;
    let out: Vec<u64> = acc[lead..].iter().map(|&x| x % p).collect();
    acc[first..].iter_mut().for_each(|x| *x = 0);
    Some((lead, out))
}

/// Reduced row echelon form by unrestricted Gaussian elimination with row
/// swaps. Returns the nonzero rows, pivots first.
pub fn plain_rref(mut rows: Vec<Vec<Coeff>>, field: PrimeField) -> Vec<Vec<Coeff>> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..ncols {
        let Some(k) = (r..rows.len()).find(|&k| rows[k][c] != 0) else {
            continue;
        };
        rows.swap(r, k);
        let inv = field.inv(rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = field.mul(*x, inv);
        }
        let pivot = rows[r].clone();
        for (k, row) in rows.iter_mut().enumerate() {
            if k == r || row[c] == 0 {
                continue;
            }
            let f = row[c];
            for (x, &y) in row.iter_mut().zip(&pivot) {
                *x = field.sub(*x, field.mul(f, y));
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    rows
}

pub fn plain_rank(rows: &[Vec<Coeff>], field: PrimeField) -> usize {
    plain_rref(rows.to_vec(), field).len()
}

/// Pivot columns of a reduced row echelon form.
pub fn pivot_columns(rref: &[Vec<Coeff>]) -> Vec<usize> {
    rref.iter()
        .filter_map(|r| r.iter().position(|&x| x != 0))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::random_homogeneous;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn vars(n: usize) -> Vec<Polynomial> {
        let f = PrimeField::default();
        (0..n).map(|i| Polynomial::var(f, n, i)).collect()
    }

    #[test]
    fn linear_pair_degree_two() {
        let mut m = build_macaulay(&vars(2), 2).unwrap();
        assert_eq!(m.num_rows(), 4);
        assert_eq!(m.columns().len(), 3);
        assert_eq!(m.rank(), 3);
        m.echelonize_valid();
        assert_eq!(m.rank(), 3);
        let zeros: Vec<_> = m.rows().iter().filter(|r| r.data.is_zero()).collect();
        assert_eq!(zeros.len(), 1);
        // x1*e2 collapses onto x2*e1
        assert_eq!(zeros[0].sig, Signature::new(2, Monomial::var(2, 0)));
    }

    #[test]
    fn single_generator_in_its_degree() {
        let f = PrimeField::default();
        let g = random_homogeneous(f, 3, 2, &mut ChaCha8Rng::seed_from_u64(1));
        let m = build_macaulay(&[g], 2).unwrap();
        assert_eq!(m.num_rows(), 1);
        assert_eq!(m.rows()[0].sig, Signature::new(1, Monomial::one(3)));
    }

    #[test]
    fn two_quadrics_degree_four() {
        let f = PrimeField::default();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let gens: Vec<_> = (0..2).map(|_| random_homogeneous(f, 3, 2, &mut rng)).collect();
        let mut m = build_macaulay(&gens, 4).unwrap();
        // quotient series (1+t)^2/(1-t) has t^4 coefficient 4
        assert_eq!(m.rank(), 15 - 4);
        m.echelonize_valid();
        assert_eq!(m.rank(), 11);
    }

    #[test]
    fn identical_rows_larger_signature_vanishes() {
        let f = PrimeField::default();
        let g = Polynomial::var(f, 2, 0).add(&Polynomial::var(f, 2, 1));
        let mut m = build_macaulay(&[g.clone(), g], 1).unwrap();
        m.echelonize_valid();
        assert!(!m.rows()[0].data.is_zero());
        assert!(m.rows()[1].data.is_zero());
    }

    #[test]
    fn echelon_input_unchanged_up_to_scaling() {
        let f = PrimeField::default();
        let x = vars(2);
        let gens = vec![x[0].scale(5), x[1].scale(7)];
        let mut m = build_macaulay(&gens, 1).unwrap();
        m.echelonize_valid();
        let rows = m.rows_as_elements();
        assert_eq!(rows[0].1, x[0]);
        assert_eq!(rows[1].1, x[1]);
        assert_eq!(f.modulus(), 65521);
    }

    #[test]
    fn rows_reconstruct_products() {
        let f = PrimeField::default();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let gens: Vec<_> = (0..2).map(|_| random_homogeneous(f, 3, 2, &mut rng)).collect();
        let m = build_macaulay(&gens, 3).unwrap();
        for (sig, p) in m.rows_as_elements() {
            assert_eq!(p, gens[sig.gen - 1].mul_monomial(&sig.tau, 1));
        }
    }

    #[test]
    fn dump_format() {
        let m = build_macaulay(&vars(2), 1).unwrap();
        assert_eq!(m.dump(), "1*e1 ; x1:1\n1*e2 ; x2:1\n");
    }

    #[test]
    fn zero_matrix_rank() {
        assert_eq!(plain_rank(&[vec![0, 0], vec![0, 0]], PrimeField::default()), 0);
        assert_eq!(plain_rank(&[vec![1, 0], vec![0, 3]], PrimeField::default()), 2);
    }

    #[test]
    fn tiny_prime_exercises_lazy_reduction() {
        let f = PrimeField::new(2147483647).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let gens: Vec<_> = (0..3).map(|_| random_homogeneous(f, 3, 2, &mut rng)).collect();
        let mut m = build_macaulay(&gens, 4).unwrap();
        let expected = plain_rank(&m.dense_rows(), f);
        m.echelonize_valid();
        assert_eq!(m.rank(), expected);
        // series (1+t)^3 truncated: 1,3,3,1,0 so the quotient vanishes in degree 4
        assert_eq!(expected, 15);
    }
}
