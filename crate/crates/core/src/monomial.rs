//! Monomials, module monomials and the grevlex / position-over-term orders.

use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};

pub type Exponents = SmallVec<[u16; 8]>;

/// `x^a` with a cached total degree.
///
/// `Ord` is grevlex. Comparing monomials over different numbers of variables
/// through `Ord` is a logic error; use [`grevlex_cmp`] for a checked version.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Exponents,
    degree: u32,
}

impl Monomial {
    pub fn new(exps: impl Into<Exponents>) -> Self {
        let exps = exps.into();
        let degree = exps.iter().map(|&e| e as u32).sum();
        Monomial { exps, degree }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: SmallVec::from_elem(0, nvars),
            degree: 0,
        }
    }

    /// The variable `x_{var+1}` (0-based index).
    pub fn var(nvars: usize, var: usize) -> Self {
        let mut m = Self::one(nvars);
        m.exps[var] = 1;
        m.degree = 1;
        m
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.degree
    }

    #[inline]
    pub fn exponents(&self) -> &[u16] {
        &self.exps
    }

    #[inline]
    pub fn exponent(&self, var: usize) -> u16 {
        self.exps[var]
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        let exps = self
            .exps
            .iter()
            .zip(other.exps.iter())
            .map(|(a, b)| a + b)
            .collect();
        Monomial {
            exps,
            degree: self.degree + other.degree,
        }
    }

    pub fn mul_var(&self, var: usize) -> Monomial {
        let mut m = self.clone();
        m.exps[var] += 1;
        m.degree += 1;
        m
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self | other`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let exps = other
            .exps
            .iter()
            .zip(self.exps.iter())
            .map(|(a, b)| a - b)
            .collect();
        Some(Monomial {
            exps,
            degree: other.degree - self.degree,
        })
    }

    /// Divides by one variable if possible.
    pub fn div_var(&self, var: usize) -> Option<Monomial> {
        if self.exps[var] == 0 {
            return None;
        }
        let mut m = self.clone();
        m.exps[var] -= 1;
        m.degree -= 1;
        Some(m)
    }

    /// Largest index of a variable dividing this monomial.
    pub fn max_var(&self) -> Option<usize> {
        self.exps.iter().rposition(|&e| e > 0)
    }

    /// Drops the last variable, i.e. evaluates it at 1.
    pub(crate) fn truncate_last(&self) -> Monomial {
        let mut exps = self.exps.clone();
        exps.pop();
        Monomial::new(exps)
    }

    pub(crate) fn push_var(&self, exp: u16) -> Monomial {
        let mut exps = self.exps.clone();
        exps.push(exp);
        Monomial {
            exps,
            degree: self.degree + exp as u32,
        }
    }
}

fn grevlex_unchecked(a: &Monomial, b: &Monomial) -> Ordering {
    match a.degree.cmp(&b.degree) {
        Ordering::Equal => {}
        o => return o,
    }
    for (x, y) in a.exps.iter().zip(b.exps.iter()).rev() {
        if x != y {
            // smaller exponent in the last differing variable wins
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.nvars(), other.nvars());
        grevlex_unchecked(self, other)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Graded reverse lexicographic comparison.
pub fn grevlex_cmp(a: &Monomial, b: &Monomial) -> Result<Ordering> {
    if a.nvars() != b.nvars() {
        return Err(Error::Dimension {
            expected: a.nvars(),
            found: b.nvars(),
        });
    }
    Ok(grevlex_unchecked(a, b))
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree == 0 {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "x{}^{}", i + 1, e)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// All monomials of degree `d` in `n` variables, strictly decreasing in grevlex.
pub fn enumerate_monomials(n: usize, d: u32) -> Vec<Monomial> {
    fn rec(n: usize, var: usize, left: u32, cur: &mut Exponents, out: &mut Vec<Monomial>) {
        if var + 1 == n {
            cur[var] = left as u16;
            out.push(Monomial::new(cur.clone()));
            cur[var] = 0;
            return;
        }
        for e in 0..=left {
            cur[var] = e as u16;
            rec(n, var + 1, left - e, cur, out);
        }
        cur[var] = 0;
    }
    if n == 0 {
        return if d == 0 { vec![Monomial::one(0)] } else { Vec::new() };
    }
    let mut out = Vec::new();
    let mut cur: Exponents = SmallVec::from_elem(0, n);
    rec(n, 0, d, &mut cur, &mut out);
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

/// Position of a module basis element: either `e_i` of a free module or an
/// exterior basis element `e_{i1} ∧ ... ∧ e_{ir}` with strictly increasing
/// indices. Indices are 1-based, as printed.
///
/// The derived `Ord` is only a storage order; use [`BasisIndex::index_cmp`]
/// for the module order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum BasisIndex {
    Free(usize),
    Wedge(SmallVec<[u16; 4]>),
}

impl BasisIndex {
    pub fn wedge(cols: &[usize]) -> Result<BasisIndex> {
        if cols.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Shape(format!(
                "wedge indices must be strictly increasing: {cols:?}"
            )));
        }
        Ok(BasisIndex::Wedge(cols.iter().map(|&c| c as u16).collect()))
    }

    pub fn index_cmp(&self, other: &BasisIndex) -> Result<Ordering> {
        match (self, other) {
            (BasisIndex::Free(a), BasisIndex::Free(b)) => Ok(a.cmp(b)),
            (BasisIndex::Wedge(a), BasisIndex::Wedge(b)) if a.len() == b.len() => Ok(a.cmp(b)),
            _ => Err(Error::IncomparableIndex(format!("{self} vs {other}"))),
        }
    }
}

impl fmt::Display for BasisIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisIndex::Free(i) => write!(f, "e{i}"),
            BasisIndex::Wedge(cols) => {
                write!(f, "e(")?;
                for (k, c) in cols.iter().enumerate() {
                    if k > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// `x^a · e_index`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ModuleMonomial {
    pub mono: Monomial,
    pub index: BasisIndex,
}

impl ModuleMonomial {
    pub fn new(mono: Monomial, index: BasisIndex) -> Self {
        ModuleMonomial { mono, index }
    }

    pub fn degree(&self) -> u32 {
        self.mono.degree()
    }
}

impl fmt::Display for ModuleMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*{}", self.mono, self.index)
    }
}

/// Position-over-term: the larger position wins (for exterior indices the
/// lexicographically larger tuple), ties broken by grevlex.
pub fn pot_cmp(a: &ModuleMonomial, b: &ModuleMonomial) -> Result<Ordering> {
    match a.index.index_cmp(&b.index)? {
        Ordering::Equal => grevlex_cmp(&a.mono, &b.mono),
        o => Ok(o),
    }
}
