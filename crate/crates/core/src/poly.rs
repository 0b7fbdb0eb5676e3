//! Sparse polynomials over GF(p) and elements of free / exterior modules.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Coeff, PrimeField};
use crate::monomial::{BasisIndex, ModuleMonomial, Monomial};

/// Sparse polynomial in `nvars` variables. Terms are kept in a map ordered by
/// grevlex, so the leading term is the last entry. Zero coefficients are never
/// stored.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    field: PrimeField,
    nvars: usize,
    terms: BTreeMap<Monomial, Coeff>,
}

impl Polynomial {
    pub fn zero(field: PrimeField, nvars: usize) -> Self {
        Polynomial {
            field,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: PrimeField, nvars: usize, c: Coeff) -> Self {
        Self::term(field, Monomial::one(nvars), c)
    }

    pub fn term(field: PrimeField, mono: Monomial, c: Coeff) -> Self {
        let nvars = mono.nvars();
        let mut p = Self::zero(field, nvars);
        p.add_term(mono, c);
        p
    }

    /// `x_{var+1}`.
    pub fn var(field: PrimeField, nvars: usize, var: usize) -> Self {
        Self::term(field, Monomial::var(nvars, var), 1)
    }

    pub fn from_terms(
        field: PrimeField,
        nvars: usize,
        terms: impl IntoIterator<Item = (Monomial, Coeff)>,
    ) -> Self {
        let mut p = Self::zero(field, nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in decreasing grevlex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, Coeff)> + '_ {
        self.terms.iter().rev().map(|(m, &c)| (m, c))
    }

    pub fn coeff(&self, m: &Monomial) -> Coeff {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub fn add_term(&mut self, mono: Monomial, c: Coeff) {
        debug_assert_eq!(mono.nvars(), self.nvars);
        let c = c % self.field.modulus();
        if c == 0 {
            return;
        }
        let f = self.field;
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = f.add(*o.get(), c);
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.keys().next_back()
    }

    pub fn leading_coeff(&self) -> Coeff {
        self.terms.values().next_back().copied().unwrap_or(0)
    }

    /// Largest total degree of a term; `None` for zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(Monomial::degree);
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    /// Degree of a homogeneous polynomial. Errors on inhomogeneous input;
    /// zero is reported as `None`.
    pub fn homogeneous_degree(&self) -> Result<Option<u32>> {
        if !self.is_homogeneous() {
            return Err(Error::NotHomogeneous);
        }
        Ok(self.total_degree())
    }

    pub fn scale(&self, c: Coeff) -> Polynomial {
        let f = self.field;
        let c = c % f.modulus();
        if c == 0 {
            return Self::zero(f, self.nvars);
        }
        Polynomial {
            field: f,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, &a)| (m.clone(), f.mul(a, c))).collect(),
        }
    }

    pub fn neg(&self) -> Polynomial {
        self.scale(self.field.modulus() - 1)
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        let f = self.field;
        for (m, &c) in &other.terms {
            out.add_term(m.clone(), f.neg(c));
        }
        out
    }

    pub fn mul_monomial(&self, mono: &Monomial, c: Coeff) -> Polynomial {
        let f = self.field;
        let c = c % f.modulus();
        if c == 0 {
            return Self::zero(f, self.nvars);
        }
        // multiplication by a monomial preserves the order, so no merging
        Polynomial {
            field: f,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, &a)| (m.mul(mono), f.mul(a, c))).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = Self::zero(self.field, self.nvars);
        for (m, &c) in &other.terms {
            for (n, &a) in &self.terms {
                out.add_term(n.mul(m), self.field.mul(a, c));
            }
        }
        out
    }

    /// `∂f/∂x_{var+1}` with coefficients reduced mod p.
    pub fn partial_derivative(&self, var: usize) -> Result<Polynomial> {
        if var >= self.nvars {
            return Err(Error::VariableOutOfRange {
                index: var,
                nvars: self.nvars,
            });
        }
        let f = self.field;
        let mut out = Self::zero(f, self.nvars);
        for (m, &c) in &self.terms {
            let e = m.exponent(var);
            if e == 0 {
                continue;
            }
            let dm = m.div_var(var).expect("exponent checked");
            out.add_term(dm, f.mul(c, f.reduce(e as u64)));
        }
        Ok(out)
    }

    /// Homogenizes with a new last variable `h`, which is the smallest one
    /// under grevlex.
    pub fn homogenize(&self) -> Result<Polynomial> {
        let d = self.total_degree().ok_or(Error::ZeroPolynomial)?;
        let mut out = Self::zero(self.field, self.nvars + 1);
        for (m, &c) in &self.terms {
            out.add_term(m.push_var((d - m.degree()) as u16), c);
        }
        Ok(out)
    }

    /// Sets the last variable to 1 and drops it.
    pub fn dehomogenize(&self) -> Polynomial {
        let mut out = Self::zero(self.field, self.nvars.saturating_sub(1));
        for (m, &c) in &self.terms {
            out.add_term(m.truncate_last(), c);
        }
        out
    }

    /// Monic version; zero stays zero.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coeff() {
            0 => self.clone(),
            c => self.scale(self.field.inv(c)),
        }
    }

    /// Full normal form with respect to `basis` (multivariate division,
    /// reducing every term, not only the leading one).
    pub fn normal_form(&self, basis: &[Polynomial]) -> Polynomial {
        let f = self.field;
        let mut rest = self.clone();
        let mut out = Self::zero(f, self.nvars);
        while let Some((lm, lc)) = rest.terms.iter().next_back().map(|(m, &c)| (m.clone(), c)) {
            let divisor = basis.iter().find(|g| {
                g.leading_monomial()
                    .map(|glm| glm.divides(&lm))
                    .unwrap_or(false)
            });
            match divisor {
                Some(g) => {
                    let glm = g.leading_monomial().expect("nonzero");
                    let q = glm.div(&lm).expect("divides");
                    let c = f.mul(lc, f.inv(g.leading_coeff()));
                    rest = rest.sub(&g.mul_monomial(&q, c));
                }
                None => {
                    rest.terms.remove(&lm);
                    out.add_term(lm, lc);
                }
            }
        }
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            match (m.degree(), c) {
                (0, _) => write!(f, "{c}")?,
                (_, 1) => write!(f, "{m}")?,
                _ => write!(f, "{c}*{m}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Element of a free module `R^s` or of an exterior power `⋀^r R^q`, stored as
/// one polynomial per basis position.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ModuleElement {
    field: PrimeField,
    nvars: usize,
    components: BTreeMap<BasisIndex, Polynomial>,
}

impl ModuleElement {
    pub fn zero(field: PrimeField, nvars: usize) -> Self {
        ModuleElement {
            field,
            nvars,
            components: BTreeMap::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn components(&self) -> impl Iterator<Item = (&BasisIndex, &Polynomial)> {
        self.components.iter()
    }

    pub fn component(&self, idx: &BasisIndex) -> Option<&Polynomial> {
        self.components.get(idx)
    }

    /// Adds `poly · e_idx`.
    pub fn add_component(&mut self, idx: BasisIndex, poly: &Polynomial) {
        let sum = match self.components.remove(&idx) {
            Some(old) => old.add(poly),
            None => poly.clone(),
        };
        if !sum.is_zero() {
            self.components.insert(idx, sum);
        }
    }

    pub fn add_term(&mut self, mm: &ModuleMonomial, c: Coeff) {
        self.add_component(
            mm.index.clone(),
            &Polynomial::term(self.field, mm.mono.clone(), c),
        );
    }

    /// Common degree of all terms, if homogeneous and nonzero.
    pub fn degree(&self) -> Result<Option<u32>> {
        let mut deg = None;
        for p in self.components.values() {
            let d = p.homogeneous_degree()?;
            match (deg, d) {
                (Some(a), Some(b)) if a != b => return Err(Error::NotHomogeneous),
                (None, d) => deg = d,
                _ => {}
            }
        }
        Ok(deg)
    }

    /// Largest module monomial under the position-over-term order.
    pub fn leading_module_monomial(&self) -> Result<Option<ModuleMonomial>> {
        let mut best: Option<&BasisIndex> = None;
        for idx in self.components.keys() {
            best = match best {
                None => Some(idx),
                Some(b) => {
                    if idx.index_cmp(b)? == std::cmp::Ordering::Greater {
                        Some(idx)
                    } else {
                        Some(b)
                    }
                }
            };
        }
        Ok(best.map(|idx| {
            let lm = self.components[idx].leading_monomial().expect("nonzero").clone();
            ModuleMonomial::new(lm, idx.clone())
        }))
    }

    pub fn mul_poly(&self, p: &Polynomial) -> ModuleElement {
        let mut out = Self::zero(self.field, self.nvars);
        for (idx, c) in &self.components {
            out.add_component(idx.clone(), &c.mul(p));
        }
        out
    }

    pub fn add(&self, other: &ModuleElement) -> ModuleElement {
        let mut out = self.clone();
        for (idx, c) in &other.components {
            out.add_component(idx.clone(), c);
        }
        out
    }
}

impl fmt::Display for ModuleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (idx, p)) in self.components.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({p})*{idx}")?;
        }
        Ok(())
    }
}
