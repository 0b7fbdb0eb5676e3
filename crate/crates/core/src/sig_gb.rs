//! Matrix-F5 over the polynomial ring with an externally supplied set of
//! syzygy signatures, a criterion-free Lazard oracle and a Gröbner basis
//! checker.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use log::{debug, warn};

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::macaulay::{
    build_macaulay, pivot_columns, plain_rank, plain_rref, Columns, MacaulayMatrix, RowStats, Signature,
};
use crate::monomial::{enumerate_monomials, Monomial};
use crate::poly::Polynomial;

/// Leading monomials `tau * e_i` of known syzygies. A signature is a member
/// when some stored `tau'` at the same position divides it.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SyzygySignatureSet {
    by_gen: BTreeMap<usize, Vec<Monomial>>,
}

impl SyzygySignatureSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, gen: usize, tau: Monomial) {
        self.by_gen.entry(gen).or_default().push(tau);
    }

    pub fn contains(&self, sig: &Signature) -> bool {
        self.by_gen
            .get(&sig.gen)
            .is_some_and(|v| v.iter().any(|t| t.divides(&sig.tau)))
    }

    pub fn len(&self) -> usize {
        self.by_gen.values().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Stored elements whose monomial part has degree `delta`.
    pub fn count_at_degree(&self, delta: u32) -> usize {
        self.by_gen
            .values()
            .flatten()
            .filter(|t| t.degree() == delta)
            .count()
    }

    /// Signatures with a monomial part of degree `delta` that are members,
    /// i.e. the degree-`delta` part of the generated monomial submodule.
    pub fn layer_size(&self, nvars: usize, delta: u32) -> usize {
        let monos = enumerate_monomials(nvars, delta);
        self.by_gen
            .values()
            .map(|v| monos.iter().filter(|m| v.iter().any(|t| t.divides(m))).count())
            .sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = Signature> + '_ {
        self.by_gen
            .iter()
            .flat_map(|(&g, v)| v.iter().map(move |t| Signature::new(g, t.clone())))
    }

    /// Same elements with every position shifted by `offset`.
    pub fn shifted(&self, offset: usize) -> Self {
        SyzygySignatureSet {
            by_gen: self.by_gen.iter().map(|(&g, v)| (g + offset, v.clone())).collect(),
        }
    }
}

/// A Gröbner basis element found in one degree. It belongs to the basis of
/// `<f_1..f_i>` for `first <= i < until` (`until = None` meaning unbounded).
#[derive(Clone, Debug)]
pub struct BasisElement {
    pub sig: Option<Signature>,
    pub lm: Monomial,
    pub poly: Polynomial,
    pub first: usize,
    pub until: Option<usize>,
}

impl BasisElement {
    pub fn in_basis_of(&self, i: usize) -> bool {
        self.first <= i && self.until.is_none_or(|u| i < u)
    }
}

#[derive(Clone, Debug)]
pub struct GBResult {
    pub field: PrimeField,
    pub nvars: usize,
    pub num_gens: usize,
    pub degree_bound: u32,
    pub stats: Vec<RowStats>,
    pub zero_signatures: Vec<Signature>,
    pub skipped_signatures: Vec<Signature>,
    pub elements: Vec<BasisElement>,
    /// Reduced basis of the whole ideal, ordered by leading monomial.
    pub reduced: Vec<Polynomial>,
}

impl GBResult {
    fn empty(field: PrimeField, nvars: usize, num_gens: usize, degree_bound: u32) -> Self {
        GBResult {
            field,
            nvars,
            num_gens,
            degree_bound,
            stats: Vec::new(),
            zero_signatures: Vec::new(),
            skipped_signatures: Vec::new(),
            elements: Vec::new(),
            reduced: Vec::new(),
        }
    }

    /// Basis of `<f_1..f_i>` up to the degree bound.
    pub fn basis_of(&self, i: usize) -> Vec<&BasisElement> {
        self.elements.iter().filter(|e| e.in_basis_of(i)).collect()
    }

    pub fn leading_monomials_of(&self, i: usize) -> BTreeSet<Monomial> {
        self.basis_of(i).into_iter().map(|e| e.lm.clone()).collect()
    }

    pub fn leading_monomials(&self) -> BTreeSet<Monomial> {
        self.leading_monomials_of(self.num_gens)
    }

    pub fn total_rows_built(&self) -> usize {
        self.stats.iter().map(|s| s.rows_built).sum()
    }

    pub fn total_zero_reductions(&self) -> usize {
        self.stats.iter().map(|s| s.zero_reductions).sum()
    }

    pub fn total_rank(&self) -> usize {
        self.stats.iter().map(|s| s.rank).sum()
    }

    pub fn stats_at(&self, d: u32) -> Option<&RowStats> {
        self.stats.iter().find(|s| s.degree == d)
    }

    pub fn stats_csv(&self) -> String {
        let mut out = String::from("d,rows_built,rows_skipped,zero_reductions,rank\n");
        for s in &self.stats {
            out += &format!(
                "{},{},{},{},{}\n",
                s.degree, s.rows_built, s.rows_skipped, s.zero_reductions, s.rank
            );
        }
        out
    }
}

fn generator_data(gens: &[Polynomial]) -> Result<(PrimeField, usize, Vec<u32>)> {
    let first = gens.first().ok_or_else(|| Error::Shape("no generators".into()))?;
    let mut degs = Vec::with_capacity(gens.len());
    for g in gens {
        if g.nvars() != first.nvars() {
            return Err(Error::Dimension {
                expected: first.nvars(),
                found: g.nvars(),
            });
        }
        let d = g.homogeneous_degree()?.ok_or(Error::ZeroPolynomial)?;
        if d == 0 {
            return Err(Error::DegreeMismatch("constant generator".into()));
        }
        degs.push(d);
    }
    Ok((first.field(), first.nvars(), degs))
}

/// `(D, POT)`-Gröbner basis of `<gens>`. Candidate rows are skipped when
/// their signature is divisible by an element of `syz`, is caught by the F5
/// criterion, or is a multiple of a signature that reduced to zero.
///
/// Generators keep their input order as positions; degrees need not be
/// sorted.
pub fn sig_gb(gens: &[Polynomial], degree_bound: u32, syz: &SyzygySignatureSet) -> Result<GBResult> {
    let (field, n, degs) = generator_data(gens)?;
    let mut out = GBResult::empty(field, n, gens.len(), degree_bound);
    let dmin = *degs.iter().min().expect("nonempty");
    if degree_bound < dmin {
        warn!("degree bound {degree_bound} below every generator degree");
        return Ok(out);
    }
    // lead_pos[d]: pivot monomial -> position of its row
    let mut lead_pos: Vec<HashMap<Monomial, usize>> = vec![HashMap::new(); degree_bound as usize + 1];
    // built rows of the previous degree: (signature, reduced to zero)
    let mut prev: Vec<(Signature, bool)> = Vec::new();

    for d in dmin..=degree_bound {
        let mut candidates: Vec<Signature> = Vec::new();
        let mut skipped = 0usize;
        let is_crit = |sig: &Signature| {
            let f5 = sig.gen > 1
                && lead_pos[sig.tau.degree() as usize]
                    .get(&sig.tau)
                    .is_some_and(|&pos| pos < sig.gen);
            f5 || syz.contains(sig)
        };
        let mut push = |sig: Signature, crit: bool| {
            if crit {
                skipped += 1;
                out.skipped_signatures.push(sig);
            } else {
                candidates.push(sig);
            }
        };
        for (sig, zero) in &prev {
            let start = sig.tau.max_var().unwrap_or(0);
            for j in start..n {
                let child = Signature::new(sig.gen, sig.tau.mul_var(j));
                let crit = *zero || is_crit(&child);
                push(child, crit);
            }
        }
        for (i, &di) in degs.iter().enumerate() {
            if di == d {
                let sig = Signature::new(i + 1, Monomial::one(n));
                let crit = is_crit(&sig);
                push(sig, crit);
            }
        }

        let columns = Arc::new(Columns::new(n, d));
        let mut m = MacaulayMatrix::with_columns(gens, d, candidates, columns.clone(), field, degs.clone())?;
        m.echelonize_valid();

        let mut stats = RowStats {
            degree: d,
            rows_built: m.num_rows(),
            rows_skipped: skipped,
            ..Default::default()
        };
        let mut new_elems = Vec::new();
        for (k, row) in m.rows().iter().enumerate() {
            match row.data.lead() {
                None => {
                    stats.zero_reductions += 1;
                    out.zero_signatures.push(row.sig.clone());
                }
                Some(col) => {
                    stats.rank += 1;
                    let mu = columns.monomial(col).clone();
                    let until = (0..n)
                        .filter_map(|j| mu.div_var(j))
                        .filter_map(|q| lead_pos[d as usize - 1].get(&q).copied())
                        .min();
                    lead_pos[d as usize].insert(mu.clone(), row.sig.gen);
                    if until.is_none_or(|u| row.sig.gen < u) {
                        new_elems.push((k, mu, until));
                    }
                }
            }
        }
        let full: Vec<usize> = new_elems.iter().filter(|e| e.2.is_none()).map(|e| e.0).collect();
        out.reduced.extend(m.fully_reduced(&full));
        for (k, lm, until) in new_elems {
            let row = &m.rows()[k];
            out.elements.push(BasisElement {
                sig: Some(row.sig.clone()),
                lm,
                poly: m.row_polynomial(&row.data),
                first: row.sig.gen,
                until,
            });
        }
        debug!(
            "degree {d}: built {} skipped {} zero {} rank {}",
            stats.rows_built, stats.rows_skipped, stats.zero_reductions, stats.rank
        );
        out.stats.push(stats);
        prev = m.rows().iter().map(|r| (r.sig.clone(), r.data.is_zero())).collect();
    }
    out.reduced.sort_by(|a, b| a.leading_monomial().cmp(&b.leading_monomial()));
    Ok(out)
}

/// Full Macaulay matrices in every degree, eliminated without restriction.
pub fn lazard_gb(gens: &[Polynomial], degree_bound: u32) -> Result<GBResult> {
    let (field, n, degs) = generator_data(gens)?;
    let mut out = GBResult::empty(field, n, gens.len(), degree_bound);
    let dmin = *degs.iter().min().expect("nonempty");
    if degree_bound < dmin {
        warn!("degree bound {degree_bound} below every generator degree");
        return Ok(out);
    }
    let mut prev_lms: BTreeSet<Monomial> = BTreeSet::new();
    for d in dmin..=degree_bound {
        let m = build_macaulay(gens, d)?;
        let rref = plain_rref(m.dense_rows(), field);
        let mut lms = BTreeSet::new();
        for (row, col) in rref.iter().zip(pivot_columns(&rref)) {
            let mu = m.columns().monomial(col).clone();
            let minimal = (0..n).filter_map(|j| mu.div_var(j)).all(|q| !prev_lms.contains(&q));
            if minimal {
                let poly = Polynomial::from_terms(
                    field,
                    n,
                    row.iter()
                        .enumerate()
                        .filter(|(_, &x)| x != 0)
                        .map(|(c, &x)| (m.columns().monomial(c).clone(), x)),
                );
                out.reduced.push(poly.clone());
                out.elements.push(BasisElement {
                    sig: None,
                    lm: mu.clone(),
                    poly,
                    first: 1,
                    until: None,
                });
            }
            lms.insert(mu);
        }
        out.stats.push(RowStats {
            degree: d,
            rows_built: m.num_rows(),
            rows_skipped: 0,
            zero_reductions: m.num_rows() - rref.len(),
            rank: rref.len(),
        });
        prev_lms = lms;
    }
    out.reduced.sort_by(|a, b| a.leading_monomial().cmp(&b.leading_monomial()));
    Ok(out)
}

/// Whether `basis` is a Gröbner basis of `<gens>` up to degree `degree_bound`.
/// Returns `false` as well when some basis element is not in the ideal.
pub fn is_groebner_up_to(basis: &[Polynomial], gens: &[Polynomial], degree_bound: u32) -> Result<bool> {
    let (field, n, _) = generator_data(gens)?;
    let mut by_degree: BTreeMap<u32, Vec<&Polynomial>> = BTreeMap::new();
    for g in basis {
        if g.nvars() != n {
            return Err(Error::Dimension {
                expected: n,
                found: g.nvars(),
            });
        }
        if let Some(e) = g.homogeneous_degree()? {
            by_degree.entry(e).or_default().push(g);
        }
    }
    let lms: Vec<&Monomial> = basis.iter().filter_map(|g| g.leading_monomial()).collect();
    for d in 0..=degree_bound {
        let m = build_macaulay(gens, d)?;
        let rows = m.dense_rows();
        let rank = plain_rank(&rows, field);
        if let Some(gs) = by_degree.get(&d) {
            let mut extended = rows.clone();
            for g in gs {
                let mut v = vec![0; m.columns().len()];
                for (mono, c) in g.terms() {
                    v[m.columns().index_of(mono).expect("degree d")] = c;
                }
                extended.push(v);
            }
            if plain_rank(&extended, field) != rank {
                return Ok(false);
            }
        }
        let rref = plain_rref(rows, field);
        for col in pivot_columns(&rref) {
            let mu = m.columns().monomial(col);
            if !lms.iter().any(|l| l.divides(mu)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
