//! Minors, Jacobians, the Eagon-Northcott leading-term criterion and the two
//! drivers built on [`sig_gb`]: maximal minors of a matrix, and the
//! critical-point ideal `<F> + I_{p+1}(jac(g, F))`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use log::{info, warn};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::field::{Coeff, PrimeField};
use crate::macaulay::{pivot_columns, plain_rank, plain_rref, Columns, Signature};
use crate::matrix::PolyMatrix;
use crate::monomial::{enumerate_monomials, BasisIndex};
use crate::poly::{ModuleElement, Polynomial};
use crate::sig_gb::{sig_gb, GBResult, SyzygySignatureSet};

fn binom(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

/// All `r`-subsets of `1..=q` in ascending lexicographic order.
pub fn combinations(q: usize, r: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, q: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for c in start..=q {
            if q - c + 1 < r - cur.len() {
                break;
            }
            cur.push(c);
            rec(c + 1, q, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if r <= q {
        rec(1, q, r, &mut Vec::with_capacity(r), &mut out);
    }
    out
}

/// Column tuple of a minor together with its rank among all tuples of the
/// same length, in lexicographic order (0-based).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MinorIndex {
    pub cols: SmallVec<[u16; 4]>,
    pub ordinal: usize,
}

impl MinorIndex {
    /// `cols` are 1-based and strictly increasing, within `1..=q`.
    pub fn new(cols: &[usize], q: usize) -> Result<Self> {
        if cols.is_empty() || cols.windows(2).any(|w| w[0] >= w[1]) || cols[0] == 0 || *cols.last().unwrap() > q {
            return Err(Error::Shape(format!("bad column tuple {cols:?} for {q} columns")));
        }
        let r = cols.len();
        let mut ordinal = 0u64;
        let mut prev = 0;
        for (t, &c) in cols.iter().enumerate() {
            for v in prev + 1..c {
                ordinal += binom(q - v, r - t - 1);
            }
            prev = c;
        }
        Ok(MinorIndex {
            cols: cols.iter().map(|&c| c as u16).collect(),
            ordinal: ordinal as usize,
        })
    }

    pub fn cols(&self) -> Vec<usize> {
        self.cols.iter().map(|&c| c as usize).collect()
    }

    /// Generator position (1-based) of this minor in the canonical list.
    pub fn position(&self) -> usize {
        self.ordinal + 1
    }

    pub fn basis_index(&self) -> BasisIndex {
        BasisIndex::Wedge(self.cols.clone())
    }
}

/// `(p+1) × n` matrix of partial derivatives; row 1 is the gradient of `g`.
pub fn jacobian(g: &Polynomial, fs: &[Polynomial]) -> Result<PolyMatrix> {
    let d0 = g.homogeneous_degree()?.ok_or(Error::ZeroPolynomial)?;
    for f in fs {
        if f.nvars() != g.nvars() {
            return Err(Error::Dimension {
                expected: g.nvars(),
                found: f.nvars(),
            });
        }
        match f.homogeneous_degree()? {
            Some(d) if d == d0 => {}
            Some(d) => return Err(Error::DegreeMismatch(format!("f of degree {d}, g of degree {d0}"))),
            None => return Err(Error::ZeroPolynomial),
        }
    }
    if d0 == 1 {
        warn!("linear input: the Jacobian is constant");
    }
    let n = g.nvars();
    let mut entries = Vec::with_capacity((fs.len() + 1) * n);
    for row in std::iter::once(g).chain(fs) {
        for j in 0..n {
            entries.push(row.partial_derivative(j)?);
        }
    }
    PolyMatrix::new(fs.len() + 1, n, d0 - 1, entries)
}

fn det(a: &PolyMatrix, rows: &[usize], cols: &[usize]) -> Polynomial {
    if rows.len() == 1 {
        return a.get(rows[0], cols[0]).clone();
    }
    let mut out = Polynomial::zero(a.field(), a.nvars());
    for t in 0..cols.len() {
        let entry = a.get(rows[0], cols[t]);
        if entry.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().enumerate().filter(|&(k, _)| k != t).map(|(_, &c)| c).collect();
        let term = entry.mul(&det(a, &rows[1..], &rest));
        out = if t % 2 == 0 { out.add(&term) } else { out.sub(&term) };
    }
    out
}

/// Determinant of the submatrix on 1-based `rows` and `cols`.
pub fn minor(a: &PolyMatrix, rows: &[usize], cols: &[usize]) -> Polynomial {
    let r: Vec<usize> = rows.iter().map(|&i| i - 1).collect();
    let c: Vec<usize> = cols.iter().map(|&j| j - 1).collect();
    det(a, &r, &c)
}

/// All `r × r` minors. For `r = p` these are the maximal minors in lex
/// order of column tuples; for `r < p` column tuples are outer and row
/// tuples inner, both lexicographic.
pub fn minors(a: &PolyMatrix, r: usize) -> Result<Vec<Polynomial>> {
    let (p, q) = (a.rows(), a.cols());
    if r == 0 || r > p || r > q {
        return Err(Error::Shape(format!("no {r}x{r} minors in a {p}x{q} matrix")));
    }
    let row_sets = combinations(p, r);
    Ok(combinations(q, r)
        .iter()
        .flat_map(|cols| row_sets.iter().map(move |rows| minor(a, rows, cols)))
        .collect())
}

/// Boundary of `e_i ⊗ (e_{i1} ∧ … ∧ e_{i_{p+1}})`:
/// `Σ_t (−1)^{t−1} a_{i, i_t} · e_{cols \ i_t}`.
pub fn en_first_syzygy(a: &PolyMatrix, dup_row: usize, cols: &[usize]) -> Result<ModuleElement> {
    if dup_row == 0 || dup_row > a.rows() {
        return Err(Error::Shape(format!("row {dup_row} out of range")));
    }
    if cols.len() != a.rows() + 1 {
        return Err(Error::Shape(format!("need {} columns, got {}", a.rows() + 1, cols.len())));
    }
    MinorIndex::new(cols, a.cols())?;
    let mut out = ModuleElement::zero(a.field(), a.nvars());
    for t in 0..cols.len() {
        let rest: Vec<usize> = cols.iter().enumerate().filter(|&(k, _)| k != t).map(|(_, &c)| c).collect();
        let coeff = a.get(dup_row - 1, cols[t] - 1);
        let term = if t % 2 == 0 { coeff.clone() } else { coeff.neg() };
        out.add_component(BasisIndex::wedge(&rest)?, &term);
    }
    Ok(out)
}

/// Sends `e_T` to the maximal minor on columns `T`.
pub fn evaluate_wedge(elem: &ModuleElement, a: &PolyMatrix) -> Result<Polynomial> {
    let rows: Vec<usize> = (1..=a.rows()).collect();
    let mut out = Polynomial::zero(a.field(), a.nvars());
    for (idx, c) in elem.components() {
        match idx {
            BasisIndex::Wedge(cols) if cols.len() == a.rows() => {
                let cols: Vec<usize> = cols.iter().map(|&c| c as usize).collect();
                out = out.add(&c.mul(&minor(a, &rows, &cols)));
            }
            other => return Err(Error::IncomparableIndex(format!("{other} is not a maximal-minor index"))),
        }
    }
    Ok(out)
}

/// Leading terms `LM(g) e_T` of first syzygies of the maximal minors, with
/// `g` in a Gröbner basis of the ideal of the first `k` columns and
/// `min T = k+1`. Positions are minor positions (1-based lex ordinals).
/// Only monomials of degree at most `degree_bound - p*e` are produced.
pub fn en_leading_terms(a: &PolyMatrix, degree_bound: u32) -> Result<SyzygySignatureSet> {
    let (p, q, e) = (a.rows(), a.cols(), a.entry_degree());
    let mut h = SyzygySignatureSet::new();
    if q == p || degree_bound < (p as u32 + 1) * e {
        return Ok(h);
    }
    let bound = degree_bound - p as u32 * e;
    let entries = a.column_major_prefix(q - p);
    let gb = sig_gb(&entries, bound, &SyzygySignatureSet::new())?;
    for k in 1..=q - p {
        let lms = gb.leading_monomials_of(k * p);
        for rest in combinations(q - k - 1, p - 1) {
            let cols: Vec<usize> = std::iter::once(k + 1).chain(rest.iter().map(|&c| c + k + 1)).collect();
            let idx = MinorIndex::new(&cols, q)?;
            for lm in &lms {
                h.insert(idx.position(), lm.clone());
            }
        }
    }
    Ok(h)
}

/// Result of one determinantal run.
#[derive(Clone, Debug)]
pub struct DeterminantalRun {
    pub generators: Vec<Polynomial>,
    pub criterion: SyzygySignatureSet,
    pub gb: GBResult,
}

/// Gröbner basis of the maximal minors of `a` up to `degree_bound`, skipping
/// the Eagon-Northcott leading terms (or nothing, with `use_criterion` off).
pub fn max_minors_sig_gb(a: &PolyMatrix, degree_bound: u32, use_criterion: bool) -> Result<DeterminantalRun> {
    if a.rows() > a.cols() {
        return Err(Error::Shape(format!("{}x{} matrix has no maximal minors", a.rows(), a.cols())));
    }
    let generators = minors(a, a.rows())?;
    let criterion = if use_criterion {
        en_leading_terms(a, degree_bound)?
    } else {
        SyzygySignatureSet::new()
    };
    info!("{} minors, {} syzygy leading terms", generators.len(), criterion.len());
    let gb = sig_gb(&generators, degree_bound, &criterion)?;
    Ok(DeterminantalRun {
        generators,
        criterion,
        gb,
    })
}

/// Objective `g`, constraints `F` and their Jacobian.
#[derive(Clone, Debug)]
pub struct CritSystem {
    pub g: Polynomial,
    pub fs: Vec<Polynomial>,
    pub jac: PolyMatrix,
}

impl CritSystem {
    pub fn new(g: Polynomial, fs: Vec<Polynomial>) -> Result<Self> {
        if fs.is_empty() {
            return Err(Error::Shape("at least one constraint is required".into()));
        }
        if fs.len() + 1 > g.nvars() {
            return Err(Error::Shape(format!(
                "{} constraints need at least {} variables",
                fs.len(),
                fs.len() + 1
            )));
        }
        let jac = jacobian(&g, &fs)?;
        if jac.entry_degree() == 0 {
            return Err(Error::DegreeMismatch("linear input has a constant Jacobian".into()));
        }
        Ok(CritSystem { g, fs, jac })
    }

    pub fn p(&self) -> usize {
        self.fs.len()
    }

    pub fn d0(&self) -> u32 {
        self.jac.entry_degree() + 1
    }

    /// `F` followed by the maximal minors of the Jacobian.
    pub fn generators(&self) -> Result<Vec<Polynomial>> {
        let mut out = self.fs.clone();
        out.extend(minors(&self.jac, self.jac.rows())?);
        Ok(out)
    }
}

pub fn crit_gb(g: &Polynomial, fs: &[Polynomial], degree_bound: u32, use_criterion: bool) -> Result<DeterminantalRun> {
    let sys = CritSystem::new(g.clone(), fs.to_vec())?;
    let generators = sys.generators()?;
    let criterion = if use_criterion {
        en_leading_terms(&sys.jac, degree_bound)?.shifted(sys.p())
    } else {
        SyzygySignatureSet::new()
    };
    let gb = sig_gb(&generators, degree_bound, &criterion)?;
    Ok(DeterminantalRun {
        generators,
        criterion,
        gb,
    })
}

/// Rows of the degree-`delta` Macaulay matrix, zero generators allowed.
/// `degrees[i]` is the degree attributed to `gens[i]`.
fn dense_macaulay(
    gens: &[Polynomial],
    degrees: &[u32],
    delta: u32,
    field: PrimeField,
    nvars: usize,
) -> (Vec<Signature>, Vec<Vec<Coeff>>) {
    let cols = Columns::new(nvars, delta);
    let mut sigs = Vec::new();
    let mut rows = Vec::new();
    for (i, (g, &di)) in gens.iter().zip(degrees).enumerate() {
        if di > delta {
            continue;
        }
        for tau in enumerate_monomials(nvars, delta - di) {
            let mut v = vec![0; cols.len()];
            for (m, c) in g.terms() {
                v[cols.index_of(&m.mul(&tau)).expect("degree delta")] = c;
            }
            rows.push(v);
            sigs.push(Signature::new(i + 1, tau));
        }
    }
    let _ = field;
    (sigs, rows)
}

/// `{x : A x = 0}` for `A` given by rows of length `ncols`.
pub fn nullspace(rows: &[Vec<Coeff>], ncols: usize, field: PrimeField) -> Vec<Vec<Coeff>> {
    let rref = plain_rref(rows.to_vec(), field);
    let pivots = pivot_columns(&rref);
    let is_pivot: BTreeSet<usize> = pivots.iter().copied().collect();
    (0..ncols)
        .filter(|c| !is_pivot.contains(c))
        .map(|free| {
            let mut x = vec![0; ncols];
            x[free] = 1;
            for (r, &pc) in rref.iter().zip(&pivots) {
                x[pc] = field.neg(r[free]);
            }
            x
        })
        .collect()
}

fn transpose(rows: &[Vec<Coeff>], ncols: usize) -> Vec<Vec<Coeff>> {
    (0..ncols).map(|c| rows.iter().map(|r| r[c]).collect()).collect()
}

/// Left kernel of the degree-`delta` Macaulay matrix of `gens`, i.e. the
/// syzygies of that degree, as coefficient vectors over the row signatures.
pub fn syzygy_space(gens: &[Polynomial], delta: u32) -> Result<(Vec<Signature>, Vec<Vec<Coeff>>)> {
    let first = gens.first().ok_or_else(|| Error::Shape("no generators".into()))?;
    let (field, n) = (first.field(), first.nvars());
    let degrees = gens
        .iter()
        .map(|g| g.homogeneous_degree()?.ok_or(Error::ZeroPolynomial))
        .collect::<Result<Vec<u32>>>()?;
    let (sigs, rows) = dense_macaulay(gens, &degrees, delta, field, n);
    let ncols = rows.first().map_or(0, Vec::len);
    let kernel = nullspace(&transpose(&rows, ncols), sigs.len(), field);
    Ok((sigs, kernel))
}

/// Leading signatures (position over term) of all syzygies of degree
/// `delta`, by brute-force kernel computation.
pub fn syzygy_leading_signatures(gens: &[Polynomial], delta: u32) -> Result<BTreeSet<Signature>> {
    let field = gens.first().ok_or_else(|| Error::Shape("no generators".into()))?.field();
    let (sigs, kernel) = syzygy_space(gens, delta)?;
    let mut order: Vec<usize> = (0..sigs.len()).collect();
    order.sort_by(|&a, &b| sigs[b].cmp(&sigs[a]));
    let permuted: Vec<Vec<Coeff>> = kernel.iter().map(|v| order.iter().map(|&k| v[k]).collect()).collect();
    let rref = plain_rref(permuted, field);
    Ok(pivot_columns(&rref).into_iter().map(|c| sigs[order[c]].clone()).collect())
}

/// Elements of `h` (over positions of `gens`) of total degree at most
/// `degree_bound` that are not leading terms of any syzygy.
pub fn unsound_criterion_terms(
    gens: &[Polynomial],
    h: &SyzygySignatureSet,
    degree_bound: u32,
) -> Result<Vec<Signature>> {
    let degrees = gens
        .iter()
        .map(|g| g.homogeneous_degree()?.ok_or(Error::ZeroPolynomial))
        .collect::<Result<Vec<u32>>>()?;
    let mut by_degree: BTreeMap<u32, Vec<Signature>> = BTreeMap::new();
    for sig in h.iter() {
        let di = *degrees
            .get(sig.gen.wrapping_sub(1))
            .ok_or_else(|| Error::Shape(format!("{sig} names a missing generator")))?;
        let delta = sig.tau.degree() + di;
        if delta <= degree_bound {
            by_degree.entry(delta).or_default().push(sig);
        }
    }
    let mut bad = Vec::new();
    for (delta, sigs) in by_degree {
        let lead = syzygy_leading_signatures(gens, delta)?;
        bad.extend(sigs.into_iter().filter(|s| !lead.contains(s)));
    }
    Ok(bad)
}

/// Syzygy dimensions of `F ∪ minors` in one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeSyzygies {
    pub degree: u32,
    pub total: usize,
    pub from_f: usize,
    pub from_minors: usize,
    /// Dimension of the span of `Syz(F)`, `Syz(minors)` and the Koszul pairs
    /// `m e_f − f e_m` in this degree.
    pub expected: usize,
}

impl DegreeSyzygies {
    pub fn naive_sum(&self) -> usize {
        self.from_f + self.from_minors
    }

    pub fn consistent(&self) -> bool {
        self.total == self.expected
    }
}

#[derive(Clone, Debug)]
pub struct DirectSumReport {
    pub degrees: Vec<DegreeSyzygies>,
    pub zero_minors: usize,
}

impl DirectSumReport {
    pub fn consistent(&self) -> bool {
        self.degrees.iter().all(DegreeSyzygies::consistent)
    }
}

/// Checks, degree by degree up to `degree_bound`, that every syzygy of
/// `F ∪ minors(jac)` comes from syzygies of `F`, of the minors, or from the
/// Koszul pairs between the two blocks.
pub fn syzygy_direct_sum_check(g: &Polynomial, fs: &[Polynomial], degree_bound: u32) -> Result<DirectSumReport> {
    if fs.is_empty() {
        return Err(Error::Shape("at least one constraint is required".into()));
    }
    let jac = jacobian(g, fs)?;
    if jac.rows() > jac.cols() {
        return Err(Error::Shape("more constraints than variables allow".into()));
    }
    let (field, n, p) = (g.field(), g.nvars(), fs.len());
    let d0 = jac.entry_degree() + 1;
    let dm = (p as u32 + 1) * jac.entry_degree();
    let ms = minors(&jac, p + 1)?;
    let zero_minors = ms.iter().filter(|m| m.is_zero()).count();
    let mut gens = fs.to_vec();
    gens.extend(ms.iter().cloned());
    let degrees: Vec<u32> = std::iter::repeat_n(d0, p).chain(std::iter::repeat_n(dm, ms.len())).collect();

    let mut out = Vec::new();
    for delta in d0.min(dm)..=degree_bound {
        let (sigs, rows) = dense_macaulay(&gens, &degrees, delta, field, n);
        if sigs.is_empty() {
            continue;
        }
        let index: HashMap<&Signature, usize> = sigs.iter().enumerate().map(|(k, s)| (s, k)).collect();
        let ncols = rows[0].len();
        let total = sigs.len() - plain_rank(&rows, field);

        let block = |range: std::ops::Range<usize>| -> Vec<Vec<Coeff>> {
            let idx: Vec<usize> = (0..sigs.len()).filter(|&k| range.contains(&(sigs[k].gen - 1))).collect();
            if idx.is_empty() {
                return Vec::new();
            }
            let sub: Vec<Vec<Coeff>> = idx.iter().map(|&k| rows[k].clone()).collect();
            nullspace(&transpose(&sub, ncols), idx.len(), field)
                .into_iter()
                .map(|v| {
                    let mut full = vec![0; sigs.len()];
                    for (x, &k) in v.iter().zip(&idx) {
                        full[k] = *x;
                    }
                    full
                })
                .collect()
        };
        let syz_f = block(0..p);
        let syz_m = block(p..gens.len());
        let (from_f, from_minors) = (syz_f.len(), syz_m.len());

        let mut span = syz_f;
        span.extend(syz_m);
        if delta >= d0 + dm {
            for (i, f) in fs.iter().enumerate() {
                for (j, m) in ms.iter().enumerate() {
                    for tau in enumerate_monomials(n, delta - d0 - dm) {
                        let mut v = vec![0; sigs.len()];
                        for (t, c) in m.terms() {
                            v[index[&Signature::new(i + 1, t.mul(&tau))]] = c;
                        }
                        for (t, c) in f.terms() {
                            let k = index[&Signature::new(p + j + 1, t.mul(&tau))];
                            v[k] = field.sub(v[k], c);
                        }
                        span.push(v);
                    }
                }
            }
        }
        let expected = plain_rank(&span, field);
        out.push(DegreeSyzygies {
            degree: delta,
            total,
            from_f,
            from_minors,
            expected,
        });
    }
    Ok(DirectSumReport {
        degrees: out,
        zero_minors,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{parse_polynomial, random_crit_system, random_matrix, InstanceSpec};
    use crate::monomial::Monomial;
    use crate::sig_gb::lazard_gb;

    fn field() -> PrimeField {
        PrimeField::default()
    }

    fn poly(n: usize, s: &str) -> Polynomial {
        parse_polynomial(field(), n, s).unwrap()
    }

    #[test]
    fn lex_ordinals() {
        let all = combinations(5, 3);
        assert_eq!(all.len(), 10);
        for (k, c) in all.iter().enumerate() {
            assert_eq!(MinorIndex::new(c, 5).unwrap().ordinal, k);
        }
        assert!(MinorIndex::new(&[2, 2], 3).is_err());
        assert!(MinorIndex::new(&[1, 4], 3).is_err());
    }

    #[test]
    fn jacobian_examples() {
        let j = jacobian(&poly(2, "x1^2"), &[poly(2, "x2^2")]).unwrap();
        assert_eq!(j.get(0, 0), &poly(2, "2*x1"));
        assert!(j.get(0, 1).is_zero());
        assert!(j.get(1, 0).is_zero());
        assert_eq!(j.get(1, 1), &poly(2, "2*x2"));

        let j = jacobian(&poly(2, "x1*x2"), &[poly(2, "x1^2")]).unwrap();
        assert_eq!(j.get(0, 0), &poly(2, "x2"));
        assert_eq!(j.get(0, 1), &poly(2, "x1"));
        assert_eq!(j.get(1, 0), &poly(2, "2*x1"));

        assert!(jacobian(&poly(2, "x1^2"), &[poly(2, "x2")]).is_err());

        let (g, fs) = random_crit_system(&InstanceSpec::new(3, 1, 0, 3, 2)).unwrap();
        let j = jacobian(&g, &fs).unwrap();
        assert_eq!(j.entry_degree(), 2);
        assert!(j.entries().iter().all(|e| e.homogeneous_degree().unwrap() == Some(2)));
    }

    #[test]
    fn minor_lists() {
        let a = random_matrix(&InstanceSpec::new(3, 2, 4, 1, 3)).unwrap();
        let ms = minors(&a, 2).unwrap();
        assert_eq!(ms.len(), 6);
        let expect = a.get(0, 2).mul(a.get(1, 3)).sub(&a.get(0, 3).mul(a.get(1, 2)));
        assert_eq!(ms[5], expect);
        assert_eq!(minors(&a, 1).unwrap().len(), 8);
        assert!(minors(&a, 3).is_err());

        let row = random_matrix(&InstanceSpec::new(3, 1, 3, 2, 3)).unwrap();
        assert_eq!(minors(&row, 1).unwrap(), row.entries().to_vec());

        let sq = random_matrix(&InstanceSpec::new(3, 2, 2, 2, 3)).unwrap();
        let ms = minors(&sq, 2).unwrap();
        assert_eq!(ms.len(), 1);
        assert_eq!(ms[0].homogeneous_degree().unwrap(), Some(4));
    }

    #[test]
    fn first_syzygy_shape_and_vanishing() {
        let a = random_matrix(&InstanceSpec::new(3, 2, 4, 1, 8)).unwrap();
        let s = en_first_syzygy(&a, 1, &[2, 3, 4]).unwrap();
        let w = |c: &[usize]| BasisIndex::wedge(c).unwrap();
        assert_eq!(s.component(&w(&[3, 4])), Some(a.get(0, 1)));
        assert_eq!(s.component(&w(&[2, 4])), Some(&a.get(0, 2).neg()));
        assert_eq!(s.component(&w(&[2, 3])), Some(a.get(0, 3)));
        assert!(evaluate_wedge(&s, &a).unwrap().is_zero());

        let b = random_matrix(&InstanceSpec::new(3, 2, 3, 1, 5)).unwrap();
        for i in 1..=2 {
            let s = en_first_syzygy(&b, i, &[1, 2, 3]).unwrap();
            assert!(evaluate_wedge(&s, &b).unwrap().is_zero());
        }
        assert!(en_first_syzygy(&b, 3, &[1, 2, 3]).is_err());
        assert!(en_first_syzygy(&b, 1, &[1, 2]).is_err());
    }

    #[test]
    fn koszul_row_vector() {
        let a = PolyMatrix::new(1, 2, 1, vec![poly(2, "x1"), poly(2, "x2")]).unwrap();
        let s = en_first_syzygy(&a, 1, &[1, 2]).unwrap();
        assert_eq!(s.component(&BasisIndex::wedge(&[2]).unwrap()), Some(&poly(2, "x1")));
        assert_eq!(s.component(&BasisIndex::wedge(&[1]).unwrap()), Some(&poly(2, "-x2")));

        let h = en_leading_terms(&a, 2).unwrap();
        assert_eq!(h.iter().collect::<Vec<_>>(), vec![Signature::new(2, Monomial::var(2, 0))]);

        let run = max_minors_sig_gb(&a, 3, true).unwrap();
        assert_eq!(run.gb.reduced, vec![poly(2, "x2"), poly(2, "x1")]);
        assert_eq!(run.gb.total_zero_reductions(), 0);
    }

    #[test]
    fn square_matrix_has_no_criterion() {
        let a = random_matrix(&InstanceSpec::new(3, 2, 2, 1, 1)).unwrap();
        assert!(en_leading_terms(&a, 6).unwrap().is_empty());
    }

    #[test]
    fn criterion_terms_are_syzygy_leads() {
        let a = random_matrix(&InstanceSpec::new(3, 2, 4, 1, 21)).unwrap();
        let h = en_leading_terms(&a, 4).unwrap();
        let ms = minors(&a, 2).unwrap();
        assert!(unsound_criterion_terms(&ms, &h, 4).unwrap().is_empty());
        // layer sizes: J_1 = two linear forms, J_2 = all of degree 1
        assert_eq!(h.layer_size(3, 1), 2 * 2 + 3);
        assert_eq!(h.layer_size(3, 2), 5 * 2 + 6);
    }

    #[test]
    fn minors_oracle() {
        let a = random_matrix(&InstanceSpec::new(3, 2, 3, 1, 4)).unwrap();
        let run = max_minors_sig_gb(&a, 4, true).unwrap();
        let lz = lazard_gb(&run.generators, 4).unwrap();
        assert_eq!(run.gb.leading_monomials(), lz.leading_monomials());
        assert_eq!(run.gb.reduced, lz.reduced);
    }

    #[test]
    fn crit_toy() {
        let run = crit_gb(&poly(2, "x1^2"), &[poly(2, "x2^2")], 6, true).unwrap();
        assert_eq!(run.generators[1], poly(2, "4*x1*x2"));
        let lms: Vec<String> = run.gb.leading_monomials().iter().map(|m| m.to_string()).collect();
        assert_eq!(lms, vec!["x2^2", "x1*x2"]);
        assert!(crit_gb(&poly(2, "x1"), &[poly(2, "x2")], 4, true).is_err());
        assert!(crit_gb(&poly(2, "x1^2"), &[poly(2, "x2^2"), poly(2, "x1*x2")], 4, true).is_err());
    }

    #[test]
    fn crit_oracle_and_monotone() {
        let (g, fs) = random_crit_system(&InstanceSpec::new(3, 1, 0, 2, 6)).unwrap();
        let with = crit_gb(&g, &fs, 9, true).unwrap();
        let without = crit_gb(&g, &fs, 9, false).unwrap();
        let lz = lazard_gb(&with.generators, 9).unwrap();
        assert_eq!(with.gb.reduced, lz.reduced);
        assert_eq!(without.gb.reduced, lz.reduced);
        assert!(with.gb.total_zero_reductions() <= without.gb.total_zero_reductions());
    }

    #[test]
    fn direct_sum_generic_and_degenerate() {
        let (g, fs) = random_crit_system(&InstanceSpec::new(3, 1, 0, 2, 12)).unwrap();
        let rep = syzygy_direct_sum_check(&g, &fs, 6).unwrap();
        assert!(rep.consistent(), "{rep:?}");

        let rep = syzygy_direct_sum_check(&poly(3, "x1^2"), &[poly(3, "x1*x2")], 5).unwrap();
        assert!(!rep.consistent(), "{rep:?}");

        let f = poly(3, "x1^2 + x2*x3");
        let rep = syzygy_direct_sum_check(&f, std::slice::from_ref(&f), 5).unwrap();
        assert_eq!(rep.zero_minors, 3);

        assert!(syzygy_direct_sum_check(&g, &[], 5).is_err());
    }
}
