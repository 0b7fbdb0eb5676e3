use std::fmt::Write as _;
use std::path::Path;

use critgb_core::determinantal::{crit_gb, max_minors_sig_gb, minors, syzygy_direct_sum_check, DeterminantalRun};
use critgb_core::hilbert::{self, EstimatorParams, Mode};
use critgb_core::instance::{format_instance, parse_instance, random_crit_system, random_matrix, Instance};
use critgb_core::{lazard_gb, InstanceSpec, PolyMatrix, Polynomial, RowStats};
use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] critgb_core::Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{0}")]
    Usage(String),
    #[error("oracle disagrees: {0}")]
    Oracle(String),
    #[error("verification failed: {0}")]
    Mismatch(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(critgb_core::Error::Invariant(_)) | CliError::Oracle(_) => 3,
            CliError::Mismatch(_) => 4,
            _ => 2,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Minors,
    Crit,
}

pub fn read_instance(path: &Path) -> CliResult<Instance> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    Ok(parse_instance(&text)?)
}

pub fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    std::fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Instance text for a seeded random matrix or critical-point system.
pub fn cmd_gen(spec: &InstanceSpec, kind: Kind) -> CliResult<String> {
    let inst = generate(spec, kind)?;
    Ok(format_instance(&inst))
}

pub fn generate(spec: &InstanceSpec, kind: Kind) -> CliResult<Instance> {
    Ok(match kind {
        Kind::Minors => Instance::Matrix(random_matrix(spec)?),
        Kind::Crit => {
            let (g, fs) = random_crit_system(spec)?;
            Instance::System {
                g,
                fs,
                degree: spec.d0,
            }
        }
    })
}

pub fn default_degree_bound(inst: &Instance) -> u32 {
    match inst {
        Instance::Matrix(a) => hilbert::degree_bound_minors(a.nvars(), a.rows(), a.entry_degree().max(1)),
        Instance::System { fs, degree, g } => hilbert::degree_bound_crit(g.nvars(), fs.len(), *degree),
    }
}

fn run(inst: &Instance, kind: Kind, bound: u32, criterion: bool) -> CliResult<DeterminantalRun> {
    match (inst, kind) {
        (Instance::Matrix(a), Kind::Minors) => Ok(max_minors_sig_gb(a, bound, criterion)?),
        (Instance::System { g, fs, .. }, Kind::Crit) => Ok(crit_gb(g, fs, bound, criterion)?),
        (Instance::Matrix(_), Kind::Crit) => Err(CliError::Usage("crit needs a 'system' instance".into())),
        (Instance::System { .. }, Kind::Minors) => Err(CliError::Usage("minors needs a 'matrix' instance".into())),
    }
}

#[derive(Debug)]
pub struct GbOutput {
    pub degree_bound: u32,
    pub basis: Vec<Polynomial>,
    pub stats: Vec<RowStats>,
    pub criterion_size: usize,
    /// Leading monomials present in only one of the two computations.
    pub oracle_diff: Option<Vec<String>>,
}

impl GbOutput {
    pub fn basis_text(&self) -> String {
        self.basis.iter().map(|p| format!("{p}\n")).collect()
    }

    pub fn stats_jsonl(&self) -> String {
        self.stats
            .iter()
            .map(|s| serde_json::to_string(s).expect("plain struct") + "\n")
            .collect()
    }

    pub fn stats_csv(&self) -> String {
        let mut out = String::from("d,rows_built,rows_skipped,zero_reductions,rank\n");
        for s in &self.stats {
            let _ = writeln!(
                out,
                "{},{},{},{},{}",
                s.degree, s.rows_built, s.rows_skipped, s.zero_reductions, s.rank
            );
        }
        out
    }
}

pub fn cmd_gb(inst: &Instance, kind: Kind, bound: Option<u32>, oracle: bool, criterion: bool) -> CliResult<GbOutput> {
    let degree_bound = bound.unwrap_or_else(|| default_degree_bound(inst));
    let r = run(inst, kind, degree_bound, criterion)?;
    let oracle_diff = if oracle {
        let lz = lazard_gb(&r.generators, degree_bound)?;
        let ours = r.gb.leading_monomials();
        let theirs = lz.leading_monomials();
        let diff: Vec<String> = ours
            .symmetric_difference(&theirs)
            .map(|m| {
                let side = if ours.contains(m) { "only signature run" } else { "only oracle" };
                format!("{m} ({side})")
            })
            .collect();
        Some(diff)
    } else {
        None
    };
    Ok(GbOutput {
        degree_bound,
        basis: r.gb.reduced.clone(),
        stats: r.gb.stats.clone(),
        criterion_size: r.criterion.len(),
        oracle_diff,
    })
}

/// A `p,q,n,d0` shape.
pub type Shape = (usize, usize, usize, u32);

pub fn parse_shape(s: &str) -> CliResult<Shape> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let bad = || CliError::Usage(format!("shape '{s}' is not p,q,n,d0"));
    if parts.len() != 4 {
        return Err(bad());
    }
    Ok((
        parts[0].parse().map_err(|_| bad())?,
        parts[1].parse().map_err(|_| bad())?,
        parts[2].parse().map_err(|_| bad())?,
        parts[3].parse().map_err(|_| bad())?,
    ))
}

/// `a` or `a:b` (inclusive).
pub fn parse_range(s: &str) -> CliResult<(u32, u32)> {
    let bad = || CliError::Usage(format!("range '{s}' is not N or A:B"));
    match s.split_once(':') {
        Some((a, b)) => {
            let (a, b) = (a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?);
            if a > b {
                return Err(bad());
            }
            Ok((a, b))
        }
        None => {
            let a = s.parse().map_err(|_| bad())?;
            Ok((a, a))
        }
    }
}

pub const DEFAULT_SHAPES: [Shape; 2] = [(3, 6, 4, 3), (3, 7, 5, 3)];

/// Row-count comparison CSV, one line per shape.
pub fn cmd_compare(shapes: &[Shape], with_speedup: bool) -> CliResult<String> {
    let mut out = String::from(hilbert::SPEEDUP_HEADER);
    if with_speedup {
        out.push(',');
        out += hilbert::SPEEDUP_EXTRA_HEADER;
    }
    out.push('\n');
    for &(p, q, n, d0) in shapes {
        out += &hilbert::speedup_row(n, p, q, d0)?.csv(with_speedup);
        out.push('\n');
    }
    Ok(out)
}

/// Shapes `(p, n+p-1, n, d0)` over the given ranges.
pub fn sweep_shapes(ps: (u32, u32), ns: (u32, u32), d0s: (u32, u32)) -> Vec<Shape> {
    let mut out = Vec::new();
    for p in ps.0..=ps.1 {
        for n in ns.0..=ns.1 {
            for d0 in d0s.0..=d0s.1 {
                out.push((p as usize, (n + p - 1) as usize, n as usize, d0));
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyLine {
    pub degree: u32,
    pub rank: usize,
    /// Predicted rank per mode (one entry for matrices).
    pub predicted_rank: Vec<BigInt>,
    pub criterion: usize,
    pub predicted_criterion: Vec<BigInt>,
}

impl VerifyLine {
    /// Rank and criterion size both as predicted by mode number `k`.
    pub fn matches(&self, k: usize) -> bool {
        BigInt::from(self.rank) == self.predicted_rank[k] && BigInt::from(self.criterion) == self.predicted_criterion[k]
    }
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub kind: Kind,
    pub degree_bound: u32,
    pub modes: Vec<Mode>,
    pub lines: Vec<VerifyLine>,
    /// Modes whose rank predictions match every degree.
    pub consistent: Vec<Mode>,
    pub direct_sum: Option<bool>,
    pub text: String,
}

impl VerifyReport {
    /// The single consistent mode, if exactly one is.
    pub fn verdict(&self) -> Option<Mode> {
        match self.consistent.as_slice() {
            [m] => Some(*m),
            _ => None,
        }
    }

    pub fn all_match(&self) -> bool {
        !self.consistent.is_empty() && self.direct_sum != Some(false)
    }
}

fn layer(run: &DeterminantalRun, n: usize, d: u32, shift: u32) -> usize {
    if d < shift {
        0
    } else {
        run.criterion.layer_size(n, d - shift)
    }
}

/// Per-degree predicted versus computed rank and criterion size.
pub fn cmd_verify(inst: &Instance, bound: Option<u32>, direct_sum: bool) -> CliResult<VerifyReport> {
    let degree_bound = bound.unwrap_or_else(|| default_degree_bound(inst));
    let n = inst.nvars();
    let mut text = String::new();
    let (kind, modes, lines, direct) = match inst {
        Instance::Matrix(a) => {
            let (p, q, e) = (a.rows(), a.cols(), a.entry_degree());
            let ms = minors(a, p)?;
            // Vanishing minors break the signature run's positions; measure the
            // ideal directly and report no criterion.
            let measured: Vec<(u32, usize, usize)> = if ms.iter().any(Polynomial::is_zero) {
                let nonzero: Vec<Polynomial> = ms.into_iter().filter(|m| !m.is_zero()).collect();
                if nonzero.is_empty() {
                    (1..=degree_bound).map(|d| (d, 0, 0)).collect()
                } else {
                    let lz = lazard_gb(&nonzero, degree_bound)?;
                    lz.stats.iter().map(|s| (s.degree, s.rank, 0)).collect()
                }
            } else {
                let r = max_minors_sig_gb(a, degree_bound, true)?;
                r.gb.stats
                    .iter()
                    .map(|s| (s.degree, s.rank, layer(&r, n, s.degree, p as u32 * e)))
                    .collect()
            };
            let lines = measured
                .into_iter()
                .map(|(degree, rank, criterion)| {
                    let d = degree as i64;
                    VerifyLine {
                        degree,
                        rank,
                        predicted_rank: vec![hilbert::hf_minors_ideal(n, p, q, e, d)],
                        criterion,
                        predicted_criterion: vec![hilbert::syzygy_count(n, p, q, e, d)],
                    }
                })
                .collect::<Vec<_>>();
            (Kind::Minors, vec![Mode::Derived], lines, None)
        }
        Instance::System { g, fs, degree } => {
            let r = crit_gb(g, fs, degree_bound, true)?;
            let (p, d0) = (fs.len(), *degree);
            let modes = vec![Mode::Derived, Mode::Paper];
            let lines = r
                .gb
                .stats
                .iter()
                .map(|s| {
                    let d = s.degree as i64;
                    VerifyLine {
                        degree: s.degree,
                        rank: s.rank,
                        predicted_rank: modes
                            .iter()
                            .map(|&m| hilbert::monomial_count(n, d) - hilbert::hf_crit(n, p, d0, d, m))
                            .collect(),
                        criterion: layer(&r, n, s.degree, (p as u32 + 1) * (d0 - 1)),
                        predicted_criterion: modes
                            .iter()
                            .map(|&m| hilbert::syzygy_count(n, p + 1, n, m.entry_degree(d0), d))
                            .collect(),
                    }
                })
                .collect::<Vec<_>>();
            let direct = if direct_sum {
                Some(syzygy_direct_sum_check(g, fs, degree_bound)?)
            } else {
                None
            };
            (Kind::Crit, modes, lines, direct)
        }
    };

    let consistent: Vec<Mode> = modes
        .iter()
        .enumerate()
        .filter(|(k, _)| lines.iter().all(|l| l.matches(*k)))
        .map(|(_, &m)| m)
        .collect();

    let names: Vec<&str> = modes.iter().map(|m| m.name()).collect();
    let _ = write!(text, "d,rank");
    for m in &names {
        let _ = write!(text, ",rank_{m}");
    }
    let _ = write!(text, ",criterion");
    for m in &names {
        let _ = write!(text, ",criterion_{m}");
    }
    text.push_str(",status\n");
    for l in &lines {
        let _ = write!(text, "{},{}", l.degree, l.rank);
        for x in &l.predicted_rank {
            let _ = write!(text, ",{x}");
        }
        let _ = write!(text, ",{}", l.criterion);
        for x in &l.predicted_criterion {
            let _ = write!(text, ",{x}");
        }
        let ok = (0..modes.len()).any(|k| l.matches(k));
        text.push_str(if ok { ",match\n" } else { ",mismatch\n" });
    }
    let direct_ok = direct.as_ref().map(|rep| rep.consistent());
    if let Some(rep) = &direct {
        text.push_str("# syzygies: d,total,from_f,from_minors,koszul_span,naive_sum\n");
        for s in &rep.degrees {
            let _ = writeln!(
                text,
                "# {},{},{},{},{},{}",
                s.degree,
                s.total,
                s.from_f,
                s.from_minors,
                s.expected,
                s.naive_sum()
            );
        }
        let _ = writeln!(
            text,
            "direct sum: {}",
            if rep.consistent() { "holds" } else { "fails" }
        );
    }
    let consistent_names: Vec<&str> = consistent.iter().map(|m| m.name()).collect();
    let _ = writeln!(
        text,
        "consistent modes: {}",
        if consistent_names.is_empty() {
            "none".to_string()
        } else {
            consistent_names.join(",")
        }
    );
    let verdict = match consistent.as_slice() {
        [m] => m.name().to_string(),
        [] => "mismatch".to_string(),
        _ => "ambiguous".to_string(),
    };
    let _ = writeln!(text, "verdict: {verdict}");

    Ok(VerifyReport {
        kind,
        degree_bound,
        modes,
        lines,
        consistent,
        direct_sum: direct_ok,
        text,
    })
}

/// Operation-count estimate with a per-degree breakdown.
pub fn cmd_estimate(params: &EstimatorParams) -> CliResult<String> {
    let total = hilbert::complexity_estimate(params)?;
    let EstimatorParams { n, p, d0, mode, .. } = *params;
    let mut out = String::from("d,rows,columns,rank\n");
    for d in d0..=hilbert::degree_bound_crit(n, p, d0) {
        let d = d as i64;
        let cols = hilbert::monomial_count(n, d);
        let rank = &cols - hilbert::hf_crit(n, p, d0, d, mode);
        let _ = writeln!(out, "{d},{},{cols},{rank}", hilbert::rows_crit(n, p, d0, d, mode));
    }
    let _ = writeln!(out, "estimate: {total}");
    Ok(out)
}

/// Copy of `a` with column `src` written over column `dst` (1-based).
pub fn duplicate_column(a: &PolyMatrix, src: usize, dst: usize) -> CliResult<PolyMatrix> {
    if src == 0 || dst == 0 || src > a.cols() || dst > a.cols() {
        return Err(CliError::Usage(format!("columns must lie in 1..={}", a.cols())));
    }
    Ok(a.with_column_copied(src - 1, dst - 1))
}
