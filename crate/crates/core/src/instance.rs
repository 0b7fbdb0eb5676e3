//! Random generic instances and the plain-text instance format.
//!
//! ```text
//! prime 65521
//! nvars 3
//! matrix 2 3 degree 1          (or: system 1 degree 2)
//! 12*x1 + 7*x2 + 40000*x3      one polynomial per line
//! ...
//! ```
//!
//! A `matrix P Q` block lists the `P*Q` entries row by row. A `system P` block
//! lists the objective `g` first, then the `P` constraints `f_1 … f_P`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::field::{Coeff, PrimeField, DEFAULT_PRIME};
use crate::matrix::PolyMatrix;
use crate::monomial::{enumerate_monomials, Monomial};
use crate::poly::Polynomial;

/// Shape and randomness of a generated instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InstanceSpec {
    pub n: usize,
    pub p: usize,
    pub q: usize,
    pub d0: u32,
    pub prime: u32,
    pub seed: u64,
}

impl InstanceSpec {
    pub fn new(n: usize, p: usize, q: usize, d0: u32, seed: u64) -> Self {
        InstanceSpec {
            n,
            p,
            q,
            d0,
            prime: DEFAULT_PRIME,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::Shape(format!("need n >= 2, got {}", self.n)));
        }
        if self.p == 0 || self.p > self.q {
            return Err(Error::Shape(format!("need 1 <= p <= q, got p={} q={}", self.p, self.q)));
        }
        if self.d0 == 0 {
            return Err(Error::Shape("need d0 >= 1".into()));
        }
        PrimeField::new(self.prime)?;
        Ok(())
    }

    pub fn field(&self) -> Result<PrimeField> {
        PrimeField::new(self.prime)
    }

    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

/// Every monomial of degree `d` gets an independent uniform coefficient.
pub fn random_homogeneous<R: Rng + ?Sized>(
    field: PrimeField,
    n: usize,
    d: u32,
    rng: &mut R,
) -> Polynomial {
    let terms = enumerate_monomials(n, d)
        .into_iter()
        .map(|m| (m, rng.gen_range(0..field.modulus())))
        .collect::<Vec<(Monomial, Coeff)>>();
    Polynomial::from_terms(field, n, terms)
}

/// Generic `p × q` matrix with entries of degree `d0`, row by row.
pub fn random_matrix(spec: &InstanceSpec) -> Result<PolyMatrix> {
    spec.validate()?;
    let field = spec.field()?;
    let mut rng = spec.rng();
    let entries = (0..spec.p * spec.q)
        .map(|_| random_homogeneous(field, spec.n, spec.d0, &mut rng))
        .collect();
    PolyMatrix::new(spec.p, spec.q, spec.d0, entries)
}

/// Generic critical-point data `(g, [f_1..f_p])`, all of degree `d0`.
/// `spec.q` is ignored.
pub fn random_crit_system(spec: &InstanceSpec) -> Result<(Polynomial, Vec<Polynomial>)> {
    let check = InstanceSpec {
        q: spec.p.max(1),
        ..*spec
    };
    check.validate()?;
    let field = spec.field()?;
    let mut rng = spec.rng();
    let g = random_homogeneous(field, spec.n, spec.d0, &mut rng);
    let fs = (0..spec.p)
        .map(|_| random_homogeneous(field, spec.n, spec.d0, &mut rng))
        .collect();
    Ok((g, fs))
}

/// Parses `c*x1^2*x3 + 5*x2 - 3` style text.
pub fn parse_polynomial(field: PrimeField, nvars: usize, text: &str) -> Result<Polynomial> {
    parse_polynomial_at(field, nvars, text, 0)
}

fn parse_polynomial_at(field: PrimeField, nvars: usize, text: &str, line: usize) -> Result<Polynomial> {
    let err = |msg: String| Error::Parse { line, msg };
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(err("empty polynomial".into()));
    }
    let mut out = Polynomial::zero(field, nvars);
    let bytes = s.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let mut negative = false;
        while i < bytes.len() && (bytes[i] == b'+' || bytes[i] == b'-') {
            if bytes[i] == b'-' {
                negative = !negative;
            }
            i += 1;
        }
        let start = i;
        while i < bytes.len() && bytes[i] != b'+' && bytes[i] != b'-' {
            i += 1;
        }
        let term = &s[start..i];
        if term.is_empty() {
            return Err(err("dangling sign".into()));
        }
        let mut coeff: Coeff = 1;
        let mut exps: SmallVec<[u16; 8]> = SmallVec::from_elem(0, nvars);
        for factor in term.split('*') {
            if factor.is_empty() {
                return Err(err(format!("empty factor in '{term}'")));
            }
            if let Some(var) = factor.strip_prefix('x') {
                let (idx, exp) = match var.split_once('^') {
                    Some((v, e)) => (v, e.parse::<u16>().map_err(|_| err(format!("bad exponent in '{factor}'")))?),
                    None => (var, 1),
                };
                let idx: usize = idx.parse().map_err(|_| err(format!("bad variable '{factor}'")))?;
                if idx == 0 || idx > nvars {
                    return Err(err(format!("variable x{idx} outside x1..x{nvars}")));
                }
                exps[idx - 1] += exp;
            } else {
                let c: u64 = factor.parse().map_err(|_| err(format!("bad coefficient '{factor}'")))?;
                coeff = field.mul(coeff, field.reduce(c));
            }
        }
        if negative {
            coeff = field.neg(coeff);
        }
        out.add_term(Monomial::new(exps), coeff);
    }
    Ok(out)
}

/// Parsed contents of an instance file.
#[derive(Debug, Clone)]
pub enum Instance {
    Matrix(PolyMatrix),
    System {
        g: Polynomial,
        fs: Vec<Polynomial>,
        degree: u32,
    },
}

impl Instance {
    pub fn field(&self) -> PrimeField {
        match self {
            Instance::Matrix(m) => m.field(),
            Instance::System { g, .. } => g.field(),
        }
    }

    pub fn nvars(&self) -> usize {
        match self {
            Instance::Matrix(m) => m.nvars(),
            Instance::System { g, .. } => g.nvars(),
        }
    }
}

fn header<'a>(lines: &mut impl Iterator<Item = (usize, &'a str)>, key: &str) -> Result<(usize, Vec<&'a str>)> {
    let (no, line) = lines.next().ok_or(Error::Parse {
        line: 0,
        msg: format!("missing '{key}' header"),
    })?;
    let words: Vec<&str> = line.split_whitespace().collect();
    if words.first() != Some(&key) {
        return Err(Error::Parse {
            line: no,
            msg: format!("expected '{key}', found '{line}'"),
        });
    }
    Ok((no, words[1..].to_vec()))
}

fn num<T: std::str::FromStr>(word: Option<&&str>, line: usize) -> Result<T> {
    word.and_then(|w| w.parse().ok()).ok_or(Error::Parse {
        line,
        msg: "expected a number".into(),
    })
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (no, w) = header(&mut lines, "prime")?;
    let field = PrimeField::new(num(w.first(), no)?).map_err(|e| Error::Parse {
        line: no,
        msg: e.to_string(),
    })?;
    let (no, w) = header(&mut lines, "nvars")?;
    let nvars: usize = num(w.first(), no)?;
    let (no, line) = lines.next().ok_or(Error::Parse {
        line: 0,
        msg: "missing 'matrix' or 'system' header".into(),
    })?;
    let words: Vec<&str> = line.split_whitespace().collect();
    let polys: Vec<Polynomial> = lines
        .map(|(l, t)| parse_polynomial_at(field, nvars, t, l))
        .collect::<Result<_>>()?;
    let shape_err = |msg: String| Error::Parse { line: no, msg };
    match words.as_slice() {
        ["matrix", p, q, "degree", d] => {
            let p: usize = num(Some(p), no)?;
            let q: usize = num(Some(q), no)?;
            let d: u32 = num(Some(d), no)?;
            if polys.len() != p * q {
                return Err(shape_err(format!("expected {} entries, found {}", p * q, polys.len())));
            }
            Ok(Instance::Matrix(PolyMatrix::new(p, q, d, polys)?))
        }
        ["system", p, "degree", d] => {
            let p: usize = num(Some(p), no)?;
            let d: u32 = num(Some(d), no)?;
            if polys.len() != p + 1 {
                return Err(shape_err(format!("expected {} polynomials, found {}", p + 1, polys.len())));
            }
            for f in &polys {
                match f.homogeneous_degree()? {
                    Some(e) if e != d => {
                        return Err(Error::DegreeMismatch(format!("polynomial of degree {e}, expected {d}")))
                    }
                    _ => {}
                }
            }
            let mut it = polys.into_iter();
            let g = it.next().expect("p + 1 >= 1");
            Ok(Instance::System {
                g,
                fs: it.collect(),
                degree: d,
            })
        }
        _ => Err(shape_err(format!("expected 'matrix P Q degree D' or 'system P degree D', found '{line}'"))),
    }
}

pub fn format_instance(inst: &Instance) -> String {
    let mut out = format!("prime {}\nnvars {}\n", inst.field().modulus(), inst.nvars());
    match inst {
        Instance::Matrix(m) => {
            out += &format!("matrix {} {} degree {}\n", m.rows(), m.cols(), m.entry_degree());
            for e in m.entries() {
                out += &format!("{e}\n");
            }
        }
        Instance::System { g, fs, degree } => {
            out += &format!("system {} degree {}\n", fs.len(), degree);
            out += &format!("{g}\n");
            for f in fs {
                out += &format!("{f}\n");
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_polynomial() {
        let f = PrimeField::default();
        let a = random_homogeneous(f, 3, 2, &mut ChaCha8Rng::seed_from_u64(7));
        let b = random_homogeneous(f, 3, 2, &mut ChaCha8Rng::seed_from_u64(7));
        assert_eq!(a, b);
        assert!(a.num_terms() <= 6);
        assert!(a.is_homogeneous());
    }

    #[test]
    fn distinct_seeds_rarely_collide() {
        // 100 pairs; a collision needs all 6 coefficients to agree
        let f = PrimeField::default();
        let collisions = (0..100u64)
            .filter(|&s| {
                let a = random_homogeneous(f, 3, 2, &mut ChaCha8Rng::seed_from_u64(2 * s));
                let b = random_homogeneous(f, 3, 2, &mut ChaCha8Rng::seed_from_u64(2 * s + 1));
                a == b
            })
            .count();
        assert_eq!(collisions, 0);
    }

    #[test]
    fn parse_terms() {
        let f = PrimeField::default();
        let p = parse_polynomial(f, 3, "3*x1^2*x3 - x2^3 + 5").unwrap();
        assert_eq!(p.num_terms(), 3);
        assert_eq!(p.to_string(), "65520*x2^3 + 3*x1^2*x3 + 5");
        let q = parse_polynomial(f, 3, &p.to_string()).unwrap();
        assert_eq!(p, q);
        assert!(parse_polynomial(f, 2, "x3").is_err());
        assert!(parse_polynomial(f, 2, "2*").is_err());
        assert!(parse_polynomial(f, 2, "x1 +").is_err());
    }

    #[test]
    fn instance_round_trip() {
        let spec = InstanceSpec::new(3, 2, 3, 1, 11);
        let m = random_matrix(&spec).unwrap();
        let text = format_instance(&Instance::Matrix(m.clone()));
        match parse_instance(&text).unwrap() {
            Instance::Matrix(m2) => assert_eq!(m, m2),
            _ => panic!("wrong kind"),
        }
        let (g, fs) = random_crit_system(&InstanceSpec::new(3, 1, 0, 2, 5)).unwrap();
        let text = format_instance(&Instance::System { g: g.clone(), fs: fs.clone(), degree: 2 });
        match parse_instance(&text).unwrap() {
            Instance::System { g: g2, fs: fs2, degree } => {
                assert_eq!((g2, fs2, degree), (g, fs, 2));
            }
            _ => panic!("wrong kind"),
        }
    }

    #[test]
    fn instance_errors() {
        assert!(parse_instance("prime 4\nnvars 2\nsystem 0 degree 1\nx1\n").is_err());
        assert!(parse_instance("prime 7\nnvars 2\nmatrix 1 2 degree 1\nx1\n").is_err());
        assert!(parse_instance("prime 7\nnvars 2\nmatrix 1 2 degree 1\nx1\nx1^2\n").is_err());
        assert!(parse_instance("prime 7\nnvars 2\nsystem 1 degree 2\nx1^2\nx1*x2 + x2\n").is_err());
    }
}
