//! Cross-checks between the engine, the Lazard oracle, brute-force kernels and
//! the Hilbert-function predictions.

use critgb_core::determinantal::{
    crit_gb, en_leading_terms, max_minors_sig_gb, minors, syzygy_direct_sum_check, unsound_criterion_terms,
};
use critgb_core::hilbert::{self, EstimatorParams, Mode};
use critgb_core::instance::{parse_polynomial, random_crit_system, random_matrix};
use critgb_core::macaulay::MacaulayMatrix;
use critgb_core::sig_gb::is_groebner_up_to;
use critgb_core::*;
use num_bigint::BigInt;

fn poly(n: usize, s: &str) -> Polynomial {
    parse_polynomial(PrimeField::default(), n, s).unwrap()
}

#[test]
fn minors_ranks_follow_eagon_northcott() {
    for (n, p, q, d0, seed) in [(3, 2, 4, 1, 1), (3, 2, 4, 2, 2), (4, 2, 5, 2, 3), (4, 3, 6, 2, 4)] {
        let a = random_matrix(&InstanceSpec::new(n, p, q, d0, seed)).unwrap();
        let top = hilbert::degree_bound_minors(n, p, d0);
        let run = max_minors_sig_gb(&a, top, true).unwrap();
        for s in &run.gb.stats {
            let d = s.degree as i64;
            assert_eq!(BigInt::from(s.rank), hilbert::hf_minors_ideal(n, p, q, d0, d), "{n} {p} {q} {d0} d={d}");
            assert!(BigInt::from(s.rows_built) <= hilbert::rows_minors(n, p, q, d0, d));
            let delta = s.degree.saturating_sub(p as u32 * d0);
            if s.degree >= p as u32 * d0 {
                assert_eq!(
                    BigInt::from(run.criterion.layer_size(n, delta)),
                    hilbert::syzygy_count(n, p, q, d0, d)
                );
            }
        }
    }
}

#[test]
fn crit_ranks_follow_derived_formula() {
    for (n, p, d0, seed) in [(2, 1, 2, 1), (3, 1, 2, 2), (3, 2, 2, 3), (3, 1, 3, 4)] {
        let (g, fs) = random_crit_system(&InstanceSpec::new(n, p, 0, d0, seed)).unwrap();
        let top = hilbert::degree_bound_crit(n, p, d0);
        let run = crit_gb(&g, &fs, top, true).unwrap();
        for s in &run.gb.stats {
            let d = s.degree as i64;
            let predicted = hilbert::monomial_count(n, d) - hilbert::hf_crit(n, p, d0, d, Mode::Derived);
            assert_eq!(BigInt::from(s.rank), predicted, "n={n} p={p} d0={d0} d={d}");
        }
    }
}

#[test]
fn reduced_bases_match_lazard() {
    let a = random_matrix(&InstanceSpec::new(3, 2, 4, 2, 5)).unwrap();
    let run = max_minors_sig_gb(&a, 5, true).unwrap();
    let lz = lazard_gb(&run.generators, 5).unwrap();
    assert_eq!(run.gb.reduced, lz.reduced);
    assert!(is_groebner_up_to(&run.gb.reduced, &run.generators, 5).unwrap());

    let (g, fs) = random_crit_system(&InstanceSpec::new(3, 2, 0, 2, 8)).unwrap();
    let run = crit_gb(&g, &fs, 11, true).unwrap();
    let lz = lazard_gb(&run.generators, 11).unwrap();
    assert_eq!(run.gb.reduced, lz.reduced);
    assert!(run.gb.total_rows_built() < lz.total_rows_built());
}

#[test]
fn skipped_rows_are_redundant() {
    let a = random_matrix(&InstanceSpec::new(3, 2, 4, 1, 6)).unwrap();
    let run = max_minors_sig_gb(&a, 4, true).unwrap();
    for s in &run.gb.stats {
        let built: Vec<Signature> = run
            .gb
            .skipped_signatures
            .iter()
            .filter(|sig| sig.tau.degree() + 2 == s.degree)
            .cloned()
            .collect();
        let all = macaulay::build_macaulay(&run.generators, s.degree).unwrap();
        // the full matrix has the same rank as the pruned one
        assert_eq!(all.rank(), s.rank);
        // and every skipped row lies in the span of the smaller signatures
        let mut shadow = all.clone();
        shadow.echelonize_valid();
        for sig in built {
            let row = shadow.rows().iter().find(|r| r.sig == sig).unwrap();
            let smaller: Vec<Signature> = all.rows().iter().map(|r| r.sig.clone()).filter(|t| *t < sig).collect();
            let mut with = smaller.clone();
            with.push(sig.clone());
            let r1 = MacaulayMatrix::from_signatures(&run.generators, s.degree, smaller).unwrap().rank();
            let r2 = MacaulayMatrix::from_signatures(&run.generators, s.degree, with).unwrap().rank();
            assert_eq!(r1, r2, "{sig} is not redundant");
            assert!(row.data.is_zero());
        }
    }
}

#[test]
fn criterion_is_sound_against_kernels() {
    for (n, p, q, d0, seed) in [(3, 1, 3, 2, 1), (3, 2, 4, 2, 2), (4, 2, 5, 2, 3)] {
        let a = random_matrix(&InstanceSpec::new(n, p, q, d0, seed)).unwrap();
        let top = hilbert::degree_bound_minors(n, p, d0);
        let h = en_leading_terms(&a, top).unwrap();
        let ms = minors(&a, p).unwrap();
        assert!(unsound_criterion_terms(&ms, &h, top).unwrap().is_empty());
    }
}

#[test]
fn crit_basis_is_stable_past_the_bound() {
    let (g, fs) = random_crit_system(&InstanceSpec::new(3, 1, 0, 2, 31)).unwrap();
    let a = crit_gb(&g, &fs, 9, true).unwrap();
    let b = crit_gb(&g, &fs, 11, true).unwrap();
    assert_eq!(a.gb.leading_monomials(), b.gb.leading_monomials());
}

#[test]
fn crit_toy_determinant() {
    let run = crit_gb(&poly(2, "x1^2"), &[poly(2, "x2^2")], 6, true).unwrap();
    let lz = lazard_gb(&run.generators, 6).unwrap();
    assert_eq!(run.gb.leading_monomials(), lz.leading_monomials());
}

#[test]
fn enlarging_the_criterion_only_saves_rows() {
    let a = random_matrix(&InstanceSpec::new(4, 2, 5, 2, 9)).unwrap();
    let top = hilbert::degree_bound_minors(4, 2, 2);
    let ms = minors(&a, 2).unwrap();
    let h = en_leading_terms(&a, top).unwrap();
    let mut half = SyzygySignatureSet::new();
    for (k, sig) in h.iter().enumerate() {
        if k % 2 == 0 {
            half.insert(sig.gen, sig.tau);
        }
    }
    let none = sig_gb(&ms, top, &SyzygySignatureSet::new()).unwrap();
    let some = sig_gb(&ms, top, &half).unwrap();
    let all = sig_gb(&ms, top, &h).unwrap();
    assert_eq!(none.reduced, some.reduced);
    assert_eq!(some.reduced, all.reduced);
    assert!(some.total_rows_built() <= none.total_rows_built());
    assert!(all.total_rows_built() <= some.total_rows_built());
    assert!(all.total_zero_reductions() <= none.total_zero_reductions());
}

#[test]
fn direct_sum_holds_generically() {
    for seed in 0..3 {
        let (g, fs) = random_crit_system(&InstanceSpec::new(3, 1, 0, 2, seed)).unwrap();
        let rep = syzygy_direct_sum_check(&g, &fs, 8).unwrap();
        assert!(rep.consistent(), "{rep:?}");
    }
}

#[test]
fn golden_estimate() {
    let params = EstimatorParams {
        n: 4,
        p: 1,
        q: 4,
        d0: 2,
        omega: 2.81,
        mode: Mode::Derived,
    };
    assert_eq!(hilbert::complexity_estimate(&params).unwrap(), BigInt::from(72037715u64));
    let paper = EstimatorParams { mode: Mode::Paper, ..params };
    assert_eq!(hilbert::complexity_estimate(&paper).unwrap(), BigInt::from(49606380u64));
}

#[test]
fn reference_shape_measured_ranks() {
    let a = random_matrix(&InstanceSpec::new(4, 3, 6, 3, 1)).unwrap();
    let run = max_minors_sig_gb(&a, 15, true).unwrap();
    let ranks: Vec<usize> = run.gb.stats.iter().map(|s| s.rank).collect();
    assert_eq!(ranks, vec![20, 80, 200, 355, 520, 670, 816]);
    assert_eq!(run.gb.total_rank(), 2661);
}
