use std::cmp::Ordering;

use critgb_core::hilbert::{self, Mode};
use critgb_core::instance::random_homogeneous;
use critgb_core::macaulay::{build_macaulay, plain_rref};
use critgb_core::*;
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use smallvec::SmallVec;

fn mono(n: usize) -> impl Strategy<Value = Monomial> {
    prop::collection::vec(0u16..4, n).prop_map(|v| Monomial::new(SmallVec::from_vec(v)))
}

fn small_poly(n: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((mono(n), 0u32..65521), 0..6)
        .prop_map(move |terms| Polynomial::from_terms(PrimeField::default(), n, terms))
}

proptest! {
    #[test]
    fn grevlex_total_and_multiplicative(a in mono(3), b in mono(3), c in mono(3)) {
        let ab = grevlex_cmp(&a, &b).unwrap();
        prop_assert_eq!(ab.reverse(), grevlex_cmp(&b, &a).unwrap());
        prop_assert_eq!(ab == Ordering::Equal, a == b);
        prop_assert_eq!(grevlex_cmp(&a.mul(&c), &b.mul(&c)).unwrap(), ab);
        if ab != Ordering::Less && grevlex_cmp(&b, &c).unwrap() != Ordering::Less {
            prop_assert_ne!(grevlex_cmp(&a, &c).unwrap(), Ordering::Less);
        }
    }

    #[test]
    fn pot_is_antisymmetric(a in mono(2), b in mono(2), i in 1usize..4, j in 1usize..4) {
        let x = ModuleMonomial::new(a, BasisIndex::Free(i));
        let y = ModuleMonomial::new(b, BasisIndex::Free(j));
        let o = pot_cmp(&x, &y).unwrap();
        prop_assert_eq!(o.reverse(), pot_cmp(&y, &x).unwrap());
        if i != j {
            prop_assert_eq!(o, i.cmp(&j));
        }
    }

    #[test]
    fn enumeration_is_complete_and_sorted(n in 1usize..5, d in 0u32..6) {
        let all = enumerate_monomials(n, d);
        prop_assert_eq!(BigInt::from(all.len()), hilbert::monomial_count(n, d as i64));
        prop_assert!(all.windows(2).all(|w| w[0] > w[1]));
        prop_assert!(all.iter().all(|m| m.degree() == d));
    }

    #[test]
    fn derivative_is_linear(f in small_poly(3), g in small_poly(3), c in 0u32..65521, v in 0usize..3) {
        let lhs = f.scale(c).add(&g).partial_derivative(v).unwrap();
        let rhs = f.partial_derivative(v).unwrap().scale(c).add(&g.partial_derivative(v).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn homogenize_round_trip(f in small_poly(2)) {
        prop_assume!(!f.is_zero());
        let h = f.homogenize().unwrap();
        prop_assert!(h.is_homogeneous());
        prop_assert_eq!(h.dehomogenize(), f);
    }

    #[test]
    fn valid_and_plain_echelon_agree(seed in 0u64..1000, d in 2u32..5) {
        let field = PrimeField::default();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let gens: Vec<_> = (0..3).map(|k| random_homogeneous(field, 3, 1 + (k % 2), &mut rng)).collect();
        let m = build_macaulay(&gens, d).unwrap();
        let plain = plain_rref(m.dense_rows(), field);
        let mut v = m.clone();
        v.echelonize_valid();
        prop_assert_eq!(v.rank(), plain.len());
        prop_assert_eq!(plain_rref(v.dense_rows(), field), plain);
        // reductions never raise a leading term
        for (row, orig) in v.rows().iter().zip({
            let mut o = m.rows().to_vec();
            o.sort_by(|a, b| a.sig.cmp(&b.sig));
            o
        }) {
            if let (Some(a), Some(b)) = (row.data.lead(), orig.data.lead()) {
                prop_assert!(a >= b);
            }
        }
    }

    #[test]
    fn closed_form_matches_series(n in 1usize..7, m in 1usize..13, d0 in 1u32..5, d in 0u32..31) {
        prop_assert_eq!(hilbert::hf_semiregular(n, m, d0, d), hilbert::hf_semiregular_closed(n, m, d0, d));
    }

    #[test]
    fn crit_routes_agree(n in 2usize..7, p in 1usize..4, d0 in 2u32..5) {
        prop_assume!(p < n);
        for mode in [Mode::Derived, Mode::Paper] {
            let s = hilbert::hf_crit_series(n, p, d0, 40, mode);
            for (d, x) in s.iter().enumerate() {
                prop_assert_eq!(x, &hilbert::hf_crit(n, p, d0, d as i64, mode));
            }
        }
        for d in 0..40 {
            prop_assert!(hilbert::hf_crit(n, p, d0, d, Mode::Derived) >= BigInt::from(0));
        }
    }

    #[test]
    fn column_ideals_grow_with_k(n in 3usize..8, p in 1usize..3, d0 in 2u32..4, d in 0u32..15) {
        prop_assume!(p + 2 <= n);
        let mut prev = BigInt::from(0);
        for k in 1..n - p {
            let v = hilbert::hf_column_ideal(n, p, d0, k, d, Mode::Derived).unwrap();
            prop_assert!(v >= prev);
            prop_assert!(v >= BigInt::from(0));
            prev = v;
        }
    }
}
