use alpha_ci::alpha::alpha_sign_sum_half;
use alpha_ci::numtheory::nu2_i128;
use alpha_ci::sullivan::guarantee_from_quantity;
use alpha_ci::*;
use num_bigint::BigInt;
use proptest::prelude::*;

fn spin_degrees(max_k: usize, max_d: u64) -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(1..=max_d, 0..=max_k)
        .prop_filter("even number of even degrees", |d| d.iter().filter(|&&x| x % 2 == 0).count() % 2 == 0)
}

fn to_i64(d: &[u64]) -> Vec<i64> {
    d.iter().map(|&x| x as i64).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn backends_agree(j in 0i64..=5, d in spin_degrees(6, 40)) {
        let n = 4 * j + 1;
        let s = alpha_sign_sum(n, &d).value;
        prop_assert_eq!(alpha_hilbert(n, &d).value, s);
        prop_assert_eq!(alpha_partition_sum(n, &to_i64(&d)).unwrap().value, s);
        prop_assert_eq!(alpha_fr(n, &d).value, s);
        prop_assert_eq!(alpha_abstract(n, &to_i64(&d)).value, s);
        if let Some(h) = alpha_sign_sum_half(n, &d) {
            prop_assert_eq!(h.value, s);
        }
    }

    #[test]
    fn alpha_ignores_linear_equations(j in 0i64..=3, d in spin_degrees(4, 20), ones in 1usize..=3) {
        let n = 4 * j + 1;
        let mut padded = d.clone();
        padded.extend(std::iter::repeat_n(1, ones));
        prop_assert_eq!(alpha(n, &d).unwrap().value, alpha(n, &padded).unwrap().value);
    }

    #[test]
    fn alpha_is_symmetric_in_degrees(j in 0i64..=3, mut d in spin_degrees(5, 30)) {
        let n = 4 * j + 1;
        let before = alpha_sign_sum(n, &d).value;
        d.reverse();
        prop_assert_eq!(alpha_hilbert(n, &d).value, before);
        prop_assert_eq!(alpha_partition_sum(n, &to_i64(&d)).unwrap().value, before);
    }

    #[test]
    fn abstract_recursion(n in -6i64..=20, a in -30i64..=30, b in -30i64..=30,
                          rest in prop::collection::vec(-20i64..=20, 0..=3)) {
        let d = [vec![a, b], rest.clone()].concat();
        let plus = [vec![a + b], rest.clone()].concat();
        let minus = [vec![a - b], rest].concat();
        prop_assert_eq!(alpha_abstract(n, &d).value,
                        alpha_abstract(n + 1, &plus).value + alpha_abstract(n + 1, &minus).value);
    }

    #[test]
    fn abstract_partition_sum_on_signed_degrees(n in -3i64..=14, d in prop::collection::vec(-15i64..=15, 0..=4)) {
        prop_assert_eq!(alpha_partition_sum(n, &d).unwrap().value, alpha_abstract(n, &d).value);
    }

    #[test]
    fn ahat_backends_agree_and_are_even(j in 1i64..=5, d in prop::collection::vec(1u64..=16, 1..=4)) {
        let n = 2 * j;
        prop_assume!(d.iter().filter(|&&x| x % 2 == 0).count() % 2 == 1);
        let a = ahat_sign_sum(n, &d).unwrap().value;
        prop_assert_eq!(&a, &ahat_hilbert(n, &d).unwrap().value);
        prop_assert!(!a.bit(0));
    }

    #[test]
    fn binomial_mod2_is_parity_of_exact(a in -300i64..=300, b in 0u64..=80) {
        prop_assert_eq!(binomial_mod2(a, b), Z2::parity(&binomial(a, b)));
    }

    #[test]
    fn binomial_negation(a in 0i64..=60, b in 0u64..=40) {
        // C(-a, b) = (-1)^b C(a+b-1, b)
        let sign = if b % 2 == 0 { 1 } else { -1 };
        prop_assert_eq!(binomial(-a, b), binomial(a + b as i64 - 1, b) * sign);
    }

    #[test]
    fn valuation_is_additive(x in 1i64..=1_000_000, y in 1i64..=1_000_000, p in prop::sample::select(vec![2u64, 3, 5, 7])) {
        let vx = nu_p(p, &BigInt::from(x)).unwrap().value();
        let vy = nu_p(p, &BigInt::from(y)).unwrap().value();
        prop_assert_eq!(nu_p(p, &(BigInt::from(x) * y)).unwrap().value(), vx + vy);
        if p == 2 {
            prop_assert_eq!(nu2_i128(-(x as i128)).unwrap().value(), vx);
        }
    }

    #[test]
    fn profile_key_round_trips(n in 1u32..=13, d in prop::collection::vec(1u64..=25, 0..=5)) {
        let p = CompleteIntersection::from_degrees(n, &d).unwrap().invariant_profile();
        prop_assert_eq!(p.key().parse::<InvariantProfile>().unwrap(), p.clone());
        let json = serde_json::to_string(&p).unwrap();
        prop_assert_eq!(serde_json::from_str::<InvariantProfile>(&json).unwrap(), p);
    }

    #[test]
    fn guarantee_is_exact_divisibility(j in 0u32..=3, q in -10_000i64..=10_000) {
        let n = 4 * j + 1;
        let g = guarantee_from_quantity(n, &BigInt::from(q));
        if q == 0 {
            prop_assert_eq!(g, Some(true));
        } else {
            let nu = q.trailing_zeros() as u64;
            let rho = alpha_ci::sullivan::rho(n);
            let expected = if nu < rho { None } else { Some(nu > rho) };
            prop_assert_eq!(g, expected);
        }
    }
}
