use proptest::prelude::*;

use psipattern::curve::Curve;
use psipattern::ff::make_prime_field;
use psipattern::oracle::{check_oracle_scale, run_oracle};
use psipattern::pattern::verify;

const PRIMES: [u64; 10] = [5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

fn instance() -> impl Strategy<Value = (u64, i64, i64, u64)> {
    (prop::sample::select(&PRIMES[..]), any::<u16>(), any::<u16>(), prop::sample::select(vec![3u64, 5, 7]))
        .prop_filter("l must differ from p", |(p, _, _, l)| p != l)
        .prop_map(|(p, a, b, l)| (p, (a as u64 % p) as i64, (b as u64 % p) as i64, l))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn prediction_matches_factoring((p, a, b, l) in instance()) {
        let Ok(c) = Curve::from_ints(&make_prime_field(p).unwrap(), a, b) else { return Ok(()) };
        let v = verify(&c, l, 0).unwrap();
        prop_assert_eq!(v.empirical.degree_sum() as u64, (l * l - 1) / 2);
        prop_assert_ne!(v.matches(), Some(false));
        if let Some(pred) = v.prediction.prediction() {
            prop_assert_eq!(pred.predicted.pattern.degree_sum(), v.psi_degree);
        }
    }

    #[test]
    fn oracle_agrees_with_factoring((p, a, b, l) in instance(), seed in any::<u64>()) {
        let Ok(c) = Curve::from_ints(&make_prime_field(p).unwrap(), a, b) else { return Ok(()) };
        prop_assume!(check_oracle_scale(&c, l).is_ok());
        let o = run_oracle(&c, l, seed).unwrap();
        let v = verify(&c, l, seed).unwrap();
        prop_assert_eq!(&o.pattern, &v.empirical);
        prop_assert!(o.form.agrees_with(&v.class));
    }
}
