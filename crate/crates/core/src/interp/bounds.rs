use num_rational::Ratio;

use super::InterpError;

fn collision_numerator(n: usize, terms_bound: usize, degree_bound: u64) -> Option<u128> {
    let t = terms_bound as u128;
    (n as u128 + 2)
        .checked_mul(t)?
        .checked_mul(t.saturating_sub(1))?
        .checked_mul(degree_bound as u128)
}

/// Lower bound `max(0, 1 - (n+2)T(T-1)D / (2(q-1)))` on the probability
/// that MC pairs and interpolation succeed over `F_q`.
pub fn success_probability_bound(n: usize, terms_bound: usize, degree_bound: u64, q: u64) -> Ratio<u128> {
    let zero = Ratio::from_integer(0);
    if q < 2 {
        return zero;
    }
    let Some(num) = collision_numerator(n, terms_bound, degree_bound) else {
        return zero;
    };
    let den = 2 * (q as u128 - 1);
    if num >= den {
        zero
    } else {
        Ratio::new(den - num, den)
    }
}

/// Smallest `q` whose [`success_probability_bound`] is at least `1 - eps`:
/// `ceil((n+2)T(T-1)D / (2 eps)) + 1`, never below 2.
pub fn min_field_size(
    n: usize,
    terms_bound: usize,
    degree_bound: u64,
    eps: Ratio<u64>,
) -> Result<u128, InterpError> {
    if *eps.numer() == 0 || eps >= Ratio::from_integer(1) {
        return Err(InterpError::EpsilonOutOfRange);
    }
    let num = collision_numerator(n, terms_bound, degree_bound).ok_or(InterpError::EpsilonOutOfRange)?;
    let top = num
        .checked_mul(*eps.denom() as u128)
        .ok_or(InterpError::EpsilonOutOfRange)?;
    let bottom = 2 * *eps.numer() as u128;
    Ok((top.div_ceil(bottom) + 1).max(2))
}

/// Field size `2(n+2)T^2 D + 1` that guarantees success probability at
/// least 3/4.
pub fn algorithm_field_bound(n: usize, terms_bound: usize, degree_bound: u64) -> u128 {
    let t = terms_bound as u128;
    (n as u128 + 2)
        .saturating_mul(t)
        .saturating_mul(t)
        .saturating_mul(degree_bound as u128)
        .saturating_mul(2)
        .saturating_add(1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(a: u128, b: u128) -> Ratio<u128> {
        Ratio::new(a, b)
    }

    #[test]
    fn worked_bound() {
        // (3+2)*5*4*5 = 500 against 2*100 = 200: the bound is vacuous.
        assert_eq!(success_probability_bound(3, 5, 5, 101), r(0, 1));
        assert_eq!(success_probability_bound(3, 5, 5, 1001), r(1500, 2000));
    }

    #[test]
    fn single_term_always_succeeds() {
        assert_eq!(success_probability_bound(4, 1, 100, 3), r(1, 1));
        assert_eq!(min_field_size(4, 1, 100, Ratio::new(1, 4)).unwrap(), 2);
    }

    #[test]
    fn algorithm_bound_gives_three_quarters() {
        for (n, t, d) in [(1, 1, 1), (3, 5, 5), (4, 20, 1000), (10, 200, 100_000)] {
            let q = algorithm_field_bound(n, t, d) as u64;
            assert!(success_probability_bound(n, t, d, q) >= r(3, 4));
        }
        assert_eq!(algorithm_field_bound(3, 5, 5), 1251);
    }

    #[test]
    fn bad_epsilon() {
        for eps in [Ratio::new(0, 1), Ratio::new(1, 1), Ratio::new(3, 2)] {
            assert_eq!(min_field_size(2, 3, 4, eps), Err(InterpError::EpsilonOutOfRange));
        }
    }

    proptest! {
        #[test]
        fn min_field_size_is_tight(
            n in 1usize..8, t in 1usize..40, d in 1u64..500,
            en in 1u64..100, ed in 1u64..100,
        ) {
            prop_assume!(en < ed);
            let eps = Ratio::new(en, ed);
            let target = r(1, 1) - r(en as u128, ed as u128);
            let q = min_field_size(n, t, d, eps).unwrap();
            prop_assert!(success_probability_bound(n, t, d, q as u64) >= target);
            if q > 2 {
                prop_assert!(success_probability_bound(n, t, d, q as u64 - 1) < target);
            }
        }

        #[test]
        fn bound_is_monotone_in_q(n in 1usize..8, t in 1usize..40, d in 1u64..500, q in 2u64..1_000_000) {
            let a = success_probability_bound(n, t, d, q);
            let b = success_probability_bound(n, t, d, q + 1);
            prop_assert!(a <= b);
            prop_assert!(a >= r(0, 1) && a <= r(1, 1));
        }
    }
}
