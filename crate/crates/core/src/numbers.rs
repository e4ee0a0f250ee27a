//! Integer helpers: primality, prime powers, exact roots and rational powers.

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::ToPrimitive;

/// Exact rational parameter (`γ`, `α`) as accepted everywhere in the crate.
pub type Rational = Ratio<u64>;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut f = 3;
    while f * f <= n {
        if n % f == 0 {
            return false;
        }
        f += 2;
    }
    true
}

/// Splits `q = p^m` with `p` prime, or returns `None`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q {
        if q % p == 0 {
            break;
        }
        p += 1;
    }
    if q % p != 0 {
        // no factor below sqrt(q)
        return Some((q, 1));
    }
    let (mut rest, mut m) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        m += 1;
    }
    (rest == 1).then_some((p, m))
}

pub fn is_prime_power(q: u64) -> bool {
    prime_power(q).is_some()
}

/// All prime powers `q` with `2 <= q <= max`, ascending.
pub fn prime_powers_up_to(max: u64) -> Vec<u64> {
    (2..=max).filter(|&q| is_prime_power(q)).collect()
}

/// Exact `e`-th root of `x`, if `x` is a perfect `e`-th power.
pub fn exact_root(x: u64, e: u32) -> Option<u64> {
    if e == 0 {
        return None;
    }
    if e == 1 || x < 2 {
        return Some(x);
    }
    let guess = (x as f64).powf(1.0 / e as f64).round() as u64;
    (guess.saturating_sub(1)..=guess + 1).find(|&r| r.checked_pow(e) == Some(x))
}

/// Sorted divisors of `n > 0`.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n % i == 0 {
            small.push(i);
            if i != n / i {
                large.push(n / i);
            }
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// `base^exp <= other^other_exp`, without overflow.
fn pow_le(base: u64, exp: u32, other: u64, other_exp: u32) -> bool {
    match (
        (base as u128).checked_pow(exp),
        (other as u128).checked_pow(other_exp),
    ) {
        (Some(a), Some(b)) => a <= b,
        _ => BigUint::from(base).pow(exp) <= BigUint::from(other).pow(other_exp),
    }
}

fn exps(alpha: Rational) -> (u32, u32) {
    let a = alpha.numer().to_u32().expect("rational numerator fits u32");
    let b = alpha.denom().to_u32().expect("rational denominator fits u32");
    (a, b)
}

/// `⌊n^α⌋` for rational `α = a/b`, i.e. the largest `d` with `d^b <= n^a`.
///
/// The floating-point estimate is corrected with exact integer comparisons.
pub fn floor_pow(n: u64, alpha: Rational) -> u64 {
    let (a, b) = exps(alpha);
    if a == 0 {
        return 1;
    }
    let est = (n as f64).powf(a as f64 / b as f64);
    let mut d = if est.is_finite() { est.floor() as u64 } else { u64::MAX / 2 };
    while d > 0 && !pow_le(d, b, n, a) {
        d -= 1;
    }
    while pow_le(d + 1, b, n, a) {
        d += 1;
    }
    d
}

/// Smallest `n` with `⌊n^α⌋ >= target`, i.e. the smallest `n` with
/// `n^a >= target^b`; `None` if no `u64` qualifies.
pub fn min_n_reaching(target: u64, alpha: Rational) -> Option<u64> {
    let (a, b) = exps(alpha);
    assert!(a > 0, "exponent must be positive");
    let reaches = |n: u64| pow_le(target, b, n, a);
    if !reaches(u64::MAX) {
        return None;
    }
    let est = (target as f64).powf(b as f64 / a as f64);
    let mut n = if est.is_finite() && est < u64::MAX as f64 { est.ceil() as u64 } else { u64::MAX };
    while n > 0 && reaches(n - 1) {
        n -= 1;
    }
    while !reaches(n) {
        n += 1;
    }
    Some(n)
}

/// `floor(a * n / b)` for `γ = a/b`.
pub fn floor_mul(gamma: Rational, n: u64) -> u64 {
    ((*gamma.numer() as u128 * n as u128) / *gamma.denom() as u128) as u64
}

/// `ceil(m / γ)` for `γ = a/b`.
pub fn ceil_div(m: u64, gamma: Rational) -> u64 {
    let num = m as u128 * *gamma.denom() as u128;
    let den = *gamma.numer() as u128;
    num.div_ceil(den) as u64
}

pub fn rational_to_f64(r: Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}
