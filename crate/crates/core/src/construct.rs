//! Explicit equidistant code constructions.
//!
//! All constructions certify their output by running
//! [`Code::verify_equidistant`]; no distance is ever assumed.

use crate::codes::{Code, Codeword};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::numbers::is_prime_power;
use crate::{materialize_limit, MATERIALIZE_CELL_LIMIT};

/// Parameters of the `k`-fold iterated doubling code over `GF(q)`:
/// length `n = q (q^(2^(k+1)) - 1) / (q - 1)`, distance `d = 2 q^(2^(k+1) - 1)`
/// and size `s = q^(2^(k+1))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct IteratedParams {
    pub q: u64,
    pub k: u32,
    pub n: u128,
    pub d: u128,
    pub s: u128,
}

impl IteratedParams {
    /// Closed-form parameters; `None` on overflow or when `q` is not a prime power.
    pub fn new(q: u64, k: u32) -> Option<IteratedParams> {
        if !is_prime_power(q) || k > 6 {
            return None;
        }
        let q128 = q as u128;
        let e = 1u32.checked_shl(k + 1)?;
        let s = q128.checked_pow(e)?;
        let d = 2 * q128.checked_pow(e - 1)?;
        // q/(q-1) * (1 - q^-e) * q^e = q (q^e - 1) / (q - 1), always exact.
        let n = q128.checked_mul(s - 1)? / (q128 - 1);
        Some(IteratedParams { q, k, n, d, s })
    }

    /// `n` via the product `q (q+1) (q^2+1) ... (q^(2^k)+1)`.
    pub fn length_by_product(q: u64, k: u32) -> Option<u128> {
        let q = q as u128;
        let mut n = q.checked_mul(q + 1)?;
        for i in 1..=k {
            n = n.checked_mul(q.checked_pow(1 << i)? + 1)?;
        }
        Some(n)
    }
}

fn check_materializable(what: &str, n: u128, m: u128) -> Result<()> {
    let limit = materialize_limit() as u128;
    if n > limit {
        return Err(Error::ResourceLimit {
            what: format!("{what} length {n}"),
            limit,
        });
    }
    if n.saturating_mul(m) > MATERIALIZE_CELL_LIMIT {
        return Err(Error::ResourceLimit {
            what: format!("{what} with {m} words of length {n}"),
            limit: MATERIALIZE_CELL_LIMIT,
        });
    }
    Ok(())
}

/// `{0^n, 1^d 0^(n-d)}`: the largest equidistant code for odd `d`.
pub fn pair_code(n: usize, d: usize) -> Result<Code> {
    if d == 0 || d > n {
        return Err(Error::BadParams(format!("pair code needs 1 <= d <= n, got n={n}, d={d}")));
    }
    Code::certified(n, vec![Codeword::zeros(n), Codeword::from_support(n, 0..d)], d as u32)
}

/// Number of disjoint blocks of size `d/2` that fit in `n` positions.
pub fn trivial_size(n: u64, d: u64) -> Option<u64> {
    (d >= 2 && d % 2 == 0 && d <= 2 * n).then(|| n / (d / 2))
}

/// `⌊2n/d⌋` words with disjoint supports of size `d/2`.
pub fn trivial_code(n: usize, d: usize) -> Result<Code> {
    if d < 2 || d % 2 != 0 || 2 * n < d {
        return Err(Error::BadParams(format!(
            "trivial code needs even d >= 2 with d <= 2n, got n={n}, d={d}"
        )));
    }
    let half = d / 2;
    let m = n / half;
    check_materializable("trivial code", n as u128, m as u128)?;
    let words = (0..m)
        .map(|i| Codeword::from_support(n, i * half..(i + 1) * half))
        .collect();
    Code::certified(n, words, d as u32)
}

/// The `q` unit vectors of length `q`, pairwise at distance 2 (a single word for `q = 1`).
pub fn weight_one_code(q: usize) -> Result<Code> {
    if q == 0 {
        return Err(Error::BadParams("weight-one code needs q >= 1".into()));
    }
    let words = (0..q).map(|i| Codeword::from_support(q, [i])).collect();
    Code::certified(q, words, 2)
}

/// Sylvester–Hadamard code: `2^(k+1)` words of length `2^(k+1)`, word `u`
/// having bit `v` equal to the parity of `u & v`; pairwise distance `2^k`.
pub fn hadamard_code(k: u32) -> Result<Code> {
    if k > 30 {
        return Err(Error::BadParams(format!("hadamard order 2^{} is too large", k + 1)));
    }
    let len = 1usize << (k + 1);
    check_materializable("hadamard code", len as u128, len as u128)?;
    let words = (0..len)
        .map(|u| Codeword::from_support(len, (0..len).filter(move |&v| (u & v).count_ones() % 2 == 1)))
        .collect();
    Code::certified(len, words, 1 << k)
}

/// One doubling step: from a `d0`-equidistant code `R` of size `q0 = |GF(q0)|`
/// and length `n0`, builds `S = [A B]` with `q0^2` rows of length `n0 (q0 + 1)`
/// at pairwise distance `d0 q0`.
///
/// Row `(μ, i)` is `r_{x_μ}` followed by the blocks
/// `r_{x_i − x_μ x_ν}` for `ν = 0..q0`, where `x_0, x_1, ...` is the
/// field's canonical enumeration and `r_{x_j}` is the `j`-th word of `R`.
pub fn double_code(r: &Code, field: &Field) -> Result<Code> {
    let d0 = r.certified_distance().ok_or(Error::NotCertified)?;
    let q0 = field.order();
    if r.size() as u64 != q0 {
        return Err(Error::SizeMismatch {
            code: r.size(),
            field: q0,
        });
    }
    let n0 = r.len();
    let n = n0 as u128 * (q0 as u128 + 1);
    check_materializable("doubled code", n, q0 as u128 * q0 as u128)?;

    let xs = field.enumerate();
    let rows = r.words();
    let mut words = Vec::with_capacity(xs.len() * xs.len());
    for &x_mu in &xs {
        // x_μ · x_ν is shared by every row of the μ-th row block
        let products: Vec<_> = xs.iter().map(|&x_nu| field.mul(x_mu, x_nu)).collect();
        for &x_i in &xs {
            let mut word = rows[x_mu.index()].clone();
            for &prod in &products {
                word.append(&rows[field.sub(x_i, prod).index()]);
            }
            words.push(word);
        }
    }
    Code::certified(n as usize, words, d0 * q0 as u32)
}

/// Starts from [`weight_one_code`]`(q)` and applies [`double_code`] with
/// `GF(q), GF(q^2), ..., GF(q^(2^k))`.
pub fn iterated_code(q: u64, k: u32) -> Result<Code> {
    let params = IteratedParams::new(q, k).ok_or(if is_prime_power(q) {
        Error::ResourceLimit {
            what: format!("iterated code q={q}, k={k}"),
            limit: u128::MAX,
        }
    } else {
        Error::NotAPrimePower(q)
    })?;
    check_materializable("iterated code", params.n, params.s)?;
    let mut code = weight_one_code(q as usize)?;
    let mut order = q;
    for _ in 0..=k {
        let field = Field::new(order)?;
        code = double_code(&code, &field)?;
        order = order * order;
    }
    debug_assert_eq!(code.len() as u128, params.n);
    Ok(code)
}
