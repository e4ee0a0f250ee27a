//! Upper and lower bounds on `e_d(n)` with provenance.
//!
//! Upper bounds come from four formulas (Fisher, Plotkin, Deza, parity);
//! [`best_upper`] takes their minimum. Lower bounds come from the explicit
//! constructions, closed under repetition and zero padding;
//! [`best_lower`] takes their maximum and, when small enough, materializes
//! and re-verifies the winning code as a certificate.

use std::fmt;

use serde::Serialize;

use crate::codes::{repeat_code, Code};
use crate::construct::{hadamard_code, iterated_code, pair_code, trivial_code, trivial_size, IteratedParams};
use crate::error::{Error, Result};
use crate::exact::exact_by_theory;
use crate::numbers::{divisors, exact_root, is_prime_power};
use crate::{materialize_limit, MATERIALIZE_CELL_LIMIT};

fn check_range(n: u64, d: u64) -> Result<()> {
    if d == 0 || d > n {
        return Err(Error::BadParams(format!("bounds need 1 <= d <= n, got n={n}, d={d}")));
    }
    Ok(())
}

/// `e_d(n) <= n + 1`.
pub fn fisher_upper(n: u64) -> u64 {
    n + 1
}

/// `2 ⌊d / (2d − n)⌋` for even `d` with `d <= n < 2d`.
pub fn plotkin_upper(n: u64, d: u64) -> Result<u64> {
    if d % 2 != 0 || d == 0 || n < d || n >= 2 * d {
        return Err(Error::NotApplicable { bound: "plotkin", n, d });
    }
    Ok(2 * (d / (2 * d - n)))
}

/// `max{(d/2)^2 + d/2 + 2, ⌊2n/d⌋}` for even `2 <= d <= n`.
pub fn deza_upper(n: u64, d: u64) -> Result<u64> {
    if d % 2 != 0 || d == 0 || d > n {
        return Err(Error::NotApplicable { bound: "deza", n, d });
    }
    let k = d / 2;
    Ok((k * k + k + 2).max(2 * n / d))
}

/// Odd distances admit only pairs.
pub fn parity_upper(n: u64, d: u64) -> Result<u64> {
    if d % 2 == 0 || d > n {
        return Err(Error::NotApplicable { bound: "parity", n, d });
    }
    Ok(2)
}

/// Smallest `N` with `⌊N/k⌋ > k^2 + k + 2` where `d = 2k`; from `N` on,
/// `e_d(n) = ⌊2n/d⌋`.
pub fn deza_exact_threshold(d: u64) -> Result<u64> {
    if d % 2 != 0 || d == 0 {
        return Err(Error::NotApplicable { bound: "deza threshold", n: 0, d });
    }
    let k = d / 2;
    Ok(k * (k * k + k + 3))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum UpperFormula {
    Parity,
    Plotkin,
    Deza,
    Fisher,
}

impl UpperFormula {
    pub fn name(self) -> &'static str {
        match self {
            UpperFormula::Parity => "parity",
            UpperFormula::Plotkin => "plotkin",
            UpperFormula::Deza => "deza",
            UpperFormula::Fisher => "fisher",
        }
    }
}

impl fmt::Display for UpperFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UpperBound {
    pub value: u64,
    pub formula: UpperFormula,
}

/// Minimum of the applicable upper bounds; ties go to parity, then
/// Plotkin, then Deza, then Fisher.
pub fn best_upper(n: u64, d: u64) -> Result<UpperBound> {
    check_range(n, d)?;
    let candidates = [
        (UpperFormula::Parity, parity_upper(n, d).ok()),
        (UpperFormula::Plotkin, plotkin_upper(n, d).ok()),
        (UpperFormula::Deza, deza_upper(n, d).ok()),
        (UpperFormula::Fisher, Some(fisher_upper(n))),
    ];
    let mut best: Option<UpperBound> = None;
    for (formula, value) in candidates {
        if let Some(value) = value {
            if best.map_or(true, |b| value < b.value) {
                best = Some(UpperBound { value, formula });
            }
        }
    }
    Ok(best.expect("fisher always applies"))
}

/// A lower-bound construction, before zero padding to the target length.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Construction {
    Pair,
    Trivial,
    /// `hadamard_code(k)` repeated `t` times.
    Hadamard { k: u32, t: u64 },
    /// `iterated_code(q, k)` repeated `t` times.
    Iterated { q: u64, k: u32, t: u64 },
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Construction::Pair => f.write_str("pair"),
            Construction::Trivial => f.write_str("trivial"),
            Construction::Hadamard { k, t } => {
                write!(f, "hadamard(k={k})")?;
                if t > 1 {
                    write!(f, " repeat({t})")?;
                }
                Ok(())
            }
            Construction::Iterated { q, k, t } => {
                write!(f, "iterated(q={q},k={k})")?;
                if t > 1 {
                    write!(f, " repeat({t})")?;
                }
                Ok(())
            }
        }
    }
}

impl Construction {
    /// Builds the code at length `n` and distance `d` and verifies it.
    pub fn materialize(&self, n: u64, d: u64) -> Result<Code> {
        let (n, d) = (n as usize, d as usize);
        let base = match *self {
            Construction::Pair => return pair_code(n, d),
            Construction::Trivial => return trivial_code(n, d),
            Construction::Hadamard { k, t } => repeat_code(&hadamard_code(k)?, t as usize)?,
            Construction::Iterated { q, k, t } => repeat_code(&iterated_code(q, k)?, t as usize)?,
        };
        let code = base.pad(n)?;
        debug_assert_eq!(code.certified_distance(), Some(d as u32));
        Ok(code)
    }
}

/// Search limits for [`best_lower`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Effort {
    /// Largest field order considered for iterated codes.
    pub max_q: u64,
    /// Largest iteration count `k` considered for iterated codes.
    pub max_iterations: u32,
    /// Whether to build and verify the winning code when it is small enough.
    pub materialize: bool,
}

impl Default for Effort {
    fn default() -> Self {
        Effort {
            max_q: 64,
            max_iterations: 3,
            materialize: true,
        }
    }
}

impl Effort {
    /// Closed-form sizes only, no materialization, unbounded field order.
    pub fn formula_only() -> Effort {
        Effort {
            max_q: u64::MAX,
            max_iterations: 3,
            materialize: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// The verified code itself.
    Code(Code),
    /// The construction chain, when the code is too large to build.
    Derivation(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LowerBound {
    pub value: u64,
    pub construction: Construction,
    pub certificate: Certificate,
}

impl LowerBound {
    /// e.g. `iterated(q=2,k=0) repeat(3) pad(20)`.
    pub fn describe(&self, n: u64) -> String {
        derivation(self.construction, n, base_length(self.construction, n))
    }
}

fn base_length(c: Construction, n: u64) -> u64 {
    match c {
        Construction::Pair | Construction::Trivial => n,
        Construction::Hadamard { k, t } => t << (k + 1),
        Construction::Iterated { q, k, t } => {
            IteratedParams::new(q, k).map_or(n, |p| (p.n as u64).saturating_mul(t))
        }
    }
}

fn derivation(c: Construction, n: u64, len: u64) -> String {
    if len < n {
        format!("{c} pad({n})")
    } else {
        c.to_string()
    }
}

/// Every applicable construction with its size, in tie-break order.
pub fn lower_candidates(n: u64, d: u64, effort: &Effort) -> Vec<(Construction, u64)> {
    let mut out = Vec::new();
    if d == 0 || d > n {
        return out;
    }
    if let Some(size) = trivial_size(n, d) {
        out.push((Construction::Trivial, size));
    }
    let k = d.trailing_zeros();
    if k >= 1 && n >= 2 * d {
        out.push((Construction::Hadamard { k, t: d >> k }, 2u64 << k));
    }
    if d % 2 == 0 {
        let divs = divisors(d);
        for j in 0..=effort.max_iterations {
            let e = (1u32 << (j + 1)) - 1;
            for &t in &divs {
                let inner = d / t;
                if inner % 2 != 0 {
                    continue;
                }
                let Some(q) = exact_root(inner / 2, e) else { continue };
                if q < 2 || q > effort.max_q || !is_prime_power(q) {
                    continue;
                }
                let Some(p) = IteratedParams::new(q, j) else { continue };
                if p.n.saturating_mul(t as u128) <= n as u128 {
                    out.push((Construction::Iterated { q, k: j, t }, p.s as u64));
                }
            }
        }
    }
    out.push((Construction::Pair, 2));
    out
}

/// Largest size among [`lower_candidates`]; earlier candidates win ties.
pub fn best_lower(n: u64, d: u64, effort: &Effort) -> Result<LowerBound> {
    check_range(n, d)?;
    let mut best: Option<(Construction, u64)> = None;
    for (c, size) in lower_candidates(n, d, effort) {
        if best.map_or(true, |(_, b)| size > b) {
            best = Some((c, size));
        }
    }
    let (construction, value) = best.expect("pair always applies");
    let fits = n <= materialize_limit() as u64 && (value as u128) * (n as u128) <= MATERIALIZE_CELL_LIMIT;
    let certificate = match (effort.materialize && fits).then(|| construction.materialize(n, d)) {
        Some(Ok(code)) => {
            debug_assert_eq!(code.size() as u64, value);
            Certificate::Code(code)
        }
        Some(Err(e)) => return Err(e),
        None => Certificate::Derivation(derivation(construction, n, base_length(construction, n))),
    };
    Ok(LowerBound {
        value,
        construction,
        certificate,
    })
}

/// Lower and upper bounds on `e_d(n)`, with the exact value when known.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub n: u64,
    pub d: u64,
    pub lower: LowerBound,
    pub upper: UpperBound,
    pub exact: Option<u64>,
}

impl BoundReport {
    pub fn compute(n: u64, d: u64, effort: &Effort) -> Result<BoundReport> {
        let lower = best_lower(n, d, effort)?;
        let upper = best_upper(n, d)?;
        let exact = exact_by_theory(n, d).or((lower.value == upper.value).then_some(lower.value));
        Ok(BoundReport {
            n,
            d,
            lower,
            upper,
            exact,
        })
    }

    /// Serializable view: `{n, d, lower:{value, certificate}, upper:{value, formula}, exact?}`.
    pub fn wire(&self) -> BoundReportWire {
        BoundReportWire {
            n: self.n,
            d: self.d,
            lower: LowerWire {
                value: self.lower.value,
                certificate: CertificateWire {
                    construction: self.lower.describe(self.n),
                    verified: matches!(self.lower.certificate, Certificate::Code(_)),
                },
            },
            upper: UpperWire {
                value: self.upper.value,
                formula: self.upper.formula,
            },
            exact: self.exact,
        }
    }
}

impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verified = match self.lower.certificate {
            Certificate::Code(_) => "verified",
            Certificate::Derivation(_) => "derived",
        };
        writeln!(f, "n={} d={}", self.n, self.d)?;
        writeln!(f, "lower {} ({}; {verified})", self.lower.value, self.lower.describe(self.n))?;
        writeln!(f, "upper {} ({})", self.upper.value, self.upper.formula)?;
        match self.exact {
            Some(e) => writeln!(f, "exact {e}"),
            None => writeln!(f, "exact unknown"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundReportWire {
    pub n: u64,
    pub d: u64,
    pub lower: LowerWire,
    pub upper: UpperWire,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LowerWire {
    pub value: u64,
    pub certificate: CertificateWire,
}

#[derive(Clone, Debug, Serialize)]
pub struct CertificateWire {
    pub construction: String,
    pub verified: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct UpperWire {
    pub value: u64,
    pub formula: UpperFormula,
}


#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn lower_at_most_upper((n, d) in (1u64..1_000_000).prop_flat_map(|n| (Just(n), 1..=n))) {
            let lower = best_lower(n, d, &Effort::formula_only()).unwrap();
            let upper = best_upper(n, d).unwrap();
            prop_assert!(lower.value >= 2 && lower.value <= upper.value);
            prop_assert!(upper.value <= n + 1);
        }

        #[test]
        fn materialized_certificate_matches((n, d) in (1u64..120).prop_flat_map(|n| (Just(n), 1..=n))) {
            let lower = best_lower(n, d, &Effort::default()).unwrap();
            match lower.certificate {
                Certificate::Code(c) => {
                    prop_assert_eq!(c.size() as u64, lower.value);
                    prop_assert_eq!(c.len() as u64, n);
                    prop_assert!(c.verify_equidistant(d as u32).is_ok());
                }
                Certificate::Derivation(_) => prop_assert!(false, "small codes are materialized"),
            }
        }
    }
}
