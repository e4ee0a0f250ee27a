//! Sweeps over the growth measures of `e_d(n)`.
//!
//! * mode `g`: `d = ⌊γn⌋`, measure `lower / n`;
//! * mode `h`: fixed `d`, measure `e / n`;
//! * mode `f`: `d = ⌊n^α⌋`, measure `log_n(lower)`;
//! * mode `slow`: `d` given by a callback, trivial lower bound only.
//!
//! Each row also carries the theoretical envelope for its parameter. The
//! lim-sup of a measure is approximated by the maximum over sampled `n`
//! ([`summarize`]), so the automatic schedules include the lengths at which
//! the constructions are tight.

use std::collections::BTreeSet;
use std::fmt::{self, Write as _};
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use num_rational::Ratio;
use rayon::prelude::*;

use crate::bounds::{best_lower, best_upper, Effort};
use crate::construct::{trivial_size, IteratedParams};
use crate::error::{Error, Result};
use crate::exact::exact_by_theory;
use crate::numbers::{ceil_div, floor_mul, floor_pow, min_n_reaching, prime_powers_up_to, rational_to_f64, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SweepMode {
    G,
    H,
    F,
    Slow,
}

impl fmt::Display for SweepMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SweepMode::G => "g",
            SweepMode::H => "h",
            SweepMode::F => "f",
            SweepMode::Slow => "slow",
        })
    }
}

impl FromStr for SweepMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<SweepMode> {
        match s {
            "g" => Ok(SweepMode::G),
            "h" => Ok(SweepMode::H),
            "f" => Ok(SweepMode::F),
            "slow" => Ok(SweepMode::Slow),
            _ => Err(Error::BadParams(format!("unknown sweep mode {s:?}"))),
        }
    }
}

/// Which lengths `n` a sweep samples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Schedule {
    /// Every `n` up to `n_max` for small `n`, then a geometric grid plus
    /// the lengths where the constructions are tight.
    Auto,
    /// Every `n` up to `n_max`.
    Dense,
    /// Exactly these lengths (those out of range are dropped).
    Explicit(Vec<u64>),
}

impl FromStr for Schedule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Schedule> {
        match s {
            "auto" => Ok(Schedule::Auto),
            "dense" => Ok(Schedule::Dense),
            _ => Err(Error::BadParams(format!("unknown schedule {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub mode: SweepMode,
    /// `γ`, `d` or `α`.
    pub parameter: Rational,
    pub n: u64,
    pub d: u64,
    pub lower: u64,
    pub upper: u64,
    pub measure: f64,
    /// Theoretical value of the measure's lim-sup (a lower bound on it
    /// where the exact value is unknown).
    pub envelope: Rational,
}

/// Best measure for one parameter over the tail of its schedule.
#[derive(Clone, Debug, PartialEq)]
pub struct Summary {
    pub mode: SweepMode,
    pub parameter: Rational,
    /// Smallest `n` taken into account.
    pub tail_from: u64,
    pub best_n: u64,
    pub best_measure: f64,
    pub envelope: Rational,
}

pub fn envelope_g(gamma: Rational) -> Rational {
    if gamma * 2 <= Rational::from_integer(1) {
        gamma * 2
    } else {
        Rational::from_integer(0)
    }
}

pub fn envelope_h(d: u64) -> Rational {
    if d % 2 == 0 {
        Ratio::new(2, d)
    } else {
        Rational::from_integer(0)
    }
}

/// `max(1-α, 2α)` for `α <= 1/2`; for `α` in `[1-2^-k, 1-2^-(k+1))`,
/// `max((1-α)2^k, α/(1-2^-(k+1)))`.
pub fn envelope_f(alpha: Rational) -> Rational {
    let one = Rational::from_integer(1);
    assert!(alpha > Rational::from_integer(0) && alpha < one, "α must lie in (0, 1)");
    if alpha * 2 <= one {
        return (one - alpha).max(alpha * 2);
    }
    let mut k = 1u32;
    while one - alpha <= Ratio::new(1, 1u64 << (k + 1)) {
        k += 1;
    }
    let a = (one - alpha) * (1u64 << k);
    let b = alpha / (one - Ratio::new(1, 1u64 << (k + 1)));
    a.max(b)
}

fn check_params(params: &[Rational], low_open: bool, high: Rational, high_open: bool, what: &str) -> Result<()> {
    for &p in params {
        let zero = Rational::from_integer(0);
        let ok = (if low_open { p > zero } else { p >= zero }) && (if high_open { p < high } else { p <= high });
        if !ok {
            return Err(Error::BadParams(format!("{what} {p} out of range")));
        }
    }
    Ok(())
}

fn geometric(from: u64, n_max: u64, out: &mut BTreeSet<u64>) {
    let mut n = from.max(1) as f64;
    while (n as u64) <= n_max {
        out.insert(n as u64);
        n = (n * 1.05).ceil().max(n + 1.0);
    }
}

fn dense(from: u64, to: u64, out: &mut BTreeSet<u64>) {
    out.extend(from..=to);
}

fn points(schedule: &Schedule, n_min: u64, n_max: u64, auto: impl FnOnce(&mut BTreeSet<u64>)) -> Vec<u64> {
    let mut set = BTreeSet::new();
    match schedule {
        Schedule::Dense => dense(n_min, n_max, &mut set),
        Schedule::Explicit(ns) => set.extend(ns.iter().copied()),
        Schedule::Auto => {
            dense(n_min, n_max.min(64), &mut set);
            geometric(64, n_max, &mut set);
            set.insert(n_max);
            auto(&mut set);
        }
    }
    set.into_iter().filter(|&n| n >= n_min && n <= n_max).collect()
}

fn bounds_row(mode: SweepMode, parameter: Rational, n: u64, d: u64, effort: &Effort, envelope: Rational) -> Result<SweepRow> {
    let lower = best_lower(n, d, effort)?.value;
    let upper = best_upper(n, d)?.value;
    Ok(SweepRow {
        mode,
        parameter,
        n,
        d,
        lower,
        upper,
        measure: lower as f64 / n as f64,
        envelope,
    })
}

fn collect(jobs: Vec<(Rational, u64)>, row: impl Fn(Rational, u64) -> Result<Option<SweepRow>> + Sync) -> Result<Vec<SweepRow>> {
    let rows: Result<Vec<Option<SweepRow>>> = jobs.into_par_iter().map(|(p, n)| row(p, n)).collect();
    let mut rows: Vec<SweepRow> = rows?.into_iter().flatten().collect();
    rows.sort_by(|a, b| a.parameter.cmp(&b.parameter).then(a.n.cmp(&b.n)));
    Ok(rows)
}

/// Mode `g`: `d = ⌊γn⌋` for each `γ` in `(0, 1]`, skipping `d = 0`.
pub fn sweep_g(gammas: &[Rational], n_max: u64, schedule: &Schedule, effort: &Effort) -> Result<Vec<SweepRow>> {
    check_params(gammas, true, Rational::from_integer(1), false, "γ")?;
    let mut jobs = Vec::new();
    for &gamma in gammas {
        let ns = points(schedule, 1, n_max, |set| {
            // n = ⌈2^k/γ⌉, where d = 2^k and hadamard codes fit
            let mut k = 0;
            while k < 63 {
                let n = ceil_div(1 << k, gamma);
                if n > n_max {
                    break;
                }
                set.insert(n);
                k += 1;
            }
        });
        jobs.extend(ns.into_iter().map(|n| (gamma, n)));
    }
    collect(jobs, |gamma, n| {
        let d = floor_mul(gamma, n);
        if d == 0 {
            return Ok(None);
        }
        bounds_row(SweepMode::G, gamma, n, d, effort, envelope_g(gamma)).map(Some)
    })
}

/// Mode `h`: `n = d ..= n_max` for each fixed `d`, with `e_d(n)` taken from
/// [`exact_by_theory`] where it applies.
pub fn sweep_h(ds: &[u64], n_max: u64, schedule: &Schedule, effort: &Effort) -> Result<Vec<SweepRow>> {
    if let Some(&d) = ds.iter().find(|&&d| d == 0) {
        return Err(Error::BadParams(format!("d = {d} out of range")));
    }
    let mut jobs = Vec::new();
    for &d in ds {
        let ns = points(schedule, d, n_max, |set| {
            if let Ok(t) = crate::bounds::deza_exact_threshold(d) {
                dense(d, t.min(n_max), set);
            }
        });
        jobs.extend(ns.into_iter().map(|n| (Rational::from_integer(d), n)));
    }
    collect(jobs, |p, n| {
        let d = p.to_integer();
        let envelope = envelope_h(d);
        match exact_by_theory(n, d) {
            Some(e) => Ok(Some(SweepRow {
                mode: SweepMode::H,
                parameter: p,
                n,
                d,
                lower: e,
                upper: e,
                measure: e as f64 / n as f64,
                envelope,
            })),
            None => bounds_row(SweepMode::H, p, n, d, effort, envelope).map(Some),
        }
    })
}

/// Lengths where the constructions behind `f(α)` are tight: for every
/// distance `D` reachable below `n_max`, the largest `n` with `⌊n^α⌋ = D`
/// (trivial codes), and the shortest `n >= base length` for repeated
/// iterated and Hadamard codes.
fn f_points(alpha: Rational, n_max: u64, max_q: u64, max_iterations: u32, set: &mut BTreeSet<u64>) {
    let d_max = floor_pow(n_max, alpha);
    let with_d = |d: u64, len: u64, set: &mut BTreeSet<u64>| {
        let Some(n) = min_n_reaching(d, alpha).map(|n| n.max(len)) else { return };
        if n <= n_max && floor_pow(n, alpha) == d {
            set.insert(n);
        }
    };
    for d in 1..=d_max {
        if let Some(n) = min_n_reaching(d + 1, alpha).map(|n| n - 1).filter(|&n| n <= n_max) {
            set.insert(n);
        }
        if d % 2 == 0 {
            with_d(d, 2 * d, set);
        }
    }
    for q in prime_powers_up_to((d_max / 2).min(max_q)) {
        for j in 0..=max_iterations {
            let Some(p) = IteratedParams::new(q, j) else { break };
            if p.d > d_max as u128 {
                break;
            }
            let (base_n, base_d) = (p.n as u64, p.d as u64);
            let mut t = 1;
            while t * base_d <= d_max {
                with_d(t * base_d, t * base_n, set);
                t += 1;
            }
        }
    }
}

/// Mode `f`: `d = ⌊n^α⌋` for each `α` in `(0, 1)`, measure `log_n(lower)`.
///
/// With [`Effort::formula_only`] the lower bounds are closed-form sizes;
/// with a materializing effort the winning codes are built and verified
/// when small enough.
pub fn sweep_f(alphas: &[Rational], n_max: u64, schedule: &Schedule, effort: &Effort) -> Result<Vec<SweepRow>> {
    check_params(alphas, true, Rational::from_integer(1), true, "α")?;
    let mut jobs = Vec::new();
    for &alpha in alphas {
        let ns = points(schedule, 2, n_max, |set| {
            f_points(alpha, n_max, effort.max_q, effort.max_iterations, set)
        });
        jobs.extend(ns.into_iter().map(|n| (alpha, n)));
    }
    collect(jobs, |alpha, n| {
        let d = floor_pow(n, alpha);
        let mut row = bounds_row(SweepMode::F, alpha, n, d, effort, envelope_f(alpha))?;
        row.measure = (row.lower as f64).ln() / (n as f64).ln();
        Ok(Some(row))
    })
}

/// Mode `slow`: `d = distance(n)` for each `n` in `ns`, lower bound from
/// trivial codes (or a pair) only. The parameter column holds `d`.
pub fn sweep_slow(ns: &[u64], distance: impl Fn(u64) -> u64 + Sync) -> Result<Vec<SweepRow>> {
    let jobs = ns.iter().map(|&n| (Rational::from_integer(0), n)).collect();
    collect(jobs, |_, n| {
        let d = distance(n);
        if d == 0 || d > n {
            return Ok(None);
        }
        let lower = trivial_size(n, d).unwrap_or(0).max(2);
        Ok(Some(SweepRow {
            mode: SweepMode::Slow,
            parameter: Rational::from_integer(d),
            n,
            d,
            lower,
            upper: best_upper(n, d)?.value,
            measure: lower as f64 / n as f64,
            envelope: Rational::from_integer(0),
        }))
    })
}

/// Largest measure per parameter over `n >= √n_top`, where `n_top` is the
/// largest sampled length; small `n` would otherwise dominate (`log_2 2 = 1`).
pub fn summarize(rows: &[SweepRow]) -> Vec<Summary> {
    let mut groups: Vec<(SweepMode, Rational, u64)> = Vec::new();
    for row in rows {
        match groups.iter_mut().find(|g| g.0 == row.mode && g.1 == row.parameter) {
            Some(g) => g.2 = g.2.max(row.n),
            None => groups.push((row.mode, row.parameter, row.n)),
        }
    }
    groups.sort();
    groups
        .into_iter()
        .map(|(mode, parameter, top)| {
            let tail_from = (1..=top).find(|&n| n * n >= top).unwrap_or(top);
            let best = rows
                .iter()
                .filter(|r| r.mode == mode && r.parameter == parameter && r.n >= tail_from)
                .fold(None::<&SweepRow>, |b, r| match b {
                    Some(b) if b.measure >= r.measure => Some(b),
                    _ => Some(r),
                })
                .expect("group is non-empty");
            Summary {
                mode,
                parameter,
                tail_from,
                best_n: best.n,
                best_measure: best.measure,
                envelope: best.envelope,
            }
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Svg,
    Gnuplot,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Format> {
        match s {
            "csv" => Ok(Format::Csv),
            "svg" => Ok(Format::Svg),
            "gnuplot" => Ok(Format::Gnuplot),
            _ => Err(Error::BadParams(format!("unknown format {s:?}"))),
        }
    }
}

pub const CSV_HEADER: &str = "mode,parameter,n,lower,upper,measure,envelope";

pub fn to_csv(rows: &[SweepRow]) -> Result<String> {
    if rows.is_empty() {
        return Err(Error::EmptyRows);
    }
    let mut s = String::new();
    writeln!(s, "{CSV_HEADER}").unwrap();
    for r in rows {
        writeln!(
            s,
            "{},{},{},{},{},{:.6},{:.6}",
            r.mode,
            r.parameter,
            r.n,
            r.lower,
            r.upper,
            r.measure,
            rational_to_f64(r.envelope)
        )
        .unwrap();
    }
    Ok(s)
}

fn envelope_at(mode: SweepMode, x: Rational) -> Option<Rational> {
    let zero = Rational::from_integer(0);
    let one = Rational::from_integer(1);
    match mode {
        SweepMode::G if x > zero && x <= one => Some(envelope_g(x)),
        SweepMode::F if x > zero && x < one => Some(envelope_f(x)),
        SweepMode::H if x.is_integer() && x > zero => Some(envelope_h(x.to_integer())),
        _ => None,
    }
}

/// Envelope samples across the parameter range, for plotting.
fn envelope_curve(rows: &[SweepRow]) -> Vec<(f64, f64)> {
    let mode = rows[0].mode;
    let lo = rows.iter().map(|r| r.parameter).min().unwrap();
    let hi = rows.iter().map(|r| r.parameter).max().unwrap();
    let xs: Vec<Rational> = match mode {
        SweepMode::F | SweepMode::G if lo < hi => {
            let steps = 512u64;
            (0..=steps).map(|i| lo + (hi - lo) * Ratio::new(i, steps)).collect()
        }
        _ => summarize(rows).iter().map(|s| s.parameter).collect(),
    };
    xs.into_iter()
        .filter_map(|x| envelope_at(mode, x).map(|y| (rational_to_f64(x), rational_to_f64(y))))
        .collect()
}

pub fn to_svg(rows: &[SweepRow]) -> Result<String> {
    if rows.is_empty() {
        return Err(Error::EmptyRows);
    }
    let (w, h, m) = (640.0, 480.0, 56.0);
    let points: Vec<(f64, f64)> = rows.iter().map(|r| (rational_to_f64(r.parameter), r.measure)).collect();
    let best: Vec<(f64, f64)> = summarize(rows)
        .iter()
        .map(|s| (rational_to_f64(s.parameter), s.best_measure))
        .collect();
    let curve = envelope_curve(rows);
    let all = points.iter().chain(&curve);
    let (mut x0, mut x1) = (f64::INFINITY, f64::NEG_INFINITY);
    let mut y1: f64 = 0.0;
    for &(x, y) in all {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y1 = y1.max(y);
    }
    if x1 - x0 < 1e-9 {
        x0 -= 0.5;
        x1 += 0.5;
    }
    let y1 = if y1 <= 0.0 { 1.0 } else { y1 * 1.05 };
    let sx = |x: f64| m + (x - x0) / (x1 - x0) * (w - 2.0 * m);
    let sy = |y: f64| h - m - y / y1 * (h - 2.0 * m);

    let mut s = String::new();
    writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#).unwrap();
    writeln!(s, r#"<rect width="{w}" height="{h}" fill="white"/>"#).unwrap();
    writeln!(
        s,
        r#"<path d="M{:.2} {:.2} L{:.2} {:.2} L{:.2} {:.2}" stroke="black" fill="none"/>"#,
        m,
        m,
        m,
        h - m,
        w - m,
        h - m
    )
    .unwrap();
    for i in 0..=4 {
        let x = x0 + (x1 - x0) * i as f64 / 4.0;
        let y = y1 * i as f64 / 4.0;
        writeln!(s, r#"<text x="{:.2}" y="{:.2}" font-size="11" text-anchor="middle">{x:.3}</text>"#, sx(x), h - m + 16.0).unwrap();
        writeln!(s, r#"<text x="{:.2}" y="{:.2}" font-size="11" text-anchor="end">{y:.3}</text>"#, m - 4.0, sy(y) + 4.0).unwrap();
    }
    let mode = rows[0].mode;
    let (xlabel, ylabel) = match mode {
        SweepMode::G => ("gamma", "e/n"),
        SweepMode::H | SweepMode::Slow => ("d", "e/n"),
        SweepMode::F => ("alpha", "log_n e"),
    };
    writeln!(s, r#"<text x="{:.2}" y="{:.2}" font-size="13" text-anchor="middle">{xlabel}</text>"#, w / 2.0, h - 12.0).unwrap();
    writeln!(s, r#"<text x="14" y="{:.2}" font-size="13" transform="rotate(-90 14 {:.2})" text-anchor="middle">{ylabel}</text>"#, h / 2.0, h / 2.0).unwrap();
    for &(x, y) in &points {
        writeln!(s, r##"<circle cx="{:.2}" cy="{:.2}" r="1.5" fill="#9bb7d4"/>"##, sx(x), sy(y)).unwrap();
    }
    for &(x, y) in &best {
        writeln!(s, r##"<circle cx="{:.2}" cy="{:.2}" r="3.5" fill="#1f4e9c"/>"##, sx(x), sy(y)).unwrap();
    }
    if curve.len() > 1 && matches!(mode, SweepMode::F | SweepMode::G) {
        let path: Vec<String> = curve.iter().map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y))).collect();
        writeln!(s, r##"<polyline points="{}" stroke="#c0392b" stroke-width="1.5" fill="none"/>"##, path.join(" ")).unwrap();
    } else {
        for &(x, y) in &curve {
            let (cx, cy) = (sx(x), sy(y));
            writeln!(s, r##"<path d="M{:.2} {:.2} H{:.2}" stroke="#c0392b" stroke-width="2"/>"##, cx - 6.0, cy, cx + 6.0).unwrap();
        }
    }
    writeln!(s, "</svg>").unwrap();
    Ok(s)
}

pub fn to_gnuplot(rows: &[SweepRow]) -> Result<String> {
    if rows.is_empty() {
        return Err(Error::EmptyRows);
    }
    let mut s = String::from("$rows << EOD\n");
    for r in rows {
        writeln!(s, "{} {:.6}", rational_to_f64(r.parameter), r.measure).unwrap();
    }
    s.push_str("EOD\n$envelope << EOD\n");
    for (x, y) in envelope_curve(rows) {
        writeln!(s, "{x:.6} {y:.6}").unwrap();
    }
    s.push_str("EOD\n");
    let xlabel = match rows[0].mode {
        SweepMode::G => "gamma",
        SweepMode::H | SweepMode::Slow => "d",
        SweepMode::F => "alpha",
    };
    writeln!(s, "set xlabel '{xlabel}'").unwrap();
    s.push_str("set key top left\n");
    s.push_str("plot $rows using 1:2 with points pt 7 ps 0.5 title 'measure', \\\n     $envelope using 1:2 with lines lw 2 title 'envelope'\n");
    Ok(s)
}

pub fn render(rows: &[SweepRow], format: Format) -> Result<String> {
    match format {
        Format::Csv => to_csv(rows),
        Format::Svg => to_svg(rows),
        Format::Gnuplot => to_gnuplot(rows),
    }
}

pub fn emit<W: Write>(rows: &[SweepRow], format: Format, mut out: W) -> Result<()> {
    out.write_all(render(rows, format)?.as_bytes())?;
    Ok(())
}

pub fn emit_to_path(rows: &[SweepRow], format: Format, path: &Path) -> Result<()> {
    let text = render(rows, format)?;
    std::fs::write(path, text)?;
    Ok(())
}


#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn g_rows_are_consistent(a in 1u64..20, extra in 0u64..20, n in 1u64..5000) {
            let gamma = Ratio::new(a, a + extra);
            let rows = sweep_g(&[gamma], n, &Schedule::Explicit(vec![n]), &Effort::formula_only()).unwrap();
            for row in &rows {
                prop_assert_eq!(row.d, floor_mul(gamma, n));
                prop_assert!(row.lower <= row.upper);
                prop_assert_eq!(row.measure, row.lower as f64 / n as f64);
            }
        }

        #[test]
        fn f_rows_are_consistent(a in 1u64..8, extra in 1u64..8, n in 2u64..10_000_000) {
            let alpha = Ratio::new(a, a + extra);
            let rows = sweep_f(&[alpha], n, &Schedule::Explicit(vec![n]), &Effort::formula_only()).unwrap();
            prop_assert_eq!(rows.len(), 1);
            prop_assert_eq!(rows[0].d, floor_pow(n, alpha));
            prop_assert!(rows[0].lower <= rows[0].upper);
            prop_assert_eq!(rows[0].envelope, envelope_f(alpha));
        }

        #[test]
        fn h_even_window(k in 1u64..6, extra in 0u64..2000) {
            let d = 2 * k;
            let n = crate::bounds::deza_exact_threshold(d).unwrap() + extra;
            let rows = sweep_h(&[d], n, &Schedule::Explicit(vec![n]), &Effort::formula_only()).unwrap();
            let m = rows[0].measure;
            prop_assert!(m <= 2.0 / d as f64 + 1e-12);
            prop_assert!(m >= 2.0 / d as f64 - 1.0 / n as f64 - 1e-12);
        }

        #[test]
        fn envelope_f_dominates_two_thirds(a in 1u64..1000, extra in 1u64..1000) {
            let alpha = Ratio::new(a, a + extra);
            prop_assert!(envelope_f(alpha) >= Ratio::new(2, 3));
        }
    }
}
