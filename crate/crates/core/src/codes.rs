//! Codewords, codes and equidistance verification.
//!
//! A [`Codeword`] is a packed vertex of `Q_n`. A [`Code`] is an ordered list
//! of distinct codewords of a common length; it may carry a certified
//! common pairwise distance, which is only ever set after
//! [`Code::verify_equidistant`] succeeded.
//!
//! The text format is line oriented:
//!
//! ```text
//! n=<n> d=<d|-> m=<m>
//! <m lines of exactly n characters from {0,1}>
//! ```
//!
//! with every line LF-terminated and no trailing blank line.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};

const WORD_BITS: usize = 64;

/// Codes with at least this many words are verified in parallel.
const PARALLEL_VERIFY_MIN: usize = 512;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Codeword {
    n: usize,
    blocks: Vec<u64>,
}

impl Codeword {
    /// The all-zero word of length `n`.
    pub fn zeros(n: usize) -> Codeword {
        Codeword {
            n,
            blocks: vec![0; n.div_ceil(WORD_BITS)],
        }
    }

    /// Word of length `n` with ones exactly at `positions`.
    pub fn from_support(n: usize, positions: impl IntoIterator<Item = usize>) -> Codeword {
        let mut w = Codeword::zeros(n);
        for i in positions {
            w.set(i, true);
        }
        w
    }

    pub fn from_bits(bits: &[bool]) -> Codeword {
        Codeword::from_support(bits.len(), bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i))
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.n, "bit {i} out of range for length {}", self.n);
        (self.blocks[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.n, "bit {i} out of range for length {}", self.n);
        let mask = 1u64 << (i % WORD_BITS);
        if value {
            self.blocks[i / WORD_BITS] |= mask;
        } else {
            self.blocks[i / WORD_BITS] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        let v = self.get(i);
        self.set(i, !v);
    }

    pub fn weight(&self) -> u32 {
        self.blocks.iter().map(|b| b.count_ones()).sum()
    }

    pub fn bits(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.n).map(|i| self.get(i))
    }

    /// Packed 64-bit blocks, bit `i` at `blocks[i / 64] >> (i % 64)`.
    pub fn blocks(&self) -> &[u64] {
        &self.blocks
    }

    /// Hamming distance, assuming equal lengths.
    #[inline]
    pub(crate) fn distance_unchecked(&self, other: &Codeword) -> u32 {
        self.blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| (a ^ b).count_ones())
            .sum()
    }

    pub fn distance(&self, other: &Codeword) -> Result<u32> {
        if self.n != other.n {
            return Err(Error::LengthMismatch(self.n, other.n));
        }
        Ok(self.distance_unchecked(other))
    }

    /// Appends `other`'s bits after this word's bits.
    pub fn append(&mut self, other: &Codeword) {
        let shift = self.n % WORD_BITS;
        let new_n = self.n + other.n;
        if shift == 0 {
            self.blocks.truncate(self.n / WORD_BITS);
            self.blocks.extend_from_slice(&other.blocks);
        } else {
            for &b in &other.blocks {
                let last = self.blocks.len() - 1;
                self.blocks[last] |= b << shift;
                self.blocks.push(b >> (WORD_BITS - shift));
            }
        }
        self.blocks.truncate(new_n.div_ceil(WORD_BITS));
        self.n = new_n;
    }

    /// Juxtaposition `self ‖ other`.
    pub fn concat(&self, other: &Codeword) -> Codeword {
        let mut w = self.clone();
        w.append(other);
        w
    }

    /// Extends with zeros to length `n_new`.
    pub fn padded(&self, n_new: usize) -> Result<Codeword> {
        if n_new < self.n {
            return Err(Error::BadLength {
                from: self.n,
                to: n_new,
            });
        }
        let mut w = self.clone();
        w.n = n_new;
        w.blocks.resize(n_new.div_ceil(WORD_BITS), 0);
        Ok(w)
    }
}

impl fmt::Display for Codeword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.bits().map(|b| if b { '1' } else { '0' }).collect();
        f.write_str(&s)
    }
}

impl fmt::Debug for Codeword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Codeword({self})")
    }
}

impl FromStr for Codeword {
    type Err = Error;

    fn from_str(s: &str) -> Result<Codeword> {
        let mut bits = Vec::with_capacity(s.len());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => bits.push(false),
                '1' => bits.push(true),
                other => {
                    return Err(Error::Parse {
                        line: 0,
                        msg: format!("unexpected character {other:?} at column {}", i + 1),
                    })
                }
            }
        }
        Ok(Codeword::from_bits(&bits))
    }
}

/// `ρ(x, y) = |{i : x_i ≠ y_i}|`.
pub fn hamming_distance(x: &Codeword, y: &Codeword) -> Result<u32> {
    x.distance(y)
}

/// Outcome of an equidistance check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verification {
    Ok,
    /// First pair `(i, j)`, `i < j`, in lexicographic order whose distance differs.
    Violation { i: usize, j: usize, distance: u32 },
}

impl Verification {
    pub fn is_ok(&self) -> bool {
        matches!(self, Verification::Ok)
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Code {
    n: usize,
    words: Vec<Codeword>,
    certified: Option<u32>,
}

impl fmt::Debug for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Code")
            .field("n", &self.n)
            .field("m", &self.words.len())
            .field("d", &self.certified)
            .finish()
    }
}

impl Code {
    /// Uncertified code from distinct words of length `n >= 1`.
    pub fn new(n: usize, words: Vec<Codeword>) -> Result<Code> {
        if n == 0 {
            return Err(Error::BadParams("code length must be at least 1".into()));
        }
        if words.is_empty() {
            return Err(Error::EmptyCode);
        }
        if let Some(w) = words.iter().find(|w| w.len() != n) {
            return Err(Error::LengthMismatch(n, w.len()));
        }
        let mut seen: HashMap<&Codeword, usize> = HashMap::with_capacity(words.len());
        for (j, w) in words.iter().enumerate() {
            if let Some(&i) = seen.get(w) {
                return Err(Error::DuplicateWord(i, j));
            }
            seen.insert(w, j);
        }
        Ok(Code {
            n,
            words,
            certified: None,
        })
    }

    /// Builds and certifies in one step.
    pub fn certified(n: usize, words: Vec<Codeword>, d: u32) -> Result<Code> {
        Code::new(n, words)?.certify(d)
    }

    /// Word length `n`; never zero.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.n
    }

    /// Number of codewords, `m`.
    pub fn size(&self) -> usize {
        self.words.len()
    }

    pub fn words(&self) -> &[Codeword] {
        &self.words
    }

    pub fn certified_distance(&self) -> Option<u32> {
        self.certified
    }

    fn require_certified(&self) -> Result<u32> {
        self.certified.ok_or(Error::NotCertified)
    }

    pub fn verify_equidistant(&self, d: u32) -> Verification {
        let words = &self.words;
        let first_bad = |i: usize| {
            words[i + 1..].iter().enumerate().find_map(|(off, w)| {
                let dist = words[i].distance_unchecked(w);
                (dist != d).then_some((i, i + 1 + off, dist))
            })
        };
        let found = if words.len() >= PARALLEL_VERIFY_MIN {
            (0..words.len()).into_par_iter().find_map_first(first_bad)
        } else {
            (0..words.len()).find_map(first_bad)
        };
        match found {
            None => Verification::Ok,
            Some((i, j, distance)) => Verification::Violation { i, j, distance },
        }
    }

    /// Sets the certified distance after a successful verification.
    pub fn certify(mut self, d: u32) -> Result<Code> {
        match self.verify_equidistant(d) {
            Verification::Ok => {
                self.certified = Some(d);
                Ok(self)
            }
            Verification::Violation { i, j, distance } => Err(Error::NotEquidistant {
                i,
                j,
                actual: distance,
                expected: d,
            }),
        }
    }

    /// Zero-extends every word to length `n_new`.
    pub fn pad(&self, n_new: usize) -> Result<Code> {
        let words = self
            .words
            .iter()
            .map(|w| w.padded(n_new))
            .collect::<Result<Vec<_>>>()?;
        Ok(Code {
            n: n_new,
            words,
            certified: self.certified,
        })
    }

    /// Parses the text format; the declared distance is returned separately
    /// and the code itself is left uncertified.
    pub fn parse_unverified(text: &str) -> Result<(Code, Option<u32>)> {
        let mut lines = text.split('\n');
        let header = lines.next().unwrap_or_default();
        let (n, d, m) = parse_header(header)?;
        let mut words = Vec::with_capacity(m);
        for k in 0..m {
            let line_no = k + 2;
            let line = lines.next().ok_or_else(|| Error::Parse {
                line: line_no,
                msg: format!("expected {m} words, found {k}"),
            })?;
            if line.len() != n {
                return Err(Error::Parse {
                    line: line_no,
                    msg: format!("expected {n} characters, found {}", line.len()),
                });
            }
            let w: Codeword = line.parse().map_err(|e| match e {
                Error::Parse { msg, .. } => Error::Parse { line: line_no, msg },
                other => other,
            })?;
            words.push(w);
        }
        // Exactly one terminating LF after the last word.
        let rest: Vec<&str> = lines.collect();
        if rest != [""] {
            return Err(Error::Parse {
                line: m + 2,
                msg: "expected end of file after the last word (single trailing LF)".into(),
            });
        }
        Ok((Code::new(n, words)?, d))
    }

    /// Serializes to the text format.
    pub fn to_text(&self) -> String {
        let d = self
            .certified
            .map_or_else(|| "-".to_string(), |d| d.to_string());
        let mut out = format!("n={} d={} m={}\n", self.n, d, self.words.len());
        for w in &self.words {
            out.push_str(&w.to_string());
            out.push('\n');
        }
        out
    }
}

impl FromStr for Code {
    type Err = Error;

    /// Parses and, when the header declares a distance, verifies it.
    fn from_str(s: &str) -> Result<Code> {
        let (code, d) = Code::parse_unverified(s)?;
        match d {
            Some(d) => code.certify(d),
            None => Ok(code),
        }
    }
}

fn parse_header(line: &str) -> Result<(usize, Option<u32>, usize)> {
    let err = |msg: &str| Error::Parse {
        line: 1,
        msg: msg.to_string(),
    };
    let fields: Vec<&str> = line.split(' ').collect();
    let [nf, df, mf] = fields[..] else {
        return Err(err("header must be `n=<n> d=<d|-> m=<m>`"));
    };
    let value = |field: &str, key: &str| -> Result<String> {
        field
            .strip_prefix(key)
            .map(str::to_string)
            .ok_or_else(|| err(&format!("expected `{key}...`, found `{field}`")))
    };
    let n: usize = value(nf, "n=")?.parse().map_err(|_| err("bad n"))?;
    let d = match value(df, "d=")?.as_str() {
        "-" => None,
        v => Some(v.parse::<u32>().map_err(|_| err("bad d"))?),
    };
    let m: usize = value(mf, "m=")?.parse().map_err(|_| err("bad m"))?;
    Ok((n, d, m))
}

/// Juxtaposes the first `min(m1, m2)` words of two certified codes; the
/// result is certified at `d1 + d2`.
pub fn concat_codes(a: &Code, b: &Code) -> Result<Code> {
    let d = a.require_certified()? + b.require_certified()?;
    let words: Vec<Codeword> = a
        .words
        .iter()
        .zip(&b.words)
        .map(|(x, y)| x.concat(y))
        .collect();
    Code::certified(a.n + b.n, words, d)
}

/// `t`-fold self-concatenation: length `t·n`, distance `t·d`, same size.
pub fn repeat_code(c: &Code, t: usize) -> Result<Code> {
    let d = c.require_certified()?;
    if t == 0 {
        return Err(Error::BadParams("repeat count must be positive".into()));
    }
    let words: Vec<Codeword> = c
        .words
        .iter()
        .map(|w| {
            let mut out = w.clone();
            for _ in 1..t {
                out.append(w);
            }
            out
        })
        .collect();
    Code::certified(c.n * t, words, d * t as u32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> Codeword {
        s.parse().unwrap()
    }

    fn code(ws: &[&str]) -> Code {
        Code::new(ws[0].len(), ws.iter().map(|s| w(s)).collect()).unwrap()
    }

    fn naive_distance(x: &Codeword, y: &Codeword) -> u32 {
        x.bits().zip(y.bits()).filter(|(a, b)| a != b).count() as u32
    }

    #[test]
    fn distances() {
        assert_eq!(hamming_distance(&w("0000"), &w("0000")).unwrap(), 0);
        assert_eq!(hamming_distance(&w("1100"), &w("0110")).unwrap(), 2);
        assert_eq!(
            hamming_distance(&w("110"), &w("0110")).unwrap_err(),
            Error::LengthMismatch(3, 4)
        );
    }

    #[test]
    fn verify_examples() {
        assert!(code(&["000"]).verify_equidistant(3).is_ok());
        let unit = code(&["100", "010", "001"]);
        assert!(unit.verify_equidistant(2).is_ok());
        assert_eq!(
            unit.verify_equidistant(1),
            Verification::Violation { i: 0, j: 1, distance: 2 }
        );
    }

    #[test]
    fn rejects_duplicates_and_empty() {
        assert_eq!(
            Code::new(3, vec![w("101"), w("011"), w("101")]).unwrap_err(),
            Error::DuplicateWord(0, 2)
        );
        assert_eq!(Code::new(3, vec![]).unwrap_err(), Error::EmptyCode);
    }

    #[test]
    fn pad_examples() {
        let c = code(&["101"]).certify(1).unwrap();
        let p = c.pad(5).unwrap();
        assert_eq!(p.words()[0].to_string(), "10100");
        assert_eq!(p.certified_distance(), Some(1));
        assert_eq!(c.pad(3).unwrap(), c);
        assert!(matches!(c.pad(2), Err(Error::BadLength { from: 3, to: 2 })));
    }

    #[test]
    fn concat_and_repeat() {
        let one = code(&["11"]).certify(2).unwrap();
        let unit = code(&["100", "010", "001"]).certify(2).unwrap();
        let c = concat_codes(&unit, &one).unwrap();
        assert_eq!(c.size(), 1);
        assert_eq!(c.len(), 5);

        let r = repeat_code(&unit, 2).unwrap();
        assert_eq!((r.size(), r.len(), r.certified_distance()), (3, 6, Some(4)));
        assert_eq!(repeat_code(&unit, 1).unwrap(), unit);
        assert_eq!(repeat_code(&code(&["10", "01"]), 2).unwrap_err(), Error::NotCertified);
        assert_eq!(
            concat_codes(&code(&["10", "01"]), &unit).unwrap_err(),
            Error::NotCertified
        );
    }

    #[test]
    fn append_across_block_boundaries() {
        let a = Codeword::from_support(63, [0, 62]);
        let b = Codeword::from_support(70, [0, 1, 69]);
        let c = a.concat(&b);
        assert_eq!(c.len(), 133);
        let ones: Vec<usize> = (0..133).filter(|&i| c.get(i)).collect();
        assert_eq!(ones, vec![0, 62, 63, 64, 132]);
        assert_eq!(c.blocks().len(), 3);
    }

    #[test]
    fn text_format_round_trip() {
        let c = code(&["1100", "1010", "0110"]).certify(2).unwrap();
        let text = c.to_text();
        assert_eq!(text, "n=4 d=2 m=3\n1100\n1010\n0110\n");
        assert_eq!(text.parse::<Code>().unwrap(), c);

        let unc = code(&["10", "11"]);
        assert_eq!(unc.to_text(), "n=2 d=- m=2\n10\n11\n");
        assert_eq!(unc.to_text().parse::<Code>().unwrap(), unc);
    }

    #[test]
    fn text_format_rejects_malformed() {
        for bad in [
            "n=2 d=1 m=2\n10\n01",         // missing final LF
            "n=2 d=1 m=2\n10\n01\n\n",     // trailing blank line
            "n=2 d=1 m=2\n10\n",           // too few words
            "n=2 d=1 m=1\n102\n",          // wrong length
            "n=2 d=1 m=1\n1x\n",           // bad character
            "n=2 m=1\n10\n",               // header
            "n=2  d=1 m=1\n10\n",          // header spacing
        ] {
            assert!(matches!(Code::parse_unverified(bad), Err(Error::Parse { .. })), "{bad:?}");
        }
        // well-formed but not equidistant at the declared distance
        let err = "n=3 d=2 m=3\n110\n101\n111\n".parse::<Code>().unwrap_err();
        assert!(matches!(err, Error::NotEquidistant { i: 0, j: 2, .. }));
    }

    fn certified_code() -> impl Strategy<Value = Code> {
        // random disjoint-support code padded by random words: words with
        // disjoint supports of equal weight are equidistant.
        (1usize..6, 1usize..6, 0usize..5, proptest::collection::vec(any::<bool>(), 0..12)).prop_map(
            |(m, k, extra, prefix)| {
                let n = m * k + extra + prefix.len();
                let prefix = Codeword::from_bits(&prefix);
                let words = (0..m)
                    .map(|i| {
                        let tail = Codeword::from_support(m * k + extra, i * k..(i + 1) * k);
                        prefix.concat(&tail)
                    })
                    .collect();
                let d = if m == 1 { 1 } else { 2 * k as u32 };
                Code::certified(n, words, d).unwrap()
            },
        )
    }

    proptest! {
        #[test]
        fn packed_distance_matches_naive(a in proptest::collection::vec(any::<bool>(), 1..150),
                                         seed in proptest::collection::vec(any::<bool>(), 150)) {
            let x = Codeword::from_bits(&a);
            let y = Codeword::from_bits(&seed[..a.len()]);
            prop_assert_eq!(x.distance(&y).unwrap(), naive_distance(&x, &y));
        }

        #[test]
        fn metric_and_parity(v in proptest::collection::vec(any::<(bool, bool, bool)>(), 1..100)) {
            let x = Codeword::from_bits(&v.iter().map(|t| t.0).collect::<Vec<_>>());
            let y = Codeword::from_bits(&v.iter().map(|t| t.1).collect::<Vec<_>>());
            let z = Codeword::from_bits(&v.iter().map(|t| t.2).collect::<Vec<_>>());
            let (xy, yz, xz) = (x.distance(&y).unwrap(), y.distance(&z).unwrap(), x.distance(&z).unwrap());
            prop_assert_eq!(xy, y.distance(&x).unwrap());
            prop_assert!(xz <= xy + yz);
            prop_assert_eq!((xy + yz + xz) % 2, 0);
        }

        #[test]
        fn combinators_preserve_equidistance(a in certified_code(), b in certified_code(), t in 1usize..4, extra in 0usize..70) {
            let p = a.pad(a.len() + extra).unwrap();
            prop_assert!(p.verify_equidistant(a.certified_distance().unwrap()).is_ok());
            let r = repeat_code(&a, t).unwrap();
            prop_assert!(r.verify_equidistant(a.certified_distance().unwrap() * t as u32).is_ok());
            let c = concat_codes(&a, &b).unwrap();
            prop_assert_eq!(c.size(), a.size().min(b.size()));
            prop_assert_eq!(c.len(), a.len() + b.len());
        }

        #[test]
        fn text_round_trip(c in certified_code()) {
            prop_assert_eq!(c.to_text().parse::<Code>().unwrap(), c);
        }
    }
}
