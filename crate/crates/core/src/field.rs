//! Finite fields `GF(p^m)` in polynomial basis.
//!
//! Elements are stored as their index in the canonical enumeration: the
//! coefficient vector `(c_0, ..., c_{m-1})` of `c_0 + c_1 x + ...` maps to
//! `c_0 + c_1 p + ... + c_{m-1} p^{m-1}`. Index 0 is zero and index 1 is one.
//! Fields up to order 256 use precomputed addition and multiplication tables.

use std::fmt;

use crate::error::{Error, Result};
use crate::numbers::prime_power;

const TABLE_LIMIT: u32 = 256;
const MAX_ORDER: u64 = 1 << 16;

/// An element of a [`Field`], identified by its enumeration index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);

    /// Position of this element in [`Field::enumerate`].
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone)]
pub struct Field {
    p: u32,
    m: u32,
    q: u32,
    /// Monic modulus, low-degree coefficient first, length `m + 1`.
    modulus: Vec<u32>,
    tables: Option<Tables>,
}

#[derive(Clone)]
struct Tables {
    add: Vec<u16>,
    mul: Vec<u16>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.p)
            .field("m", &self.m)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl Field {
    /// Builds `GF(q)`. The modulus is the lexicographically smallest monic
    /// irreducible polynomial of degree `m`, comparing coefficients from the
    /// constant term upwards.
    pub fn new(q: u64) -> Result<Field> {
        let (p, m) = prime_power(q).ok_or(Error::NotAPrimePower(q))?;
        if q > MAX_ORDER {
            return Err(Error::FieldTooLarge(q));
        }
        let (p, q) = (p as u32, q as u32);
        let modulus = if m == 1 {
            vec![0, 1]
        } else {
            smallest_irreducible(p, m as usize)
        };
        let mut field = Field {
            p,
            m,
            q,
            modulus,
            tables: None,
        };
        if q <= TABLE_LIMIT {
            field.tables = Some(field.build_tables());
        }
        Ok(field)
    }

    pub fn order(&self) -> u64 {
        self.q as u64
    }

    pub fn characteristic(&self) -> u64 {
        self.p as u64
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    /// Coefficients of the modulus, constant term first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement(0)
    }

    pub fn one(&self) -> FieldElement {
        FieldElement(1)
    }

    /// The element at `index` in the canonical enumeration.
    pub fn element(&self, index: usize) -> Option<FieldElement> {
        (index < self.q as usize).then_some(FieldElement(index as u32))
    }

    /// Element with the given polynomial coefficients (constant term first).
    pub fn from_coeffs(&self, coeffs: &[u32]) -> Option<FieldElement> {
        if coeffs.len() > self.m as usize || coeffs.iter().any(|&c| c >= self.p) {
            return None;
        }
        Some(FieldElement(self.pack(coeffs)))
    }

    pub fn coeffs(&self, a: FieldElement) -> Vec<u32> {
        self.unpack(a.0)
    }

    /// All `q` elements in canonical order, starting with zero.
    pub fn enumerate(&self) -> Vec<FieldElement> {
        (0..self.q).map(FieldElement).collect()
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        match &self.tables {
            Some(t) => FieldElement(t.add[self.slot(a, b)] as u32),
            None => FieldElement(self.add_raw(a.0, b.0)),
        }
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        let c: Vec<u32> = self
            .unpack(a.0)
            .into_iter()
            .map(|c| (self.p - c) % self.p)
            .collect();
        FieldElement(self.pack(&c))
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.p == 2 {
            return FieldElement(a.0 ^ b.0);
        }
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        match &self.tables {
            Some(t) => FieldElement(t.mul[self.slot(a, b)] as u32),
            None => FieldElement(self.mul_raw(a.0, b.0)),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: FieldElement) -> Option<FieldElement> {
        if a.0 == 0 {
            return None;
        }
        // a^(q-2)
        let mut result = self.one();
        let mut base = a;
        let mut e = self.q - 2;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        Some(result)
    }

    fn slot(&self, a: FieldElement, b: FieldElement) -> usize {
        a.0 as usize * self.q as usize + b.0 as usize
    }

    fn unpack(&self, mut v: u32) -> Vec<u32> {
        let mut c = vec![0; self.m as usize];
        for slot in c.iter_mut() {
            *slot = v % self.p;
            v /= self.p;
        }
        c
    }

    fn pack(&self, c: &[u32]) -> u32 {
        c.iter().rev().fold(0, |acc, &x| acc * self.p + x)
    }

    fn add_raw(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        let (ca, cb) = (self.unpack(a), self.unpack(b));
        let c: Vec<u32> = ca.iter().zip(&cb).map(|(x, y)| (x + y) % self.p).collect();
        self.pack(&c)
    }

    fn mul_raw(&self, a: u32, b: u32) -> u32 {
        let p = self.p as u64;
        let (ca, cb) = (self.unpack(a), self.unpack(b));
        let m = self.m as usize;
        let mut prod = vec![0u64; 2 * m];
        for (i, &x) in ca.iter().enumerate() {
            for (j, &y) in cb.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        // reduce by the monic modulus from the top degree down
        for deg in (m..2 * m).rev() {
            let lead = prod[deg];
            if lead == 0 {
                continue;
            }
            for k in 0..=m {
                let sub = lead * self.modulus[k] as u64 % p;
                prod[deg - m + k] = (prod[deg - m + k] + p - sub) % p;
            }
        }
        let c: Vec<u32> = prod[..m].iter().map(|&x| x as u32).collect();
        self.pack(&c)
    }

    fn build_tables(&self) -> Tables {
        let q = self.q as usize;
        let mut add = vec![0u16; q * q];
        let mut mul = vec![0u16; q * q];
        for a in 0..self.q {
            for b in a..self.q {
                let s = self.add_raw(a, b) as u16;
                let t = self.mul_raw(a, b) as u16;
                let (i, j) = (a as usize, b as usize);
                add[i * q + j] = s;
                add[j * q + i] = s;
                mul[i * q + j] = t;
                mul[j * q + i] = t;
            }
        }
        Tables { add, mul }
    }
}

/// Remainder of `num` modulo a monic `den` over `GF(p)`, both constant term first.
fn poly_rem(num: &[u32], den: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u32> = num.to_vec();
    let dd = den.len() - 1;
    while r.len() > dd {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dd;
        if lead != 0 {
            for (k, &c) in den.iter().enumerate() {
                let sub = (lead as u64 * c as u64 % p as u64) as u32;
                r[shift + k] = (r[shift + k] + p - sub) % p;
            }
        }
        r.pop();
    }
    r
}

/// Monic polynomials of degree `deg`, in lexicographic order of their
/// lower coefficients `(c_0, c_1, ..., c_{deg-1})`.
fn monic_polys(p: u32, deg: usize) -> impl Iterator<Item = Vec<u32>> {
    let count = (p as u64).pow(deg as u32);
    (0..count).map(move |mut v| {
        let mut c = vec![0u32; deg + 1];
        // c_0 is the most significant digit so the order is lexicographic.
        for slot in c[..deg].iter_mut().rev() {
            *slot = (v % p as u64) as u32;
            v /= p as u64;
        }
        c[deg] = 1;
        c
    })
}

/// Trial division against every monic polynomial of degree `1..=deg/2`.
pub(crate) fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let deg = poly.len() - 1;
    (1..=deg / 2).all(|k| monic_polys(p, k).all(|f| poly_rem(poly, &f, p).iter().any(|&c| c != 0)))
}

fn smallest_irreducible(p: u32, m: usize) -> Vec<u32> {
    monic_polys(p, m)
        .find(|f| is_irreducible(f, p))
        .expect("an irreducible polynomial exists in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::prime_powers_up_to;

    #[test]
    fn small_fields() {
        let gf2 = Field::new(2).unwrap();
        assert_eq!(gf2.modulus(), &[0, 1]);
        assert_eq!(gf2.enumerate().len(), 2);

        let gf4 = Field::new(4).unwrap();
        assert_eq!(gf4.modulus(), &[1, 1, 1]);
        let elems = gf4.enumerate();
        let coeffs: Vec<_> = elems.iter().map(|&e| gf4.coeffs(e)).collect();
        assert_eq!(coeffs, vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]]);

        let gf3 = Field::new(3).unwrap();
        assert_eq!(gf3.enumerate().iter().map(|e| e.index()).collect::<Vec<_>>(), vec![0, 1, 2]);
    }

    #[test]
    fn not_prime_powers() {
        assert_eq!(Field::new(6).unwrap_err(), Error::NotAPrimePower(6));
        assert_eq!(Field::new(1).unwrap_err(), Error::NotAPrimePower(1));
        assert_eq!(Field::new(0).unwrap_err(), Error::NotAPrimePower(0));
        assert_eq!(Field::new(1 << 17).unwrap_err(), Error::FieldTooLarge(1 << 17));
    }

    #[test]
    fn gf4_quadratic_is_the_only_irreducible() {
        // enumerate all four monic quadratics over GF(2) and factor by hand:
        // x^2 = x*x, x^2+1 = (x+1)^2, x^2+x = x(x+1), x^2+x+1 has no root.
        let irreducible: Vec<Vec<u32>> = monic_polys(2, 2).filter(|f| is_irreducible(f, 2)).collect();
        assert_eq!(irreducible, vec![vec![1, 1, 1]]);
        for f in monic_polys(2, 2) {
            let has_root = (0..2u32).any(|x| (f[0] + f[1] * x + x * x) % 2 == 0);
            assert_eq!(has_root, !is_irreducible(&f, 2));
        }
    }

    #[test]
    fn named_products() {
        let gf4 = Field::new(4).unwrap();
        let x = gf4.from_coeffs(&[0, 1]).unwrap();
        let x1 = gf4.from_coeffs(&[1, 1]).unwrap();
        assert_eq!(gf4.mul(x, x), x1);
        for a in gf4.enumerate() {
            assert_eq!(gf4.sub(a, a), gf4.zero());
        }
        let gf5 = Field::new(5).unwrap();
        let e = |i| gf5.element(i).unwrap();
        assert_eq!(gf5.mul(e(2), e(4)), e(3));
        assert_eq!(gf5.sub(e(1), e(3)), e(3));
    }

    #[test]
    fn modulus_choice_is_lexicographic() {
        // x^3 + x^2 + 1 has lower coefficients (1,0,1) < (1,1,0) of x^3 + x + 1.
        assert_eq!(Field::new(8).unwrap().modulus(), &[1, 0, 1, 1]);
        assert_eq!(Field::new(9).unwrap().modulus(), &[1, 0, 1]);
        assert_eq!(Field::new(16).unwrap().modulus(), &[1, 0, 0, 1, 1]);
    }

    #[test]
    fn table_and_polynomial_paths_agree() {
        let f = Field::new(256).unwrap();
        for a in (0..256).step_by(7) {
            for b in (0..256).step_by(5) {
                assert_eq!(f.mul_raw(a, b), f.mul(FieldElement(a), FieldElement(b)).0);
                assert_eq!(f.add_raw(a, b), f.add(FieldElement(a), FieldElement(b)).0);
            }
        }
        let big = Field::new(1024).unwrap();
        assert!(big.tables.is_none());
        for a in big.enumerate().into_iter().skip(1).step_by(37) {
            assert_eq!(big.mul(a, big.inv(a).unwrap()), big.one());
        }
    }

    /// Exhaustive field axioms for every prime power up to 64.
    #[test]
    fn axioms_up_to_64() {
        for q in prime_powers_up_to(64) {
            let f = Field::new(q).unwrap();
            let els = f.enumerate();
            assert_eq!(els[0], f.zero());
            for &a in &els {
                assert_eq!(f.add(a, f.zero()), a);
                assert_eq!(f.mul(a, f.one()), a);
                assert_eq!(f.add(a, f.neg(a)), f.zero());
                if a != f.zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one(), "q={q}");
                }
                for &b in &els {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    assert_eq!(f.add(f.sub(a, b), b), a);
                }
            }
        }
    }

    #[test]
    fn unique_solution_of_scaled_difference() {
        for q in prime_powers_up_to(16) {
            let f = Field::new(q).unwrap();
            let els = f.enumerate();
            for &a in &els {
                for &b in els.iter().filter(|&&b| b != a) {
                    for &c in els.iter().skip(1) {
                        let diff = f.sub(a, b);
                        let count = els.iter().filter(|&&x| f.mul(c, x) == diff).count();
                        assert_eq!(count, 1);
                    }
                }
            }
        }
    }
}
