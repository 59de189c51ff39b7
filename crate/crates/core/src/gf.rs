//! Arithmetic in the finite field `GF(p^k)`.
//!
//! Elements are stored as base-`p` integers: the value
//! `c_0 + c_1 p + ... + c_{k-1} p^{k-1}` encodes the polynomial
//! `c_0 + c_1 x + ... + c_{k-1} x^{k-1}`. This makes an element double as an
//! index into `0..q`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::primes::prime_power_decomposition;
use crate::{Error, Result};

/// Orders up to this size get full multiplication and inverse tables.
pub const TABLE_LIMIT: u32 = 1 << 12;

/// Largest order accepted by [`Field::new`].
pub const MAX_ORDER: u64 = 1 << 20;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn value(self) -> u32 {
        self.0
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The field of order `q = p^k`, immutable after construction.
#[derive(Clone, PartialEq, Eq)]
pub struct Field {
    p: u32,
    k: u32,
    q: u32,
    /// Monic reduction polynomial, coefficients low degree first, length `k + 1`.
    modulus: Vec<u32>,
    mul_table: Option<Vec<u32>>,
    inv_table: Option<Vec<u32>>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.p)
            .field("k", &self.k)
            .field("q", &self.q)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl Field {
    /// Builds `GF(q)`.
    ///
    /// The reduction polynomial is the lexicographically smallest monic
    /// irreducible polynomial of degree `k` over `F_p`, comparing coefficients
    /// from the constant term upwards. For `k = 1` this is `x`, so the field is
    /// plain arithmetic mod `p`.
    pub fn new(q: u64) -> Result<Self> {
        let (p, k) = prime_power_decomposition(q).ok_or(Error::NotAPrimePower(q))?;
        if q > MAX_ORDER {
            return Err(Error::InvalidParameter("field order above 2^20"));
        }
        let (p, q) = (p as u32, q as u32);
        let modulus = smallest_irreducible(p, k);
        let mut field = Field {
            p,
            k,
            q,
            modulus,
            mul_table: None,
            inv_table: None,
        };
        if q <= TABLE_LIMIT {
            field.build_tables();
        }
        Ok(field)
    }

    fn build_tables(&mut self) {
        let q = self.q as usize;
        let mut mul = vec![0u32; q * q];
        for a in 0..q {
            for b in a..q {
                let c = self.poly_mul(a as u32, b as u32);
                mul[a * q + b] = c;
                mul[b * q + a] = c;
            }
        }
        let mut inv = vec![0u32; q];
        for a in 1..q {
            if inv[a] != 0 {
                continue;
            }
            let b = (1..q)
                .find(|&b| mul[a * q + b] == 1)
                .expect("nonzero element without inverse: modulus is reducible");
            inv[a] = b as u32;
            inv[b] = a as u32;
        }
        self.mul_table = Some(mul);
        self.inv_table = Some(inv);
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    /// Coefficients of the reduction polynomial, constant term first.
    pub fn reduction_polynomial(&self) -> &[u32] {
        &self.modulus
    }

    pub fn element(&self, value: u32) -> Result<FieldElement> {
        if value < self.q {
            Ok(FieldElement(value))
        } else {
            Err(Error::InvalidParameter("field element out of range"))
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q).map(FieldElement)
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.k == 1 {
            return FieldElement((a.0 + b.0) % self.p);
        }
        self.digitwise(a.0, b.0, |x, y| (x + y) % self.p)
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        if self.k == 1 {
            return FieldElement((self.p - a.0) % self.p);
        }
        self.digitwise(a.0, 0, |x, _| (self.p - x) % self.p)
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        match &self.mul_table {
            Some(t) => FieldElement(t[a.index() * self.q as usize + b.index()]),
            None => FieldElement(self.poly_mul(a.0, b.0)),
        }
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        match &self.inv_table {
            Some(t) => Ok(FieldElement(t[a.index()])),
            // a^(q-2) by square and multiply.
            None => Ok(self.pow(a, u64::from(self.q) - 2)),
        }
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut base = a;
        let mut acc = FieldElement::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, a: FieldElement) -> Result<u32> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let mut x = a;
        let mut ord = 1;
        while x != FieldElement::ONE {
            x = self.mul(x, a);
            ord += 1;
        }
        Ok(ord)
    }

    fn digitwise(&self, mut a: u32, mut b: u32, op: impl Fn(u32, u32) -> u32) -> FieldElement {
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.k {
            out += op(a % self.p, b % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        FieldElement(out)
    }

    fn poly_mul(&self, a: u32, b: u32) -> u32 {
        let pa = digits(a, self.p, self.k);
        let pb = digits(b, self.p, self.k);
        let prod = poly_mul_mod_p(&pa, &pb, self.p);
        let rem = poly_rem(prod, &self.modulus, self.p);
        let mut out = 0;
        for &c in rem.iter().rev() {
            out = out * self.p + c;
        }
        out
    }
}

fn digits(mut v: u32, p: u32, k: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(k as usize);
    for _ in 0..k {
        out.push(v % p);
        v /= p;
    }
    out
}

fn poly_mul_mod_p(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + u64::from(x) * u64::from(y)) % u64::from(p);
        }
    }
    out.into_iter().map(|c| c as u32).collect()
}

/// Remainder of `a` modulo the monic polynomial `m`; result has length `deg m`.
fn poly_rem(mut a: Vec<u32>, m: &[u32], p: u32) -> Vec<u32> {
    let d = m.len() - 1;
    while a.len() > d {
        let lead = a.pop().unwrap();
        if lead != 0 {
            let shift = a.len() - d;
            for (i, &mc) in m[..d].iter().enumerate() {
                let sub = (lead as u64 * mc as u64 % p as u64) as u32;
                a[shift + i] = (a[shift + i] + p - sub) % p;
            }
        }
    }
    a.resize(d, 0);
    a
}

/// Monic polynomial of degree `deg` whose lower coefficients are the base-`p`
/// digits of `code`, constant term in the least significant digit.
fn monic_from_code(code: u64, p: u32, deg: u32) -> Vec<u32> {
    let mut c = code;
    let mut out = Vec::with_capacity(deg as usize + 1);
    for _ in 0..deg {
        out.push((c % u64::from(p)) as u32);
        c /= u64::from(p);
    }
    out.push(1);
    out
}

fn divides(divisor: &[u32], poly: &[u32], p: u32) -> bool {
    poly_rem(poly.to_vec(), divisor, p).iter().all(|&c| c == 0)
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
pub fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let deg = (poly.len() - 1) as u32;
    for d in 1..=deg / 2 {
        for code in 0..u64::from(p).pow(d) {
            if divides(&monic_from_code(code, p, d), poly, p) {
                return false;
            }
        }
    }
    true
}

/// The lexicographically smallest monic irreducible of degree `k` over `F_p`,
/// comparing the constant coefficient first.
fn smallest_irreducible(p: u32, k: u32) -> Vec<u32> {
    // Lexicographic order with c_0 most significant: enumerate codes with the
    // digits reversed so c_0 varies slowest.
    let count = u64::from(p).pow(k);
    (0..count)
        .map(|code| {
            let mut poly = monic_from_code(code, p, k);
            poly[..k as usize].reverse();
            poly
        })
        .find(|poly| is_irreducible(poly, p))
        .expect("an irreducible polynomial of every degree exists")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fe(v: u32) -> FieldElement {
        FieldElement(v)
    }

    #[test]
    fn prime_field() {
        let f = Field::new(5).unwrap();
        assert_eq!((f.characteristic(), f.degree()), (5, 1));
        assert_eq!(f.add(fe(3), fe(4)), fe(2));
        assert_eq!(f.mul(fe(3), fe(4)), fe(2));
        let f7 = Field::new(7).unwrap();
        assert_eq!(f7.inv(fe(3)).unwrap(), fe(5));
    }

    #[test]
    fn gf4_modulus_and_product() {
        let f = Field::new(4).unwrap();
        assert_eq!(f.reduction_polynomial(), &[1, 1, 1]);
        assert_eq!(f.mul(fe(2), fe(2)), fe(3));
    }

    #[test]
    fn rejects_non_prime_powers() {
        assert_eq!(Field::new(6).unwrap_err(), Error::NotAPrimePower(6));
        assert_eq!(Field::new(1).unwrap_err(), Error::NotAPrimePower(1));
        assert_eq!(Field::new(0).unwrap_err(), Error::NotAPrimePower(0));
    }

    #[test]
    fn inverse_of_zero() {
        let f = Field::new(9).unwrap();
        assert_eq!(f.inv(FieldElement::ZERO), Err(Error::DivisionByZero));
    }

    #[test]
    fn deterministic_construction() {
        assert_eq!(Field::new(27).unwrap(), Field::new(27).unwrap());
    }

    #[test]
    fn untabled_field_agrees_with_tables() {
        let tabled = Field::new(81).unwrap();
        let mut plain = tabled.clone();
        plain.mul_table = None;
        plain.inv_table = None;
        for a in tabled.elements() {
            for b in tabled.elements() {
                assert_eq!(tabled.mul(a, b), plain.mul(a, b));
            }
            if a != FieldElement::ZERO {
                assert_eq!(tabled.inv(a), plain.inv(a));
            }
        }
    }

    #[test]
    fn large_field_without_tables() {
        let f = Field::new(8192).unwrap();
        assert!(f.mul_table.is_none());
        let a = fe(4321);
        assert_eq!(f.mul(a, f.inv(a).unwrap()), FieldElement::ONE);
    }
}
