//! Arithmetic in F_p and its extensions F_q = F_{p^k}.
//!
//! A [`FieldSpec`] pins down the field: the characteristic p, the extension
//! degree k, and a monic irreducible degree-k modulus over F_p. Elements are
//! coordinate vectors in the polynomial basis {1, t, ..., t^(k-1)}. Two
//! specs describe the same field exactly when (p, k, modulus) coincide;
//! elements of distinct specs never mix (arithmetic panics on mismatch).

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::numutil;

/// Largest supported field size. Enumeration kernels use dense q x q
/// operation tables, which stay tiny at this scale.
pub const MAX_FIELD_SIZE: u64 = 1024;

struct SpecInner {
    p: u64,
    k: usize,
    q: u64,
    /// Ascending coefficients of the modulus, length k + 1, leading 1.
    modulus: Vec<u64>,
    table: OnceLock<FqTable>,
}

/// Description of a finite field F_q with q = p^k.
#[derive(Clone)]
pub struct FieldSpec(Arc<SpecInner>);

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p
                && self.0.k == other.0.k
                && self.0.modulus == other.0.modulus)
    }
}

impl Eq for FieldSpec {}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.k == 1 {
            write!(f, "F_{}", self.0.p)
        } else {
            write!(
                f,
                "F_{} = F_{}[t]/({})",
                self.0.q,
                self.0.p,
                fmt_fp_poly(&self.0.modulus, "t")
            )
        }
    }
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Formats an F_p coefficient vector (ascending) as a polynomial in `var`,
/// descending powers, zero terms omitted, unit coefficients elided.
pub(crate) fn fmt_fp_poly(coeffs: &[u64], var: &str) -> String {
    let mut terms = Vec::new();
    for (e, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let term = match (c, e) {
            (c, 0) => format!("{c}"),
            (1, 1) => var.to_string(),
            (c, 1) => format!("{c}*{var}"),
            (1, e) => format!("{var}^{e}"),
            (c, e) => format!("{c}*{var}^{e}"),
        };
        terms.push(term);
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join("+")
    }
}

/// Builds a validated field description.
///
/// When `modulus` is omitted the default is the monic irreducible degree-k
/// polynomial over F_p whose coefficient tuple (a_0, ..., a_(k-1)) is
/// smallest read as a base-p integer with a_(k-1) most significant.
pub fn make_field(p: u64, k: usize, modulus: Option<&[u64]>) -> Result<FieldSpec> {
    if !numutil::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    assert!(k >= 1, "extension degree must be at least 1");
    let q128 = (k <= 10)
        .then(|| (p as u128).pow(k as u32))
        .unwrap_or(u128::MAX);
    if q128 > MAX_FIELD_SIZE as u128 {
        return Err(Error::FieldTooLarge(
            q128.min(u64::MAX as u128) as u64,
            MAX_FIELD_SIZE,
        ));
    }
    let q = q128 as u64;

    let modulus = match modulus {
        Some(raw) => {
            let mut m: Vec<u64> = raw.iter().map(|&c| c % p).collect();
            while m.last() == Some(&0) {
                m.pop();
            }
            if m.len() != k + 1 {
                return Err(Error::DegreeMismatch {
                    want: k,
                    got: m.len().saturating_sub(1),
                });
            }
            if m[k] != 1 {
                return Err(Error::NotMonic);
            }
            if !fp_is_irreducible(&m, p) {
                return Err(Error::ReducibleModulus(p));
            }
            m
        }
        None => default_modulus(p, k),
    };

    Ok(FieldSpec(Arc::new(SpecInner {
        p,
        k,
        q,
        modulus,
        table: OnceLock::new(),
    })))
}

fn default_modulus(p: u64, k: usize) -> Vec<u64> {
    let candidates = p.pow(k as u32);
    for v in 0..candidates {
        let mut coeffs: Vec<u64> = (0..k).map(|i| (v / p.pow(i as u32)) % p).collect();
        coeffs.push(1);
        if fp_is_irreducible(&coeffs, p) {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials exist in every degree");
}

impl FieldSpec {
    pub fn p(&self) -> u64 {
        self.0.p
    }

    pub fn k(&self) -> usize {
        self.0.k
    }

    /// Field size q = p^k.
    pub fn q(&self) -> u64 {
        self.0.q
    }

    /// Ascending coefficients of the modulus polynomial (length k + 1).
    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    pub fn zero(&self) -> FqElem {
        FqElem {
            spec: self.clone(),
            coords: vec![0; self.0.k],
        }
    }

    pub fn one(&self) -> FqElem {
        self.from_int(1)
    }

    /// The residue of an integer, landing in the prime subfield.
    pub fn from_int(&self, n: u64) -> FqElem {
        let mut coords = vec![0; self.0.k];
        coords[0] = n % self.0.p;
        FqElem {
            spec: self.clone(),
            coords,
        }
    }

    /// The class of t, the generator of the polynomial basis.
    pub fn gen(&self) -> FqElem {
        if self.0.k == 1 {
            // t reduces to the root of the linear modulus.
            self.from_int(self.0.p - self.0.modulus[0] % self.0.p)
        } else {
            let mut coords = vec![0; self.0.k];
            coords[1] = 1;
            FqElem {
                spec: self.clone(),
                coords,
            }
        }
    }

    /// Element from explicit polynomial-basis coordinates (ascending powers
    /// of t). Shorter slices are zero-padded.
    pub fn elem(&self, coords: &[u64]) -> FqElem {
        assert!(
            coords.len() <= self.0.k,
            "too many coordinates for extension degree {}",
            self.0.k
        );
        let mut c = vec![0; self.0.k];
        for (i, &v) in coords.iter().enumerate() {
            c[i] = v % self.0.p;
        }
        FqElem {
            spec: self.clone(),
            coords: c,
        }
    }

    /// Element whose base-p coordinate integer is `index` (0 <= index < q).
    pub fn elem_from_index(&self, index: u64) -> FqElem {
        assert!(index < self.0.q, "element index out of range");
        let mut coords = vec![0; self.0.k];
        let mut v = index;
        for c in coords.iter_mut() {
            *c = v % self.0.p;
            v /= self.0.p;
        }
        FqElem {
            spec: self.clone(),
            coords,
        }
    }

    /// All q elements in canonical (coordinate-integer) order.
    pub fn elements(&self) -> impl Iterator<Item = FqElem> + '_ {
        (0..self.0.q).map(move |i| self.elem_from_index(i))
    }

    pub(crate) fn table(&self) -> &FqTable {
        self.0.table.get_or_init(|| FqTable::build(self))
    }
}

/// An element of F_q in polynomial-basis coordinates over F_p.
#[derive(Clone)]
pub struct FqElem {
    spec: FieldSpec,
    coords: Vec<u64>,
}

impl PartialEq for FqElem {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec && self.coords == other.coords
    }
}

impl Eq for FqElem {}

impl PartialOrd for FqElem {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FqElem {
    /// Canonical order: by base-p coordinate integer. Panics on mismatched
    /// fields, like the arithmetic operators.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.assert_same_field(other);
        self.index().cmp(&other.index())
    }
}

impl std::hash::Hash for FqElem {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.coords.hash(state);
    }
}

impl fmt::Display for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", fmt_fp_poly(&self.coords, "t"))
    }
}

impl fmt::Debug for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FqElem {
    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    /// Polynomial-basis coordinates, ascending powers of t.
    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    /// Base-p coordinate integer, the canonical element index.
    pub fn index(&self) -> u64 {
        let p = self.spec.p();
        self.coords.iter().rev().fold(0, |acc, &c| acc * p + c)
    }

    /// True when the element lies in the prime subfield F_p.
    pub fn in_prime_field(&self) -> bool {
        self.coords[1..].iter().all(|&c| c == 0)
    }

    fn assert_same_field(&self, other: &FqElem) {
        assert!(
            self.spec == other.spec,
            "elements of different fields: {} vs {}",
            self.spec,
            other.spec
        );
    }

    /// Multiplicative inverse. Errors on zero.
    pub fn inv(&self) -> Result<FqElem> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // a^(q-1) = 1 for a != 0, so a^(q-2) inverts a.
        Ok(self.powu(self.spec.q() - 2))
    }

    pub fn div(&self, other: &FqElem) -> Result<FqElem> {
        self.assert_same_field(other);
        Ok(self * &other.inv()?)
    }

    /// Integer power; negative exponents go through the inverse.
    pub fn pow(&self, e: i64) -> Result<FqElem> {
        if e >= 0 {
            Ok(self.powu(e as u64))
        } else {
            Ok(self.inv()?.powu(e.unsigned_abs()))
        }
    }

    /// Nonnegative power by square-and-multiply, with 0^0 = 1.
    pub fn powu(&self, mut e: u64) -> FqElem {
        let mut base = self.clone();
        let mut acc = self.spec.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// The i-th Frobenius power a^(p^i).
    pub fn frobenius(&self, i: usize) -> FqElem {
        let k = self.spec.k();
        let i = i % k;
        // p^i < q here, so the exponent fits comfortably.
        self.powu(self.spec.p().pow(i as u32))
    }

    /// Trace down to the prime field: a + a^p + ... + a^(p^(k-1)),
    /// returned as a residue mod p.
    pub fn trace_to_prime(&self) -> u64 {
        let k = self.spec.k();
        let p = self.spec.p();
        let mut frob = self.clone();
        let mut sum = self.clone();
        for _ in 1..k {
            frob = frob.powu(p);
            sum = &sum + &frob;
        }
        debug_assert!(
            sum.coords[1..].iter().all(|&c| c == 0),
            "trace landed outside the prime field"
        );
        sum.coords[0]
    }

    /// Least e >= 1 with a^e = 1; divides q - 1. Errors on zero.
    pub fn order(&self) -> Result<u64> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        let one = self.spec.one();
        let mut ord = self.spec.q() - 1;
        for (prime, _) in numutil::factorize(self.spec.q() - 1) {
            while ord % prime == 0 && self.powu(ord / prime) == one {
                ord /= prime;
            }
        }
        Ok(ord)
    }
}

impl std::ops::Add for &FqElem {
    type Output = FqElem;
    fn add(self, rhs: &FqElem) -> FqElem {
        self.assert_same_field(rhs);
        let p = self.spec.p();
        let coords = self
            .coords
            .iter()
            .zip(&rhs.coords)
            .map(|(&a, &b)| (a + b) % p)
            .collect();
        FqElem {
            spec: self.spec.clone(),
            coords,
        }
    }
}

impl std::ops::Sub for &FqElem {
    type Output = FqElem;
    fn sub(self, rhs: &FqElem) -> FqElem {
        self.assert_same_field(rhs);
        let p = self.spec.p();
        let coords = self
            .coords
            .iter()
            .zip(&rhs.coords)
            .map(|(&a, &b)| (a + p - b) % p)
            .collect();
        FqElem {
            spec: self.spec.clone(),
            coords,
        }
    }
}

impl std::ops::Neg for &FqElem {
    type Output = FqElem;
    fn neg(self) -> FqElem {
        let p = self.spec.p();
        let coords = self.coords.iter().map(|&a| (p - a) % p).collect();
        FqElem {
            spec: self.spec.clone(),
            coords,
        }
    }
}

impl std::ops::Mul for &FqElem {
    type Output = FqElem;
    fn mul(self, rhs: &FqElem) -> FqElem {
        self.assert_same_field(rhs);
        let p = self.spec.p();
        let k = self.spec.k();
        if k == 1 {
            return FqElem {
                spec: self.spec.clone(),
                coords: vec![(self.coords[0] * rhs.coords[0]) % p],
            };
        }
        let mut buf = vec![0u64; 2 * k - 1];
        for (i, &a) in self.coords.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coords.iter().enumerate() {
                buf[i + j] = (buf[i + j] + a * b) % p;
            }
        }
        // Reduce by the monic modulus: t^k = -(m_0 + ... + m_(k-1) t^(k-1)).
        let modulus = self.spec.modulus();
        for i in (k..2 * k - 1).rev() {
            let c = buf[i];
            if c == 0 {
                continue;
            }
            buf[i] = 0;
            for j in 0..k {
                let sub = (c * modulus[j]) % p;
                buf[i - k + j] = (buf[i - k + j] + p - sub) % p;
            }
        }
        buf.truncate(k);
        FqElem {
            spec: self.spec.clone(),
            coords: buf,
        }
    }
}

/// Dense operation tables over element indices, the workhorse of the
/// exhaustive enumeration kernels. Built lazily, once per field.
pub(crate) struct FqTable {
    pub q: usize,
    pub p: u64,
    add: Vec<u16>,
    sub: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
}

impl FqTable {
    fn build(spec: &FieldSpec) -> FqTable {
        let q = spec.q() as usize;
        let elems: Vec<FqElem> = spec.elements().collect();
        let mut add = vec![0u16; q * q];
        let mut sub = vec![0u16; q * q];
        let mut mul = vec![0u16; q * q];
        let mut neg = vec![0u16; q];
        let mut inv = vec![0u16; q];
        for (i, a) in elems.iter().enumerate() {
            neg[i] = (-a).index() as u16;
            if i > 0 {
                inv[i] = a.inv().expect("nonzero").index() as u16;
            }
            for (j, b) in elems.iter().enumerate() {
                add[i * q + j] = (a + b).index() as u16;
                sub[i * q + j] = (a - b).index() as u16;
                mul[i * q + j] = (a * b).index() as u16;
            }
        }
        FqTable {
            q,
            p: spec.p(),
            add,
            sub,
            mul,
            neg,
            inv,
        }
    }

    #[inline(always)]
    pub fn add(&self, a: u16, b: u16) -> u16 {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline(always)]
    pub fn sub(&self, a: u16, b: u16) -> u16 {
        self.sub[a as usize * self.q + b as usize]
    }

    #[inline(always)]
    pub fn mul(&self, a: u16, b: u16) -> u16 {
        self.mul[a as usize * self.q + b as usize]
    }

    #[inline(always)]
    pub fn neg(&self, a: u16) -> u16 {
        self.neg[a as usize]
    }

    #[inline(always)]
    pub fn inv(&self, a: u16) -> u16 {
        debug_assert!(a != 0);
        self.inv[a as usize]
    }

    /// Index of the residue of an integer (lands in the prime subfield;
    /// prime-subfield elements have index equal to their residue).
    #[inline(always)]
    pub fn scalar(&self, n: u64) -> u16 {
        (n % self.p) as u16
    }
}

// ---- F_p polynomial helpers (modulus validation only) ----

fn fp_deg(c: &[u64]) -> Option<usize> {
    c.iter().rposition(|&x| x != 0)
}

/// Remainder of num / den over F_p; den is monic.
fn fp_rem(num: &[u64], den: &[u64], p: u64) -> Vec<u64> {
    let dd = fp_deg(den).expect("nonzero divisor");
    let mut rem: Vec<u64> = num.to_vec();
    while let Some(rd) = fp_deg(&rem) {
        if rd < dd {
            break;
        }
        let c = rem[rd];
        rem[rd] = 0;
        for (j, &m) in den.iter().enumerate().take(dd) {
            let sub = (c * m) % p;
            rem[rd - dd + j] = (rem[rd - dd + j] + p - sub) % p;
        }
    }
    rem
}

/// Irreducibility over F_p by trial division with every monic divisor of
/// degree up to deg/2. Only used on moduli, where degrees are tiny.
fn fp_is_irreducible(f: &[u64], p: u64) -> bool {
    let deg = match fp_deg(f) {
        Some(d) if d >= 1 => d,
        _ => return false,
    };
    for d in 1..=deg / 2 {
        let count = p.pow(d as u32);
        for v in 0..count {
            let mut div: Vec<u64> = (0..d).map(|i| (v / p.pow(i as u32)) % p).collect();
            div.push(1);
            if fp_deg(&fp_rem(f, &div, p)).is_none() {
                return false;
            }
        }
    }
    true
}
