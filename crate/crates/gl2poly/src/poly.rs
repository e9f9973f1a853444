//! Univariate polynomials over F_q: ring arithmetic, composition,
//! irreducibility, enumeration, and trace-conditioned counting.
//!
//! Coefficients are stored in ascending degree order. The representation is
//! canonical: the vector is empty for the zero polynomial and otherwise ends
//! in a nonzero coefficient. The zero polynomial has no degree (`None`),
//! never a -1 sentinel.

use std::fmt;

use crate::error::{Error, Result};
use crate::ff::{FieldSpec, FqElem, FqTable};
use crate::numutil;

/// A univariate polynomial over F_q in canonical coefficient form.
#[derive(Clone)]
pub struct PolyFq {
    spec: FieldSpec,
    coeffs: Vec<FqElem>,
}

impl PolyFq {
    pub fn zero(spec: &FieldSpec) -> PolyFq {
        PolyFq {
            spec: spec.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn one(spec: &FieldSpec) -> PolyFq {
        PolyFq::constant(spec.one())
    }

    /// The monomial x.
    pub fn x(spec: &FieldSpec) -> PolyFq {
        PolyFq::from_coeffs(spec, vec![spec.zero(), spec.one()])
    }

    pub fn constant(c: FqElem) -> PolyFq {
        let spec = c.spec().clone();
        PolyFq::from_coeffs(&spec, vec![c])
    }

    /// c * x^e.
    pub fn monomial(c: FqElem, e: usize) -> PolyFq {
        let spec = c.spec().clone();
        let mut coeffs = vec![spec.zero(); e];
        coeffs.push(c);
        PolyFq::from_coeffs(&spec, coeffs)
    }

    /// Builds from ascending coefficients, trimming to canonical form.
    /// All coefficients must belong to `spec`.
    pub fn from_coeffs(spec: &FieldSpec, mut coeffs: Vec<FqElem>) -> PolyFq {
        assert!(
            coeffs.iter().all(|c| c.spec() == spec),
            "coefficient from a different field"
        );
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        PolyFq {
            spec: spec.clone(),
            coeffs,
        }
    }

    /// Convenience builder from integer coefficients (ascending), reduced
    /// into the prime subfield.
    pub fn from_int_coeffs(spec: &FieldSpec, coeffs: &[u64]) -> PolyFq {
        PolyFq::from_coeffs(spec, coeffs.iter().map(|&c| spec.from_int(c)).collect())
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    /// Ascending coefficients; empty for the zero polynomial.
    pub fn coeffs(&self) -> &[FqElem] {
        &self.coeffs
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of x^i (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> FqElem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.spec.zero())
    }

    pub fn leading_coeff(&self) -> Option<&FqElem> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_some_and(|c| c == &self.spec.one())
    }

    fn assert_same_field(&self, other: &PolyFq) {
        assert!(
            self.spec == other.spec,
            "polynomials over different fields: {} vs {}",
            self.spec,
            other.spec
        );
    }

    /// Horner evaluation f(a).
    pub fn eval(&self, a: &FqElem) -> FqElem {
        assert!(a.spec() == &self.spec, "evaluation point from a different field");
        let mut acc = self.spec.zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * a) + c;
        }
        acc
    }

    /// Composition f(g(x)).
    pub fn compose(&self, g: &PolyFq) -> PolyFq {
        self.assert_same_field(g);
        let mut acc = PolyFq::zero(&self.spec);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * g) + &PolyFq::constant(c.clone());
        }
        acc
    }

    /// The shifted polynomial f(x + b). Preserves degree and monicity.
    pub fn translate(&self, b: &FqElem) -> PolyFq {
        assert!(b.spec() == &self.spec, "shift from a different field");
        let shift = PolyFq::from_coeffs(&self.spec, vec![b.clone(), self.spec.one()]);
        self.compose(&shift)
    }

    /// The twist a^n f(x/a) for a != 0, n = deg f. Preserves monicity and
    /// permutes the monic irreducibles of each degree.
    pub fn scale_transform(&self, a: &FqElem) -> Result<PolyFq> {
        assert!(a.spec() == &self.spec, "scale from a different field");
        if a.is_zero() {
            return Err(Error::ZeroScalar);
        }
        if self.is_zero() {
            return Ok(self.clone());
        }
        let n = self.degree().expect("nonzero");
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c * &a.powu((n - i) as u64))
            .collect();
        Ok(PolyFq::from_coeffs(&self.spec, coeffs))
    }

    /// The unique monic scalar multiple. Errors on the zero polynomial.
    pub fn monic(&self) -> Result<PolyFq> {
        let lead = self.leading_coeff().ok_or(Error::ZeroPolynomial)?;
        if self.is_monic() {
            return Ok(self.clone());
        }
        let linv = lead.inv().expect("leading coefficient is nonzero");
        let coeffs = self.coeffs.iter().map(|c| c * &linv).collect();
        Ok(PolyFq::from_coeffs(&self.spec, coeffs))
    }

    /// Quotient and remainder with f = q*g + r, deg r < deg g.
    pub fn divrem(&self, g: &PolyFq) -> Result<(PolyFq, PolyFq)> {
        self.assert_same_field(g);
        let dg = g.degree().ok_or(Error::DivisionByZero)?;
        let linv = g.leading_coeff().unwrap().inv().expect("nonzero lead");
        let mut rem = self.coeffs.clone();
        let mut quo = vec![self.spec.zero(); self.coeffs.len().saturating_sub(dg)];
        while rem.len() > dg {
            let dr = rem.len() - 1;
            let c = &rem[dr] * &linv;
            if !c.is_zero() {
                quo[dr - dg] = c.clone();
                for (j, gc) in g.coeffs.iter().enumerate() {
                    rem[dr - dg + j] = &rem[dr - dg + j] - &(&c * gc);
                }
            }
            rem.pop();
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
        }
        Ok((
            PolyFq::from_coeffs(&self.spec, quo),
            PolyFq::from_coeffs(&self.spec, rem),
        ))
    }

    /// Monic greatest common divisor; gcd(f, 0) is the monic multiple of f.
    pub fn gcd(&self, other: &PolyFq) -> PolyFq {
        self.assert_same_field(other);
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic().expect("nonzero")
        }
    }

    pub(crate) fn to_indices(&self) -> Vec<u16> {
        self.coeffs.iter().map(|c| c.index() as u16).collect()
    }

    pub(crate) fn from_indices(spec: &FieldSpec, idx: &[u16]) -> PolyFq {
        PolyFq::from_coeffs(
            spec,
            idx.iter().map(|&i| spec.elem_from_index(i as u64)).collect(),
        )
    }

    /// Deterministic irreducibility over F_q by the Frobenius-power
    /// criterion: x^(q^n) = x mod f and gcd(x^(q^(n/l)) - x, f) = 1 for
    /// every prime l dividing n. Errors on constants.
    pub fn is_irreducible(&self) -> Result<bool> {
        match self.degree() {
            None | Some(0) => Err(Error::ConstantPolynomial),
            Some(1) => Ok(true),
            Some(_) => {
                let monic = self.monic().expect("nonconstant");
                Ok(idx::is_irreducible_monic(
                    self.spec.table(),
                    &monic.to_indices(),
                ))
            }
        }
    }
}

impl PartialEq for PolyFq {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec && self.coeffs == other.coeffs
    }
}

impl Eq for PolyFq {}

impl std::hash::Hash for PolyFq {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        for c in &self.coeffs {
            c.hash(state);
        }
    }
}

impl PartialOrd for PolyFq {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PolyFq {
    /// Canonical order: by degree, then by coefficient tuples compared as
    /// base-q integers with the leading coefficient most significant.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.assert_same_field(other);
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| {
                for (a, b) in self.coeffs.iter().rev().zip(other.coeffs.iter().rev()) {
                    let ord = a.index().cmp(&b.index());
                    if ord != std::cmp::Ordering::Equal {
                        return ord;
                    }
                }
                std::cmp::Ordering::Equal
            })
    }
}

impl std::ops::Add for &PolyFq {
    type Output = PolyFq;
    fn add(self, rhs: &PolyFq) -> PolyFq {
        self.assert_same_field(rhs);
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len).map(|i| &self.coeff(i) + &rhs.coeff(i)).collect();
        PolyFq::from_coeffs(&self.spec, coeffs)
    }
}

impl std::ops::Sub for &PolyFq {
    type Output = PolyFq;
    fn sub(self, rhs: &PolyFq) -> PolyFq {
        self.assert_same_field(rhs);
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len).map(|i| &self.coeff(i) - &rhs.coeff(i)).collect();
        PolyFq::from_coeffs(&self.spec, coeffs)
    }
}

impl std::ops::Neg for &PolyFq {
    type Output = PolyFq;
    fn neg(self) -> PolyFq {
        PolyFq::from_coeffs(&self.spec, self.coeffs.iter().map(|c| -c).collect())
    }
}

impl std::ops::Mul for &PolyFq {
    type Output = PolyFq;
    fn mul(self, rhs: &PolyFq) -> PolyFq {
        self.assert_same_field(rhs);
        if self.is_zero() || rhs.is_zero() {
            return PolyFq::zero(&self.spec);
        }
        let mut coeffs = vec![self.spec.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        PolyFq::from_coeffs(&self.spec, coeffs)
    }
}

impl fmt::Display for PolyFq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let one = self.spec.one();
        let mut terms = Vec::new();
        for (e, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let xpart = match e {
                0 => String::new(),
                1 => "x".to_string(),
                e => format!("x^{e}"),
            };
            let term = if e > 0 && c == &one {
                xpart
            } else {
                let lit = c.to_string();
                let lit = if lit.contains('t') {
                    format!("({lit})")
                } else {
                    lit
                };
                if e == 0 {
                    lit
                } else {
                    format!("{lit}*{xpart}")
                }
            };
            terms.push(term);
        }
        write!(f, "{}", terms.join(" + "))
    }
}

impl fmt::Debug for PolyFq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Number of monic irreducible degree-n polynomials over F_q, by the
/// Möbius necklace formula (1/n) sum over d|n of mu(d) q^(n/d).
pub fn count_irreducibles(spec: &FieldSpec, n: u64) -> u64 {
    assert!(n >= 1, "degree must be at least 1");
    let q = spec.q() as i128;
    let mut sum: i128 = 0;
    for d in numutil::divisors(n) {
        sum += numutil::moebius(d) as i128 * q.pow((n / d) as u32);
    }
    debug_assert!(sum >= 0 && sum % n as i128 == 0);
    (sum / n as i128) as u64
}

/// Number of monic irreducible degree-n polynomials over F_q whose trace
/// (negated x^(n-1) coefficient) equals any fixed nonzero target:
/// (1/(qn)) sum over d|n, gcd(d,p)=1 of q^(n/d) mu(d). The value does not
/// depend on which nonzero target is chosen.
pub fn count_irreducibles_with_trace(spec: &FieldSpec, n: u64) -> u64 {
    assert!(n >= 1, "degree must be at least 1");
    let q = spec.q() as i128;
    let mut sum: i128 = 0;
    for d in numutil::divisors_coprime_to(n, spec.p()) {
        sum += numutil::moebius(d) as i128 * q.pow((n / d) as u32);
    }
    let denom = q * n as i128;
    debug_assert!(sum >= 0 && sum % denom == 0);
    (sum / denom) as u64
}

/// All monic irreducible degree-n polynomials over F_q in canonical order
/// (coefficient tuples ascending, constant term least significant).
/// Errors when q^n exceeds `cap`.
pub fn enumerate_irreducibles(spec: &FieldSpec, n: u64, cap: u64) -> Result<Vec<PolyFq>> {
    assert!(n >= 1, "degree must be at least 1");
    let total = check_cap(spec.q(), n, cap)?;
    let tbl = spec.table();
    let q = spec.q() as u16;
    let n = n as usize;
    let mut cand = vec![0u16; n + 1];
    cand[n] = 1;
    let mut out = Vec::new();
    for _ in 0..total {
        if n == 1 || idx::is_irreducible_monic(tbl, &cand) {
            out.push(PolyFq::from_indices(spec, &cand));
        }
        // Odometer step over the non-leading coefficients.
        for digit in cand.iter_mut().take(n) {
            *digit += 1;
            if *digit < q {
                break;
            }
            *digit = 0;
        }
    }
    Ok(out)
}

/// Guards an exhaustive sweep of q^n candidates against the enumeration cap.
pub(crate) fn check_cap(q: u64, n: u64, cap: u64) -> Result<u128> {
    let needed = (q as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if needed > cap as u128 {
        return Err(Error::CapExceeded { needed, cap });
    }
    Ok(needed)
}

/// Irreducibility of the twisted composition f(x^p - x - b) for monic
/// irreducible f, decided by the trace criterion: the composition is
/// irreducible exactly when Tr(n*b - a_(n-1)) != 0, where n = deg f and
/// a_(n-1) is the x^(n-1) coefficient of f.
pub fn artin_schreier_irreducible(f: &PolyFq, b: &FqElem) -> Result<bool> {
    let n = match f.degree() {
        None | Some(0) => return Err(Error::ConstantPolynomial),
        Some(n) => n,
    };
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    if n >= 2 && !f.is_irreducible()? {
        return Err(Error::ReducibleInput);
    }
    let spec = f.spec();
    let arg = &(&spec.from_int(n as u64) * b) - &f.coeff(n - 1);
    Ok(arg.trace_to_prime() != 0)
}

/// The composition target x^p - x - b of the twist criterion.
pub fn artin_schreier_inner(spec: &FieldSpec, b: &FqElem) -> PolyFq {
    let p = spec.p() as usize;
    let mut coeffs = vec![spec.zero(); p + 1];
    coeffs[0] = -b;
    coeffs[1] = -&spec.one();
    coeffs[p] = spec.one();
    PolyFq::from_coeffs(spec, coeffs)
}

/// Index-vector polynomial kernels used by the exhaustive sweeps. All
/// routines work on ascending coefficient-index slices over a field table.
pub(crate) mod idx {
    use super::*;

    pub fn deg(v: &[u16]) -> Option<usize> {
        v.iter().rposition(|&c| c != 0)
    }

    fn trim(mut v: Vec<u16>) -> Vec<u16> {
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    }

    /// out = a * b mod f, with a, b and out of fixed width n = deg f and f
    /// monic. `tmp` must have length 2n - 1.
    fn mulmod(tbl: &FqTable, a: &[u16], b: &[u16], f: &[u16], tmp: &mut [u16], out: &mut [u16]) {
        let n = f.len() - 1;
        tmp.fill(0);
        for i in 0..n {
            if a[i] == 0 {
                continue;
            }
            for j in 0..n {
                if b[j] != 0 {
                    tmp[i + j] = tbl.add(tmp[i + j], tbl.mul(a[i], b[j]));
                }
            }
        }
        for i in (n..2 * n - 1).rev() {
            let c = tmp[i];
            if c == 0 {
                continue;
            }
            tmp[i] = 0;
            for j in 0..n {
                if f[j] != 0 {
                    tmp[i - n + j] = tbl.sub(tmp[i - n + j], tbl.mul(c, f[j]));
                }
            }
        }
        out.copy_from_slice(&tmp[..n]);
    }

    /// h <- h^e mod f by square-and-multiply (e >= 1).
    fn powmod(tbl: &FqTable, h: &mut [u16], e: u64, f: &[u16], tmp: &mut [u16], out: &mut [u16]) {
        let n = f.len() - 1;
        let base = h.to_vec();
        let mut acc = vec![0u16; n];
        acc[0] = 1;
        let bits = 64 - e.leading_zeros();
        for bit in (0..bits).rev() {
            mulmod(tbl, &acc, &acc, f, tmp, out);
            acc.copy_from_slice(out);
            if e >> bit & 1 == 1 {
                mulmod(tbl, &acc, &base, f, tmp, out);
                acc.copy_from_slice(out);
            }
        }
        h.copy_from_slice(&acc);
    }

    /// Monic gcd of trimmed index polynomials.
    pub fn gcd(tbl: &FqTable, a: Vec<u16>, b: Vec<u16>) -> Vec<u16> {
        let mut a = trim(a);
        let mut b = trim(b);
        while let Some(db) = deg(&b) {
            // a <- a mod b
            let linv = tbl.inv(b[db]);
            while let Some(da) = deg(&a) {
                if da < db {
                    break;
                }
                let c = tbl.mul(a[da], linv);
                for j in 0..=db {
                    let s = tbl.mul(c, b[j]);
                    a[da - db + j] = tbl.sub(a[da - db + j], s);
                }
                a = trim(a);
            }
            std::mem::swap(&mut a, &mut b);
            b = trim(b);
        }
        if let Some(da) = deg(&a) {
            let linv = tbl.inv(a[da]);
            for c in a.iter_mut() {
                *c = tbl.mul(*c, linv);
            }
        }
        a
    }

    /// Frobenius-power irreducibility for a monic index polynomial
    /// (ascending, leading coefficient 1). The gcd conditions are evaluated
    /// as soon as their Frobenius power is available, which short-circuits
    /// most reducible inputs.
    pub fn is_irreducible_monic(tbl: &FqTable, f: &[u16]) -> bool {
        let n = deg(f).expect("nonzero polynomial");
        debug_assert_eq!(f[n], 1, "leading coefficient must be 1");
        if n == 1 {
            return true;
        }
        let q = tbl.q as u64;
        let checkpoints: Vec<usize> = numutil::factorize(n as u64)
            .iter()
            .map(|&(l, _)| n / l as usize)
            .collect();
        let mut x = vec![0u16; n];
        x[1] = 1;
        let mut h = x.clone();
        let mut tmp = vec![0u16; 2 * n - 1];
        let mut out = vec![0u16; n];
        for i in 1..=n {
            powmod(tbl, &mut h, q, f, &mut tmp, &mut out);
            if checkpoints.contains(&i) {
                let diff: Vec<u16> = (0..n).map(|j| tbl.sub(h[j], x[j])).collect();
                let g = gcd(tbl, diff, f.to_vec());
                if deg(&g) != Some(0) {
                    return false;
                }
            }
        }
        h == x
    }
}
