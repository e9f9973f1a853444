//! Polynomials invariant under translations x -> x+s for s in an
//! F_p-subspace S, and under homotheties x -> ax.
//!
//! The two families share one mechanism: an invariant polynomial is a
//! composition f(P) with a fixed kernel polynomial P (the product of x - s
//! over the subspace, or x^k - 1 for a scalar of order k), and the
//! irreducible invariants are counted by Möbius sums over the degree of f.
//! Every closed-form count can be cross-checked against an exhaustive sweep
//! of the monic polynomials of the requested degree.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ff::{FieldSpec, FqElem};
use crate::numutil;
use crate::poly::{self, PolyFq};

/// An F_p-linear subspace of F_q in canonical reduced-echelon basis, taken
/// with respect to the polynomial-basis coordinates. Equal subspaces have
/// identical basis sequences.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    spec: FieldSpec,
    basis: Vec<FqElem>,
}

fn mod_inverse(x: u64, p: u64) -> u64 {
    // p prime, x nonzero mod p.
    let mut acc = 1u64;
    let mut base = x % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

/// Reduced row echelon form over F_p; returns the nonzero rows.
fn echelon(mut rows: Vec<Vec<u64>>, p: u64, k: usize) -> Vec<Vec<u64>> {
    let mut pivot_row = 0;
    for col in 0..k {
        let Some(r) = (pivot_row..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(pivot_row, r);
        let inv = mod_inverse(rows[pivot_row][col], p);
        for x in rows[pivot_row].iter_mut() {
            *x = *x * inv % p;
        }
        for r2 in 0..rows.len() {
            if r2 != pivot_row && rows[r2][col] != 0 {
                let factor = rows[r2][col];
                for c in 0..k {
                    let sub = rows[pivot_row][c] * factor % p;
                    rows[r2][c] = (rows[r2][c] + p - sub) % p;
                }
            }
        }
        pivot_row += 1;
        if pivot_row == rows.len() {
            break;
        }
    }
    rows.truncate(pivot_row);
    rows
}

impl Subspace {
    /// Canonical echelon basis of the F_p-span of the generators.
    /// Errors when every generator is zero.
    pub fn from_generators(spec: &FieldSpec, gens: &[FqElem]) -> Result<Subspace> {
        assert!(
            gens.iter().all(|g| g.spec() == spec),
            "generator from a different field"
        );
        let rows: Vec<Vec<u64>> = gens
            .iter()
            .filter(|g| !g.is_zero())
            .map(|g| g.coords().to_vec())
            .collect();
        if rows.is_empty() {
            return Err(Error::ZeroSpan);
        }
        let basis = echelon(rows, spec.p(), spec.k())
            .into_iter()
            .map(|coords| spec.elem(&coords))
            .collect();
        Ok(Subspace {
            spec: spec.clone(),
            basis,
        })
    }

    /// The prime subfield F_p viewed as a subspace of F_q.
    pub fn prime_field(spec: &FieldSpec) -> Subspace {
        Subspace::from_generators(spec, &[spec.one()]).expect("1 is nonzero")
    }

    /// All of F_q as an F_p-space.
    pub fn full_field(spec: &FieldSpec) -> Subspace {
        let gens: Vec<FqElem> = (0..spec.k())
            .map(|i| {
                let mut coords = vec![0; spec.k()];
                coords[i] = 1;
                spec.elem(&coords)
            })
            .collect();
        Subspace::from_generators(spec, &gens).expect("standard basis spans")
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn basis(&self) -> &[FqElem] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Number of elements p^r.
    pub fn size(&self) -> u64 {
        self.spec.p().pow(self.dim() as u32)
    }

    /// All p^r elements, ordered by their basis coefficient vectors.
    pub fn elements(&self) -> Vec<FqElem> {
        let p = self.spec.p();
        let mut out = Vec::with_capacity(self.size() as usize);
        for v in 0..self.size() {
            let mut acc = self.spec.zero();
            let mut rest = v;
            for b in &self.basis {
                let digit = rest % p;
                rest /= p;
                if digit != 0 {
                    acc = &acc + &(&self.spec.from_int(digit) * b);
                }
            }
            out.push(acc);
        }
        out
    }

    pub fn contains(&self, elem: &FqElem) -> bool {
        assert!(elem.spec() == &self.spec, "element from a different field");
        let p = self.spec.p();
        let mut v = elem.coords().to_vec();
        for b in &self.basis {
            let pivot = b
                .coords()
                .iter()
                .position(|&c| c != 0)
                .expect("basis rows are nonzero");
            let factor = v[pivot];
            if factor != 0 {
                for (c, &bc) in v.iter_mut().zip(b.coords()) {
                    *c = (*c + p - bc * factor % p) % p;
                }
            }
        }
        v.iter().all(|&c| c == 0)
    }

    pub(crate) fn basis_key(&self) -> Vec<u64> {
        self.basis.iter().map(|b| b.index()).collect()
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.basis.iter().map(|b| b.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{self}>")
    }
}

/// Every F_p-subspace of F_q of dimension >= 1, ordered by dimension and
/// then by basis index tuple.
pub fn all_subspaces(spec: &FieldSpec) -> Vec<Subspace> {
    use std::collections::BTreeSet;
    let elems: Vec<FqElem> = spec.elements().collect();
    let mut seen: BTreeSet<Vec<u64>> = BTreeSet::new();
    let mut queue: Vec<Subspace> = Vec::new();
    let mut out: Vec<Subspace> = Vec::new();
    for a in elems.iter().filter(|a| !a.is_zero()) {
        let s = Subspace::from_generators(spec, std::slice::from_ref(a)).unwrap();
        if seen.insert(s.basis_key()) {
            queue.push(s.clone());
            out.push(s);
        }
    }
    while let Some(s) = queue.pop() {
        for a in elems.iter().filter(|a| !a.is_zero() && !s.contains(a)) {
            let mut gens = s.basis().to_vec();
            gens.push(a.clone());
            let bigger = Subspace::from_generators(spec, &gens).unwrap();
            if seen.insert(bigger.basis_key()) {
                queue.push(bigger.clone());
                out.push(bigger);
            }
        }
    }
    out.sort_by_key(|s| (s.dim(), s.basis_key()));
    out
}

/// A closed-form count next to its optional exhaustive cross-checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountReport {
    pub q: u64,
    pub subgroup: String,
    pub degree: u64,
    pub formula_count: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub brute_force_count: Option<u64>,
    /// Homothety reports only: direct count of monic irreducible F of
    /// degree m = n/k with F(x^k) irreducible, which the counting identity
    /// says must agree with the formula.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub composition_count: Option<u64>,
    #[serde(rename = "match", skip_serializing_if = "Option::is_none")]
    pub matches: Option<bool>,
}

impl CountReport {
    pub(crate) fn new(
        q: u64,
        subgroup: String,
        degree: u64,
        formula_count: u64,
        brute_force_count: Option<u64>,
        composition_count: Option<u64>,
    ) -> CountReport {
        let matches = brute_force_count.map(|b| {
            b == formula_count && composition_count.map_or(true, |c| c == formula_count)
        });
        CountReport {
            q,
            subgroup,
            degree,
            formula_count,
            brute_force_count,
            composition_count,
            matches,
        }
    }

    /// True unless a requested cross-check disagreed with the formula.
    pub fn is_consistent(&self) -> bool {
        self.matches.unwrap_or(true)
    }
}

/// The subspace polynomial: the product of (x - s) over all s in S. Monic
/// of degree p^r, additive in its argument, vanishing exactly on S.
pub fn subspace_polynomial(sub: &Subspace) -> PolyFq {
    let spec = sub.spec();
    let mut acc = PolyFq::one(spec);
    for s in sub.elements() {
        acc = &acc * &PolyFq::from_coeffs(spec, vec![-&s, spec.one()]);
    }
    acc
}

/// Whether g(x + s) = g(x) for every s in S. Checking the basis suffices:
/// invariance under two shifts extends to all their F_p-combinations.
pub fn is_translation_invariant(g: &PolyFq, sub: &Subspace) -> bool {
    assert!(
        g.spec() == sub.spec(),
        "polynomial and subspace over different fields"
    );
    sub.basis().iter().all(|s| &g.translate(s) == g)
}

/// Peels a composition g = f(inner) apart by repeated division: the
/// constant term of f is g evaluated at a root of inner, and the rest of f
/// comes from the exact quotient (g - c) / inner.
fn decompose_composition(g: &PolyFq, inner: &PolyFq, probe: &FqElem) -> Result<PolyFq> {
    debug_assert!(inner.eval(probe).is_zero(), "probe must be a root of inner");
    let step = inner.degree().expect("inner is nonconstant");
    if let Some(d) = g.degree() {
        if d % step != 0 {
            return Err(Error::NotInvariant);
        }
    }
    let spec = g.spec();
    let mut rest = g.clone();
    let mut coeffs = Vec::new();
    while !rest.is_zero() {
        let c = rest.eval(probe);
        coeffs.push(c.clone());
        rest = &rest - &PolyFq::constant(c);
        if rest.is_zero() {
            break;
        }
        let (quo, rem) = rest.divrem(inner).expect("inner is nonzero");
        if !rem.is_zero() {
            return Err(Error::NotInvariant);
        }
        rest = quo;
    }
    Ok(PolyFq::from_coeffs(spec, coeffs))
}

/// The unique f with f(P_S) = g, for an S-translation invariant g.
/// Errors with `NotInvariant` when no such f exists.
pub fn decompose_translation_invariant(g: &PolyFq, sub: &Subspace) -> Result<PolyFq> {
    assert!(
        g.spec() == sub.spec(),
        "polynomial and subspace over different fields"
    );
    decompose_composition(g, &subspace_polynomial(sub), &sub.spec().zero())
}

/// Some a != 0 with S2 = aS, if the subspaces are linearly equivalent;
/// deterministic: the first candidate in canonical element order wins.
pub fn linearly_equivalent(sub: &Subspace, sub2: &Subspace) -> Option<FqElem> {
    assert!(sub.spec() == sub2.spec(), "subspaces over different fields");
    if sub.dim() != sub2.dim() {
        return None;
    }
    let s1_inv = sub.basis()[0].inv().expect("basis elements are nonzero");
    let mut candidates = sub2.elements();
    candidates.sort();
    for y in candidates.into_iter().filter(|y| !y.is_zero()) {
        let a = &y * &s1_inv;
        if sub.basis().iter().all(|b| sub2.contains(&(&a * b))) {
            return Some(a);
        }
    }
    None
}

/// Closed-form count of S-translation invariant monic irreducibles of
/// degree n: zero when dim S > 1 or p does not divide n, else
/// (p-1)/(pm) * sum over d | m with gcd(d,p)=1 of q^(m/d) mu(d), n = pm.
pub(crate) fn translation_formula_count(spec: &FieldSpec, r: usize, n: u64) -> u64 {
    let p = spec.p();
    if r > 1 || n % p != 0 {
        return 0;
    }
    let m = n / p;
    let q = spec.q() as i128;
    let mut sum: i128 = 0;
    for d in numutil::divisors_coprime_to(m, p) {
        sum += numutil::moebius(d) as i128 * q.pow((m / d) as u32);
    }
    let num = (p - 1) as i128 * sum;
    let den = p as i128 * m as i128;
    debug_assert!(num >= 0 && num % den == 0);
    (num / den) as u64
}

/// Exhaustively sweeps every monic degree-n polynomial over the field of S
/// and emits those invariant under translation by every nonzero element of
/// S, in canonical order. The per-shift test accumulates shifted
/// coefficients from the top down, so non-invariant candidates are
/// rejected after O(1) work.
pub(crate) fn scan_invariant_monic<F: FnMut(PolyFq)>(
    sub: &Subspace,
    n: u64,
    cap: u64,
    mut emit: F,
) -> Result<()> {
    let spec = sub.spec();
    let total = poly::check_cap(spec.q(), n, cap)?;
    let n = n as usize;
    let tbl = spec.table();
    let q = spec.q() as u16;
    let p = spec.p();

    // Pascal's triangle mod p up to row n.
    let mut binom = vec![vec![0u64; n + 1]; n + 1];
    for i in 0..=n {
        binom[i][0] = 1;
        for j in 1..=i {
            binom[i][j] = (binom[i - 1][j - 1] + if j < i { binom[i - 1][j] } else { 0 }) % p;
        }
    }

    // For shift s, the coefficient of x^j in g(x+s) is
    // sum over i >= j of C(i,j) s^(i-j) g_i; invariance under s means the
    // i > j part of every such sum vanishes.
    let mut shifts: Vec<Vec<Vec<(usize, u16)>>> = Vec::new();
    for s in sub.elements() {
        if s.is_zero() {
            continue;
        }
        let sidx = s.index() as u16;
        let mut spow = vec![1u16; n + 1];
        for e in 1..=n {
            spow[e] = tbl.mul(spow[e - 1], sidx);
        }
        let mut rows = vec![Vec::new(); n];
        for (j, row) in rows.iter_mut().enumerate() {
            for i in (j + 1)..=n {
                let b = binom[i][j];
                if b != 0 {
                    row.push((i, tbl.mul(tbl.scalar(b), spow[i - j])));
                }
            }
        }
        shifts.push(rows);
    }

    let mut cand = vec![0u16; n + 1];
    cand[n] = 1;
    for _ in 0..total {
        let invariant = shifts.iter().all(|rows| {
            (0..n).rev().all(|j| {
                let mut sum = 0u16;
                for &(i, w) in &rows[j] {
                    if cand[i] != 0 {
                        sum = tbl.add(sum, tbl.mul(cand[i], w));
                    }
                }
                sum == 0
            })
        });
        if invariant {
            emit(PolyFq::from_indices(spec, &cand));
        }
        for digit in cand.iter_mut().take(n) {
            *digit += 1;
            if *digit < q {
                break;
            }
            *digit = 0;
        }
    }
    Ok(())
}

/// Exhaustive count of S-translation invariant monic irreducibles of
/// degree n (invariance filtered first, then irreducibility).
pub(crate) fn brute_force_translation_count(sub: &Subspace, n: u64, cap: u64) -> Result<u64> {
    let mut count = 0u64;
    scan_invariant_monic(sub, n, cap, |g| {
        if g.is_irreducible().expect("scan emits nonconstant candidates") {
            count += 1;
        }
    })?;
    Ok(count)
}

/// Counts the S-translation invariant monic irreducibles of degree n by
/// formula, optionally cross-checked against the exhaustive sweep.
/// Degree-1 queries are rejected: the action domain starts at degree 2.
pub fn count_translation_invariant(
    sub: &Subspace,
    n: u64,
    with_brute_force: bool,
    cap: u64,
) -> Result<CountReport> {
    if n < 2 {
        return Err(Error::DegreeTooSmall(n as usize));
    }
    let spec = sub.spec();
    let formula = translation_formula_count(spec, sub.dim(), n);
    let brute = if with_brute_force {
        Some(brute_force_translation_count(sub, n, cap)?)
    } else {
        None
    };
    Ok(CountReport::new(
        spec.q(),
        format!("translation S=<{sub}>"),
        n,
        formula,
        brute,
        None,
    ))
}

/// The additive polynomial x^p - x, the subspace polynomial of F_p.
fn xp_minus_x(spec: &FieldSpec) -> PolyFq {
    let p = spec.p() as usize;
    let mut coeffs = vec![spec.zero(); p + 1];
    coeffs[1] = -&spec.one();
    coeffs[p] = spec.one();
    PolyFq::from_coeffs(spec, coeffs)
}

/// Constructs every S-translation invariant monic irreducible of degree n.
///
/// Empty unless dim S = 1 and p | n. For S = <s>, the members are the
/// scale twists by s of the compositions f(x^p - x) over all monic
/// irreducible f of degree n/p whose x^(n/p - 1) coefficient has nonzero
/// trace. The stream length always equals the closed-form count.
pub fn enumerate_translation_invariant(sub: &Subspace, n: u64, cap: u64) -> Result<Vec<PolyFq>> {
    let spec = sub.spec();
    let p = spec.p();
    if sub.dim() > 1 || n % p != 0 {
        return Ok(Vec::new());
    }
    let m = n / p;
    let kernel = xp_minus_x(spec);
    let s = &sub.basis()[0];
    let mut out = Vec::new();
    for f in poly::enumerate_irreducibles(spec, m, cap)? {
        let side = f.coeff((m - 1) as usize);
        if side.trace_to_prime() == 0 {
            continue;
        }
        let mut g = f.compose(&kernel);
        if s != &spec.one() {
            g = g.scale_transform(s)?.monic()?;
        }
        out.push(g);
    }
    out.sort();
    Ok(out)
}

/// The kernel polynomial of the homothety x -> ax: x^k - 1 with
/// k = ord(a). Requires a outside {0, 1}.
pub fn homothety_polynomial(a: &FqElem) -> Result<PolyFq> {
    let spec = a.spec();
    if a.is_zero() || a == &spec.one() {
        return Err(Error::DegenerateScalar);
    }
    let k = a.order().expect("nonzero") as usize;
    let mut coeffs = vec![spec.zero(); k + 1];
    coeffs[0] = -&spec.one();
    coeffs[k] = spec.one();
    Ok(PolyFq::from_coeffs(spec, coeffs))
}

/// Whether f(ax) = f(x), coefficient by coefficient.
pub fn is_homothety_invariant(f: &PolyFq, a: &FqElem) -> bool {
    assert!(
        f.spec() == a.spec(),
        "polynomial and scalar over different fields"
    );
    f.coeffs()
        .iter()
        .enumerate()
        .all(|(i, c)| c.is_zero() || &(c * &a.powu(i as u64)) == c)
}

/// The unique g with g(x^k - 1) = f for a homothety-invariant f.
pub fn decompose_homothety(f: &PolyFq, a: &FqElem) -> Result<PolyFq> {
    let inner = homothety_polynomial(a)?;
    assert!(f.spec() == a.spec(), "polynomial and scalar over different fields");
    decompose_composition(f, &inner, &f.spec().one())
}

/// Counts the monic irreducible degree-m polynomials F for which F(x^k) is
/// also irreducible, by direct construction and testing.
pub fn count_xk_compositions(spec: &FieldSpec, m: u64, k: u64, cap: u64) -> Result<u64> {
    assert!(k >= 1, "composition exponent must be at least 1");
    let mut count = 0u64;
    for f in poly::enumerate_irreducibles(spec, m, cap)? {
        let mut coeffs = vec![spec.zero(); (m * k) as usize + 1];
        for (i, c) in f.coeffs().iter().enumerate() {
            coeffs[i * k as usize] = c.clone();
        }
        if PolyFq::from_coeffs(spec, coeffs).is_irreducible()? {
            count += 1;
        }
    }
    Ok(count)
}

pub(crate) fn homothety_formula_count(spec: &FieldSpec, k: u64, n: u64) -> u64 {
    if n % k != 0 {
        return 0;
    }
    let m = n / k;
    let q = spec.q() as i128;
    let mut sum: i128 = 0;
    for d in numutil::divisors_coprime_to(m, k) {
        sum += numutil::moebius(d) as i128 * (q.pow((m / d) as u32) - 1);
    }
    let num = numutil::euler_phi(k) as i128 * sum;
    let den = (m * k) as i128;
    debug_assert!(num >= 0 && num % den == 0);
    (num / den) as u64
}

/// Counts the monic irreducibles of degree n fixed by x -> ax: zero when
/// k = ord(a) does not divide n, else phi(k)/(mk) * sum over d | m with
/// gcd(d,k)=1 of mu(d)(q^(m/d) - 1), where n = mk.
///
/// With the brute-force flag the report carries the exhaustive filter
/// count and the direct count of irreducible F(x^k) compositions; both
/// must agree with the formula for `match` to hold.
pub fn count_homothety_invariant(
    a: &FqElem,
    n: u64,
    with_brute_force: bool,
    cap: u64,
) -> Result<CountReport> {
    let spec = a.spec();
    if a.is_zero() || a == &spec.one() {
        return Err(Error::DegenerateScalar);
    }
    if n < 2 {
        return Err(Error::DegreeTooSmall(n as usize));
    }
    let k = a.order().expect("nonzero");
    let formula = homothety_formula_count(spec, k, n);
    let mut brute = None;
    let mut composition = None;
    if with_brute_force {
        let mut count = 0u64;
        for f in poly::enumerate_irreducibles(spec, n, cap)? {
            if is_homothety_invariant(&f, a) {
                count += 1;
            }
        }
        brute = Some(count);
        if n % k == 0 {
            composition = Some(count_xk_compositions(spec, n / k, k, cap)?);
        }
    }
    Ok(CountReport::new(
        spec.q(),
        format!("homothety a={a} (order {k})"),
        n,
        formula,
        brute,
        composition,
    ))
}

/// Constructs every monic irreducible of degree n fixed by x -> ax, as the
/// irreducible compositions g(x^k - 1) over monic irreducible g of degree
/// n/k. Empty when ord(a) does not divide n.
pub fn enumerate_homothety_invariant(a: &FqElem, n: u64, cap: u64) -> Result<Vec<PolyFq>> {
    let spec = a.spec();
    if a.is_zero() || a == &spec.one() {
        return Err(Error::DegenerateScalar);
    }
    let k = a.order().expect("nonzero");
    if n % k != 0 {
        return Ok(Vec::new());
    }
    let kernel = homothety_polynomial(a)?;
    let mut out = Vec::new();
    for g in poly::enumerate_irreducibles(spec, n / k, cap)? {
        let composed = g.compose(&kernel);
        if composed.is_irreducible()? {
            out.push(composed);
        }
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::make_field;

    fn f2() -> FieldSpec {
        make_field(2, 1, None).unwrap()
    }

    fn f4() -> FieldSpec {
        make_field(2, 2, None).unwrap()
    }

    fn pl(spec: &FieldSpec, coeffs: &[u64]) -> PolyFq {
        PolyFq::from_int_coeffs(spec, coeffs)
    }

    #[test]
    fn subspace_canonicalization() {
        let f4 = f4();
        let one = Subspace::from_generators(&f4, &[f4.one()]).unwrap();
        assert_eq!(one.basis(), &[f4.one()]);
        let t = f4.gen();
        let full =
            Subspace::from_generators(&f4, &[f4.one(), t.clone(), &t + &f4.one()]).unwrap();
        assert_eq!(full.basis(), &[f4.one(), t.clone()]);
        assert_eq!(full, Subspace::full_field(&f4));

        let f9 = make_field(3, 2, None).unwrap();
        let two = Subspace::from_generators(&f9, &[f9.from_int(2)]).unwrap();
        assert_eq!(two.basis(), &[f9.one()]);

        assert_eq!(
            Subspace::from_generators(&f4, &[f4.zero()]),
            Err(Error::ZeroSpan)
        );
        // Same span through different generators gives the same basis.
        let alt = Subspace::from_generators(&f4, &[&t + &f4.one(), t.clone()]).unwrap();
        assert_eq!(alt, full);
    }

    #[test]
    fn subspace_membership_and_elements() {
        let f4 = f4();
        let t = f4.gen();
        let line = Subspace::from_generators(&f4, &[t.clone()]).unwrap();
        assert!(line.contains(&f4.zero()));
        assert!(line.contains(&t));
        assert!(!line.contains(&f4.one()));
        assert_eq!(line.elements().len(), 2);
        assert_eq!(Subspace::full_field(&f4).elements().len(), 4);
    }

    #[test]
    fn all_subspaces_counts() {
        assert_eq!(all_subspaces(&f2()).len(), 1);
        assert_eq!(all_subspaces(&f4()).len(), 4); // 3 lines + the plane
        let f8 = make_field(2, 3, None).unwrap();
        assert_eq!(all_subspaces(&f8).len(), 15); // 7 + 7 + 1
        let f9 = make_field(3, 2, None).unwrap();
        assert_eq!(all_subspaces(&f9).len(), 5); // 4 lines + the plane
    }

    #[test]
    fn subspace_polynomial_examples() {
        let f4 = f4();
        assert_eq!(
            subspace_polynomial(&Subspace::prime_field(&f4)),
            pl(&f4, &[0, 1, 1]) // x^2 - x
        );
        assert_eq!(
            subspace_polynomial(&Subspace::full_field(&f4)),
            pl(&f4, &[0, 1, 0, 0, 1]) // x^4 - x
        );
        let f5 = make_field(5, 1, None).unwrap();
        assert_eq!(
            subspace_polynomial(&Subspace::prime_field(&f5)),
            pl(&f5, &[0, 4, 0, 0, 0, 1]) // x^5 - x
        );
    }

    #[test]
    fn subspace_polynomial_closed_form_dim2() {
        // For S = <1, a>: x^(p^2) - x^p (1 + (a-a^p)^(p-1)) + x (a-a^p)^(p-1).
        for (p, k) in [(2u64, 2usize), (3, 2), (2, 3), (3, 3)] {
            let spec = make_field(p, k, None).unwrap();
            for a in spec.elements().filter(|a| !a.in_prime_field()) {
                let sub = Subspace::from_generators(&spec, &[spec.one(), a.clone()]).unwrap();
                let c = (&a - &a.powu(p)).powu(p - 1);
                let p2 = (p * p) as usize;
                let mut coeffs = vec![spec.zero(); p2 + 1];
                coeffs[1] = c.clone();
                coeffs[p as usize] = -&(&spec.one() + &c);
                coeffs[p2] = spec.one();
                assert_eq!(
                    subspace_polynomial(&sub),
                    PolyFq::from_coeffs(&spec, coeffs),
                    "q={} a={a}",
                    spec.q()
                );
            }
        }
    }

    #[test]
    fn subspace_polynomial_additivity_and_recursion() {
        for (p, k) in [(2u64, 2usize), (3, 2), (2, 3)] {
            let spec = make_field(p, k, None).unwrap();
            for sub in all_subspaces(&spec) {
                let ps = subspace_polynomial(&sub);
                for u in spec.elements() {
                    for v in spec.elements() {
                        assert_eq!(ps.eval(&(&u + &v)), &ps.eval(&u) + &ps.eval(&v));
                    }
                    for c in 0..p {
                        let ce = spec.from_int(c);
                        assert_eq!(ps.eval(&(&ce * &u)), &ce * &ps.eval(&u));
                    }
                }
                // Extension recursion: P_(S+<b>) = P_S^p - P_S(b)^(p-1) P_S.
                for b in spec.elements().filter(|b| !b.is_zero() && !sub.contains(b)) {
                    let mut gens = sub.basis().to_vec();
                    gens.push(b.clone());
                    let bigger = Subspace::from_generators(&spec, &gens).unwrap();
                    let scale = ps.eval(&b).powu(p - 1);
                    let mut ppow = PolyFq::one(&spec);
                    for _ in 0..p {
                        ppow = &ppow * &ps;
                    }
                    let expect = &ppow - &(&PolyFq::constant(scale) * &ps);
                    assert_eq!(subspace_polynomial(&bigger), expect);
                }
            }
        }
    }

    #[test]
    fn translation_invariance_examples() {
        let f4 = f4();
        let xq_x = pl(&f4, &[0, 1, 0, 0, 1]);
        assert!(is_translation_invariant(&xq_x, &Subspace::full_field(&f4)));
        let f2 = f2();
        assert!(is_translation_invariant(
            &pl(&f2, &[1, 1, 1]),
            &Subspace::prime_field(&f2)
        ));
        assert!(!is_translation_invariant(
            &pl(&f2, &[0, 0, 1]),
            &Subspace::prime_field(&f2)
        ));
    }

    #[test]
    fn decompose_translation_examples() {
        let f2 = f2();
        let s = Subspace::prime_field(&f2);
        assert_eq!(
            decompose_translation_invariant(&pl(&f2, &[1, 1, 0, 0, 1]), &s).unwrap(),
            pl(&f2, &[1, 1, 1])
        );
        assert_eq!(
            decompose_translation_invariant(&pl(&f2, &[0, 1, 1]), &s).unwrap(),
            PolyFq::x(&f2)
        );
        assert_eq!(
            decompose_translation_invariant(&pl(&f2, &[1, 0, 1]), &s),
            Err(Error::NotInvariant)
        );
    }

    #[test]
    fn linear_equivalence_examples() {
        let f4 = f4();
        let one_line = Subspace::prime_field(&f4);
        assert_eq!(linearly_equivalent(&one_line, &one_line), Some(f4.one()));
        let t_line = Subspace::from_generators(&f4, &[f4.gen()]).unwrap();
        assert_eq!(linearly_equivalent(&one_line, &t_line), Some(f4.gen()));
        let f9 = make_field(3, 2, None).unwrap();
        assert_eq!(
            linearly_equivalent(&Subspace::prime_field(&f9), &Subspace::full_field(&f9)),
            None
        );
    }

    #[test]
    fn translation_count_examples() {
        let cap = 1 << 22;
        let f2 = f2();
        let r = count_translation_invariant(&Subspace::prime_field(&f2), 2, true, cap).unwrap();
        assert_eq!((r.formula_count, r.brute_force_count), (1, Some(1)));
        assert_eq!(r.matches, Some(true));

        let f3 = make_field(3, 1, None).unwrap();
        let r = count_translation_invariant(&Subspace::prime_field(&f3), 6, true, cap).unwrap();
        assert_eq!((r.formula_count, r.brute_force_count), (2, Some(2)));

        let f4 = f4();
        for n in 2..=8 {
            let r =
                count_translation_invariant(&Subspace::full_field(&f4), n, true, cap).unwrap();
            assert_eq!(
                (r.formula_count, r.brute_force_count),
                (0, Some(0)),
                "n={n}"
            );
        }
        let r = count_translation_invariant(&Subspace::prime_field(&f2), 3, true, cap).unwrap();
        assert_eq!((r.formula_count, r.brute_force_count), (0, Some(0)));

        assert_eq!(
            count_translation_invariant(&Subspace::prime_field(&f2), 1, false, cap),
            Err(Error::DegreeTooSmall(1))
        );
    }

    #[test]
    fn scan_agrees_with_naive_filter() {
        // Independent cross-check of the sweep kernel against the direct
        // translate-and-compare filter over all monic polynomials.
        let cap = 1 << 22;
        for (p, k) in [(2u64, 1usize), (3, 1), (2, 2)] {
            let spec = make_field(p, k, None).unwrap();
            let q = spec.q();
            for sub in all_subspaces(&spec) {
                for n in 2..=4u64 {
                    let mut scanned = Vec::new();
                    scan_invariant_monic(&sub, n, cap, |g| scanned.push(g)).unwrap();
                    let mut naive = Vec::new();
                    for v in 0..q.pow(n as u32) {
                        let mut coeffs: Vec<FqElem> = Vec::new();
                        let mut rest = v;
                        for _ in 0..n {
                            coeffs.push(spec.elem_from_index(rest % q));
                            rest /= q;
                        }
                        coeffs.push(spec.one());
                        let g = PolyFq::from_coeffs(&spec, coeffs);
                        if sub
                            .elements()
                            .iter()
                            .all(|s| s.is_zero() || g.translate(s) == g)
                        {
                            naive.push(g);
                        }
                    }
                    assert_eq!(scanned, naive, "q={q} S=<{sub}> n={n}");
                }
            }
        }
    }

    #[test]
    fn enumerate_translation_examples() {
        let cap = 1 << 22;
        let f2 = f2();
        let s2 = Subspace::prime_field(&f2);
        assert_eq!(
            enumerate_translation_invariant(&s2, 2, cap).unwrap(),
            vec![pl(&f2, &[1, 1, 1])]
        );
        assert_eq!(
            enumerate_translation_invariant(&s2, 4, cap).unwrap(),
            vec![pl(&f2, &[1, 1, 0, 0, 1])]
        );
        let f4 = f4();
        assert!(
            enumerate_translation_invariant(&Subspace::full_field(&f4), 4, cap)
                .unwrap()
                .is_empty()
        );
    }

    #[test]
    fn enumeration_matches_brute_force_and_roundtrips() {
        let cap = 1 << 24; // the q=5, n=10 sweep needs 5^10 candidates
        for (p, k) in [(2u64, 1usize), (3, 1), (2, 2), (5, 1)] {
            let spec = make_field(p, k, None).unwrap();
            for sub in all_subspaces(&spec).into_iter().filter(|s| s.dim() == 1) {
                for m in 1..=2u64 {
                    let n = p * m;
                    let listed = enumerate_translation_invariant(&sub, n, cap).unwrap();
                    // Stream length equals the formula count.
                    assert_eq!(
                        listed.len() as u64,
                        translation_formula_count(&spec, 1, n),
                        "q={} S=<{sub}> n={n}",
                        spec.q()
                    );
                    // And exactly matches the exhaustive filter.
                    let mut brute = Vec::new();
                    scan_invariant_monic(&sub, n, cap, |g| {
                        if g.is_irreducible().unwrap() {
                            brute.push(g);
                        }
                    })
                    .unwrap();
                    assert_eq!(listed, brute);
                    for g in &listed {
                        let f = decompose_translation_invariant(g, &sub).unwrap();
                        assert_eq!(&f.compose(&subspace_polynomial(&sub)), g);
                    }
                }
            }
        }
    }

    #[test]
    fn homothety_polynomial_examples() {
        let f5 = make_field(5, 1, None).unwrap();
        assert_eq!(
            homothety_polynomial(&f5.from_int(4)).unwrap(),
            pl(&f5, &[4, 0, 1])
        );
        let f4 = f4();
        assert_eq!(
            homothety_polynomial(&f4.gen()).unwrap(),
            pl(&f4, &[1, 0, 0, 1]) // x^3 + 1 = x^3 - 1
        );
        let f3 = make_field(3, 1, None).unwrap();
        assert_eq!(
            homothety_polynomial(&f3.from_int(2)).unwrap(),
            pl(&f3, &[2, 0, 1])
        );
        assert_eq!(
            homothety_polynomial(&f5.one()),
            Err(Error::DegenerateScalar)
        );
        assert_eq!(
            homothety_polynomial(&f5.zero()),
            Err(Error::DegenerateScalar)
        );
    }

    #[test]
    fn homothety_polynomial_matches_product_over_orbit() {
        for (p, k) in [(5u64, 1usize), (2, 2), (3, 2), (7, 1)] {
            let spec = make_field(p, k, None).unwrap();
            for a in spec.elements() {
                if a.is_zero() || a == spec.one() {
                    continue;
                }
                let mut acc = PolyFq::one(&spec);
                let mut power = spec.one();
                for _ in 0..a.order().unwrap() {
                    acc = &acc * &PolyFq::from_coeffs(&spec, vec![-&power, spec.one()]);
                    power = &power * &a;
                }
                assert_eq!(homothety_polynomial(&a).unwrap(), acc, "a={a}");
            }
        }
    }

    #[test]
    fn decompose_homothety_examples() {
        let f5 = make_field(5, 1, None).unwrap();
        let a = f5.from_int(4);
        assert_eq!(
            decompose_homothety(&pl(&f5, &[3, 0, 1]), &a).unwrap(),
            pl(&f5, &[4, 1])
        );
        assert_eq!(
            decompose_homothety(&pl(&f5, &[2, 0, 1]), &a).unwrap(),
            pl(&f5, &[3, 1])
        );
        assert_eq!(
            decompose_homothety(&pl(&f5, &[0, 1, 1]), &a),
            Err(Error::NotInvariant)
        );
    }

    #[test]
    fn homothety_count_examples() {
        let cap = 1 << 22;
        let f5 = make_field(5, 1, None).unwrap();
        let a4 = f5.from_int(4);
        let r = count_homothety_invariant(&a4, 2, true, cap).unwrap();
        assert_eq!((r.formula_count, r.brute_force_count), (2, Some(2)));
        assert_eq!(r.composition_count, Some(2));
        assert_eq!(r.matches, Some(true));

        let r = count_homothety_invariant(&a4, 3, true, cap).unwrap();
        assert_eq!((r.formula_count, r.brute_force_count), (0, Some(0)));

        let f7 = make_field(7, 1, None).unwrap();
        let a2 = f7.from_int(2);
        assert_eq!(a2.order().unwrap(), 3);
        let r = count_homothety_invariant(&a2, 3, true, cap).unwrap();
        assert_eq!((r.formula_count, r.brute_force_count), (4, Some(4)));

        assert_eq!(
            count_homothety_invariant(&f5.one(), 2, false, cap),
            Err(Error::DegenerateScalar)
        );
    }

    #[test]
    fn enumerate_homothety_matches_filter() {
        let cap = 1 << 22;
        let f5 = make_field(5, 1, None).unwrap();
        let a = f5.from_int(4);
        let listed = enumerate_homothety_invariant(&a, 2, cap).unwrap();
        assert_eq!(listed, vec![pl(&f5, &[2, 0, 1]), pl(&f5, &[3, 0, 1])]);
        for (q, k, aval, n) in [(5u64, 1usize, 2u64, 4u64), (7, 1, 2, 3), (7, 1, 2, 6)] {
            let spec = make_field(q, k, None).unwrap();
            let a = spec.from_int(aval);
            let listed = enumerate_homothety_invariant(&a, n, cap).unwrap();
            let filtered: Vec<PolyFq> = poly::enumerate_irreducibles(&spec, n, cap)
                .unwrap()
                .into_iter()
                .filter(|f| is_homothety_invariant(f, &a))
                .collect();
            assert_eq!(listed, filtered, "q={q} a={aval} n={n}");
            for f in &listed {
                let g = decompose_homothety(f, &a).unwrap();
                assert_eq!(&g.compose(&homothety_polynomial(&a).unwrap()), f);
            }
        }
    }

    #[test]
    fn scale_bijection_between_equivalent_subspaces() {
        // When S2 = aS, the scale twist by a maps the invariant set of S
        // onto the invariant set of S2.
        let cap = 1 << 22;
        let f4 = f4();
        let s1 = Subspace::prime_field(&f4);
        let s2 = Subspace::from_generators(&f4, &[f4.gen()]).unwrap();
        let a = linearly_equivalent(&s1, &s2).unwrap();
        for n in [2u64, 4] {
            let c1 = enumerate_translation_invariant(&s1, n, cap).unwrap();
            let mut image: Vec<PolyFq> = c1
                .iter()
                .map(|f| f.scale_transform(&a).unwrap().monic().unwrap())
                .collect();
            image.sort();
            let c2 = enumerate_translation_invariant(&s2, n, cap).unwrap();
            assert_eq!(image, c2, "n={n}");
        }
    }

    #[test]
    fn invariant_degrees_divisible_by_subspace_size() {
        let cap = 1 << 22;
        for (p, k) in [(2u64, 2usize), (3, 1)] {
            let spec = make_field(p, k, None).unwrap();
            for sub in all_subspaces(&spec) {
                for n in 1..=6u64 {
                    let mut found_any = false;
                    scan_invariant_monic(&sub, n, cap, |g| {
                        found_any = true;
                        assert_eq!(g.degree(), Some(n as usize));
                    })
                    .unwrap();
                    if found_any {
                        assert_eq!(n % sub.size(), 0, "S=<{sub}> n={n}");
                    }
                }
            }
        }
    }
}
