//! The GL2(Fq) action on polynomials and its fixed points.
//!
//! A matrix A = ((a,b),(c,d)) acts on a degree-n polynomial f by
//! A o f = (cx+d)^n f((ax+b)/(cx+d)), computed polynomially as
//! sum_i f_i (ax+b)^i (cx+d)^(n-i). Irreducible inputs of degree >= 2 keep
//! their degree; general inputs may drop degree and the actual result is
//! returned as-is.

use std::fmt;

use crate::error::{Error, Result};
use crate::ff::{FieldSpec, FqElem};
use crate::poly::{self, PolyFq};

/// An invertible 2x2 matrix over F_q (determinant checked at construction).
#[derive(Clone, PartialEq, Eq)]
pub struct Mat2 {
    spec: FieldSpec,
    a: FqElem,
    b: FqElem,
    c: FqElem,
    d: FqElem,
}

impl Mat2 {
    pub fn new(a: FqElem, b: FqElem, c: FqElem, d: FqElem) -> Result<Mat2> {
        let spec = a.spec().clone();
        assert!(
            b.spec() == &spec && c.spec() == &spec && d.spec() == &spec,
            "matrix entries from different fields"
        );
        let m = Mat2 { spec, a, b, c, d };
        if m.det().is_zero() {
            return Err(Error::Singular);
        }
        Ok(m)
    }

    pub fn identity(spec: &FieldSpec) -> Mat2 {
        Mat2 {
            spec: spec.clone(),
            a: spec.one(),
            b: spec.zero(),
            c: spec.zero(),
            d: spec.one(),
        }
    }

    /// The translation matrix ((1, s), (0, 1)) for x -> x + s.
    pub fn translation(s: &FqElem) -> Mat2 {
        let spec = s.spec();
        Mat2 {
            spec: spec.clone(),
            a: spec.one(),
            b: s.clone(),
            c: spec.zero(),
            d: spec.one(),
        }
    }

    /// The homothety matrix ((a, 0), (0, 1)) for x -> ax; a must be nonzero.
    pub fn homothety(a: &FqElem) -> Result<Mat2> {
        if a.is_zero() {
            return Err(Error::Singular);
        }
        let spec = a.spec();
        Ok(Mat2 {
            spec: spec.clone(),
            a: a.clone(),
            b: spec.zero(),
            c: spec.zero(),
            d: spec.one(),
        })
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    /// Row-major entries (a, b, c, d).
    pub fn entries(&self) -> (&FqElem, &FqElem, &FqElem, &FqElem) {
        (&self.a, &self.b, &self.c, &self.d)
    }

    pub fn det(&self) -> FqElem {
        &(&self.a * &self.d) - &(&self.b * &self.c)
    }

    pub fn mul(&self, rhs: &Mat2) -> Mat2 {
        assert!(self.spec == rhs.spec, "matrices over different fields");
        Mat2 {
            spec: self.spec.clone(),
            a: &(&self.a * &rhs.a) + &(&self.b * &rhs.c),
            b: &(&self.a * &rhs.b) + &(&self.b * &rhs.d),
            c: &(&self.c * &rhs.a) + &(&self.d * &rhs.c),
            d: &(&self.c * &rhs.b) + &(&self.d * &rhs.d),
        }
    }

    /// Inverse; total because the determinant is nonzero by construction.
    pub fn inv(&self) -> Mat2 {
        let dinv = self.det().inv().expect("nonzero determinant");
        Mat2 {
            spec: self.spec.clone(),
            a: &self.d * &dinv,
            b: &(-&self.b) * &dinv,
            c: &(-&self.c) * &dinv,
            d: &self.a * &dinv,
        }
    }

    /// True for matrices of the form ((1, s), (0, 1)).
    pub fn is_upper_unitriangular(&self) -> bool {
        let one = self.spec.one();
        self.a == one && self.d == one && self.c.is_zero()
    }

    /// The translation amount s of an upper unitriangular matrix.
    pub fn translation_amount(&self) -> Option<&FqElem> {
        self.is_upper_unitriangular().then_some(&self.b)
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

impl fmt::Debug for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Whether a fixed-point test compares exactly or up to the monic scalar.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FixMode {
    Strict,
    Projective,
}

/// Applies the action A o f. Requires deg f >= 1; the result keeps the
/// degree when f is irreducible of degree >= 2 and may drop it otherwise.
pub fn act(mat: &Mat2, f: &PolyFq) -> Result<PolyFq> {
    let n = match f.degree() {
        None | Some(0) => return Err(Error::ConstantPolynomial),
        Some(n) => n,
    };
    let spec = f.spec();
    assert!(mat.spec() == spec, "matrix and polynomial over different fields");
    let (a, b, c, d) = mat.entries();
    let num = PolyFq::from_coeffs(spec, vec![b.clone(), a.clone()]);
    let den = PolyFq::from_coeffs(spec, vec![d.clone(), c.clone()]);
    let mut num_pow = vec![PolyFq::one(spec)];
    let mut den_pow = vec![PolyFq::one(spec)];
    for i in 1..=n {
        num_pow.push(&num_pow[i - 1] * &num);
        den_pow.push(&den_pow[i - 1] * &den);
    }
    let mut acc = PolyFq::zero(spec);
    for (i, fi) in f.coeffs().iter().enumerate() {
        if fi.is_zero() {
            continue;
        }
        acc = &acc + &(&(&num_pow[i] * &den_pow[n - i]) * &PolyFq::constant(fi.clone()));
    }
    Ok(acc)
}

fn validate_fixed_input(f: &PolyFq) -> Result<()> {
    match f.degree() {
        None | Some(0) => return Err(Error::ConstantPolynomial),
        Some(1) => return Err(Error::DegreeTooSmall(1)),
        Some(_) => {}
    }
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    if !f.is_irreducible()? {
        return Err(Error::ReducibleInput);
    }
    Ok(())
}

/// Fixed-point test without revalidating that f is monic irreducible of
/// degree >= 2; the exhaustive scans call this on freshly enumerated
/// irreducibles.
pub(crate) fn is_fixed_unchecked(mat: &Mat2, f: &PolyFq, mode: FixMode) -> bool {
    let image = act(mat, f).expect("degree validated by caller");
    match mode {
        FixMode::Strict => &image == f,
        FixMode::Projective => {
            let monic = image
                .monic()
                .expect("action of an invertible matrix cannot vanish on an irreducible");
            &monic == f
        }
    }
}

/// Whether A fixes f, exactly (`Strict`) or up to the monic normalization
/// (`Projective`). Requires f monic irreducible of degree >= 2.
pub fn is_fixed(mat: &Mat2, f: &PolyFq, mode: FixMode) -> Result<bool> {
    validate_fixed_input(f)?;
    Ok(is_fixed_unchecked(mat, f, mode))
}

/// Whether every matrix of the set fixes f (vacuously true when empty).
pub fn fixed_by_set(f: &PolyFq, mats: &[Mat2], mode: FixMode) -> Result<bool> {
    validate_fixed_input(f)?;
    Ok(mats.iter().all(|m| is_fixed_unchecked(m, f, mode)))
}

/// One representative per projective class of GL2(Fq), normalized so the
/// first nonzero entry in reading order (a, b, c, d) is 1, emitted in
/// ascending reading order. Exactly q^3 - q matrices.
pub fn pgl_representatives(spec: &FieldSpec) -> Vec<Mat2> {
    let q = spec.q();
    let one = spec.one();
    let zero = spec.zero();
    let mut out = Vec::with_capacity((q * q * q - q) as usize);
    // a = 0: normalization forces b = 1; det = -c must be nonzero.
    for ci in 1..q {
        let c = spec.elem_from_index(ci);
        for di in 0..q {
            out.push(Mat2 {
                spec: spec.clone(),
                a: zero.clone(),
                b: one.clone(),
                c: c.clone(),
                d: spec.elem_from_index(di),
            });
        }
    }
    // a = 1: b, c, d free subject to det = d - bc != 0.
    for bi in 0..q {
        let b = spec.elem_from_index(bi);
        for ci in 0..q {
            let c = spec.elem_from_index(ci);
            let bc = &b * &c;
            for di in 0..q {
                let d = spec.elem_from_index(di);
                if d == bc {
                    continue;
                }
                out.push(Mat2 {
                    spec: spec.clone(),
                    a: one.clone(),
                    b: b.clone(),
                    c: c.clone(),
                    d,
                });
            }
        }
    }
    out
}

/// All monic irreducible polynomials of degree 2..=max_degree fixed by the
/// whole of PGL2(Fq), in canonical order. Each degree sweeps q^n candidates
/// and must respect `cap`.
pub fn pgl_fixed_scan(
    spec: &FieldSpec,
    max_degree: u64,
    mode: FixMode,
    cap: u64,
) -> Result<Vec<PolyFq>> {
    let reps = pgl_representatives(spec);
    let mut out = Vec::new();
    for n in 2..=max_degree {
        for f in poly::enumerate_irreducibles(spec, n, cap)? {
            if reps.iter().all(|m| is_fixed_unchecked(m, &f, mode)) {
                out.push(f);
            }
        }
    }
    Ok(out)
}
