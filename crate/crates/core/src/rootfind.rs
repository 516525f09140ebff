//! Real zeros of the constructed polynomials.
//!
//! Orthogonal families go through the symmetric tridiagonal (Jacobi) matrix
//! of their recurrence; everything else through a balanced companion matrix.
//! Both paths finish with a few guarded Newton steps and report a residual
//! bound alongside the zeros.

use nalgebra::{DMatrix, Schur, SymmetricEigen};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::families::{recurrence_coeffs, FamilySpec};
use crate::poly::{FPoly, QPoly};
use crate::scalar::Polynomial;

const NEWTON_STEPS: usize = 3;
const EIGEN_MAX_ITER: usize = 10_000;

/// Relative size of an imaginary part still accepted as eigensolver noise.
pub const REALITY_THRESHOLD: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    JacobiMatrix,
    Companion,
    /// Zeros handed in directly rather than computed.
    Supplied,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::JacobiMatrix => "JacobiMatrix",
            Method::Companion => "Companion",
            Method::Supplied => "Supplied",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ZeroSource {
    Family(FamilySpec),
    Polynomial(FPoly),
    Supplied,
}

/// Strictly increasing real zeros of one polynomial.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroSet {
    zeros: Vec<f64>,
    bound: f64,
    method: Method,
    source: ZeroSource,
}

impl ZeroSet {
    /// Wraps externally known zeros; they must be finite and strictly increasing.
    pub fn supplied(zeros: Vec<f64>) -> Result<Self> {
        Self::checked(zeros, 0.0, Method::Supplied, ZeroSource::Supplied)
    }

    fn checked(zeros: Vec<f64>, bound: f64, method: Method, source: ZeroSource) -> Result<Self> {
        if let Some(i) = zeros.iter().position(|z| !z.is_finite()) {
            return Err(Error::NotStrictlyIncreasing(i));
        }
        if let Some(i) = zeros.windows(2).position(|w| w[0] >= w[1]) {
            return Err(Error::NotStrictlyIncreasing(i + 1));
        }
        Ok(ZeroSet {
            zeros,
            bound,
            method,
            source,
        })
    }

    pub fn zeros(&self) -> &[f64] {
        &self.zeros
    }

    pub fn len(&self) -> usize {
        self.zeros.len()
    }

    pub fn is_empty(&self) -> bool {
        self.zeros.is_empty()
    }

    pub fn bound(&self) -> f64 {
        self.bound
    }

    pub fn method(&self) -> Method {
        self.method
    }

    pub fn source(&self) -> &ZeroSource {
        &self.source
    }

    pub fn min(&self) -> Option<f64> {
        self.zeros.first().copied()
    }

    pub fn max(&self) -> Option<f64> {
        self.zeros.last().copied()
    }

    /// The same zeros with `x -> scale * x + shift` applied (`scale > 0`).
    pub fn affine(&self, scale: f64, shift: f64) -> Result<Self> {
        Self::checked(
            self.zeros.iter().map(|z| scale * z + shift).collect(),
            self.bound * scale,
            Method::Supplied,
            ZeroSource::Supplied,
        )
    }

    /// Removes zeros lying within `tol` of `x`, returning how many were dropped.
    pub fn without_point(&self, x: f64, tol: f64) -> (Self, usize) {
        let kept: Vec<f64> = self.zeros.iter().copied().filter(|z| (z - x).abs() > tol).collect();
        let dropped = self.zeros.len() - kept.len();
        (
            ZeroSet {
                zeros: kept,
                bound: self.bound,
                method: self.method,
                source: ZeroSource::Supplied,
            },
            dropped,
        )
    }
}

impl Serialize for ZeroSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("ZeroSet", 3)?;
        s.serialize_field("zeros", &self.zeros)?;
        s.serialize_field("bound", &self.bound)?;
        s.serialize_field("method", self.method.name())?;
        s.end()
    }
}

// ---------------------------------------------------------------------------
// evaluation kernels

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

/// Horner's rule with error-free transformations; about twice the working
/// precision of plain Horner.
pub fn compensated_horner(p: &FPoly, x: f64) -> f64 {
    let mut s = 0.0;
    let mut err = 0.0;
    for &c in p.coeffs().iter().rev() {
        let (prod, pi) = two_prod(s, x);
        let (sum, sigma) = two_sum(prod, c);
        s = sum;
        err = err * x + (pi + sigma);
    }
    s + err
}

/// `(p(x), p'(x))` from the monic recurrence in floating point.
fn recurrence_eval(c: &[f64], lambda: &[f64], x: f64) -> (f64, f64) {
    let (mut p_prev, mut p) = (0.0, 1.0);
    let (mut d_prev, mut d) = (0.0, 0.0);
    for (ck, lk) in c.iter().zip(lambda) {
        let p_next = (x - ck) * p - lk * p_prev;
        let d_next = p + (x - ck) * d - lk * d_prev;
        p_prev = p;
        p = p_next;
        d_prev = d;
        d = d_next;
    }
    (p, d)
}

fn gamma(k: usize) -> f64 {
    let u = f64::EPSILON / 2.0;
    let ku = k as f64 * u;
    ku / (1.0 - ku)
}

/// Polishes each zero with at most [`NEWTON_STEPS`] Newton steps, refusing any
/// step that would leave the zero's neighbourhood or increase the residual.
/// Returns the residual bound `max |p/p'|` over the polished zeros.
fn polish(zeros: &mut [f64], eval: impl Fn(f64) -> (f64, f64)) -> f64 {
    let n = zeros.len();
    let original = zeros.to_vec();
    for i in 0..n {
        let reach = {
            let left = if i > 0 {
                original[i] - original[i - 1]
            } else {
                f64::INFINITY
            };
            let right = if i + 1 < n {
                original[i + 1] - original[i]
            } else {
                f64::INFINITY
            };
            0.25 * left.min(right)
        };
        let mut z = zeros[i];
        let (mut val, mut der) = eval(z);
        for _ in 0..NEWTON_STEPS {
            if val == 0.0 || der == 0.0 || !der.is_finite() {
                break;
            }
            let step = val / der;
            let cand = z - step;
            if !cand.is_finite() || (cand - original[i]).abs() > reach {
                break;
            }
            let (cv, cd) = eval(cand);
            if cv.abs() > val.abs() {
                break;
            }
            z = cand;
            val = cv;
            der = cd;
        }
        zeros[i] = z;
    }
    zeros
        .iter()
        .map(|&z| {
            let (v, d) = eval(z);
            let ulps = 4.0 * f64::EPSILON * z.abs().max(1.0);
            if d == 0.0 {
                f64::INFINITY
            } else {
                (v / d).abs() + ulps
            }
        })
        .fold(0.0, f64::max)
}

// ---------------------------------------------------------------------------
// spectral path

/// Zeros of an orthogonal family member as eigenvalues of its Jacobi matrix.
pub fn zeros_orthogonal(spec: &FamilySpec) -> Result<ZeroSet> {
    spec.validate()?;
    if !spec.is_orthogonal() {
        return Err(Error::Unsupported(format!(
            "tridiagonal zeros for {}",
            spec.kind.name()
        )));
    }
    let n = spec.n;
    let rec = recurrence_coeffs(&spec.kind, n)?;
    let (c, lambda) = rec.to_f64();
    for (k, lam) in lambda.iter().enumerate().skip(1) {
        if lam.partial_cmp(&0.0) != Some(std::cmp::Ordering::Greater) {
            return Err(Error::NonPositiveLambda {
                index: k + 1,
                value: *lam,
            });
        }
    }
    if n == 0 {
        return ZeroSet::checked(Vec::new(), 0.0, Method::JacobiMatrix, ZeroSource::Family(spec.clone()));
    }
    let mut m = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        m[(i, i)] = c[i];
        if i + 1 < n {
            let off = lambda[i + 1].sqrt();
            m[(i, i + 1)] = off;
            m[(i + 1, i)] = off;
        }
    }
    let eig = SymmetricEigen::try_new(m, f64::EPSILON, EIGEN_MAX_ITER).ok_or(Error::NoConvergence(n))?;
    let mut zeros: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    zeros.sort_by(f64::total_cmp);
    let bound = polish(&mut zeros, |x| recurrence_eval(&c, &lambda, x));
    ZeroSet::checked(zeros, bound, Method::JacobiMatrix, ZeroSource::Family(spec.clone()))
}

// ---------------------------------------------------------------------------
// companion path

/// Parlett-Reinsch balancing with power-of-two scalings.
fn balance(m: &mut DMatrix<f64>) {
    let n = m.nrows();
    let radix = 2.0_f64;
    let sqrdx = radix * radix;
    let mut done = false;
    while !done {
        done = true;
        for i in 0..n {
            let mut r = 0.0;
            let mut c = 0.0;
            for j in 0..n {
                if j != i {
                    c += m[(j, i)].abs();
                    r += m[(i, j)].abs();
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut g = r / radix;
            let mut f = 1.0;
            while c < g {
                f *= radix;
                c *= sqrdx;
            }
            g = r * radix;
            while c > g {
                f /= radix;
                c /= sqrdx;
            }
            if (c + r) / f < 0.95 * s {
                done = false;
                let g = 1.0 / f;
                for j in 0..n {
                    m[(i, j)] *= g;
                }
                for j in 0..n {
                    m[(j, i)] *= f;
                }
            }
        }
    }
}

fn companion(p: &FPoly) -> DMatrix<f64> {
    let monic = p.monic();
    let cs = monic.coeffs();
    let n = cs.len() - 1;
    let mut m = DMatrix::<f64>::zeros(n, n);
    for i in 1..n {
        m[(i, i - 1)] = 1.0;
    }
    for i in 0..n {
        m[(i, n - 1)] = -cs[i];
    }
    m
}

/// Zeros of a float polynomial from its balanced companion matrix.
pub fn zeros_general_f(p: &FPoly) -> Result<ZeroSet> {
    let n = match p.degree() {
        Some(d) if d >= 1 => d,
        _ => {
            return Err(Error::InvalidParameter(
                "zeros_general requires a polynomial of degree >= 1".into(),
            ))
        }
    };
    if p.coeffs().iter().any(|c| !c.is_finite()) {
        return Err(Error::InvalidParameter("non-finite coefficient".into()));
    }
    let mut m = companion(p);
    balance(&mut m);
    let schur = Schur::try_new(m, f64::EPSILON, EIGEN_MAX_ITER).ok_or(Error::NoConvergence(n))?;
    let mut zeros = Vec::with_capacity(n);
    for ev in schur.complex_eigenvalues().iter() {
        if ev.im.abs() > REALITY_THRESHOLD * ev.re.abs().max(1.0) {
            return Err(Error::ComplexZero {
                degree: n,
                re: ev.re,
                im: ev.im,
            });
        }
        zeros.push(ev.re);
    }
    zeros.sort_by(f64::total_cmp);
    let dp = p.derivative();
    let bound = polish(&mut zeros, |x| (compensated_horner(p, x), dp.eval(&x)));
    ZeroSet::checked(zeros, bound, Method::Companion, ZeroSource::Polynomial(p.clone()))
}

/// Companion-matrix zeros; rational input is demoted to float at entry.
pub fn zeros_general(p: &Polynomial) -> Result<ZeroSet> {
    match p {
        Polynomial::Rational(q) => zeros_general_f(&q.to_f64()),
        Polynomial::Float(f) => zeros_general_f(f),
    }
}

pub fn zeros_of_qpoly(p: &QPoly) -> Result<ZeroSet> {
    zeros_general_f(&p.to_f64())
}

/// Zeros of any family member, through the spectral path when it applies.
pub fn zeros_of(spec: &FamilySpec) -> Result<ZeroSet> {
    if spec.is_orthogonal() {
        return zeros_orthogonal(spec);
    }
    let poly = crate::families::monic_by_recurrence(spec)?;
    if poly.degree() == Some(0) {
        return ZeroSet::checked(Vec::new(), 0.0, Method::Companion, ZeroSource::Family(spec.clone()));
    }
    let mut zs = zeros_of_qpoly(&poly)?;
    zs.source = ZeroSource::Family(spec.clone());
    Ok(zs)
}

// ---------------------------------------------------------------------------
// signs

/// Sign of `p` at each zero of `zs`: `-1`, `+1`, or `0` when `|p(z)|` is within
/// the combined evaluation and zero-location error.
pub fn sign_at_zeros_f(p: &FPoly, zs: &ZeroSet) -> Vec<i8> {
    let dp = p.derivative();
    let abs_poly = FPoly::new(p.coeffs().iter().map(|c| c.abs()).collect());
    let g = gamma(2 * p.coeffs().len().max(1));
    zs.zeros()
        .iter()
        .map(|&z| {
            let v = compensated_horner(p, z);
            let tol = g * abs_poly.eval(&z.abs()) + dp.eval(&z).abs() * zs.bound();
            if v.abs() <= tol {
                0
            } else if v > 0.0 {
                1
            } else {
                -1
            }
        })
        .collect()
}

pub fn sign_at_zeros(p: &Polynomial, zs: &ZeroSet) -> Result<Vec<i8>> {
    match p {
        Polynomial::Float(f) => Ok(sign_at_zeros_f(f, zs)),
        Polynomial::Rational(_) => Err(Error::ModeMismatch {
            expected: "float",
            found: "rational",
        }),
    }
}
