//! Polynomial families: Jacobi, Laguerre, Krawtchouk, Meixner and the
//! Narayana variants, all monic, all built exactly over the rationals.
//!
//! Every family that has more than one natural construction exposes the
//! alternatives (recurrence, closed-form coefficients, terminating
//! hypergeometric sum, Christoffel quotient) so they can be checked against
//! each other.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::poly::{Poly, QPoly};
use crate::scalar::{format_rational, parse_rational, q, rational_to_f64};

#[derive(Debug, Clone, PartialEq)]
pub enum FamilyKind {
    Jacobi {
        alpha: BigRational,
        beta: BigRational,
    },
    Laguerre {
        alpha: BigRational,
    },
    Krawtchouk {
        p: BigRational,
        big_n: u64,
    },
    Meixner {
        t: BigRational,
        w: BigRational,
    },
    /// `N_n(x) = sum_k c_{n,k} x^k`, degree n.
    Narayana,
    /// `N_n(x) / x`, degree n - 1.
    NarayanaReduced,
    /// Christoffel quotient at `x = 1` of consecutive reduced polynomials, degree n - 1.
    NarayanaChristoffel,
    /// Polynomial with coefficients `d_{n,j}`, degree n - 1.
    NarayanaPerturbedP,
}

impl FamilyKind {
    pub fn name(&self) -> &'static str {
        match self {
            FamilyKind::Jacobi { .. } => "jacobi",
            FamilyKind::Laguerre { .. } => "laguerre",
            FamilyKind::Krawtchouk { .. } => "krawtchouk",
            FamilyKind::Meixner { .. } => "meixner",
            FamilyKind::Narayana => "narayana",
            FamilyKind::NarayanaReduced => "narayana-reduced",
            FamilyKind::NarayanaChristoffel => "narayana-christoffel",
            FamilyKind::NarayanaPerturbedP => "narayana-perturbed",
        }
    }

    pub fn params(&self) -> BTreeMap<String, BigRational> {
        let mut m = BTreeMap::new();
        match self {
            FamilyKind::Jacobi { alpha, beta } => {
                m.insert("alpha".into(), alpha.clone());
                m.insert("beta".into(), beta.clone());
            }
            FamilyKind::Laguerre { alpha } => {
                m.insert("alpha".into(), alpha.clone());
            }
            FamilyKind::Krawtchouk { p, big_n } => {
                m.insert("p".into(), p.clone());
                m.insert("N".into(), BigRational::from_integer((*big_n).into()));
            }
            FamilyKind::Meixner { t, w } => {
                m.insert("t".into(), t.clone());
                m.insert("w".into(), w.clone());
            }
            _ => {}
        }
        m
    }

    /// Build a kind from its name and a parameter map.
    pub fn from_parts(name: &str, params: &BTreeMap<String, BigRational>) -> Result<Self> {
        let get = |key: &str| {
            params
                .get(key)
                .cloned()
                .ok_or_else(|| Error::InvalidParameter(format!("{name} requires parameter {key}")))
        };
        Ok(match name {
            "jacobi" => FamilyKind::Jacobi {
                alpha: get("alpha")?,
                beta: get("beta")?,
            },
            "laguerre" => FamilyKind::Laguerre { alpha: get("alpha")? },
            "krawtchouk" => {
                let n = get("N")?;
                if !n.is_integer() || n.is_negative() {
                    return Err(Error::InvalidParameter(format!(
                        "krawtchouk N must be a nonnegative integer, got {}",
                        format_rational(&n)
                    )));
                }
                FamilyKind::Krawtchouk {
                    p: get("p")?,
                    big_n: n
                        .to_integer()
                        .to_u64()
                        .ok_or_else(|| Error::InvalidParameter("krawtchouk N out of range".into()))?,
                }
            }
            "meixner" => FamilyKind::Meixner {
                t: get("t")?,
                w: get("w")?,
            },
            "narayana" => FamilyKind::Narayana,
            "narayana-reduced" => FamilyKind::NarayanaReduced,
            "narayana-christoffel" => FamilyKind::NarayanaChristoffel,
            "narayana-perturbed" => FamilyKind::NarayanaPerturbedP,
            other => return Err(Error::InvalidParameter(format!("unknown family {other:?}"))),
        })
    }
}

/// One member of a family: kind, parameters and index `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    pub n: usize,
}

impl FamilySpec {
    pub fn new(kind: FamilyKind, n: usize) -> Result<Self> {
        let spec = FamilySpec { kind, n };
        spec.validate()?;
        Ok(spec)
    }

    pub fn jacobi(alpha: BigRational, beta: BigRational, n: usize) -> Result<Self> {
        Self::new(FamilyKind::Jacobi { alpha, beta }, n)
    }

    pub fn laguerre(alpha: BigRational, n: usize) -> Result<Self> {
        Self::new(FamilyKind::Laguerre { alpha }, n)
    }

    pub fn krawtchouk(p: BigRational, big_n: u64, n: usize) -> Result<Self> {
        Self::new(FamilyKind::Krawtchouk { p, big_n }, n)
    }

    pub fn meixner(t: BigRational, w: BigRational, n: usize) -> Result<Self> {
        Self::new(FamilyKind::Meixner { t, w }, n)
    }

    /// Same kind and parameters at another index.
    pub fn with_n(&self, n: usize) -> Result<Self> {
        Self::new(self.kind.clone(), n)
    }

    pub fn validate(&self) -> Result<()> {
        let minus_one = q(-1, 1);
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        match &self.kind {
            FamilyKind::Jacobi { alpha, beta } => {
                if *alpha <= minus_one {
                    return bad(format!("jacobi requires alpha > -1, got {}", format_rational(alpha)));
                }
                if *beta <= minus_one {
                    return bad(format!("jacobi requires beta > -1, got {}", format_rational(beta)));
                }
            }
            FamilyKind::Laguerre { alpha } => {
                if *alpha <= minus_one {
                    return bad(format!("laguerre requires alpha > -1, got {}", format_rational(alpha)));
                }
            }
            FamilyKind::Krawtchouk { p, big_n } => {
                if !p.is_positive() || *p >= BigRational::one() {
                    return bad(format!("krawtchouk requires 0 < p < 1, got {}", format_rational(p)));
                }
                if *big_n < 1 {
                    return bad("krawtchouk requires N >= 1".into());
                }
                if self.n as u64 > *big_n {
                    return bad(format!("krawtchouk requires n <= N, got n = {} > N = {big_n}", self.n));
                }
            }
            FamilyKind::Meixner { t, w } => {
                if !t.is_positive() {
                    return bad(format!("meixner requires t > 0, got {}", format_rational(t)));
                }
                if !w.is_positive() || *w >= BigRational::one() {
                    return bad(format!("meixner requires 0 < w < 1, got {}", format_rational(w)));
                }
            }
            FamilyKind::Narayana | FamilyKind::NarayanaReduced => {
                if self.n < 1 {
                    return bad(format!("{} requires n >= 1", self.kind.name()));
                }
            }
            FamilyKind::NarayanaChristoffel | FamilyKind::NarayanaPerturbedP => {
                if self.n < 2 {
                    return bad(format!("{} requires n >= 2", self.kind.name()));
                }
            }
        }
        Ok(())
    }

    /// Degree of the polynomial this spec denotes.
    pub fn degree(&self) -> usize {
        match self.kind {
            FamilyKind::NarayanaReduced | FamilyKind::NarayanaChristoffel | FamilyKind::NarayanaPerturbedP => {
                self.n - 1
            }
            _ => self.n,
        }
    }

    /// Families with a three-term recurrence and positive `lambda`.
    pub fn is_orthogonal(&self) -> bool {
        matches!(
            self.kind,
            FamilyKind::Jacobi { .. }
                | FamilyKind::Laguerre { .. }
                | FamilyKind::Krawtchouk { .. }
                | FamilyKind::Meixner { .. }
        )
    }

    /// Open interval known to contain every zero.
    pub fn support(&self) -> (f64, f64) {
        match &self.kind {
            FamilyKind::Jacobi { .. } => (-1.0, 1.0),
            FamilyKind::Laguerre { .. } | FamilyKind::Meixner { .. } => (0.0, f64::INFINITY),
            FamilyKind::Krawtchouk { big_n, .. } => (0.0, *big_n as f64),
            FamilyKind::Narayana => (f64::NEG_INFINITY, 0.0),
            _ => (f64::NEG_INFINITY, 0.0),
        }
    }

    pub fn label(&self) -> String {
        let params = self
            .kind
            .params()
            .iter()
            .map(|(k, v)| format!("{k}={}", format_rational(v)))
            .collect::<Vec<_>>()
            .join(",");
        if params.is_empty() {
            format!("{}[n={}]", self.kind.name(), self.n)
        } else {
            format!("{}[{params};n={}]", self.kind.name(), self.n)
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

#[derive(Serialize, Deserialize)]
struct FamilySpecWire {
    kind: String,
    #[serde(default)]
    params: BTreeMap<String, String>,
    n: usize,
}

impl Serialize for FamilySpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        FamilySpecWire {
            kind: self.kind.name().to_string(),
            params: self
                .kind
                .params()
                .iter()
                .map(|(k, v)| (k.clone(), format_rational(v)))
                .collect(),
            n: self.n,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FamilySpec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let wire = FamilySpecWire::deserialize(deserializer)?;
        let params = wire
            .params
            .iter()
            .map(|(k, v)| parse_rational(v).map(|r| (k.clone(), r)))
            .collect::<Result<BTreeMap<_, _>>>()
            .map_err(D::Error::custom)?;
        let kind = FamilyKind::from_parts(&wire.kind, &params).map_err(D::Error::custom)?;
        FamilySpec::new(kind, wire.n).map_err(D::Error::custom)
    }
}

// ---------------------------------------------------------------------------
// combinatorics

pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Rising factorial `(a)_k = a (a+1) ... (a+k-1)`, by direct product.
pub fn pochhammer(a: &BigRational, k: usize) -> BigRational {
    (0..k).fold(BigRational::one(), |acc, i| acc * (a + q(i as i64, 1)))
}

fn int(k: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(k))
}

// ---------------------------------------------------------------------------
// recurrences

/// Monic three-term recurrence `P_{k+1} = (x - c[k]) P_k - lambda[k] P_{k-1}`.
///
/// Index `k` holds the coefficients of the step from degree `k` to `k + 1`;
/// `lambda[0]` multiplies `P_{-1} = 0` and is stored as zero.
#[derive(Debug, Clone, PartialEq)]
pub struct RecurrenceCoeffs {
    pub c: Vec<BigRational>,
    pub lambda: Vec<BigRational>,
}

impl RecurrenceCoeffs {
    pub fn len(&self) -> usize {
        self.c.len()
    }

    pub fn is_empty(&self) -> bool {
        self.c.is_empty()
    }

    /// Builds the monic polynomial of degree `self.len()`.
    pub fn polynomial(&self) -> QPoly {
        let mut prev = QPoly::zero();
        let mut cur = QPoly::one();
        for (c, lam) in self.c.iter().zip(&self.lambda) {
            let next = &cur.mul_linear(c.clone()) - &prev.scale(lam);
            prev = cur;
            cur = next;
        }
        cur
    }

    pub fn to_f64(&self) -> (Vec<f64>, Vec<f64>) {
        (
            self.c.iter().map(rational_to_f64).collect(),
            self.lambda.iter().map(rational_to_f64).collect(),
        )
    }
}

/// Recurrence coefficients for the first `steps` steps of an orthogonal family.
pub fn recurrence_coeffs(kind: &FamilyKind, steps: usize) -> Result<RecurrenceCoeffs> {
    let mut c = Vec::with_capacity(steps);
    let mut lambda = Vec::with_capacity(steps);
    for k in 0..steps {
        let kk = int(k);
        let (ck, lk) = match kind {
            FamilyKind::Jacobi { alpha, beta } => jacobi_step(alpha, beta, k),
            FamilyKind::Laguerre { alpha } => {
                let ck = q(2 * k as i64 + 1, 1) + alpha;
                let lk = &kk * (&kk + alpha);
                (ck, lk)
            }
            FamilyKind::Krawtchouk { p, big_n } => {
                let n = BigRational::from_integer((*big_n).into());
                let one_m_p = BigRational::one() - p;
                let ck = p * (&n - &kk) + &kk * &one_m_p;
                let lk = &kk * p * &one_m_p * (&n - &kk + BigRational::one());
                (ck, lk)
            }
            FamilyKind::Meixner { t, w } => {
                let one_m_w = BigRational::one() - w;
                let ck = (&kk + w * (&kk + t)) / &one_m_w;
                let lk = w * &kk * (&kk + t - BigRational::one()) / (&one_m_w * &one_m_w);
                (ck, lk)
            }
            other => {
                return Err(Error::Unsupported(format!(
                    "three-term recurrence coefficients for {}",
                    other.name()
                )))
            }
        };
        c.push(ck);
        lambda.push(if k == 0 { BigRational::zero() } else { lk });
    }
    Ok(RecurrenceCoeffs { c, lambda })
}

fn jacobi_step(alpha: &BigRational, beta: &BigRational, k: usize) -> (BigRational, BigRational) {
    let two = q(2, 1);
    let ab = alpha + beta;
    if k == 0 {
        return ((beta - alpha) / (&ab + &two), BigRational::zero());
    }
    let kk = int(k);
    let s = &two * &kk + &ab;
    let c = (beta * beta - alpha * alpha) / (&s * (&s + &two));
    // The general lambda formula has a removable 0/0 at k = 1 when alpha + beta = -1.
    let lam = if k == 1 {
        q(4, 1) * (alpha + BigRational::one()) * (beta + BigRational::one())
            / ((&ab + &two) * (&ab + &two) * (&ab + q(3, 1)))
    } else {
        q(4, 1) * &kk * (&kk + alpha) * (&kk + beta) * (&kk + &ab)
            / (&s * &s * (&s + BigRational::one()) * (&s - BigRational::one()))
    };
    (c, lam)
}

/// Monic polynomial of the spec, built by forward recurrence where the family
/// has one; Christoffel and perturbed Narayana use their own constructions.
pub fn monic_by_recurrence(spec: &FamilySpec) -> Result<QPoly> {
    spec.validate()?;
    match &spec.kind {
        FamilyKind::Narayana => Ok(narayana_by_recurrence(spec.n, false)),
        FamilyKind::NarayanaReduced => Ok(narayana_by_recurrence(spec.n, true)),
        FamilyKind::NarayanaChristoffel => narayana_christoffel(spec.n),
        FamilyKind::NarayanaPerturbedP => narayana_perturbed_p(spec.n),
        kind => Ok(recurrence_coeffs(kind, spec.n)?.polynomial()),
    }
}

/// `(n+2) N_{n+1} = (2n+1)(x+1) N_n - (n-1)(x-1)^2 N_{n-1}`, seeded with
/// `N_1 = x` (or `1` for the reduced polynomials).
fn narayana_by_recurrence(n: usize, reduced: bool) -> QPoly {
    let x_plus_1 = Poly::new(vec![q(1, 1), q(1, 1)]);
    let x_minus_1_sq = Poly::new(vec![q(1, 1), q(-2, 1), q(1, 1)]);
    let mut prev = QPoly::zero();
    let mut cur = if reduced { QPoly::one() } else { QPoly::x() };
    for k in 1..n {
        let kk = k as i64;
        let a = &x_plus_1 * &cur.scale(&q(2 * kk + 1, kk + 2));
        let b = &x_minus_1_sq * &prev.scale(&q(kk - 1, kk + 2));
        prev = cur;
        cur = &a - &b;
    }
    cur
}

// ---------------------------------------------------------------------------
// Narayana

/// Narayana number `c_{n,k} = (1/n) C(n,k) C(n,k-1)`.
pub fn narayana_coeff(n: usize, k: usize) -> Result<BigRational> {
    if n < 1 || k < 1 || k > n {
        return Err(Error::OutOfRange(format!(
            "narayana_coeff requires 1 <= k <= n, got n={n}, k={k}"
        )));
    }
    let (n, k) = (n as i64, k as i64);
    Ok(BigRational::new(binomial(n, k) * binomial(n, k - 1), BigInt::from(n)))
}

/// `N_n(x)` from its coefficients.
pub fn narayana(n: usize) -> Result<QPoly> {
    if n < 1 {
        return Err(Error::OutOfRange("narayana requires n >= 1".into()));
    }
    let mut cs = vec![BigRational::zero()];
    for k in 1..=n {
        cs.push(narayana_coeff(n, k)?);
    }
    Ok(Poly::new(cs))
}

/// Reduced Narayana polynomial `N_n(x)/x`, degree `n - 1`, constant term 1.
pub fn narayana_reduced(n: usize) -> Result<QPoly> {
    if n < 1 {
        return Err(Error::OutOfRange("narayana_reduced requires n >= 1".into()));
    }
    Ok(Poly::new(
        (0..n).map(|j| narayana_coeff(n, j + 1)).collect::<Result<_>>()?,
    ))
}

/// `rho_n = N_{n+1}(1) / N_n(1)` in closed form.
pub fn narayana_rho(n: usize) -> BigRational {
    let n = n as i64;
    q(2 * (2 * n + 1), n + 2)
}

/// Christoffel quotient `(N_{n+1} - rho_n N_n) / (x - 1)` of reduced Narayana
/// polynomials. Built by synthetic division and by the closed-form
/// coefficients `(3n - 2j)/(n + 2) c_{n,j+1}`; the two must agree exactly.
pub fn narayana_christoffel(n: usize) -> Result<QPoly> {
    if n < 2 {
        return Err(Error::OutOfRange("narayana_christoffel requires n >= 2".into()));
    }
    let by_division = narayana_christoffel_by_division(n)?;
    let closed = narayana_christoffel_closed_form(n)?;
    if by_division != closed {
        return Err(Error::InconsistentConstruction(format!(
            "christoffel quotient at n={n}: division {by_division:?} vs closed form {closed:?}"
        )));
    }
    Ok(closed)
}

pub fn narayana_christoffel_by_division(n: usize) -> Result<QPoly> {
    let next = narayana_reduced(n + 1)?;
    let cur = narayana_reduced(n)?;
    let rho = narayana_rho(n);
    let defining_ratio = next.eval(&q(1, 1)) / cur.eval(&q(1, 1));
    if defining_ratio != rho {
        return Err(Error::InconsistentConstruction(format!(
            "rho_{n}: closed form {} vs N_(n+1)(1)/N_n(1) = {}",
            format_rational(&rho),
            format_rational(&defining_ratio)
        )));
    }
    let numerator = &next - &cur.scale(&rho);
    let (quot, rem) = numerator.div_linear(&q(1, 1));
    if !rem.is_zero() {
        return Err(Error::InconsistentConstruction(format!(
            "N_(n+1) - rho_n N_n does not vanish at 1 for n={n}"
        )));
    }
    Ok(quot)
}

pub fn narayana_christoffel_closed_form(n: usize) -> Result<QPoly> {
    let nn = n as i64;
    Ok(Poly::new(
        (0..n)
            .map(|j| Ok(q(3 * nn - 2 * j as i64, nn + 2) * narayana_coeff(n, j + 1)?))
            .collect::<Result<_>>()?,
    ))
}

/// `d_{n,j} = C(n-1,j)^2 + C(n-1,j+1) C(n-1,j-1)`.
pub fn narayana_perturbed_coeff(n: usize, j: usize) -> BigInt {
    let m = n as i64 - 1;
    let j = j as i64;
    let c = binomial(m, j);
    &c * &c + binomial(m, j + 1) * binomial(m, j - 1)
}

/// `sum_j d_{n,j} x^j`, degree `n - 1`.
pub fn narayana_perturbed_p(n: usize) -> Result<QPoly> {
    if n < 2 {
        return Err(Error::OutOfRange("narayana_perturbed_p requires n >= 2".into()));
    }
    Ok(Poly::new(
        (0..n)
            .map(|j| BigRational::from_integer(narayana_perturbed_coeff(n, j)))
            .collect(),
    ))
}

// ---------------------------------------------------------------------------
// hypergeometric route

/// `(-x)_k` as a polynomial in `x`.
fn neg_x_pochhammer(k: usize) -> QPoly {
    // (-x)(-x+1)...(-x+k-1) = (-1)^k x (x-1) ... (x-k+1)
    let roots: Vec<BigRational> = (0..k).map(|i| q(i as i64, 1)).collect();
    let p = Poly::from_roots(&roots);
    if k % 2 == 1 {
        -&p
    } else {
        p
    }
}

/// Monic Krawtchouk or Meixner polynomial from its terminating 2F1 sum.
pub fn hypergeometric_check(spec: &FamilySpec) -> Result<QPoly> {
    spec.validate()?;
    let n = spec.n;
    let minus_n = q(-(n as i64), 1);
    let (prefactor, lower, arg) = match &spec.kind {
        FamilyKind::Krawtchouk { p, big_n } => {
            let minus_big_n = q(-(*big_n as i64), 1);
            let pre = pochhammer(&minus_big_n, n) * pow(p, n);
            (pre, minus_big_n, BigRational::one() / p)
        }
        FamilyKind::Meixner { t, w } => {
            let w_m1 = w - BigRational::one();
            let pre = pochhammer(t, n) * pow(w, n) / pow(&w_m1, n);
            (pre, t.clone(), BigRational::one() - BigRational::one() / w)
        }
        other => {
            return Err(Error::Unsupported(format!(
                "hypergeometric representation for {}",
                other.name()
            )))
        }
    };
    let mut sum = QPoly::zero();
    for k in 0..=n {
        let denom = pochhammer(&lower, k) * BigRational::from_integer(factorial(k as u64));
        if denom.is_zero() {
            return Err(Error::InvalidParameter(format!(
                "vanishing lower parameter in the terminating sum at k={k}"
            )));
        }
        let coeff = pochhammer(&minus_n, k) * pow(&arg, k) / denom;
        sum = &sum + &neg_x_pochhammer(k).scale(&coeff);
    }
    Ok(sum.scale(&prefactor))
}

fn pow(a: &BigRational, k: usize) -> BigRational {
    (0..k).fold(BigRational::one(), |acc, _| acc * a)
}

// ---------------------------------------------------------------------------
// weights and Christoffel steps

/// Discrete orthogonality weight at an integer point of the support.
pub fn weight_at(spec: &FamilySpec, x: i64) -> Result<BigRational> {
    match &spec.kind {
        FamilyKind::Krawtchouk { p, big_n } => {
            let big_n = *big_n as i64;
            if x < 0 || x > big_n {
                return Err(Error::OutOfRange(format!("krawtchouk weight outside 0..={big_n}: {x}")));
            }
            Ok(BigRational::from_integer(binomial(big_n, x))
                * pow(p, x as usize)
                * pow(&(BigRational::one() - p), (big_n - x) as usize))
        }
        FamilyKind::Meixner { t, w } => {
            if x < 0 {
                return Err(Error::OutOfRange(format!("meixner weight at negative point {x}")));
            }
            let x = x as usize;
            Ok(pochhammer(t, x) * pow(w, x) / BigRational::from_integer(factorial(x as u64)))
        }
        other => Err(Error::Unsupported(format!("discrete weight for {}", other.name()))),
    }
}

/// `K_k(M; p, M) = k! C(M, k) (1 - p)^k`: the monic Krawtchouk polynomial with
/// parameter `M` evaluated at the right end of its support.
pub fn krawtchouk_at_support_end(k: usize, p: &BigRational, big_m: u64) -> BigRational {
    BigRational::from_integer(factorial(k as u64) * binomial(big_m as i64, k as i64))
        * pow(&(BigRational::one() - p), k)
}

/// `K_m(x; p, N)` as the Christoffel quotient of the `N + 1` family at `N + 1`:
/// `(ratio K_m(x; p, N+1) - K_{m+1}(x; p, N+1)) / (N + 1 - x)`, with the ratio
/// taken from the closed-form end-point evaluation.
pub fn krawtchouk_by_christoffel(m: usize, p: &BigRational, big_n: u64) -> Result<QPoly> {
    FamilySpec::krawtchouk(p.clone(), big_n, m)?;
    let up = FamilyKind::Krawtchouk {
        p: p.clone(),
        big_n: big_n + 1,
    };
    let rec = recurrence_coeffs(&up, m + 1)?;
    let k_m = RecurrenceCoeffs {
        c: rec.c[..m].to_vec(),
        lambda: rec.lambda[..m].to_vec(),
    }
    .polynomial();
    let k_m1 = rec.polynomial();
    let ratio = krawtchouk_at_support_end(m + 1, p, big_n + 1) / krawtchouk_at_support_end(m, p, big_n + 1);
    let numerator = &k_m.scale(&ratio) - &k_m1;
    let end = q(big_n as i64 + 1, 1);
    let (quot, rem) = numerator.div_linear(&end);
    if !rem.is_zero() {
        return Err(Error::InconsistentConstruction(format!(
            "krawtchouk kernel numerator does not vanish at N+1 (m={m}, N={big_n})"
        )));
    }
    // dividing by (N + 1 - x) = -(x - (N + 1))
    Ok(-&quot)
}

/// `M_m(x; t+1, w) = (M_{m+1}(x; t, w) - (m + t)/(w - 1) M_m(x; t, w)) / (x + t)`.
pub fn meixner_by_christoffel(m: usize, t: &BigRational, w: &BigRational) -> Result<QPoly> {
    FamilySpec::meixner(t + BigRational::one(), w.clone(), m)?;
    let base = FamilyKind::Meixner {
        t: t.clone(),
        w: w.clone(),
    };
    let rec = recurrence_coeffs(&base, m + 1)?;
    let m_m = RecurrenceCoeffs {
        c: rec.c[..m].to_vec(),
        lambda: rec.lambda[..m].to_vec(),
    }
    .polynomial();
    let m_m1 = rec.polynomial();
    let ratio = (int(m) + t) / (w - BigRational::one());
    let numerator = &m_m1 - &m_m.scale(&ratio);
    let (quot, rem) = numerator.div_linear(&(-t));
    if !rem.is_zero() {
        return Err(Error::InconsistentConstruction(format!(
            "meixner kernel numerator does not vanish at -t (m={m})"
        )));
    }
    Ok(quot)
}

// ---------------------------------------------------------------------------
// extra points

/// The interlacing results, each pairing a mixed relation with its added point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Corollary {
    /// `K_{n+1}(x;p,N)` against `K_n(x;p,N+1)`.
    KrawtchoukShift,
    /// `M_{n+1}(x;t+1,w)` against `M_n(x;t,w)`.
    MeixnerShift,
    /// Christoffel quotient of reduced Narayana polynomials against `N_n`.
    NarayanaChristoffel,
    /// The `d_{n,j}` polynomial against `N_n`.
    NarayanaPerturbed,
    /// `P^{(a,b+1)}_{n+1}` against `P^{(a,b)}_n`.
    JacobiBetaShift,
    /// `P^{(a+1,b+1)}_n` against `P^{(a,b)}_n`.
    JacobiParamShift,
    /// `L^{(a+1)}_{n+1}` against `L^{(a)}_n`.
    LaguerreShift,
}

impl Corollary {
    pub const ALL: [Corollary; 7] = [
        Corollary::KrawtchoukShift,
        Corollary::MeixnerShift,
        Corollary::NarayanaChristoffel,
        Corollary::NarayanaPerturbed,
        Corollary::JacobiBetaShift,
        Corollary::JacobiParamShift,
        Corollary::LaguerreShift,
    ];

    /// Stable command-line identifier.
    pub fn id(self) -> &'static str {
        match self {
            Corollary::KrawtchoukShift => "krawtchouk-3.1",
            Corollary::MeixnerShift => "meixner-3.2",
            Corollary::NarayanaChristoffel => "narayana-3.3",
            Corollary::NarayanaPerturbed => "narayana-3.4",
            Corollary::JacobiBetaShift => "jacobi-3.5",
            Corollary::JacobiParamShift => "jacobi-3.6",
            Corollary::LaguerreShift => "laguerre-3.7",
        }
    }

    /// Name of the family whose member indexes the relation.
    pub fn base_family(self) -> &'static str {
        match self {
            Corollary::KrawtchoukShift => "krawtchouk",
            Corollary::MeixnerShift => "meixner",
            Corollary::NarayanaChristoffel | Corollary::NarayanaPerturbed => "narayana-reduced",
            Corollary::JacobiBetaShift | Corollary::JacobiParamShift => "jacobi",
            Corollary::LaguerreShift => "laguerre",
        }
    }

    fn alias(self) -> &'static str {
        match self {
            Corollary::KrawtchoukShift => "krawtchouk-shift",
            Corollary::MeixnerShift => "meixner-shift",
            Corollary::NarayanaChristoffel => "narayana-christoffel",
            Corollary::NarayanaPerturbed => "narayana-perturbed",
            Corollary::JacobiBetaShift => "jacobi-beta-shift",
            Corollary::JacobiParamShift => "jacobi-param-shift",
            Corollary::LaguerreShift => "laguerre-shift",
        }
    }
}

impl fmt::Display for Corollary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Corollary {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Corollary::ALL
            .into_iter()
            .find(|c| c.id() == s || c.alias() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown corollary id {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExtraPoint {
    pub family: FamilySpec,
    pub value: BigRational,
    pub corollary: Corollary,
}

/// Closed-form added point `E` for a family member and interlacing result.
///
/// `spec` is the family of the degree-`n` polynomial the point is adjoined to,
/// with `spec.n` the index used by the result.
pub fn extra_point(spec: &FamilySpec, corollary: Corollary) -> Result<ExtraPoint> {
    let n = int(spec.n);
    let one = BigRational::one();
    let unsupported = || {
        Err(Error::Unsupported(format!(
            "extra point for {} with {}",
            spec.kind.name(),
            corollary
        )))
    };
    let value = match (&spec.kind, corollary) {
        (FamilyKind::Krawtchouk { p, big_n }, Corollary::KrawtchoukShift) => q(*big_n as i64 + 1, 1) - p * (&n + &one),
        (FamilyKind::Meixner { t, w }, Corollary::MeixnerShift) => -t + w * (&n + &one) / (&one - w),
        (FamilyKind::Jacobi { alpha, beta }, Corollary::JacobiBetaShift) => {
            let s = q(2, 1) * &n + alpha + beta;
            -&one + q(2, 1) * (&n + &one) * (&n + alpha + &one) / ((&s + q(2, 1)) * (&s + q(3, 1)))
        }
        (FamilyKind::Jacobi { alpha, beta }, Corollary::JacobiParamShift) => {
            (alpha - beta) / (q(2, 1) * &n + alpha + beta + q(2, 1))
        }
        (FamilyKind::Laguerre { .. }, Corollary::LaguerreShift) => &n + &one,
        (
            FamilyKind::Narayana
            | FamilyKind::NarayanaReduced
            | FamilyKind::NarayanaChristoffel
            | FamilyKind::NarayanaPerturbedP,
            Corollary::NarayanaChristoffel,
        ) => one.clone(),
        (
            FamilyKind::Narayana
            | FamilyKind::NarayanaReduced
            | FamilyKind::NarayanaChristoffel
            | FamilyKind::NarayanaPerturbedP,
            Corollary::NarayanaPerturbed,
        ) => -one.clone(),
        _ => return unsupported(),
    };
    Ok(ExtraPoint {
        family: spec.clone(),
        value,
        corollary,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qp(cs: &[(i64, i64)]) -> QPoly {
        Poly::new(cs.iter().map(|&(n, d)| q(n, d)).collect())
    }

    #[test]
    fn recurrence_examples() {
        let l1 = monic_by_recurrence(&FamilySpec::laguerre(q(0, 1), 1).unwrap()).unwrap();
        assert_eq!(l1, qp(&[(-1, 1), (1, 1)]));
        let k1 = monic_by_recurrence(&FamilySpec::krawtchouk(q(1, 2), 4, 1).unwrap()).unwrap();
        assert_eq!(k1, qp(&[(-2, 1), (1, 1)]));
        let j1 = monic_by_recurrence(&FamilySpec::jacobi(q(3, 2), q(3, 2), 1).unwrap()).unwrap();
        assert_eq!(j1, QPoly::x());
    }

    #[test]
    fn jacobi_removable_singularities() {
        // alpha = beta = 0 hits 0/0 in the generic c_1; alpha + beta = -1 hits it in lambda_2
        let legendre2 = monic_by_recurrence(&FamilySpec::jacobi(q(0, 1), q(0, 1), 2).unwrap()).unwrap();
        assert_eq!(legendre2, qp(&[(-1, 3), (0, 1), (1, 1)]));
        // Chebyshev first kind, monic T_3 / 4 = x^3 - 3x/4
        let t3 = monic_by_recurrence(&FamilySpec::jacobi(q(-1, 2), q(-1, 2), 3).unwrap()).unwrap();
        assert_eq!(t3, qp(&[(0, 1), (-3, 4), (0, 1), (1, 1)]));
    }

    #[test]
    fn invalid_parameters_are_rejected() {
        assert!(FamilySpec::jacobi(q(-1, 1), q(0, 1), 2).is_err());
        assert!(FamilySpec::laguerre(q(-3, 2), 2).is_err());
        assert!(FamilySpec::krawtchouk(q(1, 2), 4, 5).is_err());
        assert!(FamilySpec::krawtchouk(q(1, 1), 4, 1).is_err());
        assert!(FamilySpec::meixner(q(0, 1), q(1, 2), 1).is_err());
        assert!(FamilySpec::meixner(q(1, 1), q(1, 1), 1).is_err());
        assert!(FamilySpec::new(FamilyKind::NarayanaReduced, 0).is_err());
        assert!(FamilySpec::new(FamilyKind::NarayanaChristoffel, 1).is_err());
    }

    #[test]
    fn narayana_numbers() {
        assert_eq!(narayana_coeff(3, 2).unwrap(), q(3, 1));
        assert_eq!(narayana_coeff(1, 1).unwrap(), q(1, 1));
        assert_eq!(narayana_coeff(4, 2).unwrap(), q(6, 1));
        assert!(narayana_coeff(3, 0).is_err());
        assert!(narayana_coeff(3, 4).is_err());
    }

    #[test]
    fn reduced_narayana_examples() {
        assert_eq!(narayana_reduced(1).unwrap(), QPoly::one());
        assert_eq!(narayana_reduced(3).unwrap(), qp(&[(1, 1), (3, 1), (1, 1)]));
        let n2 = narayana_reduced(2).unwrap();
        assert_eq!(n2, qp(&[(1, 1), (1, 1)]));
        assert!(n2.eval(&q(-1, 1)).is_zero());
        assert!(narayana_reduced(0).is_err());
    }

    #[test]
    fn narayana_recurrence_matches_coefficients() {
        for n in 1..=15 {
            assert_eq!(narayana_by_recurrence(n, false), narayana(n).unwrap(), "n={n}");
            assert_eq!(narayana_by_recurrence(n, true), narayana_reduced(n).unwrap(), "n={n}");
        }
    }

    #[test]
    fn christoffel_quotient_examples() {
        assert_eq!(narayana_rho(2), q(5, 2));
        assert_eq!(narayana_christoffel(2).unwrap(), qp(&[(3, 2), (1, 1)]));
        assert_eq!(narayana_christoffel(3).unwrap().coeff(0), q(9, 5));
        for n in 1..=12 {
            let num = &narayana_reduced(n + 1).unwrap() - &narayana_reduced(n).unwrap().scale(&narayana_rho(n));
            assert!(num.eval(&q(1, 1)).is_zero(), "n={n}");
        }
    }

    #[test]
    fn perturbed_examples() {
        assert_eq!(narayana_perturbed_p(2).unwrap(), qp(&[(1, 1), (1, 1)]));
        assert_eq!(narayana_perturbed_p(3).unwrap(), qp(&[(1, 1), (5, 1), (1, 1)]));
        assert!(narayana_perturbed_p(1).is_err());
        for n in 2..=12 {
            let lhs = narayana_reduced(n).unwrap().scale(&q(n as i64, 1));
            let prev = narayana_reduced(n - 1).unwrap().scale(&q(n as i64 - 1, 1));
            let rhs = &narayana_perturbed_p(n).unwrap() + &(&Poly::new(vec![q(1, 1), q(1, 1)]) * &prev);
            assert_eq!(lhs, rhs, "n={n}");
        }
    }

    #[test]
    fn hypergeometric_examples() {
        let k0 = hypergeometric_check(&FamilySpec::krawtchouk(q(1, 2), 4, 0).unwrap()).unwrap();
        assert_eq!(k0, QPoly::one());
        let k1 = hypergeometric_check(&FamilySpec::krawtchouk(q(1, 2), 4, 1).unwrap()).unwrap();
        assert_eq!(k1, qp(&[(-2, 1), (1, 1)]));
        let spec = FamilySpec::meixner(q(1, 1), q(1, 2), 1).unwrap();
        // M_1 = x - t w / (1 - w) = x - 1
        assert_eq!(hypergeometric_check(&spec).unwrap(), qp(&[(-1, 1), (1, 1)]));
        assert_eq!(
            hypergeometric_check(&spec).unwrap(),
            monic_by_recurrence(&spec).unwrap()
        );
        assert!(hypergeometric_check(&FamilySpec::laguerre(q(0, 1), 2).unwrap()).is_err());
    }

    #[test]
    fn routes_agree_on_grid() {
        for n in 0..=10 {
            for big_n in (n.max(1) as u64)..=12 {
                for p in [q(1, 4), q(1, 2), q(2, 3)] {
                    let spec = FamilySpec::krawtchouk(p, big_n, n).unwrap();
                    assert_eq!(
                        hypergeometric_check(&spec).unwrap(),
                        monic_by_recurrence(&spec).unwrap()
                    );
                }
            }
            for t in [q(1, 2), q(1, 1), q(3, 1)] {
                for w in [q(1, 4), q(1, 2), q(3, 4)] {
                    let spec = FamilySpec::meixner(t.clone(), w, n).unwrap();
                    let rec = monic_by_recurrence(&spec).unwrap();
                    assert!(rec.is_monic() || n == 0);
                    assert_eq!(hypergeometric_check(&spec).unwrap(), rec);
                }
            }
        }
    }

    #[test]
    fn weights() {
        let k = FamilySpec::krawtchouk(q(1, 2), 2, 0).unwrap();
        assert_eq!(weight_at(&k, 0).unwrap(), q(1, 4));
        assert!(weight_at(&k, 3).is_err());
        let m = FamilySpec::meixner(q(2, 1), q(1, 2), 0).unwrap();
        assert_eq!(weight_at(&m, 0).unwrap(), q(1, 1));
        assert!(weight_at(&m, -1).is_err());
        // rho(x; t+1, w) t = (x + t) rho(x; t, w) at (3, 2, 1/2)
        let m_up = FamilySpec::meixner(q(3, 1), q(1, 2), 0).unwrap();
        assert_eq!(
            weight_at(&m_up, 3).unwrap() * q(2, 1),
            q(5, 1) * weight_at(&m, 3).unwrap()
        );
    }

    #[test]
    fn krawtchouk_end_point_evaluation() {
        for big_m in 1..=10u64 {
            for k in 0..=big_m as usize {
                for p in [q(1, 3), q(1, 2), q(4, 5)] {
                    let spec = FamilySpec::krawtchouk(p.clone(), big_m, k).unwrap();
                    let poly = monic_by_recurrence(&spec).unwrap();
                    assert_eq!(
                        poly.eval(&q(big_m as i64, 1)),
                        krawtchouk_at_support_end(k, &p, big_m),
                        "k={k} M={big_m}"
                    );
                }
            }
        }
    }

    #[test]
    fn christoffel_steps_match_recurrence() {
        for big_n in 1..=8u64 {
            for m in 0..=big_n as usize {
                let p = q(2, 5);
                let direct = monic_by_recurrence(&FamilySpec::krawtchouk(p.clone(), big_n, m).unwrap()).unwrap();
                assert_eq!(krawtchouk_by_christoffel(m, &p, big_n).unwrap(), direct);
            }
        }
        for m in 0..=8 {
            let (t, w) = (q(3, 2), q(1, 3));
            let direct = monic_by_recurrence(&FamilySpec::meixner(&t + q(1, 1), w.clone(), m).unwrap()).unwrap();
            assert_eq!(meixner_by_christoffel(m, &t, &w).unwrap(), direct);
        }
    }

    #[test]
    fn extra_points() {
        let j6 = FamilySpec::jacobi(q(2, 1), q(14, 1), 6).unwrap();
        assert_eq!(extra_point(&j6, Corollary::JacobiParamShift).unwrap().value, q(-2, 5));
        let j7 = FamilySpec::jacobi(q(14, 1), q(2, 1), 7).unwrap();
        assert_eq!(extra_point(&j7, Corollary::JacobiParamShift).unwrap().value, q(3, 8));
        let l5 = FamilySpec::laguerre(q(0, 1), 5).unwrap();
        assert_eq!(extra_point(&l5, Corollary::LaguerreShift).unwrap().value, q(6, 1));
        let k = FamilySpec::krawtchouk(q(1, 2), 4, 2).unwrap();
        assert_eq!(extra_point(&k, Corollary::KrawtchoukShift).unwrap().value, q(7, 2));
        assert!(extra_point(&k, Corollary::LaguerreShift).is_err());
    }

    #[test]
    fn corollary_ids_round_trip() {
        for c in Corollary::ALL {
            assert_eq!(c.id().parse::<Corollary>().unwrap(), c);
            assert_eq!(c.alias().parse::<Corollary>().unwrap(), c);
        }
        assert!("jacobi-9.9".parse::<Corollary>().is_err());
    }

    #[test]
    fn spec_json() {
        let spec = FamilySpec::krawtchouk(q(1, 2), 4, 3).unwrap();
        let s = serde_json::to_string(&spec).unwrap();
        assert_eq!(s, r#"{"kind":"krawtchouk","params":{"N":"4","p":"1/2"},"n":3}"#);
        let back: FamilySpec = serde_json::from_str(&s).unwrap();
        assert_eq!(back, spec);
        assert!(
            serde_json::from_str::<FamilySpec>(r#"{"kind":"krawtchouk","params":{"N":"4","p":"1/2"},"n":5}"#).is_err()
        );
        assert!(
            serde_json::from_str::<FamilySpec>(r#"{"kind":"krawtchouk","params":{"N":"3/2","p":"1/2"},"n":1}"#)
                .is_err()
        );
    }
}
