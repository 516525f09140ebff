//! Dense univariate polynomials in ascending-degree order.
//!
//! [`Poly`] is generic over the coefficient field so that the exact
//! ([`QPoly`], arbitrary-precision rationals) and measured ([`FPoly`], `f64`)
//! paths share one implementation while staying distinct types. The dynamic
//! [`Polynomial`](crate::scalar::Polynomial) wrapper layers the runtime mode
//! check on top for serialized data.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// Coefficient field: exact rationals or binary floats.
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
}

impl<T> Field for T where
    T: Clone
        + PartialEq
        + fmt::Debug
        + Zero
        + One
        + Neg<Output = T>
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Div<Output = T>
{
}

/// Polynomial with coefficients `coeffs[i]` of `x^i`.
///
/// The leading coefficient is nonzero; the zero polynomial has no coefficients.
#[derive(Clone, PartialEq)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

pub type QPoly = Poly<BigRational>;
pub type FPoly = Poly<f64>;

impl<T: Field> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Poly::new(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Poly::new(vec![T::zero(), T::one()])
    }

    /// `x - root`.
    pub fn linear(root: T) -> Self {
        Poly::new(vec![-root, T::one()])
    }

    /// Monic polynomial with the given roots.
    pub fn from_roots(roots: &[T]) -> Self {
        roots.iter().fold(Poly::one(), |acc, r| acc.mul_linear(r.clone()))
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    /// Coefficient of `x^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    /// `(x - root) * self`.
    pub fn mul_linear(&self, root: T) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let n = self.coeffs.len();
        let mut out = Vec::with_capacity(n + 1);
        out.push(-(root.clone() * self.coeffs[0].clone()));
        for i in 1..n {
            out.push(self.coeffs[i - 1].clone() - root.clone() * self.coeffs[i].clone());
        }
        out.push(self.coeffs[n - 1].clone());
        Poly::new(out)
    }

    /// Synthetic division by `x - root`: returns `(quotient, remainder)`.
    pub fn div_linear(&self, root: &T) -> (Self, T) {
        if self.coeffs.is_empty() {
            return (Poly::zero(), T::zero());
        }
        let n = self.coeffs.len();
        let mut quot = vec![T::zero(); n - 1];
        let mut carry = self.coeffs[n - 1].clone();
        for i in (0..n - 1).rev() {
            quot[i] = carry.clone();
            carry = self.coeffs[i].clone() + carry * root.clone();
        }
        (Poly::new(quot), carry)
    }

    /// Euclidean division: `self = quot * divisor + rem` with `deg rem < deg divisor`.
    ///
    /// Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![T::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = rem[i + dd].clone() / lead.clone();
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = rem[i + j].clone() - c.clone() * d.clone();
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    /// Monic greatest common divisor; the zero polynomial when both inputs are zero.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn scale(&self, a: &T) -> Self {
        Poly::new(self.coeffs.iter().map(|c| c.clone() * a.clone()).collect())
    }

    /// `a * p + b * q` where `b` is itself a polynomial.
    pub fn linear_combine(a: &T, p: &Self, b: &Self, q: &Self) -> Self {
        &p.scale(a) + &(b * q)
    }

    pub fn derivative(&self) -> Self {
        let mut out = Vec::with_capacity(self.coeffs.len().saturating_sub(1));
        let mut k = T::zero();
        for c in self.coeffs.iter() {
            if !k.is_zero() {
                out.push(c.clone() * k.clone());
            }
            k = k + T::one();
        }
        Poly::new(out)
    }

    /// Divide through by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(lc) if !lc.is_one() => {
                let inv = T::one() / lc.clone();
                self.scale(&inv)
            }
            _ => self.clone(),
        }
    }

    /// `self(scale * x + shift)`.
    pub fn compose_affine(&self, scale: &T, shift: &T) -> Self {
        let inner = Poly::new(vec![shift.clone(), scale.clone()]);
        self.coeffs
            .iter()
            .rev()
            .fold(Poly::zero(), |acc, c| &(&acc * &inner) + &Poly::constant(c.clone()))
    }
}

impl QPoly {
    /// Float demotion; each coefficient is rounded independently.
    pub fn to_f64(&self) -> FPoly {
        Poly::new(self.coeffs.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect())
    }
}

impl<T: Field> Add for &Poly<T> {
    type Output = Poly<T>;
    fn add(self, rhs: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<T: Field> Sub for &Poly<T> {
    type Output = Poly<T>;
    fn sub(self, rhs: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<T: Field> Mul for &Poly<T> {
    type Output = Poly<T>;
    fn mul(self, rhs: &Poly<T>) -> Poly<T> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }
}

impl<T: Field> Neg for &Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl<T: Field + fmt::Display> fmt::Display for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})x")?,
                _ => write!(f, "({c})x^{i}")?,
            }
        }
        Ok(())
    }
}

impl<T: fmt::Debug> fmt::Debug for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Poly").field(&self.coeffs).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    fn qp(cs: &[i64]) -> QPoly {
        Poly::new(cs.iter().map(|&c| q(c, 1)).collect())
    }

    #[test]
    fn trailing_zeros_are_stripped() {
        let p = Poly::new(vec![q(1, 1), q(0, 1), q(0, 1)]);
        assert_eq!(p.degree(), Some(0));
        assert!(Poly::<f64>::new(vec![0.0, 0.0]).is_zero());
        assert_eq!(QPoly::zero().degree(), None);
    }

    #[test]
    fn eval_examples() {
        assert_eq!(qp(&[-1, 1]).eval(&q(1, 1)), q(0, 1));
        assert_eq!(qp(&[1, 3, 1]).eval(&q(1, 1)), q(5, 1));
        // x - N p at N = 4, p = 1/2
        let k1 = Poly::linear(q(2, 1));
        assert_eq!(k1.eval(&q(2, 1)), q(0, 1));
    }

    #[test]
    fn mul_linear_examples() {
        assert_eq!(QPoly::one().mul_linear(q(0, 1)), qp(&[0, 1]));
        assert_eq!(qp(&[1, 1]).mul_linear(q(1, 1)), qp(&[-1, 0, 1]));
        assert_eq!(qp(&[1, 3, 1]).mul_linear(q(1, 1)), qp(&[-1, -2, 2, 1]));
        assert!(QPoly::zero().mul_linear(q(3, 1)).is_zero());
    }

    #[test]
    fn linear_combine_examples() {
        let x = QPoly::x();
        let r = Poly::linear_combine(&q(1, 1), &x, &qp(&[-1]), &x);
        assert!(r.is_zero());
        let r = Poly::linear_combine(&q(1, 1), &qp(&[0, 0, 1]), &qp(&[-1, 1]), &x);
        assert_eq!(r, qp(&[0, -1, 2]));
    }

    #[test]
    fn div_linear_recovers_factor() {
        let p = qp(&[1, 3, 1]);
        let (quot, rem) = p.mul_linear(q(7, 3)).div_linear(&q(7, 3));
        assert_eq!(quot, p);
        assert!(rem.is_zero());
        let (_, rem) = qp(&[-1, 0, 1]).div_linear(&q(2, 1));
        assert_eq!(rem, q(3, 1));
    }

    #[test]
    fn euclidean_division_and_gcd() {
        let a = qp(&[-1, 0, 1]);
        let b = qp(&[1, 1]);
        let (quot, rem) = a.div_rem(&b);
        assert_eq!(quot, qp(&[-1, 1]));
        assert!(rem.is_zero());
        let (quot, rem) = qp(&[1, 2, 3]).div_rem(&qp(&[0, 2]));
        assert_eq!(quot, Poly::new(vec![q(1, 1), q(3, 2)]));
        assert_eq!(rem, qp(&[1]));
        assert_eq!(a.gcd(&qp(&[2, 2])), b);
        assert_eq!(qp(&[1, 1]).gcd(&qp(&[-1, 1])), QPoly::one());
        let (quot, rem) = qp(&[5]).div_rem(&qp(&[0, 1]));
        assert!(quot.is_zero());
        assert_eq!(rem, qp(&[5]));
    }

    #[test]
    fn compose_affine_shifts() {
        // (x - 1) at 2x + 3 is 2x + 2
        let p = qp(&[-1, 1]).compose_affine(&q(2, 1), &q(3, 1));
        assert_eq!(p, qp(&[2, 2]));
    }

    #[test]
    fn derivative_and_monic() {
        assert_eq!(qp(&[5, 3, 2]).derivative(), qp(&[3, 4]));
        assert!(qp(&[2, 4]).monic().is_monic());
    }

    #[test]
    fn exact_zero_test_has_no_threshold() {
        let tiny = BigRational::new(1.into(), num_bigint::BigInt::from(10).pow(30));
        assert!(!Poly::new(vec![q(0, 1), tiny]).is_zero());
    }
}
