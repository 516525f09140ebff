use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Member, MixedRelation, RelationKind, Shape};
use crate::error::{Error, Result};
use crate::families::{extra_point, Corollary, FamilyKind, FamilySpec};
use crate::poly::{Poly, QPoly};
use crate::scalar::{format_rational, q};

fn int(k: usize) -> BigRational {
    BigRational::from_integer(k.into())
}

fn finish(r: MixedRelation) -> Result<MixedRelation> {
    r.check_shape()?;
    if !super::verify_identity(&r) {
        return Err(Error::IdentityFailure(format!(
            "{} [{}]: residual {:?}",
            r.kind,
            r.params,
            r.residual()
        )));
    }
    Ok(r)
}

fn member(kind: FamilyKind, n: usize) -> Result<Member> {
    Member::from_spec(FamilySpec::new(kind, n)?)
}

fn mismatch(c: Corollary, base: &FamilySpec) -> Error {
    Error::InvalidParameter(format!("{c} cannot be built from a {} family", base.kind.name()))
}

/// Builds the mixed relation behind a corollary for the family member `base`,
/// whose index is the `n` of the relation. The identity is verified exactly
/// before the relation is returned.
pub fn build_relation(c: Corollary, base: &FamilySpec) -> Result<MixedRelation> {
    base.validate()?;
    let n = base.n;
    let nn = int(n);
    let one = BigRational::one();
    let e = extra_point(base, c)?.value;
    let kind = RelationKind::Corollary(c);
    let params = base.label();
    let r = match (c, &base.kind) {
        (Corollary::KrawtchoukShift, FamilyKind::Krawtchouk { p, big_n }) => {
            if n as u64 + 1 > *big_n {
                return Err(Error::InvalidParameter(format!(
                    "{c} needs n + 1 <= N, got n = {n}, N = {big_n}"
                )));
            }
            let up = FamilyKind::Krawtchouk {
                p: p.clone(),
                big_n: big_n + 1,
            };
            let n1 = BigRational::from_integer((*big_n + 1).into());
            MixedRelation {
                kind,
                shape: Shape::Thm1,
                a: QPoly::constant(p * (&one - p) * (&nn + &one) * (&n1 - &nn)),
                b: Poly::new(vec![n1.clone(), -one.clone()]),
                e,
                p: member(up.clone(), n)?,
                g: member(base.kind.clone(), n + 1)?,
                q: member(up, n + 1)?,
                interval: (0.0, *big_n as f64 + 1.0),
                params,
            }
        }
        (Corollary::MeixnerShift, FamilyKind::Meixner { t, w }) => {
            let wm1 = w - &one;
            MixedRelation {
                kind,
                shape: Shape::Thm1,
                a: QPoly::constant(w * (&nn + &one) * (&nn + t) / (&wm1 * &wm1)),
                b: Poly::new(vec![-t.clone(), -one.clone()]),
                e,
                p: member(base.kind.clone(), n)?,
                g: member(
                    FamilyKind::Meixner {
                        t: t + &one,
                        w: w.clone(),
                    },
                    n + 1,
                )?,
                q: member(base.kind.clone(), n + 1)?,
                interval: (0.0, f64::INFINITY),
                params,
            }
        }
        (
            Corollary::NarayanaChristoffel | Corollary::NarayanaPerturbed,
            FamilyKind::Narayana
            | FamilyKind::NarayanaReduced
            | FamilyKind::NarayanaChristoffel
            | FamilyKind::NarayanaPerturbedP,
        ) => {
            if n < 2 {
                return Err(Error::InvalidParameter(format!("{c} needs n >= 2, got {n}")));
            }
            let nm1 = int(n - 1);
            let (a, b, p_kind) = if c == Corollary::NarayanaChristoffel {
                (
                    q(n as i64 + 2, 1) / &nm1,
                    q(2 * n as i64 + 1, 1) / &nm1,
                    FamilyKind::NarayanaChristoffel,
                )
            } else {
                (&one / &nm1, &nn / &nm1, FamilyKind::NarayanaPerturbedP)
            };
            MixedRelation {
                kind,
                shape: Shape::Thm2star,
                a: QPoly::constant(a),
                b: QPoly::constant(b),
                e,
                p: member(p_kind, n)?,
                g: member(FamilyKind::NarayanaReduced, n)?,
                q: member(FamilyKind::NarayanaReduced, n - 1)?,
                interval: (f64::NEG_INFINITY, 0.0),
                params: format!("narayana[n={n}]"),
            }
        }
        (Corollary::JacobiBetaShift, FamilyKind::Jacobi { alpha, beta }) => {
            if !beta.is_positive() {
                return Err(Error::InvalidParameter(format!(
                    "{c} needs beta > 0, got {}",
                    format_rational(beta)
                )));
            }
            let s = q(2, 1) * &nn + alpha + beta;
            let k = q(2, 1) * (&nn + &one) * (&nn + alpha + &one) / ((&s + q(1, 1)) * (&s + q(2, 1)));
            let root_shift = &one + q(2, 1) * beta / (&s + q(3, 1));
            let jac = |a: &BigRational, b: &BigRational, m: usize| {
                member(
                    FamilyKind::Jacobi {
                        alpha: a.clone(),
                        beta: b.clone(),
                    },
                    m,
                )
            };
            MixedRelation {
                kind,
                shape: Shape::Thm1,
                a: Poly::new(vec![&k * &root_shift, k]),
                b: Poly::new(vec![-one.clone(), -one.clone()]),
                e,
                p: jac(alpha, beta, n)?,
                g: jac(alpha, &(beta + &one), n + 1)?,
                q: jac(alpha, &(beta - &one), n + 1)?,
                interval: (-1.0, 1.0),
                params,
            }
        }
        (Corollary::JacobiParamShift, FamilyKind::Jacobi { alpha, beta }) => {
            if n < 1 {
                return Err(Error::InvalidParameter(format!("{c} needs n >= 1")));
            }
            let up = FamilyKind::Jacobi {
                alpha: alpha + &one,
                beta: beta + &one,
            };
            MixedRelation {
                kind,
                shape: Shape::Thm2star,
                a: QPoly::constant((&nn + alpha + beta + &one) / &nn),
                b: QPoly::constant((q(2, 1) * &nn + alpha + beta + &one) / &nn),
                e,
                p: member(base.kind.clone(), n)?,
                g: member(up.clone(), n)?,
                q: member(up, n - 1)?,
                interval: (-1.0, 1.0),
                params,
            }
        }
        (Corollary::LaguerreShift, FamilyKind::Laguerre { alpha }) => MixedRelation {
            kind,
            shape: Shape::Thm1,
            a: QPoly::constant((&nn + &one) * (&nn + alpha + &one)),
            b: Poly::new(vec![BigRational::zero(), -one.clone()]),
            e,
            p: member(base.kind.clone(), n)?,
            g: member(FamilyKind::Laguerre { alpha: alpha + &one }, n + 1)?,
            q: member(base.kind.clone(), n + 1)?,
            interval: (0.0, f64::INFINITY),
            params,
        },
        _ => return Err(mismatch(c, base)),
    };
    finish(r)
}

/// `(1 - x^2) P^{(a+1,b+1)}_n = b_0 P^{(a,b)}_n - (x - E) P^{(a,b)}_{n+1}` with
/// `E = (a - b)/(2n + a + b + 2)`.
pub fn build_jacobi_structure(base: &FamilySpec) -> Result<MixedRelation> {
    let FamilyKind::Jacobi { alpha, beta } = &base.kind else {
        return Err(Error::InvalidParameter(format!(
            "jacobi-structure cannot be built from a {} family",
            base.kind.name()
        )));
    };
    let n = base.n;
    if n < 1 {
        return Err(Error::InvalidParameter("jacobi-structure needs n >= 1".into()));
    }
    let nn = int(n);
    let one = BigRational::one();
    let s = q(2, 1) * &nn + alpha + beta;
    let b0 = q(4, 1) * (&nn + alpha + &one) * (&nn + beta + &one) * (&nn + alpha + beta + &one)
        / ((&s + &one) * (&s + q(2, 1)) * (&s + q(2, 1)));
    let e = extra_point(base, Corollary::JacobiParamShift)?.value;
    finish(MixedRelation {
        kind: RelationKind::JacobiStructure,
        shape: Shape::Thm2,
        a: Poly::new(vec![one.clone(), BigRational::zero(), -one.clone()]),
        b: QPoly::constant(b0),
        e,
        p: member(
            FamilyKind::Jacobi {
                alpha: alpha + &one,
                beta: beta + &one,
            },
            n,
        )?,
        g: member(base.kind.clone(), n)?,
        q: member(base.kind.clone(), n + 1)?,
        interval: (-1.0, 1.0),
        params: base.label(),
    })
}

pub fn build_relation_kind(kind: RelationKind, base: &FamilySpec) -> Result<MixedRelation> {
    match kind {
        RelationKind::Corollary(c) => build_relation(c, base),
        RelationKind::JacobiStructure => build_jacobi_structure(base),
        RelationKind::Oracle(_) => Err(Error::InvalidParameter(
            "oracle relations are generated from a seed, not a family".into(),
        )),
    }
}

fn pow(a: &BigRational, k: i64) -> BigRational {
    let base = if k < 0 { a.recip() } else { a.clone() };
    (0..k.unsigned_abs()).fold(BigRational::one(), |acc, _| acc * &base)
}

/// The relation after the change of variable `x -> scale * x + shift`
/// (`scale > 0`): every polynomial is re-expressed in the new variable and
/// renormalised to be monic, `A` and `B` absorbing the scale factors.
pub fn affine_image(r: &MixedRelation, scale: &BigRational, shift: &BigRational) -> Result<MixedRelation> {
    if !scale.is_positive() {
        return Err(Error::InvalidParameter("affine image needs a positive scale".into()));
    }
    let inv = scale.recip();
    let back_shift = -(shift * &inv);
    let pull = |p: &QPoly| p.compose_affine(&inv, &back_shift);
    let image = |m: &Member| {
        let poly = pull(&m.poly).scale(&pow(scale, m.degree() as i64));
        Member {
            poly,
            spec: None,
            roots: m
                .roots
                .as_ref()
                .map(|rs| rs.iter().map(|z| scale * z + shift).collect()),
        }
    };
    let (dp, dg, dq) = (r.p.degree() as i64, r.g.degree() as i64, r.q.degree() as i64);
    let s = crate::scalar::rational_to_f64(scale);
    let t = crate::scalar::rational_to_f64(shift);
    finish(MixedRelation {
        kind: r.kind,
        shape: r.shape,
        a: pull(&r.a).scale(&pow(scale, dq + 1 - dp)),
        b: pull(&r.b).scale(&pow(scale, dq + 1 - dg)),
        e: scale * &r.e + shift,
        p: image(&r.p),
        g: image(&r.g),
        q: image(&r.q),
        interval: (s * r.interval.0 + t, s * r.interval.1 + t),
        params: format!(
            "{} mapped by x -> {} x + {}",
            r.params,
            format_rational(scale),
            format_rational(shift)
        ),
    })
}
