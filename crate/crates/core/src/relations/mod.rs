//! Mixed relations `A P = B G + s (x - E) Q` and the interlacing checks they drive.
//!
//! Every relation is held exactly over the rationals; floating point only
//! enters when zeros are computed for the interlacing tests.

mod build;
mod check;
mod oracle;

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use serde::{Serialize, Serializer};

pub use build::{affine_image, build_jacobi_structure, build_relation, build_relation_kind};
pub use check::{
    check_corollary, check_relation, check_theorem1, check_theorem2, check_theorem2star, CheckReport, Clause,
    ClauseStatus, Configuration, EPosition, Outcome,
};
pub use oracle::{
    impossible_region_theorem1, oracle_theorem1, oracle_theorem2, oracle_theorem2star, EPlacement, OracleOptions,
    Thm1Orientation,
};

use crate::error::{Error, Result};
use crate::families::{Corollary, FamilySpec};
use crate::poly::QPoly;
use crate::rootfind::{zeros_of, zeros_of_qpoly, ZeroSet};
use crate::scalar::{format_rational, rational_to_f64};

/// Degree pattern of a relation, named after the theorem it feeds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Shape {
    /// `deg G = deg Q = deg P + 1`, sign `+`.
    Thm1,
    /// `deg G = deg P = n`, `deg Q = n - 1`, sign `-`.
    Thm2star,
    /// `deg G = deg P = n`, `deg Q = n + 1`, sign `-`.
    Thm2,
}

impl Shape {
    pub fn sign(self) -> Sign {
        match self {
            Shape::Thm1 => Sign::Plus,
            Shape::Thm2star | Shape::Thm2 => Sign::Minus,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Sign {
    Plus,
    Minus,
}

/// One of the three polynomials in a relation, with whatever is known about
/// how to find its zeros.
#[derive(Debug, Clone, PartialEq)]
pub struct Member {
    pub poly: QPoly,
    pub spec: Option<FamilySpec>,
    /// Exact zeros, when the polynomial was assembled from them.
    pub roots: Option<Vec<BigRational>>,
}

impl Member {
    pub fn from_spec(spec: FamilySpec) -> Result<Self> {
        Ok(Member {
            poly: crate::families::monic_by_recurrence(&spec)?,
            spec: Some(spec),
            roots: None,
        })
    }

    pub fn from_poly(poly: QPoly) -> Self {
        Member {
            poly,
            spec: None,
            roots: None,
        }
    }

    pub fn from_roots(mut roots: Vec<BigRational>) -> Self {
        roots.sort();
        Member {
            poly: QPoly::from_roots(&roots),
            spec: None,
            roots: Some(roots),
        }
    }

    pub fn degree(&self) -> usize {
        self.poly.degree().unwrap_or(0)
    }

    pub fn zeros(&self) -> Result<ZeroSet> {
        if let Some(spec) = &self.spec {
            return zeros_of(spec);
        }
        if let Some(roots) = &self.roots {
            return ZeroSet::supplied(roots.iter().map(rational_to_f64).collect());
        }
        if self.degree() == 0 {
            return ZeroSet::supplied(Vec::new());
        }
        zeros_of_qpoly(&self.poly)
    }

    pub fn label(&self) -> String {
        match &self.spec {
            Some(s) => s.label(),
            None => format!("poly(deg {})", self.degree()),
        }
    }
}

/// Which relation a [`MixedRelation`] came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RelationKind {
    Corollary(Corollary),
    /// Jacobi relation of the shape with `deg Q = n + 1`, linking
    /// `P^{(a+1,b+1)}_n` to `P^{(a,b)}_n` and `P^{(a,b)}_{n+1}`.
    JacobiStructure,
    Oracle(Shape),
}

impl RelationKind {
    pub fn id(self) -> String {
        match self {
            RelationKind::Corollary(c) => c.id().to_string(),
            RelationKind::JacobiStructure => "jacobi-structure".into(),
            RelationKind::Oracle(Shape::Thm1) => "oracle-thm1".into(),
            RelationKind::Oracle(Shape::Thm2star) => "oracle-thm2star".into(),
            RelationKind::Oracle(Shape::Thm2) => "oracle-thm2".into(),
        }
    }
}

impl fmt::Display for RelationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id())
    }
}

impl FromStr for RelationKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "jacobi-structure" => Ok(RelationKind::JacobiStructure),
            "oracle-thm1" => Ok(RelationKind::Oracle(Shape::Thm1)),
            "oracle-thm2star" => Ok(RelationKind::Oracle(Shape::Thm2star)),
            "oracle-thm2" => Ok(RelationKind::Oracle(Shape::Thm2)),
            other => other.parse::<Corollary>().map(RelationKind::Corollary),
        }
    }
}

impl Serialize for RelationKind {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.id())
    }
}

/// `A P = B G + s (x - E) Q` with exact rational data.
#[derive(Debug, Clone, PartialEq)]
pub struct MixedRelation {
    pub kind: RelationKind,
    pub shape: Shape,
    pub a: QPoly,
    pub b: QPoly,
    pub e: BigRational,
    pub p: Member,
    pub g: Member,
    pub q: Member,
    /// Interval `(a, b)` on which `A` must be positive and the zeros live.
    pub interval: (f64, f64),
    /// Free-form description of the parameters, for reports.
    pub params: String,
}

impl MixedRelation {
    pub fn sign(&self) -> Sign {
        self.shape.sign()
    }

    /// `H(x) = s (x - E)`.
    pub fn h(&self) -> QPoly {
        let lin = QPoly::linear(self.e.clone());
        match self.sign() {
            Sign::Plus => lin,
            Sign::Minus => -&lin,
        }
    }

    /// `A P - B G - H Q`.
    pub fn residual(&self) -> QPoly {
        let ap = &self.a * &self.p.poly;
        let bg = &self.b * &self.g.poly;
        let hq = &self.h() * &self.q.poly;
        &(&ap - &bg) - &hq
    }

    pub fn e_f64(&self) -> f64 {
        rational_to_f64(&self.e)
    }

    pub fn e_exact(&self) -> String {
        format_rational(&self.e)
    }

    /// Checks that the degrees match the declared shape.
    pub fn check_shape(&self) -> Result<()> {
        let (dp, dg, dq) = (self.p.degree(), self.g.degree(), self.q.degree());
        let ok = match self.shape {
            Shape::Thm1 => dg == dp + 1 && dq == dp + 1,
            Shape::Thm2star => dg == dp && dq + 1 == dp,
            Shape::Thm2 => dg == dp && dq == dp + 1,
        };
        let monic = self.p.poly.is_monic() && self.g.poly.is_monic() && self.q.poly.is_monic();
        if !ok || !monic {
            return Err(Error::ShapeMismatch(format!(
                "{:?} relation with degrees P={dp}, G={dg}, Q={dq} (monic: {monic})",
                self.shape
            )));
        }
        Ok(())
    }
}

/// True iff the relation holds as a polynomial identity.
pub fn verify_identity(r: &MixedRelation) -> bool {
    r.residual().is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    #[test]
    fn relation_kind_ids_round_trip() {
        for c in Corollary::ALL {
            let k = RelationKind::Corollary(c);
            assert_eq!(k.id().parse::<RelationKind>().unwrap(), k);
        }
        for k in [
            RelationKind::JacobiStructure,
            RelationKind::Oracle(Shape::Thm1),
            RelationKind::Oracle(Shape::Thm2star),
            RelationKind::Oracle(Shape::Thm2),
        ] {
            assert_eq!(k.id().parse::<RelationKind>().unwrap(), k);
        }
    }

    #[test]
    fn perturbation_breaks_identity() {
        let base = FamilySpec::krawtchouk(q(1, 2), 4, 2).unwrap();
        let mut r = build_relation(Corollary::KrawtchoukShift, &base).unwrap();
        assert!(verify_identity(&r));
        let mut cs = r.p.poly.coeffs().to_vec();
        cs[0] += q(1, 1_000_000);
        r.p.poly = QPoly::new(cs);
        assert!(!verify_identity(&r));
    }
}
