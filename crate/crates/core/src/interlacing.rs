//! Strict interlacing predicates between zero sets, with witnesses.
//!
//! Every comparison is made against a separation floor: two values closer
//! than the floor are never ordered, and the verdict becomes
//! [`VerdictKind::Inconclusive`] instead of a pass or a failure.

use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rootfind::ZeroSet;

pub const DEFAULT_FLOOR: f64 = 1e-9;
pub const FLOOR_ENV: &str = "INTERLACE_FLOOR";

/// The separation floor: `INTERLACE_FLOOR` when set to a positive number,
/// otherwise [`DEFAULT_FLOOR`].
pub fn separation_floor() -> f64 {
    std::env::var(FLOOR_ENV)
        .ok()
        .and_then(|s| s.trim().parse::<f64>().ok())
        .filter(|f| f.is_finite() && *f > 0.0)
        .unwrap_or(DEFAULT_FLOOR)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerdictKind {
    Alternate,
    InterlaceDown,
    AddedPointLeft,
    /// `E` lies strictly between zeros `j` and `j + 1` (0-based) of the comparison set.
    AddedPointInterior(usize),
    AddedPointRight,
    FullInterlace,
    Fail,
    Inconclusive,
}

impl fmt::Display for VerdictKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerdictKind::Alternate => f.write_str("Alternate"),
            VerdictKind::InterlaceDown => f.write_str("InterlaceDown"),
            VerdictKind::AddedPointLeft => f.write_str("AddedPointLeft"),
            VerdictKind::AddedPointInterior(j) => write!(f, "AddedPointInterior({j})"),
            VerdictKind::AddedPointRight => f.write_str("AddedPointRight"),
            VerdictKind::FullInterlace => f.write_str("FullInterlace"),
            VerdictKind::Fail => f.write_str("Fail"),
            VerdictKind::Inconclusive => f.write_str("Inconclusive"),
        }
    }
}

/// Which sequence carries the smallest element in an equal-size alternation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    PBelowG,
    GBelowP,
}

impl Orientation {
    pub fn name(self) -> &'static str {
        match self {
            Orientation::PBelowG => "P_below_G",
            Orientation::GBelowP => "G_below_P",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct InterlacingVerdict {
    pub kind: VerdictKind,
    /// Offending pair `(index in first set, index in second set)`.
    pub witness: Option<(usize, usize)>,
    /// Smallest sub-floor gap, for inconclusive verdicts.
    pub gap: Option<f64>,
    pub e_used: Option<f64>,
    pub orientation: Option<Orientation>,
    pub floor: f64,
}

impl InterlacingVerdict {
    fn new(kind: VerdictKind, floor: f64) -> Self {
        InterlacingVerdict {
            kind,
            witness: None,
            gap: None,
            e_used: None,
            orientation: None,
            floor,
        }
    }

    pub fn passed(&self) -> bool {
        !matches!(self.kind, VerdictKind::Fail | VerdictKind::Inconclusive)
    }

    pub fn failed(&self) -> bool {
        self.kind == VerdictKind::Fail
    }

    pub fn inconclusive(&self) -> bool {
        self.kind == VerdictKind::Inconclusive
    }
}

impl Serialize for InterlacingVerdict {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("InterlacingVerdict", 6)?;
        s.serialize_field("kind", &self.kind.to_string())?;
        s.serialize_field("E", &self.e_used)?;
        s.serialize_field("witness", &self.witness.map(|(i, j)| [i, j]))?;
        s.serialize_field("gap", &self.gap)?;
        s.serialize_field("orientation", &self.orientation.map(Orientation::name))?;
        s.serialize_field("floor", &self.floor)?;
        s.end()
    }
}

/// Tests `a[0] < b[0] < a[1] < b[1] < ...` with `|a| = |b|` or `|a| = |b| + 1`.
fn weave(a: &[f64], b: &[f64], pass: VerdictKind, floor: f64) -> InterlacingVerdict {
    let len = a.len() + b.len();
    let at = |t: usize| if t.is_multiple_of(2) { a[t / 2] } else { b[t / 2] };
    // indices into (a, b) of the pair straddling position t, t + 1
    let pair = |t: usize| {
        if t.is_multiple_of(2) {
            (t / 2, t / 2)
        } else {
            (t.div_ceil(2), t / 2)
        }
    };
    let mut smallest: Option<(f64, (usize, usize))> = None;
    for t in 0..len.saturating_sub(1) {
        let d = at(t + 1) - at(t);
        if d < -floor {
            let mut v = InterlacingVerdict::new(VerdictKind::Fail, floor);
            v.witness = Some(pair(t));
            return v;
        }
        if d <= floor && smallest.is_none_or(|(g, _)| d.abs() < g) {
            smallest = Some((d.abs(), pair(t)));
        }
    }
    match smallest {
        Some((gap, w)) => {
            let mut v = InterlacingVerdict::new(VerdictKind::Inconclusive, floor);
            v.gap = Some(gap);
            v.witness = Some(w);
            v
        }
        None => InterlacingVerdict::new(pass, floor),
    }
}

fn swap_witness(mut v: InterlacingVerdict) -> InterlacingVerdict {
    v.witness = v.witness.map(|(i, j)| (j, i));
    v
}

/// `zp` alternates `zq`: `x_1 < y_1 < ... < x_n < y_n`.
pub fn alternates_with(zp: &[f64], zq: &[f64], floor: f64) -> Result<InterlacingVerdict> {
    if zp.len() != zq.len() {
        return Err(Error::SizeMismatch(format!(
            "alternation needs equal sizes, got {} and {}",
            zp.len(),
            zq.len()
        )));
    }
    Ok(weave(zp, zq, VerdictKind::Alternate, floor))
}

/// `zp` interlaces `zq` from outside: `x_1 < y_1 < ... < y_{n-1} < x_n`.
pub fn interlaces_down_with(zp: &[f64], zq: &[f64], floor: f64) -> Result<InterlacingVerdict> {
    if zp.len() != zq.len() + 1 {
        return Err(Error::SizeMismatch(format!(
            "interlacing needs sizes n and n-1, got {} and {}",
            zp.len(),
            zq.len()
        )));
    }
    Ok(weave(zp, zq, VerdictKind::InterlaceDown, floor))
}

pub fn alternates(zp: &ZeroSet, zq: &ZeroSet) -> Result<InterlacingVerdict> {
    alternates_with(zp.zeros(), zq.zeros(), separation_floor())
}

pub fn interlaces_down(zp: &ZeroSet, zq: &ZeroSet) -> Result<InterlacingVerdict> {
    interlaces_down_with(zp.zeros(), zq.zeros(), separation_floor())
}

/// Position of a point relative to a sorted set, with the floor excluded.
pub fn slot(e: f64, zg: &[f64], floor: f64) -> Result<VerdictKind> {
    if let Some(index) = zg.iter().position(|g| (g - e).abs() <= floor) {
        return Err(Error::CoincidentPoint { e, index, floor });
    }
    Ok(match zg.iter().position(|&g| g > e) {
        Some(0) => VerdictKind::AddedPointLeft,
        None => VerdictKind::AddedPointRight,
        Some(k) => VerdictKind::AddedPointInterior(k - 1),
    })
}

/// Either orientation of an equal-size alternation between `zp` and `zg`.
fn either_alternation(zp: &[f64], zg: &[f64], pass: VerdictKind, floor: f64) -> Result<InterlacingVerdict> {
    let mut below = alternates_with(zp, zg, floor)?;
    below.orientation = Some(Orientation::PBelowG);
    if below.passed() {
        below.kind = pass;
        return Ok(below);
    }
    let mut above = swap_witness(alternates_with(zg, zp, floor)?);
    above.orientation = Some(Orientation::GBelowP);
    if above.passed() {
        above.kind = pass;
        return Ok(above);
    }
    if below.inconclusive() {
        return Ok(below);
    }
    if above.inconclusive() {
        return Ok(above);
    }
    let p_first = match (zp.first(), zg.first()) {
        (Some(p), Some(g)) => p <= g,
        _ => true,
    };
    Ok(if p_first { below } else { above })
}

/// Adjoins `e` to `zp` and tests the merged set against `zg`.
///
/// With `|zp| + 1 = |zg|` the merged set must alternate with `zg` in either
/// orientation (recorded in the verdict); with `|zp| = |zg|` it must
/// interlace `zg` from outside. On success the kind records where `e` fell
/// among the zeros of `zg`.
pub fn added_point_interlace_with(zp: &[f64], e: f64, zg: &[f64], floor: f64) -> Result<InterlacingVerdict> {
    if zg.is_empty() {
        return Err(Error::SizeMismatch("comparison zero set is empty".into()));
    }
    let position = slot(e, zg, floor)?;
    let mut merged: Vec<f64> = zp.to_vec();
    let at = merged.partition_point(|&z| z < e);
    merged.insert(at, e);
    let mut v = if zp.len() + 1 == zg.len() {
        either_alternation(&merged, zg, position, floor)?
    } else if zp.len() == zg.len() {
        let mut v = interlaces_down_with(&merged, zg, floor)?;
        v.orientation = Some(Orientation::PBelowG);
        if v.passed() {
            v.kind = position;
        }
        v
    } else {
        return Err(Error::SizeMismatch(format!(
            "added point needs |P| + 1 = |G| or |P| = |G|, got {} and {}",
            zp.len(),
            zg.len()
        )));
    };
    v.e_used = Some(e);
    Ok(v)
}

pub fn added_point_interlace(zp: &ZeroSet, e: f64, zg: &ZeroSet) -> Result<InterlacingVerdict> {
    added_point_interlace_with(zp.zeros(), e, zg.zeros(), separation_floor())
}

/// Interlacing of `zp` and `zg` with no added point.
///
/// `|zp| + 1 = |zg|` tests `zg` interlacing `zp` from outside; `|zp| = |zg|`
/// tests alternation in either orientation and records which one held.
pub fn full_interlace_with(zp: &[f64], zg: &[f64], floor: f64) -> Result<InterlacingVerdict> {
    if zp.len() + 1 == zg.len() {
        let mut v = swap_witness(interlaces_down_with(zg, zp, floor)?);
        if v.passed() {
            v.kind = VerdictKind::FullInterlace;
        }
        Ok(v)
    } else if zp.len() == zg.len() {
        either_alternation(zp, zg, VerdictKind::FullInterlace, floor)
    } else {
        Err(Error::SizeMismatch(format!(
            "full interlacing needs |P| + 1 = |G| or |P| = |G|, got {} and {}",
            zp.len(),
            zg.len()
        )))
    }
}

pub fn full_interlace(zp: &ZeroSet, zg: &ZeroSet) -> Result<InterlacingVerdict> {
    full_interlace_with(zp.zeros(), zg.zeros(), separation_floor())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{FamilyKind, FamilySpec};
    use crate::rootfind::zeros_of;
    use crate::scalar::q;
    use proptest::prelude::*;

    const F: f64 = DEFAULT_FLOOR;

    #[test]
    fn alternation_examples() {
        assert_eq!(alternates_with(&[0.0], &[1.0], F).unwrap().kind, VerdictKind::Alternate);
        let v = alternates_with(&[0.0, 2.0], &[1.0, 1.5], F).unwrap();
        assert_eq!(v.kind, VerdictKind::Fail);
        assert_eq!(v.witness, Some((1, 1)));
        assert!(alternates_with(&[0.0], &[1.0, 2.0], F).is_err());
    }

    #[test]
    fn interlace_examples() {
        assert_eq!(
            interlaces_down_with(&[0.0, 2.0], &[1.0], F).unwrap().kind,
            VerdictKind::InterlaceDown
        );
        let v = interlaces_down_with(&[0.0, 1.0], &[2.0], F).unwrap();
        assert_eq!(v.kind, VerdictKind::Fail);
        assert_eq!(v.witness, Some((1, 0)));
        assert!(interlaces_down_with(&[0.0], &[1.0], F).is_err());
    }

    #[test]
    fn sub_floor_gap_is_inconclusive() {
        let v = alternates_with(&[0.0, 1.0], &[0.5, 1.0 + 1e-12], F).unwrap();
        assert_eq!(v.kind, VerdictKind::Inconclusive);
        assert!(v.gap.unwrap() < F);
        // a clear violation anywhere outranks a sub-floor gap
        let v = alternates_with(&[0.0, 1.0, 3.0], &[1e-12, 2.0, 2.5], F).unwrap();
        assert_eq!(v.kind, VerdictKind::Fail);
        assert_eq!(v.witness, Some((2, 2)));
    }

    #[test]
    fn added_point_examples() {
        let v = added_point_interlace_with(&[0.5], -1.0, &[0.0, 1.0], F).unwrap();
        assert_eq!(v.kind, VerdictKind::AddedPointLeft);
        assert_eq!(v.orientation, Some(Orientation::PBelowG));
        assert_eq!(v.e_used, Some(-1.0));
        let v = added_point_interlace_with(&[-0.5], 0.5, &[0.0, 1.0], F).unwrap();
        assert_eq!(v.kind, VerdictKind::AddedPointInterior(0));
        assert_eq!(v.orientation, Some(Orientation::PBelowG));
        let v = added_point_interlace_with(&[0.5], 2.0, &[0.0, 1.0], F).unwrap();
        assert_eq!(v.kind, VerdictKind::AddedPointRight);
        assert_eq!(v.orientation, Some(Orientation::GBelowP));
        let err = added_point_interlace_with(&[0.5], 1.0, &[0.0, 1.0], F).unwrap_err();
        assert!(matches!(err, Error::CoincidentPoint { index: 1, .. }));
        let v = added_point_interlace_with(&[0.2], 0.4, &[0.0, 1.0], F).unwrap();
        assert_eq!(v.kind, VerdictKind::Fail);
    }

    #[test]
    fn added_point_equal_sizes() {
        let v = added_point_interlace_with(&[0.5, 1.5], 2.5, &[1.0, 2.0], F).unwrap();
        assert_eq!(v.kind, VerdictKind::AddedPointRight);
        let v = added_point_interlace_with(&[0.5, 2.5], 1.5, &[1.0, 2.0], F).unwrap();
        assert_eq!(v.kind, VerdictKind::AddedPointInterior(0));
        let v = added_point_interlace_with(&[0.5, 1.5], -1.0, &[1.0, 2.0], F).unwrap();
        assert_eq!(v.kind, VerdictKind::Fail);
    }

    #[test]
    fn full_interlace_examples() {
        let v = full_interlace_with(&[0.5], &[0.0, 1.0], F).unwrap();
        assert_eq!(v.kind, VerdictKind::FullInterlace);
        let v = full_interlace_with(&[1.5], &[0.0, 1.0], F).unwrap();
        assert_eq!(v.kind, VerdictKind::Fail);
        let v = full_interlace_with(&[1.5, 2.5], &[1.0, 2.0], F).unwrap();
        assert_eq!(v.orientation, Some(Orientation::GBelowP));
        assert_eq!(v.kind, VerdictKind::FullInterlace);
    }

    #[test]
    fn laguerre_premise_alternates() {
        let a = zeros_of(&FamilySpec::laguerre(q(0, 1), 5).unwrap()).unwrap();
        let b = zeros_of(&FamilySpec::laguerre(q(1, 1), 5).unwrap()).unwrap();
        assert_eq!(alternates(&a, &b).unwrap().kind, VerdictKind::Alternate);
    }

    #[test]
    fn narayana_consecutive_interlace() {
        let a = zeros_of(&FamilySpec::new(FamilyKind::NarayanaReduced, 6).unwrap()).unwrap();
        let b = zeros_of(&FamilySpec::new(FamilyKind::NarayanaReduced, 5).unwrap()).unwrap();
        assert_eq!(interlaces_down(&a, &b).unwrap().kind, VerdictKind::InterlaceDown);
    }

    #[test]
    fn laguerre_added_point() {
        let p = zeros_of(&FamilySpec::laguerre(q(0, 1), 4).unwrap()).unwrap();
        let g = zeros_of(&FamilySpec::laguerre(q(1, 1), 5).unwrap()).unwrap();
        let v = added_point_interlace(&p, 5.0, &g).unwrap();
        assert!(v.passed(), "{v:?}");
    }

    #[test]
    fn verdict_json() {
        let v = added_point_interlace_with(&[-0.5], 0.5, &[0.0, 1.0], F).unwrap();
        let s = serde_json::to_value(&v).unwrap();
        assert_eq!(s["kind"], "AddedPointInterior(0)");
        assert_eq!(s["E"], 0.5);
        assert_eq!(s["witness"], serde_json::Value::Null);
        assert_eq!(s["orientation"], "P_below_G");
    }

    fn sorted_distinct(len: usize) -> impl Strategy<Value = Vec<f64>> {
        prop::collection::vec(1u32..1000, len).prop_map(|steps| {
            let mut acc = -5.0;
            steps
                .into_iter()
                .map(|s| {
                    acc += s as f64 * 1e-2;
                    acc
                })
                .collect()
        })
    }

    proptest! {
        #[test]
        fn alternation_is_antisymmetric(xs in sorted_distinct(12)) {
            let a: Vec<f64> = xs.iter().step_by(2).copied().collect();
            let b: Vec<f64> = xs.iter().skip(1).step_by(2).copied().collect();
            prop_assert_eq!(alternates_with(&a, &b, F).unwrap().kind, VerdictKind::Alternate);
            prop_assert_eq!(alternates_with(&b, &a, F).unwrap().kind, VerdictKind::Fail);
            prop_assert_eq!(alternates_with(&a, &a, F).unwrap().kind, VerdictKind::Inconclusive);
        }

        #[test]
        fn interlacing_is_antisymmetric(xs in sorted_distinct(11)) {
            let a: Vec<f64> = xs.iter().step_by(2).copied().collect();
            let b: Vec<f64> = xs.iter().skip(1).step_by(2).copied().collect();
            prop_assert_eq!(interlaces_down_with(&a, &b, F).unwrap().kind, VerdictKind::InterlaceDown);
            let v = alternates_with(&b, &a[..5], F).unwrap();
            prop_assert_eq!(v.kind, VerdictKind::Fail);
        }

        #[test]
        fn verdicts_are_affine_invariant(
            p in sorted_distinct(5),
            g in sorted_distinct(6),
            e in -6.0f64..6.0,
            scale in 0.1f64..10.0,
            shift in -3.0f64..3.0,
        ) {
            let tf = |v: &[f64]| v.iter().map(|x| scale * x + shift).collect::<Vec<_>>();
            prop_assume!(g.iter().all(|x| (x - e).abs() > 1e-6));
            prop_assume!(p.iter().all(|x| (x - e).abs() > 1e-6));
            let a = added_point_interlace_with(&p, e, &g, F).unwrap();
            let b = added_point_interlace_with(&tf(&p), scale * e + shift, &tf(&g), F).unwrap();
            prop_assert_eq!(a.kind, b.kind);
            prop_assert_eq!(a.witness, b.witness);
            prop_assert_eq!(a.orientation, b.orientation);
            let a = full_interlace_with(&p, &g, F).unwrap();
            let b = full_interlace_with(&tf(&p), &tf(&g), F).unwrap();
            prop_assert_eq!(a.kind, b.kind);
            prop_assert_eq!(a.witness, b.witness);
        }
    }
}
