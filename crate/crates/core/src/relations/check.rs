use std::cmp::Ordering;
use std::fmt;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use super::{build_relation, verify_identity, Member, MixedRelation, Shape};
use crate::error::{Error, Result};
use crate::families::{Corollary, FamilySpec};
use crate::interlacing::{
    added_point_interlace_with, alternates_with, full_interlace_with, interlaces_down_with, separation_floor,
    InterlacingVerdict, Orientation,
};
use crate::poly::QPoly;
use crate::rootfind::ZeroSet;
use crate::scalar::{format_rational, q};

const GRID_POINTS: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ClauseStatus {
    Pass,
    Fail,
    Inconclusive,
    Skipped,
}

impl fmt::Display for ClauseStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClauseStatus::Pass => "pass",
            ClauseStatus::Fail => "fail",
            ClauseStatus::Inconclusive => "inconclusive",
            ClauseStatus::Skipped => "skipped",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Clause {
    #[serde(skip)]
    pub name: String,
    pub status: ClauseStatus,
    pub detail: String,
}

/// Where `E` sits among the zeros of `G`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EPosition {
    BelowAll,
    /// Between zeros `j` and `j + 1` (0-based).
    Interior(usize),
    AboveAll,
}

impl fmt::Display for EPosition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EPosition::BelowAll => f.write_str("BelowAll"),
            EPosition::Interior(j) => write!(f, "Interior({j})"),
            EPosition::AboveAll => f.write_str("AboveAll"),
        }
    }
}

impl Serialize for EPosition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

/// How the zeros of `P` distribute over the gaps of `G` in the
/// equal-degree relation with `deg Q = n + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Configuration {
    /// One zero per slot; `p_first` when the smallest zero belongs to `P`.
    Alternating {
        p_first: bool,
    },
    /// Gap `gap` (0-based) holds three zeros, the gap containing `E` none.
    ThreeInOneGap {
        gap: usize,
    },
    TwoBelow,
    TwoAbove,
    /// The gap containing `E` holds two zeros, one on each side of `E`.
    TwoInEGapStraddling,
    TwoInEGapSameSide,
    /// Slot counts from below the smallest zero of `G` to above the largest.
    Other {
        counts: Vec<usize>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Extremes {
    pub left: bool,
    pub right: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Outcome {
    Pass,
    Fail,
    Inconclusive,
    /// An exact hypothesis (positivity of `A`, `B(E) != 0`, no common zeros)
    /// does not hold, so the theorem makes no claim.
    NotApplicable,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub relation: String,
    pub params: String,
    pub shape: Shape,
    #[serde(rename = "E")]
    pub e: f64,
    #[serde(rename = "E_exact")]
    pub e_exact: String,
    pub identity_ok: bool,
    pub case: Option<&'static str>,
    pub premise_verdict: Option<InterlacingVerdict>,
    pub conclusion_verdict: Option<InterlacingVerdict>,
    pub full_verdict: Option<InterlacingVerdict>,
    #[serde(rename = "E_position")]
    pub e_position: Option<EPosition>,
    pub configuration: Option<Configuration>,
    pub extremes: Option<Extremes>,
    pub zeros_p: Option<Vec<f64>>,
    pub zeros_g: Option<Vec<f64>>,
    pub zeros_q: Option<Vec<f64>>,
    #[serde(serialize_with = "clauses_as_map")]
    pub clauses: Vec<Clause>,
    pub notes: Vec<String>,
    pub outcome: Outcome,
    pub floor: f64,
}

fn clauses_as_map<S: Serializer>(clauses: &[Clause], serializer: S) -> std::result::Result<S::Ok, S::Error> {
    let mut m = serializer.serialize_map(Some(clauses.len()))?;
    for c in clauses {
        m.serialize_entry(&c.name, c)?;
    }
    m.end()
}

impl CheckReport {
    fn new(r: &MixedRelation, floor: f64) -> Self {
        CheckReport {
            relation: r.kind.id(),
            params: r.params.clone(),
            shape: r.shape,
            e: r.e_f64(),
            e_exact: r.e_exact(),
            identity_ok: false,
            case: None,
            premise_verdict: None,
            conclusion_verdict: None,
            full_verdict: None,
            e_position: None,
            configuration: None,
            extremes: None,
            zeros_p: None,
            zeros_g: None,
            zeros_q: None,
            clauses: Vec::new(),
            notes: Vec::new(),
            outcome: Outcome::Pass,
            floor,
        }
    }

    pub fn clause(&self, name: &str) -> Option<&Clause> {
        self.clauses.iter().find(|c| c.name == name)
    }

    pub fn status(&self, name: &str) -> Option<ClauseStatus> {
        self.clause(name).map(|c| c.status)
    }

    pub fn passed(&self) -> bool {
        self.outcome == Outcome::Pass
    }

    fn push(&mut self, name: &str, status: ClauseStatus, detail: impl Into<String>) {
        self.clauses.push(Clause {
            name: name.to_string(),
            status,
            detail: detail.into(),
        });
    }

    fn skip(&mut self, names: &[&str], why: &str) {
        for n in names {
            self.push(n, ClauseStatus::Skipped, why);
        }
    }

    fn finalize(mut self) -> Self {
        let has = |s: &Self, st: ClauseStatus, pred: &dyn Fn(&str) -> bool| {
            s.clauses.iter().any(|c| c.status == st && pred(&c.name))
        };
        self.outcome = if !self.identity_ok {
            Outcome::Fail
        } else if has(&self, ClauseStatus::Fail, &|n| n.starts_with("hyp.")) {
            Outcome::NotApplicable
        } else if has(&self, ClauseStatus::Fail, &|_| true) {
            Outcome::Fail
        } else if has(&self, ClauseStatus::Inconclusive, &|_| true) {
            Outcome::Inconclusive
        } else {
            Outcome::Pass
        };
        self
    }
}

fn format_poly(p: &QPoly) -> String {
    let terms: Vec<String> = p
        .coeffs()
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, c)| **c != q(0, 1))
        .map(|(i, c)| match i {
            0 => format_rational(c),
            1 => format!("({})x", format_rational(c)),
            _ => format!("({})x^{i}", format_rational(c)),
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn verdict_status(v: &InterlacingVerdict) -> ClauseStatus {
    if v.passed() {
        ClauseStatus::Pass
    } else if v.inconclusive() {
        ClauseStatus::Inconclusive
    } else {
        ClauseStatus::Fail
    }
}

fn verdict_detail(v: &InterlacingVerdict) -> String {
    let mut s = v.kind.to_string();
    if let Some(o) = v.orientation {
        s.push_str(&format!(", {}", o.name()));
    }
    if let Some((i, j)) = v.witness {
        s.push_str(&format!(", witness ({i}, {j})"));
    }
    if let Some(g) = v.gap {
        s.push_str(&format!(", gap {g:e}"));
    }
    s
}

/// `a < b` decided only when they differ by more than the floor.
fn less(a: f64, b: f64, floor: f64) -> Option<bool> {
    match (b - a).partial_cmp(&0.0) {
        _ if (b - a).abs() <= floor => None,
        Some(Ordering::Greater) => Some(true),
        _ => Some(false),
    }
}

fn bool_status(b: Option<bool>) -> ClauseStatus {
    match b {
        Some(true) => ClauseStatus::Pass,
        Some(false) => ClauseStatus::Fail,
        None => ClauseStatus::Inconclusive,
    }
}

fn yes(b: Option<bool>) -> &'static str {
    match b {
        Some(true) => "yes",
        Some(false) => "no",
        None => "undecided",
    }
}

fn e_position(e: f64, zg: &[f64]) -> EPosition {
    match zg.iter().position(|&g| g > e) {
        Some(0) => EPosition::BelowAll,
        None => EPosition::AboveAll,
        Some(k) => EPosition::Interior(k - 1),
    }
}

/// Shared context once the exact and numerical preliminaries are done.
struct Ctx {
    zp: Option<ZeroSet>,
    zg: ZeroSet,
    zq: ZeroSet,
    degenerate: bool,
    floor: f64,
}

fn sample_points(r: &MixedRelation, zg: &[f64]) -> Vec<f64> {
    let (mut lo, mut hi) = r.interval;
    let hull_lo = zg.first().copied().unwrap_or(0.0) - 1.0;
    let hull_hi = zg.last().copied().unwrap_or(0.0) + 1.0;
    if !lo.is_finite() {
        lo = hull_lo.min(hi - 1.0);
    }
    if !hi.is_finite() {
        hi = hull_hi.max(lo + 1.0);
    }
    let mut pts: Vec<f64> = zg.to_vec();
    pts.extend((0..GRID_POINTS).map(|i| lo + (hi - lo) * (i as f64 + 0.5) / GRID_POINTS as f64));
    pts
}

fn member_zeros(m: &Member, name: &str, report: &mut CheckReport) -> Option<ZeroSet> {
    match m.zeros() {
        Ok(z) => Some(z),
        Err(e) => {
            report.push(&format!("zeros.{name}"), ClauseStatus::Fail, e.to_string());
            None
        }
    }
}

fn preliminaries(r: &MixedRelation, expected: Shape, floor: f64) -> Result<(CheckReport, Option<Ctx>)> {
    if r.shape != expected {
        return Err(Error::ShapeMismatch(format!(
            "expected a {expected:?} relation, got {:?}",
            r.shape
        )));
    }
    r.check_shape()?;
    let mut report = CheckReport::new(r, floor);
    report.identity_ok = verify_identity(r);
    if !report.identity_ok {
        report.push("identity", ClauseStatus::Fail, format!("residual {:?}", r.residual()));
        return Ok((report.finalize(), None));
    }
    report.push("identity", ClauseStatus::Pass, "A P - B G - H Q is the zero polynomial");

    let b_at_e = r.b.eval(&r.e);
    let mut degenerate = false;
    if b_at_e == q(0, 1) {
        degenerate = true;
        report.push("hyp.B_at_E_nonzero", ClauseStatus::Fail, "B(E) = 0");
    } else {
        report.push(
            "hyp.B_at_E_nonzero",
            ClauseStatus::Pass,
            format!("B(E) = {}", format_rational(&b_at_e)),
        );
    }
    let shared = match &r.g.roots {
        Some(roots) => roots
            .iter()
            .find(|z| r.p.poly.eval(z) == q(0, 1))
            .map(|z| format!("x = {}", format_rational(z))),
        None => {
            let common = r.g.poly.gcd(&r.p.poly);
            (common.degree().unwrap_or(0) >= 1).then(|| format!("the factor {}", format_poly(&common)))
        }
    };
    if let Some(what) = shared {
        degenerate = true;
        report.push(
            "hyp.no_common_zeros",
            ClauseStatus::Fail,
            format!("G and P share {what}"),
        );
    } else {
        report.push("hyp.no_common_zeros", ClauseStatus::Pass, "G and P have no common zero");
    }
    if r.q.poly.eval(&r.e) == q(0, 1) {
        report
            .notes
            .push(format!("E = {} is a zero of Q; permitted", r.e_exact()));
    }

    let zg = member_zeros(&r.g, "G", &mut report);
    let zq = member_zeros(&r.q, "Q", &mut report);
    let zp = member_zeros(&r.p, "P", &mut report);
    report.zeros_p = zp.as_ref().map(|z| z.zeros().to_vec());
    report.zeros_g = zg.as_ref().map(|z| z.zeros().to_vec());
    report.zeros_q = zq.as_ref().map(|z| z.zeros().to_vec());
    let (Some(zg), Some(zq)) = (zg, zq) else {
        return Ok((report.finalize(), None));
    };

    let a = r.a.to_f64();
    let pts = sample_points(r, zg.zeros());
    match pts
        .iter()
        .find(|x| a.eval(x).partial_cmp(&0.0) != Some(Ordering::Greater))
    {
        Some(x) => report.push(
            "hyp.A_positive",
            ClauseStatus::Fail,
            format!("A({x}) = {} is not positive", a.eval(x)),
        ),
        None => report.push(
            "hyp.A_positive",
            ClauseStatus::Pass,
            format!("A > 0 at {} sample points", pts.len()),
        ),
    }

    if crate::interlacing::slot(r.e_f64(), zg.zeros(), floor).is_ok() {
        report.e_position = Some(e_position(r.e_f64(), zg.zeros()));
    } else {
        report
            .notes
            .push("E lies within the separation floor of a zero of G".into());
    }

    Ok((
        report,
        Some(Ctx {
            zp,
            zg,
            zq,
            degenerate,
            floor,
        }),
    ))
}

/// Checks the conclusions of the theorem for relations with `deg G = deg Q = deg P + 1`.
pub fn check_theorem1(r: &MixedRelation) -> Result<CheckReport> {
    const CONCLUSIONS: [&str; 3] = ["E_position", "added_point", "iff_full_interlace"];
    let (mut report, ctx) = preliminaries(r, Shape::Thm1, separation_floor())?;
    let Some(ctx) = ctx else {
        report.skip(&CONCLUSIONS, "preliminaries failed");
        return Ok(report.finalize());
    };
    let floor = ctx.floor;
    let (zg, zq) = (ctx.zg.zeros(), ctx.zq.zeros());

    let q_below = alternates_with(zq, zg, floor)?;
    let g_below = alternates_with(zg, zq, floor)?;
    let (case_one, premise) = if q_below.passed() {
        (true, q_below)
    } else if g_below.passed() {
        (false, g_below)
    } else {
        let v = if q_below.inconclusive() { q_below } else { g_below };
        report.push(
            "premise",
            verdict_status(&v),
            format!("neither Q < G nor G < Q: {}", verdict_detail(&v)),
        );
        report.premise_verdict = Some(v);
        report.skip(&CONCLUSIONS, "premise does not hold");
        return Ok(report.finalize());
    };
    report.case = Some(if case_one { "Q_below_G" } else { "G_below_Q" });
    report.push(
        "premise",
        ClauseStatus::Pass,
        if case_one {
            "Q alternates G from below"
        } else {
            "G alternates Q from below"
        },
    );
    report.premise_verdict = Some(premise);
    if ctx.degenerate {
        report.skip(&CONCLUSIONS, "hypothesis violated");
        return Ok(report.finalize());
    }

    let e = r.e_f64();
    let (gmin, gmax) = (zg[0], zg[zg.len() - 1]);
    let pos = if case_one {
        less(e, gmax, floor)
    } else {
        less(gmin, e, floor)
    };
    report.push(
        "E_position",
        bool_status(pos),
        format!(
            "{} = {e} vs {} zero of G = {}",
            "E",
            if case_one { "largest" } else { "smallest" },
            if case_one { gmax } else { gmin }
        ),
    );

    let Some(zp) = ctx.zp.as_ref() else {
        report.skip(&CONCLUSIONS[1..], "zeros of P unavailable");
        return Ok(report.finalize());
    };
    let zp = zp.zeros();
    let want = if case_one {
        Orientation::PBelowG
    } else {
        Orientation::GBelowP
    };
    match added_point_interlace_with(zp, e, zg, floor) {
        Ok(v) => {
            let mut status = verdict_status(&v);
            if status == ClauseStatus::Pass && v.orientation != Some(want) {
                status = ClauseStatus::Fail;
            }
            report.push("added_point", status, verdict_detail(&v));
            report.conclusion_verdict = Some(v);
        }
        Err(err) => report.push("added_point", ClauseStatus::Inconclusive, err.to_string()),
    }

    let side = if case_one {
        less(e, gmin, floor)
    } else {
        less(gmax, e, floor)
    };
    let full = full_interlace_with(zp, zg, floor)?;
    let full_holds = if full.inconclusive() { None } else { Some(full.passed()) };
    let status = match (side, full_holds) {
        (Some(s), Some(f)) => bool_status(Some(s == f)),
        _ => ClauseStatus::Inconclusive,
    };
    report.push(
        "iff_full_interlace",
        status,
        format!(
            "E {} all zeros of G: {}; G interlaces P: {}",
            if case_one { "below" } else { "above" },
            yes(side),
            yes(full_holds)
        ),
    );
    report.full_verdict = Some(full);
    Ok(report.finalize())
}

/// Shared full-interlacing clauses for the two equal-degree shapes.
fn full_clauses(
    report: &mut CheckReport,
    zp: &[f64],
    zg: &[f64],
    e: f64,
    floor: f64,
    p_first_when_above: bool,
) -> Result<InterlacingVerdict> {
    let full = full_interlace_with(zp, zg, floor)?;
    let (gmin, gmax) = (zg[0], zg[zg.len() - 1]);
    let above = less(gmax, e, floor);
    let below = less(e, gmin, floor);
    let holds = |o: Orientation| {
        if full.inconclusive() {
            None
        } else {
            Some(full.passed() && full.orientation == Some(o))
        }
    };
    let p_below = holds(Orientation::PBelowG);
    let g_below = holds(Orientation::GBelowP);
    let (p_side, g_side, p_name, g_name) = if p_first_when_above {
        (above, below, "P_prec_G_iff_E_above", "G_prec_P_iff_E_below")
    } else {
        (below, above, "P_prec_G_iff_E_below", "G_prec_P_iff_E_above")
    };
    for (name, side, actual, label) in [(p_name, p_side, p_below, "P < G"), (g_name, g_side, g_below, "G < P")] {
        let status = match (side, actual) {
            (Some(s), Some(a)) => bool_status(Some(s == a)),
            _ => ClauseStatus::Inconclusive,
        };
        report.push(
            name,
            status,
            format!("E on that side: {}; {label}: {}", yes(side), yes(actual)),
        );
    }
    Ok(full)
}

/// Checks the conclusions for relations with `deg G = deg P = n`, `deg Q = n - 1`.
pub fn check_theorem2star(r: &MixedRelation) -> Result<CheckReport> {
    const CONCLUSIONS: [&str; 3] = ["added_point", "P_prec_G_iff_E_above", "G_prec_P_iff_E_below"];
    let (mut report, ctx) = preliminaries(r, Shape::Thm2star, separation_floor())?;
    let Some(ctx) = ctx else {
        report.skip(&CONCLUSIONS, "preliminaries failed");
        return Ok(report.finalize());
    };
    let floor = ctx.floor;
    let (zg, zq) = (ctx.zg.zeros(), ctx.zq.zeros());
    let premise = interlaces_down_with(zg, zq, floor)?;
    report.push(
        "premise",
        verdict_status(&premise),
        format!("G interlaces Q: {}", verdict_detail(&premise)),
    );
    let premise_ok = premise.passed();
    report.premise_verdict = Some(premise);
    if !premise_ok {
        report.skip(&CONCLUSIONS, "premise does not hold");
        return Ok(report.finalize());
    }
    if ctx.degenerate {
        report.skip(&CONCLUSIONS, "hypothesis violated");
        return Ok(report.finalize());
    }
    let Some(zp) = ctx.zp.as_ref() else {
        report.skip(&CONCLUSIONS, "zeros of P unavailable");
        return Ok(report.finalize());
    };
    let zp = zp.zeros();
    let e = r.e_f64();
    match added_point_interlace_with(zp, e, zg, floor) {
        Ok(v) => {
            report.push("added_point", verdict_status(&v), verdict_detail(&v));
            report.conclusion_verdict = Some(v);
        }
        Err(err) => report.push("added_point", ClauseStatus::Inconclusive, err.to_string()),
    }
    let full = full_clauses(&mut report, zp, zg, e, floor, true)?;
    report.full_verdict = Some(full);
    Ok(report.finalize())
}

fn slot_counts(zp: &[f64], zg: &[f64]) -> Vec<usize> {
    let mut counts = vec![0; zg.len() + 1];
    for &z in zp {
        counts[zg.partition_point(|&g| g < z)] += 1;
    }
    counts
}

/// Classifies how the zeros of `P` sit among the gaps of `G` given `E`.
pub fn classify(zp: &[f64], zg: &[f64], e: f64) -> Configuration {
    let n = zg.len();
    let counts = slot_counts(zp, zg);
    let interior = 1..n;
    if interior.clone().all(|s| counts[s] == 1) {
        match (counts[0], counts[n]) {
            (1, 0) => return Configuration::Alternating { p_first: true },
            (0, 1) => return Configuration::Alternating { p_first: false },
            _ => {}
        }
    }
    let se = zg.partition_point(|&g| g < e);
    if se == 0 || se == n {
        return Configuration::Other { counts };
    }
    let others_one = |skip: Option<usize>| {
        interior
            .clone()
            .filter(|&s| s != se && Some(s) != skip)
            .all(|s| counts[s] == 1)
    };
    if counts[se] == 0 && counts[0] == 0 && counts[n] == 0 {
        if let Some(t) = interior.clone().find(|&s| s != se && counts[s] == 3) {
            if others_one(Some(t)) {
                return Configuration::ThreeInOneGap { gap: t - 1 };
            }
        }
    }
    if others_one(None) {
        match (counts[0], counts[se], counts[n]) {
            (2, 0, 0) => return Configuration::TwoBelow,
            (0, 0, 2) => return Configuration::TwoAbove,
            (0, 2, 0) => {
                let inside: Vec<f64> = zp.iter().copied().filter(|&z| z > zg[se - 1] && z < zg[se]).collect();
                return if inside[0] < e && e < inside[1] {
                    Configuration::TwoInEGapStraddling
                } else {
                    Configuration::TwoInEGapSameSide
                };
            }
            _ => {}
        }
    }
    Configuration::Other { counts }
}

/// Checks the conclusions for relations with `deg G = deg P = n`, `deg Q = n + 1`.
pub fn check_theorem2(r: &MixedRelation) -> Result<CheckReport> {
    const CONCLUSIONS: [&str; 6] = [
        "gap_count",
        "extremes_not_both",
        "exactly_one_extreme",
        "P_prec_G_iff_E_below",
        "G_prec_P_iff_E_above",
        "configuration",
    ];
    let (mut report, ctx) = preliminaries(r, Shape::Thm2, separation_floor())?;
    let Some(ctx) = ctx else {
        report.skip(&CONCLUSIONS, "preliminaries failed");
        return Ok(report.finalize());
    };
    let floor = ctx.floor;
    let (zg, zq) = (ctx.zg.zeros(), ctx.zq.zeros());
    let premise = interlaces_down_with(zq, zg, floor)?;
    report.push(
        "premise",
        verdict_status(&premise),
        format!("Q interlaces G: {}", verdict_detail(&premise)),
    );
    let premise_ok = premise.passed();
    report.premise_verdict = Some(premise);
    if !premise_ok {
        report.skip(&CONCLUSIONS, "premise does not hold");
        return Ok(report.finalize());
    }
    if ctx.degenerate {
        report.skip(&CONCLUSIONS, "hypothesis violated");
        return Ok(report.finalize());
    }
    let Some(zp) = ctx.zp.as_ref() else {
        report.skip(&CONCLUSIONS, "zeros of P unavailable");
        return Ok(report.finalize());
    };
    let zp = zp.zeros();
    let n = zg.len();
    let e = r.e_f64();
    let counts = slot_counts(zp, zg);
    let occupied = (1..n).filter(|&s| counts[s] > 0).count();
    report.push(
        "gap_count",
        bool_status(Some(occupied + 2 >= n)),
        format!("{occupied} of {} gaps of G hold a zero of P", n.saturating_sub(1)),
    );
    let extremes = Extremes {
        left: counts[0] > 0,
        right: counts[n] > 0,
    };
    report.extremes = Some(extremes);
    report.push(
        "extremes_not_both",
        bool_status(Some(!(extremes.left && extremes.right))),
        format!("left: {}, right: {}", extremes.left, extremes.right),
    );
    let outside = match (less(e, zg[0], floor), less(zg[n - 1], e, floor)) {
        (Some(true), _) | (_, Some(true)) => Some(true),
        (Some(false), Some(false)) => Some(false),
        _ => None,
    };
    match outside {
        Some(true) => report.push(
            "exactly_one_extreme",
            bool_status(Some(extremes.left != extremes.right)),
            format!("left: {}, right: {}", extremes.left, extremes.right),
        ),
        Some(false) => report.push(
            "exactly_one_extreme",
            ClauseStatus::Skipped,
            "E inside the zero range of G",
        ),
        None => report.push(
            "exactly_one_extreme",
            ClauseStatus::Inconclusive,
            "E at the floor of an extreme zero",
        ),
    }
    let full = full_clauses(&mut report, zp, zg, e, floor, false)?;
    report.full_verdict = Some(full);

    let config = classify(zp, zg, e);
    match (&config, outside) {
        (_, Some(true)) => report.push("configuration", ClauseStatus::Skipped, "E outside the zero range of G"),
        (_, None) => report.push(
            "configuration",
            ClauseStatus::Inconclusive,
            "E at the floor of an extreme zero",
        ),
        (Configuration::Other { counts }, _) => report.push(
            "configuration",
            ClauseStatus::Fail,
            format!("slot counts {counts:?} match none of the admissible configurations"),
        ),
        (Configuration::TwoInEGapStraddling, _) => match added_point_interlace_with(zg, e, zp, floor) {
            Ok(v) => {
                report.push(
                    "configuration",
                    verdict_status(&v),
                    format!("straddling E: {}", verdict_detail(&v)),
                );
                report.conclusion_verdict = Some(v);
            }
            Err(err) => report.push("configuration", ClauseStatus::Inconclusive, err.to_string()),
        },
        (c, _) => report.push("configuration", ClauseStatus::Pass, format!("{c:?}")),
    }
    report.configuration = Some(config);
    Ok(report.finalize())
}

/// Runs the checker matching the relation's shape.
pub fn check_relation(r: &MixedRelation) -> Result<CheckReport> {
    match r.shape {
        Shape::Thm1 => check_theorem1(r),
        Shape::Thm2star => check_theorem2star(r),
        Shape::Thm2 => check_theorem2(r),
    }
}

/// Builds the relation behind a corollary and checks it. For even `n` the
/// perturbed Narayana polynomial shares the zero `-1` with its partner, and
/// the check moves to the quotient by `x + 1`.
pub fn check_corollary(c: Corollary, base: &FamilySpec) -> Result<CheckReport> {
    let r = build_relation(c, base)?;
    if c == Corollary::NarayanaPerturbed && base.n.is_multiple_of(2) {
        return narayana_even_quotient(&r);
    }
    let mut report = check_relation(&r)?;
    if report.outcome == Outcome::NotApplicable {
        report
            .notes
            .push("the relation violates a hypothesis of its theorem at these parameters".into());
    }
    Ok(report)
}

fn narayana_even_quotient(r: &MixedRelation) -> Result<CheckReport> {
    let floor = separation_floor();
    let mut report = CheckReport::new(r, floor);
    report.identity_ok = verify_identity(r);
    report.push(
        "identity",
        if report.identity_ok {
            ClauseStatus::Pass
        } else {
            ClauseStatus::Fail
        },
        "A P - B G - H Q is the zero polynomial",
    );
    report
        .notes
        .push("even n: G and P share the zero -1; P is compared with G/(x+1)".into());
    let (quot, rem) = r.g.poly.div_linear(&r.e);
    let shared = rem == q(0, 1) && r.p.poly.eval(&r.e) == q(0, 1);
    report.push(
        "common_zero_at_E",
        bool_status(Some(shared)),
        "G(-1) = P(-1) = 0 exactly",
    );
    let quotient = Member::from_poly(quot);
    let zp = member_zeros(&r.p, "P", &mut report);
    let zquot = member_zeros(&quotient, "quotient", &mut report);
    report.zeros_p = zp.as_ref().map(|z| z.zeros().to_vec());
    report.zeros_g = zquot.as_ref().map(|z| z.zeros().to_vec());
    if let (Some(zp), Some(zquot)) = (zp, zquot) {
        let v = interlaces_down_with(zp.zeros(), zquot.zeros(), floor)?;
        report.push(
            "quotient_interlace",
            verdict_status(&v),
            format!("P interlaces G/(x+1): {}", verdict_detail(&v)),
        );
        report.conclusion_verdict = Some(v);
    } else {
        report.skip(&["quotient_interlace"], "zeros unavailable");
    }
    Ok(report.finalize())
}
