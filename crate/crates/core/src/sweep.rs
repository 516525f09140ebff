//! Parameter sweeps over relations, evaluated in parallel and reported in a
//! fixed order.

use std::collections::BTreeMap;

use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::{FamilyKind, FamilySpec};
use crate::relations::{
    build_relation_kind, check_corollary, check_relation, oracle_theorem1, oracle_theorem2, oracle_theorem2star,
    CheckReport, ClauseStatus, EPlacement, OracleOptions, RelationKind, Shape, Thm1Orientation,
};
use crate::scalar::{format_rational, parse_rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct NRange {
    pub min: usize,
    pub max: usize,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

/// A sweep description, read from JSON.
///
/// ```json
/// {"relation": "krawtchouk-3.1", "n": {"min": 1, "max": 10},
///  "params": {"p": ["1/4", "1/2"], "N": ["10", "12"]}}
/// ```
///
/// Oracle relations take `seeds` instead of `params`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub relation: String,
    pub n: NRange,
    #[serde(default)]
    pub params: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub seeds: Option<u64>,
    #[serde(default)]
    pub placement: Option<EPlacement>,
    #[serde(default)]
    pub orientation: Option<Thm1Orientation>,
    /// Clause names to report; empty means all.
    #[serde(default)]
    pub clauses: Vec<String>,
    #[serde(default)]
    pub output: Option<String>,
    #[serde(default)]
    pub format: OutputFormat,
}

impl SweepSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))
    }

    pub fn oracle(shape: Shape, n: NRange, seeds: u64) -> Self {
        SweepSpec {
            relation: RelationKind::Oracle(shape).id(),
            n,
            params: BTreeMap::new(),
            seeds: Some(seeds),
            placement: None,
            orientation: None,
            clauses: Vec::new(),
            output: None,
            format: OutputFormat::Csv,
        }
    }

    fn kind(&self) -> Result<RelationKind> {
        self.relation
            .parse()
            .map_err(|e: Error| Error::Malformed(e.to_string()))
    }

    /// Grid points in lexicographic order: `n` first, then parameters by
    /// name, each in the listed order; oracle points by `n` then seed.
    pub fn points(&self) -> Result<Vec<SweepPoint>> {
        let kind = self.kind()?;
        if self.n.min > self.n.max {
            return Err(Error::Malformed(format!(
                "empty n range {}..{}",
                self.n.min, self.n.max
            )));
        }
        let ns = self.n.min..=self.n.max;
        if let RelationKind::Oracle(_) = kind {
            let seeds = self
                .seeds
                .filter(|&s| s > 0)
                .ok_or_else(|| Error::Malformed("oracle sweeps need a positive seed count".into()))?;
            return Ok(ns
                .flat_map(|n| {
                    (0..seeds).map(move |seed| SweepPoint {
                        n,
                        params: BTreeMap::new(),
                        seed: Some(seed),
                    })
                })
                .collect());
        }
        let mut grids: Vec<(String, Vec<BigRational>)> = Vec::new();
        for (name, values) in &self.params {
            if values.is_empty() {
                return Err(Error::Malformed(format!("parameter {name} has no values")));
            }
            let parsed = values
                .iter()
                .map(|v| parse_rational(v).map_err(|e| Error::Malformed(e.to_string())))
                .collect::<Result<Vec<_>>>()?;
            grids.push((name.clone(), parsed));
        }
        let mut combos: Vec<BTreeMap<String, BigRational>> = vec![BTreeMap::new()];
        for (name, values) in &grids {
            combos = combos
                .into_iter()
                .flat_map(|m| {
                    values.iter().map(move |v| {
                        let mut m = m.clone();
                        m.insert(name.clone(), v.clone());
                        m
                    })
                })
                .collect();
        }
        Ok(ns
            .flat_map(|n| {
                combos.iter().map(move |params| SweepPoint {
                    n,
                    params: params.clone(),
                    seed: None,
                })
            })
            .collect())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint {
    pub n: usize,
    pub params: BTreeMap<String, BigRational>,
    pub seed: Option<u64>,
}

impl SweepPoint {
    pub fn params_label(&self) -> String {
        self.params
            .iter()
            .map(|(k, v)| format!("{k}={}", format_rational(v)))
            .collect::<Vec<_>>()
            .join(";")
    }
}

/// What happened at one grid point.
#[derive(Debug, Clone)]
pub enum PointResult {
    Checked(Box<CheckReport>),
    /// The parameters fall outside the relation's constraints.
    Skipped(String),
    Error(String),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub relation: String,
    pub n: usize,
    pub params: String,
    pub seed: Option<u64>,
    pub clause: String,
    pub status: String,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct ClauseTally {
    pub pass: usize,
    pub fail: usize,
    pub inconclusive: usize,
    pub skipped: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct SweepSummary {
    pub points: usize,
    pub checked: usize,
    pub skipped: usize,
    pub errors: usize,
    pub outcomes: BTreeMap<String, usize>,
    pub clauses: BTreeMap<String, ClauseTally>,
}

impl SweepSummary {
    /// No errors, and every checked point passed or was outside the
    /// hypotheses of its theorem.
    pub fn all_pass(&self) -> bool {
        self.errors == 0
            && self
                .outcomes
                .iter()
                .all(|(k, &v)| v == 0 || k == "Pass" || k == "NotApplicable")
    }

    pub fn line(&self) -> String {
        let pass = self.outcomes.get("Pass").copied().unwrap_or(0);
        format!(
            "{pass}/{} checked points pass ({} not applicable, {} fail, {} inconclusive); {} skipped, {} errors",
            self.checked,
            self.outcomes.get("NotApplicable").copied().unwrap_or(0),
            self.outcomes.get("Fail").copied().unwrap_or(0),
            self.outcomes.get("Inconclusive").copied().unwrap_or(0),
            self.skipped,
            self.errors
        )
    }
}

#[derive(Debug, Clone)]
pub struct SweepOutcome {
    pub spec: SweepSpec,
    pub points: Vec<(SweepPoint, PointResult)>,
    pub summary: SweepSummary,
}

fn evaluate(kind: RelationKind, spec: &SweepSpec, point: &SweepPoint) -> PointResult {
    let result = match kind {
        RelationKind::Oracle(shape) => {
            let opts = OracleOptions {
                placement: spec.placement.unwrap_or(EPlacement::Anywhere),
                orientation: spec.orientation.unwrap_or(Thm1Orientation::Random),
                ..OracleOptions::new(point.n, point.seed.unwrap_or(0))
            };
            let relation = match shape {
                Shape::Thm1 => oracle_theorem1(&opts),
                Shape::Thm2star => oracle_theorem2star(&opts),
                Shape::Thm2 => oracle_theorem2(&opts),
            };
            relation.and_then(|r| check_relation(&r))
        }
        RelationKind::Corollary(c) => FamilyKind::from_parts(c.base_family(), &point.params)
            .and_then(|k| FamilySpec::new(k, point.n))
            .and_then(|base| check_corollary(c, &base)),
        RelationKind::JacobiStructure => FamilyKind::from_parts("jacobi", &point.params)
            .and_then(|k| FamilySpec::new(k, point.n))
            .and_then(|base| build_relation_kind(kind, &base))
            .and_then(|r| check_relation(&r)),
    };
    match result {
        Ok(report) => PointResult::Checked(Box::new(report)),
        Err(Error::InvalidParameter(msg)) => PointResult::Skipped(msg),
        Err(e) => PointResult::Error(e.to_string()),
    }
}

/// Evaluates every grid point, in parallel, keeping grid order.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepOutcome> {
    let kind = spec.kind()?;
    let points = spec.points()?;
    let results: Vec<PointResult> = points.par_iter().map(|p| evaluate(kind, spec, p)).collect();
    let mut summary = SweepSummary {
        points: points.len(),
        ..Default::default()
    };
    for o in ["Pass", "Fail", "Inconclusive", "NotApplicable"] {
        summary.outcomes.insert(o.into(), 0);
    }
    for r in &results {
        match r {
            PointResult::Checked(report) => {
                summary.checked += 1;
                *summary.outcomes.entry(format!("{:?}", report.outcome)).or_default() += 1;
                for c in &report.clauses {
                    let t = summary.clauses.entry(c.name.clone()).or_default();
                    match c.status {
                        ClauseStatus::Pass => t.pass += 1,
                        ClauseStatus::Fail => t.fail += 1,
                        ClauseStatus::Inconclusive => t.inconclusive += 1,
                        ClauseStatus::Skipped => t.skipped += 1,
                    }
                }
            }
            PointResult::Skipped(_) => summary.skipped += 1,
            PointResult::Error(_) => summary.errors += 1,
        }
    }
    Ok(SweepOutcome {
        spec: spec.clone(),
        points: points.into_iter().zip(results).collect(),
        summary,
    })
}

impl SweepOutcome {
    /// One row per grid point and clause, plus an `outcome` row per point.
    pub fn rows(&self) -> Vec<SweepRow> {
        let wanted = |name: &str| self.spec.clauses.is_empty() || self.spec.clauses.iter().any(|c| c == name);
        let mut rows = Vec::new();
        for (point, result) in &self.points {
            let row = |clause: &str, status: String, detail: String| SweepRow {
                relation: self.spec.relation.clone(),
                n: point.n,
                params: point.params_label(),
                seed: point.seed,
                clause: clause.to_string(),
                status,
                detail,
            };
            match result {
                PointResult::Checked(report) => {
                    for c in report.clauses.iter().filter(|c| wanted(&c.name)) {
                        rows.push(row(&c.name, c.status.to_string(), c.detail.clone()));
                    }
                    rows.push(row(
                        "outcome",
                        format!("{:?}", report.outcome),
                        format!("E={}", report.e_exact),
                    ));
                }
                PointResult::Skipped(msg) => rows.push(row("build", "skipped".into(), msg.clone())),
                PointResult::Error(msg) => rows.push(row("build", "error".into(), msg.clone())),
            }
        }
        rows
    }
}
