//! Random relations built from prescribed interlacing zeros.
//!
//! Each generator picks zeros for `G` and `Q` that satisfy the premise,
//! chooses `E`, and solves the identity for `A`, `B` and a monic `P`.

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{verify_identity, Member, MixedRelation, RelationKind, Shape};
use crate::error::{Error, Result};
use crate::poly::QPoly;
use crate::scalar::{format_rational, q};

const LO: f64 = -1.0;
const HI: f64 = 1.0;
const GRID: i64 = 1_000_000;
const E_CLEARANCE: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Thm1Orientation {
    QBelowG,
    GBelowQ,
    Random,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EPlacement {
    Anywhere,
    Below,
    Interior,
    Above,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct OracleOptions {
    /// Degree `n` of `P` for the first shape, of `G` and `P` otherwise.
    pub n: usize,
    pub seed: u64,
    pub orientation: Thm1Orientation,
    pub placement: EPlacement,
    pub max_retries: usize,
}

impl OracleOptions {
    pub fn new(n: usize, seed: u64) -> Self {
        OracleOptions {
            n,
            seed,
            orientation: Thm1Orientation::Random,
            placement: EPlacement::Anywhere,
            max_retries: 1000,
        }
    }

    fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.n as u64);
        rng
    }
}

fn grid(x: f64) -> BigRational {
    BigRational::new(((x * GRID as f64).round() as i64).into(), GRID.into())
}

/// `m` increasing grid points in `(LO, HI)` with a guaranteed minimum spacing.
fn sample_points(rng: &mut ChaCha8Rng, m: usize) -> Vec<BigRational> {
    let gap = (0.05f64).min(0.95 * (HI - LO) / (m as f64 + 1.0));
    let jitter = (0.01f64).min(gap / 7.0);
    let slack = (HI - LO) - gap * (m as f64 + 1.0);
    let weights: Vec<f64> = (0..=m).map(|_| rng.random::<f64>() + 1e-3).collect();
    let total: f64 = weights.iter().sum();
    let mut x = LO;
    (0..m)
        .map(|i| {
            x += gap + slack * weights[i] / total;
            grid(x + rng.random_range(-jitter..jitter))
        })
        .collect()
}

/// Splits interleaved points: even positions to the first list.
fn deal(points: Vec<BigRational>) -> (Vec<BigRational>, Vec<BigRational>) {
    let (mut a, mut b) = (Vec::new(), Vec::new());
    for (i, p) in points.into_iter().enumerate() {
        if i % 2 == 0 {
            a.push(p)
        } else {
            b.push(p)
        }
    }
    (a, b)
}

fn clear_of(e: f64, zeros: &[BigRational]) -> bool {
    zeros
        .iter()
        .all(|z| (crate::scalar::rational_to_f64(z) - e).abs() > E_CLEARANCE)
}

fn place_e(rng: &mut ChaCha8Rng, placement: EPlacement, g: &[BigRational]) -> BigRational {
    let gf: Vec<f64> = g.iter().map(crate::scalar::rational_to_f64).collect();
    let (gmin, gmax) = (gf[0], gf[gf.len() - 1]);
    loop {
        let e = match placement {
            EPlacement::Anywhere => rng.random_range(LO - 0.5..HI + 0.5),
            EPlacement::Below => rng.random_range(gmin - 0.5..gmin - 0.02),
            EPlacement::Above => rng.random_range(gmax + 0.02..gmax + 0.5),
            EPlacement::Interior if gf.len() >= 2 => {
                let j = rng.random_range(0..gf.len() - 1);
                rng.random_range(gf[j]..gf[j + 1])
            }
            EPlacement::Interior => rng.random_range(LO - 0.5..HI + 0.5),
        };
        if clear_of(e, g) {
            return grid(e);
        }
    }
}

fn finish(
    shape: Shape,
    opts: &OracleOptions,
    a: QPoly,
    b: QPoly,
    e: BigRational,
    p: QPoly,
    (g, qz): (Vec<BigRational>, Vec<BigRational>),
) -> Result<MixedRelation> {
    let params = format!("n={}, seed={}, E={}", opts.n, opts.seed, format_rational(&e));
    let r = MixedRelation {
        kind: RelationKind::Oracle(shape),
        shape,
        a,
        b,
        e,
        p: Member::from_poly(p),
        g: Member::from_roots(g),
        q: Member::from_roots(qz),
        interval: (LO - 1.0, HI + 1.0),
        params,
    };
    r.check_shape()?;
    if !verify_identity(&r) {
        return Err(Error::IdentityFailure(format!("oracle relation {}", r.params)));
    }
    Ok(r)
}

fn coprime(g_roots: &[BigRational], p: &QPoly) -> bool {
    g_roots.iter().all(|z| !p.eval(z).is_zero())
}

/// `A P = B G + (x - E) Q` with `deg G = deg Q = n + 1` and `A > 0` constant.
pub fn oracle_theorem1(opts: &OracleOptions) -> Result<MixedRelation> {
    let mut rng = opts.rng();
    for _ in 0..opts.max_retries {
        let q_below = match opts.orientation {
            Thm1Orientation::QBelowG => true,
            Thm1Orientation::GBelowQ => false,
            Thm1Orientation::Random => rng.random::<bool>(),
        };
        let pts = sample_points(&mut rng, 2 * (opts.n + 1));
        let (first, second) = deal(pts);
        let (qz, g) = if q_below { (first, second) } else { (second, first) };
        let e = place_e(&mut rng, opts.placement, &g);
        if let Some(r) = solve_theorem1(opts, g, qz, e, false)? {
            return Ok(r);
        }
    }
    Err(Error::OracleExhausted(opts.max_retries))
}

fn solve_theorem1(
    opts: &OracleOptions,
    g: Vec<BigRational>,
    qz: Vec<BigRational>,
    e: BigRational,
    allow_nonpositive: bool,
) -> Result<Option<MixedRelation>> {
    let gp = QPoly::from_roots(&g);
    let qp = QPoly::from_roots(&qz);
    let n = opts.n;
    let b0 = gp.coeff(n) - qp.coeff(n) + &e;
    if b0 == e {
        return Ok(None);
    }
    let b = QPoly::new(vec![b0, q(-1, 1)]);
    let rhs = &(&b * &gp) + &(&QPoly::linear(e.clone()) * &qp);
    if rhs.degree() != Some(n) {
        return Ok(None);
    }
    let a = rhs.coeff(n);
    if a.is_zero() || (!allow_nonpositive && a.is_negative()) {
        return Ok(None);
    }
    let p = rhs.scale(&(BigRational::from_integer(1.into()) / &a));
    if !coprime(&g, &p) {
        return Ok(None);
    }
    finish(Shape::Thm1, opts, QPoly::constant(a), b, e, p, (g, qz)).map(Some)
}

/// A relation of the first shape with `Q` below `G` and `E` above every zero
/// of `G`. Positivity of `A` is not enforced, and such relations cannot have
/// `A > 0`.
pub fn impossible_region_theorem1(opts: &OracleOptions) -> Result<MixedRelation> {
    let mut rng = opts.rng();
    for _ in 0..opts.max_retries {
        let pts = sample_points(&mut rng, 2 * (opts.n + 1));
        let (qz, g) = deal(pts);
        let e = place_e(&mut rng, EPlacement::Above, &g);
        if let Some(r) = solve_theorem1(opts, g, qz, e, true)? {
            return Ok(r);
        }
    }
    Err(Error::OracleExhausted(opts.max_retries))
}

/// `A P = B G - (x - E) Q` with `deg G = n`, `deg Q = n - 1`, `G` below `Q`,
/// and constants `B > 0`, `A = B - 1 > 0`.
pub fn oracle_theorem2star(opts: &OracleOptions) -> Result<MixedRelation> {
    if opts.n == 0 {
        return Err(Error::InvalidParameter("degree must be at least 1".into()));
    }
    let mut rng = opts.rng();
    for _ in 0..opts.max_retries {
        let pts = sample_points(&mut rng, 2 * opts.n - 1);
        let (g, qz) = deal(pts);
        let e = place_e(&mut rng, opts.placement, &g);
        let bc = grid(rng.random_range(0.25..4.0));
        let a = &bc - q(1, 1);
        if !a.is_positive() {
            continue;
        }
        let gp = QPoly::from_roots(&g);
        let qp = QPoly::from_roots(&qz);
        let rhs = &gp.scale(&bc) - &(&QPoly::linear(e.clone()) * &qp);
        let p = rhs.scale(&(BigRational::from_integer(1.into()) / &a));
        if !coprime(&g, &p) {
            continue;
        }
        return finish(
            Shape::Thm2star,
            opts,
            QPoly::constant(a),
            QPoly::constant(bc),
            e,
            p,
            (g, qz),
        );
    }
    Err(Error::OracleExhausted(opts.max_retries))
}

/// `A P = B G - (x - E) Q` with `deg G = n`, `deg Q = n + 1`, `Q` below `G`,
/// monic quadratic `B` and constant `A > 0`.
pub fn oracle_theorem2(opts: &OracleOptions) -> Result<MixedRelation> {
    if opts.n == 0 {
        return Err(Error::InvalidParameter("degree must be at least 1".into()));
    }
    let mut rng = opts.rng();
    let n = opts.n;
    for _ in 0..opts.max_retries {
        let pts = sample_points(&mut rng, 2 * n + 1);
        let (qz, g) = deal(pts);
        let e = place_e(&mut rng, opts.placement, &g);
        let a = grid(rng.random_range(0.5..3.0));
        let gp = QPoly::from_roots(&g);
        let qp = QPoly::from_roots(&qz);
        let g1 = gp.coeff(n - 1);
        let g2 = if n >= 2 { gp.coeff(n - 2) } else { q(0, 1) };
        let (q1, q2) = (qp.coeff(n), qp.coeff(n - 1));
        let b1 = &q1 - &e - &g1;
        let b0 = &a - &g2 - &b1 * &g1 + &q2 - &e * &q1;
        let b = QPoly::new(vec![b0, b1, q(1, 1)]);
        if b.eval(&e).is_zero() {
            continue;
        }
        let rhs = &(&b * &gp) - &(&QPoly::linear(e.clone()) * &qp);
        if rhs.degree() != Some(n) {
            continue;
        }
        let p = rhs.scale(&(BigRational::from_integer(1.into()) / &a));
        if !coprime(&g, &p) {
            continue;
        }
        return finish(Shape::Thm2, opts, QPoly::constant(a), b, e, p, (g, qz));
    }
    Err(Error::OracleExhausted(opts.max_retries))
}
