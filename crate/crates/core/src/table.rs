//! The two-block comparison of Jacobi zeros for `(a, b)` and `(a + 1, b + 1)`.

use num_rational::BigRational;
use serde::Serialize;

use crate::error::Result;
use crate::families::{extra_point, Corollary, FamilySpec};
use crate::rootfind::zeros_of;
use crate::scalar::{format_rational, q};

type Block = (usize, i64, i64, &'static [f64], &'static [f64]);

/// Published zeros: `(n, alpha, beta, x, z)` with `x` the zeros of
/// `P^{(a,b)}_n` and `z` those of `P^{(a+1,b+1)}_n`, to six digits.
pub const PUBLISHED: [Block; 2] = [
    (
        6,
        2,
        14,
        &[-0.203565, 0.101387, 0.369625, 0.59992, 0.785274, 0.918787],
        &[-0.212298, 0.0784816, 0.335892, 0.560588, 0.747193, 0.890144],
    ),
    (
        7,
        14,
        2,
        &[
            -0.931498, -0.818611, -0.661375, -0.465388, -0.237196, 0.017114, 0.296953,
        ],
        &[
            -0.906419, -0.784335, -0.624494, -0.431566, -0.210968, 0.032615, 0.300166,
        ],
    ),
];

#[derive(Debug, Clone, PartialEq)]
pub struct Table2Block {
    pub n: usize,
    pub alpha: BigRational,
    pub beta: BigRational,
    pub e: BigRational,
    pub x: Vec<f64>,
    pub z: Vec<f64>,
    pub published_x: Vec<f64>,
    pub published_z: Vec<f64>,
    /// A zero of `P^{(a+1,b+1)}_n` lies in `(-1, x_1)`.
    pub left_occupied: bool,
    /// A zero of `P^{(a+1,b+1)}_n` lies in `(x_n, 1)`.
    pub right_occupied: bool,
}

impl Table2Block {
    pub fn max_deviation(&self) -> f64 {
        self.x
            .iter()
            .zip(&self.published_x)
            .chain(self.z.iter().zip(&self.published_z))
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table2Row {
    pub block: usize,
    pub n: usize,
    pub alpha: String,
    pub beta: String,
    #[serde(rename = "E")]
    pub e: String,
    pub k: usize,
    pub x: f64,
    pub z: f64,
    pub x_published: f64,
    pub z_published: f64,
    pub left_occupied: bool,
    pub right_occupied: bool,
}

pub fn table2() -> Result<Vec<Table2Block>> {
    PUBLISHED
        .iter()
        .map(|&(n, a, b, px, pz)| {
            let (alpha, beta) = (q(a, 1), q(b, 1));
            let base = FamilySpec::jacobi(alpha.clone(), beta.clone(), n)?;
            let shifted = FamilySpec::jacobi(q(a + 1, 1), q(b + 1, 1), n)?;
            let x = zeros_of(&base)?.zeros().to_vec();
            let z = zeros_of(&shifted)?.zeros().to_vec();
            Ok(Table2Block {
                n,
                e: extra_point(&base, Corollary::JacobiParamShift)?.value,
                alpha,
                beta,
                left_occupied: z[0] < x[0],
                right_occupied: z[n - 1] > x[n - 1],
                x,
                z,
                published_x: px.to_vec(),
                published_z: pz.to_vec(),
            })
        })
        .collect()
}

pub fn table2_rows(blocks: &[Table2Block]) -> Vec<Table2Row> {
    blocks
        .iter()
        .enumerate()
        .flat_map(|(i, b)| {
            (0..b.n).map(move |k| Table2Row {
                block: i + 1,
                n: b.n,
                alpha: format_rational(&b.alpha),
                beta: format_rational(&b.beta),
                e: format_rational(&b.e),
                k: k + 1,
                x: b.x[k],
                z: b.z[k],
                x_published: b.published_x[k],
                z_published: b.published_z[k],
                left_occupied: b.left_occupied,
                right_occupied: b.right_occupied,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_published_values() {
        let blocks = table2().unwrap();
        for b in &blocks {
            assert!(b.max_deviation() < 1e-5, "deviation {}", b.max_deviation());
        }
        assert_eq!(blocks[0].e, q(-2, 5));
        assert_eq!(blocks[1].e, q(3, 8));
        assert!(blocks[0].left_occupied && !blocks[0].right_occupied);
        assert!(!blocks[1].left_occupied && blocks[1].right_occupied);
        assert_eq!(table2_rows(&blocks).len(), 13);
    }
}
