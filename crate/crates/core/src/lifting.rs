//! The two lifting functions of a two-piece partition and the exponent
//! matrices built from them.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{LiftingError, LinalgError};
use crate::exact_linalg::{Int, IntMatrix};
use crate::polytope::{fmt_point, CutHyperplane, PartitionTwo, Point};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LiftKind {
    /// Zero on the first piece, the cut form on the second.
    F,
    /// Minus the cut form on the first piece, zero on the second.
    G,
}

impl fmt::Display for LiftKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LiftKind::F => "F",
            LiftKind::G => "G",
        })
    }
}

/// Integer lift values on an ordered list of lattice points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftingFunction {
    pub kind: LiftKind,
    pub values: Vec<Int>,
    pub points: Vec<Point>,
    pub cut: CutHyperplane,
}

/// Builds `(F, G)` on `points`, which must all lie in one of the pieces.
pub fn lifting_functions(p: &PartitionTwo, cut: &CutHyperplane, points: &[Point]) -> Result<(LiftingFunction, LiftingFunction), LiftingError> {
    let mut f = Vec::with_capacity(points.len());
    let mut g = Vec::with_capacity(points.len());
    for m in points {
        let l = cut.eval(m);
        if p.second.contains(m) {
            f.push(l);
            g.push(Int::zero());
        } else if p.first.contains(m) {
            f.push(Int::zero());
            g.push(-l);
        } else {
            return Err(LiftingError::PointOutsidePieces(m.iter().map(|x| x.to_string()).collect()));
        }
    }
    let make = |kind, values| LiftingFunction { kind, values, points: points.to_vec(), cut: cut.clone() };
    Ok((make(LiftKind::F, f), make(LiftKind::G, g)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExponentKind {
    APlus,
    BPlus(LiftKind),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentMatrix {
    pub kind: ExponentKind,
    pub matrix: IntMatrix,
    pub points: Vec<Point>,
}

/// `(n+1) x (l+1)`: a row of ones above the point coordinates.
pub fn build_a_plus(points: &[Point]) -> ExponentMatrix {
    let n = points.first().map_or(0, Vec::len);
    let mut m = IntMatrix::zeros(n + 1, points.len());
    for (j, p) in points.iter().enumerate() {
        m.set(0, j, Int::one());
        for (i, c) in p.iter().enumerate() {
            m.set(i + 1, j, c.clone());
        }
    }
    ExponentMatrix { kind: ExponentKind::APlus, matrix: m, points: points.to_vec() }
}

/// `(n+2) x (l+2)`: `A+` padded with a zero column, plus the row of lift
/// values followed by 1.
pub fn build_b_plus(points: &[Point], lift: &LiftingFunction) -> Result<ExponentMatrix, LiftingError> {
    if lift.points != points {
        return Err(LiftingError::OrderMismatch);
    }
    let a = build_a_plus(points).matrix;
    let (rows, cols) = (a.rows(), a.cols());
    let mut m = IntMatrix::zeros(rows + 1, cols + 1);
    for r in 0..rows {
        for c in 0..cols {
            m.set(r, c, a.get(r, c).clone());
        }
    }
    for (c, v) in lift.values.iter().enumerate() {
        m.set(rows, c, v.clone());
    }
    m.set(rows, cols, Int::one());
    Ok(ExponentMatrix { kind: ExponentKind::BPlus(lift.kind), matrix: m, points: points.to_vec() })
}

/// Identity except for the last row `(a_{n+1}, a_1, ..., a_n, 1)`; carries
/// the `G` exponent matrix to the `F` one.
pub fn elementary_transform(cut: &CutHyperplane) -> IntMatrix {
    let n = cut.normal.len();
    let mut e = IntMatrix::identity(n + 2);
    e.set(n + 1, 0, cut.constant.clone());
    for (i, a) in cut.normal.iter().enumerate() {
        e.set(n + 1, i + 1, a.clone());
    }
    e
}

/// Inverse of [`elementary_transform`]: last row `(-a_{n+1}, -a_1, ..., -a_n, 1)`.
pub fn elementary_transform_inverse(cut: &CutHyperplane) -> IntMatrix {
    elementary_transform(&cut.negated())
}

/// Whether `e * source == target` exactly with `|det e| = 1`.
pub fn verify_transform(e: &IntMatrix, source: &IntMatrix, target: &IntMatrix) -> Result<bool, LinalgError> {
    let product = e.mul(source)?;
    if product.rows() != target.rows() || product.cols() != target.cols() {
        return Err(LinalgError::ShapeMismatch {
            left: (product.rows(), product.cols()),
            right: (target.rows(), target.cols()),
        });
    }
    Ok(product == *target && e.det()?.abs().is_one())
}

impl fmt::Display for LiftingFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.points.iter().zip(&self.values).map(|(p, v)| format!("{}={}", fmt_point(p), v)).collect();
        write!(f, "{}: {}", self.kind, parts.join(" "))
    }
}
