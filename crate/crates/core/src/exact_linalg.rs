//! Exact integer and rational linear algebra.
//!
//! Everything here works over arbitrary-precision integers. The central
//! routine is a row-style Hermite normal form with its unimodular transform;
//! kernel lattices, canonical lattice bases and unimodular transform solving
//! are all built on top of it.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::LinalgError;

/// Arbitrary-precision integer scalar.
pub type Int = BigInt;
/// Arbitrary-precision rational scalar, always kept in lowest terms.
pub type Rat = BigRational;

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![Int::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Int::one();
        }
        m
    }

    /// Builds a matrix from a list of rows. `cols` is needed to give a
    /// shape to a matrix with no rows.
    pub fn from_rows<T: Into<Int> + Clone>(cols: usize, rows: &[Vec<T>]) -> Result<Self, LinalgError> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(LinalgError::RaggedRow { row: i, expected: cols, found: row.len() });
            }
            data.extend(row.iter().cloned().map(Into::into));
        }
        Ok(IntMatrix { rows: rows.len(), cols, data })
    }

    /// Convenience constructor for literal matrices. Panics on ragged input.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let owned: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
        Self::from_rows(cols, &owned).expect("ragged literal matrix")
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &Int {
        &self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Int) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Int] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    fn row_mut(&mut self, r: usize) -> &mut [Int] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Int>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, rhs: &IntMatrix) -> Result<IntMatrix, LinalgError> {
        if self.cols != rhs.rows {
            return Err(LinalgError::ShapeMismatch {
                left: (self.rows, self.cols),
                right: (rhs.rows, rhs.cols),
            });
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Int]) -> Result<Vec<Int>, LinalgError> {
        if self.cols != v.len() {
            return Err(LinalgError::ShapeMismatch { left: (self.rows, self.cols), right: (v.len(), 1) });
        }
        Ok((0..self.rows).map(|r| dot(self.row(r), v)).collect())
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<Int, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Int::one());
        }
        let mut a = self.clone();
        let mut sign = Int::one();
        let mut prev = Int::one();
        for k in 0..n - 1 {
            if a.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !a.get(i, k).is_zero()) {
                    Some(i) => {
                        a.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return Ok(Int::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                    a.set(i, j, v);
                }
            }
            prev = a.get(k, k).clone();
        }
        Ok(sign * a.get(n - 1, n - 1).clone())
    }

    pub fn rank(&self) -> usize {
        let (h, _) = hnf(self);
        nonzero_rows(&h)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries((0..self.rows).map(|r| self.row(r).iter().map(|x| x.to_string()).collect::<Vec<_>>())).finish()
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.data.iter().map(|x| x.to_string()).collect();
        let width = cells.iter().map(String::len).max().unwrap_or(1);
        for r in 0..self.rows {
            write!(f, "[")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{:>width$}", cells[r * self.cols + c], width = width)?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

pub fn dot(a: &[Int], b: &[Int]) -> Int {
    a.iter().zip(b).fold(Int::zero(), |acc, (x, y)| acc + x * y)
}

/// Returns `(g, x, y)` with `a*x + b*y = g = gcd(a, b) >= 0`.
pub fn ext_gcd(a: &Int, b: &Int) -> (Int, Int, Int) {
    let (mut old_r, mut r) = (a.clone(), b.clone());
    let (mut old_s, mut s) = (Int::one(), Int::zero());
    let (mut old_t, mut t) = (Int::zero(), Int::one());
    while !r.is_zero() {
        let q = old_r.div_floor(&r);
        let nr = &old_r - &q * &r;
        old_r = std::mem::replace(&mut r, nr);
        let ns = &old_s - &q * &s;
        old_s = std::mem::replace(&mut s, ns);
        let nt = &old_t - &q * &t;
        old_t = std::mem::replace(&mut t, nt);
    }
    if old_r.is_negative() {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// gcd of all entries; zero for an all-zero (or empty) vector.
pub fn content(v: &[Int]) -> Int {
    v.iter().fold(Int::zero(), |g, x| g.gcd(x))
}

/// Divides out the content. Zero vectors are returned unchanged.
pub fn primitive(v: &[Int]) -> Vec<Int> {
    let g = content(v);
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

fn nonzero_rows(h: &IntMatrix) -> usize {
    (0..h.rows()).filter(|&r| h.row(r).iter().any(|x| !x.is_zero())).count()
}

/// Applies the 2x2 transform `[[x, y], [p, q]]` to rows `i` (top) and `j`.
fn combine_rows(m: &mut IntMatrix, i: usize, j: usize, x: &Int, y: &Int, p: &Int, q: &Int) {
    for c in 0..m.cols {
        let a = m.get(i, c).clone();
        let b = m.get(j, c).clone();
        if a.is_zero() && b.is_zero() {
            continue;
        }
        m.set(i, c, x * &a + y * &b);
        m.set(j, c, p * &a + q * &b);
    }
}

fn axpy_row(m: &mut IntMatrix, dst: usize, src: usize, factor: &Int) {
    for c in 0..m.cols {
        let s = m.get(src, c);
        if !s.is_zero() {
            let v = m.get(dst, c) - factor * s;
            m.set(dst, c, v);
        }
    }
}

fn negate_row(m: &mut IntMatrix, r: usize) {
    for x in m.row_mut(r) {
        *x = -std::mem::take(x);
    }
}

/// Row-style Hermite normal form.
///
/// Returns `(H, U)` with `U * m = H`, `U` unimodular, and `H` in echelon form
/// with positive pivots, entries above each pivot reduced into `[0, pivot)`,
/// and all zero rows at the bottom.
pub fn hnf(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.rows());
    let mut pr = 0;
    for col in 0..m.cols() {
        if pr == m.rows() {
            break;
        }
        for i in pr + 1..m.rows() {
            if h.get(i, col).is_zero() {
                continue;
            }
            let a = h.get(pr, col).clone();
            let b = h.get(i, col).clone();
            let (g, x, y) = ext_gcd(&a, &b);
            let p = -(&b / &g);
            let q = &a / &g;
            combine_rows(&mut h, pr, i, &x, &y, &p, &q);
            combine_rows(&mut u, pr, i, &x, &y, &p, &q);
        }
        let pivot = h.get(pr, col).clone();
        if pivot.is_zero() {
            continue;
        }
        if pivot.is_negative() {
            negate_row(&mut h, pr);
            negate_row(&mut u, pr);
        }
        let pivot = h.get(pr, col).clone();
        for i in 0..pr {
            let q = h.get(i, col).div_floor(&pivot);
            if !q.is_zero() {
                axpy_row(&mut h, i, pr, &q);
                axpy_row(&mut u, i, pr, &q);
            }
        }
        pr += 1;
    }
    (h, u)
}

/// A sublattice of `Z^k`, stored as the nonzero rows of the Hermite normal
/// form of any generating set. Two values compare equal iff they span the
/// same lattice.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LatticeBasis {
    ambient: usize,
    basis: Vec<Vec<Int>>,
}

impl LatticeBasis {
    /// The lattice spanned by `generators`, which may be dependent.
    pub fn from_generators(ambient: usize, generators: &[Vec<Int>]) -> Result<Self, LinalgError> {
        let m = IntMatrix::from_rows(ambient, generators)?;
        let (h, _) = hnf(&m);
        let basis = (0..nonzero_rows(&h)).map(|r| h.row(r).to_vec()).collect();
        Ok(LatticeBasis { ambient, basis })
    }

    pub fn zero(ambient: usize) -> Self {
        LatticeBasis { ambient, basis: Vec::new() }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Int>] {
        &self.basis
    }

    /// Integer membership test by echelon reduction against the HNF rows.
    pub fn contains(&self, v: &[Int]) -> bool {
        if v.len() != self.ambient {
            return false;
        }
        let mut w = v.to_vec();
        for row in &self.basis {
            let (pc, pivot) = row.iter().enumerate().find(|(_, x)| !x.is_zero()).expect("HNF rows are nonzero");
            if w[..pc].iter().any(|x| !x.is_zero()) {
                return false;
            }
            let (q, r) = w[pc].div_rem(pivot);
            if !r.is_zero() {
                return false;
            }
            if !q.is_zero() {
                for (wi, ri) in w.iter_mut().zip(row) {
                    *wi -= &q * ri;
                }
            }
        }
        w.iter().all(Zero::is_zero)
    }
}

/// Basis of the integer kernel `{u in Z^cols : m u = 0}`.
///
/// Obtained from the unimodular transform of the HNF of `m^T`: the rows of
/// `U` that map to zero rows of `H` span the full (saturated) kernel.
pub fn kernel_lattice(m: &IntMatrix) -> LatticeBasis {
    let (h, u) = hnf(&m.transpose());
    let r = nonzero_rows(&h);
    let gens: Vec<Vec<Int>> = (r..u.rows()).map(|i| u.row(i).to_vec()).collect();
    LatticeBasis::from_generators(m.cols(), &gens).expect("kernel rows have ambient length")
}

fn gram_schmidt(b: &[Vec<Int>]) -> (Vec<Vec<Rat>>, Vec<Rat>) {
    let n = b.len();
    let mut star: Vec<Vec<Rat>> = Vec::with_capacity(n);
    let mut norms: Vec<Rat> = Vec::with_capacity(n);
    let mut mu = vec![vec![Rat::zero(); n]; n];
    for i in 0..n {
        let mut v: Vec<Rat> = b[i].iter().map(to_rat).collect();
        for j in 0..i {
            let num: Rat = b[i].iter().zip(&star[j]).map(|(x, y)| to_rat(x) * y).sum();
            mu[i][j] = num / &norms[j];
            for (vk, sk) in v.iter_mut().zip(&star[j]) {
                *vk -= &mu[i][j] * sk;
            }
        }
        norms.push(v.iter().map(|x| x * x).sum());
        star.push(v);
    }
    (mu, norms)
}

/// LLL reduction (parameter 3/4) of linearly independent integer vectors.
/// The result spans the same lattice, with short, nearly orthogonal vectors.
pub fn lll_reduce(basis: &[Vec<Int>]) -> Vec<Vec<Int>> {
    let mut b = basis.to_vec();
    let n = b.len();
    let delta = Rat::new(Int::from(3), Int::from(4));
    let mut k = 1;
    while k < n {
        for j in (0..k).rev() {
            let (mu, _) = gram_schmidt(&b[..=k]);
            let q = mu[k][j].round().to_integer();
            if !q.is_zero() {
                let bj = b[j].clone();
                for (x, y) in b[k].iter_mut().zip(&bj) {
                    *x -= &q * y;
                }
            }
        }
        let (mu, norms) = gram_schmidt(&b[..=k]);
        let m = &mu[k][k - 1];
        if norms[k] >= (&delta - m * m) * &norms[k - 1] {
            k += 1;
        } else {
            b.swap(k, k - 1);
            k = (k - 1).max(1);
        }
    }
    b
}

pub fn lattice_equal(a: &LatticeBasis, b: &LatticeBasis) -> Result<bool, LinalgError> {
    if a.ambient != b.ambient {
        return Err(LinalgError::AmbientDimension { left: a.ambient, right: b.ambient });
    }
    Ok(a == b)
}

/// Solves `a x = b` over the rationals by Gauss-Jordan elimination. Returns
/// the particular solution with all free variables set to zero, or `None`
/// when the system is inconsistent.
pub fn solve_rational(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut aug: Vec<Vec<Rat>> = a.iter().zip(b).map(|(r, bi)| {
        let mut row = r.clone();
        row.push(bi.clone());
        row
    }).collect();
    let mut pivots = Vec::new();
    let mut pr = 0;
    for c in 0..cols {
        let Some(p) = (pr..rows).find(|&i| !aug[i][c].is_zero()) else { continue };
        aug.swap(pr, p);
        let inv = aug[pr][c].recip();
        for x in aug[pr].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != pr && !aug[i][c].is_zero() {
                let f = aug[i][c].clone();
                let pivot = aug[pr].clone();
                for (x, p) in aug[i][c..].iter_mut().zip(&pivot[c..]) {
                    *x -= p * &f;
                }
            }
        }
        pivots.push(c);
        pr += 1;
        if pr == rows {
            break;
        }
    }
    if aug[pr..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    let mut x = vec![Rat::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = aug[i][cols].clone();
    }
    Some(x)
}

fn to_rat(x: &Int) -> Rat {
    Rat::from_integer(x.clone())
}

fn integral(v: Vec<Rat>) -> Option<Vec<Int>> {
    v.into_iter().map(|x| x.is_integer().then(|| x.to_integer())).collect()
}

/// Finds a unimodular `E` with `E * source = target`, if one exists.
///
/// For full-row-rank `source` the solution is unique and is read off a right
/// inverse built from the HNF of `source^T`. For rank-deficient `source` the
/// particular rational solution with free variables set to zero is tried.
/// Any candidate is checked for integrality, for the product and for
/// `|det E| = 1` before being returned.
pub fn solve_unimodular_transform(target: &IntMatrix, source: &IntMatrix) -> Option<IntMatrix> {
    if target.rows() != source.rows() || target.cols() != source.cols() {
        return None;
    }
    let k = source.rows();
    if target == source {
        return Some(IntMatrix::identity(k));
    }
    let (h, u) = hnf(&source.transpose());
    let full_rank = nonzero_rows(&h) == k;
    let w = u.transpose();
    let mut rows = Vec::with_capacity(k);
    for i in 0..k {
        let t = target.row(i);
        let x = if full_rank {
            // x * source * W = x * [H_top^T | 0] = t * W
            let tw: Vec<Int> = (0..w.cols()).map(|c| (0..w.rows()).fold(Int::zero(), |acc, r| acc + &t[r] * w.get(r, c))).collect();
            if tw[k..].iter().any(|v| !v.is_zero()) {
                return None;
            }
            let mut x = vec![Rat::zero(); k];
            for j in (0..k).rev() {
                let mut acc = to_rat(&tw[j]);
                for (i2, xi) in x.iter().enumerate().skip(j + 1) {
                    acc -= xi * to_rat(h.get(j, i2));
                }
                x[j] = acc / to_rat(h.get(j, j));
            }
            x
        } else {
            let st: Vec<Vec<Rat>> = (0..source.cols()).map(|c| (0..k).map(|r| to_rat(source.get(r, c))).collect()).collect();
            let rhs: Vec<Rat> = t.iter().map(to_rat).collect();
            solve_rational(&st, &rhs)?
        };
        rows.push(integral(x)?);
    }
    let e = IntMatrix::from_rows(k, &rows).ok()?;
    if e.mul(source).ok()? != *target {
        return None;
    }
    e.det().ok().filter(|d| d.abs().is_one()).map(|_| e)
}
