use std::fmt;
use std::ops::{Deref, Index};

use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rational::{parse_rational, render, Rational, RationalList};

/// Dense vector of rationals with a fixed length.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct QVector(Vec<Rational>);

impl QVector {
    pub fn new(entries: Vec<Rational>) -> Self {
        QVector(entries)
    }

    pub fn zeros(n: usize) -> Self {
        QVector(vec![Rational::zero(); n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = Self::zeros(n);
        v.0[i] = Rational::one();
        v
    }

    pub fn from_ints(entries: &[i64]) -> Self {
        QVector(entries.iter().map(|&n| super::int(n)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<Rational> {
        self.0
    }

    pub fn dot(&self, other: &[Rational]) -> Rational {
        dot(&self.0, other)
    }

    pub fn add(&self, other: &QVector) -> QVector {
        assert_eq!(self.dim(), other.dim());
        QVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &QVector) -> QVector {
        assert_eq!(self.dim(), other.dim());
        QVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, s: &Rational) -> QVector {
        QVector(self.0.iter().map(|a| a * s).collect())
    }

    pub fn neg(&self) -> QVector {
        QVector(self.0.iter().map(|a| -a).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Scales so the first non-zero entry has absolute value one.
    pub fn normalized_direction(&self) -> QVector {
        match self.0.iter().find(|q| !q.is_zero()) {
            Some(lead) => self.scale(&(Rational::one() / lead.abs())),
            None => self.clone(),
        }
    }

    pub fn sum(&self) -> Rational {
        self.0.iter().fold(Rational::zero(), |acc, q| acc + q)
    }

    /// Support: indices of non-zero entries.
    pub fn support(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| !self.0[i].is_zero()).collect()
    }

    pub fn is_probability(&self) -> bool {
        self.0.iter().all(|q| !q.is_negative()) && self.sum().is_one()
    }

    /// Convex combination `weights[i] * points[i]`.
    pub fn combination(weights: &[Rational], points: &[QVector]) -> QVector {
        assert_eq!(weights.len(), points.len());
        let n = points.first().map(|p| p.dim()).unwrap_or(0);
        let mut out = vec![Rational::zero(); n];
        for (w, p) in weights.iter().zip(points) {
            if w.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(p.iter()) {
                *o += w * x;
            }
        }
        QVector(out)
    }

    pub fn average(points: &[QVector]) -> QVector {
        assert!(!points.is_empty());
        let w = Rational::one() / super::int(points.len() as i64);
        let weights = vec![w; points.len()];
        Self::combination(&weights, points)
    }
}

impl Deref for QVector {
    type Target = [Rational];
    fn deref(&self) -> &[Rational] {
        &self.0
    }
}

impl From<Vec<Rational>> for QVector {
    fn from(v: Vec<Rational>) -> Self {
        QVector(v)
    }
}

impl fmt::Debug for QVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", RationalList(&self.0))
    }
}

impl fmt::Display for QVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", RationalList(&self.0))
    }
}

impl Serialize for QVector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let strings: Vec<String> = self.0.iter().map(render).collect();
        strings.serialize(s)
    }
}

impl<'de> Deserialize<'de> for QVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let strings = Vec::<String>::deserialize(d)?;
        strings
            .iter()
            .map(|s| parse_rational(s).map_err(D::Error::custom))
            .collect::<Result<Vec<_>, _>>()
            .map(QVector)
    }
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    assert_eq!(a.len(), b.len(), "dot product dimension mismatch");
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("matrix shape error: {0}")]
pub struct ShapeError(pub String);

/// Dense row-major rational matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Builds from rows; `cols` is needed when there are no rows.
    pub fn from_rows(rows: Vec<Vec<Rational>>, cols: usize) -> Result<Self, ShapeError> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for (i, r) in rows.into_iter().enumerate() {
            if r.len() != cols {
                return Err(ShapeError(format!(
                    "row {} has {} entries, expected {}",
                    i,
                    r.len(),
                    cols
                )));
            }
            data.extend(r);
        }
        Ok(QMatrix { rows: n, cols, data })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map(|r| r.len()).unwrap_or(0);
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| super::int(x)).collect())
            .collect();
        Self::from_rows(rows, cols).expect("ragged integer matrix")
    }

    pub fn from_qvectors(rows: &[QVector], cols: usize) -> Result<Self, ShapeError> {
        Self::from_rows(rows.iter().map(|r| r.to_vec()).collect(), cols)
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[QVector], rows: usize) -> Result<Self, ShapeError> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.dim() != rows {
                return Err(ShapeError(format!(
                    "column {} has {} entries, expected {}",
                    j,
                    c.dim(),
                    rows
                )));
            }
            for i in 0..rows {
                m.set(i, j, c[i].clone());
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, q: Rational) {
        self.data[i * self.cols + j] = q;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vector(&self, i: usize) -> QVector {
        QVector::new(self.row(i).to_vec())
    }

    pub fn column(&self, j: usize) -> QVector {
        QVector::new((0..self.rows).map(|i| self.get(i, j).clone()).collect())
    }

    pub fn row_vectors(&self) -> Vec<QVector> {
        (0..self.rows).map(|i| self.row_vector(i)).collect()
    }

    pub fn transpose(&self) -> QMatrix {
        let mut t = QMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, x: &[Rational]) -> QVector {
        assert_eq!(x.len(), self.cols, "matrix-vector dimension mismatch");
        QVector::new((0..self.rows).map(|i| dot(self.row(i), x)).collect())
    }

    /// `xᵀ M`, i.e. a combination of rows.
    pub fn left_mul_vec(&self, x: &[Rational]) -> QVector {
        assert_eq!(x.len(), self.rows, "vector-matrix dimension mismatch");
        let mut out = vec![Rational::zero(); self.cols];
        for (i, w) in x.iter().enumerate() {
            if w.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o += w * self.get(i, j);
            }
        }
        QVector::new(out)
    }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let mut out = QMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let cur = out.get(i, j) + a * b;
                        out.set(i, j, cur);
                    }
                }
            }
        }
        out
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        QMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn select_rows(&self, idx: &[usize]) -> QMatrix {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            data.extend(self.row(i).iter().cloned());
        }
        QMatrix {
            rows: idx.len(),
            cols: self.cols,
            data,
        }
    }

    pub fn rank(&self) -> usize {
        Rref::of(self).pivots.len()
    }

    /// Indices of a maximal linearly independent subset of rows (greedy, in order).
    pub fn row_basis(&self) -> Vec<usize> {
        Rref::of(&self.transpose()).pivots
    }

    pub fn inverse(&self) -> Option<QMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = QMatrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Rational::one());
        }
        let r = Rref::of(&aug);
        if r.pivots.len() < n || r.pivots[n - 1] >= n {
            return None;
        }
        let mut inv = QMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.matrix.get(i, n + j).clone());
            }
        }
        Some(inv)
    }

    /// Determinant by fraction-exact Gaussian elimination.
    pub fn det(&self) -> Rational {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut det = Rational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !a.get(i, c).is_zero()) else {
                return Rational::zero();
            };
            if p != c {
                for j in 0..n {
                    a.data.swap(p * n + j, c * n + j);
                }
                det = -det;
            }
            let piv = a.get(c, c).clone();
            det *= &piv;
            for i in c + 1..n {
                let f = a.get(i, c) / &piv;
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = a.get(i, j) - &f * a.get(c, j);
                    a.set(i, j, v);
                }
            }
        }
        det
    }

    /// Basis of `{x : M x = 0}`.
    pub fn null_space(&self) -> Vec<QVector> {
        let r = Rref::of(self);
        r.null_basis()
    }
}

impl Index<(usize, usize)> for QMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        self.get(i, j)
    }
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "QMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {}", RationalList(self.row(i)))?;
        }
        write!(f, "]")
    }
}

impl Serialize for QMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(render).collect())
            .collect();
        rows.serialize(s)
    }
}

/// Reduced row echelon form.
#[derive(Debug, Clone)]
pub struct Rref {
    pub matrix: QMatrix,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn of(m: &QMatrix) -> Rref {
        let mut a = m.clone();
        let (rows, cols) = (a.rows, a.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !a.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..cols {
                    a.data.swap(p * cols + j, r * cols + j);
                }
            }
            let inv = Rational::one() / a.get(r, c);
            for j in c..cols {
                let v = a.get(r, j) * &inv;
                a.set(r, j, v);
            }
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let f = a.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..cols {
                    let rj = a.get(r, j);
                    if rj.is_zero() {
                        continue;
                    }
                    let v = a.get(i, j) - &f * rj;
                    a.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { matrix: a, pivots }
    }

    pub fn null_basis(&self) -> Vec<QVector> {
        let cols = self.matrix.cols;
        let free: Vec<usize> = (0..cols).filter(|c| !self.pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); cols];
                v[f] = Rational::one();
                for (r, &p) in self.pivots.iter().enumerate() {
                    v[p] = -self.matrix.get(r, f).clone();
                }
                QVector::new(v)
            })
            .collect()
    }
}

/// Affine solution set `particular + span(null_basis)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineSolution {
    pub particular: QVector,
    pub null_basis: Vec<QVector>,
}

impl AffineSolution {
    pub fn is_unique(&self) -> bool {
        self.null_basis.is_empty()
    }

    pub fn contains(&self, a: &QMatrix, b: &[Rational], x: &[Rational]) -> bool {
        a.mul_vec(x).as_slice() == b
    }
}

/// Solves `A x = b` exactly; `None` when the system is inconsistent.
pub fn solve_linear_system(a: &QMatrix, b: &[Rational]) -> Option<AffineSolution> {
    assert_eq!(a.rows(), b.len(), "right-hand side length mismatch");
    let (rows, cols) = (a.rows(), a.cols());
    let mut aug = QMatrix::zeros(rows, cols + 1);
    for i in 0..rows {
        for j in 0..cols {
            aug.set(i, j, a.get(i, j).clone());
        }
        aug.set(i, cols, b[i].clone());
    }
    let r = Rref::of(&aug);
    if r.pivots.last() == Some(&cols) {
        return None;
    }
    let mut particular = vec![Rational::zero(); cols];
    for (row, &p) in r.pivots.iter().enumerate() {
        particular[p] = r.matrix.get(row, cols).clone();
    }
    let coeff = Rref {
        matrix: {
            let mut m = QMatrix::zeros(rows, cols);
            for i in 0..rows {
                for j in 0..cols {
                    m.set(i, j, r.matrix.get(i, j).clone());
                }
            }
            m
        },
        pivots: r.pivots.clone(),
    };
    Some(AffineSolution {
        particular: QVector::new(particular),
        null_basis: coeff.null_basis(),
    })
}

/// Dimension of the affine hull of a point set (`-1` for an empty set is reported as `None`).
pub fn affine_dim(points: &[QVector]) -> Option<usize> {
    let first = points.first()?;
    if points.len() == 1 {
        return Some(0);
    }
    let diffs: Vec<QVector> = points[1..].iter().map(|p| p.sub(first)).collect();
    Some(
        QMatrix::from_qvectors(&diffs, first.dim())
            .expect("points of equal dimension")
            .rank(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    #[test]
    fn identity_system_has_unique_solution() {
        let a = QMatrix::identity(2);
        let sol = solve_linear_system(&a, &[int(1), int(2)]).unwrap();
        assert_eq!(sol.particular, QVector::from_ints(&[1, 2]));
        assert!(sol.is_unique());
    }

    #[test]
    fn indistinguishable_mixtures_share_signal() {
        // y_C + y_R/3 = 1/3 over (y_L, y_C, y_R)
        let a = QMatrix::from_rows(vec![vec![int(0), int(1), rat(1, 3)]], 3).unwrap();
        let b = [rat(1, 3)];
        let sol = solve_linear_system(&a, &b).unwrap();
        assert_eq!(sol.null_basis.len(), 2);
        let pure_r = QVector::from_ints(&[0, 0, 1]);
        let mix = QVector::new(vec![rat(2, 3), rat(1, 3), int(0)]);
        assert!(sol.contains(&a, &b, &pure_r));
        assert!(sol.contains(&a, &b, &mix));
        assert!(sol.contains(&a, &b, &sol.particular));
        for n in &sol.null_basis {
            assert!(a.mul_vec(n).is_zero());
        }
    }

    #[test]
    fn inconsistent_rows_have_no_solution() {
        let a = QMatrix::from_ints(&[&[1], &[1]]);
        assert!(solve_linear_system(&a, &[int(0), int(1)]).is_none());
    }

    #[test]
    fn inverse_round_trip() {
        let m = QMatrix::from_ints(&[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), QMatrix::identity(2));
        assert!(QMatrix::from_ints(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn row_basis_skips_dependent_rows() {
        let m = QMatrix::from_ints(&[&[1, 1, 1], &[0, 1, 1], &[1, 2, 2], &[0, 0, 1]]);
        assert_eq!(m.row_basis(), vec![0, 1, 3]);
    }
}
