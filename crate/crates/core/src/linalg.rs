//! Exact rational vectors and the handful of linear-algebra routines the
//! rest of the crate needs: fraction-free rank, consistent solves and
//! inverses over `BigRational`.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::marker::PhantomData;
use std::ops::{Add, Index, IndexMut, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational scalar.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Marker for vectors in the Cartan subalgebra `h`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum H {}

/// Marker for vectors in the dual space `h*`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HStar {}

/// A vector of exact rationals in ambient coordinates, tagged with the space
/// it lives in. Elements of `h` pair with elements of `h*` by the plain dot
/// product of their coordinates.
pub struct Vector<S> {
    coords: Vec<Q>,
    _space: PhantomData<S>,
}

pub type CartanVec = Vector<H>;
pub type WeightVec = Vector<HStar>;

impl<S> Vector<S> {
    pub fn new(coords: Vec<Q>) -> Self {
        Vector { coords, _space: PhantomData }
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Self::new(coords.iter().map(|&c| q(c)).collect())
    }

    pub fn zero(dim: usize) -> Self {
        Self::new(vec![Q::zero(); dim])
    }

    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zero(dim);
        v.coords[i] = Q::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Q] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Q> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &Q) -> Self {
        Self::new(self.coords.iter().map(|x| x * c).collect())
    }

    /// `self + c * other`
    pub fn add_scaled(&self, c: &Q, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        Self::new(self.coords.iter().zip(&other.coords).map(|(a, b)| a + c * b).collect())
    }

    /// Reinterpret the coordinates in the other space. Only meaningful when
    /// the caller has an identification in mind (e.g. the canonical
    /// `h*(g) = h(g^vee)`).
    pub fn retag<T>(self) -> Vector<T> {
        Vector::new(self.coords)
    }

    /// If `self = c * other` for some rational `c`, returns `c`.
    pub fn ratio_to(&self, other: &Self) -> Option<Q> {
        if self.dim() != other.dim() {
            return None;
        }
        let mut ratio: Option<Q> = None;
        for (a, b) in self.coords.iter().zip(&other.coords) {
            match (a.is_zero(), b.is_zero()) {
                (true, true) => {}
                (false, true) => return None,
                (_, false) => {
                    let r = a / b;
                    match &ratio {
                        None => ratio = Some(r),
                        Some(prev) if *prev == r => {}
                        Some(_) => return None,
                    }
                }
            }
        }
        Some(ratio.unwrap_or_else(Q::zero))
    }

    /// Nonzero scalar multiple of `other`.
    pub fn is_proportional(&self, other: &Self) -> bool {
        !self.is_zero() && !other.is_zero() && self.ratio_to(other).is_some()
    }
}

/// Natural pairing `<lambda, x>` between `h*` and `h`.
pub fn pair(lambda: &WeightVec, x: &CartanVec) -> Q {
    dot(lambda.coords(), x.coords())
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    assert_eq!(a.len(), b.len(), "dimension mismatch");
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

impl<S> Clone for Vector<S> {
    fn clone(&self) -> Self {
        Self::new(self.coords.clone())
    }
}

impl<S> PartialEq for Vector<S> {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords
    }
}

impl<S> Eq for Vector<S> {}

impl<S> Hash for Vector<S> {
    fn hash<Hs: Hasher>(&self, state: &mut Hs) {
        self.coords.hash(state)
    }
}

impl<S> PartialOrd for Vector<S> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<S> Ord for Vector<S> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coords.cmp(&other.coords)
    }
}

impl<S> fmt::Debug for Vector<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<S> fmt::Display for Vector<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl<S> Index<usize> for Vector<S> {
    type Output = Q;
    fn index(&self, i: usize) -> &Q {
        &self.coords[i]
    }
}

impl<S> IndexMut<usize> for Vector<S> {
    fn index_mut(&mut self, i: usize) -> &mut Q {
        &mut self.coords[i]
    }
}

impl<S> Add for &Vector<S> {
    type Output = Vector<S>;
    fn add(self, rhs: Self) -> Vector<S> {
        self.add_scaled(&Q::one(), rhs)
    }
}

impl<S> Sub for &Vector<S> {
    type Output = Vector<S>;
    fn sub(self, rhs: Self) -> Vector<S> {
        self.add_scaled(&-Q::one(), rhs)
    }
}

impl<S> Neg for &Vector<S> {
    type Output = Vector<S>;
    fn neg(self) -> Vector<S> {
        Vector::new(self.coords.iter().map(|c| -c).collect())
    }
}

/// Dense row-major rational matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Q::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Q::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Q>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_int_rows(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Q] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * &other[(k, j)];
                    out[(i, j)] += prod;
                }
            }
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    /// Bilinear form `u^T M v`.
    pub fn bilinear(&self, u: &[Q], v: &[Q]) -> Q {
        dot(u, &self.mul_vec(v))
    }

    pub fn rank(&self) -> usize {
        rank_rational((0..self.rows).map(|i| self.row(i).to_vec()).collect())
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug: Vec<Vec<Q>> = (0..n)
            .map(|i| {
                let mut row = self.row(i).to_vec();
                row.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
                row
            })
            .collect();
        let pivots = row_reduce(&mut aug, n);
        if pivots.len() < n {
            return None;
        }
        Some(Matrix::from_rows(aug.into_iter().map(|row| row[n..].to_vec()).collect()))
    }

    /// Solves `self * x = b`. Returns `None` if the system is inconsistent or
    /// the solution is not unique.
    pub fn solve(&self, b: &[Q]) -> Option<Vec<Q>> {
        assert_eq!(self.rows, b.len(), "dimension mismatch");
        let mut aug: Vec<Vec<Q>> = (0..self.rows)
            .map(|i| {
                let mut row = self.row(i).to_vec();
                row.push(b[i].clone());
                row
            })
            .collect();
        let pivots = row_reduce(&mut aug, self.cols);
        if pivots.len() < self.cols {
            return None;
        }
        if aug[pivots.len()..].iter().any(|row| !row[self.cols].is_zero()) {
            return None;
        }
        Some(aug[..self.cols].iter().map(|row| row[self.cols].clone()).collect())
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Q;
    fn index(&self, (i, j): (usize, usize)) -> &Q {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Q {
        &mut self.data[i * self.cols + j]
    }
}

/// Gauss-Jordan on the first `ncols` columns; returns pivot columns in order.
fn row_reduce(rows: &mut [Vec<Q>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                *x -= &f * p;
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

/// Scales a rational row to a primitive-content integer row.
pub fn clear_denominators(row: &[Q]) -> Vec<BigInt> {
    let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
}

/// Rank of a list of rational rows: denominators are cleared row by row and
/// the integer matrix is reduced fraction-free.
pub fn rank_rational(rows: Vec<Vec<Q>>) -> usize {
    rank_integer(rows.iter().map(|r| clear_denominators(r)).collect())
}

/// Bareiss fraction-free elimination; every intermediate stays integral.
pub fn rank_integer(mut m: Vec<Vec<BigInt>>) -> usize {
    let nrows = m.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = m[0].len();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..nrows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..nrows {
            for j in c + 1..ncols {
                let v = (&m[r][c] * &m[i][j] - &m[i][c] * &m[r][j]) / &prev;
                m[i][j] = v;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        r += 1;
        if r == nrows {
            break;
        }
    }
    r
}

/// Clears denominators, divides by the gcd and flips the sign so that the
/// first nonzero entry is positive. Returns `None` for the zero vector.
pub fn primitive_integer(coords: &[Q]) -> Option<Vec<BigInt>> {
    let ints = clear_denominators(coords);
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return None;
    }
    let lead_negative = ints.iter().find(|x| !x.is_zero()).is_some_and(Signed::is_negative);
    let g = if lead_negative { -g } else { g };
    Some(ints.into_iter().map(|x| x / &g).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qs(v: &[(i64, i64)]) -> Vec<Q> {
        v.iter().map(|&(n, d)| q_frac(n, d)).collect()
    }

    #[test]
    fn bareiss_rank_matches_gauss_jordan() {
        let m = Matrix::from_int_rows(&[vec![1, 2, 3], vec![2, 4, 6], vec![1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let mut rows: Vec<Vec<Q>> = (0..3).map(|i| m.row(i).to_vec()).collect();
        assert_eq!(row_reduce(&mut rows, 3).len(), 2);
    }

    #[test]
    fn rank_of_rational_rows() {
        let rows = vec![qs(&[(1, 2), (1, 3)]), qs(&[(3, 2), (1, 1)])];
        assert_eq!(rank_rational(rows), 1);
    }

    #[test]
    fn inverse_and_solve() {
        let g2 = Matrix::from_rows(vec![qs(&[(2, 1), (-1, 1)]), qs(&[(-1, 1), (2, 3)])]);
        let inv = g2.inverse().unwrap();
        assert_eq!(g2.mul(&inv), Matrix::identity(2));
        let x = g2.solve(&[q(1), q(0)]).unwrap();
        assert_eq!(g2.mul_vec(&x), vec![q(1), q(0)]);
    }

    #[test]
    fn overdetermined_solve_detects_inconsistency() {
        let m = Matrix::from_int_rows(&[vec![1, 0], vec![0, 1], vec![1, 1]]);
        assert_eq!(m.solve(&[q(1), q(2), q(3)]), Some(vec![q(1), q(2)]));
        assert_eq!(m.solve(&[q(1), q(2), q(4)]), None);
    }

    #[test]
    fn primitive_integer_normalization() {
        let v = primitive_integer(&qs(&[(2, 3), (-4, 3)])).unwrap();
        assert_eq!(v, vec![BigInt::from(1), BigInt::from(-2)]);
        let v = primitive_integer(&qs(&[(0, 1), (-3, 1), (6, 1)])).unwrap();
        assert_eq!(v, vec![BigInt::from(0), BigInt::from(1), BigInt::from(-2)]);
        assert!(primitive_integer(&qs(&[(0, 1)])).is_none());
    }

    #[test]
    fn ratio_detection() {
        let a = WeightVec::from_ints(&[2, 0, -4]);
        let b = WeightVec::from_ints(&[-1, 0, 2]);
        assert_eq!(a.ratio_to(&b), Some(q(-2)));
        assert!(!a.is_proportional(&WeightVec::from_ints(&[1, 1, 2])));
    }
}
