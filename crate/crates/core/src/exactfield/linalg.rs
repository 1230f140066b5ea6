//! Exact dense linear algebra over a field, generic over the scalar type.
//!
//! Matrices are `Vec<Vec<T>>` in row-major order. Every routine is exact, so
//! pivots are simply the first nonzero entry.

use std::fmt::Debug;

use rug::{Integer, Rational};

/// Field operations needed by the elimination routines.
///
/// Constants are produced "like" an existing value so that scalars that carry
/// their field (number field elements) can be used.
pub trait Scalar: Clone + PartialEq + Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn int_like(&self, v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn negated(&self) -> Self;
    /// Multiplicative inverse; callers guarantee `self != 0`.
    fn inverse(&self) -> Self;

    fn divided(&self, o: &Self) -> Self {
        self.times(&o.inverse())
    }
}

impl Scalar for Rational {
    fn zero_like(&self) -> Self {
        Rational::new()
    }
    fn one_like(&self) -> Self {
        Rational::from(1)
    }
    fn int_like(&self, v: i64) -> Self {
        Rational::from(v)
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn plus(&self, o: &Self) -> Self {
        Rational::from(self + o)
    }
    fn minus(&self, o: &Self) -> Self {
        Rational::from(self - o)
    }
    fn times(&self, o: &Self) -> Self {
        Rational::from(self * o)
    }
    fn negated(&self) -> Self {
        Rational::from(-self)
    }
    fn inverse(&self) -> Self {
        Rational::from(self.recip_ref())
    }
}

pub type Mat<T> = Vec<Vec<T>>;

pub fn shape<T>(a: &Mat<T>) -> (usize, usize) {
    (a.len(), a.first().map_or(0, Vec::len))
}

pub fn identity<T: Scalar>(n: usize, like: &T) -> Mat<T> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { like.one_like() } else { like.zero_like() }).collect())
        .collect()
}

pub fn transpose<T: Clone>(a: &Mat<T>) -> Mat<T> {
    let (r, c) = shape(a);
    (0..c).map(|j| (0..r).map(|i| a[i][j].clone()).collect()).collect()
}

pub fn mat_mul<T: Scalar>(a: &Mat<T>, b: &Mat<T>) -> Mat<T> {
    let (r, k) = shape(a);
    let (k2, c) = shape(b);
    assert_eq!(k, k2, "shape mismatch in matrix product");
    let like = &a[0][0];
    (0..r)
        .map(|i| {
            (0..c)
                .map(|j| {
                    let mut acc = like.zero_like();
                    for t in 0..k {
                        if !a[i][t].is_zero() && !b[t][j].is_zero() {
                            acc = acc.plus(&a[i][t].times(&b[t][j]));
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

pub fn mat_vec<T: Scalar>(a: &Mat<T>, v: &[T]) -> Vec<T> {
    a.iter()
        .map(|row| {
            let mut acc = v[0].zero_like();
            for (x, y) in row.iter().zip(v) {
                if !x.is_zero() && !y.is_zero() {
                    acc = acc.plus(&x.times(y));
                }
            }
            acc
        })
        .collect()
}

/// Determinant by Gaussian elimination.
pub fn det<T: Scalar>(a: &Mat<T>) -> T {
    let n = a.len();
    if n == 0 {
        panic!("determinant of an empty matrix has no field to live in");
    }
    let mut m = a.clone();
    let mut acc = m[0][0].one_like();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return acc.zero_like();
        };
        if piv != col {
            m.swap(piv, col);
            acc = acc.negated();
        }
        let inv = m[col][col].inverse();
        acc = acc.times(&m[col][col]);
        for r in (col + 1)..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].times(&inv);
            for j in col..n {
                let v = m[r][j].minus(&f.times(&m[col][j]));
                m[r][j] = v;
            }
        }
    }
    acc
}

/// Reduced row echelon form; returns the matrix and its pivot columns.
pub fn rref<T: Scalar>(a: &Mat<T>) -> (Mat<T>, Vec<usize>) {
    let (rows, cols) = shape(a);
    let mut m = a.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(p, r);
        let inv = m[r][c].inverse();
        for j in c..cols {
            m[r][j] = m[r][j].times(&inv);
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let v = m[i][j].minus(&f.times(&m[r][j]));
                    m[i][j] = v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (m, pivots)
}

pub fn rank<T: Scalar>(a: &Mat<T>) -> usize {
    if a.is_empty() || a[0].is_empty() {
        return 0;
    }
    rref(a).1.len()
}

/// Basis of the right kernel `{x : a x = 0}`, as column vectors.
pub fn kernel<T: Scalar>(a: &Mat<T>, like: &T) -> Vec<Vec<T>> {
    let (_, cols) = shape(a);
    if a.is_empty() {
        return (0..cols)
            .map(|i| (0..cols).map(|j| if i == j { like.one_like() } else { like.zero_like() }).collect())
            .collect();
    }
    let (m, pivots) = rref(a);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![like.zero_like(); cols];
            v[f] = like.one_like();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = m[r][f].negated();
            }
            v
        })
        .collect()
}

/// Inverse of a square matrix, `None` when singular.
pub fn inverse<T: Scalar>(a: &Mat<T>) -> Option<Mat<T>> {
    let n = a.len();
    let like = &a[0][0];
    let aug: Mat<T> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { like.one_like() } else { like.zero_like() }));
            r
        })
        .collect();
    let (m, pivots) = rref(&aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(m.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Solves `a x = b` for a square nonsingular `a`.
pub fn solve<T: Scalar>(a: &Mat<T>, b: &[T]) -> Option<Vec<T>> {
    let inv = inverse(a)?;
    Some(mat_vec(&inv, b))
}

/// Characteristic polynomial `det(x I - a)` by the Faddeev-LeVerrier
/// recursion, coefficients lowest degree first (monic).
pub fn charpoly<T: Scalar>(a: &Mat<T>) -> Vec<T> {
    let n = a.len();
    let like = &a[0][0];
    let mut coeffs = vec![like.zero_like(); n + 1];
    coeffs[n] = like.one_like();
    let mut m = vec![vec![like.zero_like(); n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = if k == 1 { m.clone() } else { mat_mul(a, &m) };
        for (i, row) in next.iter_mut().enumerate() {
            row[i] = row[i].plus(&coeffs[n - k + 1]);
        }
        m = next;
        let am = mat_mul(a, &m);
        let mut tr = like.zero_like();
        for (i, row) in am.iter().enumerate() {
            tr = tr.plus(&row[i]);
        }
        coeffs[n - k] = tr.negated().divided(&like.int_like(k as i64));
    }
    coeffs
}

/// Rational matrix with every entry an integer, as integers.
pub fn to_integer_matrix(a: &Mat<Rational>) -> Option<Vec<Vec<Integer>>> {
    a.iter()
        .map(|row| row.iter().map(|q| (*q.denom() == 1).then(|| q.numer().clone())).collect())
        .collect()
}
