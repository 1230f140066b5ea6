//! Integer matrices: Hermite normal form and exact determinants.

use rug::{Integer, Rational};

use super::linalg;

pub type IntMat = Vec<Vec<Integer>>;

fn row_combine(m: &mut IntMat, a: usize, b: usize, coef: [&Integer; 4]) {
    // (row_a, row_b) <- (s row_a + t row_b, u row_a + v row_b)
    let [s, t, u, v] = coef;
    for j in 0..m[a].len() {
        let x = m[a][j].clone();
        let y = m[b][j].clone();
        m[a][j] = Integer::from(s * &x) + Integer::from(t * &y);
        m[b][j] = Integer::from(u * &x) + Integer::from(v * &y);
    }
}

fn row_axpy(m: &mut IntMat, target: usize, src: usize, f: &Integer) {
    for j in 0..m[target].len() {
        let d = Integer::from(f * &m[src][j]);
        m[target][j] -= d;
    }
}

/// Row-style Hermite normal form.
///
/// Returns `(H, U)` with `H = U * M`, `U` unimodular, `H` in echelon form
/// with positive pivots, entries above each pivot reduced into
/// `[0, pivot)`, and zero rows at the bottom.
pub fn hnf(m: &IntMat) -> (IntMat, IntMat) {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut h = m.clone();
    let mut u: IntMat = (0..rows)
        .map(|i| (0..rows).map(|j| Integer::from((i == j) as i32)).collect())
        .collect();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        for i in (r + 1)..rows {
            if h[i][c] == 0 {
                continue;
            }
            if h[r][c] == 0 {
                h.swap(r, i);
                u.swap(r, i);
                continue;
            }
            let (g, s, t) = h[r][c].clone().extended_gcd(h[i][c].clone(), Integer::new());
            let p = Integer::from(&h[r][c] / &g);
            let q = Integer::from(&h[i][c] / &g);
            let nq = Integer::from(-&q);
            // [[s, t], [-q, p]] has determinant (s a + t b) / g = 1
            row_combine(&mut h, r, i, [&s, &t, &nq, &p]);
            row_combine(&mut u, r, i, [&s, &t, &nq, &p]);
        }
        if h[r][c] == 0 {
            continue;
        }
        if h[r][c] < 0 {
            for x in h[r].iter_mut() {
                *x = Integer::from(-&*x);
            }
            for x in u[r].iter_mut() {
                *x = Integer::from(-&*x);
            }
        }
        for i in 0..r {
            let (f, _) = <(Integer, Integer)>::from(h[i][c].div_rem_floor_ref(&h[r][c]));
            if f != 0 {
                row_axpy(&mut h, i, r, &f);
                row_axpy(&mut u, i, r, &f);
            }
        }
        r += 1;
    }
    (h, u)
}

/// Exact determinant of a square integer matrix.
pub fn det(m: &IntMat) -> Integer {
    if m.is_empty() {
        return Integer::from(1);
    }
    let q: Vec<Vec<Rational>> = m.iter().map(|r| r.iter().map(|x| Rational::from(x.clone())).collect()).collect();
    linalg::det(&q).numer().clone()
}

pub fn mul(a: &IntMat, b: &IntMat) -> IntMat {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut acc = Integer::new();
                    for k in 0..inner {
                        acc += Integer::from(&row[k] * &b[k][j]);
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// The nonzero rows of the Hermite normal form: a basis of the row lattice.
pub fn lattice_basis(m: &IntMat) -> IntMat {
    hnf(m).0.into_iter().filter(|r| r.iter().any(|x| *x != 0)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn im(rows: &[&[i64]]) -> IntMat {
        rows.iter().map(|r| r.iter().map(|&v| Integer::from(v)).collect()).collect()
    }

    #[test]
    fn gcd_column() {
        let (h, u) = hnf(&im(&[&[4], &[6]]));
        assert_eq!(h, im(&[&[2], &[0]]));
        assert_eq!(mul(&u, &im(&[&[4], &[6]])), h);
        assert_eq!(det(&u).abs(), 1);
    }

    #[test]
    fn identity_is_fixed() {
        let i = im(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(hnf(&i).0, i);
    }

    #[test]
    fn lattice_index_of_stacked_generators() {
        let m = im(&[&[2, 0], &[0, 3], &[1, 1]]);
        let basis = lattice_basis(&m);
        assert_eq!(basis.len(), 2);
        assert_eq!(det(&basis).abs(), 1);
        // brute force: every point of a small box lies in the lattice
        for x in -3i64..=3 {
            for y in -3i64..=3 {
                // basis is upper triangular with unit determinant
                let a = Integer::from(x) / &basis[0][0];
                let rem = Integer::from(y) - Integer::from(&a * &basis[0][1]);
                assert!(rem.is_divisible(&basis[1][1]));
            }
        }
    }

    #[test]
    fn echelon_shape_and_reduction() {
        let m = im(&[&[3, 5, 7], &[6, 1, 4], &[9, 2, 2]]);
        let (h, u) = hnf(&m);
        assert_eq!(mul(&u, &m), h);
        assert_eq!(det(&u).abs(), 1);
        assert_eq!(det(&h).abs(), det(&m).abs());
        for i in 0..3 {
            assert!(h[i][i] > 0);
            for j in 0..i {
                assert_eq!(h[i][j], 0);
                assert!(h[j][i] >= 0 && h[j][i] < h[i][i]);
            }
        }
    }
}
