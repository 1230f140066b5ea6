use rug::Float;

use super::{ComplexBall, RealEnclosure};
use crate::error::{Error, Result};

/// Dense row-major matrix of complex balls.
#[derive(Clone, Debug, PartialEq)]
pub struct BallMatrix {
    rows: usize,
    cols: usize,
    data: Vec<ComplexBall>,
}

impl BallMatrix {
    pub fn zeros(rows: usize, cols: usize, prec: u32) -> Self {
        BallMatrix { rows, cols, data: vec![ComplexBall::zero(prec); rows * cols] }
    }

    pub fn identity(n: usize, prec: u32) -> Self {
        let mut m = Self::zeros(n, n, prec);
        for i in 0..n {
            m.data[i * n + i] = ComplexBall::one(prec);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<ComplexBall>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        BallMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<ComplexBall>) -> Self {
        assert_eq!(data.len(), rows * cols);
        BallMatrix { rows, cols, data }
    }

    /// Column vector.
    pub fn column(v: Vec<ComplexBall>) -> Self {
        let n = v.len();
        Self::from_vec(n, 1, v)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &ComplexBall {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: ComplexBall) {
        self.data[i * self.cols + j] = v;
    }

    /// Entries in row-major order.
    pub fn entries(&self) -> &[ComplexBall] {
        &self.data
    }

    pub fn prec(&self) -> u32 {
        self.data.iter().map(ComplexBall::prec).max().unwrap_or(64)
    }

    pub fn mul(&self, o: &BallMatrix) -> BallMatrix {
        assert_eq!(self.cols, o.rows, "shape mismatch in matrix product");
        let p = self.prec().max(o.prec());
        let mut out = Self::zeros(self.rows, o.cols, p);
        for i in 0..self.rows {
            for j in 0..o.cols {
                let mut acc = ComplexBall::zero(p);
                for k in 0..self.cols {
                    acc = &acc + &(self.get(i, k) * o.get(k, j));
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn add(&self, o: &BallMatrix) -> BallMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect();
        BallMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, o: &BallMatrix) -> BallMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect();
        BallMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: &ComplexBall) -> BallMatrix {
        BallMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * s).collect() }
    }

    pub fn conj_transpose(&self) -> BallMatrix {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).conj());
            }
        }
        BallMatrix { rows: self.cols, cols: self.rows, data }
    }

    pub fn trace(&self) -> ComplexBall {
        let mut acc = ComplexBall::zero(self.prec());
        for i in 0..self.rows.min(self.cols) {
            acc = &acc + self.get(i, i);
        }
        acc
    }

    /// Euclidean (Frobenius) norm of the entry vector.
    pub fn frobenius_norm(&self) -> RealEnclosure {
        let mut acc = RealEnclosure::zero(self.prec());
        for z in &self.data {
            acc = &acc + &z.abs_sq();
        }
        acc.sqrt()
    }

    pub fn contains_zero(&self) -> bool {
        self.data.iter().all(ComplexBall::contains_zero)
    }

    pub fn overlaps(&self, o: &BallMatrix) -> bool {
        (self.rows, self.cols) == (o.rows, o.cols) && self.data.iter().zip(&o.data).all(|(a, b)| a.overlaps(b))
    }

    /// Largest entry radius.
    pub fn max_radius(&self) -> Float {
        let mut best = Float::new(self.prec());
        for z in &self.data {
            let r = z.radius();
            if r > best {
                best = r;
            }
        }
        best
    }

    /// Solves `self * X = rhs` by Gaussian elimination with partial pivoting.
    pub fn solve(&self, rhs: &BallMatrix) -> Result<BallMatrix> {
        let n = self.rows;
        if self.cols != n || rhs.rows != n {
            return Err(Error::Dimension("solve needs a square system".into()));
        }
        let p = self.prec().max(rhs.prec());
        let mut a = self.clone();
        let mut b = rhs.clone();
        for col in 0..n {
            let mut best: Option<(usize, Float)> = None;
            for r in col..n {
                let lo = a.get(r, col).abs().lower().clone();
                if best.as_ref().is_none_or(|(_, v)| lo > *v) {
                    best = Some((r, lo));
                }
            }
            let (piv, mag) = best.expect("nonempty column");
            if !(mag > 0) {
                return Err(Error::Precision {
                    bits: p,
                    what: "pivot enclosure contains zero in ball Gaussian elimination".into(),
                });
            }
            if piv != col {
                for j in 0..n {
                    a.data.swap(piv * n + j, col * n + j);
                }
                for j in 0..b.cols {
                    let bc = b.cols;
                    b.data.swap(piv * bc + j, col * bc + j);
                }
            }
            let pivot = a.get(col, col).clone();
            for r in (col + 1)..n {
                let f = a.get(r, col) / &pivot;
                for j in col..n {
                    let v = a.get(r, j) - &(&f * a.get(col, j));
                    a.set(r, j, v);
                }
                for j in 0..b.cols {
                    let v = b.get(r, j) - &(&f * b.get(col, j));
                    b.set(r, j, v);
                }
            }
        }
        let mut x = BallMatrix::zeros(n, b.cols, p);
        for j in 0..b.cols {
            for i in (0..n).rev() {
                let mut acc = b.get(i, j).clone();
                for k in (i + 1)..n {
                    acc = &acc - &(a.get(i, k) * x.get(k, j));
                }
                x.set(i, j, &acc / a.get(i, i));
            }
        }
        Ok(x)
    }

    /// Determinant by ball Gaussian elimination.
    pub fn det(&self) -> Result<ComplexBall> {
        let n = self.rows;
        assert_eq!(n, self.cols);
        let p = self.prec();
        let mut a = self.clone();
        let mut det = ComplexBall::one(p);
        for col in 0..n {
            let mut best: Option<(usize, Float)> = None;
            for r in col..n {
                let lo = a.get(r, col).abs().lower().clone();
                if best.as_ref().is_none_or(|(_, v)| lo > *v) {
                    best = Some((r, lo));
                }
            }
            let (piv, mag) = best.expect("nonempty column");
            if !(mag > 0) {
                return Err(Error::Precision { bits: p, what: "determinant pivot contains zero".into() });
            }
            if piv != col {
                for j in 0..n {
                    a.data.swap(piv * n + j, col * n + j);
                }
                det = -det;
            }
            let pivot = a.get(col, col).clone();
            det = &det * &pivot;
            for r in (col + 1)..n {
                let f = a.get(r, col) / &pivot;
                for j in col..n {
                    let v = a.get(r, j) - &(&f * a.get(col, j));
                    a.set(r, j, v);
                }
            }
        }
        Ok(det)
    }
}

/// Certified matrix exponential by scaling and squaring with a truncated
/// Taylor series and an explicit tail bound.
pub fn matrix_exp_numeric(m: &BallMatrix, prec: u32) -> BallMatrix {
    let n = m.rows();
    assert_eq!(n, m.cols(), "matrix exponential needs a square matrix");
    let m = BallMatrix::from_vec(n, n, m.entries().iter().map(|z| z.with_prec(prec.max(z.prec()))).collect());
    let norm_hi = m.frobenius_norm().upper().to_f64();
    if !norm_hi.is_finite() {
        let mut out = BallMatrix::zeros(n, n, prec);
        for z in out.data.iter_mut() {
            *z = ComplexBall::new(RealEnclosure::entire(prec), RealEnclosure::entire(prec));
        }
        return out;
    }
    let mut squarings = 0i32;
    while norm_hi / 2f64.powi(squarings) > 0.5 {
        squarings += 1;
    }
    let a = BallMatrix::from_vec(
        n,
        n,
        m.entries()
            .iter()
            .map(|z| ComplexBall::new(z.re().mul_2si(-squarings), z.im().mul_2si(-squarings)))
            .collect(),
    );
    let a_norm = a.frobenius_norm();
    // Terms k >= N are bounded by 2 * |A|^N / N!, with |A| <= 1/2.
    let target = -(prec as f64) - 8.0;
    let mut terms = 1u32;
    let mut log2_term = 0.0f64;
    loop {
        log2_term += (0.5f64).log2() - (terms as f64).log2();
        if log2_term + 1.0 < target {
            break;
        }
        terms += 1;
    }
    let mut sum = BallMatrix::identity(n, prec);
    let mut power = BallMatrix::identity(n, prec);
    for k in 1..terms {
        power = power.mul(&a).scale(&ComplexBall::from_real(RealEnclosure::from_i64(k as i64, prec).recip()));
        sum = sum.add(&power);
    }
    let mut fact = RealEnclosure::one(prec);
    for k in 1..=terms {
        fact = &fact * &RealEnclosure::from_i64(k as i64, prec);
    }
    let tail = (&a_norm.upper_point().pow_u(terms) / &fact).mul_2si(1);
    let tail_hi = tail.upper().clone();
    let widen = RealEnclosure::new(-tail_hi.clone(), tail_hi);
    let widened = ComplexBall::new(widen.clone(), widen);
    for z in sum.data.iter_mut() {
        *z = &*z + &widened;
    }
    for _ in 0..squarings {
        sum = sum.mul(&sum);
    }
    sum
}
