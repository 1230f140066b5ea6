use std::fmt;

use crate::balls::{BallMatrix, RealEnclosure};
use crate::error::{Error, Result};
use crate::exactfield::linalg::{self, Mat};
use crate::exactfield::{FieldElement, NumberField};
use crate::heights::hprime;

/// A square matrix with entries in a number field.
#[derive(Clone, PartialEq)]
pub struct MatrixK {
    field: NumberField,
    entries: Mat<FieldElement>,
}

impl MatrixK {
    pub fn new(field: &NumberField, entries: Mat<FieldElement>) -> Result<Self> {
        let m = entries.len();
        if m == 0 {
            return Err(Error::Dimension("empty matrix".into()));
        }
        if entries.iter().any(|r| r.len() != m) {
            return Err(Error::Dimension(format!("matrix rows must all have length {m}")));
        }
        if entries.iter().flatten().any(|x| !x.field().same(field)) {
            return Err(Error::MixedFields);
        }
        Ok(MatrixK { field: field.clone(), entries })
    }

    pub fn from_i64(field: &NumberField, rows: &[&[i64]]) -> Result<Self> {
        Self::new(field, rows.iter().map(|r| r.iter().map(|&x| field.int(x)).collect()).collect())
    }

    pub fn identity(field: &NumberField, m: usize) -> Self {
        MatrixK { field: field.clone(), entries: linalg::identity(m, &field.zero()) }
    }

    pub fn zero(field: &NumberField, m: usize) -> Self {
        MatrixK { field: field.clone(), entries: vec![vec![field.zero(); m]; m] }
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn m(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &Mat<FieldElement> {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldElement {
        &self.entries[i][j]
    }

    /// Entries in row-major order, i.e. the coordinates in the basis of
    /// elementary matrices `E_11, E_12, ..., E_mm`.
    pub fn flatten(&self) -> Vec<FieldElement> {
        self.entries.iter().flatten().cloned().collect()
    }

    /// Inverse of [`MatrixK::flatten`].
    pub fn from_flat(field: &NumberField, m: usize, xs: &[FieldElement]) -> Result<Self> {
        if xs.len() != m * m {
            return Err(Error::Dimension(format!("{} coordinates for a {m}x{m} matrix", xs.len())));
        }
        Self::new(field, xs.chunks(m).map(<[FieldElement]>::to_vec).collect())
    }

    fn check(&self, o: &MatrixK) -> Result<()> {
        if !self.field.same(&o.field) {
            return Err(Error::MixedFields);
        }
        if self.m() != o.m() {
            return Err(Error::Dimension(format!("{}x{} and {}x{} matrices", self.m(), self.m(), o.m(), o.m())));
        }
        Ok(())
    }

    pub fn mul(&self, o: &MatrixK) -> Result<Self> {
        self.check(o)?;
        Ok(MatrixK { field: self.field.clone(), entries: linalg::mat_mul(&self.entries, &o.entries) })
    }

    pub fn add(&self, o: &MatrixK) -> Result<Self> {
        self.check(o)?;
        Ok(self.zip_with(o, |a, b| a + b))
    }

    pub fn sub(&self, o: &MatrixK) -> Result<Self> {
        self.check(o)?;
        Ok(self.zip_with(o, |a, b| a - b))
    }

    fn zip_with(&self, o: &MatrixK, f: impl Fn(&FieldElement, &FieldElement) -> FieldElement) -> Self {
        let entries = self.entries.iter().zip(&o.entries).map(|(r, s)| r.iter().zip(s).map(|(a, b)| f(a, b)).collect()).collect();
        MatrixK { field: self.field.clone(), entries }
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        MatrixK { field: self.field.clone(), entries: self.entries.iter().map(|r| r.iter().map(|x| x * c).collect()).collect() }
    }

    pub fn det(&self) -> FieldElement {
        linalg::det(&self.entries)
    }

    pub fn trace(&self) -> FieldElement {
        let mut acc = self.field.zero();
        for (i, row) in self.entries.iter().enumerate() {
            acc = &acc + &row[i];
        }
        acc
    }

    pub fn inverse(&self) -> Result<Self> {
        let inv = linalg::inverse(&self.entries).ok_or(Error::Singular)?;
        Ok(MatrixK { field: self.field.clone(), entries: inv })
    }

    pub fn transpose(&self) -> Self {
        MatrixK { field: self.field.clone(), entries: linalg::transpose(&self.entries) }
    }

    /// Entrywise complex conjugate of the transpose.
    pub fn conj_transpose(&self) -> Result<Self> {
        let entries = linalg::transpose(&self.entries)
            .into_iter()
            .map(|r| r.iter().map(FieldElement::conj).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        Ok(MatrixK { field: self.field.clone(), entries })
    }

    pub fn is_identity(&self) -> bool {
        self.entries.iter().enumerate().all(|(i, r)| r.iter().enumerate().all(|(j, x)| if i == j { x.is_one() } else { x.is_zero() }))
    }

    /// Enclosure of the matrix under the primary embedding of the field.
    pub fn to_ball(&self, prec: u32) -> Result<BallMatrix> {
        let rows = self
            .entries
            .iter()
            .map(|r| r.iter().map(|x| x.embed_primary(prec)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(BallMatrix::from_rows(rows))
    }

    /// Block-diagonal matrix with the given square blocks.
    pub fn block_diag(field: &NumberField, blocks: &[MatrixK]) -> Result<Self> {
        let m: usize = blocks.iter().map(MatrixK::m).sum();
        let mut out = Self::zero(field, m);
        let mut off = 0;
        for b in blocks {
            if !b.field.same(field) {
                return Err(Error::MixedFields);
            }
            for i in 0..b.m() {
                for j in 0..b.m() {
                    out.entries[off + i][off + j] = b.entries[i][j].clone();
                }
            }
            off += b.m();
        }
        Ok(out)
    }
}

impl fmt::Debug for MatrixK {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, r) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            for (j, x) in r.iter().enumerate() {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{x}")?;
            }
        }
        f.write_str("]")
    }
}

impl fmt::Display for MatrixK {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Height of `g` through `[1 : g_11 : g_12 : ... : g_mm]`.
pub fn mat_height(g: &MatrixK, prec: u32) -> Result<RealEnclosure> {
    hprime(&g.flatten(), prec)
}

/// Euclidean norm of the entry vector.
pub fn mat_norm(x: &BallMatrix) -> RealEnclosure {
    x.frobenius_norm()
}

/// Which way [`conjugate`] applies the conjugator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `v^-1 x v`
    Inner,
    /// `v x v^-1`
    Outer,
}

/// `v^-1 x v` or `v x v^-1`, exactly over the field.
pub fn conjugate(v: &MatrixK, x: &MatrixK, side: Side) -> Result<MatrixK> {
    let vi = v.inverse()?;
    match side {
        Side::Inner => vi.mul(x)?.mul(v),
        Side::Outer => v.mul(x)?.mul(&vi),
    }
}

/// Ball version of [`conjugate`]; `v` is embedded at the precision of `x`.
pub fn conjugate_ball(v: &MatrixK, x: &BallMatrix, side: Side) -> Result<BallMatrix> {
    let prec = x.prec();
    let vb = v.to_ball(prec)?;
    let vib = v.inverse()?.to_ball(prec)?;
    Ok(match side {
        Side::Inner => vib.mul(x).mul(&vb),
        Side::Outer => vb.mul(x).mul(&vib),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::balls::ComplexBall;
    use rug::Rational;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    #[test]
    fn heights_of_small_matrices() {
        let k = NumberField::rationals();
        let p = 128;
        assert!(mat_height(&MatrixK::identity(&k, 2), p).unwrap().contains_rational(&Rational::new()));
        let d = MatrixK::from_i64(&k, &[&[2, 0], &[0, 1]]).unwrap();
        assert!(mat_height(&d, p).unwrap().overlaps(&RealEnclosure::ln2(p)));
        // entries 3/2, 1/2, -1/2, 1/2: cleared to (2, 3, 1, -1, 1)
        let v = MatrixK::new(&k, vec![vec![k.from_rational(&q(3, 2)), k.from_rational(&q(1, 2))], vec![k.from_rational(&q(-1, 2)), k.from_rational(&q(1, 2))]]).unwrap();
        assert!(mat_height(&v, p).unwrap().overlaps(&RealEnclosure::from_i64(3, p).ln()));
    }

    #[test]
    fn norms() {
        let p = 96;
        let two = RealEnclosure::from_i64(2, p);
        assert!(mat_norm(&BallMatrix::identity(2, p)).overlaps(&two.sqrt()));
        assert!(mat_norm(&BallMatrix::zeros(2, 2, p)).contains_zero());
        let mut v = BallMatrix::zeros(2, 2, p);
        v.set(1, 1, ComplexBall::from_real(RealEnclosure::ln2(p)));
        assert!(mat_norm(&v).overlaps(&RealEnclosure::ln2(p)));
    }

    #[test]
    fn conjugation_by_identity_and_trace() {
        let k = NumberField::gaussian();
        let i = k.generator();
        let x = MatrixK::new(&k, vec![vec![k.int(1), i.clone()], vec![k.int(3), &i + &k.int(2)]]).unwrap();
        let id = MatrixK::identity(&k, 2);
        assert_eq!(conjugate(&id, &x, Side::Inner).unwrap(), x);
        let v = MatrixK::new(&k, vec![vec![k.int(2), k.int(1)], vec![i.clone(), k.int(1)]]).unwrap();
        for side in [Side::Inner, Side::Outer] {
            assert_eq!(conjugate(&v, &x, side).unwrap().trace(), x.trace());
        }
        let back = conjugate(&v, &conjugate(&v, &x, Side::Inner).unwrap(), Side::Outer).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn singular_conjugator_is_rejected() {
        let k = NumberField::rationals();
        let v = MatrixK::from_i64(&k, &[&[1, 2], &[2, 4]]).unwrap();
        let x = MatrixK::identity(&k, 2);
        assert_eq!(conjugate(&v, &x, Side::Inner).unwrap_err(), Error::Singular);
    }

    #[test]
    fn rotating_a_diagonal_log() {
        // v diag(2 pi i, 0) v^-1 with v = [[1+1/k, 1/k], [-1/k, 1-1/k]], k = 3
        let k = NumberField::rationals();
        let kk = 3i64;
        let v = MatrixK::new(
            &k,
            vec![
                vec![k.from_rational(&q(kk + 1, kk)), k.from_rational(&q(1, kk))],
                vec![k.from_rational(&q(-1, kk)), k.from_rational(&q(kk - 1, kk))],
            ],
        )
        .unwrap();
        let p = 128;
        let two_pi_i = ComplexBall::new(RealEnclosure::zero(p), RealEnclosure::pi(p).mul_2si(1));
        let mut x = BallMatrix::zeros(2, 2, p);
        x.set(0, 0, two_pi_i.clone());
        let u = conjugate_ball(&v, &x, Side::Outer).unwrap();
        let kf = RealEnclosure::from_i64(kk, p);
        let expect = |num: RealEnclosure| two_pi_i.scale(&num);
        let one = RealEnclosure::one(p);
        assert!(u.get(0, 0).overlaps(&expect(&one - &(&one / &kf.sqr()))));
        assert!(u.get(0, 1).overlaps(&expect(-&(&(&one / &kf) * &(&one + &(&one / &kf))))));
        assert!(u.get(1, 0).overlaps(&expect(-&(&(&one / &kf) * &(&one - &(&one / &kf))))));
        assert!(u.get(1, 1).overlaps(&expect(&one / &kf.sqr())));
    }
}
