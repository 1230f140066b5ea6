use crate::balls::{BallMatrix, ComplexBall};
use crate::error::{Error, Result};
use crate::exactfield::linalg::{self, Mat};
use crate::exactfield::{FieldElement, NumberField};

/// A linear algebraic subgroup of `GL_m`, described by a basis of its Lie
/// algebra: column `j` of `z` holds the coordinates of `e_j` in the basis of
/// elementary matrices (row-major order).
#[derive(Clone, Debug, PartialEq)]
pub struct GroupData {
    field: NumberField,
    m: usize,
    z: Mat<FieldElement>,
    /// Rows of `z` forming an invertible `n x n` block, and that block's
    /// inverse.
    pivot_rows: Vec<usize>,
    pivot_inv: Mat<FieldElement>,
    is_gl: bool,
}

impl GroupData {
    /// The full group `GL_m`: `z` is the identity.
    pub fn general_linear(field: &NumberField, m: usize) -> Self {
        let n = m * m;
        let z = linalg::identity(n, &field.zero());
        GroupData { field: field.clone(), m, pivot_rows: (0..n).collect(), pivot_inv: z.clone(), z, is_gl: true }
    }

    /// A group given by its `m^2 x n` coordinate matrix; the columns must be
    /// independent.
    pub fn new(field: &NumberField, m: usize, z: Mat<FieldElement>) -> Result<Self> {
        let (rows, n) = linalg::shape(&z);
        if rows != m * m {
            return Err(Error::Dimension(format!("basis matrix has {rows} rows, expected {}", m * m)));
        }
        if n == 0 || n > rows {
            return Err(Error::Dimension(format!("Lie algebra dimension {n} out of range 1..={rows}")));
        }
        if z.iter().flatten().any(|x| !x.field().same(field)) {
            return Err(Error::MixedFields);
        }
        let zt = linalg::transpose(&z);
        let (_, pivot_rows) = linalg::rref(&zt);
        if pivot_rows.len() != n {
            return Err(Error::RankDeficient { expected: n, found: pivot_rows.len() });
        }
        let block: Mat<FieldElement> = pivot_rows.iter().map(|&r| z[r].clone()).collect();
        let pivot_inv = linalg::inverse(&block).ok_or(Error::Singular)?;
        let is_gl = n == rows && linalg::identity(n, &field.zero()) == z;
        Ok(GroupData { field: field.clone(), m, z, pivot_rows, pivot_inv, is_gl })
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Dimension of the Lie algebra.
    pub fn n(&self) -> usize {
        self.z[0].len()
    }

    pub fn z(&self) -> &Mat<FieldElement> {
        &self.z
    }

    /// Whether the basis is the standard one of `gl_m`.
    pub fn is_general_linear(&self) -> bool {
        self.is_gl
    }

    /// The matrix `sum_j x_j e_j` for exact coordinates `x`.
    pub fn from_coords(&self, x: &[FieldElement]) -> Result<Mat<FieldElement>> {
        if x.len() != self.n() {
            return Err(Error::Dimension(format!("{} coordinates for a Lie algebra of dimension {}", x.len(), self.n())));
        }
        let flat = linalg::mat_vec(&self.z, x);
        Ok(flat.chunks(self.m).map(<[FieldElement]>::to_vec).collect())
    }

    /// Exact coordinates of a matrix over the field, or `None` when it is
    /// not in the Lie algebra.
    pub fn coords_exact(&self, u: &Mat<FieldElement>) -> Option<Vec<FieldElement>> {
        let flat: Vec<FieldElement> = u.iter().flatten().cloned().collect();
        let rhs: Vec<FieldElement> = self.pivot_rows.iter().map(|&r| flat[r].clone()).collect();
        let x = linalg::mat_vec(&self.pivot_inv, &rhs);
        (linalg::mat_vec(&self.z, &x) == flat).then_some(x)
    }
}

/// Coordinates of `u` in the basis `e_1..e_n`.
///
/// The coordinates are solved from an invertible block of rows of `Z`; the
/// remaining rows give a residual that must enclose zero.
pub fn coords_in_basis(u: &BallMatrix, group: &GroupData) -> Result<Vec<ComplexBall>> {
    let m = group.m();
    if u.rows() != m || u.cols() != m {
        return Err(Error::Dimension(format!("{}x{} matrix for a group in GL_{m}", u.rows(), u.cols())));
    }
    let flat = u.entries();
    if group.is_gl {
        return Ok(flat.to_vec());
    }
    let prec = u.prec();
    let embed = |a: &Mat<FieldElement>| -> Result<BallMatrix> {
        let rows = a
            .iter()
            .map(|r| r.iter().map(|x| x.embed_primary(prec)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(BallMatrix::from_rows(rows))
    };
    let rhs = BallMatrix::column(group.pivot_rows.iter().map(|&r| flat[r].clone()).collect());
    let x = embed(&group.pivot_inv)?.mul(&rhs);
    let back = embed(&group.z)?.mul(&x);
    for (i, (b, f)) in back.entries().iter().zip(flat).enumerate() {
        let r = b - f;
        if !r.contains_zero() {
            return Err(Error::NotInLieAlgebra(format!("coordinate {} of the residual is {r}", i + 1)));
        }
    }
    Ok(x.entries().to_vec())
}
