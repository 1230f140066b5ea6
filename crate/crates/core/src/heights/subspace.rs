use rug::Integer;

use super::projective::{height_projective, HeightVariant, ProjectivePoint};
use crate::balls::RealEnclosure;
use crate::error::{Error, Result};
use crate::exactfield::linalg::{self, Mat};
use crate::exactfield::{FieldElement, NumberField};

/// All `d`-element subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, d: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if d > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..d).collect();
    loop {
        out.push(idx.clone());
        let mut i = d;
        while i > 0 && idx[i - 1] == n - d + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        idx[i - 1] += 1;
        for j in i..d {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Enclosure of `log C(n, k)`.
pub fn log_binomial(n: u32, k: u32, prec: u32) -> RealEnclosure {
    let b = Integer::from(Integer::binomial_u(n, k));
    RealEnclosure::from_integer(&b, prec).ln()
}

/// A `d`-dimensional subspace of `K^n`, given by an `n x d` basis matrix
/// whose columns are the basis vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct SubspaceSpec {
    field: NumberField,
    ambient: usize,
    /// Row-major `n x d` matrix.
    basis: Mat<FieldElement>,
    dim: usize,
}

impl SubspaceSpec {
    /// Builds a subspace from basis columns; the columns must be independent.
    pub fn from_columns(field: &NumberField, ambient: usize, columns: &[Vec<FieldElement>]) -> Result<Self> {
        let dim = columns.len();
        if dim > ambient {
            return Err(Error::Dimension(format!("{dim} basis vectors in a space of dimension {ambient}")));
        }
        for c in columns {
            if c.len() != ambient {
                return Err(Error::Dimension(format!("basis vector of length {} in ambient dimension {ambient}", c.len())));
            }
            if c.iter().any(|x| !x.field().same(field)) {
                return Err(Error::MixedFields);
            }
        }
        let basis: Mat<FieldElement> = (0..ambient).map(|i| columns.iter().map(|c| c[i].clone()).collect()).collect();
        let spec = SubspaceSpec { field: field.clone(), ambient, basis, dim };
        if dim > 0 {
            let r = linalg::rank(&spec.basis);
            if r != dim {
                return Err(Error::RankDeficient { expected: dim, found: r });
            }
        }
        Ok(spec)
    }

    /// Subspace spanned by an `n x d` row-major basis matrix.
    pub fn from_matrix(field: &NumberField, basis: Mat<FieldElement>) -> Result<Self> {
        let (n, d) = linalg::shape(&basis);
        let columns: Vec<Vec<FieldElement>> = (0..d).map(|j| (0..n).map(|i| basis[i][j].clone()).collect()).collect();
        Self::from_columns(field, n, &columns)
    }

    /// The zero subspace of `K^n`.
    pub fn zero(field: &NumberField, ambient: usize) -> Self {
        SubspaceSpec { field: field.clone(), ambient, basis: vec![Vec::new(); ambient], dim: 0 }
    }

    /// The whole space `K^n`.
    pub fn full(field: &NumberField, ambient: usize) -> Self {
        let basis = linalg::identity(ambient, &field.zero());
        SubspaceSpec { field: field.clone(), ambient, basis, dim: ambient }
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Row-major `n x d` basis matrix.
    pub fn basis(&self) -> &Mat<FieldElement> {
        &self.basis
    }

    pub fn column(&self, j: usize) -> Vec<FieldElement> {
        self.basis.iter().map(|row| row[j].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<FieldElement>> {
        (0..self.dim).map(|j| self.column(j)).collect()
    }

    /// Whether `v` lies in the subspace.
    pub fn contains(&self, v: &[FieldElement]) -> bool {
        if self.dim == 0 {
            return v.iter().all(FieldElement::is_zero);
        }
        let aug: Mat<FieldElement> =
            self.basis.iter().zip(v).map(|(row, x)| row.iter().cloned().chain([x.clone()]).collect()).collect();
        linalg::rank(&aug) == self.dim
    }

    /// Whether both subspaces are equal.
    pub fn same_span(&self, o: &SubspaceSpec) -> bool {
        self.ambient == o.ambient && self.dim == o.dim && o.columns().iter().all(|c| self.contains(c))
    }
}

/// Plücker coordinates: all `d x d` minors of the basis, rows chosen in
/// lexicographic order.
pub fn pluecker(w: &SubspaceSpec) -> Result<Vec<FieldElement>> {
    let d = w.dim;
    if d == 0 {
        return Ok(vec![w.field.one()]);
    }
    let out: Vec<FieldElement> = combinations(w.ambient, d)
        .into_iter()
        .map(|rows| {
            let minor: Mat<FieldElement> = rows.iter().map(|&r| w.basis[r].clone()).collect();
            linalg::det(&minor)
        })
        .collect();
    if out.iter().all(FieldElement::is_zero) {
        return Err(Error::RankDeficient { expected: d, found: linalg::rank(&w.basis) });
    }
    Ok(out)
}

/// Height of the Plücker coordinate vector. The zero and full subspaces
/// have height 0.
pub fn subspace_height(w: &SubspaceSpec, variant: HeightVariant, prec: u32) -> Result<RealEnclosure> {
    if w.dim == 0 {
        return Ok(RealEnclosure::zero(prec));
    }
    let point = ProjectivePoint::new(pluecker(w)?)?;
    height_projective(&point, variant, prec)
}

/// The orthogonal complement for the Hermitian pairing
/// `sum_k y_k conj(z_k)`, computed over the field. Needs the field to be
/// stable under complex conjugation.
pub fn orthogonal_complement(w: &SubspaceSpec) -> Result<SubspaceSpec> {
    if !w.field.conj_stable() {
        return Err(Error::NotConjugationStable);
    }
    let n = w.ambient;
    if w.dim == 0 {
        return Ok(SubspaceSpec::full(&w.field, n));
    }
    let conditions: Mat<FieldElement> = (0..w.dim)
        .map(|j| (0..n).map(|k| w.basis[k][j].conj()).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    let ker = linalg::kernel(&conditions, &w.field.zero());
    if ker.is_empty() {
        return Ok(SubspaceSpec::zero(&w.field, n));
    }
    SubspaceSpec::from_columns(&w.field, n, &ker)
}

/// Hermitian pairing `sum_k y_k conj(z_k)` over the field.
pub fn hermitian_pairing(y: &[FieldElement], z: &[FieldElement]) -> Result<FieldElement> {
    let field = y.first().ok_or_else(|| Error::Dimension("empty vectors".into()))?.field();
    let mut acc = field.zero();
    for (a, b) in y.iter().zip(z) {
        acc = &acc + &(a * &b.conj()?);
    }
    Ok(acc)
}
