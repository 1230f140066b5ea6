use super::projective::ProjectivePoint;
use super::subspace::combinations;
use crate::error::{Error, Result};
use crate::exactfield::linalg::{self, Mat};
use crate::exactfield::FieldElement;

/// The `d x d` minors of `Z` (an `m^2 x n` matrix): entry `[i][i']` takes
/// rows `i` (a `d`-subset of the `m^2` rows) and columns `i'` (a `d`-subset
/// of the `n` columns), both in lexicographic order.
pub fn gamma_minors(z: &Mat<FieldElement>, d: usize) -> Result<Mat<FieldElement>> {
    let (rows, cols) = linalg::shape(z);
    if d == 0 || d > cols {
        return Err(Error::Dimension(format!("minor size {d} out of range 1..={cols}")));
    }
    let r = linalg::rank(z);
    if r != cols {
        return Err(Error::RankDeficient { expected: cols, found: r });
    }
    let col_sets = combinations(cols, d);
    Ok(combinations(rows, d)
        .into_iter()
        .map(|rs| {
            col_sets
                .iter()
                .map(|cs| {
                    let minor: Mat<FieldElement> =
                        rs.iter().map(|&i| cs.iter().map(|&j| z[i][j].clone()).collect()).collect();
                    linalg::det(&minor)
                })
                .collect()
        })
        .collect())
}

/// All minors of [`gamma_minors`] flattened row by row into one projective
/// point.
pub fn gamma_matrix(z: &Mat<FieldElement>, d: usize) -> Result<ProjectivePoint> {
    ProjectivePoint::new(gamma_minors(z, d)?.into_iter().flatten().collect())
}
