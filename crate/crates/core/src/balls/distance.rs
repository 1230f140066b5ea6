use super::{BallMatrix, ComplexBall, RealEnclosure};
use crate::error::{Error, Result};
use crate::exactfield::linalg::{self, Mat};
use crate::exactfield::FieldElement;
use crate::heights::{orthogonal_complement, SubspaceSpec};

fn vector_norm(u: &[ComplexBall], prec: u32) -> RealEnclosure {
    let mut acc = RealEnclosure::zero(prec);
    for z in u {
        acc = &acc + &z.abs_sq();
    }
    acc.sqrt()
}

fn embed_matrix(a: &Mat<FieldElement>, prec: u32) -> Result<BallMatrix> {
    let rows = a
        .iter()
        .map(|r| r.iter().map(|x| x.embed_primary(prec)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(BallMatrix::from_rows(rows))
}

fn check_lengths(u: &[ComplexBall], w: &SubspaceSpec) -> Result<()> {
    if u.len() != w.ambient() {
        return Err(Error::Dimension(format!("vector of length {} against a subspace of K^{}", u.len(), w.ambient())));
    }
    Ok(())
}

/// `|<u, y>| / |y|` with the pairing `sum u_k conj(y_k)`.
pub fn hyperplane_distance(u: &[ComplexBall], normal: &[FieldElement], prec: u32) -> Result<RealEnclosure> {
    if u.len() != normal.len() {
        return Err(Error::Dimension("normal vector and point have different lengths".into()));
    }
    let y: Vec<ComplexBall> = normal.iter().map(|c| c.embed_primary(prec)).collect::<Result<_>>()?;
    let mut dot = ComplexBall::zero(prec);
    for (a, b) in u.iter().zip(&y) {
        dot = &dot + &(a * &b.conj());
    }
    let norm = vector_norm(&y, prec);
    if norm.contains_zero() {
        return Err(Error::ZeroPoint);
    }
    Ok(&dot.abs() / &norm)
}

/// Distance from `u` to `W` in the Euclidean norm of the coordinates.
///
/// Over fields stable under complex conjugation the orthogonal complement
/// `C` of `W` and the Gram matrix `C* C` are computed exactly, and the
/// distance is `sqrt(y* (C* C)^-1 y)` with `y = C* u`. Otherwise the
/// projection onto `W` is solved in ball arithmetic.
pub fn distance_to_subspace(u: &[ComplexBall], w: &SubspaceSpec, prec: u32) -> Result<RealEnclosure> {
    check_lengths(u, w)?;
    let n = w.ambient();
    let work = prec + 16;
    if w.dim() == 0 {
        return Ok(vector_norm(u, work).with_prec(prec));
    }
    if w.dim() == n {
        return Ok(RealEnclosure::zero(prec));
    }
    if !w.field().conj_stable() {
        return distance_by_projection(u, w, prec);
    }
    let comp = orthogonal_complement(w)?;
    let cols = comp.columns();
    let conj_cols: Vec<Vec<FieldElement>> =
        cols.iter().map(|c| c.iter().map(FieldElement::conj).collect::<Result<Vec<_>>>()).collect::<Result<_>>()?;
    // Gram matrix G_ij = <c_j, c_i> = sum_k conj(c_ki) c_kj
    let k = cols.len();
    let gram: Mat<FieldElement> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| {
                    let mut acc = w.field().zero();
                    for t in 0..n {
                        acc = &acc + &(&conj_cols[i][t] * &cols[j][t]);
                    }
                    acc
                })
                .collect()
        })
        .collect();
    let gram_inv = linalg::inverse(&gram).ok_or(Error::Singular)?;
    let gi = embed_matrix(&gram_inv, work)?;
    let y: Vec<ComplexBall> = conj_cols
        .iter()
        .map(|c| {
            let mut acc = ComplexBall::zero(work);
            for (a, b) in c.iter().zip(u) {
                acc = &acc + &(&a.embed_primary(work)? * b);
            }
            Ok(acc)
        })
        .collect::<Result<_>>()?;
    let gy = gi.mul(&BallMatrix::column(y.clone()));
    let mut q = ComplexBall::zero(work);
    for (a, b) in y.iter().zip(gy.entries()) {
        q = &q + &(&a.conj() * b);
    }
    // the quadratic form is real and nonnegative
    let zero = RealEnclosure::zero(work);
    let re = q.re().max(&zero);
    Ok(re.sqrt().with_prec(prec))
}

/// Distance by ball least squares: solves `(B* B) c = B* u` and measures
/// the residual `u - B c`.
pub fn distance_by_projection(u: &[ComplexBall], w: &SubspaceSpec, prec: u32) -> Result<RealEnclosure> {
    check_lengths(u, w)?;
    let work = prec + 16;
    if w.dim() == 0 {
        return Ok(vector_norm(u, work).with_prec(prec));
    }
    let b = embed_matrix(w.basis(), work)?;
    let bh = b.conj_transpose();
    let ub = BallMatrix::column(u.iter().map(|z| z.with_prec(work)).collect());
    let c = bh.mul(&b).solve(&bh.mul(&ub))?;
    let r = ub.sub(&b.mul(&c));
    Ok(vector_norm(r.entries(), work).with_prec(prec))
}
