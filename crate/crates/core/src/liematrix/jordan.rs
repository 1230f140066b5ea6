use rug::{Integer, Rational};

use crate::balls::{BallMatrix, ComplexBall, RealEnclosure};
use crate::error::{Error, Result};
use crate::exactfield::linalg::{self, Mat};
use crate::exactfield::{FieldElement, NumberField};

use super::eigen::eigenvalues;
use super::group::{coords_in_basis, GroupData};
use super::matrix::{conjugate, MatrixK, Side};

/// A logarithm of a nonzero field element: `Log(alpha) + 2 pi i branch`,
/// with `Log` the principal branch at the primary embedding.
#[derive(Clone, Debug, PartialEq)]
pub struct LogEigenvalue {
    alpha: FieldElement,
    branch: i64,
}

impl LogEigenvalue {
    pub fn new(alpha: FieldElement, branch: i64) -> Result<Self> {
        if alpha.is_zero() {
            return Err(Error::InvalidArgument("eigenvalue 0 has no logarithm".into()));
        }
        Ok(LogEigenvalue { alpha, branch })
    }

    pub fn alpha(&self) -> &FieldElement {
        &self.alpha
    }

    pub fn branch(&self) -> i64 {
        self.branch
    }

    /// Enclosure of the logarithm.
    pub fn lambda(&self, prec: u32) -> Result<ComplexBall> {
        let work = prec + 16;
        let real_value = match self.alpha.as_rational() {
            Some(q) => Some(RealEnclosure::from_rational(&q, work)),
            None if self.alpha.field().conj_stable() && self.alpha.conj()? == self.alpha => {
                Some(self.alpha.embed_primary(work)?.re().clone())
            }
            None => None,
        };
        let principal = match real_value {
            // on the negative axis the principal argument is exactly pi
            Some(x) if x.is_negative() => ComplexBall::new(x.abs().ln(), RealEnclosure::pi(work)),
            Some(x) => ComplexBall::from_real(x.ln()),
            None => self.alpha.embed_primary(work)?.ln()?,
        };
        let turn = RealEnclosure::pi(work).mul_2si(1);
        let shift = &turn * &RealEnclosure::from_i64(self.branch, work);
        let out = ComplexBall::new(principal.re().clone(), principal.im() + &shift);
        Ok(out.with_prec(prec))
    }
}

/// One Jordan block `lambda I + N` of size `size`.
#[derive(Clone, Debug, PartialEq)]
pub struct JordanBlock {
    pub eig: LogEigenvalue,
    pub size: usize,
}

/// The Jordan matrix `j_u` as an ordered list of blocks.
#[derive(Clone, Debug, PartialEq)]
pub struct JordanData {
    field: NumberField,
    blocks: Vec<JordanBlock>,
}

impl JordanData {
    pub fn new(blocks: Vec<JordanBlock>) -> Result<Self> {
        let field = blocks.first().ok_or_else(|| Error::InvalidArgument("no Jordan blocks".into()))?.eig.alpha.field().clone();
        if blocks.iter().any(|b| b.size == 0) {
            return Err(Error::InvalidArgument("Jordan block of size 0".into()));
        }
        if blocks.iter().any(|b| !b.eig.alpha.field().same(&field)) {
            return Err(Error::MixedFields);
        }
        Ok(JordanData { field, blocks })
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn blocks(&self) -> &[JordanBlock] {
        &self.blocks
    }

    pub fn m(&self) -> usize {
        self.blocks.iter().map(|b| b.size).sum()
    }

    /// The log-eigenvalue on each diagonal position.
    pub fn diagonal(&self) -> Vec<&LogEigenvalue> {
        self.blocks.iter().flat_map(|b| std::iter::repeat_n(&b.eig, b.size)).collect()
    }

    /// Superdiagonal entries of `j_u` (1 inside a block, 0 between blocks).
    pub fn superdiagonal(&self) -> Vec<bool> {
        let mut out = Vec::with_capacity(self.m());
        for b in &self.blocks {
            out.extend(std::iter::repeat_n(true, b.size - 1));
            out.push(false);
        }
        out.pop();
        out
    }

    /// Enclosure of `j_u`.
    pub fn to_ball(&self, prec: u32) -> Result<BallMatrix> {
        let m = self.m();
        let mut j = BallMatrix::zeros(m, m, prec);
        for (i, e) in self.diagonal().into_iter().enumerate() {
            j.set(i, i, e.lambda(prec)?);
        }
        for (i, s) in self.superdiagonal().into_iter().enumerate() {
            if s {
                j.set(i, i + 1, ComplexBall::one(prec));
            }
        }
        Ok(j)
    }

    /// `exp(j_u)` exactly: block-diagonal with blocks `alpha exp(N)`.
    pub fn exp_exact(&self) -> MatrixK {
        let blocks: Vec<MatrixK> = self.blocks.iter().map(|b| exp_block(&b.eig.alpha, b.size)).collect();
        MatrixK::block_diag(&self.field, &blocks).expect("blocks share the field")
    }
}

/// `alpha exp(N)` for the nilpotent Jordan block `N` of size `s`: entry
/// `(r, r + j)` is `alpha / j!`.
fn exp_block(alpha: &FieldElement, s: usize) -> MatrixK {
    let field = alpha.field();
    let mut entries = MatrixK::zero(field, s).entries().clone();
    let mut fact = Integer::from(1);
    for j in 0..s {
        if j > 0 {
            fact *= j as u32;
        }
        let c = alpha.scale(&Rational::from((Integer::from(1), fact.clone())));
        for r in 0..s - j {
            entries[r][r + j] = c.clone();
        }
    }
    MatrixK::new(field, entries).expect("square")
}

/// A point `u = v j_u v^-1` of the Lie algebra with `exp(u)` defined over
/// the field, together with cached enclosures at a working precision.
#[derive(Clone, Debug)]
pub struct KPoint {
    jordan: JordanData,
    v: MatrixK,
    v_inv: MatrixK,
    group: GroupData,
    exp_u: MatrixK,
    prec: u32,
    u_ball: BallMatrix,
    coords_b: Vec<ComplexBall>,
}

impl KPoint {
    pub fn new(jordan: JordanData, v: MatrixK, group: GroupData, prec: u32) -> Result<Self> {
        let field = jordan.field().clone();
        if !v.field().same(&field) || !group.field().same(&field) {
            return Err(Error::MixedFields);
        }
        let m = jordan.m();
        if v.m() != m || group.m() != m {
            return Err(Error::Dimension(format!(
                "Jordan data of size {m}, conjugator of size {}, group in GL_{}",
                v.m(),
                group.m()
            )));
        }
        let v_inv = v.inverse()?;
        let exp_u = v.mul(&jordan.exp_exact())?.mul(&v_inv)?;
        let mut kp = KPoint {
            jordan,
            v,
            v_inv,
            group,
            exp_u,
            prec,
            u_ball: BallMatrix::zeros(m, m, prec),
            coords_b: Vec::new(),
        };
        kp.refresh(prec)?;
        Ok(kp)
    }

    fn refresh(&mut self, prec: u32) -> Result<()> {
        let work = prec + 16;
        let j = self.jordan.to_ball(work)?;
        let u = self.v.to_ball(work)?.mul(&j).mul(&self.v_inv.to_ball(work)?);
        let u = BallMatrix::from_vec(u.rows(), u.cols(), u.entries().iter().map(|z| z.with_prec(prec)).collect());
        self.coords_b = coords_in_basis(&u, &self.group)?;
        self.u_ball = u;
        self.prec = prec;
        Ok(())
    }

    /// The same point with its enclosures recomputed at `prec` bits.
    pub fn at_precision(&self, prec: u32) -> Result<Self> {
        let mut kp = self.clone();
        kp.refresh(prec)?;
        Ok(kp)
    }

    pub fn jordan(&self) -> &JordanData {
        &self.jordan
    }

    pub fn conjugator(&self) -> &MatrixK {
        &self.v
    }

    pub fn conjugator_inverse(&self) -> &MatrixK {
        &self.v_inv
    }

    pub fn group(&self) -> &GroupData {
        &self.group
    }

    pub fn field(&self) -> &NumberField {
        self.jordan.field()
    }

    pub fn m(&self) -> usize {
        self.jordan.m()
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    /// `exp(u)`, exactly.
    pub fn exp_u(&self) -> &MatrixK {
        &self.exp_u
    }

    pub fn u_ball(&self) -> &BallMatrix {
        &self.u_ball
    }

    /// Coordinates of `u` in the group's Lie algebra basis.
    pub fn coords_b(&self) -> &[ComplexBall] {
        &self.coords_b
    }
}

/// `exp(u)` computed exactly in the field.
pub fn exp_exact(kp: &KPoint) -> MatrixK {
    kp.exp_u.clone()
}

/// A Jordan basis of `g` over the field.
///
/// Returns `P` and the blocks `(alpha, size)` with `P^-1 g P` the Jordan
/// matrix (eigenvalue on the diagonal, ones on the superdiagonal inside
/// blocks). Blocks follow the order of `eigs`, largest first for each
/// eigenvalue.
pub fn jordan_basis(g: &MatrixK, eigs: &[(FieldElement, usize)]) -> Result<(MatrixK, Vec<(FieldElement, usize)>)> {
    let field = g.field();
    let m = g.m();
    let zero = field.zero();
    let mut columns: Vec<Vec<FieldElement>> = Vec::with_capacity(m);
    let mut blocks = Vec::new();
    for (alpha, mult) in eigs {
        let a = g.sub(&MatrixK::identity(field, m).scale(alpha))?;
        // generalized eigenspaces ker(A^j) until the dimension reaches the
        // algebraic multiplicity
        let mut kers: Vec<Vec<Vec<FieldElement>>> = Vec::new();
        let mut power = a.clone();
        loop {
            let k = linalg::kernel(power.entries(), &zero);
            let done = k.len() >= *mult;
            let stalled = kers.last().is_some_and(|prev: &Vec<Vec<FieldElement>>| prev.len() == k.len());
            kers.push(k);
            if done {
                break;
            }
            if stalled {
                return Err(Error::NotSplit { factor: format!("generalized eigenspace of {alpha} is too small") });
            }
            power = power.mul(&a)?;
        }
        let top = kers.len();
        let mut carried: Vec<Vec<FieldElement>> = Vec::new();
        let mut chains: Vec<Vec<Vec<FieldElement>>> = Vec::new();
        for level in (1..=top).rev() {
            let mut span: Vec<Vec<FieldElement>> = if level > 1 { kers[level - 2].clone() } else { Vec::new() };
            span.extend(carried.iter().cloned());
            let mut rank = if span.is_empty() { 0 } else { linalg::rank(&span) };
            let mut heads = Vec::new();
            for b in &kers[level - 1] {
                span.push(b.clone());
                let r = linalg::rank(&span);
                if r > rank {
                    rank = r;
                    heads.push(b.clone());
                } else {
                    span.pop();
                }
            }
            for h in &heads {
                let mut chain = vec![h.clone()];
                for _ in 1..level {
                    let next = linalg::mat_vec(a.entries(), chain.last().expect("nonempty chain"));
                    chain.push(next);
                }
                chain.reverse();
                chains.push(chain);
            }
            carried = carried.iter().chain(heads.iter()).map(|x| linalg::mat_vec(a.entries(), x)).collect();
        }
        let total: usize = chains.iter().map(Vec::len).sum();
        if total != *mult {
            return Err(Error::NotSplit { factor: format!("Jordan chains for {alpha} cover {total} of {mult} dimensions") });
        }
        for chain in chains {
            blocks.push((alpha.clone(), chain.len()));
            columns.extend(chain);
        }
    }
    if columns.len() != m {
        return Err(Error::NotSplit { factor: format!("eigenvectors span {} of {m} dimensions", columns.len()) });
    }
    let p = MatrixK::new(field, linalg::transpose(&columns))?;
    Ok((p, blocks))
}

fn jordan_matrix(field: &NumberField, blocks: &[(FieldElement, usize)]) -> Result<MatrixK> {
    let m: usize = blocks.iter().map(|b| b.1).sum();
    let mut e: Mat<FieldElement> = MatrixK::zero(field, m).entries().clone();
    let mut off = 0;
    for (alpha, s) in blocks {
        for i in 0..*s {
            e[off + i][off + i] = alpha.clone();
            if i + 1 < *s {
                e[off + i][off + i + 1] = field.one();
            }
        }
        off += s;
    }
    MatrixK::new(field, e)
}

/// Reads the blocks of a matrix of the form `diag(alpha_k exp(N_k))`.
fn parse_exp_blocks(t: &MatrixK) -> Option<Vec<(FieldElement, usize)>> {
    let m = t.m();
    let mut blocks = Vec::new();
    let mut i = 0;
    while i < m {
        let alpha = t.get(i, i).clone();
        let mut s = 1;
        while i + s < m && !t.get(i + s - 1, i + s).is_zero() {
            s += 1;
        }
        blocks.push((alpha, s));
        i += s;
    }
    let rebuilt: Vec<MatrixK> = blocks.iter().map(|(a, s)| exp_block(a, *s)).collect();
    (MatrixK::block_diag(t.field(), &rebuilt).ok()? == *t).then_some(blocks)
}

/// Factors `g = exp(u)` with `u = v j_u v^-1`.
///
/// `branches` picks the logarithm of each Jordan block's eigenvalue (empty
/// means principal logarithms throughout). With a `conjugator`, `v^-1 g v`
/// must already have the block form `diag(alpha exp(N))`; otherwise a
/// Jordan basis is computed from the eigenvalues (the hints, then a search).
pub fn kpoint_from_matrix(
    g: &MatrixK,
    branches: &[i64],
    group: &GroupData,
    eigen_hints: &[FieldElement],
    conjugator: Option<&MatrixK>,
    prec: u32,
) -> Result<KPoint> {
    let field = g.field();
    if g.det().is_zero() {
        return Err(Error::Singular);
    }
    let (v, blocks) = match conjugator {
        Some(v) => {
            if !v.field().same(field) {
                return Err(Error::MixedFields);
            }
            let t = conjugate(v, g, Side::Inner)?;
            let blocks = parse_exp_blocks(&t).ok_or_else(|| {
                Error::HintRejected("the conjugator does not bring the matrix to the block form alpha exp(N)".into())
            })?;
            (v.clone(), blocks)
        }
        None => {
            let eigs = eigenvalues(g, eigen_hints)?;
            let (p, blocks) = jordan_basis(g, &eigs)?;
            // move each standard Jordan block to the block alpha exp(N)
            let mut s_inv = Vec::with_capacity(blocks.len());
            for (alpha, s) in &blocks {
                let target = exp_block(alpha, *s);
                let (pb, _) = jordan_basis(&target, &[(alpha.clone(), *s)])?;
                s_inv.push(pb.inverse()?);
            }
            let v = p.mul(&MatrixK::block_diag(field, &s_inv)?)?;
            let expected = MatrixK::block_diag(field, &blocks.iter().map(|(a, s)| exp_block(a, *s)).collect::<Vec<_>>())?;
            debug_assert_eq!(conjugate(&v, g, Side::Inner)?, expected);
            debug_assert_eq!(conjugate(&p, g, Side::Inner)?, jordan_matrix(field, &blocks)?);
            (v, blocks)
        }
    };
    if !branches.is_empty() && branches.len() != blocks.len() {
        return Err(Error::InvalidArgument(format!("{} branches given for {} Jordan blocks", branches.len(), blocks.len())));
    }
    let jblocks = blocks
        .into_iter()
        .enumerate()
        .map(|(i, (alpha, size))| Ok(JordanBlock { eig: LogEigenvalue::new(alpha, branches.get(i).copied().unwrap_or(0))?, size }))
        .collect::<Result<Vec<_>>>()?;
    KPoint::new(JordanData::new(jblocks)?, v, group.clone(), prec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::balls::matrix_exp_numeric;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    fn rotation_conjugator(k: &NumberField, kk: i64) -> MatrixK {
        MatrixK::new(
            k,
            vec![
                vec![k.from_rational(&q(kk + 1, kk)), k.from_rational(&q(1, kk))],
                vec![k.from_rational(&q(-1, kk)), k.from_rational(&q(kk - 1, kk))],
            ],
        )
        .unwrap()
    }

    fn block(k: &NumberField, alpha: i64, branch: i64, size: usize) -> JordanBlock {
        JordanBlock { eig: LogEigenvalue::new(k.int(alpha), branch).unwrap(), size }
    }

    #[test]
    fn logarithms_of_rationals() {
        let k = NumberField::rationals();
        let p = 128;
        let l = LogEigenvalue::new(k.int(2), 0).unwrap().lambda(p).unwrap();
        assert!(l.re().overlaps(&RealEnclosure::ln2(p)) && l.im().contains_zero());
        let l = LogEigenvalue::new(k.int(-1), 0).unwrap().lambda(p).unwrap();
        assert!(l.im().overlaps(&RealEnclosure::pi(p)));
        let l = LogEigenvalue::new(k.int(1), -2).unwrap().lambda(p).unwrap();
        assert!(l.im().overlaps(&-&RealEnclosure::pi(p).mul_2si(2)));
        assert!(LogEigenvalue::new(k.zero(), 0).is_err());
    }

    #[test]
    fn exponentials_of_single_blocks() {
        let k = NumberField::rationals();
        let kp = KPoint::new(JordanData::new(vec![block(&k, 2, 0, 1)]).unwrap(), MatrixK::identity(&k, 1), GroupData::general_linear(&k, 1), 64).unwrap();
        assert_eq!(exp_exact(&kp), MatrixK::from_i64(&k, &[&[2]]).unwrap());
        let kp = KPoint::new(JordanData::new(vec![block(&k, 1, 0, 2)]).unwrap(), MatrixK::identity(&k, 2), GroupData::general_linear(&k, 2), 64).unwrap();
        assert_eq!(exp_exact(&kp), MatrixK::from_i64(&k, &[&[1, 1], &[0, 1]]).unwrap());
        let t = exp_block(&k.int(3), 3);
        assert_eq!(*t.get(0, 2), k.from_rational(&q(3, 2)));
    }

    #[test]
    fn full_turn_exponentiates_to_identity() {
        let k = NumberField::rationals();
        for kk in 2..=6 {
            let j = JordanData::new(vec![block(&k, 1, 1, 1), block(&k, 1, 0, 1)]).unwrap();
            let kp = KPoint::new(j, rotation_conjugator(&k, kk), GroupData::general_linear(&k, 2), 128).unwrap();
            assert!(exp_exact(&kp).is_identity());
            let p = 128;
            let two_pi = RealEnclosure::pi(p).mul_2si(1);
            let kf = RealEnclosure::from_i64(kk, p);
            let want = &two_pi / &kf.sqr();
            let u11 = kp.u_ball().get(1, 1);
            assert!(u11.re().contains_zero() && u11.im().overlaps(&want));
        }
    }

    #[test]
    fn factor_identity_with_given_conjugator() {
        let k = NumberField::rationals();
        let v = rotation_conjugator(&k, 4);
        let g = MatrixK::identity(&k, 2);
        let kp = kpoint_from_matrix(&g, &[1, 0], &GroupData::general_linear(&k, 2), &[], Some(&v), 128).unwrap();
        let direct = KPoint::new(
            JordanData::new(vec![block(&k, 1, 1, 1), block(&k, 1, 0, 1)]).unwrap(),
            v,
            GroupData::general_linear(&k, 2),
            128,
        )
        .unwrap();
        assert!(kp.u_ball().sub(direct.u_ball()).contains_zero());
    }

    #[test]
    fn factor_diagonal_matrix() {
        let k = NumberField::rationals();
        let g = MatrixK::from_i64(&k, &[&[2, 0], &[0, 3]]).unwrap();
        let kp = kpoint_from_matrix(&g, &[0, 0], &GroupData::general_linear(&k, 2), &[k.int(2), k.int(3)], None, 128).unwrap();
        assert!(kp.conjugator().is_identity());
        let p = 128;
        assert!(kp.u_ball().get(0, 0).re().overlaps(&RealEnclosure::ln2(p)));
        assert!(kp.u_ball().get(1, 1).re().overlaps(&RealEnclosure::from_i64(3, p).ln()));
        assert_eq!(exp_exact(&kp), g);
    }

    #[test]
    fn factor_jordan_block() {
        let k = NumberField::rationals();
        let g = MatrixK::from_i64(&k, &[&[2, 1], &[0, 2]]).unwrap();
        let eigs = eigenvalues(&g, &[]).unwrap();
        let (p, blocks) = jordan_basis(&g, &eigs).unwrap();
        assert_eq!(blocks, vec![(k.int(2), 2)]);
        assert_eq!(conjugate(&p, &g, Side::Inner).unwrap(), MatrixK::from_i64(&k, &[&[2, 1], &[0, 2]]).unwrap());
        let kp = kpoint_from_matrix(&g, &[], &GroupData::general_linear(&k, 2), &[], None, 128).unwrap();
        assert_eq!(exp_exact(&kp), g);
        assert_eq!(kp.jordan().blocks().len(), 1);
    }

    #[test]
    fn factor_mixed_three_by_three() {
        let k = NumberField::gaussian();
        let i = k.generator();
        // eigenvalues i (block of size 2) and 3
        let t = MatrixK::new(
            &k,
            vec![vec![i.clone(), k.one(), k.zero()], vec![k.zero(), i.clone(), k.zero()], vec![k.zero(), k.zero(), k.int(3)]],
        )
        .unwrap();
        let l = MatrixK::new(
            &k,
            vec![vec![k.one(), k.int(2), i.clone()], vec![k.zero(), k.one(), k.int(-1)], vec![k.int(1), k.zero(), k.int(1)]],
        )
        .unwrap();
        let g = conjugate(&l, &t, Side::Outer).unwrap();
        let kp = kpoint_from_matrix(&g, &[], &GroupData::general_linear(&k, 3), &[], None, 128).unwrap();
        assert_eq!(exp_exact(&kp), g);
        let numeric = matrix_exp_numeric(kp.u_ball(), 128);
        assert!(numeric.sub(&g.to_ball(128).unwrap()).contains_zero());
    }

    #[test]
    fn rejects_a_wrong_conjugator() {
        let k = NumberField::rationals();
        let g = MatrixK::from_i64(&k, &[&[2, 1], &[1, 2]]).unwrap();
        let res = kpoint_from_matrix(&g, &[], &GroupData::general_linear(&k, 2), &[], Some(&MatrixK::identity(&k, 2)), 64);
        assert!(matches!(res, Err(Error::HintRejected(_))));
    }

    #[test]
    fn branch_count_must_match() {
        let k = NumberField::rationals();
        let g = MatrixK::from_i64(&k, &[&[2, 0], &[0, 3]]).unwrap();
        let res = kpoint_from_matrix(&g, &[0, 0, 0], &GroupData::general_linear(&k, 2), &[], None, 64);
        assert!(matches!(res, Err(Error::InvalidArgument(_))));
    }
}
