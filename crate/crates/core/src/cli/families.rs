//! Closed-form instance families over `Q` in `GL_2` with the elementary
//! basis, where the distance and the heights are known exactly.

use std::fmt;
use std::str::FromStr;

use rug::Rational;

use super::instance::{FieldSpec, Instance, OptionsSpec};
use crate::error::{Error, Result};
use crate::exactfield::NumberField;
use crate::heights::SubspaceSpec;
use crate::liematrix::{GroupData, JordanBlock, JordanData, KPoint, LogEigenvalue, MatrixK};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// `u = diag(0, log 2)` against `W_k = {y_1 + y_4/k = 0}`;
    /// `d(u, W_k) = log 2 / sqrt(k^2 + 1)` and `h(W_k) = log k`.
    Remark10,
    /// `u_k = v_k diag(2 pi i, 0) v_k^-1` against `W = {y_4 = 0}`;
    /// `exp(u_k) = I` and `d(u_k, W) = 2 pi / k^2`.
    Remark11,
}

impl Family {
    pub fn min_k(self) -> u64 {
        match self {
            Family::Remark10 => 1,
            Family::Remark11 => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::Remark10 => "remark10",
            Family::Remark11 => "remark11",
        }
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "remark10" => Ok(Family::Remark10),
            "remark11" => Ok(Family::Remark11),
            other => Err(Error::Parse(format!("unknown family {other:?} (expected remark10 or remark11)"))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn block(field: &NumberField, alpha: i64, branch: i64) -> Result<JordanBlock> {
    Ok(JordanBlock { eig: LogEigenvalue::new(field.int(alpha), branch)?, size: 1 })
}

/// Builds the family member with parameter `k` at the given precision.
pub fn family_generate(family: Family, k: u64, precision: u32) -> Result<Instance> {
    if k < family.min_k() {
        return Err(Error::InvalidArgument(format!("{family} needs k >= {}, got {k}", family.min_k())));
    }
    let q = NumberField::rationals();
    let group = GroupData::general_linear(&q, 2);
    let kq = Rational::from(k);
    let e = |i: usize| -> Vec<_> { (0..4).map(|j| q.int((i == j) as i64)).collect() };
    let (kpoint, subspace) = match family {
        Family::Remark10 => {
            let jordan = JordanData::new(vec![block(&q, 1, 0)?, block(&q, 2, 0)?])?;
            let kp = KPoint::new(jordan, MatrixK::identity(&q, 2), group.clone(), precision)?;
            let tilted = vec![q.one(), q.zero(), q.zero(), -&q.from_rational(&kq)];
            let w = SubspaceSpec::from_columns(&q, 4, &[e(1), e(2), tilted])?;
            (kp, w)
        }
        Family::Remark11 => {
            let jordan = JordanData::new(vec![block(&q, 1, 1)?, block(&q, 1, 0)?])?;
            let inv = q.from_rational(&Rational::from(kq.recip_ref()));
            let one = q.one();
            let v = MatrixK::new(&q, vec![vec![&one + &inv, inv.clone()], vec![-&inv, &one - &inv]])?;
            let kp = KPoint::new(jordan, v, group.clone(), precision)?;
            let w = SubspaceSpec::from_columns(&q, 4, &[e(0), e(1), e(2)])?;
            (kp, w)
        }
    };
    Ok(Instance {
        id: format!("{family}-k{k}"),
        field: q,
        field_spec: FieldSpec::rationals(),
        group,
        kpoint,
        subspace,
        options: OptionsSpec { precision, ..OptionsSpec::default() },
    })
}

/// Parses `7`, `1..100` (inclusive) or `1,5,9`.
pub fn parse_k_range(s: &str) -> Result<Vec<u64>> {
    let bad = || Error::Parse(format!("bad k specification {s:?} (use N, A..B or a comma list)"));
    let t = s.trim();
    if let Some((a, b)) = t.split_once("..") {
        let a: u64 = a.trim().parse().map_err(|_| bad())?;
        let b: u64 = b.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
        if a > b {
            return Err(bad());
        }
        return Ok((a..=b).collect());
    }
    t.split(',').map(|x| x.trim().parse().map_err(|_| bad())).collect()
}
