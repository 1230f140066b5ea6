use std::fmt;
use std::str::FromStr;

use rug::Float;
use serde_json::{json, Value};

use super::constants::{c12, c4, c5, Constant};
use super::json::{complex_json, element_json, interval_json, lower_string, matrix_json};
use super::linear_form::{linear_form_rhs, LinearFormInputs, LinearFormBound};
use crate::balls::{distance_to_subspace, ComplexBall, RealEnclosure};
use crate::error::{Error, Result};
use crate::exactfield::FieldElement;
use crate::heights::{orthogonal_complement, subspace_height, HeightVariant, SubspaceSpec};
use crate::liematrix::{b2_witness, conjugate, mat_height, KPoint, MatrixK, Side};

/// Which bound to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundMode {
    /// Hyperplanes of `gl_m` in the elementary basis.
    Hyperplane,
    /// Arbitrary subspaces of the Lie algebra of a group.
    Theorem,
}

impl FromStr for BoundMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "hyperplane" => Ok(BoundMode::Hyperplane),
            "theorem" => Ok(BoundMode::Theorem),
            other => Err(Error::Parse(format!("unknown mode {other:?} (expected hyperplane or theorem)"))),
        }
    }
}

impl fmt::Display for BoundMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundMode::Hyperplane => "hyperplane",
            BoundMode::Theorem => "theorem",
        })
    }
}

/// The linear form in logarithms attached to a hyperplane of `gl_m`.
///
/// With `y` the normal of `W` (first nonzero coordinate 1), `w` the
/// conjugate transpose of `y` read as a matrix and `S = v^-1 w v`:
/// `beta_i = S_ii`, `beta_0 = sum_i j_(i,i+1) S_(i+1,i)`, and
/// `|beta_0 + sum beta_i lambda_i| = |Tr(j_u S)| = |w| d(u, W)`.
#[derive(Clone, Debug)]
pub struct Pairing {
    pub normal: Vec<FieldElement>,
    pub alphas: Vec<FieldElement>,
    pub lambdas: Vec<ComplexBall>,
    /// `beta_0, ..., beta_m`.
    pub betas: Vec<FieldElement>,
    pub linear_form: ComplexBall,
    /// `Tr(j_u S)`, the same number computed as a matrix trace.
    pub trace_form: ComplexBall,
    pub w_norm: RealEnclosure,
    pub w_norm_times_distance: RealEnclosure,
    /// Lower bound for `log |linear_form|` from the linear-forms estimate.
    pub linear_form_bound: Option<LinearFormBound>,
}

/// A certified lower bound for `log d(u, W)` with every ingredient.
#[derive(Clone, Debug)]
pub struct BoundReport {
    pub mode: BoundMode,
    pub m: usize,
    pub n: usize,
    pub d: usize,
    pub degree: usize,
    pub precision: u32,
    /// Enclosure of the assembled right-hand side; the certified bound is
    /// its lower end.
    pub log_lower: RealEnclosure,
    pub constant: Constant,
    pub b2_upper: RealEnclosure,
    pub witness: MatrixK,
    pub height_exp_u: RealEnclosure,
    pub norm_u: RealEnclosure,
    /// `b_2 max{e, h(exp u), |u|}` (upper end).
    pub b_upper: RealEnclosure,
    pub height_w: RealEnclosure,
    pub distance: RealEnclosure,
    pub log_distance: RealEnclosure,
    pub pairing: Option<Pairing>,
    pub c12: Option<RealEnclosure>,
}

impl BoundReport {
    /// The certified bound `L`: `log d(u, W) >= L`.
    pub fn certified(&self) -> &Float {
        self.log_lower.lower()
    }

    /// Whether the bound holds against the computed distance.
    pub fn holds(&self) -> bool {
        self.certified() <= self.log_distance.lower()
    }

    pub fn to_json(&self) -> Value {
        let c = &self.constant;
        let mut out = json!({
            "mode": self.mode.to_string(),
            "m": self.m,
            "n": self.n,
            "d": self.d,
            "degree": self.degree,
            "precision": self.precision,
            "certified_log_lower": lower_string(&self.log_lower),
            "log_lower": interval_json(&self.log_lower),
            "constant": {
                "name": c.name,
                "two_exponent": c.two_exponent,
                "m_exponent": c.m_exponent,
                "degree_exponent": c.degree_exponent,
                "integer_factor": c.integer_factor.to_string(),
                "exact": c.exact().map(|x| x.to_string()),
                "real_factors": c.real_factors.iter().map(|(k, v)| json!({"name": k, "value": interval_json(v)})).collect::<Vec<_>>(),
                "value": interval_json(&c.value),
            },
            "b2_upper": interval_json(&self.b2_upper),
            "witness": matrix_json(&self.witness),
            "height_exp_u": interval_json(&self.height_exp_u),
            "norm_u": interval_json(&self.norm_u),
            "b_upper": interval_json(&self.b_upper),
            "height_w": interval_json(&self.height_w),
            "distance": interval_json(&self.distance),
            "log_distance": interval_json(&self.log_distance),
        });
        if let Some(c12) = &self.c12 {
            out["c12"] = interval_json(c12);
        }
        if let Some(p) = &self.pairing {
            let mut pj = json!({
                "normal": p.normal.iter().map(element_json).collect::<Vec<_>>(),
                "alphas": p.alphas.iter().map(element_json).collect::<Vec<_>>(),
                "lambdas": p.lambdas.iter().map(complex_json).collect::<Vec<_>>(),
                "betas": p.betas.iter().map(element_json).collect::<Vec<_>>(),
                "linear_form": complex_json(&p.linear_form),
                "trace_form": complex_json(&p.trace_form),
                "w_norm": interval_json(&p.w_norm),
                "w_norm_times_distance": interval_json(&p.w_norm_times_distance),
            });
            if let Some(r) = &p.linear_form_bound {
                pj["linear_form_log_lower"] = json!({
                    "a": r.a.iter().map(interval_json).collect::<Vec<_>>(),
                    "b": interval_json(&r.b),
                    "c": interval_json(&r.c),
                    "rhs": interval_json(&r.rhs),
                });
            }
            out["pairing"] = pj;
        }
        out
    }
}

/// `-constant * log(b) * b^(m+1) * max{1, h_W}` from upper ends.
pub fn assemble_bound(constant: &RealEnclosure, b: &RealEnclosure, h_w: &RealEnclosure, m: usize) -> RealEnclosure {
    let p = constant.prec();
    let b = b.upper_point();
    let hw = RealEnclosure::one(p).max(h_w).upper_point();
    let t = &(&constant.upper_point() * &b.ln()) * &b.pow_u(m as u32 + 1);
    -&(&t * &hw)
}

struct Common {
    kp: KPoint,
    b2: RealEnclosure,
    witness: MatrixK,
    h_exp: RealEnclosure,
    norm_u: RealEnclosure,
    b: RealEnclosure,
    h_w: RealEnclosure,
    distance: RealEnclosure,
    log_distance: RealEnclosure,
}

fn common(kp: &KPoint, w: &SubspaceSpec, search_budget: u32, prec: u32) -> Result<Common> {
    if !w.field().same(kp.field()) {
        return Err(Error::MixedFields);
    }
    if w.ambient() != kp.group().n() {
        return Err(Error::Dimension(format!("subspace of K^{} in a Lie algebra of dimension {}", w.ambient(), kp.group().n())));
    }
    let kp = if kp.prec() == prec { kp.clone() } else { kp.at_precision(prec)? };
    let distance = distance_to_subspace(kp.coords_b(), w, prec)?;
    if !distance.is_positive() {
        return Err(Error::Precision { bits: prec, what: "cannot separate u from W; the distance enclosure contains 0".into() });
    }
    let log_distance = distance.ln();
    let (witness, b2) = b2_witness(&kp, search_budget, prec)?;
    let b2 = b2.upper_point();
    let h_exp = mat_height(kp.exp_u(), prec)?;
    let mut norm_sq = RealEnclosure::zero(prec);
    for z in kp.coords_b() {
        norm_sq = &norm_sq + &z.abs_sq();
    }
    let norm_u = norm_sq.sqrt();
    let inner = RealEnclosure::e(prec).max(&h_exp).max(&norm_u).upper_point();
    let b = (&b2 * &inner).upper_point();
    let h_w = subspace_height(w, HeightVariant::H, prec)?.upper_point();
    Ok(Common { kp, b2, witness, h_exp, norm_u, b, h_w, distance, log_distance })
}

/// The hyperplane pairing data for `u` and `W` in `gl_m`.
pub fn pairing(kp: &KPoint, w: &SubspaceSpec, distance: &RealEnclosure, prec: u32) -> Result<Pairing> {
    let m = kp.m();
    let field = kp.field();
    if !kp.group().is_general_linear() {
        return Err(Error::Hypothesis("the pairing needs the group GL_m in its elementary basis".into()));
    }
    if w.ambient() != m * m || w.dim() + 1 != m * m {
        return Err(Error::Dimension(format!("W has dimension {} in K^{}; a hyperplane of K^{} is needed", w.dim(), w.ambient(), m * m)));
    }
    let comp = orthogonal_complement(w)?;
    let mut y = comp.column(0);
    let first = y.iter().find(|c| !c.is_zero()).ok_or(Error::ZeroPoint)?.inverse()?;
    y = y.iter().map(|c| c * &first).collect();
    let wmat = MatrixK::from_flat(field, m, &y)?.conj_transpose()?;
    let s = conjugate(kp.conjugator(), &wmat, Side::Inner)?;
    let jd = kp.jordan();
    let diag = jd.diagonal();
    let superdiag = jd.superdiagonal();
    let mut beta0 = field.zero();
    for (i, on) in superdiag.iter().enumerate() {
        if *on {
            beta0 = &beta0 + s.get(i + 1, i);
        }
    }
    let mut betas = vec![beta0];
    betas.extend((0..m).map(|i| s.get(i, i).clone()));
    let work = prec + 16;
    let lambdas: Vec<ComplexBall> = diag.iter().map(|e| e.lambda(work)).collect::<Result<_>>()?;
    let alphas: Vec<FieldElement> = diag.iter().map(|e| e.alpha().clone()).collect();
    let mut form = betas[0].embed_primary(work)?;
    for (b, l) in betas[1..].iter().zip(&lambdas) {
        form = &form + &(&b.embed_primary(work)? * l);
    }
    let trace_form = jd.to_ball(work)?.mul(&s.to_ball(work)?).trace();
    let mut w_sq = RealEnclosure::zero(work);
    for c in &y {
        w_sq = &w_sq + &c.embed_primary(work)?.abs_sq();
    }
    let w_norm = w_sq.sqrt();
    let wd = &w_norm * distance;
    let linear_form_bound = linear_form_rhs(&LinearFormInputs { field: field.clone(), lambdas: lambdas.clone(), alphas: alphas.clone(), betas: betas.clone() }, prec).ok();
    Ok(Pairing {
        normal: y,
        alphas,
        lambdas: lambdas.iter().map(|l| l.with_prec(prec)).collect(),
        betas,
        linear_form: form.with_prec(prec),
        trace_form: trace_form.with_prec(prec),
        w_norm: w_norm.with_prec(prec),
        w_norm_times_distance: wd.with_prec(prec),
        linear_form_bound,
    })
}

/// Lower bound for `log d(u, W)` when `W` is a hyperplane of `gl_m` and
/// the group is `GL_m`.
pub fn hyperplane_bound(kp: &KPoint, w: &SubspaceSpec, search_budget: u32, prec: u32) -> Result<BoundReport> {
    let m = kp.m();
    if !kp.group().is_general_linear() {
        return Err(Error::Hypothesis("hyperplane mode needs the group GL_m with the elementary basis".into()));
    }
    if w.dim() + 1 != m * m {
        return Err(Error::Dimension(format!("hyperplane mode needs dim W = {}, got {}", m * m - 1, w.dim())));
    }
    let c = common(kp, w, search_budget, prec)?;
    let constant = c5(m, kp.field().degree(), prec);
    let log_lower = assemble_bound(&constant.value, &c.b, &c.h_w, m);
    let pairing = if kp.field().conj_stable() { Some(pairing(&c.kp, w, &c.distance, prec)?) } else { None };
    Ok(BoundReport {
        mode: BoundMode::Hyperplane,
        m,
        n: m * m,
        d: w.dim(),
        degree: kp.field().degree(),
        precision: prec,
        log_lower,
        constant,
        b2_upper: c.b2,
        witness: c.witness,
        height_exp_u: c.h_exp,
        norm_u: c.norm_u,
        b_upper: c.b,
        height_w: c.h_w,
        distance: c.distance,
        log_distance: c.log_distance,
        pairing,
        c12: None,
    })
}

/// Lower bound for `log d(u, W)` for a subspace `W` of dimension
/// `1..n-1` of the Lie algebra, in the group's basis.
pub fn theorem_bound(kp: &KPoint, w: &SubspaceSpec, search_budget: u32, prec: u32) -> Result<BoundReport> {
    let m = kp.m();
    let n = kp.group().n();
    let d = w.dim();
    if d == 0 || d >= n {
        return Err(Error::Dimension(format!("subspace dimension {d} out of range 1..{n}")));
    }
    let c = common(kp, w, search_budget, prec)?;
    let constant = c4(kp.field(), m, d, kp.group().z(), prec)?;
    let log_lower = assemble_bound(&constant.value, &c.b, &c.h_w, m);
    let pairing = if kp.group().is_general_linear() && d + 1 == n && kp.field().conj_stable() {
        Some(pairing(&c.kp, w, &c.distance, prec)?)
    } else {
        None
    };
    Ok(BoundReport {
        mode: BoundMode::Theorem,
        m,
        n,
        d,
        degree: kp.field().degree(),
        precision: prec,
        log_lower,
        constant,
        b2_upper: c.b2,
        witness: c.witness,
        height_exp_u: c.h_exp,
        norm_u: c.norm_u,
        b_upper: c.b,
        height_w: c.h_w,
        distance: c.distance,
        log_distance: c.log_distance,
        pairing,
        c12: c12(kp.field(), m, d, prec).ok(),
    })
}

/// Dispatches on `mode`.
pub fn bound(kp: &KPoint, w: &SubspaceSpec, mode: BoundMode, search_budget: u32, prec: u32) -> Result<BoundReport> {
    match mode {
        BoundMode::Hyperplane => hyperplane_bound(kp, w, search_budget, prec),
        BoundMode::Theorem => theorem_bound(kp, w, search_budget, prec),
    }
}
