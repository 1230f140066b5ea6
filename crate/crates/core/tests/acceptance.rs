//! Acceptance suite: one PASS/FAIL line per criterion, with its time limit.
//! Runs without the libtest harness so the lines are always printed.

mod common;

use std::time::{Duration, Instant};

use logbound::balls::{distance_to_subspace, hyperplane_distance, verify_many, BallMatrix, ComplexBall, RealEnclosure, VerifyJob};
use logbound::boundengine::{c4, c5, pairing, linear_form_rhs, BoundMode, LinearFormInputs};
use logbound::cli::{family_generate, Family};
use logbound::exactfield::{linalg, FieldElement, NumberField};
use logbound::heights::{
    gamma_minors, height_projective, log_binomial, mahler_height, orthogonal_complement, subspace_height, HeightVariant,
    ProjectivePoint, SubspaceSpec,
};
use logbound::liematrix::{conjugate, exp_exact, mat_height, GroupData, JordanBlock, JordanData, KPoint, LogEigenvalue, MatrixK, Side};
use rand::rngs::StdRng;
use rand::Rng;
use rug::float::Constant;
use rug::ops::Pow;
use rug::{Float, Integer};

const PREC: u32 = 128;
const ORACLE_PREC: u32 = 512;

type Check = std::result::Result<String, String>;

fn fail<T>(msg: impl Into<String>) -> std::result::Result<T, String> {
    Err(msg.into())
}

fn tiny(x: f64) -> Float {
    Float::with_val(PREC, x)
}

/// `lhs <= rhs` is violated only when the enclosures say so for certain.
fn violated(lhs: &RealEnclosure, rhs: &RealEnclosure) -> bool {
    lhs.lower() > rhs.upper()
}

fn ln_f(x: &Float) -> Float {
    Float::with_val(ORACLE_PREC, x.ln_ref())
}

// ---------------------------------------------------------------- AC1

fn remark10_values() -> Check {
    let eps = tiny(1e-25);
    for k in [1u64, 10, 1000] {
        let inst = family_generate(Family::Remark10, k, PREC).map_err(|e| e.to_string())?;
        let d = distance_to_subspace(inst.kpoint.coords_b(), &inst.subspace, PREC).map_err(|e| e.to_string())?;
        let ln2 = Float::with_val(ORACLE_PREC, Constant::Log2);
        let want_d = ln2 / Float::with_val(ORACLE_PREC, k * k + 1).sqrt();
        if !d.contains(&want_d) || d.width() >= eps {
            return fail(format!("k={k}: d = {:?} misses log2/sqrt(k^2+1) = {want_d:.30} or is too wide", d.to_decimal_strings(30)));
        }
        let h = subspace_height(&inst.subspace, HeightVariant::H, PREC).map_err(|e| e.to_string())?;
        let want_h = ln_f(&Float::with_val(ORACLE_PREC, k));
        if !h.contains(&want_h) || h.width() >= eps {
            return fail(format!("k={k}: h(W_k) = {:?} misses log k", h.to_decimal_strings(30)));
        }
    }
    Ok("k in {1, 10, 1000}; widths < 1e-25".into())
}

// ---------------------------------------------------------------- AC2

fn remark11_values() -> Check {
    for k in 2u64..=50 {
        let inst = family_generate(Family::Remark11, k, PREC).map_err(|e| e.to_string())?;
        if !exp_exact(&inst.kpoint).is_identity() {
            return fail(format!("k={k}: exp(u_k) is not the identity"));
        }
        let d = distance_to_subspace(inst.kpoint.coords_b(), &inst.subspace, PREC).map_err(|e| e.to_string())?;
        let want = Float::with_val(ORACLE_PREC, Constant::Pi) * 2u32 / Float::with_val(ORACLE_PREC, k * k);
        if !d.contains(&want) {
            return fail(format!("k={k}: d = {:?} misses 2 pi / k^2", d.to_decimal_strings(30)));
        }
    }
    Ok("k = 2..50: exp(u_k) = I exactly, d = 2 pi/k^2 enclosed".into())
}

// ---------------------------------------------------------------- AC3

fn bound_soundness() -> Check {
    let mut jobs = Vec::new();
    for k in 1..=100 {
        let i = family_generate(Family::Remark10, k, PREC).map_err(|e| e.to_string())?;
        jobs.push(VerifyJob { id: i.id, kp: i.kpoint, w: i.subspace });
    }
    for k in 2..=50 {
        let i = family_generate(Family::Remark11, k, PREC).map_err(|e| e.to_string())?;
        jobs.push(VerifyJob { id: i.id, kp: i.kpoint, w: i.subspace });
    }
    let mut total = 0;
    for mode in [BoundMode::Hyperplane, BoundMode::Theorem] {
        for r in verify_many(&jobs, mode, 2, PREC) {
            let r = r.map_err(|e| e.to_string())?;
            if !r.ok() {
                return fail(format!("{} ({mode}): status {}", r.id, r.status.as_str()));
            }
            total += 1;
        }
    }
    Ok(format!("{total} verifications ok (remark10 k<=100, remark11 k<=50, both modes)"))
}

// ---------------------------------------------------------------- AC4

fn complement_height_gap(r: &mut StdRng, k: &NumberField, m: usize) -> Check {
    let n = m * m;
    let d = r.gen_range(1..n);
    let w = common::subspace(r, k, n, d, 3);
    let wp = orthogonal_complement(&w).map_err(|e| e.to_string())?;
    let hw = subspace_height(&w, HeightVariant::H, PREC).map_err(|e| e.to_string())?;
    let hp = subspace_height(&wp, HeightVariant::H, PREC).map_err(|e| e.to_string())?;
    let lhs = (&hw - &hp).abs();
    let rhs = log_binomial(n as u32, d as u32, PREC);
    if violated(&lhs, &rhs) {
        return fail(format!("m={m} d={d}: |h(W) - h(W^perp)| exceeds log C(n, d)"));
    }
    Ok(String::new())
}

fn change_of_basis_height(r: &mut StdRng, k: &NumberField, m: usize) -> Check {
    let mm = m * m;
    let n = r.gen_range(2..=mm.min(5));
    let d = r.gen_range(1..=n);
    let z = common::full_rank(r, k, mm, n, 2);
    let w = common::subspace(r, k, n, d, 3);
    let image: Vec<Vec<FieldElement>> = w.columns().iter().map(|c| linalg::mat_vec(&z, c)).collect();
    let w0 = SubspaceSpec::from_columns(k, mm, &image).map_err(|e| e.to_string())?;
    let h0 = subspace_height(&w0, HeightVariant::H, PREC).map_err(|e| e.to_string())?;
    let hb = subspace_height(&w, HeightVariant::H, PREC).map_err(|e| e.to_string())?;
    let gamma = ProjectivePoint::new(gamma_minors(&z, d).map_err(|e| e.to_string())?.into_iter().flatten().collect())
        .map_err(|e| e.to_string())?;
    let hg = height_projective(&gamma, HeightVariant::H, PREC).map_err(|e| e.to_string())?;
    let rhs = &(&hb + &hg) + &log_binomial(mm as u32, d as u32, PREC);
    if violated(&h0, &rhs) {
        return fail(format!("m={m} n={n} d={d}: h_B0(W) exceeds h_B(W) + h(Gamma) + log C(m^2, d)"));
    }
    Ok(String::new())
}

fn conjugation_slack(m: usize) -> RealEnclosure {
    let mm = (m * m) as u32;
    &log_binomial(mm + m as u32, m as u32, PREC) + &RealEnclosure::from_i64(mm as i64 + 1, PREC).ln()
}

fn conjugate_height(r: &mut StdRng, k: &NumberField, m: usize) -> Check {
    let g = common::invertible(r, k, m, 4);
    let l = common::invertible(r, k, m, 4);
    let c = conjugate(&l, &g, Side::Inner).map_err(|e| e.to_string())?;
    let h = |x: &MatrixK| height_projective(&ProjectivePoint::new(x.flatten())?, HeightVariant::H, PREC);
    let lhs = h(&c).map_err(|e| e.to_string())?;
    let hl = h(&l).map_err(|e| e.to_string())?;
    let rhs = &(&h(&g).map_err(|e| e.to_string())? + &(&hl * &RealEnclosure::from_i64(m as i64, PREC))) + &conjugation_slack(m);
    if violated(&lhs, &rhs) {
        return fail(format!("m={m}: h(l^-1 g l) = {} too large for g = {g}, l = {l}", lhs.to_f64()));
    }
    Ok(String::new())
}

fn conjugate_hprime(r: &mut StdRng, k: &NumberField, m: usize) -> Check {
    let u = loop {
        let u = common::matrix(r, k, m, 4);
        if u.flatten().iter().any(|x| !x.is_zero()) {
            break u;
        }
    };
    let v = common::invertible(r, k, m, 4);
    let c = conjugate(&v, &u, Side::Inner).map_err(|e| e.to_string())?;
    let lhs = mat_height(&c, PREC).map_err(|e| e.to_string())?;
    let hv = mat_height(&v, PREC).map_err(|e| e.to_string())?;
    let rhs = &(&mat_height(&u, PREC).map_err(|e| e.to_string())? + &(&hv * &RealEnclosure::from_i64(m as i64, PREC))) + &conjugation_slack(m);
    if violated(&lhs, &rhs) {
        return fail(format!("m={m}: h'(v^-1 u v) too large for u = {u}, v = {v}"));
    }
    Ok(String::new())
}

fn ball_matrix(r: &mut StdRng, m: usize, complex: bool) -> BallMatrix {
    let rows = (0..m)
        .map(|_| {
            (0..m)
                .map(|_| {
                    let re = common::rational(r, 9);
                    let im = if complex { common::rational(r, 9) } else { Default::default() };
                    ComplexBall::from_rationals(&re, &im, PREC)
                })
                .collect()
        })
        .collect();
    BallMatrix::from_rows(rows)
}

fn conjugate_norm(r: &mut StdRng, complex: bool, m: usize) -> Check {
    let u = ball_matrix(r, m, complex);
    let (v, det) = loop {
        let v = ball_matrix(r, m, complex);
        if let Ok(det) = v.det() {
            if !det.contains_zero() {
                break (v, det);
            }
        }
    };
    let v_inv = v.solve(&BallMatrix::identity(m, PREC)).map_err(|e| e.to_string())?;
    let lhs = v_inv.mul(&u).mul(&v).frobenius_norm();
    let fact: i64 = (1..=(m as i64 + 1)).product();
    let rhs = &(&(&RealEnclosure::from_i64(fact, PREC) * &v.frobenius_norm().pow_u(m as u32)) / &det.abs()) * &u.frobenius_norm();
    if violated(&lhs, &rhs) {
        return fail(format!("m={m}: |v^-1 u v| exceeds (m+1)! |v|^m/|det v| |u|"));
    }
    Ok(String::new())
}

fn height_inequality_suites() -> Check {
    let mut r = common::rng(4);
    let per_field = 200;
    for gauss in [false, true] {
        let k = common::gaussian_or_rationals(gauss);
        let name = if gauss { "Q(i)" } else { "Q" };
        for i in 0..per_field {
            let m = 2 + i % 2;
            complement_height_gap(&mut r, &k, m).map_err(|e| format!("complement height over {name}: {e}"))?;
            change_of_basis_height(&mut r, &k, m).map_err(|e| format!("change of basis over {name}: {e}"))?;
            conjugate_height(&mut r, &k, m).map_err(|e| format!("conjugate height over {name}: {e}"))?;
            conjugate_hprime(&mut r, &k, m).map_err(|e| format!("conjugate h' over {name}: {e}"))?;
            conjugate_norm(&mut r, gauss, m).map_err(|e| format!("conjugate norm over {name}: {e}"))?;
        }
    }
    Ok(format!("5 inequalities x {per_field} instances x {{Q, Q(i)}}, m in {{2, 3}}: 0 violations"))
}

// ---------------------------------------------------------------- AC5

fn mahler_agreement() -> Check {
    let mut r = common::rng(5);
    let eps = tiny(1e-20);
    let mut degrees = [0usize; 5];
    for case in 0..50 {
        let k = common::field(&mut r, 4);
        let x = common::nonzero_element(&mut r, &k, 5);
        let p = ProjectivePoint::new(vec![x.clone(), k.one()]).map_err(|e| e.to_string())?;
        let h = height_projective(&p, HeightVariant::H, PREC).map_err(|e| e.to_string())?;
        let hm = mahler_height(&x, PREC).map_err(|e| e.to_string())?;
        let diff = Float::with_val(PREC, h.mid() - hm.mid()).abs();
        if !h.overlaps(&hm) || diff >= eps {
            return fail(format!("case {case}: x = {x} in degree {} gives h = {} vs Mahler {}", k.degree(), h.to_f64(), hm.to_f64()));
        }
        degrees[k.degree()] += 1;
    }
    Ok(format!("50 numbers (field degrees 1..4: {:?}), midpoints within 1e-20", &degrees[1..]))
}

// ---------------------------------------------------------------- AC6

fn product_formula() -> Check {
    let mut r = common::rng(61);
    let fields = [NumberField::rationals(), NumberField::gaussian(), NumberField::quadratic(2).unwrap(), NumberField::quadratic(-3).unwrap()];
    for case in 0..100 {
        let k = &fields[case % fields.len()];
        let n = r.gen_range(2..=4);
        let p = ProjectivePoint::new(common::vector(&mut r, k, n, 6)).map_err(|e| e.to_string())?;
        let lam = common::nonzero_element(&mut r, k, 9);
        let q = p.scaled(&lam).map_err(|e| e.to_string())?;
        let a = height_projective(&p, HeightVariant::H, PREC).map_err(|e| e.to_string())?;
        let b = height_projective(&q, HeightVariant::H, PREC).map_err(|e| e.to_string())?;
        if !a.overlaps(&b) {
            return fail(format!("case {case}: h(lambda P) != h(P)"));
        }
    }
    Ok(String::new())
}

fn minors(a: &[Vec<FieldElement>], d: usize) -> Vec<FieldElement> {
    logbound::heights::combinations(a.len(), d)
        .into_iter()
        .map(|rows| {
            let sub: Vec<Vec<FieldElement>> = rows.iter().map(|&i| a[i].clone()).collect();
            linalg::det(&sub)
        })
        .collect()
}

fn cauchy_binet() -> Check {
    let mut r = common::rng(62);
    for case in 0..50 {
        let k = common::gaussian_or_rationals(case % 2 == 1);
        let m = 2;
        let n = r.gen_range(2..=4);
        let d = r.gen_range(1..=n);
        let z = common::full_rank(&mut r, &k, m * m, n, 3);
        let b = common::full_rank(&mut r, &k, n, d, 3);
        let zb = linalg::mat_mul(&z, &b);
        let lam = minors(&b, d);
        let lam_img = minors(&zb, d);
        let gamma = gamma_minors(&z, d).map_err(|e| e.to_string())?;
        for (i, row) in gamma.iter().enumerate() {
            let mut acc = k.zero();
            for (g, l) in row.iter().zip(&lam) {
                acc = &acc + &(g * l);
            }
            if acc != lam_img[i] {
                return fail(format!("case {case}: Cauchy-Binet fails at row {i}"));
            }
        }
    }
    Ok(String::new())
}

fn trace_invariance() -> Check {
    let mut r = common::rng(63);
    for case in 0..100 {
        let k = common::gaussian_or_rationals(case % 2 == 1);
        let m = 2 + case % 2;
        let j = common::matrix(&mut r, &k, m, 5);
        let v = common::invertible(&mut r, &k, m, 4);
        let w = common::matrix(&mut r, &k, m, 5);
        let e = |x: logbound::Result<MatrixK>| x.map_err(|e| e.to_string());
        let u = e(conjugate(&v, &j, Side::Outer))?;
        let s = e(conjugate(&v, &w, Side::Inner))?;
        if e(u.mul(&w))?.trace() != e(j.mul(&s))?.trace() {
            return fail(format!("case {case}: Tr(u w) != Tr(j v^-1 w v)"));
        }
    }
    Ok(String::new())
}

fn random_gl2_kpoint(r: &mut StdRng, k: &NumberField) -> logbound::Result<(KPoint, SubspaceSpec)> {
    let mut blocks = Vec::new();
    for _ in 0..2 {
        let alpha = common::nonzero_element(r, k, 6);
        blocks.push(JordanBlock { eig: LogEigenvalue::new(alpha, r.gen_range(-1..=1))?, size: 1 });
    }
    let v = common::invertible(r, k, 2, 3);
    let kp = KPoint::new(JordanData::new(blocks)?, v, GroupData::general_linear(k, 2), PREC)?;
    let normal = common::vector(r, k, 4, 4);
    let line = SubspaceSpec::from_columns(k, 4, &[normal])?;
    Ok((kp, orthogonal_complement(&line)?))
}

fn pairing_identity() -> Check {
    let mut cases: Vec<(String, KPoint, SubspaceSpec)> = Vec::new();
    for k in 1..=10 {
        let i = family_generate(Family::Remark10, k, PREC).map_err(|e| e.to_string())?;
        cases.push((i.id, i.kpoint, i.subspace));
    }
    for k in 2..=11 {
        let i = family_generate(Family::Remark11, k, PREC).map_err(|e| e.to_string())?;
        cases.push((i.id, i.kpoint, i.subspace));
    }
    let mut r = common::rng(64);
    for c in 0..30 {
        let k = common::gaussian_or_rationals(c % 3 == 2);
        let (kp, w) = random_gl2_kpoint(&mut r, &k).map_err(|e| e.to_string())?;
        cases.push((format!("random-{c}"), kp, w));
    }
    for (id, kp, w) in &cases {
        let dist = distance_to_subspace(kp.coords_b(), w, PREC).map_err(|e| e.to_string())?;
        let p = pairing(kp, w, &dist, PREC).map_err(|e| format!("{id}: {e}"))?;
        // <u, y> computed directly from the coordinates of u
        let mut direct = ComplexBall::zero(PREC);
        let mut y_sq = RealEnclosure::zero(PREC);
        for (u, y) in kp.coords_b().iter().zip(&p.normal) {
            let yb = y.embed_primary(PREC).map_err(|e| e.to_string())?;
            direct = &direct + &(u * &yb.conj());
            y_sq = &y_sq + &yb.abs_sq();
        }
        if !direct.overlaps(&p.linear_form) || !p.trace_form.overlaps(&p.linear_form) {
            return fail(format!("{id}: the linear form differs from <u, y>"));
        }
        let hd = hyperplane_distance(kp.coords_b(), &p.normal, PREC).map_err(|e| e.to_string())?;
        if !p.linear_form.abs().overlaps(&(&y_sq.sqrt() * &hd)) || !p.w_norm_times_distance.overlaps(&p.linear_form.abs()) {
            return fail(format!("{id}: |linear form| differs from |w| d(u, W)"));
        }
    }
    Ok(format!("{} GL2 K-points", cases.len()))
}

fn exact_identities() -> Check {
    product_formula().map_err(|e| format!("product formula: {e}"))?;
    cauchy_binet().map_err(|e| format!("Cauchy-Binet: {e}"))?;
    trace_invariance().map_err(|e| format!("trace invariance: {e}"))?;
    let p = pairing_identity().map_err(|e| format!("pairing: {e}"))?;
    Ok(format!("scaling x100, Cauchy-Binet x50, trace x100, pairing on {p}"))
}

// ---------------------------------------------------------------- AC7

fn optimality_ratio() -> Check {
    let k = 1_000_000u64;
    let inst = family_generate(Family::Remark10, k, PREC).map_err(|e| e.to_string())?;
    let d = distance_to_subspace(inst.kpoint.coords_b(), &inst.subspace, PREC).map_err(|e| e.to_string())?;
    let h = subspace_height(&inst.subspace, HeightVariant::H, PREC).map_err(|e| e.to_string())?;
    let ratio = &(-&d.ln()) / &h;
    let oracle = {
        let ln2 = Float::with_val(ORACLE_PREC, Constant::Log2);
        let dk = ln2 / Float::with_val(ORACLE_PREC, Integer::from(k).pow(2) + 1u32).sqrt();
        let lnk = ln_f(&Float::with_val(ORACLE_PREC, k));
        (-ln_f(&dk) / lnk).to_f64()
    };
    let (lo, hi) = (ratio.lower().to_f64(), ratio.upper().to_f64());
    if lo < 0.95 || hi > 1.05 || (ratio.to_f64() - oracle).abs() > 1e-12 {
        return fail(format!("ratio in [{lo}, {hi}], oracle {oracle}"));
    }
    Ok(format!("ratio = {:.12}", ratio.to_f64()))
}

// ---------------------------------------------------------------- AC8

fn constants() -> Check {
    let c5v = c5(2, 1, PREC).exact();
    if c5v != Some(Integer::from(1) << 121) {
        return fail(format!("c5 = {c5v:?}"));
    }
    let q = NumberField::rationals();
    let z = linalg::identity(4, &q.zero());
    let c4v = c4(&q, 2, 3, &z, PREC).map_err(|e| e.to_string())?.exact();
    if c4v != Some(Integer::from(1) << 160) {
        return fail(format!("c4 = {c4v:?}"));
    }
    let inp = LinearFormInputs {
        field: q.clone(),
        lambdas: vec![ComplexBall::from_real(RealEnclosure::ln2(PREC))],
        alphas: vec![q.int(2)],
        betas: vec![q.zero(), q.one()],
    };
    let rhs = linear_form_rhs(&inp, PREC).map_err(|e| e.to_string())?.rhs.to_f64();
    let want = -(2f64.powi(26) * std::f64::consts::E * std::f64::consts::LN_2);
    if ((rhs - want) / want).abs() >= 1e-6 {
        return fail(format!("linear-form bound {rhs} vs {want}"));
    }
    Ok(format!("c5 = 2^121, c4 = 2^160, linear-form bound {rhs:.6e}"))
}

// ---------------------------------------------------------------- AC9

fn sandwich_duality_precision() -> Check {
    let mut r = common::rng(9);
    for case in 0..200 {
        let k = common::field(&mut r, 3);
        let n = r.gen_range(2..=4);
        let p = ProjectivePoint::new(common::vector(&mut r, &k, n, 6)).map_err(|e| e.to_string())?;
        let h = height_projective(&p, HeightVariant::H, PREC).map_err(|e| e.to_string())?;
        let hh = height_projective(&p, HeightVariant::HHat, PREC).map_err(|e| e.to_string())?;
        let cap = &h + &RealEnclosure::from_i64(n as i64, PREC).ln().mul_2si(-1);
        if violated(&h, &hh) || violated(&hh, &cap) {
            return fail(format!("case {case}: sandwich fails for {:?}", p.coords()));
        }
    }
    for case in 0..100 {
        let k = common::gaussian_or_rationals(case % 2 == 1);
        let n = r.gen_range(2..=6);
        let d = r.gen_range(0..=n);
        let w = if d == 0 { SubspaceSpec::zero(&k, n) } else { common::subspace(&mut r, &k, n, d, 4) };
        let back = orthogonal_complement(&orthogonal_complement(&w).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        if !back.same_span(&w) {
            return fail(format!("case {case}: (W^perp)^perp != W"));
        }
    }
    let mut spots = 0;
    let narrower = |a: &RealEnclosure, b: &RealEnclosure| b.width() <= a.width() && a.overlaps(b);
    for case in 0..20 {
        let k = common::field(&mut r, 3);
        let p = ProjectivePoint::new(common::vector(&mut r, &k, 3, 6)).map_err(|e| e.to_string())?;
        for v in [HeightVariant::H, HeightVariant::HHat, HeightVariant::HPrime] {
            let a = height_projective(&p, v, 128).map_err(|e| e.to_string())?;
            let b = height_projective(&p, v, 256).map_err(|e| e.to_string())?;
            if !narrower(&a, &b) {
                return fail(format!("case {case}: {v:?} widened from 128 to 256 bits"));
            }
            spots += 1;
        }
    }
    for (fam, kk) in [(Family::Remark10, 3), (Family::Remark10, 1000), (Family::Remark11, 7)] {
        let a = family_generate(fam, kk, 128).map_err(|e| e.to_string())?;
        let b = family_generate(fam, kk, 256).map_err(|e| e.to_string())?;
        let da = distance_to_subspace(a.kpoint.coords_b(), &a.subspace, 128).map_err(|e| e.to_string())?;
        let db = distance_to_subspace(b.kpoint.coords_b(), &b.subspace, 256).map_err(|e| e.to_string())?;
        if !narrower(&da, &db) {
            return fail(format!("{}: distance widened from 128 to 256 bits", a.id));
        }
        spots += 1;
    }
    Ok(format!("sandwich x200, involution x100, precision spot checks x{spots}"))
}

fn main() {
    let criteria: Vec<(&str, &str, u64, fn() -> Check)> = vec![
        ("AC1", "remark10 distances and heights", 1, remark10_values),
        ("AC2", "remark11 exp(u) = I and distances", 5, remark11_values),
        ("AC3", "bound soundness on both families", 120, bound_soundness),
        ("AC4", "height and norm inequality suites", 120, height_inequality_suites),
        ("AC5", "height vs Mahler measure", 30, mahler_agreement),
        ("AC6", "exact identities", 60, exact_identities),
        ("AC7", "optimality ratio at k = 10^6", 1, optimality_ratio),
        ("AC8", "constant evaluation", 1, constants),
        ("AC9", "sandwich, duality, precision monotonicity", 60, sandwich_duality_precision),
    ];
    let mut failures = 0;
    for (tag, name, limit, f) in criteria {
        let start = Instant::now();
        let outcome = f();
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(limit);
        let (pass, detail) = match outcome {
            Ok(d) if in_time => (true, d),
            Ok(d) => (false, format!("{d}; over the {limit} s limit")),
            Err(e) => (false, e),
        };
        if !pass {
            failures += 1;
        }
        println!(
            "{} {tag} {name} ({:.3} s, limit {limit} s){}",
            if pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            if detail.is_empty() { String::new() } else { format!(": {detail}") }
        );
    }
    println!("acceptance: {} criteria, {failures} failed", 9);
    if failures > 0 {
        std::process::exit(1);
    }
}
