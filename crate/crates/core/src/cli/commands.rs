//! Command implementations shared by the binary and the tests. Each
//! returns the text to print and the process exit code.

use std::fmt::Write as _;
use std::path::Path;

use serde_json::{json, Value};

use super::families::{family_generate, parse_k_range, Family};
use super::instance::{FieldSpec, Instance};
use crate::balls::{verify_many, RealEnclosure, VerifyJob, VerifyReport, VerifyStatus};
use crate::boundengine::json::{complex_json, interval_json, lower_string, matrix_json, DIGITS};
use crate::boundengine::{bound, c4, c5, BoundMode, BoundReport};
use crate::error::{Error, Result};
use crate::exactfield::{parse_rational, FieldElement, NumberField};
use crate::heights::{height_projective, subspace_height, HeightVariant, ProjectivePoint};
use crate::liematrix::exp_exact;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Debug)]
pub struct CommandOutput {
    pub stdout: String,
    pub exit_code: i32,
}

impl CommandOutput {
    fn ok(stdout: String) -> Self {
        CommandOutput { stdout, exit_code: EXIT_OK }
    }
}

fn interval_text(x: &RealEnclosure) -> String {
    let (lo, hi) = x.to_decimal_strings(DIGITS);
    format!("[{lo}, {hi}]")
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

/// Where instances come from: a file, or a family with a list of `k`.
#[derive(Clone, Debug)]
pub enum InstanceSource {
    File(String),
    Family(Family, Vec<u64>),
}

impl InstanceSource {
    /// `--instance` takes a path or a family name; `--family` a family name.
    pub fn from_args(instance: Option<&str>, family: Option<&str>, k: Option<&str>) -> Result<Self> {
        let family_name = match (instance, family) {
            (Some(_), Some(_)) => return Err(Error::InvalidArgument("give either --instance or --family, not both".into())),
            (None, Some(f)) => Some(f),
            (Some(i), None) if i.parse::<Family>().is_ok() => Some(i),
            (Some(i), None) => return Ok(InstanceSource::File(i.to_string())),
            (None, None) => return Err(Error::InvalidArgument("an --instance file or a --family is required".into())),
        };
        let fam: Family = family_name.expect("set above").parse()?;
        let ks = parse_k_range(k.ok_or_else(|| Error::InvalidArgument(format!("--family {fam} needs --k")))?)?;
        Ok(InstanceSource::Family(fam, ks))
    }

    /// Loads every instance; `precision` overrides the file's setting.
    pub fn load(&self, precision: Option<u32>) -> Result<Vec<Instance>> {
        match self {
            InstanceSource::File(path) => {
                let text = std::fs::read_to_string(Path::new(path)).map_err(|e| Error::Parse(format!("cannot read {path}: {e}")))?;
                let mut inst = Instance::from_json(&text)?;
                if let Some(p) = precision.filter(|&p| p != inst.options.precision) {
                    inst.kpoint = inst.kpoint.at_precision(p)?;
                    inst.options.precision = p;
                }
                Ok(vec![inst])
            }
            InstanceSource::Family(fam, ks) => {
                let p = precision.unwrap_or(super::instance::DEFAULT_PRECISION);
                ks.iter().map(|&k| family_generate(*fam, k, p)).collect()
            }
        }
    }

    pub fn load_one(&self, precision: Option<u32>) -> Result<Instance> {
        let mut all = self.load(precision)?;
        if all.len() != 1 {
            return Err(Error::InvalidArgument(format!("this command takes one instance, got {}", all.len())));
        }
        Ok(all.remove(0))
    }
}

fn point_entry(field: &NumberField, v: &Value, i: usize) -> Result<FieldElement> {
    let bad = |what: &str| Error::Parse(format!("point[{i}]: {what}"));
    match v {
        Value::Number(n) if n.is_i64() || n.is_u64() => Ok(field.from_rational(&parse_rational(&n.to_string())?)),
        Value::Number(_) => Err(bad("floats are not accepted; use a \"p/q\" string")),
        Value::String(s) => Ok(field.from_rational(&parse_rational(s).map_err(|e| bad(&e.to_string()))?)),
        Value::Array(cs) => {
            let strs = cs
                .iter()
                .map(|c| match c {
                    Value::Number(n) if n.is_i64() || n.is_u64() => Ok(n.to_string()),
                    Value::String(s) => Ok(s.clone()),
                    _ => Err(bad("coefficients must be integers or \"p/q\" strings")),
                })
                .collect::<Result<Vec<_>>>()?;
            FieldElement::parse(field, &strs).map_err(|e| bad(&e.to_string()))
        }
        _ => Err(bad("expected a rational or a coefficient array")),
    }
}

/// Parses `[1, 2]`, `["1/2", 3]` or `[[0, 1], [1, 0]]` (coefficient
/// vectors) into a projective point.
pub fn parse_point(field: &NumberField, text: &str) -> Result<ProjectivePoint> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(format!("point: {e}")))?;
    let Value::Array(xs) = v else {
        return Err(Error::Parse("point must be a JSON array".into()));
    };
    let coords = xs.iter().enumerate().map(|(i, x)| point_entry(field, x, i)).collect::<Result<Vec<_>>>()?;
    ProjectivePoint::new(coords)
}

fn variant_label(v: HeightVariant) -> &'static str {
    match v {
        HeightVariant::H => "h",
        HeightVariant::HPrime => "h'",
        HeightVariant::HHat => "hhat",
    }
}

pub fn cmd_height(point: &str, field: &str, variant: HeightVariant, precision: u32, as_json: bool) -> Result<CommandOutput> {
    let k = FieldSpec::from_shorthand(field)?.build()?;
    let p = parse_point(&k, point)?;
    let h = height_projective(&p, variant, precision)?;
    let coords: Vec<String> = p.coords().iter().map(|c| c.to_string()).collect();
    if as_json {
        return Ok(CommandOutput::ok(pretty(&json!({
            "variant": variant_label(variant),
            "point": p.coords().iter().map(|c| c.to_strings()).collect::<Vec<_>>(),
            "precision": precision,
            "height": interval_json(&h),
        }))));
    }
    Ok(CommandOutput::ok(format!("{}([{}]) ∈ {}\n", variant_label(variant), coords.join(" : "), interval_text(&h))))
}

pub fn cmd_subspace_height(src: &InstanceSource, variant: HeightVariant, precision: Option<u32>, as_json: bool) -> Result<CommandOutput> {
    let mut out = String::new();
    let mut rows = Vec::new();
    for inst in src.load(precision)? {
        let p = inst.options.precision;
        let h = subspace_height(&inst.subspace, variant, p)?;
        if as_json {
            rows.push(json!({"id": inst.id, "variant": variant_label(variant), "dim": inst.subspace.dim(), "ambient": inst.subspace.ambient(), "height": interval_json(&h)}));
        } else {
            let _ = writeln!(out, "{}: {}(W) ∈ {} (dim {} in K^{})", inst.id, variant_label(variant), interval_text(&h), inst.subspace.dim(), inst.subspace.ambient());
        }
    }
    if as_json {
        out = pretty(&if rows.len() == 1 { rows.remove(0) } else { Value::Array(rows) });
    }
    Ok(CommandOutput::ok(out))
}

fn jordan_json(inst: &Instance) -> Value {
    let kp = &inst.kpoint;
    let blocks: Vec<Value> = kp
        .jordan()
        .blocks()
        .iter()
        .map(|b| {
            json!({
                "alpha": b.eig.alpha().to_strings(),
                "branch": b.eig.branch(),
                "size": b.size,
                "lambda": b.eig.lambda(kp.prec()).map(|l| complex_json(&l)).unwrap_or(Value::Null),
            })
        })
        .collect();
    let u = kp.u_ball();
    let m = kp.m();
    let u_rows: Vec<Value> = (0..m).map(|i| Value::Array((0..m).map(|j| complex_json(u.get(i, j))).collect())).collect();
    json!({
        "id": inst.id,
        "blocks": blocks,
        "conjugator": matrix_json(kp.conjugator()),
        "exp_u": matrix_json(&exp_exact(kp)),
        "u": u_rows,
        "coords": kp.coords_b().iter().map(complex_json).collect::<Vec<_>>(),
    })
}

pub fn cmd_jordan(src: &InstanceSource, precision: Option<u32>, as_json: bool) -> Result<CommandOutput> {
    let inst = src.load_one(precision)?;
    if as_json {
        return Ok(CommandOutput::ok(pretty(&jordan_json(&inst))));
    }
    let kp = &inst.kpoint;
    let mut out = format!("{}: u = v j v^-1 in gl_{}\n", inst.id, kp.m());
    for b in kp.jordan().blocks() {
        let _ = writeln!(out, "  block size {}: alpha = {}, branch {}", b.size, b.eig.alpha(), b.eig.branch());
    }
    let _ = writeln!(out, "  v      = {}", kp.conjugator());
    let _ = writeln!(out, "  exp(u) = {}", exp_exact(kp));
    let u = kp.u_ball();
    for i in 0..kp.m() {
        for j in 0..kp.m() {
            let z = u.get(i, j);
            let _ = writeln!(out, "  u[{i}][{j}] ∈ {} + i {}", interval_text(z.re()), interval_text(z.im()));
        }
    }
    Ok(CommandOutput::ok(out))
}

fn bound_text(id: &str, r: &BoundReport) -> String {
    let mut out = format!("{id}: {} bound at {} bits (m = {}, n = {}, d = {}, D = {})\n", r.mode, r.precision, r.m, r.n, r.d, r.degree);
    let _ = writeln!(out, "  L            = {}", lower_string(&r.log_lower));
    let _ = writeln!(out, "  log d(u, W)  ∈ {}", interval_text(&r.log_distance));
    let _ = writeln!(out, "  holds        = {}", r.holds());
    let c = &r.constant;
    match c.exact() {
        Some(x) if x.is_power_of_two() => {
            let _ = writeln!(out, "  {}           = 2^{}", c.name, x.significant_bits() - 1);
        }
        Some(x) => {
            let _ = writeln!(out, "  {}           = {x}", c.name);
        }
        None => {
            let _ = writeln!(out, "  {}           ∈ {}", c.name, interval_text(&c.value));
        }
    }
    let _ = writeln!(out, "  b2          <= {}", r.b2_upper.to_decimal_strings(DIGITS).1);
    let _ = writeln!(out, "  h(exp u)     ∈ {}", interval_text(&r.height_exp_u));
    let _ = writeln!(out, "  |u|          ∈ {}", interval_text(&r.norm_u));
    let _ = writeln!(out, "  b           <= {}", r.b_upper.to_decimal_strings(DIGITS).1);
    let _ = writeln!(out, "  h(W)        <= {}", r.height_w.to_decimal_strings(DIGITS).1);
    if let Some(p) = &r.pairing {
        let _ = writeln!(out, "  |linear form| ∈ {}", interval_text(&p.linear_form.abs()));
        let _ = writeln!(out, "  |w| d(u, W)   ∈ {}", interval_text(&p.w_norm_times_distance));
    }
    out
}

pub fn cmd_bound(src: &InstanceSource, mode: BoundMode, precision: Option<u32>, as_json: bool) -> Result<CommandOutput> {
    let mut out = String::new();
    let mut rows = Vec::new();
    let mut exit_code = EXIT_OK;
    for inst in src.load(precision)? {
        let r = bound(&inst.kpoint, &inst.subspace, mode, inst.options.search_budget, inst.options.precision)?;
        if !r.holds() && r.certified() > r.log_distance.upper() {
            exit_code = EXIT_VIOLATED;
        }
        if as_json {
            let mut v = r.to_json();
            v["id"] = json!(inst.id);
            rows.push(v);
        } else {
            out.push_str(&bound_text(&inst.id, &r));
        }
    }
    if as_json {
        out = pretty(&if rows.len() == 1 { rows.remove(0) } else { Value::Array(rows) });
    }
    Ok(CommandOutput { stdout: out, exit_code })
}

/// Verifies every instance in each mode; exit 1 iff some bound is violated.
pub fn cmd_verify(src: &InstanceSource, modes: &[BoundMode], precision: Option<u32>, as_json: bool) -> Result<CommandOutput> {
    let insts = src.load(precision)?;
    let mut reports: Vec<VerifyReport> = Vec::new();
    for &mode in modes {
        // instances sharing options are verified together in parallel
        let jobs: Vec<VerifyJob> = insts.iter().map(|i| VerifyJob { id: i.id.clone(), kp: i.kpoint.clone(), w: i.subspace.clone() }).collect();
        let budget = insts.first().map_or(super::instance::DEFAULT_SEARCH_BUDGET, |i| i.options.search_budget);
        let prec = insts.first().map_or(super::instance::DEFAULT_PRECISION, |i| i.options.precision);
        for r in verify_many(&jobs, mode, budget, prec) {
            reports.push(r?);
        }
    }
    let count = |s: VerifyStatus| reports.iter().filter(|r| r.status == s).count();
    let (ok, bad, unknown) = (count(VerifyStatus::Ok), count(VerifyStatus::Violated), count(VerifyStatus::Inconclusive));
    let exit_code = verify_exit_code(reports.iter().map(|r| r.status));
    let out = if as_json {
        pretty(&json!({
            "reports": reports.iter().map(VerifyReport::to_json).collect::<Vec<_>>(),
            "summary": {"total": reports.len(), "ok": ok, "violated": bad, "inconclusive": unknown},
        }))
    } else {
        let mut s = String::new();
        for r in &reports {
            let detail = match (&r.report, &r.message) {
                (Some(b), _) => format!("L = {}, log d ∈ {}", lower_string(&b.log_lower), interval_text(&b.log_distance)),
                (None, Some(m)) => m.clone(),
                (None, None) => String::new(),
            };
            let _ = writeln!(s, "{:<16} {:<10} {:<12} {:>5} bits  {}", r.id, r.mode.to_string(), r.status.as_str(), r.precision, detail);
        }
        let _ = writeln!(s, "summary: {} instances, {ok} ok, {bad} violated, {unknown} inconclusive", reports.len());
        s
    };
    Ok(CommandOutput { stdout: out, exit_code })
}

/// Violations exit with 1; inconclusive instances do not change the status.
pub fn verify_exit_code(statuses: impl IntoIterator<Item = VerifyStatus>) -> i32 {
    if statuses.into_iter().any(|s| s == VerifyStatus::Violated) {
        EXIT_VIOLATED
    } else {
        EXIT_OK
    }
}

struct Check {
    name: &'static str,
    pass: bool,
    detail: String,
}

fn selftest_checks(precision: u32) -> Result<Vec<Check>> {
    let p = precision;
    let mut checks = Vec::new();
    let q = NumberField::rationals();

    let h = height_projective(&ProjectivePoint::from_rationals(&q, &[1.into(), 2.into()])?, HeightVariant::H, p)?;
    checks.push(Check { name: "h([1:2]) = log 2", pass: h.overlaps(&RealEnclosure::ln2(p)), detail: interval_text(&h) });

    let r10 = family_generate(Family::Remark10, 7, p)?;
    let hw = subspace_height(&r10.subspace, HeightVariant::H, p)?;
    let log7 = RealEnclosure::from_i64(7, p).ln();
    checks.push(Check { name: "remark10 k=7: h(W) = log 7", pass: hw.overlaps(&log7), detail: interval_text(&hw) });

    let r11 = family_generate(Family::Remark11, 5, p)?;
    checks.push(Check { name: "remark11 k=5: exp(u) = I", pass: exp_exact(&r11.kpoint).is_identity(), detail: String::new() });

    let c5v = c5(2, 1, p).exact();
    checks.push(Check { name: "c5(m=2, Q) = 2^121", pass: c5v == Some(rug::Integer::from(1) << 121), detail: format!("{c5v:?}") });
    let z = r10.group.z().clone();
    let c4v = c4(&q, 2, 3, &z, p)?.exact();
    checks.push(Check { name: "c4(GL2, d=3, Q) = 2^160", pass: c4v == Some(rug::Integer::from(1) << 160), detail: format!("{c4v:?}") });

    for (fam, k) in [(Family::Remark10, 10), (Family::Remark11, 5)] {
        let inst = family_generate(fam, k, p)?;
        for mode in [BoundMode::Hyperplane, BoundMode::Theorem] {
            let r = bound(&inst.kpoint, &inst.subspace, mode, inst.options.search_budget, p)?;
            let name = match (fam, mode) {
                (Family::Remark10, BoundMode::Hyperplane) => "remark10 k=10 hyperplane bound holds",
                (Family::Remark10, BoundMode::Theorem) => "remark10 k=10 theorem bound holds",
                (Family::Remark11, BoundMode::Hyperplane) => "remark11 k=5 hyperplane bound holds",
                (Family::Remark11, BoundMode::Theorem) => "remark11 k=5 theorem bound holds",
            };
            checks.push(Check { name, pass: r.holds(), detail: format!("L = {}", lower_string(&r.log_lower)) });
        }
    }
    Ok(checks)
}

/// Quick end-to-end checks against closed-form values.
pub fn cmd_selftest(precision: Option<u32>, as_json: bool) -> Result<CommandOutput> {
    let checks = selftest_checks(precision.unwrap_or(super::instance::DEFAULT_PRECISION))?;
    let failed = checks.iter().filter(|c| !c.pass).count();
    let out = if as_json {
        pretty(&json!({
            "checks": checks.iter().map(|c| json!({"name": c.name, "pass": c.pass, "detail": c.detail})).collect::<Vec<_>>(),
            "failed": failed,
        }))
    } else {
        let mut s = String::new();
        for c in &checks {
            let _ = writeln!(s, "{} {}{}", if c.pass { "PASS" } else { "FAIL" }, c.name, if c.detail.is_empty() { String::new() } else { format!("  ({})", c.detail) });
        }
        let _ = writeln!(s, "{} checks, {failed} failed", checks.len());
        s
    };
    Ok(CommandOutput { stdout: out, exit_code: if failed > 0 { EXIT_VIOLATED } else { EXIT_OK } })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        use VerifyStatus::*;
        assert_eq!(verify_exit_code([Ok, Ok]), EXIT_OK);
        assert_eq!(verify_exit_code([Ok, Inconclusive]), EXIT_OK);
        assert_eq!(verify_exit_code([Inconclusive, Violated, Ok]), EXIT_VIOLATED);
        assert_eq!(verify_exit_code([]), EXIT_OK);
    }

    #[test]
    fn instance_sources() {
        assert!(matches!(InstanceSource::from_args(Some("remark10"), None, Some("7")).unwrap(), InstanceSource::Family(Family::Remark10, ref ks) if ks == &[7]));
        assert!(matches!(InstanceSource::from_args(Some("x.json"), None, None).unwrap(), InstanceSource::File(_)));
        assert!(InstanceSource::from_args(Some("x.json"), Some("remark10"), Some("1")).is_err());
        assert!(InstanceSource::from_args(None, Some("remark11"), None).is_err());
        assert!(InstanceSource::from_args(None, None, None).is_err());
    }

    #[test]
    fn points() {
        let q = NumberField::rationals();
        assert_eq!(parse_point(&q, r#"[1, "-2/3"]"#).unwrap().coords().len(), 2);
        assert!(parse_point(&q, "[1.5, 2]").is_err());
        assert!(parse_point(&q, "{}").is_err());
        let k = NumberField::gaussian();
        let p = parse_point(&k, r#"[[0, 1], 2]"#).unwrap();
        assert_eq!(p.coords()[0], k.generator());
    }
}
