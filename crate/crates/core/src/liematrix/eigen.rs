//! Eigenvalues in the number field: exact polynomial arithmetic over K plus
//! a numerical search that proposes roots and an exact check that accepts
//! them.

use num_complex::Complex64;
use rug::{Integer, Rational};

use crate::error::{Error, Result};
use crate::exactfield::linalg;
use crate::exactfield::FieldElement;

use super::matrix::MatrixK;

/// Polynomial over K, lowest degree first, no trailing zeros.
pub(crate) type KPoly = Vec<FieldElement>;

fn trim(mut p: KPoly) -> KPoly {
    while p.last().is_some_and(FieldElement::is_zero) {
        p.pop();
    }
    p
}

fn degree(p: &KPoly) -> usize {
    p.len().saturating_sub(1)
}

pub(crate) fn eval(p: &KPoly, x: &FieldElement) -> FieldElement {
    let mut acc = x.field().zero();
    for c in p.iter().rev() {
        acc = &(&acc * x) + c;
    }
    acc
}

fn derivative(p: &KPoly) -> KPoly {
    trim(p.iter().enumerate().skip(1).map(|(i, c)| c.scale(&Rational::from(i as u64))).collect())
}

fn monic(p: &KPoly) -> KPoly {
    let inv = p.last().expect("nonzero polynomial").inverse().expect("nonzero leading coefficient");
    p.iter().map(|c| c * &inv).collect()
}

fn divrem(a: &KPoly, b: &KPoly) -> (KPoly, KPoly) {
    let field = b[0].field().clone();
    let db = degree(b);
    let lead_inv = b.last().expect("nonzero divisor").inverse().expect("nonzero leading coefficient");
    let mut r = a.clone();
    if r.len() < b.len() {
        return (Vec::new(), trim(r));
    }
    let mut q = vec![field.zero(); r.len() - db];
    for k in (0..q.len()).rev() {
        let c = &r[k + db] * &lead_inv;
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                r[k + j] = &r[k + j] - &(&c * bj);
            }
        }
        q[k] = c;
    }
    r.truncate(db);
    (trim(q), trim(r))
}

fn gcd(a: &KPoly, b: &KPoly) -> KPoly {
    let (mut x, mut y) = (trim(a.clone()), trim(b.clone()));
    while !y.is_empty() {
        let (_, r) = divrem(&x, &y);
        x = y;
        y = r;
    }
    monic(&x)
}

/// Divides out the linear factor `x - alpha` as often as it divides `p`.
fn deflate(p: &KPoly, alpha: &FieldElement) -> (KPoly, usize) {
    let lin = vec![-alpha, alpha.field().one()];
    let mut cur = p.clone();
    let mut mult = 0;
    loop {
        let (q, r) = divrem(&cur, &lin);
        if !r.is_empty() {
            return (cur, mult);
        }
        cur = q;
        mult += 1;
    }
}

pub(crate) fn format_poly(p: &KPoly) -> String {
    let mut terms = Vec::new();
    for (i, c) in p.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => "x".to_string(),
            _ => format!("x^{i}"),
        };
        let coef = if c.as_rational().is_some() { c.to_string() } else { format!("({c})") };
        terms.push(match (coef.as_str(), i) {
            (_, 0) => coef,
            ("1", _) => mono,
            ("-1", _) => format!("-{mono}"),
            _ => format!("{coef}*{mono}"),
        });
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

/// Roots of a complex polynomial (lowest degree first) by the
/// Durand-Kerner iteration followed by Newton polishing.
fn complex_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    let lead = coeffs[n];
    let c: Vec<Complex64> = coeffs.iter().map(|x| x / lead).collect();
    let eval = |z: Complex64| c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, a| acc * z + a);
    let bound = 1.0 + c[..n].iter().map(|x| x.norm()).fold(0.0, f64::max);
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..n).map(|k| seed.powu(k as u32) * (bound * 0.5)).collect();
    for _ in 0..2000 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let mut den = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    den *= z[i] - z[j];
                }
            }
            if den.norm() == 0.0 {
                continue;
            }
            let step = eval(z[i]) / den;
            z[i] -= step;
            moved = moved.max(step.norm() / (1.0 + z[i].norm()));
        }
        if moved < 1e-15 {
            break;
        }
    }
    let dc: Vec<Complex64> = c.iter().enumerate().skip(1).map(|(i, a)| a * i as f64).collect();
    let deval = |x: Complex64| dc.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, a| acc * x + a);
    for r in z.iter_mut() {
        for _ in 0..3 {
            let d = deval(*r);
            if d.norm() > 0.0 {
                *r -= eval(*r) / d;
            }
        }
    }
    z
}

fn to_c64(f: &FieldElement, idx: usize) -> Result<Complex64> {
    let b = f.embed(idx, 64)?;
    let (re, im) = b.center();
    Ok(Complex64::new(re.to_f64(), im.to_f64()))
}

fn solve_c64(mut a: Vec<Vec<Complex64>>, mut b: Vec<Complex64>) -> Option<Vec<Complex64>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i][col].norm().total_cmp(&a[j][col].norm()))?;
        if a[piv][col].norm() == 0.0 {
            return None;
        }
        a.swap(piv, col);
        b.swap(piv, col);
        for r in (col + 1)..n {
            let f = a[r][col] / a[col][col];
            for j in col..n {
                let t = a[col][j];
                a[r][j] -= f * t;
            }
            let t = b[col];
            b[r] -= f * t;
        }
    }
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    for i in (0..n).rev() {
        let mut acc = b[i];
        for k in (i + 1)..n {
            acc -= a[i][k] * x[k];
        }
        x[i] = acc / a[i][i];
    }
    Some(x)
}

/// Searches for one root of `p` in the field.
///
/// For each archimedean place the embedded polynomial's roots are found
/// numerically; every way of assigning one root per place determines the
/// images of a candidate under all embeddings, hence its coordinates in the
/// integral basis. Scaled by `scale`, a genuine root has coordinates in
/// `(1/|disc|) Z`, so candidates are rounded there and checked exactly.
fn find_root(p: &KPoly, scale: &Integer) -> Result<Option<FieldElement>> {
    let field = p[0].field().clone();
    let d = field.degree();
    let places = field.places();
    let real = field.real_embedding_count();
    let mut roots_per_place = Vec::with_capacity(places.len());
    for place in &places {
        let k = place.embedding();
        let coeffs: Vec<Complex64> = p.iter().map(|c| to_c64(c, k)).collect::<Result<_>>()?;
        // roots of sigma(p)(x / scale) are scale * sigma(root)
        let s = scale.to_f64();
        let scaled: Vec<Complex64> = coeffs.iter().enumerate().map(|(i, c)| c / s.powi(i as i32)).collect();
        roots_per_place.push(complex_roots(&scaled));
    }
    let omega: Vec<Vec<Complex64>> =
        (0..d).map(|k| (0..d).map(|i| to_c64(&field.omega(i), k)).collect::<Result<Vec<_>>>()).collect::<Result<_>>()?;
    let f = Integer::from(field.discriminant().abs_ref());
    let ff = f.to_f64();
    let deg = degree(p);
    let mut choice = vec![0usize; places.len()];
    loop {
        let mut images = vec![Complex64::new(0.0, 0.0); d];
        for (pi, place) in places.iter().enumerate() {
            let z = roots_per_place[pi][choice[pi]];
            let k = place.embedding();
            images[k] = z;
            if k >= real {
                images[k + 1] = z.conj();
            }
        }
        if let Some(coords) = solve_c64(omega.clone(), images) {
            let close = coords.iter().all(|c| {
                let x = c.re * ff;
                c.im.abs() * ff < 1e-4 * (1.0 + x.abs()) && (x - x.round()).abs() < 1e-4 * (1.0 + x.abs().sqrt())
            });
            if close {
                let mut cand = field.zero();
                for (i, c) in coords.iter().enumerate() {
                    let num = Integer::from_f64((c.re * ff).round()).expect("finite coordinate");
                    let q = Rational::from((num, Integer::from(&f * scale)));
                    cand = &cand + &field.omega(i).scale(&q);
                }
                if eval(p, &cand).is_zero() {
                    return Ok(Some(cand));
                }
            }
        }
        // next assignment
        let mut i = 0;
        loop {
            if i == choice.len() {
                return Ok(None);
            }
            choice[i] += 1;
            if choice[i] < deg {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// Distinct eigenvalues of `g` in the field, with algebraic multiplicities.
///
/// Hints are checked exactly and used first; any remaining part of the
/// characteristic polynomial is searched numerically.
pub fn eigenvalues(g: &MatrixK, hints: &[FieldElement]) -> Result<Vec<(FieldElement, usize)>> {
    let field = g.field();
    let mut p: KPoly = trim(linalg::charpoly(g.entries()));
    let mut out: Vec<(FieldElement, usize)> = Vec::new();
    for h in hints {
        if !h.field().same(field) {
            return Err(Error::MixedFields);
        }
        if out.iter().any(|(a, _)| a == h) {
            continue;
        }
        let (rest, mult) = deflate(&p, h);
        if mult == 0 {
            return Err(Error::HintRejected(format!("{h} is not an eigenvalue")));
        }
        out.push((h.clone(), mult));
        p = rest;
    }
    if degree(&p) == 0 {
        return Ok(out);
    }
    let mut scale = Integer::from(1);
    for x in g.entries().iter().flatten() {
        scale.lcm_mut(&x.denominator());
    }
    let mut sqf = if degree(&p) > 1 { divrem(&p, &gcd(&p, &derivative(&p))).0 } else { p.clone() };
    sqf = monic(&sqf);
    while degree(&sqf) > 0 {
        let alpha = if degree(&sqf) == 1 {
            -&sqf[0]
        } else {
            match find_root(&sqf, &scale)? {
                Some(a) => a,
                None => return Err(Error::NotSplit { factor: format_poly(&sqf) }),
            }
        };
        let (rest, mult) = deflate(&p, &alpha);
        out.push((alpha.clone(), mult));
        p = rest;
        sqf = deflate(&sqf, &alpha).0;
    }
    if degree(&p) > 0 {
        return Err(Error::NotSplit { factor: format_poly(&monic(&p)) });
    }
    Ok(out)
}
