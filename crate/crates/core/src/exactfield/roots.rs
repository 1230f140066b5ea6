//! Certified isolation of the complex roots of a squarefree rational
//! polynomial.
//!
//! Roots are located with f64 Aberth iterations, polished by Aberth steps in
//! multiprecision, and certified with the inclusion discs
//! `r_i = n |f(z_i)| / |lc(f) prod_{j != i} (z_i - z_j)|`: when the discs are
//! pairwise disjoint each one holds exactly one root.

use num_complex::Complex64;
use rug::float::Round;
use rug::Float;

use super::poly::QPoly;
use crate::balls::{ComplexBall, RealEnclosure};
use crate::error::{Error, Result};

/// An isolated root: an enclosure plus whether it is known to be real.
#[derive(Clone, Debug)]
pub struct IsolatedRoot {
    pub ball: ComplexBall,
    pub real: bool,
}

/// Initial f64 approximations by the Aberth-Ehrlich method.
pub fn approximate_roots(p: &QPoly) -> Vec<Complex64> {
    let n = p.degree().unwrap_or(0);
    if n == 0 {
        return Vec::new();
    }
    let lead = p.lead().to_f64();
    let coeffs: Vec<f64> = p.coeffs().iter().map(|c| c.to_f64() / lead).collect();
    let bound = 1.0 + coeffs[..n].iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let ang = 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64 + 0.4;
            Complex64::from_polar(0.5 * bound, ang)
        })
        .collect();
    let eval = |x: Complex64| {
        let mut v = Complex64::new(1.0, 0.0);
        let mut d = Complex64::new(0.0, 0.0);
        for c in coeffs[..n].iter().rev() {
            d = d * x + v;
            v = v * x + c;
        }
        (v, d)
    };
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (f, df) = eval(z[i]);
            if f.norm() == 0.0 {
                continue;
            }
            let ratio = f / df;
            let mut s = Complex64::new(0.0, 0.0);
            for j in 0..n {
                if j != i {
                    s += 1.0 / (z[i] - z[j]);
                }
            }
            let w = ratio / (1.0 - ratio * s);
            if w.is_finite() {
                z[i] -= w;
                moved = moved.max(w.norm() / (1.0 + z[i].norm()));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

fn horner(p: &QPoly, z: &ComplexBall, prec: u32) -> (ComplexBall, ComplexBall) {
    let mut v = ComplexBall::zero(prec);
    let mut d = ComplexBall::zero(prec);
    for c in p.coeffs().iter().rev() {
        d = &(&d * z) + &v;
        v = &(&v * z) + &ComplexBall::from_rational(c, prec);
    }
    (v, d)
}

fn point(re: &Float, im: &Float, prec: u32) -> ComplexBall {
    ComplexBall::new(
        RealEnclosure::point(Float::with_val(prec, re)),
        RealEnclosure::point(Float::with_val(prec, im)),
    )
}

/// Isolates all roots of a squarefree polynomial at `prec` bits.
///
/// The result is ordered: real roots ascending, then complex roots in
/// conjugate pairs, each pair with the positive imaginary part first, pairs
/// ordered by real part then imaginary part.
pub fn isolate_roots(p: &QPoly, prec: u32) -> Result<Vec<IsolatedRoot>> {
    let n = p.degree().unwrap_or(0);
    if n == 0 {
        return Ok(Vec::new());
    }
    let work = prec + 32;
    if n == 1 {
        let r = -p.coeff(0) / p.coeff(1);
        return Ok(vec![IsolatedRoot { ball: ComplexBall::from_rational(&r, prec), real: true }]);
    }
    let seeds = approximate_roots(p);
    let mut z: Vec<(Float, Float)> =
        seeds.iter().map(|c| (Float::with_val(work, c.re), Float::with_val(work, c.im))).collect();
    // Aberth refinement in multiprecision; unlike plain Newton it cannot
    // collapse two approximations onto one root of a tight cluster.
    let tol = Float::with_val(work, 2f64.powi(-(work as i32) + 8));
    for _ in 0..(60 + work as usize / 4) {
        let mut moved = false;
        for i in 0..n {
            let b = point(&z[i].0, &z[i].1, work);
            let (f, df) = horner(p, &b, work);
            if f.contains_zero() || df.contains_zero() {
                continue;
            }
            let ratio = &f / &df;
            let mut s = ComplexBall::zero(work);
            for (j, zj) in z.iter().enumerate() {
                if j != i {
                    s = &s + &(&ComplexBall::one(work) / &(&b - &point(&zj.0, &zj.1, work)));
                }
            }
            let w = &ratio / &(&ComplexBall::one(work) - &(&ratio * &s));
            let (wr, wi) = w.center();
            if !wr.is_finite() || !wi.is_finite() {
                continue;
            }
            let step = Float::with_val(work, wr.hypot_ref(&wi));
            let scale = Float::with_val(work, z[i].0.hypot_ref(&z[i].1)) + 1u32;
            if step > Float::with_val(work, &tol * &scale) {
                moved = true;
            }
            z[i] = (Float::with_val(work, &z[i].0 - &wr), Float::with_val(work, &z[i].1 - &wi));
        }
        if !moved {
            break;
        }
    }
    let lead = ComplexBall::from_rational(&p.lead(), work);
    let mut radii = Vec::with_capacity(n);
    for i in 0..n {
        let zi = point(&z[i].0, &z[i].1, work);
        let (f, _) = horner(p, &zi, work);
        let mut den = lead.clone();
        for (j, zj) in z.iter().enumerate() {
            if j != i {
                den = &den * &(&zi - &point(&zj.0, &zj.1, work));
            }
        }
        let r = (&f.abs() / &den.abs()).upper().clone();
        let r = Float::with_val_round(work, &r * n as u32, Round::Up).0;
        if !r.is_finite() {
            return Err(Error::Precision { bits: prec, what: "root isolation failed (coincident approximations)".into() });
        }
        radii.push(r);
    }
    let disjoint = |i: usize, j: usize, conj_j: bool| -> bool {
        let enc = |x: &Float| RealEnclosure::point(x.clone());
        let bj = if conj_j { -enc(&z[j].1) } else { enc(&z[j].1) };
        let dx = &enc(&z[i].0) - &enc(&z[j].0);
        let dy = &enc(&z[i].1) - &bj;
        let dist = (&dx.sqr() + &dy.sqr()).sqrt();
        let reach = Float::with_val_round(work, &radii[i] + &radii[j], Round::Up).0;
        *dist.lower() > reach
    };
    for i in 0..n {
        for j in (i + 1)..n {
            if !disjoint(i, j, false) {
                return Err(Error::Precision { bits: prec, what: "root inclusion discs overlap".into() });
            }
        }
    }
    let mut roots: Vec<(IsolatedRoot, f64, f64)> = Vec::with_capacity(n);
    for i in 0..n {
        // the conjugate of the root in disc i lies in the mirrored disc; if
        // that disc meets no other disc, the root is its own conjugate
        let real = (0..n).all(|j| j == i || disjoint(i, j, true));
        let ball = ComplexBall::from_disc(&z[i].0, &z[i].1, &radii[i], real).with_prec(prec);
        roots.push((IsolatedRoot { ball, real }, z[i].0.to_f64(), if real { 0.0 } else { z[i].1.to_f64() }));
    }
    let mut reals: Vec<_> = roots.iter().filter(|r| r.0.real).cloned().collect();
    reals.sort_by(|a, b| a.1.total_cmp(&b.1));
    let mut uppers: Vec<_> = roots.iter().filter(|r| !r.0.real && r.2 > 0.0).cloned().collect();
    uppers.sort_by(|a, b| a.1.total_cmp(&b.1).then(a.2.total_cmp(&b.2)));
    let lowers: Vec<_> = roots.iter().filter(|r| !r.0.real && r.2 < 0.0).cloned().collect();
    if reals.len() + 2 * uppers.len() != n || lowers.len() != uppers.len() {
        return Err(Error::Precision { bits: prec, what: "could not pair complex conjugate roots".into() });
    }
    let mut out: Vec<IsolatedRoot> = reals.into_iter().map(|r| r.0).collect();
    for u in uppers {
        let partner = lowers
            .iter()
            .min_by(|a, b| {
                let da = (a.1 - u.1).abs() + (a.2 + u.2).abs();
                let db = (b.1 - u.1).abs() + (b.2 + u.2).abs();
                da.total_cmp(&db)
            })
            .expect("paired root");
        out.push(u.0);
        out.push(partner.0.clone());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::Rational;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn gaussian_integers_roots() {
        let roots = isolate_roots(&QPoly::from_i64(&[1, 0, 1]), 64).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(!roots[0].real);
        assert!(roots[0].ball.contains_rationals(&q("0"), &q("1")));
        assert!(roots[1].ball.contains_rationals(&q("0"), &q("-1")));
    }

    #[test]
    fn real_roots_are_sorted_and_exactly_real() {
        let roots = isolate_roots(&QPoly::from_i64(&[-2, 0, 1]), 128).unwrap();
        assert!(roots.iter().all(|r| r.real && r.ball.is_real()));
        assert!(roots[0].ball.re().is_negative());
        let sq = roots[1].ball.re().sqr();
        assert!(sq.contains_rational(&q("2")));
        assert!(sq.width() < Float::with_val(128, 1e-30));
    }

    #[test]
    fn cube_root_of_two_places() {
        let roots = isolate_roots(&QPoly::from_i64(&[-2, 0, 0, 1]), 96).unwrap();
        assert_eq!(roots.iter().filter(|r| r.real).count(), 1);
        assert!(roots[1].ball.im().is_positive());
        assert!(roots[2].ball.im().is_negative());
    }

    #[test]
    fn non_monic_polynomial() {
        // 3x^2 - 1
        let roots = isolate_roots(&QPoly::from_i64(&[-1, 0, 3]), 128).unwrap();
        let s = roots[1].ball.re().sqr();
        assert!(s.contains_rational(&q("1/3")));
    }

    #[test]
    fn clustered_roots_need_precision() {
        // (x - 1)(x - 1 - 2^-40) is squarefree but tight
        let eps = Rational::from((1, 1u64 << 40));
        let a = QPoly::linear_root(&q("1"));
        let b = QPoly::linear_root(&(q("1") + eps));
        let p = a.mul(&b);
        let roots = isolate_roots(&p, 128).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(roots.iter().all(|r| r.real));
    }
}
