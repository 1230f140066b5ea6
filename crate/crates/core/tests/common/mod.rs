#![allow(dead_code)]

use logbound::exactfield::{linalg, FieldElement, NumberField};
use logbound::heights::SubspaceSpec;
use logbound::liematrix::MatrixK;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rug::{Integer, Rational};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn rational(r: &mut StdRng, span: i64) -> Rational {
    Rational::from((r.gen_range(-span..=span), r.gen_range(1..=3)))
}

pub fn element(r: &mut StdRng, k: &NumberField, span: i64) -> FieldElement {
    let c = (0..k.degree()).map(|_| rational(r, span)).collect();
    FieldElement::from_coeffs(k, c).unwrap()
}

pub fn nonzero_element(r: &mut StdRng, k: &NumberField, span: i64) -> FieldElement {
    loop {
        let x = element(r, k, span);
        if !x.is_zero() {
            return x;
        }
    }
}

pub fn vector(r: &mut StdRng, k: &NumberField, n: usize, span: i64) -> Vec<FieldElement> {
    loop {
        let v: Vec<_> = (0..n).map(|_| element(r, k, span)).collect();
        if v.iter().any(|x| !x.is_zero()) {
            return v;
        }
    }
}

pub fn matrix(r: &mut StdRng, k: &NumberField, m: usize, span: i64) -> MatrixK {
    let rows = (0..m).map(|_| (0..m).map(|_| element(r, k, span)).collect()).collect();
    MatrixK::new(k, rows).unwrap()
}

pub fn invertible(r: &mut StdRng, k: &NumberField, m: usize, span: i64) -> MatrixK {
    loop {
        let g = matrix(r, k, m, span);
        if !g.det().is_zero() {
            return g;
        }
    }
}

/// A random `d`-dimensional subspace of `K^n`.
pub fn subspace(r: &mut StdRng, k: &NumberField, n: usize, d: usize, span: i64) -> SubspaceSpec {
    loop {
        let cols: Vec<Vec<FieldElement>> = (0..d).map(|_| (0..n).map(|_| element(r, k, span)).collect()).collect();
        if let Ok(w) = SubspaceSpec::from_columns(k, n, &cols) {
            return w;
        }
    }
}

/// A random `rows x cols` matrix of full column rank.
pub fn full_rank(r: &mut StdRng, k: &NumberField, rows: usize, cols: usize, span: i64) -> Vec<Vec<FieldElement>> {
    loop {
        let z: Vec<Vec<FieldElement>> = (0..rows).map(|_| (0..cols).map(|_| element(r, k, span)).collect()).collect();
        if linalg::rank(&z) == cols {
            return z;
        }
    }
}

fn squarefree(n: &Integer) -> bool {
    let mut n = Integer::from(n.abs_ref());
    let mut p = Integer::from(2);
    while Integer::from(&p * &p) <= n {
        if n.is_divisible(&Integer::from(&p * &p)) {
            return false;
        }
        while n.is_divisible(&p) {
            n /= &p;
        }
        p += 1;
    }
    true
}

/// A random field of degree `1..=4` whose power basis is the maximal
/// order (the polynomial discriminant is squarefree).
pub fn field(r: &mut StdRng, max_degree: usize) -> NumberField {
    let deg = r.gen_range(1..=max_degree);
    loop {
        let mut coeffs: Vec<Integer> = (0..deg).map(|_| Integer::from(r.gen_range(-4..=4))).collect();
        coeffs.push(Integer::from(1));
        let Ok(k) = NumberField::new(&coeffs, None, None) else { continue };
        if deg == 1 || squarefree(k.discriminant()) {
            return k;
        }
    }
}

pub fn gaussian_or_rationals(gauss: bool) -> NumberField {
    if gauss {
        NumberField::gaussian()
    } else {
        NumberField::rationals()
    }
}
