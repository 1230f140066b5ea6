use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use rug::{Integer, Rational};

use super::element::FieldElement;
use super::linalg::{self, Mat};
use super::poly::QPoly;
use super::roots::{isolate_roots, IsolatedRoot};
use crate::balls::ComplexBall;
use crate::error::{Error, Result};

pub const MAX_DEGREE: usize = 6;

/// An archimedean place, given by one embedding of each conjugate pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Place {
    Real { embedding: usize },
    Complex { embedding: usize },
}

impl Place {
    pub fn embedding(&self) -> usize {
        match self {
            Place::Real { embedding } | Place::Complex { embedding } => *embedding,
        }
    }

    /// `n_v`: 1 for real places, 2 for complex ones.
    pub fn local_degree(&self) -> usize {
        match self {
            Place::Real { .. } => 1,
            Place::Complex { .. } => 2,
        }
    }
}

struct FieldData {
    minpoly: QPoly,
    degree: usize,
    /// Row `i` holds the power-basis coordinates of the integral basis
    /// element `omega_i`.
    basis: Mat<Rational>,
    basis_inv: Mat<Rational>,
    discriminant: Integer,
    /// Power-basis coordinates of `theta^k` for `k in 0..2D-1`.
    reductions: Vec<Vec<Rational>>,
    /// Traces of `theta^k` for `k in 0..2D-1`.
    power_traces: Vec<Rational>,
    /// Image of the generator under complex conjugation, when stable.
    conj_image: Option<Vec<Rational>>,
    /// Number of real embeddings.
    real_count: usize,
    /// Index of the embedding used to view the field inside the complex
    /// numbers.
    primary: usize,
    embedding_cache: Mutex<BTreeMap<u32, Arc<Vec<ComplexBall>>>>,
}

/// A number field `Q[x]/(f)` with an integral basis and its complex
/// embeddings.
///
/// Cheap to clone: clones share the same data.
#[derive(Clone)]
pub struct NumberField(Arc<FieldData>);

fn rationals(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| Rational::from(x)).collect()
}

impl NumberField {
    /// Builds a field from an integer monic irreducible polynomial (lowest
    /// coefficient first). Without an integral basis the power basis is used
    /// and assumed maximal.
    pub fn new(
        minpoly: &[Integer],
        integral_basis: Option<Mat<Rational>>,
        conjugation_image: Option<Vec<Rational>>,
    ) -> Result<Self> {
        let f = QPoly::from_integers(minpoly);
        let degree = f.degree().filter(|&d| d >= 1).ok_or(Error::NotMonic)?;
        if !f.is_monic() {
            return Err(Error::NotMonic);
        }
        if degree > MAX_DEGREE {
            return Err(Error::DegreeTooLarge(degree));
        }
        check_irreducible(&f)?;

        let basis = match integral_basis {
            Some(b) => {
                if b.len() != degree || b.iter().any(|r| r.len() != degree) {
                    return Err(Error::Dimension(format!("integral basis must be {degree}x{degree}")));
                }
                b
            }
            None => linalg::identity(degree, &Rational::new()),
        };
        let basis_inv = linalg::inverse(&basis).ok_or(Error::SingularIntegralBasis)?;

        let mut reductions: Vec<Vec<Rational>> = Vec::with_capacity(2 * degree);
        for k in 0..(2 * degree).max(2) {
            let v = if k < degree {
                let mut e = vec![Rational::new(); degree];
                e[k] = Rational::from(1);
                e
            } else {
                // theta^k = theta * theta^(k-1), folding the top coefficient
                let prev = &reductions[k - 1];
                let mut v = vec![Rational::new(); degree];
                for j in 1..degree {
                    v[j] = prev[j - 1].clone();
                }
                let top = &prev[degree - 1];
                for (j, vj) in v.iter_mut().enumerate() {
                    *vj -= Rational::from(top * &f.coeff(j));
                }
                v
            };
            reductions.push(v);
        }
        let power_traces = newton_power_sums(&f, 2 * degree);

        let mut data = FieldData {
            minpoly: f,
            degree,
            basis,
            basis_inv,
            discriminant: Integer::new(),
            reductions,
            power_traces,
            conj_image: None,
            real_count: 0,
            primary: 0,
            embedding_cache: Mutex::new(BTreeMap::new()),
        };

        let roots = isolate_roots(&data.minpoly, 64)?;
        data.real_count = roots.iter().filter(|r| r.real).count();
        data.primary = primary_index(&roots);
        let mut field = NumberField(Arc::new(data));

        field.check_ring()?;
        let disc = field.basis_discriminant();
        if *disc.denom() != 1 {
            return Err(Error::IntegralBasisNotRing(format!("discriminant {disc} is not an integer")));
        }
        let conj = field.resolve_conjugation(conjugation_image)?;
        let data = Arc::get_mut(&mut field.0).expect("fresh field is uniquely owned");
        data.discriminant = disc.numer().clone();
        data.conj_image = conj;
        Ok(field)
    }

    pub fn from_i64(minpoly: &[i64]) -> Result<Self> {
        let c: Vec<Integer> = minpoly.iter().map(|&x| Integer::from(x)).collect();
        Self::new(&c, None, None)
    }

    /// The rationals, as `Q[x]/(x)`.
    pub fn rationals() -> Self {
        Self::from_i64(&[0, 1]).expect("x is irreducible")
    }

    /// `Q(i)` with its ring of integers `Z[i]`.
    pub fn gaussian() -> Self {
        Self::from_i64(&[1, 0, 1]).expect("x^2 + 1 is irreducible")
    }

    /// `Q(sqrt(d))` for a squarefree `d`, with the maximal order's basis.
    pub fn quadratic(d: i64) -> Result<Self> {
        let f = [Integer::from(-d), Integer::new(), Integer::from(1)];
        if d.rem_euclid(4) == 1 {
            let half = Rational::from((1, 2));
            let basis = vec![rationals(&[1, 0]), vec![half.clone(), half]];
            Self::new(&f, Some(basis), None)
        } else {
            Self::new(&f, None, None)
        }
    }

    pub fn same(&self, o: &NumberField) -> bool {
        Arc::ptr_eq(&self.0, &o.0)
            || (self.0.minpoly == o.0.minpoly && self.0.basis == o.0.basis && self.0.conj_image == o.0.conj_image)
    }

    pub fn degree(&self) -> usize {
        self.0.degree
    }

    pub fn minpoly(&self) -> &QPoly {
        &self.0.minpoly
    }

    pub fn discriminant(&self) -> &Integer {
        &self.0.discriminant
    }

    pub fn integral_basis(&self) -> &Mat<Rational> {
        &self.0.basis
    }

    pub fn is_power_basis(&self) -> bool {
        self.0.basis == linalg::identity(self.0.degree, &Rational::new())
    }

    pub fn is_rational_field(&self) -> bool {
        self.0.degree == 1
    }

    pub fn conj_stable(&self) -> bool {
        self.0.conj_image.is_some()
    }

    pub fn conjugation_image(&self) -> Option<FieldElement> {
        self.0.conj_image.as_ref().map(|c| FieldElement::from_coeffs_unchecked(self, c.clone()))
    }

    pub fn primary_embedding(&self) -> usize {
        self.0.primary
    }

    pub fn real_embedding_count(&self) -> usize {
        self.0.real_count
    }

    /// Power-basis reduction of `theta^k`, `k < 2D`.
    pub(crate) fn reduction(&self, k: usize) -> &[Rational] {
        &self.0.reductions[k]
    }

    pub(crate) fn power_trace(&self, k: usize) -> &Rational {
        &self.0.power_traces[k]
    }

    pub(crate) fn basis_inverse(&self) -> &Mat<Rational> {
        &self.0.basis_inv
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::from_coeffs_unchecked(self, vec![Rational::new(); self.degree()])
    }

    pub fn one(&self) -> FieldElement {
        self.from_rational(&Rational::from(1))
    }

    pub fn int(&self, v: i64) -> FieldElement {
        self.from_rational(&Rational::from(v))
    }

    pub fn from_rational(&self, q: &Rational) -> FieldElement {
        let mut c = vec![Rational::new(); self.degree()];
        c[0] = q.clone();
        FieldElement::from_coeffs_unchecked(self, c)
    }

    /// The generator `theta`; for degree 1 this is the rational root.
    pub fn generator(&self) -> FieldElement {
        if self.degree() == 1 {
            return self.from_rational(&(-self.minpoly().coeff(0)));
        }
        let mut c = vec![Rational::new(); self.degree()];
        c[1] = Rational::from(1);
        FieldElement::from_coeffs_unchecked(self, c)
    }

    /// The integral basis element `omega_i`.
    pub fn omega(&self, i: usize) -> FieldElement {
        FieldElement::from_coeffs_unchecked(self, self.0.basis[i].clone())
    }

    /// Certified enclosures of the images of the generator under all `D`
    /// embeddings, ordered real ascending, then conjugate pairs.
    pub fn embeddings(&self, prec: u32) -> Result<Arc<Vec<ComplexBall>>> {
        if let Some(hit) = self.0.embedding_cache.lock().expect("cache lock").get(&prec) {
            return Ok(hit.clone());
        }
        let balls: Vec<ComplexBall> = if self.degree() == 1 {
            vec![ComplexBall::from_rational(&(-self.minpoly().coeff(0)), prec)]
        } else {
            isolate_roots(self.minpoly(), prec)?.into_iter().map(|r| r.ball).collect()
        };
        let balls = Arc::new(balls);
        self.0.embedding_cache.lock().expect("cache lock").insert(prec, balls.clone());
        Ok(balls)
    }

    /// Archimedean places: one per real embedding and one per conjugate
    /// pair (represented by the embedding with positive imaginary part).
    pub fn places(&self) -> Vec<Place> {
        let r = self.0.real_count;
        let mut out: Vec<Place> = (0..r).map(|i| Place::Real { embedding: i }).collect();
        out.extend((r..self.degree()).step_by(2).map(|i| Place::Complex { embedding: i }));
        out
    }

    fn check_ring(&self) -> Result<()> {
        let d = self.degree();
        let integral = |c: &[Rational]| c.iter().all(|x| *x.denom() == 1);
        for row in &self.0.basis_inv {
            if !integral(row) {
                return Err(Error::IntegralBasisNotRing("a power of the generator is not in the lattice".into()));
            }
        }
        for i in 0..d {
            for j in i..d {
                let p = &self.omega(i) * &self.omega(j);
                if !integral(&p.omega_coords()) {
                    return Err(Error::IntegralBasisNotRing(format!("product of basis elements {i} and {j}")));
                }
            }
        }
        Ok(())
    }

    fn basis_discriminant(&self) -> Rational {
        let d = self.degree();
        let gram: Mat<Rational> =
            (0..d).map(|i| (0..d).map(|j| (&self.omega(i) * &self.omega(j)).trace()).collect()).collect();
        linalg::det(&gram)
    }

    fn resolve_conjugation(&self, given: Option<Vec<Rational>>) -> Result<Option<Vec<Rational>>> {
        let d = self.degree();
        let primary_real = self.0.primary < self.0.real_count;
        let Some(c) = given else {
            if primary_real {
                return Ok(Some(self.generator().coeffs().to_vec()));
            }
            if d == 2 {
                // the other root of x^2 + a1 x + a0 is -a1 - theta
                let a1 = self.minpoly().coeff(1);
                return Ok(Some(vec![(-a1), Rational::from(-1)]));
            }
            return Ok(None);
        };
        if c.len() != d {
            return Err(Error::InvalidConjugation(format!("image must have {d} coefficients")));
        }
        let img = FieldElement::from_coeffs_unchecked(self, c.clone());
        let f_at = img.eval_rational_poly(self.minpoly());
        if !f_at.is_zero() {
            return Err(Error::InvalidConjugation("image is not a root of the minimal polynomial".into()));
        }
        if img.compose(&img) != self.generator() {
            return Err(Error::InvalidConjugation("map is not an involution".into()));
        }
        for prec in [64u32, 128, 256] {
            let theta = self.embeddings(prec)?[self.0.primary].clone();
            let image = img.embed(self.0.primary, prec)?;
            if image.overlaps(&theta.conj()) {
                return Ok(Some(c));
            }
        }
        Err(Error::InvalidConjugation("image does not match complex conjugation of the generator".into()))
    }
}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NumberField({})", self.minpoly())
    }
}

impl PartialEq for NumberField {
    fn eq(&self, o: &Self) -> bool {
        self.same(o)
    }
}

impl Eq for NumberField {}

fn primary_index(roots: &[IsolatedRoot]) -> usize {
    let real = roots.iter().filter(|r| r.real).count();
    if real > 0 {
        return real - 1;
    }
    let mut best = 0;
    for (i, r) in roots.iter().enumerate() {
        let (bre, bim) = roots[best].ball.center();
        let (re, im) = r.ball.center();
        if im > bim || (im == bim && re > bre) {
            best = i;
        }
    }
    best
}

/// Power sums `p_k = sum of theta_i^k` for `k < count` via Newton's
/// identities.
fn newton_power_sums(f: &QPoly, count: usize) -> Vec<Rational> {
    let d = f.degree().unwrap_or(0);
    let mut p = vec![Rational::new(); count];
    if count > 0 {
        p[0] = Rational::from(d);
    }
    for k in 1..count {
        let mut s = Rational::new();
        for i in 1..=(k - 1).min(d) {
            s += Rational::from(&f.coeff(d - i) * &p[k - i]);
        }
        if k <= d {
            s += Rational::from(&f.coeff(d - k) * Integer::from(k));
        }
        p[k] = -s;
    }
    p
}

/// Rejects reducible polynomials by trial division with candidate factors
/// read off from products of subsets of the numerical roots.
fn check_irreducible(f: &QPoly) -> Result<()> {
    let d = f.degree().unwrap_or(0);
    if d <= 1 {
        return Ok(());
    }
    let g = f.gcd(&f.derivative());
    if g.degree() != Some(0) {
        return Err(Error::Reducible { factor: g.to_string() });
    }
    let prec = 192;
    let roots = isolate_roots(f, prec)?;
    for mask in 1u32..(1 << d) - 1 {
        let size = mask.count_ones() as usize;
        if size > d / 2 {
            continue;
        }
        let mut prod = vec![ComplexBall::one(prec)];
        for (i, r) in roots.iter().enumerate() {
            if mask & (1 << i) == 0 {
                continue;
            }
            // multiply by (x - r)
            let mut next = vec![ComplexBall::zero(prec); prod.len() + 1];
            for (k, c) in prod.iter().enumerate() {
                next[k + 1] = &next[k + 1] + c;
                next[k] = &next[k] - &(c * &r.ball);
            }
            prod = next;
        }
        let mut coeffs = Vec::with_capacity(prod.len());
        let mut ok = true;
        for c in &prod {
            let candidate = c.re().mid().to_integer().unwrap_or_default();
            let q = Rational::from(candidate);
            if !c.contains_rationals(&q, &Rational::new()) {
                ok = false;
                break;
            }
            coeffs.push(q);
        }
        if !ok {
            continue;
        }
        let cand = QPoly::new(coeffs);
        if f.rem(&cand).is_zero() {
            return Err(Error::Reducible { factor: cand.to_string() });
        }
    }
    Ok(())
}
