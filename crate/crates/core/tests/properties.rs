use logbound::balls::{
    distance_by_projection, distance_to_subspace, hyperplane_distance, matrix_exp_numeric, verify_instance, RealEnclosure, VerifyStatus,
};
use logbound::boundengine::{assemble_bound, BoundMode};
use logbound::cli::{family_generate, Family, Instance};
use logbound::exactfield::{FieldElement, NumberField};
use logbound::heights::{height_projective, orthogonal_complement, subspace_height, HeightVariant, ProjectivePoint, SubspaceSpec};
use logbound::liematrix::{conjugate, exp_exact, GroupData, JordanBlock, JordanData, KPoint, LogEigenvalue, MatrixK, Side};
use proptest::prelude::*;
use rug::Rational;

const P: u32 = 128;

fn field(gauss: bool) -> NumberField {
    if gauss {
        NumberField::gaussian()
    } else {
        NumberField::rationals()
    }
}

fn elem(k: &NumberField, c: &(i64, i64, u32)) -> FieldElement {
    let q = |x: i64| Rational::from((x, c.2 as i64 + 1));
    if k.degree() == 1 {
        k.from_rational(&q(c.0))
    } else {
        FieldElement::from_coeffs(k, vec![q(c.0), q(c.1)]).unwrap()
    }
}

fn coeff() -> impl Strategy<Value = (i64, i64, u32)> {
    (-6i64..=6, -6i64..=6, 0u32..3)
}

fn square(k: &NumberField, m: usize, cs: &[(i64, i64, u32)]) -> MatrixK {
    let rows = (0..m).map(|i| (0..m).map(|j| elem(k, &cs[i * m + j])).collect()).collect();
    MatrixK::new(k, rows).unwrap()
}

fn enc(x: f64) -> RealEnclosure {
    let q = Rational::from_f64(x).unwrap();
    RealEnclosure::from_rational(&q, P)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn assembly_is_monotone(c in 1.0f64..1e6, b in 2.8f64..1e4, h in 0.0f64..50.0, db in 0.0f64..100.0, dh in 0.0f64..10.0, dc in 0.0f64..1e3, m in 1usize..4) {
        let base = assemble_bound(&enc(c), &enc(b), &enc(h), m);
        let worse = assemble_bound(&enc(c + dc), &enc(b + db), &enc(h + dh), m);
        prop_assert!(worse.lower() <= base.lower());
    }

    #[test]
    fn trace_is_conjugation_invariant(gauss in any::<bool>(), cs in prop::collection::vec(coeff(), 27)) {
        let k = field(gauss);
        let m = 3;
        let v = square(&k, m, &cs[..9]);
        prop_assume!(!v.det().is_zero());
        let j = square(&k, m, &cs[9..18]);
        let w = square(&k, m, &cs[18..]);
        let u = conjugate(&v, &j, Side::Outer).unwrap();
        let s = conjugate(&v, &w, Side::Inner).unwrap();
        prop_assert_eq!(u.mul(&w).unwrap().trace(), j.mul(&s).unwrap().trace());
    }

    #[test]
    fn scaling_leaves_heights_unchanged(gauss in any::<bool>(), cs in prop::collection::vec(coeff(), 4), l in coeff()) {
        let k = field(gauss);
        let p = ProjectivePoint::new(cs.iter().map(|c| elem(&k, c)).collect());
        prop_assume!(p.is_ok());
        let p = p.unwrap();
        let lam = elem(&k, &l);
        prop_assume!(!lam.is_zero());
        for v in [HeightVariant::H, HeightVariant::HHat] {
            let a = height_projective(&p, v, P).unwrap();
            let b = height_projective(&p.scaled(&lam).unwrap(), v, P).unwrap();
            prop_assert!(a.overlaps(&b));
        }
    }

    #[test]
    fn heights_are_ordered(gauss in any::<bool>(), cs in prop::collection::vec(coeff(), 3)) {
        let k = field(gauss);
        let p = ProjectivePoint::new(cs.iter().map(|c| elem(&k, c)).collect());
        prop_assume!(p.is_ok());
        let p = p.unwrap();
        let h = height_projective(&p, HeightVariant::H, P).unwrap();
        let hp = height_projective(&p, HeightVariant::HPrime, P).unwrap();
        let hh = height_projective(&p, HeightVariant::HHat, P).unwrap();
        prop_assert!(!h.is_negative());
        prop_assert!(h.lower() <= hp.upper());
        prop_assert!(h.lower() <= hh.upper());
        let cap = &h + &RealEnclosure::from_i64(3, P).ln().mul_2si(-1);
        prop_assert!(hh.lower() <= cap.upper());
    }

    #[test]
    fn complement_is_an_involution(gauss in any::<bool>(), d in 1usize..4, cs in prop::collection::vec(coeff(), 15)) {
        let k = field(gauss);
        let n = 5;
        let cols: Vec<Vec<FieldElement>> = (0..d).map(|j| (0..n).map(|i| elem(&k, &cs[(j * n + i) % cs.len()])).collect()).collect();
        let w = SubspaceSpec::from_columns(&k, n, &cols);
        prop_assume!(w.is_ok());
        let w = w.unwrap();
        let c = orthogonal_complement(&w).unwrap();
        prop_assert_eq!(c.dim(), n - d);
        prop_assert!(orthogonal_complement(&c).unwrap().same_span(&w));
    }

    #[test]
    fn distance_formulas_agree(gauss in any::<bool>(), y in prop::collection::vec(coeff(), 4), u in prop::collection::vec(coeff(), 4)) {
        let k = field(gauss);
        let normal: Vec<FieldElement> = y.iter().map(|c| elem(&k, c)).collect();
        prop_assume!(normal.iter().any(|x| !x.is_zero()));
        let w = orthogonal_complement(&SubspaceSpec::from_columns(&k, 4, std::slice::from_ref(&normal)).unwrap()).unwrap();
        let ub: Vec<_> = u.iter().map(|c| elem(&k, c).embed_primary(P).unwrap()).collect();
        let a = hyperplane_distance(&ub, &normal, P).unwrap();
        let b = distance_to_subspace(&ub, &w, P).unwrap();
        let c = distance_by_projection(&ub, &w, P).unwrap();
        prop_assert!(a.overlaps(&b));
        prop_assert!(a.overlaps(&c));
    }

    #[test]
    fn doubling_precision_never_widens(gauss in any::<bool>(), d in 1usize..4, cs in prop::collection::vec(coeff(), 12)) {
        let k = field(gauss);
        let cols: Vec<Vec<FieldElement>> = (0..d).map(|j| (0..4).map(|i| elem(&k, &cs[j * 4 + i])).collect()).collect();
        let w = SubspaceSpec::from_columns(&k, 4, &cols);
        prop_assume!(w.is_ok());
        let w = w.unwrap();
        let a = subspace_height(&w, HeightVariant::H, 128).unwrap();
        let b = subspace_height(&w, HeightVariant::H, 256).unwrap();
        prop_assert!(b.width() <= a.width());
        prop_assert!(a.overlaps(&b));
    }

    #[test]
    fn family_instances_round_trip(fam in prop_oneof![Just(Family::Remark10), Just(Family::Remark11)], k in 2u64..500) {
        let inst = family_generate(fam, k, P).unwrap();
        let text = inst.to_json();
        let back = Instance::from_json(&text).unwrap();
        prop_assert_eq!(back.to_json(), text);
        prop_assert_eq!(family_generate(fam, k, P).unwrap().to_json(), inst.to_json());
    }

    #[test]
    fn random_kpoints_are_never_violated(
        gauss in any::<bool>(),
        alphas in prop::collection::vec(coeff(), 2),
        branches in prop::collection::vec(-2i64..=2, 2),
        vs in prop::collection::vec(coeff(), 4),
        y in prop::collection::vec(coeff(), 4),
    ) {
        let k = field(gauss);
        let a: Vec<FieldElement> = alphas.iter().map(|c| elem(&k, c)).collect();
        prop_assume!(a.iter().all(|x| !x.is_zero()));
        let v = square(&k, 2, &vs);
        prop_assume!(!v.det().is_zero());
        let normal: Vec<FieldElement> = y.iter().map(|c| elem(&k, c)).collect();
        prop_assume!(normal.iter().any(|x| !x.is_zero()));
        let blocks = a.iter().zip(&branches).map(|(x, &b)| JordanBlock { eig: LogEigenvalue::new(x.clone(), b).unwrap(), size: 1 }).collect();
        let kp = KPoint::new(JordanData::new(blocks).unwrap(), v, GroupData::general_linear(&k, 2), P).unwrap();
        let w = orthogonal_complement(&SubspaceSpec::from_columns(&k, 4, &[normal]).unwrap()).unwrap();
        for mode in [BoundMode::Hyperplane, BoundMode::Theorem] {
            let r = verify_instance("random", &kp, &w, mode, 1, P).unwrap();
            prop_assert_ne!(r.status, VerifyStatus::Violated);
        }
    }

    #[test]
    fn exact_exponential_matches_the_series(gauss in any::<bool>(), alphas in prop::collection::vec(coeff(), 2), branch in -1i64..=1, vs in prop::collection::vec(coeff(), 4)) {
        let k = field(gauss);
        let a: Vec<FieldElement> = alphas.iter().map(|c| elem(&k, c)).collect();
        prop_assume!(a.iter().all(|x| !x.is_zero()));
        let v = square(&k, 2, &vs);
        prop_assume!(!v.det().is_zero());
        let blocks = vec![
            JordanBlock { eig: LogEigenvalue::new(a[0].clone(), branch).unwrap(), size: 1 },
            JordanBlock { eig: LogEigenvalue::new(a[1].clone(), 0).unwrap(), size: 1 },
        ];
        let kp = KPoint::new(JordanData::new(blocks).unwrap(), v, GroupData::general_linear(&k, 2), P).unwrap();
        let numeric = matrix_exp_numeric(kp.u_ball(), P);
        let exact = exp_exact(&kp).to_ball(P).unwrap();
        prop_assert!(numeric.overlaps(&exact));
    }
}
