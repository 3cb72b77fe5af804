//! Invariants as properties over random inputs.

use krall_discrete::casoratian::{CasoratianPlan, EigenReport};
use krall_discrete::diffop::DiffOp;
use krall_discrete::families::{verify_duality, Family, FamilySpec};
use krall_discrete::moments::{residue_sum, MomentFunctional};
use krall_discrete::rational::{int, rat};
use krall_discrete::sets::{
    involution_i, krawtchouk_canonical_split, order_r, r_from_single_block, r_of, transform_j, IndexSet,
};
use krall_discrete::verify::{emit_report, parse_report, verify_conjecture, CheckName, Format, VerifyConfig};
use krall_discrete::{Polynomial, Rational};
use proptest::collection::{btree_set, vec};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=6).prop_map(|(n, d)| rat(n, d))
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    rational().prop_filter("nonzero", |r| *r != int(0))
}

fn poly(max_deg: usize) -> impl Strategy<Value = Polynomial> {
    vec(rational(), 0..=max_deg + 1).prop_map(Polynomial::new)
}

fn index_set(top: i64, max_len: usize) -> impl Strategy<Value = IndexSet> {
    btree_set(1..=top, 1..=max_len).prop_map(|s| IndexSet::new(s.into_iter().collect()).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn involution_laws(f in index_set(16, 10)) {
        let g = involution_i(&f).unwrap();
        prop_assert_eq!(involution_i(&g).unwrap(), f.clone());
        prop_assert_eq!(g.max_elem(), f.max_elem());
        prop_assert_eq!(g.len() as i64, f.max_elem() - f.len() as i64 + 1);
        prop_assert_eq!(r_from_single_block(&g), r_of(&f));
    }

    #[test]
    fn transform_j_cardinality(f in index_set(12, 8), h in 1i64..=5) {
        let j = transform_j(&f, h).unwrap();
        prop_assert_eq!(j.len() as i64, f.max_elem() + h - f.len() as i64);
        prop_assert!(j.elements().iter().all(|&e| e >= 0 && !f.contains(e + 1)));
    }

    #[test]
    fn double_reflection_translates_to_one(f in index_set(14, 8)) {
        let lo = f.elements()[0];
        let moved = IndexSet::new(f.elements().iter().map(|e| e - lo + 1).collect()).unwrap();
        prop_assert_eq!(f.reflect().reflect(), moved);
        prop_assert_eq!(f.reflect().max_elem(), f.max_elem() + 1 - f.elements()[0]);
    }

    #[test]
    fn residue_sums(points in btree_set(-30i64..=30, 1..=6), lower in vec(rational(), 0..6)) {
        let pts: Vec<Rational> = points.into_iter().map(|p| rat(p, 2)).collect();
        let k = pts.len();
        for d in 0..k {
            let mut c: Vec<Rational> = lower.iter().take(d).cloned().collect();
            c.resize(d, int(0));
            c.push(int(1));
            let want = if d + 1 == k { int(1) } else { int(0) };
            prop_assert_eq!(residue_sum(&pts, &Polynomial::new(c)).unwrap(), want);
        }
    }

    #[test]
    fn antidifference_inverts_nabla(q in poly(6)) {
        let p = q.antidifference();
        prop_assert_eq!(DiffOp::nabla().apply(&p), q);
        prop_assert_eq!(p.eval_int(-1), int(0));
    }

    #[test]
    fn charlier_duality(a in nonzero_rational(), n in 0usize..=7, m in 0usize..=7) {
        prop_assert!(verify_duality(&a, n, m));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn christoffel_and_shift_compose(a in nonzero_rational(), r in poly(3), p in poly(4), s in -4i64..=4, t in -4i64..=4) {
        let rho = MomentFunctional::new(&FamilySpec::charlier(a).unwrap());
        prop_assert_eq!(rho.christoffel(&r).value(&p), rho.value(&(&r * &p)));
        prop_assert_eq!(rho.shift(&int(s)).shift(&int(t)).value(&p), rho.shift(&int(s + t)).value(&p));
        prop_assert_eq!(rho.shift(&int(s)).value(&p), rho.value(&p.shift(&int(-s))));
    }

    #[test]
    fn canonical_split_alternatives_share_the_weight(roots in btree_set(1i64..=40, 1..=4)) {
        let n = 50;
        let f1 = IndexSet::new(roots.into_iter().collect()).unwrap();
        let split = krawtchouk_canonical_split(&f1, &IndexSet::empty(), n).unwrap();
        let weight = |p: &IndexSet, q: &IndexSet| -> Vec<i64> {
            let mut zeros: Vec<i64> = p.elements().to_vec();
            zeros.extend(q.elements().iter().map(|f| n - 1 - f));
            zeros.sort_unstable();
            zeros
        };
        let base = weight(&f1, &IndexSet::empty());
        for alt in &split.alternatives {
            prop_assert_eq!(weight(&alt.f1, &alt.f2), base.clone());
            prop_assert_eq!(alt.r, order_r(&alt.f1, Some(&alt.f2)));
        }
        prop_assert!(2 * split.canonical.f1.max_elem() < n && 2 * split.canonical.f2.max_elem() < n);
        prop_assert!(split.alternatives.contains(&split.canonical));
    }
}

fn small_charlier_config() -> impl Strategy<Value = VerifyConfig> {
    (prop::sample::select(vec![int(1), rat(1, 2), rat(-2, 3), int(3)]), index_set(4, 2)).prop_map(|(a, f)| {
        let mut cfg = VerifyConfig::new(Family::Charlier, a);
        cfg.f1 = f;
        cfg.n_max = 5;
        cfg.checks = vec![CheckName::SetTransforms, CheckName::Eigenfunction, CheckName::Order];
        cfg
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn reports_are_deterministic_and_round_trip(cfg in small_charlier_config()) {
        let one = emit_report(&verify_conjecture(&cfg), Format::Json);
        let two = emit_report(&verify_conjecture(&cfg), Format::Json);
        prop_assert_eq!(&one, &two);
        let parsed = parse_report(&one).unwrap();
        prop_assert_eq!(emit_report(&parsed, Format::Json), one);
    }

    #[test]
    fn perturbed_operator_breaks_eigenfunctions(
        a in prop::sample::select(vec![int(1), rat(1, 2), rat(-2, 3)]),
        g in index_set(5, 3),
        pick in any::<prop::sample::Index>(),
        k in 0usize..=5,
    ) {
        let plan = CasoratianPlan::from_blocks(FamilySpec::charlier(a).unwrap(), &[(0, g.elements())]).unwrap();
        let h = pick.index(plan.m());
        let k = k.min(plan.rows()[h].r.degree().unwrap_or(0));
        let mutant = plan.with_perturbed_r(h, k, &int(1));
        let one = Polynomial::one();
        let qs = plan.qs(5).unwrap();
        prop_assume!(mutant.omega().unwrap() != plan.omega().unwrap() || mutant.qs(5).unwrap() != qs);
        let rep = EigenReport::check(&mutant.dq(&one).unwrap(), &mutant.p_s(&one).unwrap(), &qs);
        let caught = matches!(&rep.witness, Some((_, res)) if !res.is_zero());
        // Omega = 0 identically fails the nonvanishing check instead.
        let degenerate = mutant.omega().unwrap().is_zero();
        prop_assert!(caught || degenerate);
        // A consistent mutation keeps the eigenfunction identity.
        if !degenerate {
            prop_assert!(mutant.eigen_report(&one, 5).unwrap().all_pass());
        }
    }
}
