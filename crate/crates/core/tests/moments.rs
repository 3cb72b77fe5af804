//! Moment functionals against independent oracles: Stirling-number moment
//! formulas, finite binomial sums, and direct root evaluation.

use krall_discrete::families::{FamilySpec, Params};
use krall_discrete::moments::{annihilator, charlier_target, orthogonality_report, MomentFunctional};
use krall_discrete::rational::{binomial, int, pow, rat};
use krall_discrete::sets::IndexSet;
use krall_discrete::{Polynomial, Rational};
use num_traits::Zero;

/// Stirling numbers of the second kind, `S(k, j)` for `j <= k`.
fn stirling2(k: usize) -> Vec<Rational> {
    let mut row = vec![int(1)];
    for n in 1..=k {
        let mut next = vec![int(0); n + 1];
        for j in 1..=n {
            let keep = if j < n { &row[j] * int(j as i64) } else { int(0) };
            next[j] = keep + &row[j - 1];
        }
        row = next;
    }
    row
}

/// `sum_j S(k, j) E[x^(j)]` from the falling-factorial moments.
fn from_factorial_moments(k: usize, falling: impl Fn(usize) -> Rational) -> Rational {
    stirling2(k).iter().enumerate().map(|(j, s)| s * falling(j)).sum()
}

fn rising(c: &Rational, j: usize) -> Rational {
    (0..j).map(|i| c + int(i as i64)).product()
}

#[test]
fn charlier_moments_are_touchard_polynomials() {
    for a in [int(1), rat(1, 2), rat(-2, 3)] {
        let rho = MomentFunctional::new(&FamilySpec::charlier(a.clone()).unwrap());
        for k in 0..=10 {
            assert_eq!(rho.moment(k), from_factorial_moments(k, |j| pow(&a, j as i64)), "a={a} k={k}");
        }
    }
}

#[test]
fn meixner_moments_match_negative_binomial() {
    for (a, c) in [(rat(1, 2), int(7)), (rat(1, 3), rat(9, 2)), (rat(1, 2), rat(-5, 2))] {
        let rho = MomentFunctional::new(&FamilySpec::meixner(a.clone(), c.clone()).unwrap());
        let t = &a / (int(1) - &a);
        for k in 0..=9 {
            let want = from_factorial_moments(k, |j| rising(&c, j) * pow(&t, j as i64));
            assert_eq!(rho.moment(k), want, "a={a} c={c} k={k}");
        }
    }
}

#[test]
fn krawtchouk_moments_match_finite_weight_sum() {
    // (1 + a)^(1 - N) sum_{x < N} C(N - 1, x) a^x x^k
    for (a, n) in [(int(1), 25u64), (int(2), 9), (rat(1, 3), 12)] {
        let rho = MomentFunctional::new(&FamilySpec::krawtchouk(a.clone(), int(n as i64)).unwrap());
        let total = pow(&(int(1) + &a), n as i64 - 1);
        for k in 0..=8 {
            let sum: Rational = (0..n)
                .map(|x| binomial(n - 1, x) * pow(&a, x as i64) * pow(&int(x as i64), k as i64))
                .sum();
            assert_eq!(rho.moment(k), sum / &total, "a={a} N={n} k={k}");
        }
    }
}

#[test]
fn meixner_moments_from_truncated_series_at_one_half() {
    // c = 1: the weight is 2^{-x}, so the first moments are 1 and 2 * sum x 2^{-x-1} = 1.
    let rho = MomentFunctional::new(&FamilySpec::meixner(rat(1, 2), int(1)).unwrap());
    let partial = |k: i64, terms: i64| -> Rational {
        (0..terms).map(|x| pow(&int(x), k) * pow(&rat(1, 2), x + 1)).sum()
    };
    for k in 0..=2 {
        let gap = rho.moment(k as usize) - partial(k, 80);
        assert!(gap > Rational::zero() && gap < rat(1, 1 << 60), "k={k}");
    }
    assert_eq!(rho.moment(1), int(1));
    assert_eq!(rho.moment(2), int(3));
}

#[test]
fn base_functional_orthogonalizes_its_family() {
    for spec in [
        FamilySpec::charlier(rat(-2, 3)).unwrap(),
        FamilySpec::meixner(rat(1, 3), rat(9, 2)).unwrap(),
        FamilySpec::krawtchouk(int(2), rat(31, 2)).unwrap(),
    ] {
        let rho = MomentFunctional::new(&spec);
        let report = orthogonality_report(&rho, &spec.polynomials(8), 8);
        assert!(report.all_pass(), "{:?}", report.witness);
    }
}

#[test]
fn christoffel_by_annihilator_kills_its_roots() {
    let rho = MomentFunctional::new(&FamilySpec::charlier(rat(1, 2)).unwrap());
    let f = IndexSet::new(vec![1, 3, 4]).unwrap();
    let r = annihilator(&f);
    for e in f.elements() {
        assert!(r.eval_int(*e).is_zero());
    }
    let moved = rho.christoffel(&r);
    for k in 0..6 {
        let p = Polynomial::monomial(int(1), k);
        assert_eq!(moved.value(&p), rho.value(&(&r * &p)));
    }
}

#[test]
fn charlier_target_is_the_conjecture_measure_translated() {
    // Translating the functional keeps the weight a^{x+s}/(x+s)!, so the
    // constant is 1; reading the translated weight as a^x/(x+s)! gives a^{f_k+1}.
    for a in [int(1), rat(1, 2), rat(-2, 3)] {
        for f in [vec![1], vec![2], vec![1, 4], vec![2, 3, 5]] {
            let f = IndexSet::new(f).unwrap();
            let fk1 = f.max_elem() + 1;
            let conj = MomentFunctional::new(&FamilySpec::charlier(a.clone()).unwrap()).christoffel(&annihilator(&f));
            let back = charlier_target(&a, &f).unwrap().shift(&int(-fk1));
            for k in 0..=8 {
                let p = Polynomial::monomial(int(1), k);
                assert_eq!(conj.value(&p), back.value(&p), "a={a} F={f} k={k}");
            }
        }
    }
}

#[test]
fn shift_round_trip_on_monomials() {
    let rho = MomentFunctional::from_params(Params::Meixner { a: rat(1, 3), c: rat(9, 2) });
    let there_and_back = rho.shift(&int(1)).shift(&int(-1));
    for k in 0..=8 {
        assert_eq!(there_and_back.moment(k), rho.moment(k));
    }
    // Charlier a = 1: <rho(x + 1), x> = <rho, x - 1> = a - 1.
    let ch = MomentFunctional::new(&FamilySpec::charlier(int(1)).unwrap());
    assert_eq!(ch.shift(&int(1)).moment(1), int(0));
}

#[test]
fn a_zero_limit_of_the_pairing_constants() {
    // With a = 0 the target is -m delta_{-m-1} and c_n = C(x, n); the pairing
    // constant reduces to (-1)^{n+m+1} m C(-n-1, m).
    let gen_binom = |top: i64, k: i64| -> Rational {
        (0..k).map(|i| int(top - i)).product::<Rational>() / (1..=k).map(int).product::<Rational>()
    };
    for m in 1..=5 {
        for n in 0..=6 {
            let lhs = int(-m) * gen_binom(-m - 1, n);
            let sign = if (n + m + 1) % 2 == 0 { 1 } else { -1 };
            assert_eq!(lhs, int(sign * m) * gen_binom(-n - 1, m), "m={m} n={n}");
        }
    }
}
