//! Charlier, Meixner and Krawtchouk polynomials: explicit formulas,
//! three-term recurrences, second-order operators and D-operator data.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::diffop::DiffOp;
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::rational::{self, as_integer, binomial, factorial, int, pow, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Charlier,
    Meixner,
    Krawtchouk,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Charlier => "charlier",
            Family::Meixner => "meixner",
            Family::Krawtchouk => "krawtchouk",
        })
    }
}

impl std::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "charlier" => Ok(Family::Charlier),
            "meixner" => Ok(Family::Meixner),
            "krawtchouk" => Ok(Family::Krawtchouk),
            other => Err(Error::Parse(format!("unknown family {other:?}"))),
        }
    }
}

/// Family parameters without validation. Used directly for the `R_j`
/// generators, whose parameters (such as `2 - c`) may sit on excluded values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Params {
    Charlier { a: Rational },
    Meixner { a: Rational, c: Rational },
    Krawtchouk { a: Rational, n: Rational },
}

/// `(z)_k = z (z+1) ... (z+k-1)`.
fn pochhammer(z: &Rational, k: usize) -> Rational {
    (0..k).fold(Rational::one(), |acc, i| acc * (z + int(i as i64)))
}

impl Params {
    pub fn family(&self) -> Family {
        match self {
            Params::Charlier { .. } => Family::Charlier,
            Params::Meixner { .. } => Family::Meixner,
            Params::Krawtchouk { .. } => Family::Krawtchouk,
        }
    }

    /// `p_n` from the explicit hypergeometric-type sum.
    pub fn polynomial(&self, n: usize) -> Polynomial {
        match self {
            Params::Charlier { a } => charlier(a, n),
            Params::Meixner { a, c } => meixner(a, c, n),
            Params::Krawtchouk { a, n: big_n } => krawtchouk(a, big_n, n),
        }
    }

    /// `(a_{n+1}, b_n, c_n)` in `x p_n = a_{n+1} p_{n+1} + b_n p_n + c_n p_{n-1}`,
    /// as functions of any integer `n`.
    pub fn recurrence_coeffs(&self, n: i64) -> (Rational, Rational, Rational) {
        let nn = int(n);
        match self {
            Params::Charlier { a } => (int(n + 1), &nn + a, a.clone()),
            Params::Meixner { a, c } => meixner_recurrence(a, c, n),
            Params::Krawtchouk { a, n: big_n } => {
                meixner_recurrence(&-a, &(int(1) - big_n), n)
            }
        }
    }

    /// The operator `D_p` with `D_p(p_n) = n p_n`.
    pub fn second_order_operator(&self) -> DiffOp {
        let x = Polynomial::x;
        let c = |r: &Rational| Polynomial::constant(r.clone());
        match self {
            Params::Charlier { a } => DiffOp::from_terms([
                (-1, -x()),
                (0, &x() + &c(a)),
                (1, c(&-a)),
            ]),
            Params::Meixner { a, c: cc } => {
                let s0 = -(&x().scale(&(int(1) + a)) + &c(&(a * cc)));
                let s1 = (&x() + &c(cc)).scale(a);
                DiffOp::from_terms([(-1, x()), (0, s0), (1, s1)]).scale(&(a - int(1)).recip())
            }
            Params::Krawtchouk { a, n } => {
                let xn = &x() + &c(&(int(1) - n));
                let s0 = &x() - &xn.scale(a);
                DiffOp::from_terms([(-1, -x()), (0, s0), (1, xn.scale(a))])
                    .scale(&(int(1) + a).recip())
            }
        }
    }
}

/// `c_n^a(x) = (1/n!) sum_j (-a)^{n-j} C(n,j) C(x,j) j!`.
fn charlier(a: &Rational, n: usize) -> Polynomial {
    let mut acc = Polynomial::zero();
    for j in 0..=n {
        let coef = pow(&-a, (n - j) as i64) * binomial(n as u64, j as u64);
        acc += &Polynomial::falling_factorial(j, &Rational::zero()).scale(&coef);
    }
    acc.scale(&factorial(n as u64).recip())
}

/// `m_n^{a,c}(x) = (a/(1-a))^n sum_j a^{-j} C(x,j) C(-x-c, n-j)`.
fn meixner(a: &Rational, c: &Rational, n: usize) -> Polynomial {
    let mut acc = Polynomial::zero();
    for j in 0..=n {
        let k = n - j;
        // C(-x-c, k) = (-1)^k (x+c)_k / k!
        let tail = Polynomial::rising_factorial(k, c)
            .scale(&(pow(&int(-1), k as i64) / factorial(k as u64)));
        let term = &Polynomial::binomial_x(j) * &tail;
        acc += &term.scale(&pow(a, -(j as i64)));
    }
    acc.scale(&pow(&(a / (int(1) - a)), n as i64))
}

/// `k_n^{a,N}(x) = (1/n!) sum_j (-1)^{n+j} ((1+a)/a)^{j-n} (-n)_j (-x)_j (N-n)_{n-j} / j!`.
fn krawtchouk(a: &Rational, big_n: &Rational, n: usize) -> Polynomial {
    let ratio = (int(1) + a) / a;
    let mut acc = Polynomial::zero();
    for j in 0..=n {
        let coef = pow(&int(-1), (n + j) as i64)
            * pow(&ratio, j as i64 - n as i64)
            * pochhammer(&int(-(n as i64)), j)
            * pochhammer(&(big_n - int(n as i64)), n - j)
            / factorial(j as u64);
        // (-x)_j = (-1)^j x (x-1) ... (x-j+1)
        let rising = Polynomial::falling_factorial(j, &Rational::zero())
            .scale(&pow(&int(-1), j as i64));
        acc += &rising.scale(&coef);
    }
    acc.scale(&factorial(n as u64).recip())
}

fn meixner_recurrence(a: &Rational, c: &Rational, n: i64) -> (Rational, Rational, Rational) {
    let nn = int(n);
    let am1 = a - int(1);
    let b = -((a + int(1)) * &nn + a * c) / &am1;
    let cn = a * (&nn + c - int(1)) / (&am1 * &am1);
    (int(n + 1), b, cn)
}

/// A validated family instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    params: Params,
}

impl FamilySpec {
    pub fn charlier(a: Rational) -> Result<Self> {
        if a.is_zero() {
            return Err(Error::InvalidParameter("Charlier requires a != 0".into()));
        }
        Ok(FamilySpec { params: Params::Charlier { a } })
    }

    pub fn meixner(a: Rational, c: Rational) -> Result<Self> {
        if a.is_zero() || a.is_one() {
            return Err(Error::InvalidParameter("Meixner requires a not in {0, 1}".into()));
        }
        if c.is_integer() && !c.is_positive() {
            return Err(Error::InvalidParameter(format!(
                "Meixner requires c not in {{0, -1, -2, ...}}, got c = {c}"
            )));
        }
        Ok(FamilySpec { params: Params::Meixner { a, c } })
    }

    pub fn krawtchouk(a: Rational, n: Rational) -> Result<Self> {
        if a.is_zero() || a == int(-1) {
            return Err(Error::InvalidParameter("Krawtchouk requires a not in {0, -1}".into()));
        }
        Ok(FamilySpec { params: Params::Krawtchouk { a, n } })
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn family(&self) -> Family {
        self.params.family()
    }

    pub fn a(&self) -> &Rational {
        match &self.params {
            Params::Charlier { a } | Params::Meixner { a, .. } | Params::Krawtchouk { a, .. } => a,
        }
    }

    /// `Some(N)` for Krawtchouk with positive integer `N`: only `p_0..p_{N-1}`
    /// are orthogonal.
    pub fn finite_horizon(&self) -> Option<i64> {
        match &self.params {
            Params::Krawtchouk { n, .. } => as_integer(n).filter(|&k| k > 0),
            _ => None,
        }
    }

    /// Transcendental normalization dropped from `<rho, 1>`, for display.
    pub fn unit_tag(&self) -> String {
        match &self.params {
            Params::Charlier { a } => format!("e^({a})"),
            Params::Meixner { c, .. } => format!("Gamma({c})"),
            Params::Krawtchouk { .. } => "1".into(),
        }
    }

    pub fn polynomial(&self, n: usize) -> Polynomial {
        self.params.polynomial(n)
    }

    /// `p_0, ..., p_{n_max}` from the explicit formula.
    pub fn polynomials(&self, n_max: usize) -> Vec<Polynomial> {
        (0..=n_max).map(|n| self.polynomial(n)).collect()
    }

    /// `p_0, ..., p_{n_max}` from the three-term recurrence with `p_0 = 1`.
    pub fn polynomials_by_recurrence(&self, n_max: usize) -> Vec<Polynomial> {
        let mut out = vec![Polynomial::one()];
        let mut prev = Polynomial::zero();
        for n in 0..n_max {
            let (an1, bn, cn) = self.recurrence_coeffs(n as i64);
            let cur = out[n].clone();
            let next = (&(&(&Polynomial::x() * &cur) - &cur.scale(&bn)) - &prev.scale(&cn))
                .scale(&an1.recip());
            prev = cur;
            out.push(next);
        }
        out
    }

    pub fn recurrence_coeffs(&self, n: i64) -> (Rational, Rational, Rational) {
        self.params.recurrence_coeffs(n)
    }

    pub fn second_order_operator(&self) -> DiffOp {
        self.params.second_order_operator()
    }

    /// The D-operators in the row order used by the determinant layouts.
    pub fn d_operator_specs(&self) -> Vec<DOperatorSpec> {
        let one = int(1);
        match &self.params {
            Params::Charlier { a } => vec![DOperatorSpec {
                label: "nabla".into(),
                epsilon: one.clone(),
                kind: Difference::Backward,
                provider: RProvider::new(Params::Charlier { a: -a }),
                eta: one.clone(),
                kappa: one,
            }],
            Params::Meixner { a, c } => vec![
                DOperatorSpec {
                    label: "D1".into(),
                    epsilon: a / (&one - a),
                    kind: Difference::Forward,
                    provider: RProvider::new(Params::Meixner { a: a.recip(), c: int(2) - c }),
                    eta: int(-1),
                    kappa: c - &one,
                },
                DOperatorSpec {
                    label: "D2".into(),
                    epsilon: (&one - a).recip(),
                    kind: Difference::Backward,
                    provider: RProvider::new(Params::Meixner { a: a.clone(), c: int(2) - c }),
                    eta: one.clone(),
                    kappa: one,
                },
            ],
            Params::Krawtchouk { a, n } => vec![
                DOperatorSpec {
                    label: "D1".into(),
                    epsilon: (&one + a).recip(),
                    kind: Difference::Backward,
                    provider: RProvider::new(Params::Krawtchouk { a: a.clone(), n: -n }),
                    eta: one.clone(),
                    kappa: one.clone(),
                },
                DOperatorSpec {
                    label: "D2".into(),
                    epsilon: -a / (&one + a),
                    kind: Difference::Forward,
                    provider: RProvider::new(Params::Krawtchouk { a: a.recip(), n: -n }),
                    eta: int(-1),
                    kappa: -n,
                },
            ],
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.params {
            Params::Charlier { a } => write!(f, "Charlier(a={a})"),
            Params::Meixner { a, c } => write!(f, "Meixner(a={a}, c={c})"),
            Params::Krawtchouk { a, n } => write!(f, "Krawtchouk(a={a}, N={n})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Difference {
    /// `Delta = s_1 - s_0`
    Forward,
    /// `nabla = s_0 - s_{-1}`
    Backward,
}

/// `R_j(x) = p_j(-x-1)` for a family with shifted parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RProvider {
    params: Params,
}

impl RProvider {
    pub fn new(params: Params) -> Self {
        RProvider { params }
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn r(&self, j: usize) -> Polynomial {
        self.params.polynomial(j).compose_linear(&int(-1), &int(-1))
    }
}

/// A D-operator with constant sequence `epsilon`, realized as
/// `epsilon * Delta` or `epsilon * nabla`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DOperatorSpec {
    pub label: String,
    pub epsilon: Rational,
    pub kind: Difference,
    pub provider: RProvider,
    pub eta: Rational,
    pub kappa: Rational,
}

impl DOperatorSpec {
    pub fn realization(&self) -> DiffOp {
        let base = match self.kind {
            Difference::Forward => DiffOp::delta(),
            Difference::Backward => DiffOp::nabla(),
        };
        base.scale(&self.epsilon)
    }

    pub fn r(&self, j: usize) -> Polynomial {
        self.provider.r(j)
    }

    /// `eta * j + kappa`.
    pub fn shifted_index(&self, j: usize) -> Rational {
        &self.eta * int(j as i64) + &self.kappa
    }

    /// `sum_{j=1}^n (-1)^{j+1} epsilon^j p_{n-j}` given `p_0..p_n`.
    pub fn lowering_series(&self, ps: &[Polynomial], n: usize) -> Polynomial {
        let mut acc = Polynomial::zero();
        for j in 1..=n {
            let sign = if j % 2 == 1 { int(1) } else { int(-1) };
            acc += &ps[n - j].scale(&(sign * pow(&self.epsilon, j as i64)));
        }
        acc
    }

    /// Residual of the recurrence satisfied by `R_j` on the integer `n`:
    /// `eps a_{n+1} R(n+1) - b_n R(n) + (c_n/eps) R(n-1) - (eta j + kappa) R(n)`.
    pub fn r_recurrence_residual(&self, family: &FamilySpec, j: usize, n: i64) -> Rational {
        let r = self.r(j);
        let (an1, bn, cn) = family.recurrence_coeffs(n);
        let eps = &self.epsilon;
        eps * an1 * r.eval_int(n + 1) - bn * r.eval_int(n) + cn / eps * r.eval_int(n - 1)
            - self.shifted_index(j) * r.eval_int(n)
    }
}

/// Charlier duality `(-1)^m a^m n! c_n^a(m) = (-1)^n a^n m! c_m^a(n)`.
pub fn verify_duality(a: &Rational, n: usize, m: usize) -> bool {
    let p = Params::Charlier { a: a.clone() };
    let lhs = pow(&-a, m as i64) * factorial(n as u64) * p.polynomial(n).eval_int(m as i64);
    let rhs = pow(&-a, n as i64) * factorial(m as u64) * p.polynomial(m).eval_int(n as i64);
    lhs == rhs
}

/// Parses a parameter value, mapping errors onto the offending name.
pub fn parse_param(name: &str, s: &str) -> Result<Rational> {
    rational::parse(s).map_err(|e| Error::Parse(format!("{name}: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn sample_specs() -> Vec<FamilySpec> {
        let mut v = Vec::new();
        for a in [int(1), rat(1, 2), rat(-2, 3)] {
            v.push(FamilySpec::charlier(a).unwrap());
        }
        for (a, c) in [(rat(1, 2), int(7)), (rat(1, 3), rat(9, 2)), (int(3), rat(-1, 2))] {
            v.push(FamilySpec::meixner(a, c).unwrap());
        }
        for (a, n) in [(int(1), int(25)), (int(2), rat(31, 2)), (rat(-1, 3), int(-4))] {
            v.push(FamilySpec::krawtchouk(a, n).unwrap());
        }
        v
    }

    #[test]
    fn low_degree_charlier() {
        let a = rat(3, 5);
        let f = FamilySpec::charlier(a.clone()).unwrap();
        assert_eq!(f.polynomial(0), Polynomial::one());
        assert_eq!(f.polynomial(1), Polynomial::new(vec![-a, int(1)]));
    }

    #[test]
    fn explicit_matches_recurrence() {
        for f in sample_specs() {
            let rec = f.polynomials_by_recurrence(12);
            for (n, q) in rec.iter().enumerate() {
                assert_eq!(&f.polynomial(n), q, "{f} n={n}");
                assert_eq!(q.degree(), Some(n));
            }
        }
    }

    #[test]
    fn second_order_eigen() {
        for f in sample_specs() {
            let d = f.second_order_operator();
            assert_eq!(d.genre().unwrap(), (-1, 1));
            for n in 0..=8 {
                let p = f.polynomial(n);
                assert_eq!(d.apply(&p), p.scale(&int(n as i64)), "{f} n={n}");
            }
        }
    }

    #[test]
    fn charlier_operator_coefficients() {
        let d = FamilySpec::charlier(int(2)).unwrap().second_order_operator();
        assert_eq!(d.coeff(-1), Polynomial::from_ints(&[0, -1]));
        assert_eq!(d.coeff(0), Polynomial::from_ints(&[2, 1]));
        assert_eq!(d.coeff(1), Polynomial::from_ints(&[-2]));
    }

    #[test]
    fn krawtchouk_is_meixner() {
        for (a, n) in [(int(1), int(25)), (rat(2, 7), rat(-3, 2))] {
            let k = Params::Krawtchouk { a: a.clone(), n: n.clone() };
            let m = Params::Meixner { a: -a, c: int(1) - n };
            for j in 0..=6 {
                assert_eq!(k.polynomial(j), m.polynomial(j));
            }
        }
    }

    #[test]
    fn d_operators_realize_lowering_series() {
        for f in sample_specs() {
            let ps = f.polynomials(6);
            for dop in f.d_operator_specs() {
                let d = dop.realization();
                for n in 0..=6 {
                    assert_eq!(d.apply(&ps[n]), dop.lowering_series(&ps, n), "{f} {} n={n}", dop.label);
                }
            }
        }
    }

    #[test]
    fn r_providers_satisfy_recurrence() {
        for f in sample_specs() {
            for dop in f.d_operator_specs() {
                for j in 0..=5 {
                    for n in -6..=6 {
                        assert!(dop.r_recurrence_residual(&f, j, n).is_zero(), "{f} {} j={j} n={n}", dop.label);
                    }
                }
            }
        }
    }

    #[test]
    fn meixner_epsilon() {
        let f = FamilySpec::meixner(rat(1, 3), int(5)).unwrap();
        let specs = f.d_operator_specs();
        assert_eq!(specs.len(), 2);
        assert_eq!(specs[0].epsilon, rat(1, 2));
        assert_eq!(FamilySpec::charlier(int(1)).unwrap().d_operator_specs().len(), 1);
    }

    #[test]
    fn exclusions() {
        assert!(FamilySpec::charlier(int(0)).is_err());
        assert!(FamilySpec::meixner(int(1), int(3)).is_err());
        assert!(FamilySpec::meixner(rat(1, 2), int(-2)).is_err());
        assert!(FamilySpec::meixner(rat(1, 2), int(0)).is_err());
        assert!(FamilySpec::krawtchouk(int(-1), int(5)).is_err());
        assert_eq!(FamilySpec::krawtchouk(int(1), int(25)).unwrap().finite_horizon(), Some(25));
        assert_eq!(FamilySpec::krawtchouk(int(2), rat(31, 2)).unwrap().finite_horizon(), None);
    }

    #[test]
    fn duality_samples() {
        assert!(verify_duality(&int(2), 3, 3));
        assert!(verify_duality(&rat(1, 2), 1, 2));
    }
}
