//! Moment functionals given by three-term recurrence data, with Christoffel
//! multiplication and argument shifts.
//!
//! The base functional is fixed by `<rho, p_n> = delta_{n0}` and `p_0 = 1`,
//! so `<rho, 1> = 1`. A transformed functional is stored as
//! `<rho', p> = <rho, (factor * p)(x - shift)>`.

use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::casoratian::{xi, CasoratianPlan};
use crate::error::{Error, Result};
use crate::families::{FamilySpec, Params};
use crate::poly::Polynomial;
use crate::rational::{as_integer, int, pow, Rational};
use crate::sets::IndexSet;

#[derive(Debug, Default)]
struct MomentCache {
    /// Coordinates of `x^k p_0` in the basis `p_0, p_1, ...`.
    coords: Vec<Rational>,
    moments: Vec<Rational>,
}

#[derive(Clone, Debug)]
pub struct MomentFunctional {
    base: Params,
    factor: Polynomial,
    shift: Rational,
    unit: String,
    cache: Arc<Mutex<MomentCache>>,
}

impl MomentFunctional {
    /// The orthogonality functional of a validated family.
    pub fn new(spec: &FamilySpec) -> Self {
        let mut f = Self::from_params(spec.params().clone());
        f.unit = spec.unit_tag();
        f
    }

    /// Same, for parameters outside the validated range.
    pub fn from_params(base: Params) -> Self {
        MomentFunctional {
            base,
            factor: Polynomial::one(),
            shift: Rational::zero(),
            unit: "1".into(),
            cache: Arc::new(Mutex::new(MomentCache::default())),
        }
    }

    pub fn base(&self) -> &Params {
        &self.base
    }

    pub fn factor(&self) -> &Polynomial {
        &self.factor
    }

    pub fn arg_shift(&self) -> &Rational {
        &self.shift
    }

    /// The dropped normalization `<rho, 1>` of the untransformed measure.
    pub fn unit(&self) -> &str {
        &self.unit
    }

    /// `<rho, x^k>` of the untransformed functional.
    fn base_moment(&self, k: usize) -> Rational {
        let mut cache = self.cache.lock().expect("moment cache poisoned");
        if cache.moments.is_empty() {
            cache.coords = vec![Rational::one()];
            cache.moments.push(Rational::one());
        }
        while cache.moments.len() <= k {
            let cur = std::mem::take(&mut cache.coords);
            let mut next = vec![Rational::zero(); cur.len() + 1];
            for (n, v) in cur.iter().enumerate() {
                if v.is_zero() {
                    continue;
                }
                let (an1, bn, cn) = self.base.recurrence_coeffs(n as i64);
                next[n + 1] += v * an1;
                next[n] += v * bn;
                if n > 0 {
                    next[n - 1] += v * cn;
                }
            }
            let mu = next[0].clone();
            cache.coords = next;
            cache.moments.push(mu);
        }
        cache.moments[k].clone()
    }

    fn base_value(&self, p: &Polynomial) -> Rational {
        p.coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| c * self.base_moment(k))
            .sum()
    }

    /// `<rho, p>`.
    pub fn value(&self, p: &Polynomial) -> Rational {
        let q = (&self.factor * p).shift(&-&self.shift);
        self.base_value(&q)
    }

    /// `<rho, x^k>`.
    pub fn moment(&self, k: usize) -> Rational {
        self.value(&Polynomial::monomial(Rational::one(), k))
    }

    /// `<rho, p q>`.
    pub fn pair(&self, p: &Polynomial, q: &Polynomial) -> Rational {
        self.value(&(p * q))
    }

    /// `<r rho, p> = <rho, r p>`.
    pub fn christoffel(&self, r: &Polynomial) -> Self {
        MomentFunctional {
            factor: &self.factor * r,
            ..self.clone()
        }
    }

    /// `<rho(x + lambda), p> = <rho, p(x - lambda)>`.
    pub fn shift(&self, lambda: &Rational) -> Self {
        MomentFunctional {
            factor: self.factor.shift(lambda),
            shift: &self.shift + lambda,
            ..self.clone()
        }
    }
}

/// `prod_{f in F} (x + offset - f)`.
fn shifted_annihilator(f: &IndexSet, offset: &Rational) -> Polynomial {
    f.elements()
        .iter()
        .fold(Polynomial::one(), |acc, &e| &acc * &Polynomial::new(vec![offset - int(e), int(1)]))
}

/// `prod_{f in F} (x - f)`.
pub fn annihilator(f: &IndexSet) -> Polynomial {
    shifted_annihilator(f, &Rational::zero())
}

/// `prod_{f in F} (x + f_k + 1 - f) rho_a(x + f_k + 1)`.
pub fn charlier_target(a: &Rational, f: &IndexSet) -> Result<MomentFunctional> {
    if f.is_empty() {
        return Err(Error::Domain("Charlier target measure needs a nonempty F".into()));
    }
    let spec = FamilySpec::charlier(a.clone())?;
    let lambda = int(f.max_elem() + 1);
    Ok(MomentFunctional::new(&spec)
        .shift(&lambda)
        .christoffel(&shifted_annihilator(f, &lambda)))
}

/// `prod_{F1}(x + c - f) prod_{F2}(x + f2M + 1 - f) rho_{a, c - f1M - f2M - h - 1}(x + f2M + 1)`
/// for the theorem sets `F1` (fed to `J_h`) and `F2` (fed to `I`).
pub fn meixner_target(a: &Rational, c: &Rational, f1: &IndexSet, f2: &IndexSet, h: i64) -> Result<MomentFunctional> {
    let top = f1.max_elem() + f2.max_elem() + h;
    if c.is_integer() && as_integer(c).is_some_and(|ci| ci <= top) {
        return Err(Error::Constraint(format!(
            "c must avoid {{f1M + f2M + h - l : l >= 0}} = {{..., {top}}}, got c = {c}"
        )));
    }
    let base_c = c - int(top + 1);
    let spec = FamilySpec::meixner(a.clone(), base_c)?;
    let lambda = int(f2.max_elem() + 1);
    let factor = &shifted_annihilator(f1, c) * &shifted_annihilator(f2, &lambda);
    Ok(MomentFunctional::new(&spec).shift(&lambda).christoffel(&factor))
}

/// `prod_{F1}(x + f1M + 1 - f) prod_{F2}(N - x - 1 + f) rho_{a, N + f1M + f2M + h + 1}(x + f1M + 1)`
/// for the theorem sets `F1` (fed to `I`) and `F2` (fed to `J_h`).
pub fn krawtchouk_target(a: &Rational, n: &Rational, f1: &IndexSet, f2: &IndexSet, h: i64) -> Result<MomentFunctional> {
    if let Some(big_n) = as_integer(n).filter(|&k| k > 0) {
        if 2 * f1.max_elem() >= big_n || 2 * f2.max_elem() >= big_n {
            return Err(Error::Constraint(format!(
                "integer N = {big_n} needs max F1, max F2 < N/2, got {}, {}",
                f1.max_elem(),
                f2.max_elem()
            )));
        }
    }
    let base_n = n + int(f1.max_elem() + f2.max_elem() + h + 1);
    let spec = FamilySpec::krawtchouk(a.clone(), base_n)?;
    let lambda = int(f1.max_elem() + 1);
    // N - x - 1 + f = -(x - (N - 1 + f))
    let second = f2.elements().iter().fold(Polynomial::one(), |acc, &e| {
        &acc * &Polynomial::new(vec![n - int(1) + int(e), int(-1)])
    });
    let factor = &shifted_annihilator(f1, &lambda) * &second;
    Ok(MomentFunctional::new(&spec).shift(&lambda).christoffel(&factor))
}

/// Result of checking `<rho, x^j q_n> = 0` for `j < n` and `!= 0` for `j = n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrthogonalityReport {
    pub n_max: usize,
    /// `<rho, x^n q_n>` for each `n`.
    #[serde(with = "crate::rational::serde_str::vec")]
    pub diagonal: Vec<Rational>,
    pub degree_ok: Vec<bool>,
    pub pass: Vec<bool>,
    /// First failure: `(n, j, <rho, x^j q_n>)`.
    pub witness: Option<(usize, usize, String)>,
}

impl OrthogonalityReport {
    pub fn all_pass(&self) -> bool {
        self.pass.iter().all(|&b| b)
    }
}

/// Checks `polys[n]` against `rho` for `n <= n_max`.
pub fn orthogonality_report(rho: &MomentFunctional, polys: &[Polynomial], n_max: usize) -> OrthogonalityReport {
    let upto = n_max.min(polys.len().saturating_sub(1));
    let mut rep = OrthogonalityReport {
        n_max: upto,
        diagonal: Vec::new(),
        degree_ok: Vec::new(),
        pass: Vec::new(),
        witness: None,
    };
    for (n, q) in polys.iter().enumerate().take(upto + 1) {
        let degree_ok = q.degree() == Some(n);
        let mut ok = degree_ok;
        let mut first_bad = None;
        for j in 0..n {
            let v = rho.value(&(&Polynomial::monomial(Rational::one(), j) * q));
            if !v.is_zero() {
                ok = false;
                first_bad.get_or_insert((j, v));
            }
        }
        let diag = rho.value(&(&Polynomial::monomial(Rational::one(), n) * q));
        if diag.is_zero() {
            ok = false;
            first_bad.get_or_insert((n, diag.clone()));
        }
        if !ok && rep.witness.is_none() {
            let (j, v) = first_bad.unwrap_or((n, diag.clone()));
            rep.witness = Some((n, j, crate::rational::to_string(&v)));
        }
        rep.diagonal.push(diag);
        rep.degree_ok.push(degree_ok);
        rep.pass.push(ok);
    }
    rep
}

/// `sum_i s(f_i) / p_F'(f_i)` for distinct points `f_i`.
pub fn residue_sum(points: &[Rational], s: &Polynomial) -> Result<Rational> {
    let mut acc = Rational::zero();
    for (i, fi) in points.iter().enumerate() {
        let mut d = Rational::one();
        for (j, fj) in points.iter().enumerate() {
            if i != j {
                d *= fi - fj;
            }
        }
        if d.is_zero() {
            return Err(Error::Domain("residue sum needs distinct points".into()));
        }
        acc += s.eval(fi) / d;
    }
    Ok(acc)
}

/// Ingredients of the generic pairing formulas for a plan with target
/// measure `rho`: `p'_{G~}(g~_i)` and `R_i(-1)`.
struct PairingData {
    dprime: Vec<Rational>,
    r_at_minus_one: Vec<Rational>,
    shifted: Vec<Rational>,
}

fn pairing_data(plan: &CasoratianPlan) -> Result<PairingData> {
    let shifted: Vec<Rational> = plan.rows().iter().map(|r| r.shifted_index()).collect();
    let mut dprime = Vec::new();
    for (i, gi) in shifted.iter().enumerate() {
        let d: Rational = shifted
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, gj)| gi - gj)
            .product();
        if d.is_zero() {
            return Err(Error::Hypothesis("shifted indices must be distinct".into()));
        }
        dprime.push(d);
    }
    let r_at_minus_one: Vec<Rational> = plan.rows().iter().map(|r| r.r.eval_int(-1)).collect();
    if r_at_minus_one.iter().any(Zero::is_zero) {
        return Err(Error::Hypothesis("R_i(-1) vanishes".into()));
    }
    Ok(PairingData { dprime, r_at_minus_one, shifted })
}

/// `(-1)^n sum_i s(-g~_i) xi^i_{n,n+1} R_i(n) / (p'(g~_i) R_i(-1))` for
/// `n >= 0`, and `sum_i s(-g~_i) R_i(n) / (p'(g~_i) xi^i_{-1,-n-1} R_i(-1))`
/// for `n < 0`.
pub fn pairing_formula(plan: &CasoratianPlan, s: &Polynomial, n: i64) -> Result<Rational> {
    let d = pairing_data(plan)?;
    let mut acc = Rational::zero();
    for (i, row) in plan.rows().iter().enumerate() {
        let sv = s.eval(&-&d.shifted[i]);
        let base = sv * row.r.eval_int(n) / (&d.dprime[i] * &d.r_at_minus_one[i]);
        acc += if n >= 0 {
            base * xi(&row.dop, n + 1)
        } else {
            base / xi(&row.dop, -n - 1)
        };
    }
    Ok(if n >= 0 && n % 2 != 0 { -acc } else { acc })
}

/// Outcome of the pairing-formula checks for a target measure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairingReport {
    #[serde(with = "crate::rational::serde_str")]
    pub c_g: Rational,
    /// `<rho, p_n> = c_G T(n)` for `0 <= n <= n_max`.
    pub first: bool,
    /// `T(n) = 0` for `1 - m <= n < 0`.
    pub second: bool,
    /// `T(-m) != 0`.
    pub third: bool,
}

impl PairingReport {
    pub fn all_pass(&self) -> bool {
        self.first && self.second && self.third
    }
}

/// Solves `c_G` at `n = 0` and checks the three pairing formulas.
pub fn pairing_report(plan: &CasoratianPlan, rho: &MomentFunctional, n_max: usize) -> Result<PairingReport> {
    let one = Polynomial::one();
    let t0 = pairing_formula(plan, &one, 0)?;
    if t0.is_zero() {
        return Err(Error::Hypothesis("pairing formula vanishes at n = 0".into()));
    }
    let c_g = rho.value(&plan.p(0)) / t0;
    let mut first = !c_g.is_zero();
    for n in 0..=n_max as i64 {
        if rho.value(&plan.p(n)) != &c_g * pairing_formula(plan, &one, n)? {
            first = false;
        }
    }
    let m = plan.m() as i64;
    let mut second = true;
    for n in 1 - m..0 {
        if !pairing_formula(plan, &one, n)?.is_zero() {
            second = false;
        }
    }
    let third = !pairing_formula(plan, &one, -m)?.is_zero();
    Ok(PairingReport { c_g, first, second, third })
}

/// Right side of the Charlier pairing formula with the `e^a` unit removed:
/// `a^{g_m} (-1)^{n+m-1} sum_i c_{g_i}^{-a}(-n-1) / (p'(g_i+1) c_{g_i}^{-a}(0))`.
pub fn charlier_pairing_rhs(a: &Rational, g: &IndexSet, n: i64) -> Rational {
    let c = Params::Charlier { a: -a };
    let m = g.len() as i64;
    let pts: Vec<i64> = g.elements().iter().map(|&e| e + 1).collect();
    let mut acc = Rational::zero();
    for (i, &gi) in g.elements().iter().enumerate() {
        let dprime: Rational = pts
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, &pj)| int(pts[i] - pj))
            .product();
        let poly = c.polynomial(gi as usize);
        acc += poly.eval_int(-n - 1) / (dprime * poly.eval_int(0));
    }
    let sign = if (n + m - 1).rem_euclid(2) == 0 { int(1) } else { int(-1) };
    pow(a, g.max_elem()) * sign * acc
}

/// The sum in the Charlier pairing formula without its prefactor, at
/// argument `t` (the formula uses `t = -n - 1`).
pub fn charlier_pairing_sum(a: &Rational, g: &IndexSet, t: i64) -> Rational {
    let c = Params::Charlier { a: -a };
    let pts: Vec<i64> = g.elements().iter().map(|&e| e + 1).collect();
    let mut acc = Rational::zero();
    for (i, &gi) in g.elements().iter().enumerate() {
        let dprime: Rational = pts
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, &pj)| int(pts[i] - pj))
            .product();
        let poly = c.polynomial(gi as usize);
        acc += poly.eval_int(t) / (dprime * poly.eval_int(0));
    }
    acc
}
