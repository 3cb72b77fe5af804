//! The four auxiliary identities behind the eigenfunction theorem, and the
//! two coefficient identities they imply, checked numerically on a plan.

use std::collections::HashMap;
use std::sync::Mutex;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::casoratian::CasoratianPlan;
use crate::error::Result;
use crate::poly::Polynomial;
use crate::rational::Rational;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimsReport {
    pub n_max: usize,
    /// Number of identities evaluated per claim: I, II, III, IV, ident.
    pub checked: [usize; 5],
    pub failures: Vec<String>,
}

impl ClaimsReport {
    pub fn all_pass(&self) -> bool {
        self.failures.is_empty()
    }
}

struct Cache<'a> {
    plan: &'a CasoratianPlan,
    omega_ij: Mutex<HashMap<(i64, usize, i64), Rational>>,
}

impl Cache<'_> {
    fn omega_ij(&self, i: i64, j: usize, n: i64) -> Result<Rational> {
        if let Some(v) = self.omega_ij.lock().unwrap().get(&(i, j, n)) {
            return Ok(v.clone());
        }
        let v = self.plan.omega_ij(i, j, n)?;
        self.omega_ij.lock().unwrap().insert((i, j, n), v.clone());
        Ok(v)
    }
}

/// Checks the claims for `1 <= n <= n_max`. Claim III and the coefficient
/// identities need `Omega(n) != 0` and skip the other `n`.
pub fn claims_report(plan: &CasoratianPlan, s: &Polynomial, n_max: usize) -> Result<ClaimsReport> {
    let m = plan.m() as i64;
    let cache = Cache { plan, omega_ij: Mutex::new(HashMap::new()) };
    let ms = plan.m_polys(s)?;
    let p_s = plan.p_s(s)?;
    let lam = |n: i64| p_s.eval_int(n);
    let lam_ni = |n: i64, i: i64| plan.lambda_ni(&ms, n, i);
    let sv = |t: i64| s.eval_int(t);
    let mut rep = ClaimsReport { n_max, ..Default::default() };

    for n in 1..=n_max as i64 {
        for i in 1..=n {
            let mut rhs = Rational::zero();
            for h in 1..=m {
                rhs += sv(n - i + h) * cache.omega_ij(i - h + 1, h as usize, n + 1)?;
            }
            rep.checked[0] += 1;
            if lam_ni(n, i) != rhs {
                rep.failures.push(format!("claim I fails at n={n}, i={i}"));
            }
        }
        for i in 1..=m {
            let lhs = lam(n) - lam(n - i);
            let mut first = Rational::zero();
            let mut second = Rational::zero();
            for h in 1..=i {
                first += sv(n - h + 1) * plan.omega_at(n - h + 1)?;
                second += sv(n - i + h) * cache.omega_ij(1 - h, h as usize, n - i + 1)?;
            }
            rep.checked[1] += 1;
            if lhs != first || lhs != second {
                rep.failures.push(format!("claim II fails at n={n}, i={i}"));
            }
        }
        for j in 1..=m as usize {
            for h in 1..=m {
                if h as usize == j {
                    continue;
                }
                rep.checked[3] += 1;
                if !cache.omega_ij(1 - h, j, n)?.is_zero() {
                    rep.failures.push(format!("claim IV fails at n={n}, h={h}, j={j}"));
                }
            }
        }
        if plan.omega_at(n)?.is_zero() {
            continue;
        }
        let phi = plan.phi(n)?;
        for j in 1..=m as usize {
            for l in 1..=n {
                let mut lhs = Rational::zero();
                for h in 1..=m {
                    lhs += cache.omega_ij(l - h, j, n - h + 1)? * &phi[(h - 1) as usize];
                }
                rep.checked[2] += 1;
                if lhs != cache.omega_ij(l, j, n + 1)? {
                    rep.failures.push(format!("claim III fails at n={n}, j={j}, l={l}"));
                }
            }
        }
        // lambda_{n,i} = sum_{j<i} lambda_{n-j,i-j} phi_{n,j} (+ (lambda_n - lambda_{n-i}) phi_{n,i} for i <= m)
        for i in 1..=n {
            let mut rhs = Rational::zero();
            for j in 1..=m.min(i) {
                let term = if j == i { lam(n) - lam(n - i) } else { lam_ni(n - j, i - j) };
                rhs += term * &phi[(j - 1) as usize];
            }
            rep.checked[4] += 1;
            if lam_ni(n, i) != rhs {
                rep.failures.push(format!("coefficient identity fails at n={n}, i={i}"));
            }
        }
    }
    Ok(rep)
}
