//! Casorati determinants over a classical family and the higher-order
//! operator having the resulting polynomials `q_n` as eigenfunctions.
//!
//! Every D-operator here has a constant sequence `epsilon`, so the auxiliary
//! products `xi_{x,i}` reduce to `epsilon^i` for every integer `i`.

use std::sync::Mutex;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::diffop::{DiffOp, OperatorPowers};
use crate::error::{Error, Result};
use crate::families::{DOperatorSpec, Family, FamilySpec, Params};
use crate::matrix::{det_polynomial_rows, det_rational};
use crate::poly::Polynomial;
use crate::rational::{int, pow, Rational};

/// `xi_{x,i} = epsilon^i`.
pub fn xi(dop: &DOperatorSpec, i: i64) -> Rational {
    pow(&dop.epsilon, i)
}

/// One row of the Casorati matrix: a D-operator and the polynomial `R`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanRow {
    pub dop: DOperatorSpec,
    pub g: usize,
    pub r: Polynomial,
}

impl PlanRow {
    /// `R = dop.r(g)`.
    pub fn standard(dop: DOperatorSpec, g: usize) -> Self {
        let r = dop.r(g);
        PlanRow { dop, g, r }
    }

    /// `eta g + kappa`.
    pub fn shifted_index(&self) -> Rational {
        self.dop.shifted_index(self.g)
    }
}

/// Input to the construction: a family and `m` rows.
pub struct CasoratianPlan {
    family: FamilySpec,
    rows: Vec<PlanRow>,
    basis: Mutex<Vec<Polynomial>>,
    dp_powers: OperatorPowers,
}

impl Clone for CasoratianPlan {
    fn clone(&self) -> Self {
        Self::unchecked(self.family.clone(), self.rows.clone())
    }
}

impl std::fmt::Debug for CasoratianPlan {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CasoratianPlan")
            .field("family", &self.family)
            .field("rows", &self.rows.iter().map(|r| (r.dop.label.as_str(), r.g)).collect::<Vec<_>>())
            .finish()
    }
}

impl CasoratianPlan {
    /// Requires the numbers `eta_h g_h + kappa_h` to be pairwise distinct.
    pub fn new(family: FamilySpec, rows: Vec<PlanRow>) -> Result<Self> {
        let shifted: Vec<Rational> = rows.iter().map(PlanRow::shifted_index).collect();
        for i in 0..shifted.len() {
            for j in i + 1..shifted.len() {
                if shifted[i] == shifted[j] {
                    return Err(Error::Hypothesis(format!(
                        "rows {} and {} share eta*g + kappa = {}",
                        i + 1,
                        j + 1,
                        shifted[i]
                    )));
                }
            }
        }
        Ok(Self::unchecked(family, rows))
    }

    /// Skips the distinctness hypothesis; used for arbitrary `R` choices.
    pub fn unchecked(family: FamilySpec, rows: Vec<PlanRow>) -> Self {
        let dp = family.second_order_operator();
        CasoratianPlan {
            family,
            rows,
            basis: Mutex::new(Vec::new()),
            dp_powers: OperatorPowers::new(dp),
        }
    }

    /// Rows built from the family's D-operators: `blocks[k] = (index into
    /// d_operator_specs, degrees g)`, concatenated in order.
    pub fn from_blocks(family: FamilySpec, blocks: &[(usize, &[i64])]) -> Result<Self> {
        let specs = family.d_operator_specs();
        let mut rows = Vec::new();
        for &(idx, gs) in blocks {
            let dop = specs
                .get(idx)
                .ok_or_else(|| Error::InvalidParameter(format!("{family} has no D-operator #{idx}")))?;
            for &g in gs {
                let g = usize::try_from(g).map_err(|_| Error::Domain(format!("negative degree {g}")))?;
                rows.push(PlanRow::standard(dop.clone(), g));
            }
        }
        Self::new(family, rows)
    }

    pub fn family(&self) -> &FamilySpec {
        &self.family
    }

    pub fn rows(&self) -> &[PlanRow] {
        &self.rows
    }

    pub fn m(&self) -> usize {
        self.rows.len()
    }

    /// The same plan with row `h` (0-based) using `R_h + delta x^k`.
    pub fn with_perturbed_r(&self, h: usize, k: usize, delta: &Rational) -> Self {
        let mut rows = self.rows.clone();
        rows[h].r = &rows[h].r + &Polynomial::monomial(delta.clone(), k);
        Self::unchecked(self.family.clone(), rows)
    }

    /// `D_p`, the second-order operator of the family.
    pub fn dp(&self) -> &DiffOp {
        self.dp_powers.base()
    }

    /// `p_n`, zero for negative `n`.
    pub fn p(&self, n: i64) -> Polynomial {
        if n < 0 {
            return Polynomial::zero();
        }
        let n = n as usize;
        let mut cache = self.basis.lock().expect("basis cache poisoned");
        while cache.len() <= n {
            let k = cache.len();
            cache.push(self.family.polynomial(k));
        }
        cache[n].clone()
    }

    /// `xi^l_{.,e} R_l(t)`.
    fn entry(&self, l: usize, e: i64, t: i64) -> Rational {
        xi(&self.rows[l].dop, e) * self.rows[l].r.eval_int(t)
    }

    /// `xi^l_{.,e} R_l(x - s)` as a polynomial in `x`.
    fn entry_poly(&self, l: usize, e: i64, s: i64) -> Polynomial {
        self.rows[l].r.shift(&int(-s)).scale(&xi(&self.rows[l].dop, e))
    }

    /// `Omega(x) = det(xi^l_{x-j,m-j} R_l(x-j))_{l,j=1..m}`.
    pub fn omega(&self) -> Result<Polynomial> {
        let m = self.m() as i64;
        let rows = (0..self.m())
            .map(|l| (1..=m).map(|j| self.entry_poly(l, m - j, j)).collect())
            .collect();
        det_polynomial_rows(rows)
    }

    /// `Omega(n)` evaluated directly as a rational determinant.
    pub fn omega_at(&self, n: i64) -> Result<Rational> {
        let m = self.m() as i64;
        let rows = (0..self.m())
            .map(|l| (1..=m).map(|j| self.entry(l, m - j, n - j)).collect())
            .collect();
        det_rational(rows)
    }

    /// Values `Omega(n)` for `n` in `lo..=hi`.
    pub fn omega_window(&self, lo: i64, hi: i64) -> Result<Vec<(i64, Rational)>> {
        (lo..=hi).map(|n| Ok((n, self.omega_at(n)?))).collect()
    }

    /// `q_n`: the `(m+1) x (m+1)` determinant whose first row is
    /// `(-1)^j p_{n-j}` and whose remaining rows are `xi^l_{n-j,m-j} R_l(n-j)`,
    /// expanded along the first row.
    /// Fails when `Omega(n) = 0`, where the degree of `q_n` drops.
    pub fn q(&self, n: usize) -> Result<Polynomial> {
        if self.omega_at(n as i64)?.is_zero() {
            return Err(Error::DegeneratePlan { n: n as i64 });
        }
        self.q_unchecked(n)
    }

    /// The determinant `q_n` without the nonvanishing requirement.
    pub fn q_unchecked(&self, n: usize) -> Result<Polynomial> {
        let n = n as i64;
        let m = self.m() as i64;
        let mut acc = self.p(n).scale(&self.omega_at(n)?);
        for skip in 1..=m {
            let rows = (0..self.m())
                .map(|l| {
                    (0..=m)
                        .filter(|&j| j != skip)
                        .map(|j| self.entry(l, m - j, n - j))
                        .collect()
                })
                .collect();
            // (-1)^j from the first row and (-1)^j from the cofactor cancel.
            let minor = det_rational(rows)?;
            if !minor.is_zero() {
                acc += &self.p(n - skip).scale(&minor);
            }
        }
        Ok(acc)
    }

    /// `q_0, ..., q_{n_max}`, degenerate indices included.
    pub fn qs(&self, n_max: usize) -> Result<Vec<Polynomial>> {
        (0..=n_max).into_par_iter().map(|n| self.q_unchecked(n)).collect()
    }

    /// `M_h(x)` for the 0-based row `h`.
    pub fn m_poly(&self, h: usize, s: &Polynomial) -> Result<Polynomial> {
        let m = self.m() as i64;
        if h >= self.m() {
            return Err(Error::Dimension(format!("row {h} of {m}")));
        }
        let mut acc = Polynomial::zero();
        for j in 1..=m {
            let rs: Vec<i64> = (-j + 1..=m - j).filter(|&r| r != 0).collect();
            let rows = (0..self.m())
                .filter(|&l| l != h)
                .map(|l| rs.iter().map(|&r| self.entry_poly(l, m - j - r, r)).collect())
                .collect();
            let minor = det_polynomial_rows(rows)?;
            let sign = if (h as i64 + 1 + j) % 2 == 0 { int(1) } else { int(-1) };
            let coef = sign * xi(&self.rows[h].dop, m - j);
            acc += &(&s.shift(&int(j)) * &minor).scale(&coef);
        }
        Ok(acc)
    }

    /// `P_S` with `P_S(x) - P_S(x-1) = S(x) Omega(x)` and `P_S(-1) = 0`.
    pub fn p_s(&self, s: &Polynomial) -> Result<Polynomial> {
        Ok((s * &self.omega()?).antidifference())
    }

    /// `D_{q,S} = P_S(D_p) + sum_h M_h(D_p) D_h R_h(D_p)`.
    pub fn dq(&self, s: &Polynomial) -> Result<DiffOp> {
        self.dq_with(s, &self.p_s(s)?)
    }

    fn dq_with(&self, s: &Polynomial, p_s: &Polynomial) -> Result<DiffOp> {
        let ms: Vec<Polynomial> = (0..self.m())
            .into_par_iter()
            .map(|h| self.m_poly(h, s))
            .collect::<Result<_>>()?;
        let mut op = self.dp_powers.poly_of_op(p_s);
        for (row, mh) in self.rows.iter().zip(&ms) {
            let left = self.dp_powers.poly_of_op(mh);
            let right = self.dp_powers.poly_of_op(&row.r);
            op = &op + &left.compose(&row.dop.realization().compose(&right));
        }
        Ok(op)
    }

    /// Builds `D_{q,S}` and checks `D_{q,S}(q_n) = P_S(n) q_n` for `n <= n_max`.
    pub fn eigen_report(&self, s: &Polynomial, n_max: usize) -> Result<EigenReport> {
        let p_s = self.p_s(s)?;
        let op = self.dq_with(s, &p_s)?;
        let qs = self.qs(n_max)?;
        Ok(EigenReport::check(&op, &p_s, &qs))
    }

    /// `Omega_{i,j}(n)`: `Omega(n-i)` with column `j` (1-based) replaced by
    /// `xi^l_{n-1,m+i-1} R_l(n-1)`.
    pub fn omega_ij(&self, i: i64, j: usize, n: i64) -> Result<Rational> {
        let m = self.m() as i64;
        let rows = (0..self.m())
            .map(|l| {
                (1..=m)
                    .map(|c| {
                        if c == j as i64 {
                            self.entry(l, m + i - 1, n - 1)
                        } else {
                            self.entry(l, m - c, n - i - c)
                        }
                    })
                    .collect()
            })
            .collect();
        det_rational(rows)
    }

    /// `phi_{n,j} = Omega_{1,j}(n+1) / Omega(n)`, `j = 1..m`.
    pub fn phi(&self, n: i64) -> Result<Vec<Rational>> {
        let omega = self.omega_at(n)?;
        if omega.is_zero() {
            return Err(Error::DegeneratePlan { n });
        }
        (1..=self.m()).map(|j| Ok(self.omega_ij(1, j, n + 1)? / &omega)).collect()
    }

    /// Residuals of the linear system defining `phi_{n,.}`.
    pub fn phi_system_residuals(&self, n: i64, phi: &[Rational]) -> Vec<Rational> {
        let m = self.m() as i64;
        (0..self.m())
            .map(|i| {
                let lhs: Rational = (1..=m).map(|j| self.entry(i, m - j, n - j) * &phi[(j - 1) as usize]).sum();
                lhs - self.entry(i, m, n)
            })
            .collect()
    }

    /// `beta_{n,j} = (-1)^{j+1} phi_{n,j}` for `n >= j`, else zero.
    pub fn beta(&self, n: i64) -> Result<Vec<Rational>> {
        let phi = self.phi(n)?;
        Ok(phi
            .into_iter()
            .enumerate()
            .map(|(idx, v)| {
                let j = idx as i64 + 1;
                if n < j {
                    Rational::zero()
                } else if j % 2 == 1 {
                    v
                } else {
                    -v
                }
            })
            .collect())
    }

    /// `lambda_{n,i} = sum_h xi^h_{n,i} M_h(n-i) R_h(n)` given the `M_h`.
    pub fn lambda_ni(&self, ms: &[Polynomial], n: i64, i: i64) -> Rational {
        self.rows
            .iter()
            .zip(ms)
            .map(|(row, mh)| xi(&row.dop, i) * mh.eval_int(n - i) * row.r.eval_int(n))
            .sum()
    }

    /// All `M_h` for the given `S`.
    pub fn m_polys(&self, s: &Polynomial) -> Result<Vec<Polynomial>> {
        (0..self.m()).map(|h| self.m_poly(h, s)).collect()
    }

    /// Column factor `gamma` such that the printed determinant layouts equal
    /// the raw ones with column `j` multiplied by `gamma^{m-j}`.
    pub fn printed_column_factor(&self) -> Rational {
        match self.family.params() {
            Params::Charlier { .. } => Rational::one(),
            Params::Meixner { a, .. } => (int(1) - a) / a,
            Params::Krawtchouk { a, .. } => int(1) + a,
        }
    }

    /// Printed `q_n` = raw `q_n` times `gamma^{m(m+1)/2}`.
    pub fn printed_q_scale(&self) -> Rational {
        let m = self.m() as i64;
        pow(&self.printed_column_factor(), m * (m + 1) / 2)
    }

    /// Printed `Omega` = raw `Omega` times `gamma^{m(m-1)/2}`.
    pub fn printed_omega_scale(&self) -> Rational {
        let m = self.m() as i64;
        pow(&self.printed_column_factor(), m * (m - 1) / 2)
    }

    /// Weights of the displayed determinant: the first row carries
    /// `(-1)^j w^{m-j}`, row `l` carries `u_l^{m-j}`. Read off the displayed
    /// layouts, independently of the `epsilon` values.
    fn printed_weights(&self) -> (Rational, Vec<Rational>) {
        let (w, u1, u2) = match self.family.params() {
            Params::Charlier { .. } => (int(1), int(1), int(1)),
            Params::Meixner { a, .. } => ((int(1) - a) / a, int(1), a.recip()),
            Params::Krawtchouk { a, .. } => (int(1) + a, int(1), -a),
        };
        let u = self
            .rows
            .iter()
            .map(|row| if row.dop.label == "D2" { u2.clone() } else { u1.clone() })
            .collect();
        (w, u)
    }

    /// `q_n` in the displayed layout, as a full polynomial determinant.
    pub fn printed_q(&self, n: usize) -> Result<Polynomial> {
        let n = n as i64;
        let m = self.m() as i64;
        let (w, u) = self.printed_weights();
        let mut rows: Vec<Vec<Polynomial>> = Vec::with_capacity(self.m() + 1);
        rows.push(
            (0..=m)
                .map(|j| {
                    let sign = if j % 2 == 0 { int(1) } else { int(-1) };
                    self.p(n - j).scale(&(sign * pow(&w, m - j)))
                })
                .collect(),
        );
        for (row, ul) in self.rows.iter().zip(&u) {
            rows.push(
                (0..=m)
                    .map(|j| Polynomial::constant(pow(ul, m - j) * row.r.eval_int(n - j)))
                    .collect(),
            );
        }
        det_polynomial_rows(rows)
    }

    pub fn family_kind(&self) -> Family {
        self.family.family()
    }
}

/// Outcome of the eigenfunction check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EigenReport {
    pub n_max: usize,
    #[serde(with = "crate::rational::serde_str::vec")]
    pub eigenvalues: Vec<Rational>,
    pub pass: Vec<bool>,
    pub operator_genre: Option<(i64, i64)>,
    /// First failing `n` and `D(q_n) - lambda_n q_n`.
    pub witness: Option<(usize, Polynomial)>,
}

impl EigenReport {
    /// Checks `op(q_n) = P(n) q_n` for each supplied `q_n`.
    pub fn check(op: &DiffOp, p: &Polynomial, qs: &[Polynomial]) -> Self {
        let results: Vec<(Rational, Polynomial)> = qs
            .par_iter()
            .enumerate()
            .map(|(n, q)| {
                let lambda = p.eval_int(n as i64);
                let residual = &op.apply(q) - &q.scale(&lambda);
                (lambda, residual)
            })
            .collect();
        let witness = results
            .iter()
            .enumerate()
            .find(|(_, (_, res))| !res.is_zero())
            .map(|(n, (_, res))| (n, res.clone()));
        EigenReport {
            n_max: qs.len().saturating_sub(1),
            pass: results.iter().map(|(_, r)| r.is_zero()).collect(),
            eigenvalues: results.into_iter().map(|(l, _)| l).collect(),
            operator_genre: op.genre().ok(),
            witness,
        }
    }

    pub fn all_pass(&self) -> bool {
        self.pass.iter().all(|&b| b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use crate::sets::{involution_i, IndexSet};

    fn charlier_plan(a: Rational, f: &[i64]) -> CasoratianPlan {
        let g = involution_i(&IndexSet::new(f.to_vec()).unwrap()).unwrap();
        CasoratianPlan::from_blocks(FamilySpec::charlier(a).unwrap(), &[(0, g.elements())]).unwrap()
    }

    #[test]
    fn xi_values() {
        let f = FamilySpec::meixner(rat(1, 3), int(4)).unwrap();
        let d1 = &f.d_operator_specs()[0];
        assert_eq!(xi(d1, 2), rat(1, 4));
        assert_eq!(xi(d1, 0), int(1));
        assert_eq!(xi(d1, -1), int(2));
        let ch = FamilySpec::charlier(int(3)).unwrap();
        assert_eq!(xi(&ch.d_operator_specs()[0], 5), int(1));
    }

    #[test]
    fn m1_charlier_omega() {
        let a = rat(2, 3);
        let plan = CasoratianPlan::from_blocks(FamilySpec::charlier(a.clone()).unwrap(), &[(0, &[1])]).unwrap();
        // R_1(t) = c_1^{-a}(-t-1) = -t - 1 + a, so Omega(x) = R_1(x-1) = -x + a.
        assert_eq!(plan.omega().unwrap(), Polynomial::new(vec![a, int(-1)]));
    }

    #[test]
    fn m1_q_matches_single_step() {
        let plan = charlier_plan(rat(1, 2), &[1]);
        let r = &plan.rows()[0].r;
        for n in 1..6i64 {
            let expect = &plan.p(n).scale(&r.eval_int(n - 1)) + &plan.p(n - 1).scale(&r.eval_int(n));
            assert_eq!(plan.q(n as usize).unwrap(), expect);
        }
    }

    #[test]
    fn m1_structure() {
        let plan = charlier_plan(int(1), &[1]);
        let one = Polynomial::one();
        assert_eq!(plan.m_poly(0, &one).unwrap(), one);
        let row = &plan.rows()[0];
        let expected = &poly_of(&plan.p_s(&one).unwrap(), plan.dp())
            + &row.dop.realization().compose(&poly_of(&row.r, plan.dp()));
        assert_eq!(plan.dq(&one).unwrap(), expected);
    }

    fn poly_of(p: &Polynomial, d: &DiffOp) -> DiffOp {
        crate::diffop::poly_of_op(p, d)
    }

    #[test]
    fn charlier_f1_genre() {
        let plan = charlier_plan(int(1), &[1]);
        let rep = plan.eigen_report(&Polynomial::one(), 8).unwrap();
        assert!(rep.all_pass());
        assert_eq!(rep.operator_genre, Some((-2, 2)));
        // Omega(x) = 1 - x at a = 1, so q_1 loses its degree.
        assert_eq!(plan.q(1), Err(Error::DegeneratePlan { n: 1 }));
    }

    #[test]
    fn charlier_f2_eigen() {
        let plan = charlier_plan(rat(2, 3), &[2]);
        assert_eq!(plan.m(), 2);
        assert_eq!(plan.omega().unwrap().degree(), Some(2));
        let rep = plan.eigen_report(&Polynomial::one(), 8).unwrap();
        assert!(rep.all_pass());
        assert_eq!(rep.operator_genre, Some((-3, 3)));
        for n in 0..=8 {
            assert_eq!(plan.q(n).unwrap().degree(), Some(n));
        }
    }

    #[test]
    fn q_equals_beta_form() {
        let plan = charlier_plan(rat(1, 2), &[1, 4]);
        for n in 0..=8i64 {
            let beta = plan.beta(n).unwrap();
            let mut inner = plan.p(n);
            for (j, b) in beta.iter().enumerate() {
                inner += &plan.p(n - j as i64 - 1).scale(b);
            }
            assert_eq!(plan.q(n as usize).unwrap(), inner.scale(&plan.omega_at(n).unwrap()));
        }
    }

    #[test]
    fn row_swap_keeps_operator() {
        let plan = charlier_plan(int(2), &[2]);
        let mut rows = plan.rows().to_vec();
        rows.swap(0, 1);
        let swapped = CasoratianPlan::new(plan.family().clone(), rows).unwrap();
        assert_eq!(swapped.omega().unwrap(), -plan.omega().unwrap());
        let one = Polynomial::one();
        let lhs = plan.dq(&one).unwrap();
        let rhs = swapped.dq(&one).unwrap();
        // Swapping rows negates Omega, hence P_S and every M_h.
        assert_eq!(lhs, rhs.scale(&int(-1)));
    }

    #[test]
    fn degenerate_row_choice_rejected() {
        let f = FamilySpec::charlier(int(1)).unwrap();
        assert!(matches!(
            CasoratianPlan::from_blocks(f, &[(0, &[2, 2])]),
            Err(Error::Hypothesis(_))
        ));
    }

    #[test]
    fn omega_01_is_omega() {
        let plan = charlier_plan(rat(1, 2), &[2, 3]);
        for n in 0..6 {
            assert_eq!(plan.omega_ij(0, 1, n).unwrap(), plan.omega_at(n).unwrap());
        }
    }
}
