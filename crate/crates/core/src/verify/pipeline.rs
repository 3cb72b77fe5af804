//! `F -> Casorati sets -> plan -> q_n, target measure, D_q`, and the checks.

use std::sync::OnceLock;

use num_traits::Zero;
use serde_json::{json, Value};

use super::{claims_report, degree_property_harness, strs, CheckEntry, CheckName, VerifyConfig, VerifyReport, Witness};
use crate::casoratian::{CasoratianPlan, EigenReport};
use crate::diffop::DiffOp;
use crate::error::{Error, Result};
use crate::families::{Family, FamilySpec};
use crate::moments::{
    annihilator, charlier_target, krawtchouk_target, meixner_target, orthogonality_report, pairing_report,
    MomentFunctional,
};
use crate::poly::Polynomial;
use crate::rational::{int, to_string, Rational};
use crate::sets::{
    involution_i, krawtchouk_canonical_split, order_r, r_from_blocks, r_krawtchouk_theorem, r_meixner_theorem,
    transform_j, IndexSet,
};

/// Everything derived from a config before any check runs.
pub struct Setup {
    pub plan: CasoratianPlan,
    /// The measure of the theorem, for which the displayed `q_n` are orthogonal.
    pub target: MomentFunctional,
    /// The measure of the conjecture; equals `target(x - lambda)`.
    pub conjecture: MomentFunctional,
    pub lambda: Rational,
    pub r_conjecture: i64,
    pub r_theorem: i64,
    pub r_blocks: i64,
    /// Orthogonality is asserted for `n <= orth_limit`.
    pub orth_limit: usize,
    pub sets: Value,
}

fn nonempty_or(f: &IndexSet, build: impl FnOnce(&IndexSet) -> Result<IndexSet>) -> Result<IndexSet> {
    if f.is_empty() {
        Ok(IndexSet::empty())
    } else {
        build(f)
    }
}

fn require_positive(name: &str, f: &IndexSet) -> Result<()> {
    if f.is_positive() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name} must contain positive integers, got {f}")))
    }
}

/// `prod_{f in F} (x + shift + sign f)`, with `sign = +-1`.
fn linear_product(f: &IndexSet, shift: &Rational, sign: i64) -> Polynomial {
    f.elements()
        .iter()
        .fold(Polynomial::one(), |acc, &e| &acc * &Polynomial::new(vec![shift + int(sign * e), int(1)]))
}

impl Setup {
    pub fn build(cfg: &VerifyConfig) -> Result<Setup> {
        let f2 = cfg.f2.clone().unwrap_or_default();
        require_positive("F1", &cfg.f1)?;
        require_positive("F2", &f2)?;
        match cfg.family {
            Family::Charlier => Self::charlier(cfg, &f2),
            Family::Meixner => Self::meixner(cfg, &f2),
            Family::Krawtchouk => Self::krawtchouk(cfg, &f2),
        }
    }

    fn charlier(cfg: &VerifyConfig, f2: &IndexSet) -> Result<Setup> {
        if !f2.is_empty() {
            return Err(Error::InvalidParameter("Charlier takes a single set F1".into()));
        }
        let f = &cfg.f1;
        if f.is_empty() {
            return Err(Error::Domain("Charlier needs a nonempty F1".into()));
        }
        let spec = FamilySpec::charlier(cfg.a.clone())?;
        let g = involution_i(f)?;
        let plan = CasoratianPlan::from_blocks(spec.clone(), &[(0, g.elements())])?;
        let r_blocks = r_from_blocks(&g, &IndexSet::empty());
        Ok(Setup {
            target: charlier_target(&cfg.a, f)?,
            conjecture: MomentFunctional::new(&spec).christoffel(&annihilator(f)),
            lambda: int(f.max_elem() + 1),
            r_conjecture: order_r(f, None),
            r_theorem: r_blocks,
            r_blocks,
            orth_limit: cfg.n_max,
            sets: json!({ "F": f, "G": g }),
            plan,
        })
    }

    fn meixner(cfg: &VerifyConfig, f2: &IndexSet) -> Result<Setup> {
        let c = cfg.c.clone().ok_or_else(|| Error::InvalidParameter("Meixner needs --c".into()))?;
        let spec = FamilySpec::meixner(cfg.a.clone(), c.clone())?;
        let f1 = &cfg.f1;
        let f1_t = f1.reflect();
        let h = f1.min_elem().unwrap_or(1);
        let c_t = &c + int(f1.max_elem() + f2.max_elem() + 2);
        let hs = nonempty_or(&f1_t, |f| transform_j(f, h))?;
        let ks = nonempty_or(f2, involution_i)?;
        let plan = CasoratianPlan::from_blocks(
            FamilySpec::meixner(cfg.a.clone(), c_t.clone())?,
            &[(0, hs.elements()), (1, ks.elements())],
        )?;
        let factor = &linear_product(f1, &c, 1) * &linear_product(f2, &int(0), -1);
        Ok(Setup {
            target: meixner_target(&cfg.a, &c_t, &f1_t, f2, h)?,
            conjecture: MomentFunctional::new(&spec).christoffel(&factor),
            lambda: int(f2.max_elem() + 1),
            r_conjecture: order_r(f1, Some(f2)),
            r_theorem: r_meixner_theorem(&f1_t, f2, h),
            r_blocks: r_from_blocks(&hs, &ks),
            orth_limit: cfg.n_max,
            sets: json!({
                "F1": f1, "F2": f2, "F1_tilde": f1_t, "h": h, "c_tilde": to_string(&c_t),
                "H": hs, "K": ks,
            }),
            plan,
        })
    }

    fn krawtchouk(cfg: &VerifyConfig, f2_in: &IndexSet) -> Result<Setup> {
        let big_n = cfg.n.clone().ok_or_else(|| Error::InvalidParameter("Krawtchouk needs --N".into()))?;
        let spec = FamilySpec::krawtchouk(cfg.a.clone(), big_n.clone())?;
        let mut f1 = cfg.f1.clone();
        let mut f2 = f2_in.clone();
        let mut split_data = Value::Null;
        if let Some(n_int) = spec.finite_horizon() {
            let split = krawtchouk_canonical_split(&f1, &f2, n_int)?;
            let replaced = split.canonical.f1 != f1 || split.canonical.f2 != f2;
            if 2 * f1.max_elem() >= n_int || 2 * f2.max_elem() >= n_int {
                f1 = split.canonical.f1.clone();
                f2 = split.canonical.f2.clone();
            }
            split_data = json!({
                "canonical": split.canonical,
                "alternatives": split.alternatives.len(),
                "input_was_canonical": !replaced,
            });
        }
        let f2_t = f2.reflect();
        let h = f2.min_elem().unwrap_or(1);
        let n_t = &big_n - int(f1.max_elem() + f2.max_elem() + 2);
        let ks = nonempty_or(&f1, involution_i)?;
        let hs = nonempty_or(&f2_t, |f| transform_j(f, h))?;
        let plan = CasoratianPlan::from_blocks(
            FamilySpec::krawtchouk(cfg.a.clone(), n_t.clone())?,
            &[(0, ks.elements()), (1, hs.elements())],
        )?;
        // prod (N - 1 - f - x) = (-1)^{|F2|} prod (x - (N - 1) + f)
        let sign = if f2.len() % 2 == 0 { int(1) } else { int(-1) };
        let factor = (&annihilator(&f1) * &linear_product(&f2, &(int(1) - &big_n), 1)).scale(&sign);
        let orth_limit = match spec.finite_horizon() {
            Some(n_int) => usize::try_from(n_int - 1 - plan.m() as i64).unwrap_or(0).min(cfg.n_max),
            None => cfg.n_max,
        };
        Ok(Setup {
            target: krawtchouk_target(&cfg.a, &n_t, &f1, &f2_t, h)?,
            conjecture: MomentFunctional::new(&spec).christoffel(&factor),
            lambda: int(f1.max_elem() + 1),
            r_conjecture: order_r(&f1, Some(&f2)),
            r_theorem: r_krawtchouk_theorem(&f1, &f2_t, h),
            r_blocks: r_from_blocks(&ks, &hs),
            orth_limit,
            sets: json!({
                "F1": f1, "F2": f2, "F2_tilde": f2_t, "h": h, "N_tilde": to_string(&n_t),
                "K": ks, "H": hs, "canonical_split": split_data,
            }),
            plan,
        })
    }
}

/// Lazily shared pieces of one pipeline run.
struct Run<'a> {
    cfg: &'a VerifyConfig,
    setup: &'a Setup,
    printed_qs: OnceLock<Result<Vec<Polynomial>>>,
    dq_one: OnceLock<Result<DiffOp>>,
}

impl Run<'_> {
    /// Displayed-layout `q_0..q_{n_max}`, computed as raw `q_n` times the
    /// layout constant.
    fn printed_qs(&self) -> Result<Vec<Polynomial>> {
        self.printed_qs
            .get_or_init(|| {
                let scale = self.setup.plan.printed_q_scale();
                let top = self.cfg.n_max.max(self.setup.orth_limit);
                Ok(self.setup.plan.qs(top)?.iter().map(|q| q.scale(&scale)).collect())
            })
            .clone()
    }

    fn dq_one(&self) -> Result<DiffOp> {
        self.dq_one.get_or_init(|| self.setup.plan.dq(&Polynomial::one())).clone()
    }

    fn set_transforms(&self) -> Result<CheckEntry> {
        let s = self.setup;
        let mut w = Vec::new();
        if s.r_theorem != s.r_conjecture {
            w.push(Witness::note(format!("theorem r = {} but conjecture r = {}", s.r_theorem, s.r_conjecture)));
        }
        if s.r_blocks != s.r_theorem {
            w.push(Witness::note(format!("block r = {} but theorem r = {}", s.r_blocks, s.r_theorem)));
        }
        let data = json!({
            "sets": s.sets, "m": s.plan.m(),
            "r_conjecture": s.r_conjecture, "r_theorem": s.r_theorem, "r_blocks": s.r_blocks,
        });
        Ok(CheckEntry::judged(CheckName::SetTransforms, w, data))
    }

    fn casoratian(&self) -> Result<CheckEntry> {
        let plan = &self.setup.plan;
        let hi = self.cfg.n_max.max(plan.m() + 2) as i64;
        let scale = plan.printed_omega_scale();
        let window = plan.omega_window(0, hi)?;
        let mut w = Vec::new();
        for (n, v) in &window {
            if v.is_zero() {
                w.push(Witness::at(*n, "Omega(n) = 0"));
            }
        }
        let omega = plan.omega()?;
        let expected = self.setup.r_blocks - 1;
        let degree = omega.degree().map(|d| d as i64);
        if degree != Some(expected) {
            w.push(Witness::note(format!("deg Omega = {degree:?}, expected {expected}")));
        }
        let values: Vec<Value> = window
            .iter()
            .map(|(n, v)| json!({ "n": n, "omega": to_string(&(v * &scale)) }))
            .collect();
        let data = json!({ "window": values, "omega": omega, "degree": degree, "expected_degree": expected });
        Ok(CheckEntry::judged(CheckName::CasoratianNonvanishing, w, data))
    }

    fn orthogonality(&self) -> Result<CheckEntry> {
        let s = self.setup;
        let top = s.orth_limit;
        let qs: Vec<Polynomial> = self.printed_qs()?.into_iter().take(top + 1).collect();
        let mut w = Vec::new();
        for (n, q) in qs.iter().enumerate() {
            if s.plan.printed_q(n)? != *q {
                w.push(Witness::at(n as i64, "displayed determinant differs from the scaled expansion"));
            }
        }
        let rep = orthogonality_report(&s.target, &qs, top);
        if let Some((n, j, v)) = &rep.witness {
            w.push(Witness::at(*n as i64, format!("<rho, x^{j} q_n> = {v}")));
        }
        let moved = s.target.shift(&-&s.lambda);
        let max_moment = 2 * top + s.conjecture.factor().degree().unwrap_or(0) + 1;
        if let Some(k) = (0..=max_moment).find(|&k| moved.moment(k) != s.conjecture.moment(k)) {
            w.push(Witness::note(format!("shifted target and conjecture measure differ at moment {k}")));
        }
        let shifted_qs: Vec<Polynomial> = qs.iter().map(|q| q.shift(&-&s.lambda)).collect();
        let conj = orthogonality_report(&s.conjecture, &shifted_qs, top);
        if let Some((n, j, v)) = &conj.witness {
            w.push(Witness::at(*n as i64, format!("conjecture measure: <mu, x^{j} q_n(x - lambda)> = {v}")));
        }
        let pairing = match pairing_report(&s.plan, &s.target, top) {
            Ok(p) => serde_json::to_value(p).expect("serializable"),
            Err(e) => json!({ "unavailable": e.to_string() }),
        };
        let data = json!({
            "n_max": top,
            "unit": s.target.unit(),
            "diagonal": strs(&rep.diagonal),
            "pass": rep.pass,
            "conjecture_shift": to_string(&s.lambda),
            "pairing_formula": pairing,
        });
        Ok(CheckEntry::judged(CheckName::Orthogonality, w, data))
    }

    fn eigenfunction(&self) -> Result<CheckEntry> {
        let plan = &self.setup.plan;
        let s = &self.cfg.s;
        let p_s = plan.p_s(s)?;
        let op = if *s == Polynomial::one() { self.dq_one()? } else { plan.dq(s)? };
        let qs: Vec<Polynomial> = self.printed_qs()?.into_iter().take(self.cfg.n_max + 1).collect();
        let rep = EigenReport::check(&op, &p_s, &qs);
        let mut w = Vec::new();
        if let Some((n, res)) = &rep.witness {
            w.push(Witness {
                n: Some(*n as i64),
                detail: "D_q(q_n) - lambda_n q_n is nonzero".into(),
                residual: Some(res.clone()),
            });
        }
        let data = json!({
            "P_S": p_s,
            "eigenvalues": strs(&rep.eigenvalues),
            "genre": rep.operator_genre,
        });
        Ok(CheckEntry::judged(CheckName::Eigenfunction, w, data))
    }

    fn order(&self) -> Result<CheckEntry> {
        let s = self.setup;
        let genre = self.dq_one()?.genre().ok();
        let expected = (-s.r_conjecture, s.r_conjecture);
        let mut w = Vec::new();
        if genre != Some(expected) {
            w.push(Witness::note(format!("genre {genre:?}, predicted {expected:?}")));
        }
        let data = json!({ "genre": genre, "r_conjecture": s.r_conjecture, "r_theorem": s.r_theorem });
        Ok(CheckEntry::judged(CheckName::Order, w, data))
    }

    fn claims(&self) -> Result<CheckEntry> {
        let rep = claims_report(&self.setup.plan, &self.cfg.s, self.cfg.n_max)?;
        let w = rep.failures.iter().map(|f| Witness::note(f.clone())).collect();
        Ok(CheckEntry::judged(CheckName::InternalClaims, w, serde_json::to_value(&rep).expect("serializable")))
    }
}

fn config_value(cfg: &VerifyConfig) -> Value {
    serde_json::to_value(cfg).expect("configs serialize")
}

/// Runs the requested checks in a fixed order; unrequested checks are
/// reported as skipped and construction errors as error entries.
pub fn verify_conjecture(cfg: &VerifyConfig) -> VerifyReport {
    let setup = match Setup::build(cfg) {
        Ok(s) => s,
        Err(e) => {
            let checks = CheckName::ALL
                .iter()
                .map(|&name| {
                    if name == CheckName::SetTransforms || cfg.wants(name) {
                        CheckEntry::error(name, &e)
                    } else {
                        CheckEntry::skipped(name)
                    }
                })
                .collect();
            return VerifyReport::new(config_value(cfg), checks);
        }
    };
    let run = Run { cfg, setup: &setup, printed_qs: OnceLock::new(), dq_one: OnceLock::new() };
    let checks = CheckName::ALL
        .iter()
        .map(|&name| {
            if !cfg.wants(name) {
                return CheckEntry::skipped(name);
            }
            let outcome = match name {
                CheckName::SetTransforms => run.set_transforms(),
                CheckName::CasoratianNonvanishing => run.casoratian(),
                CheckName::Orthogonality => run.orthogonality(),
                CheckName::Eigenfunction => run.eigenfunction(),
                CheckName::Order => run.order(),
                CheckName::InternalClaims => run.claims(),
                CheckName::StructuralIdentities | CheckName::PairingFormulas => return CheckEntry::skipped(name),
                CheckName::DegreeLemmas => {
                    let mut rep = degree_property_harness(cfg.seed, cfg.trials);
                    Ok(rep.checks.remove(0))
                }
            };
            outcome.unwrap_or_else(|e| CheckEntry::error(name, &e))
        })
        .collect();
    VerifyReport::new(config_value(cfg), checks)
}
