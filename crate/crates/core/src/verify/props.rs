//! Seeded property suites exposed through `props --suite`.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::{claims_report, degree_property_harness, CheckEntry, CheckName, VerifyReport, Witness};
use crate::casoratian::CasoratianPlan;
use crate::diffop::DiffOp;
use crate::error::{Error, Result};
use crate::families::{verify_duality, FamilySpec, Params};
use crate::moments::{charlier_pairing_rhs, charlier_pairing_sum, charlier_target, residue_sum, MomentFunctional};
use crate::poly::Polynomial;
use crate::rational::{int, rat, to_string, Rational};
use crate::sets::{involution_i, IndexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Degrees,
    Claims,
    Duality,
    Residue,
}

impl std::str::FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "degrees" => Ok(Suite::Degrees),
            "claims" => Ok(Suite::Claims),
            "duality" => Ok(Suite::Duality),
            "residue" => Ok(Suite::Residue),
            _ => Err(Error::Parse(format!("unknown suite {s:?}"))),
        }
    }
}

pub fn run_suite(suite: Suite, seed: u64, trials: usize) -> VerifyReport {
    match suite {
        Suite::Degrees => degree_property_harness(seed, trials),
        Suite::Claims => claims_suite(seed, trials),
        Suite::Duality => duality_suite(seed, trials),
        Suite::Residue => residue_suite(seed, trials),
    }
}

fn random_nonzero(rng: &mut ChaCha8Rng, excluded: &[Rational]) -> Rational {
    loop {
        let v = rat(rng.gen_range(-9..=9), rng.gen_range(1..=6));
        if v != int(0) && !excluded.contains(&v) {
            return v;
        }
    }
}

fn suite_config(suite: &str, seed: u64, trials: usize) -> serde_json::Value {
    json!({ "suite": suite, "seed": seed, "trials": trials })
}

/// The fixed two-block Meixner plan: one row per D-operator.
pub(crate) fn mixed_meixner_plan() -> CasoratianPlan {
    let spec = FamilySpec::meixner(rat(1, 2), int(11)).expect("valid parameters");
    CasoratianPlan::from_blocks(spec, &[(0, &[1]), (1, &[1])]).expect("distinct rows")
}

fn claims_suite(seed: u64, trials: usize) -> VerifyReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut witnesses = Vec::new();
    let mut runs = Vec::new();
    let mut plans: Vec<(String, CasoratianPlan)> = vec![("meixner a=1/2 c=11 H={1} K={1}".into(), mixed_meixner_plan())];
    for _ in 0..trials {
        let a = random_nonzero(&mut rng, &[]);
        let m = rng.gen_range(1..=3);
        let g: Vec<i64> = sample(&mut rng, 5, m).into_iter().map(|i| i as i64 + 1).collect();
        let g = IndexSet::new(g).expect("distinct");
        let spec = FamilySpec::charlier(a.clone()).expect("nonzero a");
        let plan = CasoratianPlan::from_blocks(spec, &[(0, g.elements())]).expect("distinct rows");
        plans.push((format!("charlier a={a} G={g}"), plan));
    }
    for (label, plan) in &plans {
        match claims_report(plan, &Polynomial::one(), 8) {
            Ok(rep) => {
                witnesses.extend(rep.failures.iter().map(|f| Witness::note(format!("{label}: {f}"))));
                runs.push(json!({ "plan": label, "checked": rep.checked }));
            }
            Err(e) => witnesses.push(Witness::note(format!("{label}: {e}"))),
        }
    }
    let entry = CheckEntry::judged(CheckName::InternalClaims, witnesses, json!({ "plans": runs }));
    VerifyReport::new(suite_config("claims", seed, trials), vec![entry])
}

/// Duality, ladder relations and the Krawtchouk/Meixner substitution for
/// one parameter choice; returns failure descriptions.
pub(crate) fn structural_identities(a: &Rational, c: &Rational, big_n: &Rational) -> Vec<String> {
    let mut out = Vec::new();
    for n in 0..=6 {
        for m in 0..=6 {
            if !verify_duality(a, n, m) {
                out.push(format!("duality a={a} n={n} m={m}"));
            }
        }
    }
    let delta = DiffOp::delta();
    let ch = Params::Charlier { a: a.clone() };
    let mx = Params::Meixner { a: a.clone(), c: c.clone() };
    let mx1 = Params::Meixner { a: a.clone(), c: c + int(1) };
    for n in 1..=8 {
        if delta.apply(&ch.polynomial(n)) != ch.polynomial(n - 1) {
            out.push(format!("Charlier ladder a={a} n={n}"));
        }
        if delta.apply(&mx.polynomial(n)) != mx1.polynomial(n - 1) {
            out.push(format!("Meixner ladder a={a} c={c} n={n}"));
        }
    }
    let kr = Params::Krawtchouk { a: a.clone(), n: big_n.clone() };
    let sub = Params::Meixner { a: -a, c: int(1) - big_n };
    for n in 0..=6 {
        if kr.polynomial(n) != sub.polynomial(n) {
            out.push(format!("Krawtchouk substitution a={a} N={big_n} n={n}"));
        }
    }
    out
}

fn duality_suite(seed: u64, trials: usize) -> VerifyReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut witnesses = Vec::new();
    let mut params = Vec::new();
    for _ in 0..trials.max(1) {
        let a = random_nonzero(&mut rng, &[int(1), int(-1)]);
        let c = random_nonzero(&mut rng, &[]);
        let big_n = random_nonzero(&mut rng, &[]);
        witnesses.extend(structural_identities(&a, &c, &big_n).into_iter().map(Witness::note));
        params.push(json!({ "a": to_string(&a), "c": to_string(&c), "N": to_string(&big_n) }));
    }
    let entry = CheckEntry::judged(CheckName::StructuralIdentities, witnesses, json!({ "parameters": params }));
    VerifyReport::new(suite_config("duality", seed, trials), vec![entry])
}

/// Random monic polynomial of the given degree.
fn random_monic(rng: &mut ChaCha8Rng, degree: usize) -> Polynomial {
    let mut c: Vec<Rational> = (0..degree).map(|_| rat(rng.gen_range(-9..=9), rng.gen_range(1..=4))).collect();
    c.push(int(1));
    Polynomial::new(c)
}

/// Charlier pairing formulas for `F = {m}`: returns failure descriptions.
pub(crate) fn charlier_pairing_identities(a: &Rational, m: i64, n_max: i64) -> Vec<String> {
    let f = IndexSet::new(vec![m]).expect("singleton");
    let g = involution_i(&f).expect("positive");
    let rho: MomentFunctional = charlier_target(a, &f).expect("nonzero a");
    let spec = FamilySpec::charlier(a.clone()).expect("nonzero a");
    let mut out = Vec::new();
    for n in 0..=n_max {
        if rho.value(&spec.polynomial(n as usize)) != charlier_pairing_rhs(a, &g, n) {
            out.push(format!("first Charlier pairing formula a={a} m={m} n={n}"));
        }
    }
    let mg = g.len() as i64;
    for n in 1 - mg..0 {
        if charlier_pairing_sum(a, &g, -n - 1) != int(0) {
            out.push(format!("second Charlier pairing formula a={a} m={m} n={n}"));
        }
    }
    if charlier_pairing_sum(a, &g, mg - 1) == int(0) {
        out.push(format!("third Charlier pairing formula vanishes a={a} m={m}"));
    }
    out
}

fn residue_suite(seed: u64, trials: usize) -> VerifyReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut witnesses = Vec::new();
    let mut count = 0usize;
    for t in 0..trials {
        let k = rng.gen_range(1..=6usize);
        let mut pts: Vec<Rational> = Vec::new();
        while pts.len() < k {
            let p = rat(rng.gen_range(-20..=20), rng.gen_range(1..=5));
            if !pts.contains(&p) {
                pts.push(p);
            }
        }
        for d in 0..k {
            let s = random_monic(&mut rng, d);
            let want = if d + 1 == k { int(1) } else { int(0) };
            count += 1;
            match residue_sum(&pts, &s) {
                Ok(v) if v == want => {}
                Ok(v) => witnesses.push(Witness::at(t as i64, format!("k={k}, deg s={d}: sum = {v}"))),
                Err(e) => witnesses.push(Witness::at(t as i64, e.to_string())),
            }
        }
    }
    for a in [int(1), rat(1, 2)] {
        for m in 1..=4 {
            witnesses.extend(charlier_pairing_identities(&a, m, 6).into_iter().map(Witness::note));
        }
    }
    let entry = CheckEntry::judged(CheckName::PairingFormulas, witnesses, json!({ "residue_sums": count }));
    VerifyReport::new(suite_config("residue", seed, trials), vec![entry])
}
