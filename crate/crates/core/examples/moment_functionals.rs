//! Moment functionals from recurrence data, Christoffel transforms, and an
//! orthogonality check of Krall-Meixner polynomials.

use krall_discrete::casoratian::CasoratianPlan;
use krall_discrete::families::FamilySpec;
use krall_discrete::moments::{annihilator, meixner_target, orthogonality_report, MomentFunctional};
use krall_discrete::rational::{int, rat};
use krall_discrete::sets::IndexSet;

fn main() {
    let spec = FamilySpec::meixner(rat(1, 2), int(7)).unwrap();
    let rho = MomentFunctional::new(&spec);
    let moments: Vec<String> = (0..5).map(|k| rho.moment(k).to_string()).collect();
    println!("moments of rho (unit {}): {}", rho.unit(), moments.join(", "));

    let f = IndexSet::new(vec![2, 3]).unwrap();
    let moved = rho.christoffel(&annihilator(&f));
    println!("<(x-2)(x-3) rho, 1> = {}", moved.moment(0));

    // One D-operator row in each block; the target measure of that plan.
    let (a, c) = (rat(1, 2), int(11));
    let plan = CasoratianPlan::from_blocks(FamilySpec::meixner(a.clone(), c.clone()).unwrap(), &[(0, &[1]), (1, &[1])])
        .unwrap();
    let one = IndexSet::new(vec![1]).unwrap();
    let target = meixner_target(&a, &c, &one, &one, 1).unwrap();
    let report = orthogonality_report(&target, &plan.qs(6).unwrap(), 6);
    println!("orthogonal up to n = 6: {}", report.all_pass());
    for (n, d) in report.diagonal.iter().enumerate() {
        println!("  <rho, x^{n} q_{n}> = {d}");
    }
}
