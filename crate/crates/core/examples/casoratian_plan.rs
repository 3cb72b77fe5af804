//! Krall-Charlier polynomials for the measure `(x - 1)(x - 4) rho_a`: the
//! Casorati determinant, the polynomials `q_n` and their difference operator.

use krall_discrete::casoratian::CasoratianPlan;
use krall_discrete::families::FamilySpec;
use krall_discrete::rational::rat;
use krall_discrete::sets::{involution_i, IndexSet};
use krall_discrete::Polynomial;

fn main() {
    let f = IndexSet::new(vec![1, 4]).unwrap();
    let g = involution_i(&f).unwrap();
    println!("F = {f}, G = I(F) = {g}");

    let plan = CasoratianPlan::from_blocks(FamilySpec::charlier(rat(1, 2)).unwrap(), &[(0, g.elements())]).unwrap();
    println!("Omega(x) = {}", plan.omega().unwrap());
    for n in 0..4 {
        println!("q_{n} = {}", plan.q(n).unwrap());
    }

    let op = plan.dq(&Polynomial::one()).unwrap();
    println!("D_q has genre {:?}", op.genre().unwrap());
    let report = plan.eigen_report(&Polynomial::one(), 8).unwrap();
    assert!(report.all_pass());
    let eigenvalues: Vec<String> = report.eigenvalues.iter().map(ToString::to_string).collect();
    println!("eigenvalues: {}", eigenvalues.join(", "));
}
