//! Degrees of Casorati-type determinants built from arbitrary polynomials.

use krall_discrete::rational::int;
use krall_discrete::verify::{degree_property_harness, lemma_det, lemma_u_sum, CheckName};
use krall_discrete::Polynomial;

fn main() {
    // Two blocks of one row: degree 1 + 2, unless w = 1 merges them.
    let rs = vec![Polynomial::from_ints(&[0, 1]), Polynomial::from_ints(&[1, 0, 1])];
    for w in [int(2), int(1)] {
        println!("w = {w}: det = {}", lemma_det(&rs, 1, &w, &[1, 2]));
    }

    // One row R = x in the first block: w R(x - 1) - R(x + 1) keeps degree 1,
    // above the single bound 0 stated for both eps.
    println!("eps = 1: {}", lemma_u_sum(&[Polynomial::x()], 1, &int(2), 1));

    let report = degree_property_harness(5, 60);
    let data = &report.check(CheckName::DegreeLemmas).unwrap().data;
    println!(
        "60 random instances: exact degree {}, bound violations {}",
        data["exact_degree"], data["bound_violations"]
    );
}
