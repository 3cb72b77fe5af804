//! Exact rational polynomials and fraction-free determinants.

use krall_discrete::matrix::{det_polynomial_rows, det_rational};
use krall_discrete::rational::{int, rat};
use krall_discrete::Polynomial;

fn main() {
    let p = Polynomial::new(vec![rat(1, 2), int(0), int(1)]); // x^2 + 1/2
    let q = Polynomial::from_ints(&[-1, 1]); // x - 1
    println!("p = {p}");
    println!("p q = {}", &p * &q);
    println!("p(x + 1) = {}", p.shift(&int(1)));

    let (quot, rem) = p.div_rem(&q).unwrap();
    println!("p = ({quot}) q + {rem}");

    // P(x) - P(x - 1) = p and P(-1) = 0.
    let big_p = p.antidifference();
    println!("antidifference of p: {big_p}");
    assert_eq!(&big_p - &big_p.shift(&int(-1)), p);

    let hilbert: Vec<Vec<_>> = (1..=4).map(|i| (1..=4).map(|j| rat(1, i + j - 1)).collect()).collect();
    println!("det of the 4x4 Hilbert matrix: {}", det_rational(hilbert).unwrap());

    // det [[x, 1], [1, x]] = x^2 - 1
    let rows = vec![vec![Polynomial::x(), Polynomial::one()], vec![Polynomial::one(), Polynomial::x()]];
    println!("det [[x, 1], [1, x]] = {}", det_polynomial_rows(rows).unwrap());
}
