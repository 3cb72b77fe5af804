//! Difference operators `sum_l h_l(x) s_l` with polynomial coefficients.

use krall_discrete::families::FamilySpec;
use krall_discrete::rational::rat;
use krall_discrete::{DiffOp, Polynomial};

fn main() {
    let delta = DiffOp::delta();
    let nabla = DiffOp::nabla();
    let cube = Polynomial::from_ints(&[0, 0, 0, 1]);
    println!("delta x^3 = {}", delta.apply(&cube));
    println!("nabla x^3 = {}", nabla.apply(&cube));

    // delta nabla = s_1 - 2 + s_{-1}
    let both = delta.compose(&nabla);
    println!("genre of delta nabla: {:?}, order {}", both.genre().unwrap(), both.order().unwrap());

    // Charlier polynomials are eigenfunctions of their second-order operator.
    let spec = FamilySpec::charlier(rat(1, 2)).unwrap();
    let d = spec.second_order_operator();
    for n in 0..5 {
        let c = spec.polynomial(n);
        let image = d.apply(&c);
        let lambda = image.leading_coeff().cloned().unwrap_or_default() / c.leading_coeff().unwrap();
        assert_eq!(image, c.scale(&lambda));
        println!("D c_{n} = {lambda} c_{n}");
    }
}
