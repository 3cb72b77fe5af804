//! Charlier, Meixner and Krawtchouk polynomials, their recurrences and
//! D-operators.

use krall_discrete::families::FamilySpec;
use krall_discrete::rational::{int, rat};

fn main() {
    let specs = [
        FamilySpec::charlier(int(1)).unwrap(),
        FamilySpec::meixner(rat(1, 2), int(7)).unwrap(),
        FamilySpec::krawtchouk(int(2), rat(31, 2)).unwrap(),
    ];
    for spec in &specs {
        println!("{spec}");
        for n in 0..4 {
            println!("  p_{n} = {}", spec.polynomial(n));
        }
        // The explicit formula agrees with the three-term recurrence.
        assert_eq!(spec.polynomials(8), spec.polynomials_by_recurrence(8));
        for dop in spec.d_operator_specs() {
            println!("  {}: eps = {}, R_2 = {}", dop.label, dop.epsilon, dop.provider.r(2));
        }
    }
}
