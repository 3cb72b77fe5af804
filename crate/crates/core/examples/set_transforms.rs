//! The finite-set maps behind the constructions, and the Krawtchouk
//! canonical split.

use krall_discrete::sets::{involution_i, krawtchouk_canonical_split, order_r, transform_j, IndexSet};

fn main() {
    let f = IndexSet::new(vec![2, 5, 7]).unwrap();
    let g = involution_i(&f).unwrap();
    println!("I({f}) = {g}, I(I(F)) = {}", involution_i(&g).unwrap());
    println!("J_2({f}) = {}", transform_j(&f, 2).unwrap());
    println!("order of the operator for F: 2 r = {}", 2 * order_r(&f, None));

    // (x - 1)(x - 5)(x - 68) rho_{a,100}: 68 = 100 - 1 - 31 moves to F2.
    let roots = IndexSet::new(vec![1, 5, 68]).unwrap();
    let split = krawtchouk_canonical_split(&roots, &IndexSet::empty(), 100).unwrap();
    println!("canonical: F1 = {}, F2 = {}, r = {}", split.canonical.f1, split.canonical.f2, split.canonical.r);
    for alt in &split.alternatives {
        println!("  F1 = {:<10} F2 = {:<10} r = {}", alt.f1.to_string(), alt.f2.to_string(), alt.r);
    }
}
