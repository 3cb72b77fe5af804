//! The config-driven pipeline behind `krall-verify verify`.

use krall_discrete::families::Family;
use krall_discrete::rational::{int, rat};
use krall_discrete::sets::IndexSet;
use krall_discrete::verify::{emit_report, verify_conjecture, Format, VerifyConfig};

fn main() {
    let mut cfg = VerifyConfig::new(Family::Krawtchouk, int(2));
    cfg.n = Some(rat(31, 2));
    cfg.f1 = IndexSet::new(vec![1, 2]).unwrap();
    cfg.f2 = Some(IndexSet::new(vec![1]).unwrap());
    cfg.n_max = 6;

    let report = verify_conjecture(&cfg);
    print!("{}", String::from_utf8(emit_report(&report, Format::Text)).unwrap());
    println!("exit code {}", report.exit_code());

    // A degenerate measure: Omega(1) = 0 for (x - 1) rho_1.
    let mut cfg = VerifyConfig::new(Family::Charlier, int(1));
    cfg.f1 = IndexSet::new(vec![1]).unwrap();
    cfg.n_max = 4;
    let report = verify_conjecture(&cfg);
    print!("{}", String::from_utf8(emit_report(&report, Format::Text)).unwrap());
    println!("exit code {}", report.exit_code());
}
