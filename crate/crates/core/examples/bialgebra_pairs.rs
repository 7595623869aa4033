//! Symbolic pair checks: every printed dual of the built-in algebras, then
//! a pair that fails.

use trileibniz::bialgebra::{pair_check, BialgebraPair};
use trileibniz::{fixtures, Algebra3, AlgebraKind};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let pairs = [
        (fixtures::a1(), fixtures::d1_second()),
        (fixtures::a1(), fixtures::d1_third()),
        (fixtures::a2(), fixtures::d2_first()),
        (fixtures::a2(), fixtures::d2_second()),
        (fixtures::a2(), fixtures::d2_third()),
        (fixtures::l4(), fixtures::db_lie_first()),
        (fixtures::l4(), fixtures::db_lie_second()),
    ];
    for (a, astar) in pairs {
        let report = pair_check(&BialgebraPair::new(a, astar)?);
        println!("{}: {}", report.title, report.status);
    }

    let a1 = fixtures::a1();
    let self_dual = Algebra3::new("a1_as_dual", a1.sc.clone(), AlgebraKind::LeibnizFirst)?;
    print!("{}", pair_check(&BialgebraPair::new(a1, self_dual)?));
    Ok(())
}
