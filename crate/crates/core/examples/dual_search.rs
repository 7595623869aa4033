//! Solves the cocycle system for every dual of a numeric algebra, checks
//! printed duals for membership and enumerates a small grid.

use trileibniz::dualsearch::{dual_family, grid_search, verify_member, Membership};
use trileibniz::exactmath::rational;
use trileibniz::{fixtures, AlgebraKind};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let a1 = fixtures::a1();
    let family = dual_family(&a1, AlgebraKind::LeibnizSecond)?;
    println!(
        "second-kind duals of A1: dimension {}, {} quadratic constraints",
        family.dimension(),
        family.constraints.len()
    );
    match verify_member(&family, &fixtures::d1_second().sc)? {
        Membership::Member { assignment } => {
            let nonzero: Vec<String> = assignment
                .iter()
                .filter(|(_, v)| !v.is_zero())
                .map(|(p, v)| format!("{p} = {v}"))
                .collect();
            println!("printed family is a member at {}", nonzero.join(", "));
        }
        other => println!("printed family is not a member: {other:?}"),
    }

    let l4 = fixtures::l4();
    let family = dual_family(&l4, AlgebraKind::Lie3)?;
    println!("Lie duals of L4: dimension {}", family.dimension());
    for c in &family.constraints {
        println!("  {c} = 0");
    }
    let grid = [rational(-1, 1), rational(0, 1), rational(1, 1)];
    let solutions = grid_search(&family, &grid, 9)?;
    println!("grid {{-1,0,1}}: {} solutions", solutions.len());
    for printed in [fixtures::db_lie_first(), fixtures::db_lie_second()] {
        let at_one = trileibniz::correspondence::set_all_params(&printed, rational(1, 1));
        let hit = solutions.iter().position(|s| s.tensor == at_one.sc);
        println!("{} at b = 1 found at position {:?}", printed.name, hit);
    }
    Ok(())
}
