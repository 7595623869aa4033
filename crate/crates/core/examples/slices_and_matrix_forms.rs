//! Adjoint matrices and slices, and the matrix forms of the identity and
//! the cocycle system agreeing with the index forms.

use trileibniz::algebras::{ad_matrix, fi_residual_matrix, fi_residual_of};
use trileibniz::bialgebra::{cocycle_matrix, cocycle_tensor, CocycleVariant};
use trileibniz::structure::{slice_chi, slice_y, Matrix};
use trileibniz::{fixtures, Vector};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let a1 = fixtures::a1();
    let ad = ad_matrix(&a1, 1, &Vector::basis(3, 3), &Vector::basis(3, 3))?;
    print_matrix("ad(e3,e3) acting in the first slot", &ad);
    print_matrix("chi_{23} of A1 (rows n, columns p)", &slice_chi(&a1.sc, 2, 3)?);
    print_matrix(
        "Y_1^3 of the second-kind dual (rows s, columns n)",
        &slice_y(&fixtures::d1_second().sc, 1, 3)?,
    );

    for alg in [fixtures::a1(), fixtures::a2(), fixtures::l4()] {
        let same = fi_residual_matrix(&alg.sc, alg.kind) == fi_residual_of(&alg.sc, alg.kind);
        println!("{}: matrix and index identity forms agree: {same}", alg.name);
    }
    let (f, g) = (fixtures::a1().sc, fixtures::d1_second().sc);
    for variant in CocycleVariant::ALL {
        let same = cocycle_matrix(&f, &g, variant) == cocycle_tensor(&f, &g, variant);
        println!("cocycle variant {variant}: matrix and index forms agree: {same}");
    }
    Ok(())
}

fn print_matrix(title: &str, m: &Matrix) {
    println!("{title}:");
    for r in 1..=m.rows() {
        let row: Vec<String> = (1..=m.rows()).map(|c| m.get(r, c).to_string()).collect();
        println!("  [{}]", row.join(", "));
    }
}
