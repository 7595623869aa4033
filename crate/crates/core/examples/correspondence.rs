//! The Leibniz bialgebra on A⊗A built from a ternary pair: the case table,
//! a passing case, a reconstructed case and the recipe search.

use trileibniz::bialgebra::BialgebraPair;
use trileibniz::correspondence::{
    case_by_id, cases, search_recipe, set_all_params, verify_correspondence, witness_pair, SEARCH_MAX_FLIPS,
};
use trileibniz::exactmath::rational;
use trileibniz::fixtures;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for case in cases() {
        println!("{:<22} {} ({})", case.id, case.recipe, case.provenance);
    }

    let pair = BialgebraPair::new(fixtures::a1(), set_all_params(&fixtures::d1_second(), rational(1, 1)))?;
    print!("{}", verify_correspondence(&pair, &case_by_id("first-second-1-21")?)?);

    let case = case_by_id("second-second-22-22")?;
    let witness = witness_pair(&case, false);
    let search = search_recipe(&witness, &case, true, SEARCH_MAX_FLIPS)?;
    println!(
        "search for {}: tried {}, {} reproduce the transpose, found {}",
        case.id,
        search.tried,
        search.transpose_matches,
        search.found.map(|r| r.to_string()).unwrap_or_else(|| "nothing".into())
    );

    let lie = case_by_id("lie-lie-3-3")?;
    print!("{}", verify_correspondence(&witness_pair(&lie, true), &lie)?);
    Ok(())
}
