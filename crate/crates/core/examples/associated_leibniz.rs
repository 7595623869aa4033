//! Binary Leibniz algebras on A⊗A from each admissible bracket form, and
//! δ dual to a Leibniz bracket checked against the cocycle forms.

use trileibniz::associated::{associated, delta_cocycle_residual, leibniz_residual, CocycleForm, LeibnizForm};
use trileibniz::correspondence::set_all_params;
use trileibniz::exactmath::rational;
use trileibniz::fixtures;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for alg in [fixtures::a1(), fixtures::a2(), fixtures::l4()] {
        for form in LeibnizForm::ALL {
            match associated(&alg, form) {
                Ok(g) => println!(
                    "{} form {form}: {:?} Leibniz of dimension {}, {} nonzero constants, residual zero: {}",
                    alg.name,
                    g.side,
                    g.dim(),
                    g.entries().count(),
                    leibniz_residual(&g).is_zero()
                ),
                Err(e) => println!("{} form {form}: {e}", alg.name),
            }
        }
    }

    let g = associated(&fixtures::a1(), LeibnizForm::One)?;
    let dual = set_all_params(&fixtures::d1_second(), rational(1, 1));
    let gstar = associated(&dual, LeibnizForm::TwentyOne)?;
    for form in CocycleForm::ALL {
        let r = delta_cocycle_residual(&g, &gstar, form)?;
        println!(
            "δ = transpose of g* bracket, cocycle form {form}: {} nonzero entries",
            r.len()
        );
    }
    Ok(())
}
