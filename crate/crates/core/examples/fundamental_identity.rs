//! Checks the fundamental identity of the built-in algebras under every
//! kind, and shows a failing report.

use trileibniz::algebras::{check, check_tensor, fi_residual_of, satisfied_identities};
use trileibniz::{fixtures, AlgebraKind};

fn main() {
    for alg in [fixtures::a1(), fixtures::a2(), fixtures::l4()] {
        let ok = satisfied_identities(&alg.sc);
        println!("{}: first {}, second {}, third {}", alg.name, ok[0], ok[1], ok[2]);
        print!("{}", check(&alg));
    }

    // A1 does not obey the second identity; the residual names the entries.
    let a1 = fixtures::a1();
    let residual = fi_residual_of(&a1.sc, AlgebraKind::LeibnizSecond);
    println!("A1 under the second identity: {} nonzero entries", residual.len());
    print!("{}", check_tensor("a1", &a1.sc, AlgebraKind::Lie3));
}
