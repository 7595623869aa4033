//! Polynomial scalars with rational coefficients: parsing, arithmetic,
//! canonical rendering and substitution.

use std::collections::BTreeMap;

use trileibniz::exactmath::rational;
use trileibniz::Scalar;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p: Scalar = "1/2*a^2 - a*b + 3".parse()?;
    let q: Scalar = "a - 2*b".parse()?;
    println!("p = {p}");
    println!("q = {q}");
    println!("p*q = {}", &p * &q);
    println!("(p + q)^2 - p^2 - 2*p*q - q^2 = {}", {
        let s = &p + &q;
        &(&(&s.pow(2) - &p.pow(2)) - &(&(&p * &q) * &Scalar::from_int(2))) - &q.pow(2)
    });

    let at = BTreeMap::from([("a".to_string(), rational(2, 1)), ("b".to_string(), rational(-1, 3))]);
    println!("p(a=2, b=-1/3) = {}", p.eval(&at));

    let sub = BTreeMap::from([("b".to_string(), "a + 1".parse::<Scalar>()?)]);
    println!("q(b = a + 1) = {}", q.substitute(&sub));

    match "a / b".parse::<Scalar>() {
        Ok(_) => println!("unexpected"),
        Err(e) => println!("rejected: {e}"),
    }
    Ok(())
}
