//! Full verification battery on each built-in example, as the `reproduce`
//! subcommand runs it.

use trileibniz::cli::reproduce;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ids: Vec<String> = std::env::args().skip(1).collect();
    let ids = if ids.is_empty() {
        vec!["ex4-1".to_string(), "ex4-2".to_string(), "ex6-1".to_string()]
    } else {
        ids
    };
    for id in ids {
        let report = reproduce(&id)?;
        print!("{report}");
    }
    Ok(())
}
