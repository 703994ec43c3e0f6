// Collapse depth and local constructibility certificates.

use morsecraft::fixtures;
use morsecraft::morse::{collapse_depth, is_lc, Outcome, SearchBudget};

pub fn run_example() -> morsecraft::Result<()> {
    let budget = SearchBudget::default();
    for (name, m) in [
        ("∂Δ³", fixtures::simplex_boundary(3)),
        ("∂Δ⁴", fixtures::simplex_boundary(4)),
        ("Δ³", fixtures::simplex(3)),
        ("torus", fixtures::torus()),
    ] {
        let r = collapse_depth(&m, &budget)?;
        let lc = match is_lc(&m, &budget)? {
            Outcome::Found(_) => "LC",
            Outcome::Impossible => "not LC",
            Outcome::Inconclusive => "undecided",
        };
        println!("{name}: cdepth {} (exact: {}), {lc}", r.depth, r.exact);
    }
    Ok(())
}

fn main() -> morsecraft::Result<()> {
    run_example()
}
