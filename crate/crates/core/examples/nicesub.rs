// An endo-collapsible subdivision of a ball that agrees with a derived
// subdivision on the boundary.

use morsecraft::fixtures;
use morsecraft::morse::SearchBudget;
use morsecraft::subdivision::nicesub_pipeline;

pub fn run_example() -> morsecraft::Result<()> {
    for (name, b) in [("Δ²", fixtures::simplex(2)), ("cone over ∂Δ²", fixtures::cone_over_simplex_boundary(2))] {
        let n = nicesub_pipeline(&b, &SearchBudget::default())?;
        n.certificate.validate()?.into_result()?;
        println!(
            "{name}: {} derived rounds, starred {}, {} facets, c_int {:?}",
            n.rounds,
            n.starred,
            n.complex.facets().len(),
            n.certificate.morse_vector()?.c_int
        );
    }
    Ok(())
}

fn main() -> morsecraft::Result<()> {
    run_example()
}
