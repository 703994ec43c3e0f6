// Boundary-critical matchings assembled handle by handle.

use morsecraft::assembly::{handle_pipeline, Handle, HandleDecomposition};
use morsecraft::fixtures;
use morsecraft::morse::SearchBudget;

pub fn run_example() -> morsecraft::Result<()> {
    // S³ as a 0-handle and a 3-handle
    let h = HandleDecomposition {
        handles: vec![
            Handle { complex: fixtures::cone_over_simplex_boundary(3), index: 0, attach: vec![] },
            Handle { complex: fixtures::simplex_boundary(3).cone(50)?, index: 3, attach: (0..4).map(|v| (v, v)).collect() },
        ],
    };
    let r = handle_pipeline(&h, &SearchBudget::default())?;
    println!("S³: handle counts {:?}, c_int {:?}", r.handle_counts, r.matching.morse_vector()?.c_int);

    // an annulus: a hexagonal disk with a band attached along two opposite edges
    let band = morsecraft::SimplicialComplex::build(&[vec![10, 11, 12], vec![11, 12, 13], vec![12, 13, 14], vec![13, 14, 15]])?;
    let annulus = HandleDecomposition {
        handles: vec![
            Handle { complex: fixtures::polygon(6).cone(6)?, index: 0, attach: vec![] },
            Handle { complex: band, index: 1, attach: vec![(0, 10), (1, 11), (4, 14), (3, 15)] },
        ],
    };
    let r = handle_pipeline(&annulus, &SearchBudget::default())?;
    println!("annulus: c_int {:?}, betti {:?}", r.matching.morse_vector()?.c_int, morsecraft::betti_gf2(&r.complex)?);
    Ok(())
}

fn main() -> morsecraft::Result<()> {
    run_example()
}
