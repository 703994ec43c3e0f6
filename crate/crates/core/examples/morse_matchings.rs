// Random and exhaustive Morse matchings, and the Morse inequalities.

use morsecraft::morse::{optimal_morse, random_morse, SearchBudget};
use morsecraft::{betti_gf2, fixtures};

pub fn run_example() -> morsecraft::Result<()> {
    for (name, k) in [("∂Δ³", fixtures::simplex_boundary(3)), ("torus", fixtures::torus()), ("rp2", fixtures::rp2())] {
        let betti = betti_gf2(&k)?;
        let v = random_morse(&k, 0, 10)?;
        v.validate()?.into_result()?;
        let c = v.morse_vector()?.c;
        println!("{name}: random {c:?}, betti {betti:?}");
        assert!(c.iter().zip(&betti).all(|(c, b)| c >= b));
    }

    let (best, proven) = optimal_morse(&fixtures::octahedron(), &SearchBudget::default())?;
    println!("octahedron optimum {:?} (proven: {proven})", best.morse_vector()?.c);

    // a discrete Morse function inducing the matching
    let v = random_morse(&fixtures::simplex(2), 1, 1)?;
    for (face, value) in v.morse_function()? {
        println!("  f({face}) = {value}");
    }
    Ok(())
}

fn main() -> morsecraft::Result<()> {
    run_example()
}
