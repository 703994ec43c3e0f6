// Gluing two disks into a sphere and composing their Morse matchings.

use morsecraft::assembly::{compose_boundary_critical, glue, union_formula, GluingSpec};
use morsecraft::fixtures;
use morsecraft::morse::{is_endo_collapsible, SearchBudget};

pub fn run_example() -> morsecraft::Result<()> {
    let budget = SearchBudget::default();
    let disk = fixtures::cone_over_simplex_boundary(2);
    let spec = GluingSpec { left: disk.clone(), right: disk.clone(), map: vec![(0, 0), (1, 1), (2, 2)] };
    let glued = glue(&spec)?;
    println!("glued: {:?}", glued.complex.facets());
    println!("right apex 3 became {}", glued.right_vertex[&3]);

    let f = is_endo_collapsible(&disk, &budget)?.found().expect("a cone is endo-collapsible");
    let h = is_endo_collapsible(&glued.shared.to_complex(), &budget)?.found().expect("circle");
    let u = compose_boundary_critical(&spec, &f, &f, &h, &budget)?;
    let counts = |v: &morsecraft::morse::MorseMatching| v.morse_vector().map(|m| m.c_int.unwrap());
    println!(
        "formula {:?}, composed {:?} (search fallback used: {})",
        union_formula(&counts(&f)?, &counts(&f)?, &counts(&h)?),
        counts(&u.matching)?,
        u.searched
    );
    Ok(())
}

fn main() -> morsecraft::Result<()> {
    run_example()
}
