// Elementary collapses: a polygon minus an edge collapses, a polygon does not.

use morsecraft::morse::{collapses_onto, Outcome, SearchBudget};
use morsecraft::{fixtures, Simplex, SimplicialComplex, Subcomplex};

pub fn run_example() -> morsecraft::Result<()> {
    let budget = SearchBudget::default();
    for n in [3, 5, 8] {
        let gon = fixtures::polygon(n);
        let arc = SimplicialComplex::from_facets(gon.facets().iter().skip(1).cloned());
        let v = Simplex::vertex(arc.vertices()[0]);
        let target = Subcomplex::generated_by(arc.clone(), [&v])?;
        if let Outcome::Found(seq) = collapses_onto(&arc, &target, &budget)? {
            seq.verify_onto(&arc, &target)?;
            println!("{n}-gon minus an edge collapses in {} steps", seq.len());
        }
        let whole = Subcomplex::generated_by(gon.clone(), [&v])?;
        assert_eq!(collapses_onto(&gon, &whole, &budget)?, Outcome::Impossible);
    }

    // a triangle collapses onto any of its edges
    let t = fixtures::simplex(2);
    let edge = Subcomplex::generated_by(t.clone(), [&morsecraft::sx![1, 2]])?;
    let seq = collapses_onto(&t, &edge, &budget)?.found().expect("collapsible");
    println!("triangle onto 1-2: {:?}", seq.steps);
    Ok(())
}

fn main() -> morsecraft::Result<()> {
    run_example()
}
