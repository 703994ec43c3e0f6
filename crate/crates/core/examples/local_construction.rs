// Local constructions: folding a tree of tetrahedra, and rebuilding a
// 3-sphere from one.

use morsecraft::assembly::{build_local_construction, random_trace, unfolding_trace};
use morsecraft::morse::{is_lc, SearchBudget};
use morsecraft::{betti_gf2, fixtures};

pub fn run_example() -> morsecraft::Result<()> {
    let t = random_trace(3, 5, 100, 7)?;
    let lc = build_local_construction(&t)?;
    println!("random trace: {} steps, closed {}, betti {:?}", t.identify.len(), lc.closed, betti_gf2(&lc.complex)?);

    let sphere = fixtures::stacked_ball(4, 3, 1).boundary_subcomplex()?.to_complex();
    let t = unfolding_trace(&sphere, 2)?;
    let lc = build_local_construction(&t)?;
    println!("unfolded sphere: tree of {} tetrahedra, {} steps, closed {}", t.tree.facets().len(), t.identify.len(), lc.closed);
    let cert = is_lc(&lc.complex, &SearchBudget::default())?.found().expect("LC by construction");
    println!("cdepth ≥ 2 certificate: c {:?}", cert.morse_vector()?.c);
    Ok(())
}

fn main() -> morsecraft::Result<()> {
    run_example()
}
