// A triangulated cylinder K × I with a verified collapse onto K × {0}.

use morsecraft::fixtures;
use morsecraft::subdivision::prism_over;

pub fn run_example() -> morsecraft::Result<()> {
    let k = fixtures::simplex_boundary(3);
    let order = k.vertices();
    let p = prism_over(&k, &order)?;
    p.collapse.verify_onto(&p.complex, &p.bottom)?;
    println!(
        "prism over ∂Δ³: {} facets, {} collapse steps, top copy of vertex 0 is {}",
        p.complex.facets().len(),
        p.collapse.len(),
        p.top_vertex[&0]
    );
    Ok(())
}

fn main() -> morsecraft::Result<()> {
    run_example()
}
