// Building complexes and asking basic questions about them.

use morsecraft::{betti_gf2, fixtures, sx, SimplicialComplex};

pub fn run_example() -> morsecraft::Result<()> {
    // a square split along its diagonal
    let square = SimplicialComplex::build(&[vec![0, 1, 2], vec![0, 2, 3]])?;
    println!("facets {:?}", square.facets());
    println!("f-vector {:?}, euler {}", square.f_vector()?, square.euler_characteristic()?);
    println!("boundary {:?}", square.boundary_subcomplex()?.facets());
    println!("link of 0: {:?}", square.link(&sx![0])?.facets());
    println!("star of 0-2: {:?}", square.star(&sx![0, 2])?.facets());

    for (name, k) in [("torus", fixtures::torus()), ("rp2", fixtures::rp2()), ("octahedron", fixtures::octahedron())] {
        let report = k.manifold_check()?;
        println!("{name}: betti mod 2 {:?}, manifold {}, orientable {}", betti_gf2(&k)?, report.passes(), k.is_orientable());
    }
    let suspension = fixtures::simplex_boundary(2).join(&SimplicialComplex::build(&[vec![10], vec![11]])?)?;
    assert_eq!(betti_gf2(&suspension)?, vec![1, 0, 1]);
    Ok(())
}

fn main() -> morsecraft::Result<()> {
    run_example()
}
