// Stellar and derived subdivisions, their carrier maps, and bistellar flips.

use morsecraft::subdivision::{bistellar_flip, derived_subdivision, star_face};
use morsecraft::{betti_gf2, fixtures, sx};

pub fn run_example() -> morsecraft::Result<()> {
    let (sd, map) = derived_subdivision(&fixtures::simplex(2), 1)?;
    map.verify()?;
    println!("sd(Δ²): f-vector {:?}", sd.f_vector()?);
    println!("the edge 0-1 is carried by {:?}", map.carrier(&sx![0, 1]).unwrap());

    let (starred, _) = star_face(&fixtures::simplex_boundary(3), &sx![0, 1])?;
    println!("∂Δ³ with 0-1 starred: {} facets, betti {:?}", starred.facets().len(), betti_gf2(&starred)?);

    // bipyramid: swap the axis edge 3-4 for the equatorial edge 0-1 and back
    let bipyramid = fixtures::suspension_of_simplex_boundary(2);
    let flipped = bistellar_flip(&bipyramid, &sx![0, 1], &sx![3, 4])?;
    assert_eq!(bistellar_flip(&flipped, &sx![3, 4], &sx![0, 1])?, bipyramid);
    println!("flipped bipyramid {:?}", flipped.facets());
    Ok(())
}

fn main() -> morsecraft::Result<()> {
    run_example()
}
