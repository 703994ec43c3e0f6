//! Standard small triangulations and seeded random complexes.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::SimplicialComplex;
use crate::simplex::{Simplex, Vertex};

fn from_lists(lists: &[&[Vertex]]) -> SimplicialComplex {
    SimplicialComplex::from_facets(lists.iter().map(|l| Simplex::new(l.iter().copied()).expect("fixture")))
}

/// The full `d`-simplex on vertices `0..=d`.
pub fn simplex(d: usize) -> SimplicialComplex {
    SimplicialComplex::from_facets([Simplex::new(0..=d as Vertex).unwrap()])
}

/// The boundary of the `d`-simplex, a `(d-1)`-sphere on vertices `0..=d`.
pub fn simplex_boundary(d: usize) -> SimplicialComplex {
    let full = Simplex::new(0..=d as Vertex).unwrap();
    SimplicialComplex::from_facets(full.boundary().collect::<Vec<_>>())
}

/// The octahedral 2-sphere: antipodal pairs (0,1), (2,3), (4,5).
pub fn octahedron() -> SimplicialComplex {
    let mut facets = Vec::new();
    for a in [0, 1] {
        for b in [2, 3] {
            for c in [4, 5] {
                facets.push(Simplex::new([a, b, c]).unwrap());
            }
        }
    }
    SimplicialComplex::from_facets(facets)
}

/// The `n`-gon on vertices `0..n`.
pub fn polygon(n: usize) -> SimplicialComplex {
    assert!(n >= 3, "a polygon needs at least three vertices");
    SimplicialComplex::from_facets(
        (0..n).map(|i| Simplex::new([i as Vertex, ((i + 1) % n) as Vertex]).unwrap()),
    )
}

/// A path with `n` edges on vertices `0..=n`.
pub fn path(n: usize) -> SimplicialComplex {
    SimplicialComplex::from_facets((0..n).map(|i| Simplex::new([i as Vertex, i as Vertex + 1]).unwrap()))
}

/// Seven-vertex torus.
pub fn torus() -> SimplicialComplex {
    let mut facets = Vec::new();
    for i in 0..7u32 {
        facets.push(Simplex::new([i, (i + 1) % 7, (i + 3) % 7]).unwrap());
        facets.push(Simplex::new([i, (i + 2) % 7, (i + 3) % 7]).unwrap());
    }
    SimplicialComplex::from_facets(facets)
}

/// Six-vertex real projective plane.
pub fn rp2() -> SimplicialComplex {
    from_lists(&[
        &[1, 2, 4],
        &[1, 2, 6],
        &[1, 3, 5],
        &[1, 3, 6],
        &[1, 4, 5],
        &[2, 3, 4],
        &[2, 3, 5],
        &[2, 5, 6],
        &[3, 4, 6],
        &[4, 5, 6],
    ])
}

/// Disjoint union, shifting the vertex ids of `b` past those of `a`.
pub fn disjoint_union(a: &SimplicialComplex, b: &SimplicialComplex) -> SimplicialComplex {
    let shift = a.fresh_vertex();
    let shifted = b.facets().iter().map(|f| f.map_vertices(|v| v + shift).unwrap());
    SimplicialComplex::from_facets(a.facets().iter().cloned().chain(shifted))
}

/// Cone with a fresh apex over the boundary of the `d`-simplex: a `d`-ball.
pub fn cone_over_simplex_boundary(d: usize) -> SimplicialComplex {
    simplex_boundary(d).cone(d as Vertex + 1).unwrap()
}

/// Suspension of the boundary of the `d`-simplex: a `(d)`-sphere with two apexes.
pub fn suspension_of_simplex_boundary(d: usize) -> SimplicialComplex {
    let base = simplex_boundary(d);
    let n = base.fresh_vertex();
    let up = base.cone(n).unwrap();
    let down = base.cone(n + 1).unwrap();
    SimplicialComplex::from_facets(up.facets().iter().chain(down.facets()).cloned())
}

/// A stacked `d`-ball: a tree of `count` simplices, each new simplex glued to a
/// random boundary ridge of the previous union with one fresh vertex.
pub fn stacked_ball(d: usize, count: usize, seed: u64) -> SimplicialComplex {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut facets = vec![Simplex::new(0..=d as Vertex).unwrap()];
    let mut next = d as Vertex + 1;
    while facets.len() < count {
        let k = SimplicialComplex::from_facets(facets.clone());
        let boundary = k.boundary_subcomplex().unwrap();
        let ridges: Vec<Simplex> =
            boundary.faces().iter().filter(|f| f.len() == d).cloned().collect();
        let r = ridges.choose(&mut rng).unwrap();
        facets.push(r.with_vertex(next));
        next += 1;
    }
    SimplicialComplex::from_facets(facets)
}

/// Random complex: `facets` random subsets of `0..n` of sizes `2..=dim+1`.
pub fn random_complex(n: usize, dim: usize, facets: usize, seed: u64) -> SimplicialComplex {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let verts: Vec<Vertex> = (0..n as Vertex).collect();
    let mut out = Vec::new();
    for _ in 0..facets {
        let size = rng.gen_range(2..=dim + 1).min(n);
        let pick: Vec<Vertex> = verts.choose_multiple(&mut rng, size).copied().collect();
        out.push(Simplex::new(pick).unwrap());
    }
    SimplicialComplex::from_facets(out)
}

/// Named fixtures used by the property suites.
pub fn named_corpus() -> Vec<(String, SimplicialComplex)> {
    let mut out = Vec::new();
    for d in 0..=4 {
        out.push((format!("simplex{d}"), simplex(d)));
        out.push((format!("simplex{}_boundary", d + 1), simplex_boundary(d + 1)));
    }
    out.push(("octahedron".into(), octahedron()));
    out.push(("torus".into(), torus()));
    out.push(("rp2".into(), rp2()));
    out.push(("hexagon".into(), polygon(6)));
    out.push(("cone_over_triangle".into(), cone_over_simplex_boundary(2)));
    out.push(("bipyramid".into(), suspension_of_simplex_boundary(2)));
    out.push(("stacked3".into(), stacked_ball(3, 4, 7)));
    out.push((
        "two_triangles_disjoint".into(),
        disjoint_union(&simplex_boundary(2), &simplex_boundary(2)),
    ));
    out
}

pub fn corpus() -> Vec<SimplicialComplex> {
    named_corpus().into_iter().map(|(_, k)| k).collect()
}
