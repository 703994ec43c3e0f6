use std::collections::HashMap;

use crate::complex::{SimplicialComplex, Subcomplex};
use crate::error::{Error, Result};
use crate::morse::CollapseSequence;
use crate::simplex::{Simplex, Vertex};

/// Staircase triangulation of `K × [0, 1]` with its collapse onto the bottom.
#[derive(Clone, Debug)]
pub struct Prism {
    pub complex: SimplicialComplex,
    pub bottom: Subcomplex,
    pub top: Subcomplex,
    /// Copy of each vertex of `K` in the top layer.
    pub top_vertex: HashMap<Vertex, Vertex>,
    pub collapse: CollapseSequence,
}

/// Builds the prism over `k` whose simplices are the staircases
/// `{w0..wi, wi'..wk'}` of each face sorted by `vertex_order`. Bottom
/// vertices keep their ids; the top copy of the vertex at position `p` of
/// `vertex_order` gets id `max + 1 + p`.
pub fn prism_over(k: &SimplicialComplex, vertex_order: &[Vertex]) -> Result<Prism> {
    let mut sorted = vertex_order.to_vec();
    sorted.sort_unstable();
    if sorted != k.vertices() {
        return Err(Error::InvalidArgument("vertex order is not a permutation of the vertex set".into()));
    }
    let base = k.fresh_vertex();
    let pos: HashMap<Vertex, usize> = vertex_order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let top_vertex: HashMap<Vertex, Vertex> = vertex_order.iter().enumerate().map(|(i, &v)| (v, base + i as Vertex)).collect();
    let ordered = |f: &Simplex| {
        let mut w = f.vertices().to_vec();
        w.sort_by_key(|v| pos[v]);
        w
    };
    // {w0..=i} ∪ {wj'..}: bottom prefix up to i, top suffix from j
    let cell = |w: &[Vertex], i: Option<usize>, j: usize| {
        let bottom = i.map_or(&w[..0], |i| &w[..=i]);
        Simplex::new(bottom.iter().copied().chain(w[j..].iter().map(|v| top_vertex[v]))).expect("distinct ids")
    };
    let mut facets = Vec::new();
    for f in k.facets() {
        let w = ordered(f);
        for i in 0..w.len() {
            facets.push(cell(&w, Some(i), i));
        }
    }
    let complex = SimplicialComplex::from_facets(facets);
    let mut faces = k.index()?.faces().to_vec();
    faces.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    let mut steps = Vec::new();
    for f in &faces {
        let w = ordered(f);
        steps.push((cell(&w, None, 0), cell(&w, Some(0), 0)));
        for i in 1..w.len() {
            steps.push((cell(&w, Some(i - 1), i), cell(&w, Some(i), i)));
        }
    }
    let bottom = Subcomplex::generated_by(complex.clone(), k.facets())?;
    let top_facets: Vec<Simplex> =
        k.facets().iter().map(|f| f.map_vertices(|v| top_vertex[&v])).collect::<Result<_>>()?;
    let top = Subcomplex::generated_by(complex.clone(), &top_facets)?;
    Ok(Prism { complex, bottom, top, top_vertex, collapse: CollapseSequence::new(steps) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn check(k: &SimplicialComplex) -> Prism {
        let order: Vec<Vertex> = k.vertices().into_iter().rev().collect();
        let p = prism_over(k, &order).unwrap();
        p.collapse.verify_onto(&p.complex, &p.bottom).unwrap();
        let d = k.dim() as usize;
        let top_count = k.facets().iter().filter(|f| f.dim() == k.dim()).count();
        assert_eq!(p.complex.f_vector().unwrap()[d + 1], (d + 1) * top_count);
        assert_eq!(p.top.to_complex().f_vector().unwrap(), k.f_vector().unwrap());
        p
    }

    #[test]
    fn prism_examples() {
        assert_eq!(check(&fixtures::simplex(1)).complex.facets().len(), 2);
        let annulus = check(&fixtures::simplex_boundary(2));
        assert_eq!(annulus.complex.facets().len(), 6);
        assert_eq!(check(&fixtures::simplex(2)).complex.facets().len(), 3);
        check(&fixtures::simplex_boundary(3));
        check(&fixtures::octahedron());
    }

    #[test]
    fn rejects_bad_order() {
        assert!(prism_over(&fixtures::simplex(2), &[0, 1]).is_err());
        assert!(prism_over(&fixtures::simplex(2), &[0, 1, 1]).is_err());
    }
}
