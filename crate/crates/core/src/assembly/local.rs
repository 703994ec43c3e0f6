use std::collections::{BTreeSet, HashMap};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::fixtures;
use crate::simplex::{Simplex, Vertex};

/// A tree of d-simplices and the ordered boundary-ridge identifications
/// that turn it into a locally constructed complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalConstructionTrace {
    pub tree: SimplicialComplex,
    pub identify: Vec<(Simplex, Simplex)>,
}

#[derive(Clone, Debug)]
pub struct LocalConstruction {
    pub complex: SimplicialComplex,
    pub closed: bool,
}

fn boundary_ridges(k: &SimplicialComplex) -> HashMap<Simplex, usize> {
    let mut count: HashMap<Simplex, usize> = HashMap::new();
    for f in k.facets() {
        for r in f.boundary() {
            *count.entry(r).or_default() += 1;
        }
    }
    count.retain(|_, c| *c == 1);
    count
}

/// Identifies two adjacent boundary ridges `r1`, `r2` of `k` by merging the
/// vertex of `r2` off their common face into that of `r1` (keeping the
/// smaller id). Further pairs of boundary ridges that the merge makes equal
/// are glued too; any other identification is rejected.
pub fn identify_ridges(k: &SimplicialComplex, r1: &Simplex, r2: &Simplex) -> Result<SimplicialComplex> {
    let d = k.dim();
    let fail = |why: &str| Error::Construction(format!("identifying {r1} with {r2}: {why}"));
    if r1 == r2 {
        return Err(fail("ridges coincide"));
    }
    let bd = boundary_ridges(k);
    if r1.dim() != d - 1 || r2.dim() != d - 1 || !bd.contains_key(r1) || !bd.contains_key(r2) {
        return Err(fail("not both boundary ridges"));
    }
    let rho = r1.intersection(r2);
    if rho.len() + 1 != r1.len() {
        return Err(fail("ridges are not adjacent"));
    }
    let x1 = r1.difference(&rho).vertices()[0];
    let x2 = r2.difference(&rho).vertices()[0];
    let (keep, drop) = (x1.min(x2), x1.max(x2));
    if k.facets().iter().any(|f| f.contains_vertex(x1) && f.contains_vertex(x2)) {
        return Err(fail("a facet contains both merged vertices"));
    }
    // Other faces made to coincide are allowed only inside a pair of boundary
    // ridges that coincide as well; such a pair already shares a (d−2)-face,
    // so gluing it is itself an admissible step.
    let faces: BTreeSet<&Simplex> = k.index()?.faces().iter().collect();
    let swap = |r: &Simplex| r.without_vertex(drop).with_vertex(keep);
    let cascades: Vec<&Simplex> = bd
        .keys()
        .filter(|r| r.contains_vertex(drop) && !r.contains_vertex(keep) && bd.contains_key(&swap(r)))
        .collect();
    for f in faces.iter().filter(|f| f.contains_vertex(drop)) {
        let rest = f.without_vertex(drop);
        let image = rest.with_vertex(keep);
        if faces.contains(&image) && !rest.is_subset_of(&rho) && !cascades.iter().any(|r| f.is_subset_of(r)) {
            return Err(fail(&format!("{f} would be identified with {image}")));
        }
    }
    let merge = |v: Vertex| if v == drop { keep } else { v };
    let facets: Vec<Simplex> = k.facets().iter().map(|f| f.map_vertices(merge)).collect::<Result<_>>()?;
    let unique: BTreeSet<&Simplex> = facets.iter().collect();
    if unique.len() != facets.len() {
        return Err(fail("two facets would coincide"));
    }
    Ok(SimplicialComplex::from_facets(facets))
}

/// Replays a trace, checking every step.
pub fn build_local_construction(trace: &LocalConstructionTrace) -> Result<LocalConstruction> {
    if !trace.tree.is_tree_of_simplices()? {
        return Err(Error::Precondition("the starting complex is not a tree of simplices".into()));
    }
    let mut k = trace.tree.clone();
    for (r1, r2) in &trace.identify {
        k = identify_ridges(&k, r1, r2)?;
    }
    let closed = k.boundary_subcomplex()?.is_empty();
    Ok(LocalConstruction { complex: k, closed })
}

/// A seeded random trace: a stacked tree of `size` d-simplices followed by
/// identifications chosen uniformly among the admissible ones that keep the
/// complex passing the manifold checks, until none is left or `max_steps`.
pub fn random_trace(d: usize, size: usize, max_steps: usize, seed: u64) -> Result<LocalConstructionTrace> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tree = fixtures::stacked_ball(d, size, rng.gen());
    let mut k = tree.clone();
    let mut identify = Vec::new();
    while identify.len() < max_steps {
        let mut ridges: Vec<Simplex> = boundary_ridges(&k).into_keys().collect();
        ridges.sort();
        let mut candidates = Vec::new();
        for (i, a) in ridges.iter().enumerate() {
            for b in &ridges[i + 1..] {
                if a.intersection(b).len() + 1 == a.len() {
                    candidates.push((a.clone(), b.clone()));
                }
            }
        }
        candidates.shuffle(&mut rng);
        let mut next = None;
        for (a, b) in candidates {
            if let Ok(k2) = identify_ridges(&k, &a, &b) {
                if k2.manifold_check()?.passes() {
                    next = Some((a, b, k2));
                    break;
                }
            }
        }
        match next {
            Some((a, b, k2)) => {
                identify.push((a, b));
                k = k2;
            }
            None => break,
        }
    }
    Ok(LocalConstructionTrace { tree, identify })
}

/// A seeded trace that rebuilds the closed pseudomanifold `m`: cut `m` open
/// along a random spanning tree of its dual graph, then glue adjacent copies
/// of the same ridge back together one pair at a time in random order. The
/// trace stops early when no admissible pair is left, so its result is `m`
/// (up to relabeling) exactly when it ends closed.
pub fn unfolding_trace(m: &SimplicialComplex, seed: u64) -> Result<LocalConstructionTrace> {
    let d = m.dim();
    if d < 1 || !m.is_pure() || !m.is_pseudomanifold() || !m.is_strongly_connected() {
        return Err(Error::Precondition("need a strongly connected pure pseudomanifold".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let facets = m.facets();
    let mut by_ridge: HashMap<Simplex, Vec<usize>> = HashMap::new();
    for (i, f) in facets.iter().enumerate() {
        for r in f.boundary() {
            by_ridge.entry(r).or_default().push(i);
        }
    }
    // random spanning tree, grown from a random facet; each copy remembers its original vertex
    let mut copies: Vec<Option<Vec<(Vertex, Vertex)>>> = vec![None; facets.len()];
    let mut image: HashMap<Vertex, Vertex> = HashMap::new();
    let mut next: Vertex = 0;
    let mut fresh = |v: Vertex, image: &mut HashMap<Vertex, Vertex>| {
        image.insert(next, v);
        next += 1;
        next - 1
    };
    let root = rng.gen_range(0..facets.len());
    copies[root] = Some(facets[root].vertices().iter().map(|&v| (v, fresh(v, &mut image))).collect());
    let mut frontier = vec![root];
    let mut tree = vec![Simplex::new(copies[root].as_ref().unwrap().iter().map(|p| p.1))?];
    while !frontier.is_empty() {
        let at = rng.gen_range(0..frontier.len());
        let p = frontier[at];
        let mut open: Vec<(Simplex, usize)> = facets[p]
            .boundary()
            .flat_map(|r| by_ridge[&r].iter().filter(|&&q| q != p && copies[q].is_none()).map(move |&q| (r.clone(), q)))
            .collect();
        if open.is_empty() {
            frontier.swap_remove(at);
            continue;
        }
        open.sort();
        let (r, q) = open.choose(&mut rng).cloned().unwrap();
        let parent = copies[p].clone().unwrap();
        let c: Vec<(Vertex, Vertex)> = facets[q]
            .vertices()
            .iter()
            .map(|&v| match parent.iter().find(|pc| pc.0 == v && r.contains_vertex(v)) {
                Some(pc) => (v, pc.1),
                None => (v, fresh(v, &mut image)),
            })
            .collect();
        tree.push(Simplex::new(c.iter().map(|p| p.1))?);
        copies[q] = Some(c);
        frontier.push(q);
    }
    let tree = SimplicialComplex::from_facets(tree);
    let mut k = tree.clone();
    let mut identify = Vec::new();
    let orig = |r: &Simplex, image: &HashMap<Vertex, Vertex>| r.map_vertices(|v| image[&v]);
    loop {
        let mut ridges: Vec<Simplex> = boundary_ridges(&k).into_keys().collect();
        ridges.sort();
        let mut candidates = Vec::new();
        for (i, a) in ridges.iter().enumerate() {
            for b in &ridges[i + 1..] {
                if a.intersection(b).len() + 1 == a.len() && orig(a, &image)? == orig(b, &image)? {
                    candidates.push((a.clone(), b.clone()));
                }
            }
        }
        candidates.shuffle(&mut rng);
        let step = candidates.into_iter().find_map(|(a, b)| identify_ridges(&k, &a, &b).ok().map(|k2| (a, b, k2)));
        match step {
            Some((a, b, k2)) => {
                identify.push((a, b));
                k = k2;
            }
            None => break,
        }
    }
    Ok(LocalConstructionTrace { tree, identify })
}
