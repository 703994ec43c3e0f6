use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::compose::{attach_matching, interior_critical, relabel_pairs};
use super::glue::{glue, GluingSpec};
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::lift::lift_through_derived;
use crate::morse::{boundary_critical_search, is_endo_collapsible, MorseMatching, Outcome, SearchBudget};
use crate::simplex::{Simplex, Vertex};
use crate::subdivision::{nicesub_pipeline, VertexKey};

/// A ball attached along part of its boundary. `attach` pairs a vertex of
/// the union built so far with a vertex of this handle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Handle {
    pub complex: SimplicialComplex,
    pub index: usize,
    pub attach: Vec<(Vertex, Vertex)>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HandleDecomposition {
    pub handles: Vec<Handle>,
}

#[derive(Clone, Debug, Default)]
pub struct PipelineOptions {
    pub budget: SearchBudget,
    /// Certify every handle through a subdivision instead of trying it as given.
    pub force_nicesub: bool,
}

#[derive(Clone, Debug)]
pub struct PipelineResult {
    pub complex: SimplicialComplex,
    pub matching: MorseMatching,
    /// Number of handles of each index.
    pub handle_counts: Vec<usize>,
    /// Derived rounds applied to the original handles.
    pub rounds: usize,
    /// Handles whose matching had to be found by search on the union.
    pub searched: Vec<usize>,
}

/// Boundary-critical matching on the assembled manifold with `c_i` critical
/// interior faces of dimension `d − i`, where `c_i` counts index-i handles.
pub fn handle_pipeline(h: &HandleDecomposition, budget: &SearchBudget) -> Result<PipelineResult> {
    handle_pipeline_with(h, &PipelineOptions { budget: budget.clone(), force_nicesub: false })
}

fn check_decomposition(h: &HandleDecomposition) -> Result<usize> {
    let first = h.handles.first().ok_or(Error::EmptyInput("no handles"))?;
    if first.index != 0 || !first.attach.is_empty() {
        return Err(Error::Precondition("the first handle must have index 0 and no attachment".into()));
    }
    let d = first.complex.dim();
    if d < 1 {
        return Err(Error::Precondition("handles must have positive dimension".into()));
    }
    let mut last = 0;
    for (j, hd) in h.handles.iter().enumerate() {
        if hd.complex.dim() != d {
            return Err(Error::Precondition(format!("handle {j} has the wrong dimension")));
        }
        if j > 0 && (hd.index == 0 || hd.index as isize > d || hd.attach.is_empty()) {
            return Err(Error::Precondition(format!("handle {j} needs an index in 1..={d} and an attachment")));
        }
        if hd.index < last {
            return Err(Error::Precondition("handles must come in order of increasing index".into()));
        }
        last = hd.index;
        let report = hd.complex.manifold_check()?;
        if !report.passes() || hd.complex.boundary_subcomplex()?.is_empty() {
            return Err(Error::Precondition(format!("handle {j} is not a manifold with boundary")));
        }
    }
    Ok(d as usize)
}

/// A handle together with an endo-collapsibility certificate, possibly on
/// a subdivision of it; keys name the vertices in the handle's own ids.
struct Certified {
    complex: SimplicialComplex,
    matching: MorseMatching,
    keys: HashMap<Vertex, VertexKey>,
    rounds: usize,
}

fn plain_keys(k: &SimplicialComplex) -> HashMap<Vertex, VertexKey> {
    k.vertices().into_iter().map(|v| (v, VertexKey::Vertex(v))).collect()
}

fn certify_handle(j: usize, k: &SimplicialComplex, opts: &PipelineOptions) -> Result<Certified> {
    if !opts.force_nicesub {
        if let Outcome::Found(v) = is_endo_collapsible(k, &opts.budget)? {
            return Ok(Certified { complex: k.clone(), matching: v, keys: plain_keys(k), rounds: 0 });
        }
    }
    match nicesub_pipeline(k, &opts.budget) {
        Ok(n) => Ok(Certified { complex: n.complex, matching: n.certificate, keys: n.keys, rounds: n.rounds }),
        Err(e) => Err(Error::Inconclusive(format!("handle {j}: no endo-collapsible subdivision found ({e})"))),
    }
}

fn compose_keys(new: &HashMap<Vertex, VertexKey>, base: &HashMap<Vertex, VertexKey>) -> HashMap<Vertex, VertexKey> {
    new.iter().map(|(v, k)| (*v, k.substitute(&|x| base[&x].clone()))).collect()
}

/// Lifts a certified handle through `extra` more derived rounds.
fn deepen(c: Certified, extra: usize) -> Result<Certified> {
    if extra == 0 {
        return Ok(c);
    }
    let l = lift_through_derived(&c.complex, &c.matching, extra)?;
    Ok(Certified { keys: compose_keys(&l.keys, &c.keys), complex: l.complex, matching: l.matching, rounds: c.rounds + extra })
}

fn components(k: &SimplicialComplex) -> Vec<SimplicialComplex> {
    let facets = k.facets();
    let mut comp: Vec<usize> = (0..facets.len()).collect();
    fn find(c: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while c[r] != r {
            r = c[r];
        }
        c[i] = r;
        r
    }
    let mut by_vertex: HashMap<Vertex, usize> = HashMap::new();
    for (i, f) in facets.iter().enumerate() {
        for v in f.vertices() {
            if let Some(&j) = by_vertex.get(v) {
                let (a, b) = (find(&mut comp, i), find(&mut comp, j));
                comp[a] = b;
            } else {
                by_vertex.insert(*v, i);
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<Simplex>> = BTreeMap::new();
    for i in 0..facets.len() {
        let r = find(&mut comp, i);
        groups.entry(r).or_default().push(facets[i].clone());
    }
    let mut out: Vec<SimplicialComplex> = groups.into_values().map(SimplicialComplex::from_facets).collect();
    out.sort_by(|a, b| a.facets().cmp(b.facets()));
    out
}

/// Interior targets for the attaching region of an index-`p` handle.
fn region_targets(d: usize, p: usize) -> Vec<Option<usize>> {
    let mut t = vec![Some(0); d];
    t[d - 1] = Some(1);
    if p >= 2 {
        t[d - p] = Some(t[d - p].unwrap() + 1);
    }
    t
}

struct Union {
    complex: SimplicialComplex,
    pairs: Vec<(Simplex, Simplex)>,
    keys: HashMap<Vertex, VertexKey>,
    original: BTreeSet<Vertex>,
    rounds: usize,
}

impl Union {
    fn deepen(&mut self, extra: usize) -> Result<()> {
        if extra == 0 {
            return Ok(());
        }
        let v = MorseMatching::new(self.complex.clone(), self.pairs.clone(), true);
        let l = lift_through_derived(&self.complex, &v, extra)?;
        self.keys = compose_keys(&l.keys, &self.keys);
        self.complex = l.complex;
        self.pairs = l.matching.pairs().to_vec();
        self.rounds += extra;
        Ok(())
    }

    fn matching(&self) -> MorseMatching {
        MorseMatching::new(self.complex.clone(), self.pairs.clone(), true)
    }
}

pub fn handle_pipeline_with(h: &HandleDecomposition, opts: &PipelineOptions) -> Result<PipelineResult> {
    let d = check_decomposition(h)?;
    let mut counts = vec![0; d + 1];
    for hd in &h.handles {
        counts[hd.index] += 1;
    }
    let expected: Vec<usize> = (0..=d).map(|k| counts[d - k]).collect();
    if d == 1 {
        return circle_or_arc(h, opts, counts, expected);
    }
    let first = certify_handle(0, &h.handles[0].complex, opts)?;
    let mut union = Union {
        complex: first.complex.clone(),
        pairs: first.matching.pairs().to_vec(),
        keys: first.keys,
        original: h.handles[0].complex.vertices().into_iter().collect(),
        rounds: first.rounds,
    };
    let mut c_int = vec![0; d + 1];
    c_int[d] = 1;
    let mut searched = Vec::new();
    for (j, hd) in h.handles.iter().enumerate().skip(1) {
        let stage = |what: &str| format!("handle {j} (index {}): {what}", hd.index);
        let mut cert = certify_handle(j, &hd.complex, opts)?;
        let target_rounds = union.rounds.max(cert.rounds);
        union.deepen(target_rounds - union.rounds)?;
        let extra = target_rounds - cert.rounds;
        cert = deepen(cert, extra)?;

        // original handle ids -> original union ids
        let mut to_union: HashMap<Vertex, Vertex> = HashMap::new();
        for &(u, v) in &hd.attach {
            if !union.original.contains(&u) || !hd.complex.vertices().contains(&v) {
                return Err(Error::Gluing(stage(&format!("attaching pair ({u}, {v}) names unknown vertices"))));
            }
            to_union.insert(v, u);
        }
        let mapped: BTreeSet<Vertex> = to_union.keys().copied().collect();
        let mut next = union.original.iter().chain(hd.complex.vertices().iter()).max().copied().unwrap_or(0) + 1;
        for v in hd.complex.vertices() {
            if !to_union.contains_key(&v) {
                let id = if union.original.contains(&v) {
                    next += 1;
                    next - 1
                } else {
                    v
                };
                to_union.insert(v, id);
            }
        }
        union.original.extend(to_union.values().copied());
        let handle_keys: HashMap<Vertex, VertexKey> = cert
            .keys
            .iter()
            .map(|(x, k)| (*x, k.substitute(&|v| VertexKey::Vertex(to_union[&v]))))
            .collect();
        let by_key: HashMap<&VertexKey, Vertex> = union.keys.iter().map(|(v, k)| (k, *v)).collect();
        let hb = cert.complex.boundary_subcomplex()?.to_complex();
        let mut map = Vec::new();
        for x in hb.vertices() {
            if cert.keys[&x].leaves().is_subset(&mapped) {
                let u = by_key
                    .get(&handle_keys[&x])
                    .ok_or_else(|| Error::Gluing(stage("attaching region not found on the union")))?;
                map.push((*u, x));
            }
        }
        let glued = glue(&GluingSpec { left: union.complex.clone(), right: cert.complex.clone(), map })?;
        let m = glued.complex.clone();
        let piece = glued.right.to_complex();
        let g_pairs = relabel_pairs(&cert.matching, &glued.right_vertex)?;
        let g_crit = interior_critical(&cert.matching)?
            .into_iter()
            .find(|c| c.len() == d + 1)
            .ok_or_else(|| Error::Construction(stage("certificate without critical facet")))?
            .map_vertices(|x| glued.right_vertex[&x])?;
        let regions = components(&glued.shared.to_complex());
        let want = if hd.index == 1 { 2 } else { 1 };
        if regions.len() != want {
            return Err(Error::Gluing(stage(&format!("attaching region has {} components", regions.len()))));
        }
        let mut hs = Vec::new();
        for (c, a) in regions.iter().enumerate() {
            let p = if hd.index == 1 { 1 } else { hd.index };
            let hm = match boundary_critical_search(a, &region_targets(d, p), &[], &opts.budget)? {
                Outcome::Found(v) => v,
                Outcome::Impossible => {
                    return Err(Error::Construction(stage(&format!("region {c} admits no suitable matching"))))
                }
                Outcome::Inconclusive => return Err(Error::Inconclusive(stage(&format!("region {c} search")))),
            };
            let sigma = interior_critical(&hm)?
                .into_iter()
                .find(|s| s.len() == d)
                .ok_or_else(|| Error::Construction(stage("region matching without critical ridge")))?;
            hs.push((hm.pairs().to_vec(), sigma));
        }
        c_int[d - hd.index] += 1;
        let direct = attach_matching(&m, union.pairs.clone(), &piece, g_pairs, &g_crit, &hs);
        let ok = match &direct {
            Ok(u) => u.validate()?.is_valid() && u.morse_vector()?.c_int.as_deref() == Some(&c_int[..]),
            Err(_) => false,
        };
        let u = if ok {
            direct?
        } else {
            searched.push(j);
            let targets: Vec<Option<usize>> = c_int.iter().map(|&c| Some(c)).collect();
            match boundary_critical_search(&m, &targets, &[], &opts.budget)? {
                Outcome::Found(u) => u,
                Outcome::Impossible => return Err(Error::Construction(stage("no matching with the expected counts"))),
                Outcome::Inconclusive => return Err(Error::Inconclusive(stage("union search"))),
            }
        };
        for (x, k) in handle_keys {
            union.keys.insert(glued.right_vertex[&x], k);
        }
        union.complex = m;
        union.pairs = u.pairs().to_vec();
    }
    let matching = union.matching();
    matching.validate()?.into_result()?;
    if matching.morse_vector()?.c_int.as_deref() != Some(&expected[..]) {
        return Err(Error::Construction("interior critical counts differ from the handle counts".into()));
    }
    Ok(PipelineResult { complex: union.complex, matching, handle_counts: counts, rounds: union.rounds, searched })
}

/// One-dimensional case: the union is an arc or a polygon; after removing
/// one edge what is left collapses to a vertex.
fn circle_or_arc(
    h: &HandleDecomposition,
    opts: &PipelineOptions,
    counts: Vec<usize>,
    expected: Vec<usize>,
) -> Result<PipelineResult> {
    let mut union = h.handles[0].complex.clone();
    for hd in &h.handles[1..] {
        union = glue(&GluingSpec { left: union, right: hd.complex.clone(), map: hd.attach.clone() })?.complex;
    }
    let targets: Vec<Option<usize>> = expected.iter().map(|&c| Some(c)).collect();
    let matching = match boundary_critical_search(&union, &targets, &[], &opts.budget)? {
        Outcome::Found(v) => v,
        Outcome::Impossible => return Err(Error::Construction("one-dimensional union has no such matching".into())),
        Outcome::Inconclusive => return Err(Error::Inconclusive("one-dimensional union".into())),
    };
    Ok(PipelineResult { complex: union, matching, handle_counts: counts, rounds: 0, searched: Vec::new() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::homology::betti_gf2;

    fn sphere_from_two_balls(d: usize) -> HandleDecomposition {
        let ball = fixtures::cone_over_simplex_boundary(d);
        let cap = fixtures::simplex(d);
        let attach = (0..d as Vertex + 1).map(|v| (v, v)).collect();
        HandleDecomposition {
            handles: vec![
                Handle { complex: ball, index: 0, attach: vec![] },
                Handle { complex: cone_with_apex(&cap, d), index: d, attach },
            ],
        }
    }

    // cone over ∂Δ^d with a high apex id
    fn cone_with_apex(_cap: &SimplicialComplex, d: usize) -> SimplicialComplex {
        fixtures::simplex_boundary(d).cone(100).unwrap()
    }

    #[test]
    fn spheres() {
        for d in 2..=3 {
            let r = handle_pipeline(&sphere_from_two_balls(d), &SearchBudget::default()).unwrap();
            let mut expect = vec![0; d + 1];
            expect[0] = 1;
            expect[d] = 1;
            assert_eq!(r.matching.morse_vector().unwrap().c, expect);
            assert_eq!(betti_gf2(&r.complex).unwrap(), expect);
            assert!(r.searched.is_empty());
        }
    }

    #[test]
    fn circle() {
        let a = fixtures::path(2);
        let b = SimplicialComplex::build(&[vec![2, 3], vec![3, 0]]).unwrap();
        let h = HandleDecomposition {
            handles: vec![
                Handle { complex: a, index: 0, attach: vec![] },
                Handle { complex: b, index: 1, attach: vec![(0, 0), (2, 2)] },
            ],
        };
        let r = handle_pipeline(&h, &SearchBudget::default()).unwrap();
        assert_eq!(r.matching.morse_vector().unwrap().c, vec![1, 1]);
    }

    #[test]
    fn annulus_from_a_band() {
        // hexagonal disk plus a strip joining edge [0,1] to edge [3,4]
        let disk = fixtures::polygon(6).cone(6).unwrap();
        let band = SimplicialComplex::build(&[vec![10, 11, 12], vec![11, 12, 13], vec![12, 13, 14], vec![13, 14, 15]])
            .unwrap();
        let h = HandleDecomposition {
            handles: vec![
                Handle { complex: disk, index: 0, attach: vec![] },
                Handle { complex: band, index: 1, attach: vec![(0, 10), (1, 11), (4, 14), (3, 15)] },
            ],
        };
        let r = handle_pipeline(&h, &SearchBudget::default()).unwrap();
        assert_eq!(r.matching.morse_vector().unwrap().c_int.unwrap(), vec![0, 1, 1]);
        assert_eq!(betti_gf2(&r.complex).unwrap(), vec![1, 1, 0]);
    }

    #[test]
    fn forced_subdivision_route() {
        let opts = PipelineOptions { budget: SearchBudget::default(), force_nicesub: true };
        let r = handle_pipeline_with(&sphere_from_two_balls(2), &opts).unwrap();
        assert!(r.rounds > 0);
        assert_eq!(r.matching.morse_vector().unwrap().c, vec![1, 0, 1]);
    }
}
