//! Simplicial complexes stored by their facets, with a lazily built face index.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;
use std::ops::Range;
use std::sync::{Arc, OnceLock};

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::simplex::{Simplex, Vertex};

/// Default cap on the number of materialized faces.
pub const DEFAULT_FACE_CAP: usize = 50_000_000;

pub type FaceId = u32;

/// Every face of a complex, numbered by (dimension, lexicographic order),
/// together with codimension-one incidences in both directions.
#[derive(Debug)]
pub struct FaceIndex {
    faces: Vec<Simplex>,
    dim_start: Vec<usize>,
    ids: HashMap<Simplex, FaceId>,
    down: Vec<SmallVec<[FaceId; 8]>>,
    up: Vec<Vec<FaceId>>,
}

impl FaceIndex {
    fn build(facets: &[Simplex], cap: usize) -> Result<Self> {
        let mut all: HashSet<Simplex> = HashSet::new();
        for f in facets {
            for face in f.faces() {
                all.insert(face);
                if all.len() > cap {
                    return Err(Error::ResourceCap { cap });
                }
            }
        }
        let mut faces: Vec<Simplex> = all.into_iter().collect();
        faces.sort_unstable_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        let top = faces.last().map_or(0, |f| f.len());
        let mut dim_start = vec![0; top + 1];
        for (i, f) in faces.iter().enumerate().rev() {
            dim_start[f.len() - 1] = i;
        }
        dim_start[top] = faces.len();
        let ids: HashMap<Simplex, FaceId> =
            faces.iter().enumerate().map(|(i, f)| (f.clone(), i as FaceId)).collect();
        let mut down = Vec::with_capacity(faces.len());
        let mut up = vec![Vec::new(); faces.len()];
        for (i, f) in faces.iter().enumerate() {
            let d: SmallVec<[FaceId; 8]> = f.boundary().map(|b| ids[&b]).collect();
            for &b in &d {
                up[b as usize].push(i as FaceId);
            }
            down.push(d);
        }
        Ok(FaceIndex { faces, dim_start, ids, down, up })
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn face(&self, id: FaceId) -> &Simplex {
        &self.faces[id as usize]
    }

    pub fn faces(&self) -> &[Simplex] {
        &self.faces
    }

    pub fn id(&self, s: &Simplex) -> Option<FaceId> {
        self.ids.get(s).copied()
    }

    pub fn dim(&self, id: FaceId) -> usize {
        self.faces[id as usize].len() - 1
    }

    /// Highest dimension present, `None` when empty.
    pub fn top_dim(&self) -> Option<usize> {
        (self.dim_start.len() > 1).then(|| self.dim_start.len() - 2)
    }

    pub fn ids_of_dim(&self, d: usize) -> Range<FaceId> {
        if d + 1 >= self.dim_start.len() {
            return 0..0;
        }
        self.dim_start[d] as FaceId..self.dim_start[d + 1] as FaceId
    }

    /// Codimension-one faces.
    pub fn down(&self, id: FaceId) -> &[FaceId] {
        &self.down[id as usize]
    }

    /// Codimension-one cofaces.
    pub fn up(&self, id: FaceId) -> &[FaceId] {
        &self.up[id as usize]
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.dim_start.windows(2).map(|w| w[1] - w[0]).collect()
    }
}

struct Inner {
    facets: Vec<Simplex>,
    index: OnceLock<FaceIndex>,
}

/// An abstract simplicial complex. Immutable; clones share storage.
#[derive(Clone)]
pub struct SimplicialComplex {
    inner: Arc<Inner>,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.inner.facets == other.inner.facets
    }
}

impl Eq for SimplicialComplex {}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimplicialComplex").field("facets", &self.inner.facets).finish()
    }
}

impl SimplicialComplex {
    /// Validating constructor from raw vertex lists.
    pub fn build(facet_lists: &[Vec<Vertex>]) -> Result<Self> {
        if facet_lists.is_empty() {
            return Err(Error::EmptyInput("no facets given"));
        }
        let mut facets = Vec::with_capacity(facet_lists.len());
        for l in facet_lists {
            if l.is_empty() {
                return Err(Error::EmptyInput("empty facet"));
            }
            facets.push(Simplex::new(l.iter().copied())?);
        }
        Ok(Self::from_facets(facets))
    }

    /// Normalizes: deduplicates and drops faces dominated by larger ones.
    /// An empty iterator yields the empty complex.
    pub fn from_facets<I: IntoIterator<Item = Simplex>>(facets: I) -> Self {
        let mut by_size: BTreeMap<usize, BTreeSet<Simplex>> = BTreeMap::new();
        for f in facets {
            if !f.is_empty() {
                by_size.entry(f.len()).or_default().insert(f);
            }
        }
        let mut kept: Vec<Simplex> = Vec::new();
        let mut covered: HashSet<Simplex> = HashSet::new();
        let sizes: Vec<usize> = by_size.keys().rev().copied().collect();
        let multi = sizes.len() > 1;
        for (k, size) in sizes.iter().enumerate() {
            for f in &by_size[size] {
                if covered.contains(f) {
                    continue;
                }
                kept.push(f.clone());
                if multi && k + 1 < sizes.len() {
                    for face in f.faces() {
                        if face.len() < *size {
                            covered.insert(face);
                        }
                    }
                }
            }
        }
        kept.sort();
        SimplicialComplex { inner: Arc::new(Inner { facets: kept, index: OnceLock::new() }) }
    }

    pub fn empty() -> Self {
        Self::from_facets(std::iter::empty())
    }

    pub fn facets(&self) -> &[Simplex] {
        &self.inner.facets
    }

    pub fn is_empty(&self) -> bool {
        self.inner.facets.is_empty()
    }

    /// Maximum facet dimension, `-1` when empty.
    pub fn dim(&self) -> isize {
        self.inner.facets.iter().map(|f| f.dim()).max().unwrap_or(-1)
    }

    pub fn is_pure(&self) -> bool {
        let d = self.dim();
        self.inner.facets.iter().all(|f| f.dim() == d)
    }

    /// The face index, materialized on first use.
    pub fn index(&self) -> Result<&FaceIndex> {
        self.index_with_cap(DEFAULT_FACE_CAP)
    }

    pub fn index_with_cap(&self, cap: usize) -> Result<&FaceIndex> {
        if let Some(ix) = self.inner.index.get() {
            return Ok(ix);
        }
        let built = FaceIndex::build(&self.inner.facets, cap)?;
        let _ = self.inner.index.set(built);
        Ok(self.inner.index.get().expect("index just set"))
    }

    pub fn vertices(&self) -> Vec<Vertex> {
        let set: BTreeSet<Vertex> =
            self.inner.facets.iter().flat_map(|f| f.vertices().iter().copied()).collect();
        set.into_iter().collect()
    }

    pub fn max_vertex(&self) -> Option<Vertex> {
        self.inner.facets.iter().filter_map(|f| f.vertices().last().copied()).max()
    }

    /// First fresh vertex id: one past the largest in use.
    pub fn fresh_vertex(&self) -> Vertex {
        self.max_vertex().map_or(0, |v| v + 1)
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        !s.is_empty() && self.inner.facets.iter().any(|f| s.is_subset_of(f))
    }

    fn require_face(&self, s: &Simplex) -> Result<()> {
        if self.contains(s) {
            Ok(())
        } else {
            Err(Error::NotAFace(s.clone()))
        }
    }

    pub fn f_vector(&self) -> Result<Vec<usize>> {
        Ok(self.index()?.f_vector())
    }

    pub fn euler_characteristic(&self) -> Result<i64> {
        Ok(self
            .f_vector()?
            .iter()
            .enumerate()
            .map(|(i, &n)| if i % 2 == 0 { n as i64 } else { -(n as i64) })
            .sum())
    }

    /// Facets containing `s`.
    pub fn facets_containing<'a>(&'a self, s: &'a Simplex) -> impl Iterator<Item = &'a Simplex> + 'a {
        self.inner.facets.iter().filter(move |f| s.is_subset_of(f))
    }

    /// `{ t : t ∩ s = ∅, t ∪ s ∈ K }`; empty when `s` is a facet.
    pub fn link(&self, s: &Simplex) -> Result<SimplicialComplex> {
        self.require_face(s)?;
        Ok(Self::from_facets(self.facets_containing(s).map(|f| f.difference(s))))
    }

    /// Closed star: every face of every facet containing `s`.
    pub fn star(&self, s: &Simplex) -> Result<Subcomplex> {
        self.require_face(s)?;
        let facets: Vec<Simplex> = self.facets_containing(s).cloned().collect();
        Ok(Subcomplex::closure_of(self.clone(), facets.iter()))
    }

    /// Join with a complex on a disjoint vertex set. The empty complex acts as identity.
    pub fn join(&self, other: &SimplicialComplex) -> Result<SimplicialComplex> {
        let mine: BTreeSet<Vertex> = self.vertices().into_iter().collect();
        if let Some(v) = other.vertices().into_iter().find(|v| mine.contains(v)) {
            return Err(Error::VertexCollision(format!("vertex {v} appears on both sides of the join")));
        }
        if self.is_empty() {
            return Ok(other.clone());
        }
        if other.is_empty() {
            return Ok(self.clone());
        }
        let mut facets = Vec::with_capacity(self.facets().len() * other.facets().len());
        for a in self.facets() {
            for b in other.facets() {
                facets.push(a.union(b));
            }
        }
        Ok(Self::from_facets(facets))
    }

    pub fn cone(&self, apex: Vertex) -> Result<SimplicialComplex> {
        self.join(&Self::from_facets([Simplex::vertex(apex)]))
    }

    /// Ridges (codimension-one faces) with the facets containing them.
    fn ridge_incidence(&self) -> BTreeMap<Simplex, Vec<usize>> {
        let mut map: BTreeMap<Simplex, Vec<usize>> = BTreeMap::new();
        let d = self.dim();
        for (i, f) in self.inner.facets.iter().enumerate() {
            if f.dim() == d && d >= 1 {
                for r in f.boundary() {
                    map.entry(r).or_default().push(i);
                }
            }
        }
        map
    }

    /// Pure, with every ridge in at most two facets.
    pub fn is_pseudomanifold(&self) -> bool {
        if self.is_empty() || !self.is_pure() {
            return false;
        }
        if self.dim() == 0 {
            return self.facets().len() <= 2;
        }
        self.ridge_incidence().values().all(|v| v.len() <= 2)
    }

    fn require_pseudomanifold(&self) -> Result<BTreeMap<Simplex, Vec<usize>>> {
        if !self.is_pure() {
            return Err(Error::NotPure);
        }
        let inc = self.ridge_incidence();
        if let Some((r, v)) = inc.iter().find(|(_, v)| v.len() > 2) {
            return Err(Error::NotPseudomanifold(r.clone(), v.len()));
        }
        Ok(inc)
    }

    /// The faces of ridges lying in exactly one facet.
    pub fn boundary_subcomplex(&self) -> Result<Subcomplex> {
        let inc = self.require_pseudomanifold()?;
        let ridges: Vec<Simplex> =
            inc.into_iter().filter(|(_, v)| v.len() == 1).map(|(r, _)| r).collect();
        Ok(Subcomplex::closure_of(self.clone(), ridges.iter()))
    }

    /// Facets as nodes, shared ridges as edges (facets of top dimension only).
    pub fn dual_graph(&self) -> Result<DualGraph> {
        if !self.is_pure() {
            return Err(Error::NotPure);
        }
        let mut edges = Vec::new();
        for (r, v) in self.ridge_incidence() {
            for a in 0..v.len() {
                for b in a + 1..v.len() {
                    edges.push((v[a], v[b], r.clone()));
                }
            }
        }
        Ok(DualGraph { nodes: self.facets().to_vec(), edges })
    }

    /// Dual graph connected. Non-pure complexes are never strongly connected.
    pub fn is_strongly_connected(&self) -> bool {
        if self.is_empty() || !self.is_pure() {
            return false;
        }
        if self.dim() == 0 {
            return self.facets().len() == 1;
        }
        self.dual_graph().map(|g| g.is_connected()).unwrap_or(false)
    }

    /// Dual graph is a tree, the complex is a pseudomanifold with non-empty
    /// boundary, and it passes [`Self::manifold_check`]. For `d >= 3` this is a
    /// necessary condition for being a tree of `d`-simplices, not a proof.
    pub fn is_tree_of_simplices(&self) -> Result<bool> {
        let g = self.dual_graph()?;
        if !self.is_pseudomanifold() || self.dim() < 1 {
            return Ok(false);
        }
        if !g.is_connected() || g.edges.len() + 1 != g.nodes.len() {
            return Ok(false);
        }
        if self.boundary_subcomplex()?.is_empty() {
            return Ok(false);
        }
        Ok(self.manifold_check()?.passes())
    }

    /// Coherent orientation of a pseudomanifold via propagation across ridges.
    pub fn is_orientable(&self) -> bool {
        if !self.is_pseudomanifold() {
            return false;
        }
        if self.dim() < 1 {
            return true;
        }
        let facets = self.facets();
        let inc = self.ridge_incidence();
        let sign = |f: &Simplex, r: &Simplex| -> i8 {
            let missing = f.difference(r).vertices()[0];
            let pos = f.vertices().iter().position(|&v| v == missing).unwrap();
            if pos % 2 == 0 { 1 } else { -1 }
        };
        let mut adj: Vec<Vec<(usize, i8)>> = vec![Vec::new(); facets.len()];
        for (r, v) in &inc {
            if let [a, b] = v[..] {
                // o_a * s_a(r) = - o_b * s_b(r)
                let rel = -sign(&facets[a], r) * sign(&facets[b], r);
                adj[a].push((b, rel));
                adj[b].push((a, rel));
            }
        }
        let mut orient = vec![0i8; facets.len()];
        for start in 0..facets.len() {
            if orient[start] != 0 {
                continue;
            }
            orient[start] = 1;
            let mut queue = VecDeque::from([start]);
            while let Some(a) = queue.pop_front() {
                for &(b, rel) in &adj[a] {
                    let want = orient[a] * rel;
                    if orient[b] == 0 {
                        orient[b] = want;
                        queue.push_back(b);
                    } else if orient[b] != want {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Necessary conditions for being a combinatorial manifold.
    ///
    /// For `d <= 3` every vertex link is checked to be a ball or sphere of
    /// dimension `d - 1` (surfaces are classified by Euler characteristic,
    /// boundary components and orientability). For `d >= 4` only the
    /// pseudomanifold, connectivity and top Betti conditions are checked.
    pub fn manifold_check(&self) -> Result<ManifoldReport> {
        let mut problems = Vec::new();
        if self.is_empty() {
            problems.push("empty complex".to_string());
            return Ok(ManifoldReport { problems });
        }
        if !self.is_pure() {
            problems.push("not pure".to_string());
            return Ok(ManifoldReport { problems });
        }
        if !self.is_pseudomanifold() {
            problems.push("some ridge lies in three or more facets".to_string());
            return Ok(ManifoldReport { problems });
        }
        let d = self.dim();
        let boundary = self.boundary_subcomplex()?;
        if d <= 3 {
            for v in self.vertices() {
                let lk = self.link(&Simplex::vertex(v))?;
                let on_boundary = boundary.contains(&Simplex::vertex(v));
                match classify_low_dim(&lk, d - 1)? {
                    Some(LowDimType::Ball) if on_boundary => {}
                    Some(LowDimType::Sphere) if !on_boundary => {}
                    Some(t) => problems.push(format!(
                        "link of vertex {v} is a {t:?} but the vertex is {}",
                        if on_boundary { "on the boundary" } else { "interior" }
                    )),
                    None => problems.push(format!("link of vertex {v} is neither a ball nor a sphere")),
                }
            }
        } else {
            let betti = crate::homology::betti_gf2(self)?;
            if betti[0] != 1 {
                problems.push("not connected".to_string());
            }
            let top = betti.get(d as usize).copied().unwrap_or(0);
            let want = usize::from(boundary.is_empty());
            if top != want {
                problems.push(format!("top GF(2) Betti number is {top}, expected {want}"));
            }
            if !self.is_strongly_connected() {
                problems.push("not strongly connected".to_string());
            }
        }
        Ok(ManifoldReport { problems })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum LowDimType {
    Ball,
    Sphere,
}

/// Recognizes balls and spheres of dimension at most 2.
fn classify_low_dim(k: &SimplicialComplex, d: isize) -> Result<Option<LowDimType>> {
    if d < 0 {
        return Ok(None);
    }
    if k.dim() != d || !k.is_pure() {
        return Ok(None);
    }
    match d {
        0 => Ok(match k.facets().len() {
            1 => Some(LowDimType::Ball),
            2 => Some(LowDimType::Sphere),
            _ => None,
        }),
        1 => {
            let mut degree: BTreeMap<Vertex, usize> = BTreeMap::new();
            for e in k.facets() {
                for &v in e.vertices() {
                    *degree.entry(v).or_default() += 1;
                }
            }
            if degree.values().any(|&n| n > 2) || !k.is_strongly_connected_1d() {
                return Ok(None);
            }
            let ends = degree.values().filter(|&&n| n == 1).count();
            Ok(match ends {
                0 => Some(LowDimType::Sphere),
                2 => Some(LowDimType::Ball),
                _ => None,
            })
        }
        2 => {
            if !k.is_pseudomanifold() || !k.is_strongly_connected() {
                return Ok(None);
            }
            let boundary = k.boundary_subcomplex()?;
            for v in k.vertices() {
                let lk = k.link(&Simplex::vertex(v))?;
                let want = if boundary.contains(&Simplex::vertex(v)) {
                    LowDimType::Ball
                } else {
                    LowDimType::Sphere
                };
                if classify_low_dim(&lk, 1)? != Some(want) {
                    return Ok(None);
                }
            }
            let chi = k.euler_characteristic()?;
            if !k.is_orientable() {
                return Ok(None);
            }
            if boundary.is_empty() {
                Ok((chi == 2).then_some(LowDimType::Sphere))
            } else {
                let bd = boundary.to_complex();
                let one_component = classify_low_dim(&bd, 1)? == Some(LowDimType::Sphere);
                Ok((chi == 1 && one_component).then_some(LowDimType::Ball))
            }
        }
        _ => Ok(None),
    }
}

impl SimplicialComplex {
    fn is_strongly_connected_1d(&self) -> bool {
        // for graphs, strong connectivity and connectivity coincide
        self.is_strongly_connected()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManifoldReport {
    pub problems: Vec<String>,
}

impl ManifoldReport {
    pub fn passes(&self) -> bool {
        self.problems.is_empty()
    }
}

#[derive(Debug, Clone)]
pub struct DualGraph {
    pub nodes: Vec<Simplex>,
    /// `(facet, facet, shared ridge)`
    pub edges: Vec<(usize, usize, Simplex)>,
}

impl DualGraph {
    pub fn is_connected(&self) -> bool {
        if self.nodes.is_empty() {
            return false;
        }
        let mut adj = vec![Vec::new(); self.nodes.len()];
        for (a, b, _) in &self.edges {
            adj[*a].push(*b);
            adj[*b].push(*a);
        }
        let mut seen = vec![false; self.nodes.len()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(a) = stack.pop() {
            for &b in &adj[a] {
                if !seen[b] {
                    seen[b] = true;
                    stack.push(b);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn is_tree(&self) -> bool {
        self.is_connected() && self.edges.len() + 1 == self.nodes.len()
    }
}

/// A downward-closed set of faces of a parent complex.
#[derive(Clone, PartialEq, Eq)]
pub struct Subcomplex {
    parent: SimplicialComplex,
    faces: BTreeSet<Simplex>,
}

impl fmt::Debug for Subcomplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Subcomplex").field("facets", &self.facets()).finish()
    }
}

impl Subcomplex {
    /// Validates membership in `parent` and closure under subsets.
    pub fn new(parent: SimplicialComplex, faces: BTreeSet<Simplex>) -> Result<Self> {
        for f in &faces {
            if !parent.contains(f) {
                return Err(Error::NotAFace(f.clone()));
            }
            for g in f.boundary() {
                if !faces.contains(&g) {
                    return Err(Error::InvalidArgument(format!(
                        "subcomplex is not closed: {f} is listed but its face {g} is not"
                    )));
                }
            }
        }
        Ok(Subcomplex { parent, faces })
    }

    /// Downward closure of the given faces; faces must belong to `parent`.
    pub(crate) fn closure_of<'a, I: IntoIterator<Item = &'a Simplex>>(parent: SimplicialComplex, gens: I) -> Self {
        let faces = gens.into_iter().flat_map(|g| g.faces().collect::<Vec<_>>()).collect();
        Subcomplex { parent, faces }
    }

    /// Validating variant of [`Self::closure_of`].
    pub fn generated_by<'a, I: IntoIterator<Item = &'a Simplex>>(parent: SimplicialComplex, gens: I) -> Result<Self> {
        let gens: Vec<&Simplex> = gens.into_iter().collect();
        for g in &gens {
            parent.require_face(g)?;
        }
        Ok(Self::closure_of(parent, gens))
    }

    pub fn empty(parent: SimplicialComplex) -> Self {
        Subcomplex { parent, faces: BTreeSet::new() }
    }

    pub fn parent(&self) -> &SimplicialComplex {
        &self.parent
    }

    pub fn faces(&self) -> &BTreeSet<Simplex> {
        &self.faces
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.faces.contains(s)
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    /// Inclusion-maximal faces.
    pub fn facets(&self) -> Vec<Simplex> {
        self.to_complex().facets().to_vec()
    }

    pub fn to_complex(&self) -> SimplicialComplex {
        SimplicialComplex::from_facets(self.faces.iter().cloned())
    }

    /// Membership mask over the parent's face index.
    pub fn mask(&self, index: &FaceIndex) -> Vec<bool> {
        let mut m = vec![false; index.len()];
        for f in &self.faces {
            if let Some(id) = index.id(f) {
                m[id as usize] = true;
            }
        }
        m
    }
}
