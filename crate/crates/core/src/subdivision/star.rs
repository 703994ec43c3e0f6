use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::complex::{SimplicialComplex, DEFAULT_FACE_CAP};
use crate::error::{Error, Result};
use crate::simplex::{Simplex, Vertex};

/// Carrier map of a subdivision: each source face maps to the target faces
/// whose relative interiors lie in its relative interior. The carriers
/// partition the target faces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubdivisionMap {
    source: SimplicialComplex,
    target: SimplicialComplex,
    carrier: BTreeMap<Simplex, BTreeSet<Simplex>>,
}

impl SubdivisionMap {
    pub fn identity(k: &SimplicialComplex) -> Result<Self> {
        let carrier = k.index()?.faces().iter().map(|f| (f.clone(), BTreeSet::from([f.clone()]))).collect();
        Ok(SubdivisionMap { source: k.clone(), target: k.clone(), carrier })
    }

    /// Rebuilds source and target from the carriers alone.
    pub fn from_carriers(carrier: BTreeMap<Simplex, BTreeSet<Simplex>>) -> Self {
        let source = SimplicialComplex::from_facets(carrier.keys().cloned());
        let target = SimplicialComplex::from_facets(carrier.values().flatten().cloned());
        SubdivisionMap { source, target, carrier }
    }

    pub fn source(&self) -> &SimplicialComplex {
        &self.source
    }

    pub fn target(&self) -> &SimplicialComplex {
        &self.target
    }

    pub fn carriers(&self) -> &BTreeMap<Simplex, BTreeSet<Simplex>> {
        &self.carrier
    }

    pub fn carrier(&self, f: &Simplex) -> Option<&BTreeSet<Simplex>> {
        self.carrier.get(f)
    }

    /// Target face → the source face carrying it.
    pub fn owners(&self) -> HashMap<Simplex, Simplex> {
        let mut out = HashMap::new();
        for (src, set) in &self.carrier {
            for t in set {
                out.insert(t.clone(), src.clone());
            }
        }
        out
    }

    /// Carrier map of `next ∘ self`.
    pub fn then(&self, next: &SubdivisionMap) -> Result<SubdivisionMap> {
        if self.target != next.source {
            return Err(Error::InvalidArgument("subdivision maps do not compose".into()));
        }
        let carrier = self
            .carrier
            .iter()
            .map(|(src, mid)| {
                let set = mid.iter().flat_map(|m| next.carrier[m].iter().cloned()).collect();
                (src.clone(), set)
            })
            .collect();
        Ok(SubdivisionMap { source: self.source.clone(), target: next.target.clone(), carrier })
    }

    /// Checks that carriers partition the target faces and that every vertex
    /// of a target face is carried by a face of that face's carrier.
    pub fn verify(&self) -> Result<()> {
        let src = self.source.index()?;
        let tgt = self.target.index()?;
        if src.faces().iter().any(|f| !self.carrier.contains_key(f)) || self.carrier.len() != src.len() {
            return Err(Error::Construction("carrier keys differ from the source faces".into()));
        }
        let owners = self.owners();
        let total: usize = self.carrier.values().map(|s| s.len()).sum();
        if total != tgt.len() || owners.len() != tgt.len() {
            return Err(Error::Construction("carriers do not partition the target faces".into()));
        }
        for t in tgt.faces() {
            let Some(own) = owners.get(t) else {
                return Err(Error::Construction(format!("target face {t} has no carrier")));
            };
            for &v in t.vertices() {
                let vo = &owners[&Simplex::vertex(v)];
                if !vo.is_subset_of(own) {
                    return Err(Error::Construction(format!("vertex {v} of {t} lies outside the carrier {own}")));
                }
            }
        }
        Ok(())
    }
}

impl Serialize for SubdivisionMap {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.carrier.serialize(s)
    }
}

impl<'de> Deserialize<'de> for SubdivisionMap {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(SubdivisionMap::from_carriers(BTreeMap::deserialize(d)?))
    }
}

/// Canonical name of a subdivision vertex: an original vertex, or the cone
/// point of a face named by its vertices' keys.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) enum VertexKey {
    Vertex(Vertex),
    Apex(Vec<VertexKey>),
}

impl VertexKey {
    /// Original vertices underneath this key.
    pub fn leaves(&self) -> BTreeSet<Vertex> {
        let mut out = BTreeSet::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut BTreeSet<Vertex>) {
        match self {
            VertexKey::Vertex(v) => {
                out.insert(*v);
            }
            VertexKey::Apex(ks) => ks.iter().for_each(|k| k.collect_leaves(out)),
        }
    }

    /// Replaces every leaf `v` by `f(v)`, re-sorting cone points.
    pub fn substitute(&self, f: &dyn Fn(Vertex) -> VertexKey) -> VertexKey {
        match self {
            VertexKey::Vertex(v) => f(*v),
            VertexKey::Apex(ks) => {
                let mut ks: Vec<VertexKey> = ks.iter().map(|k| k.substitute(f)).collect();
                ks.sort();
                VertexKey::Apex(ks)
            }
        }
    }
}

/// Faces of the open cell of `f ⊇ s` after coning with `apex`.
pub(crate) fn open_cell(apex: Vertex, s: &Simplex, f: &Simplex) -> Vec<Simplex> {
    let rest = f.difference(s);
    let sv = s.vertices();
    (0u64..(1 << sv.len()) - 1)
        .map(|mask| {
            let mut v: Vec<Vertex> = rest.vertices().to_vec();
            v.push(apex);
            v.extend((0..sv.len()).filter(|i| mask & (1 << i) != 0).map(|i| sv[i]));
            Simplex::new(v).expect("apex is fresh")
        })
        .collect()
}

/// Incremental state for a sequence of starrings.
#[derive(Clone)]
pub(crate) struct Starring {
    facets: BTreeSet<Simplex>,
    by_vertex: HashMap<Vertex, BTreeSet<Simplex>>,
    owner: HashMap<Simplex, Simplex>,
    pub keys: HashMap<Vertex, VertexKey>,
    source: SimplicialComplex,
    next: Vertex,
    cap: usize,
}

pub(crate) struct StarStep {
    pub apex: Vertex,
    /// Faces that contained the starred face, before starring.
    pub star: Vec<Simplex>,
}

impl Starring {
    pub fn new(k: &SimplicialComplex) -> Result<Self> {
        Self::with_cap(k, DEFAULT_FACE_CAP)
    }

    pub fn with_cap(k: &SimplicialComplex, cap: usize) -> Result<Self> {
        let ix = k.index_with_cap(cap)?;
        let mut st = Starring {
            facets: BTreeSet::new(),
            by_vertex: HashMap::new(),
            owner: ix.faces().iter().map(|f| (f.clone(), f.clone())).collect(),
            keys: k.vertices().into_iter().map(|v| (v, VertexKey::Vertex(v))).collect(),
            source: k.clone(),
            next: k.fresh_vertex(),
            cap,
        };
        for f in k.facets() {
            st.add_facet(f.clone());
        }
        Ok(st)
    }

    fn add_facet(&mut self, f: Simplex) {
        for &v in f.vertices() {
            self.by_vertex.entry(v).or_default().insert(f.clone());
        }
        self.facets.insert(f);
    }

    fn remove_facet(&mut self, f: &Simplex) {
        for v in f.vertices() {
            if let Some(set) = self.by_vertex.get_mut(v) {
                set.remove(f);
            }
        }
        self.facets.remove(f);
    }

    pub fn facets_containing(&self, s: &Simplex) -> Vec<Simplex> {
        match s.vertices().first().and_then(|v| self.by_vertex.get(v)) {
            Some(set) => set.iter().filter(|f| s.is_subset_of(f)).cloned().collect(),
            None => Vec::new(),
        }
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.owner.contains_key(s)
    }

    /// Faces of the current complex containing `s`, in increasing order.
    pub fn faces_containing(&self, s: &Simplex) -> Vec<Simplex> {
        let mut star: BTreeSet<Simplex> = BTreeSet::new();
        for f in self.facets_containing(s) {
            let rest = f.difference(s);
            for r in std::iter::once(Simplex::empty()).chain(rest.faces()) {
                star.insert(s.union(&r));
            }
        }
        star.into_iter().collect()
    }

    /// Faces of the current complex, by decreasing dimension then lexicographically.
    pub fn schedule(&self) -> Vec<Simplex> {
        let mut faces: Vec<Simplex> = self.owner.keys().cloned().collect();
        faces.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        faces
    }

    /// Stars `s`; vertices are left alone and return `None`.
    pub fn star(&mut self, s: &Simplex) -> Result<Option<StarStep>> {
        if !self.contains(s) {
            return Err(Error::NotAFace(s.clone()));
        }
        if s.len() == 1 {
            return Ok(None);
        }
        let apex = self.next;
        self.next += 1;
        let key = VertexKey::Apex({
            let mut ks: Vec<VertexKey> = s.vertices().iter().map(|v| self.keys[v].clone()).collect();
            ks.sort();
            ks
        });
        self.keys.insert(apex, key);
        let old_facets = self.facets_containing(s);
        let star = self.faces_containing(s);
        for g in &star {
            let own = self.owner.remove(g).expect("face present");
            for t in open_cell(apex, s, g) {
                self.owner.insert(t, own.clone());
            }
        }
        if self.owner.len() > self.cap {
            return Err(Error::ResourceCap { cap: self.cap });
        }
        for f in &old_facets {
            self.remove_facet(f);
            for &v in s.vertices() {
                self.add_facet(f.without_vertex(v).with_vertex(apex));
            }
        }
        Ok(Some(StarStep { apex, star }))
    }

    pub fn complex(&self) -> SimplicialComplex {
        SimplicialComplex::from_facets(self.facets.iter().cloned())
    }

    pub fn map(&self) -> SubdivisionMap {
        let mut carrier: BTreeMap<Simplex, BTreeSet<Simplex>> = BTreeMap::new();
        for (t, src) in &self.owner {
            carrier.entry(src.clone()).or_default().insert(t.clone());
        }
        SubdivisionMap { source: self.source.clone(), target: self.complex(), carrier }
    }

    /// Runs one round of derived subdivision.
    pub fn derive_once(&mut self) -> Result<()> {
        for f in self.schedule() {
            self.star(&f)?;
        }
        Ok(())
    }
}

/// Stellar subdivision at `s` with a fresh apex `max + 1`:
/// faces containing `s` are replaced by the cone over `∂s * link(s)`.
/// Starring a vertex is the identity.
pub fn star_face(k: &SimplicialComplex, s: &Simplex) -> Result<(SimplicialComplex, SubdivisionMap)> {
    let mut st = Starring::new(k)?;
    st.star(s)?;
    Ok((st.complex(), st.map()))
}

/// `rounds` iterations of starring every face in decreasing dimension.
pub fn derived_subdivision(k: &SimplicialComplex, rounds: usize) -> Result<(SimplicialComplex, SubdivisionMap)> {
    let st = derived_state(k, rounds, DEFAULT_FACE_CAP)?;
    Ok((st.complex(), st.map()))
}

pub(crate) fn derived_state(k: &SimplicialComplex, rounds: usize, cap: usize) -> Result<Starring> {
    if rounds == 0 {
        return Err(Error::InvalidArgument("derived subdivision needs at least one round".into()));
    }
    let mut st = Starring::with_cap(k, cap)?;
    for _ in 0..rounds {
        st.derive_once()?;
    }
    Ok(st)
}

/// Facets rewritten in terms of vertex keys, for comparing subdivisions
/// built from different vertex labelings.
pub(crate) fn keyed_facets(k: &SimplicialComplex, keys: &HashMap<Vertex, VertexKey>) -> BTreeSet<Vec<VertexKey>> {
    k.facets()
        .iter()
        .map(|f| {
            let mut v: Vec<VertexKey> = f.vertices().iter().map(|x| keys[x].clone()).collect();
            v.sort();
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::homology::betti_gf2;
    use crate::sx;

    #[test]
    fn star_top_face_of_triangle() {
        let (k, m) = star_face(&fixtures::simplex(2), &sx![0, 1, 2]).unwrap();
        assert_eq!(k.f_vector().unwrap(), vec![4, 6, 3]);
        assert_eq!(m.carrier(&sx![0, 1, 2]).unwrap().len(), 7);
        assert_eq!(m.carrier(&sx![0, 1]).unwrap(), &BTreeSet::from([sx![0, 1]]));
        m.verify().unwrap();
    }

    #[test]
    fn star_edge_of_triangle_boundary() {
        let (k, _) = star_face(&fixtures::simplex_boundary(2), &sx![0, 1]).unwrap();
        assert_eq!(k.facets(), &[sx![0, 2], sx![0, 3], sx![1, 2], sx![1, 3]]);
    }

    #[test]
    fn star_edge_of_triangle() {
        let (k, m) = star_face(&fixtures::simplex(2), &sx![0, 1]).unwrap();
        assert_eq!(k.facets(), &[sx![0, 2, 3], sx![1, 2, 3]]);
        // the edge from the apex to the opposite vertex lies in the open triangle
        assert!(m.carrier(&sx![0, 1, 2]).unwrap().contains(&sx![2, 3]));
        m.verify().unwrap();
    }

    #[test]
    fn starring_a_vertex_is_identity() {
        let k = fixtures::octahedron();
        let (k2, m) = star_face(&k, &sx![0]).unwrap();
        assert_eq!(k, k2);
        assert_eq!(m, SubdivisionMap::identity(&k).unwrap());
    }

    #[test]
    fn starring_preserves_homology() {
        for k in fixtures::corpus() {
            let faces = k.index().unwrap().faces().to_vec();
            for s in faces.iter().filter(|s| s.len() > 1).step_by(3) {
                let (k2, m) = star_face(&k, s).unwrap();
                assert_eq!(betti_gf2(&k2).unwrap(), betti_gf2(&k).unwrap());
                m.verify().unwrap();
            }
        }
    }

    #[test]
    fn derived_examples() {
        let (k, m) = derived_subdivision(&fixtures::simplex(2), 1).unwrap();
        assert_eq!(k.f_vector().unwrap(), vec![7, 12, 6]);
        m.verify().unwrap();
        let (k, _) = derived_subdivision(&fixtures::simplex_boundary(2), 1).unwrap();
        assert_eq!(k.f_vector().unwrap(), vec![6, 6]);
        assert!(k.is_pseudomanifold() && k.is_strongly_connected());
        let (k, m) = derived_subdivision(&fixtures::simplex(1), 2).unwrap();
        assert_eq!(k.f_vector().unwrap(), vec![5, 4]);
        assert_eq!(betti_gf2(&k).unwrap(), vec![1, 0]);
        m.verify().unwrap();
    }

    #[test]
    fn composed_maps_match_two_rounds() {
        let k = fixtures::simplex(2);
        let (k1, m1) = derived_subdivision(&k, 1).unwrap();
        let (_, m2) = derived_subdivision(&k1, 1).unwrap();
        let (_, both) = derived_subdivision(&k, 2).unwrap();
        assert_eq!(m1.then(&m2).unwrap(), both);
    }

    #[test]
    fn json_round_trip() {
        let (_, m) = derived_subdivision(&fixtures::simplex_boundary(2), 1).unwrap();
        let text = serde_json::to_string(&m).unwrap();
        assert!(text.starts_with("{\"0\":[\"0\"]"));
        let back: SubdivisionMap = serde_json::from_str(&text).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn resource_cap_aborts() {
        let k = fixtures::simplex(3);
        assert!(matches!(derived_state(&k, 2, 200), Err(Error::ResourceCap { .. })));
    }
}
