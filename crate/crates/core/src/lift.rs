//! Transport of Morse matchings through stellar subdivisions with the same
//! number of critical faces in every dimension.

use std::collections::{BTreeMap, HashMap};

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::morse::MorseMatching;
use crate::simplex::{Simplex, Vertex};
use crate::subdivision::{open_cell, Starring, SubdivisionMap, VertexKey};

#[derive(Clone, Debug)]
pub struct Lift {
    pub complex: SimplicialComplex,
    pub map: SubdivisionMap,
    pub matching: MorseMatching,
    /// Each critical face of the input that is not on a subdivided boundary
    /// face, sent to the critical face replacing it.
    pub critical_image: BTreeMap<Simplex, Simplex>,
    pub(crate) keys: HashMap<Vertex, VertexKey>,
}

struct LiftState {
    st: Starring,
    partner: HashMap<Simplex, Simplex>,
    boundary_critical: bool,
    // current critical face -> original critical face
    origin: HashMap<Simplex, Simplex>,
}

impl LiftState {
    fn new(k: &SimplicialComplex, v: &MorseMatching) -> Result<Self> {
        if v.complex() != k {
            return Err(Error::InvalidArgument("matching belongs to a different complex".into()));
        }
        v.validate()?.into_result()?;
        let mut partner = HashMap::new();
        for (a, b) in v.pairs() {
            partner.insert(a.clone(), b.clone());
            partner.insert(b.clone(), a.clone());
        }
        let origin = v.critical_cells()?.into_iter().map(|c| (c.clone(), c)).collect();
        Ok(LiftState { st: Starring::new(k)?, partner, boundary_critical: v.is_boundary_critical(), origin })
    }

    fn on_boundary(&self, g: &Simplex) -> bool {
        let mut count: HashMap<Simplex, usize> = HashMap::new();
        for f in self.st.facets_containing(g) {
            for &v in f.difference(g).vertices() {
                *count.entry(f.without_vertex(v)).or_default() += 1;
            }
        }
        count.values().any(|&c| c == 1)
    }

    fn pair(&mut self, a: Simplex, b: Simplex) {
        self.partner.insert(a.clone(), b.clone());
        self.partner.insert(b, a);
    }

    fn star(&mut self, s: &Simplex) -> Result<()> {
        if s.len() == 1 {
            return self.st.star(s).map(|_| ());
        }
        let frozen: Vec<bool> = if self.boundary_critical {
            self.st.faces_containing(s).iter().map(|g| self.on_boundary(g)).collect()
        } else {
            Vec::new()
        };
        let step = self.st.star(s)?.expect("positive dimension");
        let a = step.apex;
        let old: HashMap<Simplex, Option<Simplex>> =
            step.star.iter().map(|g| (g.clone(), self.partner.get(g).cloned())).collect();
        for g in &step.star {
            self.partner.remove(g);
        }
        for (i, g) in step.star.iter().enumerate() {
            let cell = open_cell(a, s, g);
            match &old[g] {
                None => {
                    let origin = self.origin.remove(g);
                    if frozen.get(i).copied().unwrap_or(false) {
                        continue;
                    }
                    // designated facet: lexicographically least a ∪ (s − v1) ∪ (g − s)
                    let (v1, d1) = s
                        .vertices()
                        .iter()
                        .map(|&v| (v, g.without_vertex(v).with_vertex(a)))
                        .min_by(|x, y| x.1.cmp(&y.1))
                        .unwrap();
                    for t in cell.iter().filter(|t| !t.contains_vertex(v1) && **t != d1) {
                        self.pair(t.clone(), t.with_vertex(v1));
                    }
                    if let Some(o) = origin {
                        self.origin.insert(d1, o);
                    }
                }
                Some(p) if p.len() > g.len() => {
                    let v = p.difference(g).vertices()[0];
                    for t in cell {
                        let up = t.with_vertex(v);
                        self.pair(t, up);
                    }
                }
                Some(p) => {
                    if s.is_subset_of(p) {
                        continue;
                    }
                    let v = g.difference(p).vertices()[0];
                    if !s.contains_vertex(v) {
                        return Err(Error::Construction(format!("pair ({p}, {g}) meets {s} in an unexpected way")));
                    }
                    let cone = p.with_vertex(a);
                    self.pair(p.clone(), cone.clone());
                    for t in cell.iter().filter(|t| !t.contains_vertex(v) && **t != cone) {
                        self.pair(t.clone(), t.with_vertex(v));
                    }
                }
            }
        }
        Ok(())
    }

    fn finish(self) -> Result<Lift> {
        let complex = self.st.complex();
        let pairs: Vec<(Simplex, Simplex)> =
            self.partner.iter().filter(|(a, b)| a.len() < b.len()).map(|(a, b)| (a.clone(), b.clone())).collect();
        let matching = MorseMatching::new(complex.clone(), pairs, self.boundary_critical);
        let report = matching.validate()?;
        if !report.is_valid() {
            return Err(Error::Construction(format!("lifted matching is invalid: {report:?}")));
        }
        let critical_image = self.origin.into_iter().map(|(new, old)| (old, new)).collect();
        Ok(Lift { map: self.st.map(), keys: self.st.keys.clone(), complex, matching, critical_image })
    }
}

/// Stars `s` in `k` and carries `v` along. With a boundary-critical `v`,
/// faces subdividing boundary faces all stay critical.
pub fn lift_matching(k: &SimplicialComplex, v: &MorseMatching, s: &Simplex) -> Result<Lift> {
    let mut state = LiftState::new(k, v)?;
    state.star(s)?;
    state.finish()
}

/// Lifts `v` through `rounds` derived subdivisions, one starring at a time.
pub fn lift_through_derived(k: &SimplicialComplex, v: &MorseMatching, rounds: usize) -> Result<Lift> {
    if rounds == 0 {
        return Err(Error::InvalidArgument("derived subdivision needs at least one round".into()));
    }
    let mut state = LiftState::new(k, v)?;
    for _ in 0..rounds {
        for f in state.st.schedule() {
            state.star(&f)?;
        }
    }
    state.finish()
}
