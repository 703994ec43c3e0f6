use std::collections::BTreeSet;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::simplex::Simplex;

/// Replaces `s * ∂t` by `∂s * t`. Requires `link(s) = ∂t` and `t ∉ M`.
pub fn bistellar_flip(m: &SimplicialComplex, s: &Simplex, t: &Simplex) -> Result<SimplicialComplex> {
    if !m.contains(s) {
        return Err(Error::NotAFace(s.clone()));
    }
    if t.is_empty() || !s.is_disjoint(t) {
        return Err(Error::LinkCondition(format!("{t} must be non-empty and disjoint from {s}")));
    }
    if s.dim() + t.dim() != m.dim() {
        return Err(Error::LinkCondition(format!("dimensions of {s} and {t} do not add up to {}", m.dim())));
    }
    if m.contains(t) {
        return Err(Error::LinkCondition(format!("{t} is already a face")));
    }
    let around: Vec<&Simplex> = m.facets().iter().filter(|f| s.is_subset_of(f)).collect();
    let link: BTreeSet<Simplex> = around.iter().map(|f| f.difference(s)).collect();
    let expected: BTreeSet<Simplex> = if t.len() == 1 { BTreeSet::from([Simplex::empty()]) } else { t.boundary().collect() };
    if link != expected || around.len() != expected.len() {
        return Err(Error::LinkCondition(format!("link of {s} is not the boundary of {t}")));
    }
    let kept = m.facets().iter().filter(|f| !s.is_subset_of(f)).cloned();
    let added: Vec<Simplex> = s.vertices().iter().map(|&v| s.without_vertex(v).union(t)).collect();
    Ok(SimplicialComplex::from_facets(kept.chain(added)))
}
