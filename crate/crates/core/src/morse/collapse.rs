use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::search::{CountBounds, Outcome, SearchBudget};
use super::search::Step;
use super::{constrained_steps, MorseMatching};
use crate::complex::{SimplicialComplex, Subcomplex};
use crate::error::{Error, Result};
use crate::simplex::Simplex;

/// Ordered elementary collapses `(free face, coface)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollapseSequence {
    pub steps: Vec<(Simplex, Simplex)>,
}

impl CollapseSequence {
    pub fn new(steps: Vec<(Simplex, Simplex)>) -> Self {
        CollapseSequence { steps }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Replays the steps on `k` and returns the faces left over.
    ///
    /// Works on plain face sets, independent of the search machinery.
    pub fn replay(&self, k: &SimplicialComplex) -> Result<Subcomplex> {
        let mut alive: HashSet<Simplex> = k.facets().iter().flat_map(|f| f.faces().collect::<Vec<_>>()).collect();
        let vertices = k.vertices();
        for (i, (free, coface)) in self.steps.iter().enumerate() {
            let fail = |why: &str| Error::InvalidArgument(format!("step {i} ({free}, {coface}): {why}"));
            if !alive.contains(free) || !alive.contains(coface) {
                return Err(fail("face already removed or absent"));
            }
            if !(free.len() + 1 == coface.len() && free.is_subset_of(coface)) {
                return Err(fail("not a codimension-one pair"));
            }
            let cofaces = vertices
                .iter()
                .filter(|&&v| !free.contains_vertex(v))
                .filter(|&&v| alive.contains(&free.with_vertex(v)))
                .count();
            if cofaces != 1 {
                return Err(fail("face is not free"));
            }
            alive.remove(coface);
            alive.remove(free);
        }
        Subcomplex::new(k.clone(), alive.into_iter().collect())
    }

    /// Replays and checks that exactly the faces of `target` remain.
    pub fn verify_onto(&self, k: &SimplicialComplex, target: &Subcomplex) -> Result<()> {
        let rest = self.replay(k)?;
        if rest.faces() != target.faces() {
            return Err(Error::InvalidArgument("collapse does not end at the target subcomplex".into()));
        }
        Ok(())
    }

    /// The steps viewed as a Morse matching on `k`.
    pub fn to_matching(&self, k: &SimplicialComplex) -> MorseMatching {
        MorseMatching::new(k.clone(), self.steps.iter().cloned(), false)
    }
}

/// Searches for a collapse of `k` onto the subcomplex `l`.
pub fn collapses_onto(
    k: &SimplicialComplex,
    l: &Subcomplex,
    budget: &SearchBudget,
) -> Result<Outcome<CollapseSequence>> {
    if l.parent() != k {
        return Err(Error::InvalidArgument("target is not a subcomplex of the complex".into()));
    }
    let ix = k.index()?;
    let removable: Vec<bool> = l.mask(ix).into_iter().map(|b| !b).collect();
    let len = (k.dim() + 1).max(0) as usize;
    let found = constrained_steps(k, removable, &[], CountBounds::upper_only(vec![Some(0); len]), budget)?;
    Ok(found.map(|steps| {
        let steps = steps
            .into_iter()
            .map(|s| match s {
                Step::Pair(a, b) => (ix.face(a).clone(), ix.face(b).clone()),
                Step::Critical(_) => unreachable!("no critical removals allowed"),
            })
            .collect();
        CollapseSequence::new(steps)
    }))
}
