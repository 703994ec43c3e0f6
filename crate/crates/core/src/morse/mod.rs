//! Morse matchings: validation, search, collapses, collapse depth and
//! cancellation of critical pairs.

mod collapse;
mod depth;
mod gradient;
mod matching;
pub(crate) mod search;

pub use collapse::{collapses_onto, CollapseSequence};
pub use depth::{collapse_depth, is_endo_collapsible, is_lc, DepthReport};
pub use gradient::{cancel_pair, gradient_paths};
pub use matching::{vector_key, MorseMatching, MorseVector, ValidationReport, Violation};
pub use search::{Outcome, SearchBudget};

use crate::complex::{FaceId, FaceIndex, SimplicialComplex};
use crate::error::{Error, Result};
use search::{dfs_search, partners_from_steps, random_runs, Arena, CountBounds, Goal, Step};

/// Top-dimensional facet count above which [`optimal_morse`] refuses to run.
pub const EXHAUSTIVE_FACET_LIMIT: usize = 16;

/// Faces not on the boundary of a pseudomanifold.
pub(crate) fn interior_mask(k: &SimplicialComplex, ix: &FaceIndex) -> Result<Vec<bool>> {
    let bd = k.boundary_subcomplex()?;
    Ok(bd.mask(ix).into_iter().map(|b| !b).collect())
}

fn best_run(ix: &FaceIndex, runs: Vec<Vec<Step>>, len: usize) -> (Vec<usize>, Vec<Step>) {
    // runs arrive in restart order, so strict improvement keeps the earliest tie
    let mut best: Option<(Vec<usize>, Vec<Step>)> = None;
    for steps in runs {
        let c = search::critical_counts(ix, &steps, len);
        if best.as_ref().map_or(true, |(b, _)| vector_key(&c) < vector_key(b)) {
            best = Some((c, steps));
        }
    }
    best.expect("at least one restart")
}

fn dims(k: &SimplicialComplex) -> usize {
    (k.dim() + 1).max(0) as usize
}

/// Randomized collapse heuristic; returns the best of `restarts` runs.
pub fn random_morse(k: &SimplicialComplex, seed: u64, restarts: u32) -> Result<MorseMatching> {
    let ix = k.index()?;
    let runs = random_runs(ix, &vec![true; ix.len()], &[], seed, restarts)?;
    let (_, steps) = best_run(ix, runs, dims(k));
    Ok(MorseMatching::from_partners(k.clone(), ix, &partners_from_steps(ix.len(), &steps), false))
}

/// Randomized boundary-critical matching: only interior faces are removed.
pub fn random_boundary_critical(m: &SimplicialComplex, seed: u64, restarts: u32) -> Result<MorseMatching> {
    let ix = m.index()?;
    let runs = random_runs(ix, &interior_mask(m, ix)?, &[], seed, restarts)?;
    let (_, steps) = best_run(ix, runs, dims(m));
    Ok(MorseMatching::from_partners(m.clone(), ix, &partners_from_steps(ix.len(), &steps), true))
}

/// Branch-and-bound for a matching with the best Morse vector. The flag is
/// set when the search space was exhausted (or the homology bound was met).
pub fn optimal_morse(k: &SimplicialComplex, budget: &SearchBudget) -> Result<(MorseMatching, bool)> {
    optimal_morse_with_limit(k, budget, EXHAUSTIVE_FACET_LIMIT)
}

pub fn optimal_morse_with_limit(
    k: &SimplicialComplex,
    budget: &SearchBudget,
    facet_limit: usize,
) -> Result<(MorseMatching, bool)> {
    let top = k.facets().iter().filter(|f| f.dim() == k.dim()).count();
    if top > facet_limit {
        return Err(Error::Precondition(format!(
            "{top} top-dimensional facets exceed the exhaustive limit of {facet_limit}"
        )));
    }
    let ix = k.index()?;
    let removable = vec![true; ix.len()];
    let runs = random_runs(ix, &removable, &[], budget.seed, budget.restarts)?;
    let incumbent = best_run(ix, runs, dims(k));
    let mut arena = Arena::new(ix, removable);
    let out = dfs_search(&mut arena, Goal::Minimize, budget.nodes, Vec::new(), Some(incumbent));
    let (_, steps) = out.best.expect("incumbent present");
    let v = MorseMatching::from_partners(k.clone(), ix, &partners_from_steps(ix.len(), &steps), false);
    Ok((v, out.complete))
}

/// Random restarts followed by exhaustive search for a removal sequence whose
/// critical counts over the removable faces satisfy `bounds`. Faces in
/// `pinned` are declared critical first.
pub(crate) fn constrained_steps(
    k: &SimplicialComplex,
    removable: Vec<bool>,
    pinned: &[FaceId],
    bounds: CountBounds,
    budget: &SearchBudget,
) -> Result<Outcome<Vec<Step>>> {
    let ix = k.index()?;
    let len = dims(k);
    let runs = random_runs(ix, &removable, pinned, budget.seed, budget.restarts)?;
    if let Some(steps) = runs.into_iter().find(|s| bounds.accepts(&search::critical_counts(ix, s, len))) {
        return Ok(Outcome::Found(steps));
    }
    let mut arena = Arena::new(ix, removable);
    let prefix: Vec<Step> = pinned.iter().map(|&p| Step::Critical(p)).collect();
    for &s in &prefix {
        arena.apply(s);
    }
    let out = dfs_search(&mut arena, Goal::Feasible(bounds), budget.nodes, prefix, None);
    Ok(match out.best {
        Some((_, steps)) => Outcome::Found(steps),
        None if out.complete => Outcome::Impossible,
        None => Outcome::Inconclusive,
    })
}

pub(crate) fn constrained_search(
    k: &SimplicialComplex,
    removable: Vec<bool>,
    pinned: &[FaceId],
    bounds: CountBounds,
    budget: &SearchBudget,
    boundary_critical: bool,
) -> Result<Outcome<MorseMatching>> {
    let ix = k.index()?;
    let found = constrained_steps(k, removable, pinned, bounds, budget)?;
    Ok(found.map(|steps| {
        MorseMatching::from_partners(k.clone(), ix, &partners_from_steps(ix.len(), &steps), boundary_critical)
    }))
}

/// Boundary-critical search on a pseudomanifold with exact targets on the
/// interior critical counts (`None` leaves a dimension free).
pub fn boundary_critical_search(
    m: &SimplicialComplex,
    targets: &[Option<usize>],
    pinned: &[FaceId],
    budget: &SearchBudget,
) -> Result<Outcome<MorseMatching>> {
    let ix = m.index()?;
    let removable = interior_mask(m, ix)?;
    constrained_search(m, removable, pinned, CountBounds::exact(targets), budget, true)
}
