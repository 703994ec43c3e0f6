use std::collections::{BTreeSet, HashMap};

use super::star::{derived_state, keyed_facets, Starring, SubdivisionMap, VertexKey};
use crate::complex::{SimplicialComplex, Subcomplex, DEFAULT_FACE_CAP};
use crate::error::{Error, Result};
use crate::morse::{collapses_onto, MorseMatching, Outcome, SearchBudget};
use crate::simplex::{Simplex, Vertex};

/// Most derived rounds tried before giving up.
pub const MAX_NICESUB_ROUNDS: usize = 3;

/// An endo-collapsible subdivision `B′` of a ball `B` whose boundary is the
/// `rounds`-th derived subdivision of `∂B`.
#[derive(Clone, Debug)]
pub struct Nicesub {
    pub complex: SimplicialComplex,
    pub map: SubdivisionMap,
    pub rounds: usize,
    /// The interior facet of `sd^rounds B` that was starred.
    pub starred: Simplex,
    /// Boundary-critical matching with a single critical interior facet.
    pub certificate: MorseMatching,
    pub(crate) keys: HashMap<Vertex, VertexKey>,
}

/// Subdivides `b` until a facet misses the boundary, stars that facet, and
/// certifies endo-collapsibility: the new cone is collapsed from its apex,
/// and the rest (a collar of the boundary) is collapsed onto `∂B′` by search.
pub fn nicesub_pipeline(b: &SimplicialComplex, budget: &SearchBudget) -> Result<Nicesub> {
    if !b.is_pure() || b.dim() < 1 {
        return Err(Error::NotPure);
    }
    let report = b.manifold_check()?;
    if !report.passes() {
        return Err(Error::Precondition(format!("not a manifold: {}", report.problems.join("; "))));
    }
    let boundary = b.boundary_subcomplex()?.to_complex();
    if boundary.is_empty() {
        return Err(Error::Precondition("the ball has empty boundary".into()));
    }
    let mut failures = Vec::new();
    for r in 0..=MAX_NICESUB_ROUNDS {
        let mut st = if r == 0 { Starring::new(b)? } else { derived_state(b, r, DEFAULT_FACE_CAP)? };
        let current = st.complex();
        let on_boundary: BTreeSet<u32> = current.boundary_subcomplex()?.to_complex().vertices().into_iter().collect();
        let Some(delta) =
            current.facets().iter().find(|f| f.vertices().iter().all(|v| !on_boundary.contains(v))).cloned()
        else {
            continue;
        };
        let apex = st.star(&delta)?.expect("facet of positive dimension").apex;
        let complex = st.complex();
        match certify(&complex, apex, &delta, budget)? {
            Outcome::Found(certificate) => {
                let sub_boundary = complex.boundary_subcomplex()?.to_complex();
                let same = if r == 0 {
                    sub_boundary == boundary
                } else {
                    let bd_state = derived_state(&boundary, r, DEFAULT_FACE_CAP)?;
                    keyed_facets(&sub_boundary, &st.keys) == keyed_facets(&bd_state.complex(), &bd_state.keys)
                };
                if !same {
                    return Err(Error::Construction("boundary is not the derived subdivision of ∂B".into()));
                }
                return Ok(Nicesub { complex, map: st.map(), rounds: r, starred: delta, certificate, keys: st.keys });
            }
            other => failures.push(format!("round {r}: collar collapse {other:?}")),
        }
    }
    if failures.is_empty() {
        Err(Error::Construction(format!("no interior facet within {MAX_NICESUB_ROUNDS} derived rounds")))
    } else {
        Err(Error::Inconclusive(failures.join("; ")))
    }
}

/// Matching on the cone `apex * ∂Δ` collapsing everything but `apex * (Δ − v0)`
/// onto `∂Δ`, lifted from the collapse of `∂Δ − (Δ − v0)` onto `v0`.
pub(crate) fn cone_pairs(apex: u32, delta: &Simplex) -> (Vec<(Simplex, Simplex)>, Simplex) {
    let v0 = delta.vertices()[0];
    let sigma0 = delta.without_vertex(v0);
    let mut pairs = vec![(Simplex::vertex(apex), Simplex::new([apex, v0]).unwrap())];
    for tau in sigma0.faces().filter(|t| *t != sigma0) {
        let lo = tau.with_vertex(apex);
        pairs.push((lo.clone(), lo.with_vertex(v0)));
    }
    (pairs, sigma0.with_vertex(apex))
}

fn certify(
    complex: &SimplicialComplex,
    apex: u32,
    delta: &Simplex,
    budget: &SearchBudget,
) -> Result<Outcome<MorseMatching>> {
    let (mut pairs, _) = cone_pairs(apex, delta);
    let collar = SimplicialComplex::from_facets(complex.facets().iter().filter(|f| !f.contains_vertex(apex)).cloned());
    let target = Subcomplex::new(collar.clone(), complex.boundary_subcomplex()?.faces().clone())?;
    let seq = match collapses_onto(&collar, &target, budget)? {
        Outcome::Found(seq) => seq,
        Outcome::Impossible => return Ok(Outcome::Impossible),
        Outcome::Inconclusive => return Ok(Outcome::Inconclusive),
    };
    pairs.extend(seq.steps);
    let v = MorseMatching::new(complex.clone(), pairs, true);
    v.validate()?.into_result()?;
    Ok(Outcome::Found(v))
}
