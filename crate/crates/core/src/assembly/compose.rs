use std::collections::{BTreeMap, HashMap};

use super::glue::{glue, Glued, GluingSpec};
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::morse::{MorseMatching, Outcome, SearchBudget};
use crate::simplex::{Simplex, Vertex};

/// Output of [`compose_boundary_critical`].
#[derive(Clone, Debug)]
pub struct Composition {
    pub glued: Glued,
    pub matching: MorseMatching,
    /// Set when the direct construction failed and a search produced `matching`.
    pub searched: bool,
}

pub(crate) fn relabel_pairs(v: &MorseMatching, map: &BTreeMap<Vertex, Vertex>) -> Result<Vec<(Simplex, Simplex)>> {
    v.pairs()
        .iter()
        .map(|(a, b)| Ok((a.map_vertices(|x| map[&x])?, b.map_vertices(|x| map[&x])?)))
        .collect()
}

/// Interior critical faces of a boundary-critical matching.
pub(crate) fn interior_critical(v: &MorseMatching) -> Result<Vec<Simplex>> {
    let bd = v.complex().boundary_subcomplex()?;
    Ok(v.critical_cells()?.into_iter().filter(|c| !bd.contains(c)).collect())
}

/// Moves the critical facet of a boundary-critical matching to `target` by
/// reversing the chain of (ridge, facet) pairs leading from `target` back
/// to the current critical facet.
pub(crate) fn reroot(
    piece: &SimplicialComplex,
    pairs: &[(Simplex, Simplex)],
    critical: &Simplex,
    target: &Simplex,
) -> Result<Vec<(Simplex, Simplex)>> {
    let mut up: HashMap<&Simplex, &Simplex> = pairs.iter().map(|(a, b)| (b, a)).collect();
    let mut moves = Vec::new();
    let mut f = target.clone();
    while &f != critical {
        let ridge = up
            .remove(&f)
            .filter(|r| r.len() + 1 == f.len())
            .ok_or_else(|| Error::Construction(format!("facet {f} is not reached from the critical facet")))?
            .clone();
        let parent = piece
            .facets_containing(&ridge)
            .find(|g| **g != f)
            .ok_or_else(|| Error::Construction(format!("ridge {ridge} lies on the boundary")))?
            .clone();
        moves.push((ridge, f, parent.clone()));
        f = parent;
        if moves.len() > piece.facets().len() {
            return Err(Error::Construction("matching does not form a tree of facets".into()));
        }
    }
    let mut out: Vec<(Simplex, Simplex)> = pairs.to_vec();
    for (ridge, child, parent) in moves {
        let at = out.iter().position(|p| p.0 == ridge && p.1 == child).expect("pair present");
        out[at].1 = parent;
    }
    Ok(out)
}

/// Union of the base matching, the piece's matching re-rooted at the facet
/// above the first region's critical ridge, and the region matchings; then
/// that ridge is paired with that facet.
pub(crate) fn attach_matching(
    m: &SimplicialComplex,
    base: Vec<(Simplex, Simplex)>,
    piece: &SimplicialComplex,
    piece_pairs: Vec<(Simplex, Simplex)>,
    piece_critical: &Simplex,
    regions: &[(Vec<(Simplex, Simplex)>, Simplex)],
) -> Result<MorseMatching> {
    let (_, sigma) = regions.first().ok_or_else(|| Error::Construction("no attaching region".into()))?;
    let mut above = piece.facets_containing(sigma);
    let phi = above.next().ok_or_else(|| Error::Construction(format!("{sigma} is not in the attached piece")))?.clone();
    if above.next().is_some() {
        return Err(Error::Construction(format!("{sigma} is not a boundary ridge of the attached piece")));
    }
    let mut pairs = base;
    pairs.extend(reroot(piece, &piece_pairs, piece_critical, &phi)?);
    for (h, _) in regions {
        pairs.extend(h.iter().cloned());
    }
    pairs.push((sigma.clone(), phi));
    Ok(MorseMatching::new(m.clone(), pairs, true))
}

fn interior_counts(v: &MorseMatching) -> Result<Vec<usize>> {
    v.morse_vector()?.c_int.ok_or_else(|| Error::Precondition("matching is not on a pseudomanifold".into()))
}

/// Expected interior critical counts of the composition.
pub fn union_formula(f: &[usize], g: &[usize], h: &[usize]) -> Vec<usize> {
    let d = f.len() - 1;
    (0..=d)
        .map(|k| {
            let sum = f[k] + g[k] + h.get(k).copied().unwrap_or(0);
            if k + 1 >= d { sum - 1 } else { sum }
        })
        .collect()
}

/// Combines boundary-critical matchings `f` on the left piece, `g` on the
/// right piece and `h` on their common part (in left labels) into one on
/// the glued manifold, with interior counts given by [`union_formula`].
pub fn compose_boundary_critical(
    spec: &GluingSpec,
    f: &MorseMatching,
    g: &MorseMatching,
    h: &MorseMatching,
    budget: &SearchBudget,
) -> Result<Composition> {
    let glued = glue(spec)?;
    let d = spec.left.dim() as usize;
    if d < 2 {
        return Err(Error::Precondition("composition needs dimension at least 2".into()));
    }
    if f.complex() != &spec.left || g.complex() != &spec.right {
        return Err(Error::Precondition("f and g must live on the two pieces".into()));
    }
    if h.complex() != &glued.shared.to_complex() {
        return Err(Error::Precondition("h must live on the identified part, in left labels".into()));
    }
    for (name, v) in [("f", f), ("g", g), ("h", h)] {
        if !v.is_boundary_critical() {
            return Err(Error::Precondition(format!("{name} is not boundary-critical")));
        }
    }
    let (fc, gc, hc) = (interior_counts(f)?, interior_counts(g)?, interior_counts(h)?);
    if fc[d] != 1 || gc[d] != 1 || hc[d - 1] != 1 {
        return Err(Error::Precondition(format!(
            "need one critical interior facet in f and g and one critical interior ridge in h, got {fc:?} {gc:?} {hc:?}"
        )));
    }
    let expected = union_formula(&fc, &gc, &hc);
    let m = &glued.complex;
    let g_pairs = relabel_pairs(g, &glued.right_vertex)?;
    let piece = glued.right.to_complex();
    let g_crit: Vec<Simplex> = interior_critical(g)?
        .into_iter()
        .filter(|c| c.len() == d + 1)
        .map(|c| c.map_vertices(|x| glued.right_vertex[&x]))
        .collect::<Result<_>>()?;
    let sigma = interior_critical(h)?.into_iter().find(|c| c.len() == d).expect("counted above");
    let direct = attach_matching(m, f.pairs().to_vec(), &piece, g_pairs, &g_crit[0], &[(h.pairs().to_vec(), sigma)]);
    if let Ok(u) = direct {
        if u.validate()?.is_valid() && interior_counts(&u)? == expected {
            return Ok(Composition { glued, matching: u, searched: false });
        }
    }
    let targets: Vec<Option<usize>> = expected.iter().map(|&c| Some(c)).collect();
    match crate::morse::boundary_critical_search(m, &targets, &[], budget)? {
        Outcome::Found(u) => Ok(Composition { glued, matching: u, searched: true }),
        Outcome::Impossible => Err(Error::Construction("no matching with the expected counts exists".into())),
        Outcome::Inconclusive => Err(Error::Inconclusive("composition search ran out of budget".into())),
    }
}
