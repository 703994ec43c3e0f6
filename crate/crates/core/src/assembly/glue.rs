use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::complex::{SimplicialComplex, Subcomplex};
use crate::error::{Error, Result};
use crate::simplex::{Simplex, Vertex};

/// Two complexes and a vertex bijection `(left, right)` between parts of
/// their boundaries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GluingSpec {
    pub left: SimplicialComplex,
    pub right: SimplicialComplex,
    pub map: Vec<(Vertex, Vertex)>,
}

/// Result of a gluing, with the images of both pieces and of the shared part.
#[derive(Clone, Debug)]
pub struct Glued {
    pub complex: SimplicialComplex,
    pub left: Subcomplex,
    pub right: Subcomplex,
    pub shared: Subcomplex,
    /// Where each right vertex ended up. Left vertices keep their ids.
    pub right_vertex: BTreeMap<Vertex, Vertex>,
}

/// Faces of `bd` spanned by vertices in `vs`.
pub(crate) fn spanned(bd: &Subcomplex, vs: &BTreeSet<Vertex>) -> BTreeSet<Simplex> {
    bd.faces().iter().filter(|f| f.vertices().iter().all(|v| vs.contains(v))).cloned().collect()
}

/// Ids for the right side: mapped vertices take their partner's id,
/// the rest keep theirs when free and otherwise get `max + 1, max + 2, …`.
pub(crate) fn right_relabeling(
    left: &SimplicialComplex,
    right: &SimplicialComplex,
    to_left: &HashMap<Vertex, Vertex>,
) -> BTreeMap<Vertex, Vertex> {
    let used: BTreeSet<Vertex> = left.vertices().into_iter().collect();
    let mut next = left.fresh_vertex().max(right.fresh_vertex());
    let mut out = BTreeMap::new();
    for v in right.vertices() {
        let id = match to_left.get(&v) {
            Some(&l) => l,
            None if !used.contains(&v) => v,
            None => {
                next += 1;
                next - 1
            }
        };
        out.insert(v, id);
    }
    out
}

fn all_faces(k: &SimplicialComplex) -> Result<BTreeSet<Simplex>> {
    Ok(k.index()?.faces().iter().cloned().collect())
}

/// Glues `right` to `left` along the boundary subcomplexes spanned by the
/// mapped vertices. Both sides must be pseudomanifolds of the same dimension
/// and the identified parts pure of codimension one.
pub fn glue(spec: &GluingSpec) -> Result<Glued> {
    let (left, right) = (&spec.left, &spec.right);
    if spec.map.is_empty() {
        return Err(Error::Gluing("empty vertex map".into()));
    }
    if left.dim() != right.dim() || left.dim() < 1 {
        return Err(Error::Gluing("pieces must have the same positive dimension".into()));
    }
    let d = left.dim();
    let mut to_left = HashMap::new();
    let mut to_right = HashMap::new();
    for &(l, r) in &spec.map {
        if to_left.insert(r, l).is_some() || to_right.insert(l, r).is_some() {
            return Err(Error::Gluing(format!("vertex map is not injective at ({l}, {r})")));
        }
    }
    let bl = left.boundary_subcomplex()?;
    let br = right.boundary_subcomplex()?;
    let lv: BTreeSet<Vertex> = to_right.keys().copied().collect();
    let rv: BTreeSet<Vertex> = to_left.keys().copied().collect();
    let il = spanned(&bl, &lv);
    let ir = spanned(&br, &rv);
    for v in &lv {
        if !il.contains(&Simplex::vertex(*v)) {
            return Err(Error::Gluing(format!("left vertex {v} is not on the boundary")));
        }
    }
    for v in &rv {
        if !ir.contains(&Simplex::vertex(*v)) {
            return Err(Error::Gluing(format!("right vertex {v} is not on the boundary")));
        }
    }
    let image: BTreeSet<Simplex> = il.iter().map(|f| f.map_vertices(|v| to_right[&v])).collect::<Result<_>>()?;
    if image != ir {
        return Err(Error::Gluing("vertex map is not a simplicial isomorphism of the identified parts".into()));
    }
    let shared = SimplicialComplex::from_facets(il.iter().cloned());
    if !shared.is_pure() || shared.dim() != d - 1 {
        return Err(Error::Gluing(format!("identified part is not pure of dimension {}", d - 1)));
    }
    let relabel = right_relabeling(left, right, &to_left);
    let right_facets: Vec<Simplex> =
        right.facets().iter().map(|f| f.map_vertices(|v| relabel[&v])).collect::<Result<_>>()?;
    let moved = SimplicialComplex::from_facets(right_facets.iter().cloned());
    let common: BTreeSet<Simplex> = all_faces(left)?.intersection(&all_faces(&moved)?).cloned().collect();
    if common != il {
        let extra: Vec<String> = common.difference(&il).map(|s| s.to_string()).collect();
        return Err(Error::Gluing(format!("unintended face identifications: {}", extra.join(", "))));
    }
    let complex = SimplicialComplex::from_facets(left.facets().iter().cloned().chain(right_facets.iter().cloned()));
    Ok(Glued {
        left: Subcomplex::generated_by(complex.clone(), left.facets())?,
        right: Subcomplex::generated_by(complex.clone(), &right_facets)?,
        shared: Subcomplex::new(complex.clone(), il)?,
        complex,
        right_vertex: relabel,
    })
}
