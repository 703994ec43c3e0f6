use super::search::{Outcome, SearchBudget};
use super::{boundary_critical_search, MorseMatching};
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};

/// Certified lower bound on the collapse depth.
#[derive(Clone, Debug)]
pub struct DepthReport {
    pub depth: usize,
    /// Set when `depth` is proven to be the collapse depth.
    pub exact: bool,
    pub certificate: MorseMatching,
}

fn require_manifold(m: &SimplicialComplex) -> Result<usize> {
    let report = m.manifold_check()?;
    if !report.passes() {
        return Err(Error::Precondition(format!("not a manifold: {}", report.problems.join("; "))));
    }
    if m.dim() < 1 {
        return Err(Error::Precondition("dimension must be at least 1".into()));
    }
    if !m.is_strongly_connected() {
        return Err(Error::Precondition("manifold is not connected".into()));
    }
    Ok(m.dim() as usize)
}

/// Interior targets for depth `k`: one critical facet and none in
/// dimensions d−1 … d−k+1.
fn depth_targets(d: usize, k: usize) -> Vec<Option<usize>> {
    let mut t = vec![None; d + 1];
    t[d] = Some(1);
    for i in 1..k {
        t[d - i] = Some(0);
    }
    t
}

/// Searches for an endo-collapsibility certificate: a boundary-critical
/// matching with one critical interior face (a facet), or for closed
/// manifolds a matching with exactly one critical vertex and one critical facet.
pub fn is_endo_collapsible(m: &SimplicialComplex, budget: &SearchBudget) -> Result<Outcome<MorseMatching>> {
    let d = require_manifold(m)?;
    let closed = m.boundary_subcomplex()?.is_empty();
    let mut targets = vec![Some(0); d + 1];
    targets[d] = Some(1);
    if closed {
        targets[0] = Some(1);
    }
    boundary_critical_search(m, &targets, &[], budget)
}

/// Largest certified k such that a boundary-critical matching has one
/// critical interior facet and no critical interior faces in dimensions
/// d−1 … d−k+1.
pub fn collapse_depth(m: &SimplicialComplex, budget: &SearchBudget) -> Result<DepthReport> {
    let d = require_manifold(m)?;
    let certificate = match boundary_critical_search(m, &depth_targets(d, 1), &[], budget)? {
        Outcome::Found(v) => v,
        Outcome::Impossible => {
            return Err(Error::Construction("no boundary-critical matching with one critical facet".into()))
        }
        Outcome::Inconclusive => return Err(Error::Inconclusive("depth 1 certificate".into())),
    };
    let mut report = DepthReport { depth: 1, exact: d == 1, certificate };
    for k in 2..=d {
        match boundary_critical_search(m, &depth_targets(d, k), &[], budget)? {
            Outcome::Found(v) => {
                report.depth = k;
                report.certificate = v;
                report.exact = k == d;
            }
            Outcome::Impossible => {
                report.exact = true;
                break;
            }
            Outcome::Inconclusive => break,
        }
    }
    Ok(report)
}

/// Certificate of local constructibility (collapse depth at least 2).
pub fn is_lc(m: &SimplicialComplex, budget: &SearchBudget) -> Result<Outcome<MorseMatching>> {
    let d = require_manifold(m)?;
    if d < 2 {
        return Err(Error::Precondition("local constructibility needs dimension at least 2".into()));
    }
    boundary_critical_search(m, &depth_targets(d, 2), &[], budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn sphere_depths() {
        let b = SearchBudget::default();
        let r = collapse_depth(&fixtures::simplex_boundary(3), &b).unwrap();
        assert_eq!((r.depth, r.exact), (2, true));
        let r = collapse_depth(&fixtures::simplex_boundary(4), &b).unwrap();
        assert_eq!((r.depth, r.exact), (3, true));
        let mv = r.certificate.morse_vector().unwrap();
        assert_eq!(mv.c, vec![1, 0, 0, 1]);
    }

    #[test]
    fn edge_has_depth_one() {
        let r = collapse_depth(&fixtures::simplex(1), &SearchBudget::default()).unwrap();
        assert_eq!((r.depth, r.exact), (1, true));
    }

    #[test]
    fn endo_certificates() {
        let b = SearchBudget::default();
        let v = is_endo_collapsible(&fixtures::simplex_boundary(3), &b).unwrap().found().unwrap();
        assert_eq!(v.morse_vector().unwrap().c, vec![1, 0, 1]);
        let v = is_endo_collapsible(&fixtures::simplex(2), &b).unwrap().found().unwrap();
        assert_eq!(v.morse_vector().unwrap().c_int.unwrap(), vec![0, 0, 1]);
        let v = is_endo_collapsible(&fixtures::polygon(6), &b).unwrap().found().unwrap();
        assert_eq!(v.morse_vector().unwrap().c, vec![1, 1]);
    }

    #[test]
    fn lc_examples() {
        let b = SearchBudget::default();
        assert!(is_lc(&fixtures::simplex_boundary(4), &b).unwrap().is_found());
        assert!(is_lc(&fixtures::octahedron(), &b).unwrap().is_found());
        assert!(is_lc(&fixtures::simplex(3), &b).unwrap().is_found());
    }

    #[test]
    fn non_manifold_rejected() {
        let k = fixtures::disjoint_union(&fixtures::simplex(2), &fixtures::simplex(1));
        assert!(matches!(collapse_depth(&k, &SearchBudget::default()), Err(Error::Precondition(_))));
    }
}
