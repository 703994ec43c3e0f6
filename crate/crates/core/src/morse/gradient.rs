use super::MorseMatching;
use crate::complex::FaceId;
use crate::error::{Error, Result};
use crate::simplex::Simplex;

/// All gradient paths from the boundary of `a` down to `b`, each listed as
/// `a, σ0, Σ0, σ1, Σ1, …, b` with `(σi, Σi)` matched.
pub fn gradient_paths(v: &MorseMatching, a: &Simplex, b: &Simplex) -> Result<Vec<Vec<Simplex>>> {
    let crit = v.critical_cells()?;
    if !crit.contains(a) || !crit.contains(b) {
        return Err(Error::Cancellation("both cells must be critical".into()));
    }
    if a.len() != b.len() + 1 {
        return Err(Error::Cancellation(format!("{a} is not one dimension above {b}")));
    }
    let ix = v.complex().index()?;
    let partner = v.partners(ix);
    let ia = ix.id(a).unwrap();
    let ib = ix.id(b).unwrap();
    let mut paths = Vec::new();
    let mut path = vec![ia];
    walk(ix, &partner, ia, ib, &mut path, &mut paths);
    Ok(paths.into_iter().map(|p| p.into_iter().map(|i| ix.face(i).clone()).collect()).collect())
}

fn walk(
    ix: &crate::complex::FaceIndex,
    partner: &[Option<FaceId>],
    top: FaceId,
    target: FaceId,
    path: &mut Vec<FaceId>,
    out: &mut Vec<Vec<FaceId>>,
) {
    let from = path.len().checked_sub(2).map(|i| path[i]);
    for &s in ix.down(top) {
        if Some(s) == from {
            continue;
        }
        if s == target {
            let mut p = path.clone();
            p.push(s);
            out.push(p);
            continue;
        }
        if let Some(up) = partner[s as usize].filter(|&p| ix.dim(p) > ix.dim(s)) {
            path.push(s);
            path.push(up);
            walk(ix, partner, up, target, path, out);
            path.pop();
            path.pop();
        }
    }
}

/// Cancels the critical pair `(a, b)` by reversing their unique gradient path.
pub fn cancel_pair(v: &MorseMatching, a: &Simplex, b: &Simplex) -> Result<MorseMatching> {
    let paths = gradient_paths(v, a, b)?;
    if paths.len() != 1 {
        return Err(Error::Cancellation(format!(
            "{} gradient paths from {a} to {b}; cancellation needs exactly one",
            paths.len()
        )));
    }
    let p = &paths[0];
    let mut pairs: Vec<(Simplex, Simplex)> = v.pairs().to_vec();
    // p = a, σ0, Σ0, …, σr = b
    let old: Vec<(Simplex, Simplex)> = p[1..p.len() - 1].chunks(2).map(|c| (c[0].clone(), c[1].clone())).collect();
    pairs.retain(|pair| !old.contains(pair));
    let uppers = std::iter::once(&p[0]).chain(p[2..].iter().step_by(2));
    let lowers = p[1..].iter().step_by(2);
    pairs.extend(lowers.zip(uppers).map(|(lo, hi)| (lo.clone(), hi.clone())));
    let out = MorseMatching::new(v.complex().clone(), pairs, v.is_boundary_critical());
    out.validate()?.into_result()?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::sx;

    #[test]
    fn incident_pair_cancels() {
        let v = MorseMatching::empty(fixtures::simplex(2));
        let w = cancel_pair(&v, &sx![0, 1], &sx![0]).unwrap();
        assert_eq!(w.pairs(), &[(sx![0], sx![0, 1])]);
        assert_eq!(w.critical_cells().unwrap().len(), 5);
    }

    #[test]
    fn stranded_tetrahedron_matching() {
        let k = fixtures::simplex(3);
        let pairs = [
            (sx![1, 2, 3], sx![0, 1, 2, 3]),
            (sx![0, 3], sx![0, 1, 3]),
            (sx![2, 3], sx![0, 2, 3]),
            (sx![3], sx![1, 3]),
            (sx![1], sx![0, 1]),
            (sx![2], sx![0, 2]),
        ];
        let v = MorseMatching::new(k, pairs, false);
        let mv = v.morse_vector().unwrap();
        assert_eq!(mv.c, vec![1, 1, 1, 0]);
        let crit: Vec<Simplex> = v.critical_cells().unwrap().into_iter().collect();
        assert_eq!(crit, vec![sx![0], sx![0, 1, 2], sx![1, 2]]);
        let w = cancel_pair(&v, &sx![0, 1, 2], &sx![1, 2]).unwrap();
        assert_eq!(w.morse_vector().unwrap().c, vec![1, 0, 0, 0]);
    }

    #[test]
    fn two_paths_refuse_cancellation() {
        let k = fixtures::polygon(6);
        let pairs = [
            (sx![1], sx![0, 1]),
            (sx![2], sx![1, 2]),
            (sx![3], sx![2, 3]),
            (sx![5], sx![0, 5]),
            (sx![4], sx![4, 5]),
        ];
        let v = MorseMatching::new(k, pairs, false);
        assert_eq!(gradient_paths(&v, &sx![3, 4], &sx![0]).unwrap().len(), 2);
        assert!(matches!(cancel_pair(&v, &sx![3, 4], &sx![0]), Err(Error::Cancellation(_))));
    }
}
