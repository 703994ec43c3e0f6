use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::complex::{FaceId, FaceIndex, SimplicialComplex, Subcomplex};
use crate::error::{Error, Result};
use crate::simplex::Simplex;

/// An acyclic partial matching of faces with codimension-one cofaces.
///
/// Only the matching is stored; [`MorseMatching::morse_function`] produces an
/// integer-valued discrete Morse function inducing it.
#[derive(Clone, PartialEq, Eq)]
pub struct MorseMatching {
    complex: SimplicialComplex,
    pairs: Vec<(Simplex, Simplex)>,
    boundary_critical: bool,
}

impl fmt::Debug for MorseMatching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MorseMatching")
            .field("pairs", &self.pairs)
            .field("boundary_critical", &self.boundary_critical)
            .finish()
    }
}

/// Critical counts per dimension, plus interior counts when the complex is a
/// pseudomanifold (for closed ones they coincide with `c`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorseVector {
    pub c: Vec<usize>,
    pub c_int: Option<Vec<usize>>,
}

impl MorseVector {
    pub fn total(&self) -> usize {
        self.c.iter().sum()
    }

    pub fn interior(&self) -> &[usize] {
        self.c_int.as_deref().unwrap_or(&self.c)
    }

    /// Alternating sum of critical counts.
    pub fn euler(&self) -> i64 {
        alternating(&self.c)
    }
}

pub(crate) fn alternating(v: &[usize]) -> i64 {
    v.iter().enumerate().map(|(i, &x)| if i % 2 == 0 { x as i64 } else { -(x as i64) }).sum()
}

/// Order used to rank Morse vectors: fewer critical cells first, then
/// lexicographic from dimension zero.
pub fn vector_key(c: &[usize]) -> (usize, Vec<usize>) {
    (c.iter().sum(), c.to_vec())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    NotAFace(Simplex),
    NotCodimensionOne { free: Simplex, coface: Simplex },
    FaceInTwoPairs(Simplex),
    /// Alternating face/coface sequence of a closed V-path.
    Cycle(Vec<Simplex>),
    BoundaryFaceMatched(Simplex),
    BoundaryUndefined,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotAFace(s) => write!(f, "{s} is not a face"),
            Violation::NotCodimensionOne { free, coface } => {
                write!(f, "{free} is not a codimension-one face of {coface}")
            }
            Violation::FaceInTwoPairs(s) => write!(f, "{s} occurs in two pairs"),
            Violation::Cycle(c) => {
                let names: Vec<String> = c.iter().map(|s| s.to_string()).collect();
                write!(f, "closed V-path {}", names.join(" -> "))
            }
            Violation::BoundaryFaceMatched(s) => write!(f, "boundary face {s} is matched"),
            Violation::BoundaryUndefined => {
                write!(f, "boundary-critical flag set on a complex that is not a pseudomanifold")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn into_result(self) -> Result<()> {
        if self.is_valid() {
            Ok(())
        } else {
            let msgs: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
            Err(Error::InvalidMatching(msgs.join("; ")))
        }
    }
}

impl MorseMatching {
    /// Pairs are `(free face, coface)`; they are stored sorted. No validation.
    pub fn new<I>(complex: SimplicialComplex, pairs: I, boundary_critical: bool) -> Self
    where
        I: IntoIterator<Item = (Simplex, Simplex)>,
    {
        let mut pairs: Vec<_> = pairs.into_iter().collect();
        pairs.sort();
        MorseMatching { complex, pairs, boundary_critical }
    }

    pub fn empty(complex: SimplicialComplex) -> Self {
        Self::new(complex, [], false)
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn pairs(&self) -> &[(Simplex, Simplex)] {
        &self.pairs
    }

    pub fn is_boundary_critical(&self) -> bool {
        self.boundary_critical
    }

    pub fn with_boundary_critical(mut self, flag: bool) -> Self {
        self.boundary_critical = flag;
        self
    }

    pub(crate) fn from_partners(
        complex: SimplicialComplex,
        ix: &FaceIndex,
        partner: &[Option<FaceId>],
        boundary_critical: bool,
    ) -> Self {
        let pairs = partner.iter().enumerate().filter_map(|(i, p)| {
            let p = (*p)?;
            (ix.dim(p) > ix.dim(i as FaceId)).then(|| (ix.face(i as FaceId).clone(), ix.face(p).clone()))
        });
        Self::new(complex, pairs, boundary_critical)
    }

    /// Partner array over the face index; pairs that do not resolve are skipped.
    pub(crate) fn partners(&self, ix: &FaceIndex) -> Vec<Option<FaceId>> {
        let mut partner = vec![None; ix.len()];
        for (a, b) in &self.pairs {
            if let (Some(i), Some(j)) = (ix.id(a), ix.id(b)) {
                partner[i as usize] = Some(j);
                partner[j as usize] = Some(i);
            }
        }
        partner
    }

    /// Checks incidence, injectivity, acyclicity and the boundary-critical flag.
    pub fn validate(&self) -> Result<ValidationReport> {
        let ix = self.complex.index()?;
        let mut violations = Vec::new();
        let mut seen: HashMap<&Simplex, usize> = HashMap::new();
        for (a, b) in &self.pairs {
            for s in [a, b] {
                if ix.id(s).is_none() {
                    violations.push(Violation::NotAFace(s.clone()));
                }
                *seen.entry(s).or_default() += 1;
            }
            if !(a.len() + 1 == b.len() && a.is_subset_of(b)) {
                violations.push(Violation::NotCodimensionOne { free: a.clone(), coface: b.clone() });
            }
        }
        let mut repeated: Vec<&Simplex> = seen.iter().filter(|(_, &n)| n > 1).map(|(s, _)| *s).collect();
        repeated.sort();
        violations.extend(repeated.into_iter().map(|s| Violation::FaceInTwoPairs(s.clone())));
        if violations.is_empty() {
            let partner = self.partners(ix);
            if let Some(cycle) = find_v_cycle(ix, &partner) {
                violations.push(Violation::Cycle(cycle.iter().map(|&i| ix.face(i).clone()).collect()));
            }
        }
        if self.boundary_critical {
            if self.complex.is_pseudomanifold() {
                let bd = self.complex.boundary_subcomplex()?;
                for (a, b) in &self.pairs {
                    for s in [a, b] {
                        if bd.contains(s) {
                            violations.push(Violation::BoundaryFaceMatched(s.clone()));
                        }
                    }
                }
            } else {
                violations.push(Violation::BoundaryUndefined);
            }
        }
        Ok(ValidationReport { violations })
    }

    fn require_valid(&self) -> Result<()> {
        self.validate()?.into_result()
    }

    /// Unmatched faces.
    pub fn critical_cells(&self) -> Result<BTreeSet<Simplex>> {
        self.require_valid()?;
        Ok(self.critical_unchecked()?)
    }

    pub(crate) fn critical_unchecked(&self) -> Result<BTreeSet<Simplex>> {
        let ix = self.complex.index()?;
        let matched: BTreeSet<&Simplex> = self.pairs.iter().flat_map(|(a, b)| [a, b]).collect();
        Ok(ix.faces().iter().filter(|f| !matched.contains(f)).cloned().collect())
    }

    pub fn morse_vector(&self) -> Result<MorseVector> {
        self.require_valid()?;
        self.morse_vector_unchecked()
    }

    pub(crate) fn morse_vector_unchecked(&self) -> Result<MorseVector> {
        let dim = self.complex.dim();
        let len = (dim + 1).max(0) as usize;
        let crit = self.critical_unchecked()?;
        let mut c = vec![0; len];
        for s in &crit {
            c[s.len() - 1] += 1;
        }
        let c_int = if self.complex.is_pseudomanifold() {
            let bd = self.complex.boundary_subcomplex()?;
            let mut ci = vec![0; len];
            for s in crit.iter().filter(|s| !bd.contains(s)) {
                ci[s.len() - 1] += 1;
            }
            Some(ci)
        } else {
            None
        };
        Ok(MorseVector { c, c_int })
    }

    /// An integer discrete Morse function inducing this matching: matched
    /// faces share a value, every other covering relation strictly increases.
    pub fn morse_function(&self) -> Result<BTreeMap<Simplex, u64>> {
        self.require_valid()?;
        let ix = self.complex.index()?;
        let partner = self.partners(ix);
        let n = ix.len();
        // node of a face: the lower face of its pair, or itself
        let node = |i: usize| -> usize {
            match partner[i] {
                Some(p) if ix.dim(p) < ix.dim(i as FaceId) => p as usize,
                _ => i,
            }
        };
        let mut indeg = vec![0usize; n];
        let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
        for i in 0..n {
            for &j in ix.down(i as FaceId) {
                let (a, b) = (node(j as usize), node(i));
                if a != b {
                    out[a].push(b);
                    indeg[b] += 1;
                }
            }
        }
        let mut ready: std::collections::BinaryHeap<std::cmp::Reverse<usize>> =
            (0..n).filter(|&i| node(i) == i && indeg[i] == 0).map(std::cmp::Reverse).collect();
        let mut value = vec![0u64; n];
        let mut next = 0u64;
        while let Some(std::cmp::Reverse(a)) = ready.pop() {
            value[a] = next;
            next += 1;
            for &b in &out[a] {
                indeg[b] -= 1;
                if indeg[b] == 0 {
                    ready.push(std::cmp::Reverse(b));
                }
            }
        }
        Ok((0..n).map(|i| (ix.face(i as FaceId).clone(), value[node(i)])).collect())
    }

    /// Faces of the complex's boundary, when it is a pseudomanifold.
    pub fn boundary(&self) -> Result<Subcomplex> {
        self.complex.boundary_subcomplex()
    }
}

/// Searches every level for a closed V-path and returns it as an alternating
/// face/coface list starting and ending at the same face.
pub(crate) fn find_v_cycle(ix: &FaceIndex, partner: &[Option<FaceId>]) -> Option<Vec<FaceId>> {
    let up_matched = |i: FaceId| partner[i as usize].filter(|&p| ix.dim(p) > ix.dim(i));
    let n = ix.len();
    let mut color = vec![0u8; n];
    for start in 0..n as FaceId {
        if color[start as usize] != 0 || up_matched(start).is_none() {
            continue;
        }
        // stack of (face, coface, next child position)
        let mut stack: Vec<(FaceId, FaceId, usize)> = Vec::new();
        color[start as usize] = 1;
        stack.push((start, up_matched(start).unwrap(), 0));
        while let Some(top) = stack.last_mut() {
            let (face, coface, pos) = *top;
            let children = ix.down(coface);
            if pos == children.len() {
                color[face as usize] = 2;
                stack.pop();
                continue;
            }
            top.2 += 1;
            let child = children[pos];
            if child == face {
                continue;
            }
            let Some(child_up) = up_matched(child) else { continue };
            match color[child as usize] {
                0 => {
                    color[child as usize] = 1;
                    stack.push((child, child_up, 0));
                }
                1 => {
                    let at = stack.iter().position(|e| e.0 == child).unwrap();
                    let mut cycle = Vec::new();
                    for e in &stack[at..] {
                        cycle.push(e.0);
                        cycle.push(e.1);
                    }
                    cycle.push(child);
                    return Some(cycle);
                }
                _ => {}
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::sx;

    #[test]
    fn empty_matching_is_valid() {
        let k = fixtures::octahedron();
        let v = MorseMatching::empty(k.clone());
        assert!(v.validate().unwrap().is_valid());
        assert_eq!(v.critical_cells().unwrap().len(), 26);
    }

    #[test]
    fn triangle_boundary_two_pairs() {
        let k = fixtures::simplex_boundary(2);
        let v = MorseMatching::new(k, [(sx![0], sx![0, 1]), (sx![1], sx![1, 2])], false);
        assert!(v.validate().unwrap().is_valid());
        let crit: Vec<_> = v.critical_cells().unwrap().into_iter().collect();
        assert_eq!(crit, vec![sx![0, 2], sx![2]]);
        assert_eq!(v.morse_vector().unwrap().c, vec![1, 1]);
    }

    #[test]
    fn triangle_boundary_cycle() {
        let k = fixtures::simplex_boundary(2);
        let v = MorseMatching::new(k, [(sx![0], sx![0, 1]), (sx![1], sx![1, 2]), (sx![2], sx![0, 2])], false);
        let rep = v.validate().unwrap();
        assert_eq!(rep.violations.len(), 1);
        match &rep.violations[0] {
            Violation::Cycle(c) => {
                assert_eq!(c.first(), c.last());
                assert_eq!(c.len(), 7);
            }
            other => panic!("expected a cycle, got {other:?}"),
        }
        assert!(v.morse_vector().is_err());
    }

    #[test]
    fn structural_violations() {
        let k = fixtures::simplex(2);
        let v = MorseMatching::new(
            k.clone(),
            [(sx![0], sx![0, 1, 2]), (sx![0], sx![0, 1]), (sx![5], sx![5, 6])],
            false,
        );
        let rep = v.validate().unwrap();
        assert!(rep.violations.contains(&Violation::NotCodimensionOne { free: sx![0], coface: sx![0, 1, 2] }));
        assert!(rep.violations.contains(&Violation::FaceInTwoPairs(sx![0])));
        assert!(rep.violations.contains(&Violation::NotAFace(sx![5])));
        let bc = MorseMatching::new(k, [(sx![0], sx![0, 1])], true);
        assert!(bc.validate().unwrap().violations.contains(&Violation::BoundaryFaceMatched(sx![0])));
    }

    #[test]
    fn boundary_critical_on_triangle() {
        let k = fixtures::simplex(2);
        let v = MorseMatching::new(k, [], true);
        let mv = v.morse_vector().unwrap();
        assert_eq!(mv.c, vec![3, 3, 1]);
        assert_eq!(mv.c_int, Some(vec![0, 0, 1]));
    }

    #[test]
    fn morse_function_realizes_matching() {
        let k = fixtures::simplex(2);
        let v = MorseMatching::new(k.clone(), [(sx![0], sx![0, 1]), (sx![1, 2], sx![0, 1, 2]), (sx![2], sx![0, 2])], false);
        let f = v.morse_function().unwrap();
        let ix = k.index().unwrap();
        for (i, s) in ix.faces().iter().enumerate() {
            for &j in ix.down(i as u32) {
                let t = ix.face(j);
                let matched = v.pairs().contains(&(t.clone(), s.clone()));
                if matched {
                    assert_eq!(f[t], f[s]);
                } else {
                    assert!(f[t] < f[s], "{t} vs {s}");
                }
            }
        }
    }
}
