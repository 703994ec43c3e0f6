use std::fmt;
use std::str::FromStr;

use smallvec::SmallVec;

use crate::error::{Error, Result};

pub type Vertex = u32;

pub(crate) type VertexVec = SmallVec<[Vertex; 8]>;

/// A simplex given by its strictly increasing list of vertex ids.
///
/// Ordering is lexicographic on the vertex tuple, which is also the
/// tie-breaking order used by every search in this crate.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Simplex(VertexVec);

impl Simplex {
    /// Builds a simplex from arbitrary vertex ids, sorting them. Fails on repeats.
    pub fn new<I: IntoIterator<Item = Vertex>>(vertices: I) -> Result<Self> {
        let mut v: VertexVec = vertices.into_iter().collect();
        v.sort_unstable();
        if let Some(w) = v.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::RepeatedVertex { vertex: w[0], facet: v.to_vec() });
        }
        Ok(Simplex(v))
    }

    pub fn vertex(v: Vertex) -> Self {
        Simplex(smallvec::smallvec![v])
    }

    /// The empty simplex. Only used as a join identity.
    pub fn empty() -> Self {
        Simplex(SmallVec::new())
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Dimension, `-1` for the empty simplex.
    pub fn dim(&self) -> isize {
        self.0.len() as isize - 1
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_subset_of(&self, other: &Simplex) -> bool {
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.0, &other.0);
        while i < a.len() {
            if j == b.len() {
                return false;
            }
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Less => return false,
            }
        }
        true
    }

    pub fn is_disjoint(&self, other: &Simplex) -> bool {
        self.0.iter().all(|v| !other.contains_vertex(*v))
    }

    pub fn union(&self, other: &Simplex) -> Simplex {
        let mut v: VertexVec = self.0.iter().chain(other.0.iter()).copied().collect();
        v.sort_unstable();
        v.dedup();
        Simplex(v)
    }

    pub fn intersection(&self, other: &Simplex) -> Simplex {
        Simplex(self.0.iter().copied().filter(|v| other.contains_vertex(*v)).collect())
    }

    /// Vertices of `self` not in `other`.
    pub fn difference(&self, other: &Simplex) -> Simplex {
        Simplex(self.0.iter().copied().filter(|v| !other.contains_vertex(*v)).collect())
    }

    pub fn with_vertex(&self, v: Vertex) -> Simplex {
        let mut out = self.0.clone();
        match out.binary_search(&v) {
            Ok(_) => {}
            Err(pos) => out.insert(pos, v),
        }
        Simplex(out)
    }

    pub fn without_vertex(&self, v: Vertex) -> Simplex {
        Simplex(self.0.iter().copied().filter(|&w| w != v).collect())
    }

    /// Codimension-one faces, in the order obtained by dropping vertex 0, 1, ...
    pub fn boundary(&self) -> impl Iterator<Item = Simplex> + '_ {
        let n = self.0.len();
        let skip = if n <= 1 { n } else { 0 };
        (skip..n).map(move |i| {
            let mut v = self.0.clone();
            v.remove(i);
            Simplex(v)
        })
    }

    /// All non-empty faces (including `self`).
    pub fn faces(&self) -> impl Iterator<Item = Simplex> + '_ {
        let n = self.0.len();
        (1u64..(1u64 << n)).map(move |mask| {
            Simplex((0..n).filter(|i| mask & (1 << i) != 0).map(|i| self.0[i]).collect())
        })
    }

    pub fn map_vertices<F: FnMut(Vertex) -> Vertex>(&self, f: F) -> Result<Simplex> {
        Simplex::new(self.0.iter().copied().map(f))
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("-")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

impl FromStr for Simplex {
    type Err = Error;

    /// Parses the canonical `v0-v1-v2` form.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::InvalidArgument("empty face string".into()));
        }
        let ids = s
            .split('-')
            .map(|t| {
                t.trim()
                    .parse::<Vertex>()
                    .map_err(|e| Error::InvalidArgument(format!("bad vertex id {t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Simplex::new(ids)
    }
}

impl serde::Serialize for Simplex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Simplex {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Shorthand used throughout tests and examples.
#[macro_export]
macro_rules! sx {
    ($($v:expr),* $(,)?) => {
        $crate::Simplex::new([$($v as u32),*]).expect("valid simplex")
    };
}
