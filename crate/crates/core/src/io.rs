//! File formats: facet lists, certificates and the JSON inputs of the
//! assembly commands.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::assembly::{GluingSpec, Handle, HandleDecomposition, LocalConstructionTrace};
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::morse::MorseMatching;
use crate::simplex::{Simplex, Vertex};

/// Parses the facet format: one facet per line, whitespace separated ids,
/// `#` comment lines, blank lines ignored.
pub fn parse_facets(text: &str) -> Result<SimplicialComplex> {
    let mut facets = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let ids = line
            .split_whitespace()
            .map(|t| t.parse::<Vertex>().map_err(|e| Error::Parse { line: i + 1, msg: format!("{t:?}: {e}") }))
            .collect::<Result<Vec<_>>>()?;
        let s = Simplex::new(ids).map_err(|e| Error::Parse { line: i + 1, msg: e.to_string() })?;
        facets.push(s);
    }
    if facets.is_empty() {
        return Err(Error::EmptyInput("facet file has no facets"));
    }
    Ok(SimplicialComplex::from_facets(facets))
}

/// Canonical text: sorted facets, one per line.
pub fn format_facets(k: &SimplicialComplex) -> String {
    let mut out = String::new();
    for f in k.facets() {
        let ids: Vec<String> = f.vertices().iter().map(|v| v.to_string()).collect();
        out.push_str(&ids.join(" "));
        out.push('\n');
    }
    out
}

pub fn read_facets(path: &Path) -> Result<SimplicialComplex> {
    parse_facets(&fs::read_to_string(path)?)
}

pub fn write_facets(path: &Path, k: &SimplicialComplex) -> Result<()> {
    Ok(fs::write(path, format_facets(k))?)
}

/// SHA-256 of the canonical facet text, hex encoded.
pub fn complex_hash(k: &SimplicialComplex) -> String {
    let digest = Sha256::digest(format_facets(k).as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

/// On-disk form of a Morse matching, bound to its complex by hash.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchingCertificate {
    pub complex_hash: String,
    pub boundary_critical: bool,
    pub pairs: Vec<(Simplex, Simplex)>,
    pub critical: Vec<Simplex>,
    pub morse_vector: Vec<usize>,
    pub c_int: Option<Vec<usize>>,
}

impl MatchingCertificate {
    /// Fails if the matching is not valid.
    pub fn from_matching(v: &MorseMatching) -> Result<Self> {
        v.validate()?.into_result()?;
        let mv = v.morse_vector()?;
        let mut critical: Vec<Simplex> = v.critical_cells()?.into_iter().collect();
        critical.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        Ok(MatchingCertificate {
            complex_hash: complex_hash(v.complex()),
            boundary_critical: v.is_boundary_critical(),
            pairs: v.pairs().to_vec(),
            critical,
            morse_vector: mv.c,
            c_int: mv.c_int,
        })
    }

    /// Re-attaches the certificate to `k`, checking the hash, validity and
    /// every recorded summary.
    pub fn to_matching(&self, k: &SimplicialComplex) -> Result<MorseMatching> {
        if self.complex_hash != complex_hash(k) {
            return Err(Error::InvalidMatching("certificate belongs to a different complex".into()));
        }
        let v = MorseMatching::new(k.clone(), self.pairs.clone(), self.boundary_critical);
        v.validate()?.into_result()?;
        let mv = v.morse_vector()?;
        let critical: BTreeSet<Simplex> = self.critical.iter().cloned().collect();
        if critical != v.critical_cells()? || mv.c != self.morse_vector || mv.c_int != self.c_int {
            return Err(Error::InvalidMatching("recorded critical cells do not match the pairs".into()));
        }
        Ok(v)
    }
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

pub fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    Ok(serde_json::from_str(text)?)
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    from_json(&fs::read_to_string(path)?)
}

fn resolve(base: &Path, file: &str) -> PathBuf {
    let p = Path::new(file);
    if p.is_absolute() {
        p.to_path_buf()
    } else {
        base.join(p)
    }
}

fn base_dir(path: &Path) -> PathBuf {
    path.parent().map(Path::to_path_buf).unwrap_or_default()
}

/// `{"left": file, "right": file, "map": [[left, right], ...]}`. Relative
/// paths are taken from the JSON file's directory.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GluingSpecFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub left: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub right: Option<String>,
    #[serde(default)]
    pub map: Vec<(Vertex, Vertex)>,
}

impl GluingSpecFile {
    pub fn load(&self, base: &Path) -> Result<GluingSpec> {
        fn need<'a>(f: &'a Option<String>, side: &str) -> Result<&'a str> {
            f.as_deref().ok_or_else(|| Error::InvalidArgument(format!("gluing spec lacks {side:?}")))
        }
        Ok(GluingSpec {
            left: read_facets(&resolve(base, need(&self.left, "left")?))?,
            right: read_facets(&resolve(base, need(&self.right, "right")?))?,
            map: self.map.clone(),
        })
    }
}

pub fn read_gluing_spec(path: &Path) -> Result<GluingSpec> {
    read_json::<GluingSpecFile>(path)?.load(&base_dir(path))
}

/// `{"tree": file, "identify": [[ridge, ridge], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceFile {
    pub tree: String,
    pub identify: Vec<(Simplex, Simplex)>,
}

pub fn read_trace(path: &Path) -> Result<LocalConstructionTrace> {
    let t: TraceFile = read_json(path)?;
    Ok(LocalConstructionTrace { tree: read_facets(&resolve(&base_dir(path), &t.tree))?, identify: t.identify })
}

/// One entry of a handle decomposition file. Only the vertex map of
/// `attach` is used: its left side names vertices of the union so far and
/// its right side vertices of this handle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HandleEntry {
    pub complex: String,
    pub index: usize,
    #[serde(default)]
    pub attach: Option<GluingSpecFile>,
}

pub fn read_handle_decomposition(path: &Path) -> Result<HandleDecomposition> {
    let entries: Vec<HandleEntry> = read_json(path)?;
    let base = base_dir(path);
    let handles = entries
        .iter()
        .map(|e| {
            Ok(Handle {
                complex: read_facets(&resolve(&base, &e.complex))?,
                index: e.index,
                attach: e.attach.as_ref().map(|a| a.map.clone()).unwrap_or_default(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(HandleDecomposition { handles })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::morse::random_morse;
    use crate::subdivision::derived_subdivision;
    use crate::subdivision::SubdivisionMap;

    #[test]
    fn facet_text() {
        let k = parse_facets("# tetra\n0 1 2\n\n  2 3 1\n0 1 3\n").unwrap();
        assert_eq!(k.facets().len(), 3);
        assert_eq!(format_facets(&k), "0 1 2\n0 1 3\n1 2 3\n");
        assert_eq!(parse_facets(&format_facets(&k)).unwrap(), k);
        match parse_facets("0 1\n1 x\n") {
            Err(Error::Parse { line: 2, .. }) => {}
            other => panic!("{other:?}"),
        }
        match parse_facets("# c\n0 1 1\n") {
            Err(Error::Parse { line: 2, .. }) => {}
            other => panic!("{other:?}"),
        }
        assert!(parse_facets("# only a comment\n").is_err());
    }

    #[test]
    fn certificate_round_trip() {
        let k = fixtures::simplex_boundary(3);
        let v = random_morse(&k, 3, 4).unwrap();
        let cert = MatchingCertificate::from_matching(&v).unwrap();
        let back: MatchingCertificate = from_json(&to_json(&cert).unwrap()).unwrap();
        assert_eq!(back, cert);
        assert_eq!(back.to_matching(&k).unwrap(), v);
        assert!(back.to_matching(&fixtures::simplex(3)).is_err());
        let mut bad = back.clone();
        bad.critical.pop();
        assert!(bad.to_matching(&k).is_err());
    }

    #[test]
    fn subdivision_map_round_trip() {
        let (_, map) = derived_subdivision(&fixtures::simplex(2), 1).unwrap();
        let back: SubdivisionMap = from_json(&to_json(&map).unwrap()).unwrap();
        assert_eq!(back, map);
        assert!(to_json(&map).unwrap().contains("\"0-1-2\""));
    }

    #[test]
    fn assembly_inputs() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path();
        write_facets(&p.join("a.facets"), &fixtures::simplex(2)).unwrap();
        write_facets(&p.join("b.facets"), &fixtures::simplex(2)).unwrap();
        fs::write(p.join("glue.json"), r#"{"left": "a.facets", "right": "b.facets", "map": [[0,0],[1,1]]}"#).unwrap();
        let g = read_gluing_spec(&p.join("glue.json")).unwrap();
        assert_eq!(g.map, vec![(0, 0), (1, 1)]);
        fs::write(p.join("trace.json"), r#"{"tree": "a.facets", "identify": [["0-1", "1-2"]]}"#).unwrap();
        let t = read_trace(&p.join("trace.json")).unwrap();
        assert_eq!(t.identify[0].1, crate::sx![1, 2]);
        fs::write(
            p.join("h.json"),
            r#"[{"complex": "a.facets", "index": 0}, {"complex": "b.facets", "index": 1, "attach": {"map": [[0, 0]]}}]"#,
        )
        .unwrap();
        let h = read_handle_decomposition(&p.join("h.json")).unwrap();
        assert_eq!(h.handles.len(), 2);
        assert_eq!(h.handles[1].attach, vec![(0, 0)]);
    }
}
