//! Betti numbers over the two-element field.

use crate::complex::{FaceIndex, SimplicialComplex};
use crate::error::Result;

/// `β_i = rank H_i(K; GF(2))` for `i = 0..=dim K`.
pub fn betti_gf2(k: &SimplicialComplex) -> Result<Vec<usize>> {
    Ok(betti_masked(k.index()?, None))
}

/// Betti numbers of the chain complex spanned by the faces selected by `mask`.
///
/// When `mask` selects `K \ L` for a subcomplex `L`, these are the relative
/// Betti numbers of the pair `(K, L)`.
pub fn betti_masked(index: &FaceIndex, mask: Option<&[bool]>) -> Vec<usize> {
    let Some(top) = index.top_dim() else { return Vec::new() };
    let keep = |id: u32| mask.map_or(true, |m| m[id as usize]);
    let counts: Vec<usize> = (0..=top).map(|d| index.ids_of_dim(d).filter(|&i| keep(i)).count()).collect();
    // ranks[d] = rank of the boundary map from d-chains to (d-1)-chains
    let mut ranks = vec![0usize; top + 2];
    for d in 1..=top {
        let cols: Vec<Vec<u32>> = index
            .ids_of_dim(d)
            .filter(|&i| keep(i))
            .map(|i| {
                let mut c: Vec<u32> = index.down(i).iter().copied().filter(|&j| keep(j)).collect();
                c.sort_unstable();
                c
            })
            .collect();
        ranks[d] = gf2_rank(cols, index.len());
    }
    (0..=top).map(|d| counts[d] - ranks[d] - ranks[d + 1]).collect()
}

/// Rank of a sparse GF(2) matrix given as sorted column supports.
pub(crate) fn gf2_rank(mut cols: Vec<Vec<u32>>, rows: usize) -> usize {
    let mut pivot_of: Vec<Option<usize>> = vec![None; rows];
    let mut rank = 0;
    for j in 0..cols.len() {
        loop {
            let Some(&low) = cols[j].last() else { break };
            match pivot_of[low as usize] {
                Some(p) => {
                    let merged = symmetric_difference(&cols[j], &cols[p]);
                    cols[j] = merged;
                }
                None => {
                    pivot_of[low as usize] = Some(j);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

fn symmetric_difference(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}
