use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{Ambient, GeometryError, TensorSpace};
use crate::actions::{build_group, Family};
use crate::perm::{next_permutation, Permutation};

/// Largest q for the PG(3,q) sweep over all `(q+1)!` ovoids.
pub const MAX_PG3_Q: u32 = 7;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeometricRadius {
    pub ambient: Ambient,
    pub q: u32,
    pub degree: usize,
    /// `n − min_O max_C |O ∩ C|`.
    pub radius: usize,
    /// `min_O max_C |O ∩ C|`: the most agreement the worst ovoid can get.
    pub min_max: usize,
    /// `max_O min_C |O ∩ C|`, the statistic as literally displayed.
    pub max_min: usize,
    /// First ovoid (as a permutation) attaining `min_max`.
    pub witness: Permutation,
    pub ovoids: u64,
    pub classical_ovoids: usize,
}

/// Tensor-point ids of `graph(π)` as a bitset, read back from coordinates.
fn graph_bits(space: &TensorSpace, pi: &Permutation) -> Result<u128, GeometryError> {
    let m = space.source_degree();
    let o = space.graph_unchecked(pi)?;
    let mut bits = 0u128;
    for (k, p) in o.points.iter().enumerate() {
        let (i, j) = space.decompose(p).ok_or(GeometryError::NotSimpleTensor(k))?;
        bits |= 1u128 << (i * m + j);
    }
    Ok(bits)
}

struct Part {
    min_max: usize,
    witness: Vec<u32>,
    max_min: usize,
    count: u64,
}

/// Evaluates the ovoid/classical-ovoid intersection statistics over every
/// ovoid (enumerated as permutations), and returns the covering radius.
pub fn covering_radius_geometric(q: u32, ambient: Ambient) -> Result<GeometricRadius, GeometryError> {
    match ambient {
        Ambient::Pg3 if q > MAX_PG3_Q => {
            return Err(GeometryError::Infeasible(format!("pg3 sweep needs q <= {MAX_PG3_Q}, got {q}")));
        }
        Ambient::Pg8 if q != 2 => return Err(GeometryError::Infeasible(format!("pg8 sweep needs q = 2, got {q}"))),
        _ => {}
    }
    let space = TensorSpace::new(ambient, q)?;
    let m = space.source_degree();
    let classical: Vec<Permutation> = match ambient {
        Ambient::Pg3 => {
            let line = space.line().expect("pg3 source");
            line.mobius_params().into_iter().map(|[a, b, c, d]| line.mobius(a, b, c, d)).collect::<Result<_, _>>()?
        }
        Ambient::Pg8 => {
            let g = build_group(Family::Pgu3, q, true)?;
            let els = g.group.elements().expect("materialized");
            (0..els.len()).map(|i| els.permutation(i)).collect()
        }
    };
    let conics: Vec<u128> = classical.iter().map(|c| graph_bits(&space, c)).collect::<Result<_, _>>()?;
    // Row masks: tensor ids i·m + j for fixed i, so graph(π) is one bit per row.
    let parts: Vec<Part> = (0..m as u32)
        .into_par_iter()
        .map(|first| {
            let mut v: Vec<u32> = std::iter::once(first).chain((0..m as u32).filter(|&x| x != first)).collect();
            let mut part = Part { min_max: usize::MAX, witness: Vec::new(), max_min: 0, count: 0 };
            loop {
                let bits = v.iter().enumerate().fold(0u128, |b, (i, &j)| b | 1u128 << (i * m + j as usize));
                let (mut hi, mut lo) = (0usize, usize::MAX);
                for c in &conics {
                    let k = (bits & c).count_ones() as usize;
                    hi = hi.max(k);
                    lo = lo.min(k);
                }
                if hi < part.min_max {
                    part.min_max = hi;
                    part.witness = v.clone();
                }
                part.max_min = part.max_min.max(lo);
                part.count += 1;
                if !next_permutation(&mut v[1..]) {
                    break;
                }
            }
            part
        })
        .collect();
    let mut best = &parts[0];
    for p in &parts[1..] {
        if p.min_max < best.min_max {
            best = p;
        }
    }
    Ok(GeometricRadius {
        ambient,
        q,
        degree: m,
        radius: m - best.min_max,
        min_max: best.min_max,
        max_min: parts.iter().map(|p| p.max_min).max().unwrap_or(0),
        witness: Permutation::from_images(best.witness.clone())?,
        ovoids: parts.iter().map(|p| p.count).sum(),
        classical_ovoids: conics.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pgl23_is_the_full_symmetric_group() {
        let r = covering_radius_geometric(3, Ambient::Pg3).unwrap();
        assert_eq!(r.radius, 0);
        assert_eq!(r.ovoids, 24);
        assert_eq!(r.classical_ovoids, 24);
    }

    #[test]
    fn out_of_range() {
        assert!(covering_radius_geometric(8, Ambient::Pg3).is_err());
        assert!(covering_radius_geometric(3, Ambient::Pg8).is_err());
    }
}
