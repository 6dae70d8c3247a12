use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{hermitian_bb, Ambient, GeometryError, Ovoid, TensorSpace};
use crate::field::{Elem, FieldCtx};
use crate::linalg::{normalize, null_space, rank, same_span, span_vectors, Vector};

/// Span and perp of an ovoid of `U_{2,2}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpanPerp {
    /// Projective dimension of the span.
    pub span_dim: usize,
    /// Projective dimension of the perp under β⊗β.
    pub perp_dim: usize,
    pub perp_basis: Vec<Vector>,
    /// Number of perp points that are simple tensors (points of `S_{2,2}`).
    pub perp_segre_points: usize,
    pub totally_isotropic: bool,
    pub non_degenerate: bool,
    /// Perp equals `⟨X⊗Y − Y⊗X⟩`.
    pub equals_alternating: bool,
}

/// `eᵢ⊗eⱼ − eⱼ⊗eᵢ` for `i < j`.
pub fn alternating_basis(ctx: &FieldCtx) -> Vec<Vector> {
    let mut out = Vec::new();
    for i in 0..3 {
        for j in i + 1..3 {
            let mut v = vec![Elem::ZERO; 9];
            v[3 * i + j] = Elem::ONE;
            v[3 * j + i] = ctx.neg(Elem::ONE);
            out.push(v);
        }
    }
    out
}

/// All 2×2 minors of the 3×3 coordinate matrix vanish.
fn is_rank_one(ctx: &FieldCtx, x: &[Elem]) -> bool {
    (0..3).all(|r1| {
        (r1 + 1..3).all(|r2| {
            (0..3).all(|c1| {
                (c1 + 1..3).all(|c2| {
                    let m = ctx.sub(ctx.mul(x[3 * r1 + c1], x[3 * r2 + c2]), ctx.mul(x[3 * r1 + c2], x[3 * r2 + c1]));
                    m.is_zero()
                })
            })
        })
    })
}

pub fn span_and_perp(space: &TensorSpace, o: &Ovoid) -> Result<SpanPerp, GeometryError> {
    if space.ambient() != Ambient::Pg8 || o.ambient != Ambient::Pg8 {
        return Err(GeometryError::AmbientMismatch { expected: Ambient::Pg8, found: o.ambient });
    }
    let f = space.field();
    let rows: Vec<Vector> = o.points.iter().map(|p| p.coords.clone()).collect();
    let span_rank = rank(f, &rows);
    // β⊗β(X, Y) = Σ X_ij conj(Y_{σi,σj}) = 0  ⟺  Σ conj(X_ij) Y_{σi,σj} = 0.
    const SIGMA: [usize; 3] = [2, 1, 0];
    let linear: Vec<Vector> = rows
        .iter()
        .map(|x| {
            let mut r = vec![Elem::ZERO; 9];
            for i in 0..3 {
                for j in 0..3 {
                    r[3 * SIGMA[i] + SIGMA[j]] = f.conj(x[3 * i + j]).expect("quadratic field");
                }
            }
            r
        })
        .collect();
    let perp = null_space(f, &linear, 9);
    let perp_points: BTreeSet<Vector> = span_vectors(f, &perp).into_iter().filter_map(|v| normalize(f, &v)).collect();
    let perp_segre_points = perp_points.iter().filter(|v| is_rank_one(f, v)).count();
    let gram: Vec<Vector> = perp.iter().map(|a| perp.iter().map(|b| hermitian_bb(f, a, b)).collect()).collect();
    let totally_isotropic = gram.iter().flatten().all(|x| x.is_zero());
    let non_degenerate = rank(f, &gram) == perp.len();
    let equals_alternating = same_span(f, &perp, &alternating_basis(f));
    Ok(SpanPerp {
        span_dim: span_rank.saturating_sub(1),
        perp_dim: perp.len().saturating_sub(1),
        perp_basis: perp,
        perp_segre_points,
        totally_isotropic,
        non_degenerate,
        equals_alternating,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;

    #[test]
    fn identity_graph_at_q2() {
        let s = TensorSpace::pg8(2).unwrap();
        let o = s.graph_of(&Permutation::identity(9)).unwrap();
        let sp = span_and_perp(&s, &o).unwrap();
        assert_eq!((sp.span_dim, sp.perp_dim), (5, 2));
        assert!(sp.equals_alternating);
        assert!(sp.totally_isotropic);
        assert_eq!(sp.perp_segre_points, 0);
    }

    #[test]
    fn identity_graph_at_q3() {
        let s = TensorSpace::pg8(3).unwrap();
        let o = s.graph_of(&Permutation::identity(28)).unwrap();
        let sp = span_and_perp(&s, &o).unwrap();
        assert_eq!((sp.span_dim, sp.perp_dim), (5, 2));
        assert!(sp.equals_alternating && sp.non_degenerate && !sp.totally_isotropic);
        assert_eq!(sp.perp_segre_points, 0);
    }
}
