use crate::field::{prime_power, Elem, FieldCtx};
use crate::linalg::{normalize, vec_mat, Matrix};
use crate::perm::Permutation;

use super::{ActionError, TorusParam};

/// Isotropic points of the Hermitian form `x₁y₃^q + x₂y₂^q + x₃y₁^q` on
/// GF(q²)³, i.e. the Hermitian curve H(2,q²).
///
/// Index 0 is ⟨e₁⟩ = ⟨(1,0,0)⟩, index 1 is ⟨e₃⟩ = ⟨(0,0,1)⟩, and the
/// remaining `q³ − 1` points are ⟨(a,b,1)⟩ in lexicographic order of `(a,b)`.
/// Representatives have their last nonzero coordinate equal to one.
#[derive(Debug, Clone)]
pub struct HermitianDomain {
    ctx: FieldCtx,
    q: u32,
    points: Vec<[Elem; 3]>,
    /// `affine[a * q² + b]` is the index of ⟨(a,b,1)⟩, or `u32::MAX`.
    affine: Vec<u32>,
}

const ABSENT: u32 = u32::MAX;

impl HermitianDomain {
    pub fn new(q: u32) -> Result<Self, ActionError> {
        Self::with_modulus(q, None)
    }

    /// The curve over GF(q²) presented by `modulus` (degree 2f).
    pub fn with_modulus(q: u32, modulus: Option<Vec<u32>>) -> Result<Self, ActionError> {
        let (p, f) = prime_power(q).ok_or_else(|| ActionError::InvalidParameter(format!("q = {q} is not a prime power")))?;
        let ctx = FieldCtx::quadratic(p, f, modulus)?;
        let big = ctx.order() as usize;
        let mut points = vec![[Elem::ONE, Elem::ZERO, Elem::ZERO]];
        let mut affine = vec![ABSENT; big * big];
        for a in ctx.elements() {
            for b in ctx.elements() {
                // a + a^q + b^(q+1) = 0
                if ctx.add(ctx.trace(a)?, ctx.norm(b)?).is_zero() {
                    affine[a.index() * big + b.index()] = points.len() as u32;
                    points.push([a, b, Elem::ONE]);
                }
            }
        }
        debug_assert_eq!(points.len() as u64, (q as u64).pow(3) + 1);
        Ok(HermitianDomain { ctx, q, points, affine })
    }

    /// GF(q²), with GF(q) marked.
    pub fn field(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn degree(&self) -> usize {
        self.points.len()
    }

    pub fn point(&self, i: usize) -> [Elem; 3] {
        self.points[i]
    }

    pub fn points(&self) -> &[[Elem; 3]] {
        &self.points
    }

    /// The Hermitian form `x₁y₃^q + x₂y₂^q + x₃y₁^q`.
    pub fn form(&self, x: &[Elem], y: &[Elem]) -> Elem {
        let f = &self.ctx;
        let c = |e: Elem| f.conj(e).expect("quadratic field");
        f.add(f.add(f.mul(x[0], c(y[2])), f.mul(x[1], c(y[1]))), f.mul(x[2], c(y[0])))
    }

    pub fn index_of(&self, v: &[Elem]) -> Option<usize> {
        let n = normalize(&self.ctx, v)?;
        if n[2] == Elem::ONE {
            let big = self.ctx.order() as usize;
            let idx = self.affine[n[0].index() * big + n[1].index()];
            (idx != ABSENT).then_some(idx as usize)
        } else if n[1].is_zero() {
            Some(0)
        } else {
            None
        }
    }

    /// Checks `M J M̄ᵀ = μ J` for a nonzero `μ` in GF(q), i.e. `M` is a
    /// unitary similitude and so induces an element of PGU(3,q).
    pub fn is_similitude(&self, m: &Matrix) -> bool {
        let rows = m.row_vectors();
        let reference = self.form(&rows[0], &rows[2]);
        if reference.is_zero() || !self.ctx.in_base(reference).unwrap_or(false) {
            return false;
        }
        (0..3).all(|i| {
            (0..3).all(|j| {
                let expected = if i + j == 2 { reference } else { Elem::ZERO };
                self.form(&rows[i], &rows[j]) == expected
            })
        })
    }

    /// The permutation induced by `x ↦ xM`; `M` must be a similitude.
    pub fn matrix_permutation(&self, name: &str, m: &Matrix) -> Result<Permutation, ActionError> {
        if !self.is_similitude(m) {
            return Err(ActionError::LeavesDomain { name: name.into() });
        }
        let images = self
            .points
            .iter()
            .map(|x| {
                self.index_of(&vec_mat(&self.ctx, x, m))
                    .map(|i| i as u32)
                    .ok_or_else(|| ActionError::LeavesDomain { name: name.into() })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Permutation::from_images(images)?)
    }

    /// `⟨(x₁,x₂,x₃)⟩ ↦ ⟨(x₁^p,x₂^p,x₃^p)⟩`.
    pub fn field_automorphism(&self) -> Permutation {
        let images = self
            .points
            .iter()
            .map(|x| {
                let y: Vec<Elem> = x.iter().map(|&e| self.ctx.frobenius(e, 1)).collect();
                self.index_of(&y).expect("Frobenius preserves the form") as u32
            })
            .collect();
        Permutation::from_images_unchecked(images)
    }

    pub fn torus_matrix(&self, gamma: Elem, delta: Elem) -> Result<Matrix, ActionError> {
        let f = &self.ctx;
        if gamma.is_zero() {
            return Err(ActionError::InvalidParameter("γ = 0".into()));
        }
        if f.norm(delta)? != Elem::ONE {
            return Err(ActionError::InvalidParameter("δ^(q+1) ≠ 1".into()));
        }
        let q = self.q as i64;
        Ok(Matrix::diagonal(&[f.pow(gamma, q + 1), f.mul(f.pow(gamma, q), delta), Elem::ONE]))
    }

    /// `diag(γ^(q+1), γ^q δ, 1)` modulo scalars.
    pub fn torus(&self, gamma: Elem, delta: Elem) -> Result<Permutation, ActionError> {
        let m = self.torus_matrix(gamma, delta)?;
        self.matrix_permutation("torus", &m)
    }

    /// All `(γ, δ)` with `γ ≠ 0`, `δ^(q+1) = 1`, γ-major.
    pub fn torus_params(&self) -> Vec<TorusParam> {
        let norm_one = self.ctx.norm_one().expect("quadratic field");
        self.ctx
            .nonzero()
            .flat_map(|gamma| norm_one.iter().map(move |&delta| TorusParam::Unitary { gamma, delta }))
            .collect()
    }

    /// `[[1,0,0],[β,1,0],[α,−β^q,1]]`; needs `α + α^q + β^(q+1) = 0`.
    pub fn unipotent_matrix(&self, alpha: Elem, beta: Elem) -> Result<Matrix, ActionError> {
        let f = &self.ctx;
        if !f.add(f.trace(alpha)?, f.norm(beta)?).is_zero() {
            return Err(ActionError::InvalidParameter("α + α^q + β^(q+1) ≠ 0".into()));
        }
        let gamma = f.neg(f.conj(beta)?);
        Ok(Matrix::from_rows(&[
            vec![Elem::ONE, Elem::ZERO, Elem::ZERO],
            vec![beta, Elem::ONE, Elem::ZERO],
            vec![alpha, gamma, Elem::ONE],
        ]))
    }

    pub fn unipotent(&self, alpha: Elem, beta: Elem) -> Result<Permutation, ActionError> {
        let m = self.unipotent_matrix(alpha, beta)?;
        self.matrix_permutation("unipotent", &m)
    }

    /// `antidiag(1, −1, 1)`, swapping ⟨e₁⟩ and ⟨e₃⟩.
    pub fn weyl_matrix(&self) -> Matrix {
        let minus_one = self.ctx.neg(Elem::ONE);
        Matrix::from_rows(&[
            vec![Elem::ZERO, Elem::ZERO, Elem::ONE],
            vec![Elem::ZERO, minus_one, Elem::ZERO],
            vec![Elem::ONE, Elem::ZERO, Elem::ZERO],
        ])
    }

    fn unipotent_generators(&self) -> Result<Vec<(String, Permutation)>, ActionError> {
        let f = &self.ctx;
        let mut gens = Vec::new();
        // Centre: β = 0, α of trace zero.
        for alpha in f.nonzero() {
            if f.trace(alpha)?.is_zero() {
                gens.push((format!("u({},0)", alpha.0), self.unipotent(alpha, Elem::ZERO)?));
            }
        }
        // One lift for each GF(p)-basis vector β.
        for i in 0..f.degree() {
            let beta = Elem(f.p().pow(i));
            let target = f.neg(f.norm(beta)?);
            let alpha = f
                .elements()
                .find(|&a| f.trace(a).map(|t| t == target).unwrap_or(false))
                .expect("trace is onto GF(q)");
            gens.push((format!("u({},{})", alpha.0, beta.0), self.unipotent(alpha, beta)?));
        }
        Ok(gens)
    }

    pub fn psu_generators(&self) -> Result<Vec<(String, Permutation)>, ActionError> {
        let mut gens = self.unipotent_generators()?;
        gens.push(("w".into(), self.matrix_permutation("w", &self.weyl_matrix())?));
        Ok(gens)
    }

    pub fn pgu_generators(&self) -> Result<Vec<(String, Permutation)>, ActionError> {
        let f = &self.ctx;
        let w = f.primitive_element();
        let delta0 = f.pow(w, self.q as i64 - 1);
        let mut gens = self.psu_generators()?;
        gens.push(("y(w,1)".into(), self.torus(w, Elem::ONE)?));
        gens.push(("y(1,d)".into(), self.torus(Elem::ONE, delta0)?));
        Ok(gens)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_set_and_indexing() {
        for q in [2u32, 3, 4] {
            let d = HermitianDomain::new(q).unwrap();
            assert_eq!(d.degree() as u32, q * q * q + 1);
            assert_eq!(d.point(0), [Elem::ONE, Elem::ZERO, Elem::ZERO]);
            assert_eq!(d.point(1), [Elem::ZERO, Elem::ZERO, Elem::ONE]);
            for (i, x) in d.points().iter().enumerate() {
                assert!(d.form(x, x).is_zero());
                assert_eq!(d.index_of(x), Some(i));
                if i >= 2 {
                    assert!(!x[0].is_zero(), "affine points off ⟨e₃⟩ have a ≠ 0");
                }
            }
        }
    }

    #[test]
    fn named_matrices_preserve_the_form() {
        let d = HermitianDomain::new(3).unwrap();
        let f = d.field();
        assert!(d.is_similitude(&d.weyl_matrix()));
        for p in d.torus_params() {
            let TorusParam::Unitary { gamma, delta } = p else { unreachable!() };
            assert!(d.is_similitude(&d.torus_matrix(gamma, delta).unwrap()));
        }
        for a in f.elements() {
            for b in f.elements() {
                if let Ok(m) = d.unipotent_matrix(a, b) {
                    assert!(d.is_similitude(&m));
                }
            }
        }
        let off = f.nonzero().find(|&x| f.norm(x).unwrap() != Elem::ONE).unwrap();
        assert!(!d.is_similitude(&Matrix::diagonal(&[Elem::ONE, off, Elem::ONE])));
    }

    #[test]
    fn bad_torus_parameters() {
        let d = HermitianDomain::new(3).unwrap();
        assert!(d.torus(Elem::ZERO, Elem::ONE).is_err());
        let not_norm_one = d.field().nonzero().find(|&x| d.field().norm(x).unwrap() != Elem::ONE).unwrap();
        assert!(d.torus(Elem::ONE, not_norm_one).is_err());
    }

    #[test]
    fn h_fixes_three_points_in_characteristic_two() {
        let d = HermitianDomain::new(2).unwrap();
        let h = d.field_automorphism();
        let e = d.index_of(&[Elem::ONE, Elem::ZERO, Elem::ONE]).unwrap();
        assert_eq!(h.apply(0), 0);
        assert_eq!(h.apply(1), 1);
        assert_eq!(h.apply(e as u32), e as u32);
        assert!(h.fix_count() >= 3);
    }

    #[test]
    fn h_has_order_2f() {
        for (q, f) in [(2u32, 1u64), (3, 1), (4, 2), (8, 3), (9, 2)] {
            let d = HermitianDomain::new(q).unwrap();
            assert_eq!(d.field_automorphism().order(), 2 * f, "q = {q}");
        }
    }
}
