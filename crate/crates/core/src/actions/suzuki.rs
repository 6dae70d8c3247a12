use crate::field::{Elem, FieldCtx};
use crate::linalg::{vec_mat, Matrix};
use crate::perm::Permutation;

use super::{ActionError, Family};

/// The Tits ovoid `{(a, b, c(a,b))} ∪ {∞}` over GF(q), `q = 2^(2m+1)`, with
/// `c(a,b) = ab + a^(ℓ+2) + b^ℓ` and `ℓ = 2^(m+1)`.
///
/// Index 0 is ∞ and index `1 + a·q + b` is `(a, b, c(a,b))`, so index 1 is
/// the origin `o`. In PG(3,q) the affine point is `⟨(1, a, b, c)⟩` and ∞ is
/// `⟨(0, 0, 0, 1)⟩`.
#[derive(Debug, Clone)]
pub struct SuzukiDomain {
    ctx: FieldCtx,
    q: u32,
    ell: u32,
}

impl SuzukiDomain {
    pub fn new(q: u32) -> Result<Self, ActionError> {
        Self::with_modulus(q, None)
    }

    pub fn with_modulus(q: u32, modulus: Option<Vec<u32>>) -> Result<Self, ActionError> {
        let (p, f) = Family::Sz.validate_q(q)?;
        let ctx = FieldCtx::new(p, f, modulus)?;
        Ok(SuzukiDomain { ctx, q, ell: 1 << ((f - 1) / 2 + 1) })
    }

    pub fn field(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// `ℓ = 2^(m+1)`; `x ↦ x^ℓ` squares to the Frobenius.
    pub fn ell(&self) -> u32 {
        self.ell
    }

    pub fn degree(&self) -> usize {
        (self.q as usize).pow(2) + 1
    }

    pub fn c(&self, a: Elem, b: Elem) -> Elem {
        let f = &self.ctx;
        let l = self.ell as i64;
        f.add(f.add(f.mul(a, b), f.pow(a, l + 2)), f.pow(b, l))
    }

    /// `(a, b, c)` of point `i`; `None` for ∞.
    pub fn point(&self, i: usize) -> Option<[Elem; 3]> {
        if i == 0 {
            return None;
        }
        let q = self.q as usize;
        let (a, b) = (Elem(((i - 1) / q) as u32), Elem(((i - 1) % q) as u32));
        Some([a, b, self.c(a, b)])
    }

    /// Index of `(a, b, c)` if it lies on the ovoid.
    pub fn index_of(&self, a: Elem, b: Elem, c: Elem) -> Option<usize> {
        (self.c(a, b) == c).then(|| 1 + a.index() * self.q as usize + b.index())
    }

    pub fn embed(&self, i: usize) -> [Elem; 4] {
        match self.point(i) {
            None => [Elem::ZERO, Elem::ZERO, Elem::ZERO, Elem::ONE],
            Some([a, b, c]) => [Elem::ONE, a, b, c],
        }
    }

    /// Index of the projective point `⟨v⟩`, if it is on the ovoid.
    pub fn index_of_projective(&self, v: &[Elem]) -> Option<usize> {
        let f = &self.ctx;
        if v[0].is_zero() {
            return (v[1].is_zero() && v[2].is_zero() && !v[3].is_zero()).then_some(0);
        }
        let s = f.inv(v[0]).ok()?;
        self.index_of(f.mul(v[1], s), f.mul(v[2], s), f.mul(v[3], s))
    }

    /// The permutation induced by `x ↦ xM` on PG(3,q).
    pub fn linear_permutation(&self, name: &str, m: &Matrix) -> Result<Permutation, ActionError> {
        let images = (0..self.degree())
            .map(|i| {
                self.index_of_projective(&vec_mat(&self.ctx, &self.embed(i), m))
                    .map(|j| j as u32)
                    .ok_or_else(|| ActionError::LeavesDomain { name: name.into() })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Permutation::from_images(images)?)
    }

    fn affine_map(&self, name: &str, map: impl Fn([Elem; 3]) -> [Elem; 3]) -> Result<Permutation, ActionError> {
        let images = (0..self.degree())
            .map(|i| match self.point(i) {
                None => Ok(0),
                Some(p) => {
                    let [a, b, c] = map(p);
                    self.index_of(a, b, c).map(|j| j as u32).ok_or_else(|| ActionError::LeavesDomain { name: name.into() })
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Permutation::from_images(images)?)
    }

    /// `(a, b, c) ↦ (a², b², c²)`, fixing ∞.
    pub fn field_automorphism(&self) -> Permutation {
        let f = &self.ctx;
        self.affine_map("h", |p| p.map(|x| f.frobenius(x, 1))).expect("Frobenius preserves the ovoid")
    }

    /// `y_κ: (a, b, c) ↦ (κa, κ^(ℓ+1) b, κ^(ℓ+2) c)`.
    pub fn torus(&self, kappa: Elem) -> Result<Permutation, ActionError> {
        if kappa.is_zero() {
            return Err(ActionError::InvalidParameter("κ = 0".into()));
        }
        let f = &self.ctx;
        let l = self.ell as i64;
        let (k1, k2) = (f.pow(kappa, l + 1), f.pow(kappa, l + 2));
        self.affine_map("torus", |[a, b, c]| [f.mul(kappa, a), f.mul(k1, b), f.mul(k2, c)])
    }

    /// The linear map inducing `(a, b) ↦ (a + α, b + β + a α^ℓ)`.
    pub fn unipotent_matrix(&self, alpha: Elem, beta: Elem) -> Matrix {
        let f = &self.ctx;
        let l = self.ell as i64;
        let (o, z) = (Elem::ONE, Elem::ZERO);
        Matrix::from_rows(&[
            vec![o, alpha, beta, f.add(f.add(f.mul(alpha, beta), f.pow(alpha, l + 2)), f.pow(beta, l))],
            vec![z, o, f.pow(alpha, l), f.add(beta, f.pow(alpha, l + 1))],
            vec![z, z, o, alpha],
            vec![z, z, z, o],
        ])
    }

    pub fn unipotent(&self, alpha: Elem, beta: Elem) -> Result<Permutation, ActionError> {
        self.linear_permutation("unipotent", &self.unipotent_matrix(alpha, beta))
    }

    /// Coordinate reversal of PG(3,q), swapping ∞ and o.
    pub fn involution(&self) -> Result<Permutation, ActionError> {
        let mut m = Matrix::zeros(4, 4);
        for i in 0..4 {
            m.set(i, 3 - i, Elem::ONE);
        }
        self.linear_permutation("z", &m)
    }

    pub fn generators(&self) -> Result<Vec<(String, Permutation)>, ActionError> {
        let f = &self.ctx;
        let mut gens = Vec::new();
        for i in 0..f.degree() {
            let x = Elem(1 << i);
            gens.push((format!("u({},0)", x.0), self.unipotent(x, Elem::ZERO)?));
            gens.push((format!("u(0,{})", x.0), self.unipotent(Elem::ZERO, x)?));
        }
        gens.push(("y(w)".into(), self.torus(f.primitive_element())?));
        gens.push(("z".into(), self.involution()?));
        Ok(gens)
    }
}
