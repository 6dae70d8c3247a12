use crate::field::{prime_power, Elem, FieldCtx};
use crate::perm::Permutation;

use super::ActionError;

/// PG(1,q). Index 0 is ∞ with homogeneous coordinates `(0, 1)`; index
/// `1 + t` is the affine point `t` with coordinates `(1, t)`.
///
/// The Möbius map `μ_{a,b,c,d}: t ↦ (at+b)/(ct+d)` acts on coordinates as
/// `(X₁, X₂) ↦ (d X₁ + c X₂, b X₁ + a X₂)`.
#[derive(Debug, Clone)]
pub struct ProjectiveLineDomain {
    ctx: FieldCtx,
}

impl ProjectiveLineDomain {
    pub fn new(q: u32) -> Result<Self, ActionError> {
        Self::with_modulus(q, None)
    }

    /// PG(1,q) over GF(q) presented by `modulus` (degree f).
    pub fn with_modulus(q: u32, modulus: Option<Vec<u32>>) -> Result<Self, ActionError> {
        let (p, f) = prime_power(q).ok_or_else(|| ActionError::InvalidParameter(format!("q = {q} is not a prime power")))?;
        Ok(ProjectiveLineDomain { ctx: FieldCtx::new(p, f, modulus)? })
    }

    pub fn field(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn q(&self) -> u32 {
        self.ctx.order()
    }

    pub fn degree(&self) -> usize {
        self.q() as usize + 1
    }

    pub fn coordinates(&self, i: usize) -> [Elem; 2] {
        if i == 0 {
            [Elem::ZERO, Elem::ONE]
        } else {
            [Elem::ONE, Elem(i as u32 - 1)]
        }
    }

    /// Index of the point with homogeneous coordinates `x` (not both zero).
    pub fn index_of(&self, x: [Elem; 2]) -> Option<usize> {
        if x[0].is_zero() {
            return (!x[1].is_zero()).then_some(0);
        }
        let t = self.ctx.div(x[1], x[0]).ok()?;
        Some(1 + t.index())
    }

    /// `μ_{a,b,c,d}` as a permutation; requires `ad − bc ≠ 0`.
    pub fn mobius(&self, a: Elem, b: Elem, c: Elem, d: Elem) -> Result<Permutation, ActionError> {
        let f = &self.ctx;
        if f.sub(f.mul(a, d), f.mul(b, c)).is_zero() {
            return Err(ActionError::InvalidParameter("ad - bc = 0".into()));
        }
        let images = (0..self.degree())
            .map(|i| {
                let [x1, x2] = self.coordinates(i);
                let y1 = f.add(f.mul(d, x1), f.mul(c, x2));
                let y2 = f.add(f.mul(b, x1), f.mul(a, x2));
                self.index_of([y1, y2]).expect("nonsingular map") as u32
            })
            .collect();
        Ok(Permutation::from_images(images)?)
    }

    /// `t ↦ a t`, fixing ∞ and 0.
    pub fn scaling(&self, a: Elem) -> Result<Permutation, ActionError> {
        if a.is_zero() {
            return Err(ActionError::InvalidParameter("scaling by zero".into()));
        }
        self.mobius(a, Elem::ZERO, Elem::ZERO, Elem::ONE)
    }

    /// Every `(a, b, c, d)` up to scalars, normalized so the last nonzero of
    /// `(a, b, c, d)` is one; `|PGL(2,q)|` tuples.
    pub fn mobius_params(&self) -> Vec<[Elem; 4]> {
        let f = &self.ctx;
        let mut out = Vec::new();
        for a in f.elements() {
            for b in f.elements() {
                for c in f.elements() {
                    for d in f.elements() {
                        let v = [a, b, c, d];
                        let last = v.iter().rposition(|x| !x.is_zero());
                        if last.map(|k| v[k]) != Some(Elem::ONE) {
                            continue;
                        }
                        if !f.sub(f.mul(a, d), f.mul(b, c)).is_zero() {
                            out.push(v);
                        }
                    }
                }
            }
        }
        out
    }

    fn translations(&self) -> Result<Vec<(String, Permutation)>, ActionError> {
        let f = &self.ctx;
        (0..f.degree())
            .map(|i| {
                let b = Elem(f.p().pow(i));
                Ok((format!("t+{}", b.0), self.mobius(Elem::ONE, b, Elem::ZERO, Elem::ONE)?))
            })
            .collect()
    }

    pub fn pgl_generators(&self) -> Result<Vec<(String, Permutation)>, ActionError> {
        let f = &self.ctx;
        let mut gens = self.translations()?;
        gens.push(("w*t".into(), self.scaling(f.primitive_element())?));
        gens.push(("1/t".into(), self.mobius(Elem::ZERO, Elem::ONE, Elem::ONE, Elem::ZERO)?));
        Ok(gens)
    }

    pub fn psl_generators(&self) -> Result<Vec<(String, Permutation)>, ActionError> {
        let f = &self.ctx;
        let w = f.primitive_element();
        let mut gens = self.translations()?;
        gens.push(("w^2*t".into(), self.scaling(f.mul(w, w))?));
        gens.push(("-1/t".into(), self.mobius(Elem::ZERO, f.neg(Elem::ONE), Elem::ONE, Elem::ZERO)?));
        Ok(gens)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::closure_generate;

    #[test]
    fn mobius_matches_the_rational_formula() {
        let line = ProjectiveLineDomain::new(7).unwrap();
        let f = line.field();
        let (a, b, c, d) = (Elem(2), Elem(3), Elem(1), Elem(6));
        let mu = line.mobius(a, b, c, d).unwrap();
        for t in f.elements() {
            let den = f.add(f.mul(c, t), d);
            let expected = if den.is_zero() {
                0
            } else {
                1 + f.div(f.add(f.mul(a, t), b), den).unwrap().index()
            };
            assert_eq!(mu.apply(1 + t.0) as usize, expected);
        }
        // ∞ ↦ a / c
        assert_eq!(mu.apply(0) as usize, 1 + f.div(a, c).unwrap().index());
    }

    #[test]
    fn all_mobius_params_give_distinct_maps() {
        let line = ProjectiveLineDomain::new(4).unwrap();
        let params = line.mobius_params();
        assert_eq!(params.len(), 60);
        let maps: std::collections::BTreeSet<_> =
            params.iter().map(|&[a, b, c, d]| line.mobius(a, b, c, d).unwrap()).collect();
        assert_eq!(maps.len(), 60);
        let gens: Vec<_> = line.pgl_generators().unwrap().into_iter().map(|(_, g)| g).collect();
        let g = closure_generate(&gens, 1000).unwrap();
        assert!(maps.iter().all(|m| g.contains(m).unwrap()));
    }

    #[test]
    fn singular_mobius_rejected() {
        let line = ProjectiveLineDomain::new(3).unwrap();
        assert!(line.mobius(Elem(1), Elem(1), Elem(1), Elem(1)).is_err());
        assert!(line.scaling(Elem::ZERO).is_err());
    }
}
