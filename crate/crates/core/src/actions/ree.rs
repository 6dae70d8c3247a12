use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::field::{Elem, FieldCtx};
use crate::linalg::{normalize, vec_mat, Matrix};
use crate::perm::Permutation;

use super::{ActionError, Family};

/// Generators of Ree(3) ≅ PΓL(2,8) on the 28-point Ree unital, in the
/// indexing of [`ReeDomain`]. Found by searching the unipotent maps of the
/// 7-dimensional embedding; checked at build time by order and transitivity.
pub const REE3_GENERATORS: &str = include_str!("../../data/ree3_generators.json");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedGenerator {
    pub name: String,
    pub images: Vec<u32>,
}

/// On-disk generator list, e.g. `data/ree3_generators.json`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorFile {
    pub family: String,
    pub q: u32,
    pub degree: usize,
    pub generators: Vec<NamedGenerator>,
}

impl GeneratorFile {
    pub fn parse(json: &str) -> Result<Self, ActionError> {
        serde_json::from_str(json).map_err(|e| ActionError::GeneratorFile(e.to_string()))
    }

    pub fn permutations(&self) -> Result<Vec<(String, Permutation)>, ActionError> {
        self.generators
            .iter()
            .map(|g| {
                if g.images.len() != self.degree {
                    return Err(ActionError::GeneratorFile(format!(
                        "{} has {} images, expected {}",
                        g.name,
                        g.images.len(),
                        self.degree
                    )));
                }
                let p = Permutation::from_images(g.images.clone())
                    .map_err(|e| ActionError::GeneratorFile(format!("{}: {e}", g.name)))?;
                Ok((g.name.clone(), p))
            })
            .collect()
    }
}

pub fn load_generator_file(path: &Path) -> Result<GeneratorFile, ActionError> {
    let text = std::fs::read_to_string(path).map_err(|e| ActionError::GeneratorFile(format!("{}: {e}", path.display())))?;
    GeneratorFile::parse(&text)
}

/// The Ree unital `{(a, b, c, λ₁, λ₂, λ₃)} ∪ {∞}` over GF(q), `q = 3^(2m+1)`,
/// `ℓ = 3^(m+1)`. Index 0 is ∞ and `1 + a·q² + b·q + c` is `(a, b, c, …)`.
#[derive(Debug, Clone)]
pub struct ReeDomain {
    ctx: FieldCtx,
    q: u32,
    ell: u32,
}

impl ReeDomain {
    pub fn new(q: u32) -> Result<Self, ActionError> {
        Self::with_modulus(q, None)
    }

    pub fn with_modulus(q: u32, modulus: Option<Vec<u32>>) -> Result<Self, ActionError> {
        let (p, f) = Family::Ree.validate_q(q)?;
        let ctx = FieldCtx::new(p, f, modulus)?;
        Ok(ReeDomain { ctx, q, ell: 3u32.pow((f - 1) / 2 + 1) })
    }

    pub fn field(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    pub fn degree(&self) -> usize {
        (self.q as usize).pow(3) + 1
    }

    pub fn lambdas(&self, a: Elem, b: Elem, c: Elem) -> [Elem; 3] {
        let f = &self.ctx;
        let l = self.ell as i64;
        let p = |x: Elem, k: i64| f.pow(x, k);
        let m = |x: Elem, y: Elem| f.mul(x, y);
        let sum = |xs: &[Elem]| xs.iter().fold(Elem::ZERO, |s, &x| f.add(s, x));
        let n = |x: Elem| f.neg(x);
        let l1 = sum(&[m(p(a, 2), b), n(m(a, c)), p(b, l), n(p(a, l + 3))]);
        let l2 = sum(&[m(p(a, l), p(b, l)), n(p(c, l)), m(a, p(b, 2)), m(b, c), n(p(a, 2 * l + 3))]);
        let l3 = sum(&[
            m(a, p(c, l)),
            n(m(p(a, l + 1), p(b, l))),
            m(p(a, l + 3), b),
            m(p(a, 2), p(b, 2)),
            n(p(b, l + 1)),
            n(p(c, 2)),
            p(a, 2 * l + 4),
        ]);
        [l1, l2, l3]
    }

    fn abc(&self, i: usize) -> Option<[Elem; 3]> {
        if i == 0 {
            return None;
        }
        let q = self.q as usize;
        let j = i - 1;
        Some([Elem((j / (q * q)) as u32), Elem((j / q % q) as u32), Elem((j % q) as u32)])
    }

    /// `(a, b, c, λ₁, λ₂, λ₃)` of point `i`; `None` for ∞.
    pub fn coordinates(&self, i: usize) -> Option<[Elem; 6]> {
        let [a, b, c] = self.abc(i)?;
        let [l1, l2, l3] = self.lambdas(a, b, c);
        Some([a, b, c, l1, l2, l3])
    }

    pub fn index_of(&self, a: Elem, b: Elem, c: Elem) -> usize {
        let q = self.q as usize;
        1 + (a.index() * q + b.index()) * q + c.index()
    }

    /// `⟨(1, a, b, c, λ₁, λ₂, λ₃)⟩` in PG(6,q); ∞ is `⟨e₇⟩`.
    pub fn embed(&self, i: usize) -> [Elem; 7] {
        let mut v = [Elem::ZERO; 7];
        match self.coordinates(i) {
            None => v[6] = Elem::ONE,
            Some(x) => {
                v[0] = Elem::ONE;
                v[1..].copy_from_slice(&x);
            }
        }
        v
    }

    pub fn index_of_projective(&self, v: &[Elem]) -> Option<usize> {
        let f = &self.ctx;
        if v[0].is_zero() {
            let n = normalize(f, v)?;
            return n.iter().take(6).all(|x| x.is_zero()).then_some(0);
        }
        let s = f.inv(v[0]).ok()?;
        let w: Vec<Elem> = v.iter().map(|&x| f.mul(x, s)).collect();
        let i = self.index_of(w[1], w[2], w[3]);
        (self.embed(i)[..] == w[..]).then_some(i)
    }

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

    fn affine_map(&self, map: impl Fn([Elem; 3]) -> [Elem; 3]) -> Permutation {
        let images = (0..self.degree())
            .map(|i| match self.abc(i) {
                None => 0,
                Some(p) => {
                    let [a, b, c] = map(p);
                    self.index_of(a, b, c) as u32
                }
            })
            .collect();
        Permutation::from_images_unchecked(images)
    }

    /// `(a, b, c, …) ↦ (a³, b³, c³, …)`; the λ's follow since they have
    /// coefficients in GF(3).
    pub fn field_automorphism(&self) -> Permutation {
        let f = &self.ctx;
        self.affine_map(|p| p.map(|x| f.frobenius(x, 1)))
    }

    /// `y_κ: (a, b, c) ↦ (κa, κ^(ℓ+1) b, κ^(ℓ+2) c)`.
    pub fn torus(&self, kappa: Elem) -> Result<Permutation, ActionError> {
        if kappa.is_zero() {
            return Err(ActionError::InvalidParameter("κ = 0".into()));
        }
        let f = &self.ctx;
        let l = self.ell as i64;
        let (k1, k2) = (f.pow(kappa, l + 1), f.pow(kappa, l + 2));
        Ok(self.affine_map(|[a, b, c]| [f.mul(kappa, a), f.mul(k1, b), f.mul(k2, c)]))
    }

    /// Coordinate reversal of PG(6,q). It swaps ∞ and o and preserves the
    /// unital at q = 3.
    pub fn reversal(&self) -> Result<Permutation, ActionError> {
        let mut m = Matrix::zeros(7, 7);
        for i in 0..7 {
            m.set(i, 6 - i, Elem::ONE);
        }
        self.linear_permutation("z", &m)
    }

    /// Built-in generators; only q = 3 ships with a generator list.
    pub fn generators(&self) -> Result<Vec<(String, Permutation)>, ActionError> {
        if self.q != 3 {
            return Err(ActionError::Infeasible(format!(
                "no built-in generators for Ree({}); supply a generator file",
                self.q
            )));
        }
        GeneratorFile::parse(REE3_GENERATORS)?.permutations()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_generators_match_native_maps() {
        let d = ReeDomain::new(3).unwrap();
        let gens = d.generators().unwrap();
        assert_eq!(gens.len(), 5);
        let by_name = |n: &str| gens.iter().find(|(name, _)| name == n).unwrap().1.clone();
        assert_eq!(by_name("y(-1)"), d.torus(Elem(2)).unwrap());
        assert_eq!(by_name("z"), d.reversal().unwrap());
        for name in ["u(1,0,0)", "u(0,1,0)", "u(0,0,1)"] {
            assert_eq!(by_name(name).apply(0), 0);
        }
    }

    #[test]
    fn origin_has_zero_lambdas() {
        let d = ReeDomain::new(3).unwrap();
        assert_eq!(d.coordinates(1).unwrap(), [Elem::ZERO; 6]);
        assert_eq!(d.coordinates(0), None);
    }

    #[test]
    fn h_is_trivial_over_the_prime_field() {
        assert!(ReeDomain::new(3).unwrap().field_automorphism().is_identity());
        assert_eq!(ReeDomain::new(27).unwrap().field_automorphism().order(), 3);
    }

    #[test]
    fn larger_q_needs_a_file() {
        let d = ReeDomain::new(27).unwrap();
        assert!(matches!(d.generators(), Err(ActionError::Infeasible(_))));
    }

    #[test]
    fn malformed_generator_files_are_rejected() {
        assert!(GeneratorFile::parse("{").is_err());
        let bad = r#"{"family":"ree","q":3,"degree":3,"generators":[{"name":"g","images":[0,0,1]}]}"#;
        assert!(GeneratorFile::parse(bad).unwrap().permutations().is_err());
        let short = r#"{"family":"ree","q":3,"degree":3,"generators":[{"name":"g","images":[0,1]}]}"#;
        assert!(GeneratorFile::parse(short).unwrap().permutations().is_err());
    }
}
