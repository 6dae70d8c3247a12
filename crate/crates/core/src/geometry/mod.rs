//! Segre-variety models of permutation codes.
//!
//! A permutation `π` of a source point set (PG(1,q) or the Hermitian curve)
//! becomes the ovoid `graph(π) = {X ⊗ X^π}` of simple tensors in PG(3,q) or
//! PG(8,q²). Agreements of two permutations are intersections of their
//! graphs, so covering radii become intersection statistics of ovoids.
//!
//! Tensor coordinates are row-major: `(u ⊗ v)[k·i + j] = u_i v_j`, with
//! representatives scaled so the last nonzero entry is one.

mod minkowski;
mod radius;
mod unitary;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use minkowski::{minkowski_objects, plane_points, ClassicalCertificate, MinkowskiPlane, Plane};
pub use radius::{covering_radius_geometric, GeometricRadius, MAX_PG3_Q};
pub use unitary::{alternating_basis, span_and_perp, SpanPerp};

use crate::actions::{ActionError, HermitianDomain, ProjectiveLineDomain};
use crate::field::{Elem, FieldCtx};
use crate::linalg::normalize;
use crate::perm::{GroupHandle, PermError, Permutation};

#[derive(Debug, Error)]
pub enum GeometryError {
    #[error("ambient mismatch: expected {expected}, found {found}")]
    AmbientMismatch { expected: Ambient, found: Ambient },
    #[error("form {0:?} needs a second argument")]
    MissingArgument(FormKind),
    #[error("point {0} is not a simple tensor of source points")]
    NotSimpleTensor(usize),
    #[error("ovoid repeats the {which} factor at members {i} and {j}")]
    RepeatedFactor { which: &'static str, i: usize, j: usize },
    #[error("ovoid has {found} members, a complete one has {expected}")]
    Incomplete { expected: usize, found: usize },
    #[error("members {0} and {1} are orthogonal")]
    OrthogonalPair(usize, usize),
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("{0}")]
    Precondition(String),
    #[error(transparent)]
    Action(#[from] ActionError),
    #[error(transparent)]
    Perm(#[from] PermError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Ambient {
    /// PG(3,q) containing the hyperbolic quadric `S_{1,1}`.
    Pg3,
    /// PG(8,q²) containing `S_{2,2}` and `U_{2,2}`.
    Pg8,
}

impl std::fmt::Display for Ambient {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Ambient::Pg3 => "pg3",
            Ambient::Pg8 => "pg8",
        })
    }
}

impl std::str::FromStr for Ambient {
    type Err = GeometryError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "pg3" => Ok(Ambient::Pg3),
            "pg8" => Ok(Ambient::Pg8),
            _ => Err(GeometryError::Precondition(format!("unknown ambient {s}"))),
        }
    }
}

/// A normalized projective point with tensor coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ProjTensorPoint {
    pub ambient: Ambient,
    pub coords: Vec<Elem>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FormKind {
    /// `Q(X) = X₁X₄ − X₂X₃` on PG(3,q).
    QuadricQ,
    /// Polar form `B(X,Y) = X₁Y₄ − X₂Y₃ − X₃Y₂ + X₄Y₁ = β⊗β` on PG(3,q).
    BilinearB,
    /// `β⊗β` on PG(8,q²) for the Hermitian `β`.
    HermitianBB,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormSpec {
    pub kind: FormKind,
    pub ambient: Ambient,
}

impl FormSpec {
    pub fn quadric() -> Self {
        FormSpec { kind: FormKind::QuadricQ, ambient: Ambient::Pg3 }
    }
    pub fn bilinear() -> Self {
        FormSpec { kind: FormKind::BilinearB, ambient: Ambient::Pg3 }
    }
    pub fn hermitian() -> Self {
        FormSpec { kind: FormKind::HermitianBB, ambient: Ambient::Pg8 }
    }
}

#[derive(Debug, Clone)]
enum Source {
    Line(ProjectiveLineDomain),
    Hermitian(HermitianDomain),
}

/// The ambient space together with its source point set and a lookup from
/// simple tensors back to source index pairs.
#[derive(Debug, Clone)]
pub struct TensorSpace {
    ambient: Ambient,
    source: Source,
    /// Source coordinates, indexed like the action domain.
    points: Vec<Vec<Elem>>,
    lookup: HashMap<Vec<Elem>, (u32, u32)>,
}

impl TensorSpace {
    /// PG(3,q) over PG(1,q).
    pub fn pg3(q: u32) -> Result<Self, GeometryError> {
        let line = ProjectiveLineDomain::new(q)?;
        let points = (0..line.degree()).map(|i| line.coordinates(i).to_vec()).collect();
        Ok(Self::build(Ambient::Pg3, Source::Line(line), points))
    }

    /// PG(8,q²) over the Hermitian curve H(2,q²).
    pub fn pg8(q: u32) -> Result<Self, GeometryError> {
        let herm = HermitianDomain::new(q)?;
        let points = herm.points().iter().map(|p| p.to_vec()).collect();
        Ok(Self::build(Ambient::Pg8, Source::Hermitian(herm), points))
    }

    pub fn new(ambient: Ambient, q: u32) -> Result<Self, GeometryError> {
        match ambient {
            Ambient::Pg3 => Self::pg3(q),
            Ambient::Pg8 => Self::pg8(q),
        }
    }

    fn build(ambient: Ambient, source: Source, points: Vec<Vec<Elem>>) -> Self {
        let mut space = TensorSpace { ambient, source, points, lookup: HashMap::new() };
        let m = space.points.len();
        let mut lookup = HashMap::with_capacity(m * m);
        for i in 0..m {
            for j in 0..m {
                lookup.insert(space.segre_ids(i, j).coords, (i as u32, j as u32));
            }
        }
        space.lookup = lookup;
        space
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    /// GF(q) for PG(3,q), GF(q²) for PG(8,q²).
    pub fn field(&self) -> &FieldCtx {
        match &self.source {
            Source::Line(l) => l.field(),
            Source::Hermitian(h) => h.field(),
        }
    }

    pub fn q(&self) -> u32 {
        match &self.source {
            Source::Line(l) => l.q(),
            Source::Hermitian(h) => h.q(),
        }
    }

    pub fn line(&self) -> Option<&ProjectiveLineDomain> {
        match &self.source {
            Source::Line(l) => Some(l),
            Source::Hermitian(_) => None,
        }
    }

    pub fn hermitian(&self) -> Option<&HermitianDomain> {
        match &self.source {
            Source::Hermitian(h) => Some(h),
            Source::Line(_) => None,
        }
    }

    /// Number of source points: `q + 1` or `q³ + 1`.
    pub fn source_degree(&self) -> usize {
        self.points.len()
    }

    pub fn source_point(&self, i: usize) -> &[Elem] {
        &self.points[i]
    }

    /// Dimension of the vector space: 4 or 9.
    pub fn dimension(&self) -> usize {
        match self.ambient {
            Ambient::Pg3 => 4,
            Ambient::Pg8 => 9,
        }
    }

    pub fn point(&self, coords: &[Elem]) -> Option<ProjTensorPoint> {
        if coords.len() != self.dimension() {
            return None;
        }
        Some(ProjTensorPoint { ambient: self.ambient, coords: normalize(self.field(), coords)? })
    }

    /// `u ⊗ v`, normalized.
    pub fn segre(&self, u: &[Elem], v: &[Elem]) -> ProjTensorPoint {
        let f = self.field();
        let coords: Vec<Elem> = u.iter().flat_map(|&a| v.iter().map(move |&b| f.mul(a, b))).collect();
        self.point(&coords).expect("tensor of nonzero vectors is nonzero")
    }

    pub fn segre_ids(&self, i: usize, j: usize) -> ProjTensorPoint {
        self.segre(&self.points[i], &self.points[j])
    }

    /// `(i, j)` with `x = Pᵢ ⊗ Pⱼ`, if `x` is a simple tensor of source points.
    pub fn decompose(&self, x: &ProjTensorPoint) -> Option<(usize, usize)> {
        self.lookup.get(&x.coords).map(|&(i, j)| (i as usize, j as usize))
    }

    /// Evaluates a form. The quadric takes one argument; the pair forms take
    /// two, with the second conjugated for the Hermitian kind.
    pub fn form_eval(
        &self,
        spec: FormSpec,
        x: &ProjTensorPoint,
        y: Option<&ProjTensorPoint>,
    ) -> Result<Elem, GeometryError> {
        for p in std::iter::once(x).chain(y) {
            if p.ambient != spec.ambient || self.ambient != spec.ambient {
                return Err(GeometryError::AmbientMismatch { expected: spec.ambient, found: p.ambient });
            }
        }
        let f = self.field();
        let x = &x.coords;
        match spec.kind {
            FormKind::QuadricQ => Ok(f.sub(f.mul(x[0], x[3]), f.mul(x[1], x[2]))),
            FormKind::BilinearB => {
                let y = &y.ok_or(GeometryError::MissingArgument(spec.kind))?.coords;
                Ok(bilinear_b(f, x, y))
            }
            FormKind::HermitianBB => {
                let y = &y.ok_or(GeometryError::MissingArgument(spec.kind))?.coords;
                Ok(hermitian_bb(f, x, y))
            }
        }
    }

    /// The pair form of this ambient (B or β⊗β).
    pub fn pair_form(&self) -> FormSpec {
        match self.ambient {
            Ambient::Pg3 => FormSpec::bilinear(),
            Ambient::Pg8 => FormSpec::hermitian(),
        }
    }

    pub fn orthogonal(&self, x: &ProjTensorPoint, y: &ProjTensorPoint) -> bool {
        self.form_eval(self.pair_form(), x, Some(y)).map(|v| v.is_zero()).unwrap_or(false)
    }

    /// `graph(π) = {Pᵢ ⊗ P_{π(i)}}`; fails if two members are orthogonal.
    pub fn graph_of(&self, pi: &Permutation) -> Result<Ovoid, GeometryError> {
        let o = self.graph_unchecked(pi)?;
        if let Some((i, j)) = o.orthogonal_pair(self) {
            return Err(GeometryError::OrthogonalPair(i, j));
        }
        Ok(o)
    }

    /// `graph(π)` without the pairwise check.
    pub fn graph_unchecked(&self, pi: &Permutation) -> Result<Ovoid, GeometryError> {
        let m = self.source_degree();
        if pi.degree() != m {
            return Err(PermError::DomainMismatch { left: pi.degree(), right: m }.into());
        }
        let points = (0..m).map(|i| self.segre_ids(i, pi.apply(i as u32) as usize)).collect();
        Ok(Ovoid { ambient: self.ambient, points, origin: Some(pi.clone()) })
    }

    /// The permutation `Pᵢ ↦ Qᵢ` of an ovoid `{Pᵢ ⊗ Qᵢ}`.
    pub fn ovoid_to_permutation(&self, o: &Ovoid) -> Result<Permutation, GeometryError> {
        let m = self.source_degree();
        if o.points.len() != m {
            return Err(GeometryError::Incomplete { expected: m, found: o.points.len() });
        }
        let mut images = vec![u32::MAX; m];
        let mut first_at = vec![usize::MAX; m];
        let mut second_at = vec![usize::MAX; m];
        for (k, x) in o.points.iter().enumerate() {
            let (i, j) = self.decompose(x).ok_or(GeometryError::NotSimpleTensor(k))?;
            if first_at[i] != usize::MAX {
                return Err(GeometryError::RepeatedFactor { which: "first", i: first_at[i], j: k });
            }
            if second_at[j] != usize::MAX {
                return Err(GeometryError::RepeatedFactor { which: "second", i: second_at[j], j: k });
            }
            first_at[i] = k;
            second_at[j] = k;
            images[i] = j as u32;
        }
        Ok(Permutation::from_images(images)?)
    }

    /// `|graph(f) ∩ graph(g)|` computed on coordinates.
    pub fn graph_intersection(&self, f: &Permutation, g: &Permutation) -> Result<usize, GeometryError> {
        let a = self.graph_unchecked(f)?;
        let b = self.graph_unchecked(g)?;
        let set: std::collections::HashSet<&ProjTensorPoint> = a.points.iter().collect();
        Ok(b.points.iter().filter(|p| set.contains(p)).count())
    }

    /// Classical test in PG(8,q²): the ovoid's permutation lies in `pgu`.
    pub fn is_classical_unitary(&self, o: &Ovoid, pgu: &GroupHandle) -> Result<bool, GeometryError> {
        if self.ambient != Ambient::Pg8 {
            return Err(GeometryError::AmbientMismatch { expected: Ambient::Pg8, found: self.ambient });
        }
        Ok(pgu.contains(&self.ovoid_to_permutation(o)?)?)
    }
}

/// `X₁Y₄ − X₂Y₃ − X₃Y₂ + X₄Y₁`.
fn bilinear_b(f: &FieldCtx, x: &[Elem], y: &[Elem]) -> Elem {
    let plus = f.add(f.mul(x[0], y[3]), f.mul(x[3], y[0]));
    let minus = f.add(f.mul(x[1], y[2]), f.mul(x[2], y[1]));
    f.sub(plus, minus)
}

/// `Σ X_{ij} · conj(Y_{σi,σj})` with `σ` swapping the first and third
/// coordinates, which is `β⊗β` for `β(x,y) = x₁y₃^q + x₂y₂^q + x₃y₁^q`.
fn hermitian_bb(f: &FieldCtx, x: &[Elem], y: &[Elem]) -> Elem {
    const SIGMA: [usize; 3] = [2, 1, 0];
    let mut s = Elem::ZERO;
    for i in 0..3 {
        for j in 0..3 {
            let xi = x[3 * i + j];
            if xi.is_zero() {
                continue;
            }
            let yc = f.conj(y[3 * SIGMA[i] + SIGMA[j]]).expect("quadratic field");
            s = f.add(s, f.mul(xi, yc));
        }
    }
    s
}

/// A set of tensor points, usually `graph(π)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ovoid {
    pub ambient: Ambient,
    pub points: Vec<ProjTensorPoint>,
    pub origin: Option<Permutation>,
}

impl Ovoid {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// First pair of distinct orthogonal members, if any.
    pub fn orthogonal_pair(&self, space: &TensorSpace) -> Option<(usize, usize)> {
        let n = self.points.len();
        (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).find(|&(i, j)| space.orthogonal(&self.points[i], &self.points[j]))
    }

    /// A header, then one row per member: index followed by coordinate indices.
    pub fn to_csv(&self) -> String {
        let width = self.points.first().map_or(0, |p| p.coords.len());
        let mut out = String::from("index");
        for k in 0..width {
            out.push_str(&format!(",x{k}"));
        }
        out.push('\n');
        for (i, p) in self.points.iter().enumerate() {
            out.push_str(&i.to_string());
            for c in &p.coords {
                out.push(',');
                out.push_str(&c.0.to_string());
            }
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn segre_basics() {
        let s = TensorSpace::pg3(3).unwrap();
        let p = s.segre(&[Elem::ONE, Elem::ZERO], &[Elem::ZERO, Elem::ONE]);
        assert_eq!(p.coords, vec![Elem::ZERO, Elem::ONE, Elem::ZERO, Elem::ZERO]);
        for i in 0..4 {
            for j in 0..4 {
                let x = s.segre_ids(i, j);
                assert!(s.form_eval(FormSpec::quadric(), &x, None).unwrap().is_zero());
                assert_eq!(s.decompose(&x), Some((i, j)));
            }
        }
        let off = s.point(&[Elem::ONE, Elem::ZERO, Elem::ZERO, Elem::ONE]).unwrap();
        assert_eq!(s.form_eval(FormSpec::quadric(), &off, None).unwrap(), Elem::ONE);
        assert_eq!(s.decompose(&off), None);
    }

    #[test]
    fn u22_at_q2_has_81_points() {
        let s = TensorSpace::pg8(2).unwrap();
        assert_eq!(s.lookup.len(), 81);
    }

    #[test]
    fn form_argument_checks() {
        let s3 = TensorSpace::pg3(2).unwrap();
        let x = s3.segre_ids(0, 1);
        assert!(matches!(s3.form_eval(FormSpec::bilinear(), &x, None), Err(GeometryError::MissingArgument(_))));
        assert!(matches!(s3.form_eval(FormSpec::hermitian(), &x, Some(&x)), Err(GeometryError::AmbientMismatch { .. })));
    }

    #[test]
    fn hermitian_tensor_form_factors() {
        let s = TensorSpace::pg8(2).unwrap();
        let h = s.hermitian().unwrap();
        let m = s.source_degree();
        for (a, b, c, d) in [(0, 1, 2, 3), (4, 4, 5, 6), (7, 8, 7, 8), (2, 2, 2, 2)] {
            let lhs = s.form_eval(FormSpec::hermitian(), &s.segre_ids(a, b), Some(&s.segre_ids(c, d))).unwrap();
            let pa = h.point(a);
            let pc = h.point(c);
            let pb = h.point(b);
            let pd = h.point(d);
            let rhs = s.field().mul(h.form(&pa, &pc), h.form(&pb, &pd));
            // Normalized representatives all have last nonzero 1, so no rescaling.
            assert_eq!(lhs, rhs, "({a},{b}),({c},{d}) of {m}");
        }
    }

    #[test]
    fn repeated_second_factor_is_rejected() {
        let s = TensorSpace::pg3(3).unwrap();
        let mut o = s.graph_of(&Permutation::identity(4)).unwrap();
        o.points[1] = s.segre_ids(1, 0);
        assert!(matches!(s.ovoid_to_permutation(&o), Err(GeometryError::RepeatedFactor { which: "second", .. })));
        o.points.pop();
        assert!(matches!(s.ovoid_to_permutation(&o), Err(GeometryError::Incomplete { .. })));
    }
}
