use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use super::{Ambient, GeometryError, Ovoid, ProjTensorPoint, TensorSpace};
use crate::field::{Elem, FieldCtx};
use crate::linalg::{dot, normalize, span_vectors};
use crate::perm::Permutation;
use crate::report::Check;

/// A plane of PG(3,q) by dual coordinates, normalized like points.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Plane(pub Vec<Elem>);

impl Plane {
    pub fn new(ctx: &FieldCtx, coords: &[Elem]) -> Option<Plane> {
        normalize(ctx, coords).map(Plane)
    }

    pub fn contains(&self, ctx: &FieldCtx, x: &ProjTensorPoint) -> bool {
        dot(ctx, &self.0, &x.coords).is_zero()
    }

    /// `[b, −d, a, −c]`, the plane of `graph(μ_{a,b,c,d})`.
    pub fn of_mobius(ctx: &FieldCtx, [a, b, c, d]: [Elem; 4]) -> Plane {
        Plane::new(ctx, &[b, ctx.neg(d), a, ctx.neg(c)]).expect("nonsingular map")
    }
}

/// Points of `Q⁺(3,q)` lying on `plane`.
pub fn plane_points(space: &TensorSpace, quadric: &[ProjTensorPoint], plane: &Plane) -> Vec<usize> {
    (0..quadric.len()).filter(|&i| plane.contains(space.field(), &quadric[i])).collect()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Circle {
    pub params: [Elem; 4],
    pub plane: Plane,
    pub points: Vec<usize>,
}

/// The classical Minkowski plane `M(q)`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MinkowskiPlane {
    pub q: u32,
    /// All zeros of `Q`, found by enumerating PG(3,q), in sorted order.
    pub points: Vec<ProjTensorPoint>,
    /// Two rulings: `{X ⊗ Y : Y}` for each `X`, then `{Y ⊗ X : Y}`.
    pub lines: Vec<Vec<usize>>,
    /// `graph(μ)` for every `μ ∈ PGL(2,q)`.
    pub circles: Vec<Circle>,
}

/// Whether an ovoid of PG(3,q) is a conic, with the evidence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassicalCertificate {
    pub classical: bool,
    pub params: Option<[Elem; 4]>,
    pub plane: Option<Plane>,
    pub all_in_plane: Option<bool>,
    pub plane_non_tangent: Option<bool>,
}

/// Every vector of `GF(q)^4` up to scalars.
fn projective_points(ctx: &FieldCtx, dim: usize) -> Vec<Vec<Elem>> {
    let basis: Vec<Vec<Elem>> =
        (0..dim).map(|i| (0..dim).map(|j| if i == j { Elem::ONE } else { Elem::ZERO }).collect()).collect();
    let mut out: Vec<Vec<Elem>> =
        span_vectors(ctx, &basis).into_iter().filter_map(|v| normalize(ctx, &v)).collect::<BTreeSet<_>>().into_iter().collect();
    out.sort();
    out
}

pub fn minkowski_objects(q: u32) -> Result<MinkowskiPlane, GeometryError> {
    let space = TensorSpace::pg3(q)?;
    let ctx = space.field();
    let points: Vec<ProjTensorPoint> = projective_points(ctx, 4)
        .into_iter()
        .map(|coords| ProjTensorPoint { ambient: Ambient::Pg3, coords })
        .filter(|x| ctx.sub(ctx.mul(x.coords[0], x.coords[3]), ctx.mul(x.coords[1], x.coords[2])).is_zero())
        .collect();
    let index: HashMap<&ProjTensorPoint, usize> = points.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let m = space.source_degree();
    let idx = |i: usize, j: usize| index[&space.segre_ids(i, j)];
    let mut lines: Vec<Vec<usize>> = (0..m).map(|x| (0..m).map(|y| idx(x, y)).collect()).collect();
    lines.extend((0..m).map(|x| (0..m).map(|y| idx(y, x)).collect::<Vec<_>>()));
    let line = space.line().expect("pg3 source");
    let circles = line
        .mobius_params()
        .into_iter()
        .map(|params| {
            let [a, b, c, d] = params;
            let mu = line.mobius(a, b, c, d)?;
            let pts = (0..m).map(|i| idx(i, mu.apply(i as u32) as usize)).collect();
            Ok(Circle { params, plane: Plane::of_mobius(ctx, params), points: pts })
        })
        .collect::<Result<Vec<_>, GeometryError>>()?;
    Ok(MinkowskiPlane { q, points, lines, circles })
}

impl MinkowskiPlane {
    /// Structural checks: counts, circle planes, and the independent count
    /// of planes meeting the quadric in exactly `q + 1` points.
    pub fn verify(&self) -> Result<Vec<Check>, GeometryError> {
        let space = TensorSpace::pg3(self.q)?;
        let ctx = space.field();
        let q = self.q as u64;
        let mut checks = vec![
            Check::eq("points = (q+1)^2", (q + 1) * (q + 1), self.points.len() as u64),
            Check::eq("lines = 2(q+1)", 2 * (q + 1), self.lines.len() as u64),
            Check::holds("each line has q+1 points", self.lines.iter().all(|l| l.len() as u64 == q + 1)),
            Check::eq("circles = q^3 - q", q * q * q - q, self.circles.len() as u64),
        ];
        let in_plane = self.circles.iter().all(|c| c.points.iter().all(|&p| c.plane.contains(ctx, &self.points[p])));
        checks.push(Check::holds("graph(mu) lies in [b,-d,a,-c]", in_plane));
        let section = |plane: &Plane| plane_points(&space, &self.points, plane);
        let exact = self.circles.iter().all(|c| {
            let mut s = section(&c.plane);
            s.sort();
            let mut p = c.points.clone();
            p.sort();
            s == p
        });
        checks.push(Check::holds("circle = plane section", exact));
        let conic_planes: BTreeSet<Plane> = projective_points(ctx, 4)
            .into_iter()
            .map(Plane)
            .filter(|pl| section(pl).len() as u64 == q + 1)
            .collect();
        let circle_planes: BTreeSet<Plane> = self.circles.iter().map(|c| c.plane.clone()).collect();
        checks.push(Check::eq("non-tangent planes = q^3 - q", q * q * q - q, conic_planes.len() as u64));
        checks.push(Check::holds("circle planes = non-tangent planes", conic_planes == circle_planes));
        Ok(checks)
    }

    /// Whether `graph(π)` meets every line exactly once.
    pub fn meets_every_line_once(&self, pi: &Permutation) -> Result<bool, GeometryError> {
        let space = TensorSpace::pg3(self.q)?;
        let o = space.graph_unchecked(pi)?;
        let members: BTreeSet<&ProjTensorPoint> = o.points.iter().collect();
        Ok(self.lines.iter().all(|l| l.iter().filter(|&&p| members.contains(&self.points[p])).count() == 1))
    }
}

impl TensorSpace {
    /// Classical test in PG(3,q): `O = graph(μ)` for a Möbius map `μ`.
    pub fn is_classical_conic(&self, o: &Ovoid) -> Result<ClassicalCertificate, GeometryError> {
        let line = self
            .line()
            .ok_or(GeometryError::AmbientMismatch { expected: Ambient::Pg3, found: self.ambient() })?;
        let pi = self.ovoid_to_permutation(o)?;
        let ctx = self.field();
        let found = line
            .mobius_params()
            .into_iter()
            .find(|&[a, b, c, d]| line.mobius(a, b, c, d).map(|m| m == pi).unwrap_or(false));
        let Some(params) = found else {
            return Ok(ClassicalCertificate {
                classical: false,
                params: None,
                plane: None,
                all_in_plane: None,
                plane_non_tangent: None,
            });
        };
        let plane = Plane::of_mobius(ctx, params);
        let all_in_plane = o.points.iter().all(|x| plane.contains(ctx, x));
        let quadric: Vec<ProjTensorPoint> = (0..self.source_degree())
            .flat_map(|i| (0..self.source_degree()).map(move |j| (i, j)))
            .map(|(i, j)| self.segre_ids(i, j))
            .collect();
        let section = plane_points(self, &quadric, &plane).len();
        Ok(ClassicalCertificate {
            classical: true,
            params: Some(params),
            plane: Some(plane),
            all_in_plane: Some(all_in_plane),
            plane_non_tangent: Some(section == self.source_degree()),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q2_counts() {
        let m = minkowski_objects(2).unwrap();
        assert_eq!((m.points.len(), m.lines.len(), m.circles.len()), (9, 6, 6));
        assert!(m.verify().unwrap().iter().all(|c| c.pass));
    }

    #[test]
    fn identity_is_classical_with_the_expected_plane() {
        let s = TensorSpace::pg3(3).unwrap();
        let o = s.graph_of(&Permutation::identity(4)).unwrap();
        let cert = s.is_classical_conic(&o).unwrap();
        assert!(cert.classical);
        let f = s.field();
        // μ_{1,0,0,1}: plane [0, −1, 1, 0]
        assert_eq!(cert.plane, Plane::new(f, &[Elem::ZERO, f.neg(Elem::ONE), Elem::ONE, Elem::ZERO]));
        assert_eq!(cert.all_in_plane, Some(true));
        assert_eq!(cert.plane_non_tangent, Some(true));
    }
}
