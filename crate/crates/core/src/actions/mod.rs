//! The 2-transitive rank-one actions: PGL(2,q) and PSL(2,q) on the projective
//! line, PGU(3,q) and PSU(3,q) on the Hermitian curve, Sz(q) on the Tits
//! ovoid and Ree(q) on the Ree unital.
//!
//! Every domain puts its distinguished pair at indices 0 and 1 (∞ and o, or
//! ⟨e₁⟩ and ⟨e₃⟩), so two-point stabilizers are always the stabilizer of
//! `{0, 1}` pointwise.

mod hermitian;
mod line;
mod ree;
mod suzuki;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use hermitian::HermitianDomain;
pub use line::ProjectiveLineDomain;
pub use ree::{load_generator_file, GeneratorFile, NamedGenerator, ReeDomain, REE3_GENERATORS};
pub use suzuki::SuzukiDomain;

use crate::field::{gcd, prime_power, Elem, FieldError};
use crate::perm::{
    check_materialize, closure_generate, is_t_transitive, GroupHandle, GroupLabel, PairOrbit, PermError, Permutation,
};

#[derive(Debug, Error)]
pub enum ActionError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("generator {name} does not preserve the domain")]
    LeavesDomain { name: String },
    #[error("{family}: closure order {found} differs from the expected {expected}")]
    OrderMismatch { family: String, expected: u64, found: u64 },
    #[error("{0} is not 2-transitive")]
    NotTransitive(String),
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error("generator file: {0}")]
    GeneratorFile(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Pgl2,
    Psl2,
    Pgu3,
    Psu3,
    Sz,
    Ree,
}

impl Family {
    pub const ALL: [Family; 6] = [Family::Pgl2, Family::Psl2, Family::Pgu3, Family::Psu3, Family::Sz, Family::Ree];

    pub fn name(self) -> &'static str {
        match self {
            Family::Pgl2 => "pgl2",
            Family::Psl2 => "psl2",
            Family::Pgu3 => "pgu3",
            Family::Psu3 => "psu3",
            Family::Sz => "sz",
            Family::Ree => "ree",
        }
    }

    /// The family whose domain this group acts on.
    pub fn domain_family(self) -> Family {
        match self {
            Family::Psl2 => Family::Pgl2,
            Family::Psu3 => Family::Pgu3,
            f => f,
        }
    }

    /// The group of the family with the domain's full variant, e.g. PGU for PSU.
    pub fn is_special(self) -> bool {
        matches!(self, Family::Psl2 | Family::Psu3)
    }

    pub fn degree(self, q: u32) -> u64 {
        let q = q as u64;
        match self.domain_family() {
            Family::Pgl2 => q + 1,
            Family::Pgu3 | Family::Ree => q * q * q + 1,
            Family::Sz => q * q + 1,
            _ => unreachable!(),
        }
    }

    /// Group order from the standard formulas.
    pub fn expected_order(self, q: u32) -> u64 {
        let q = q as u64;
        match self {
            Family::Pgl2 => (q + 1) * q * (q - 1),
            Family::Psl2 => (q + 1) * q * (q - 1) / gcd(2, q - 1),
            Family::Pgu3 => (q * q * q + 1) * q * q * q * (q * q - 1),
            Family::Psu3 => (q * q * q + 1) * q * q * q * (q * q - 1) / gcd(3, q + 1),
            Family::Sz => (q * q + 1) * q * q * (q - 1),
            Family::Ree => (q * q * q + 1) * q * q * q * (q - 1),
        }
    }

    /// Parameter constraints: prime power, `2^(2m+1)` for Sz, `3^(2m+1)` for Ree.
    pub fn validate_q(self, q: u32) -> Result<(u32, u32), ActionError> {
        let (p, f) = prime_power(q).ok_or_else(|| ActionError::InvalidParameter(format!("q = {q} is not a prime power")))?;
        match self {
            Family::Sz if p != 2 || f % 2 == 0 => {
                Err(ActionError::InvalidParameter(format!("Sz(q) needs q = 2^(2m+1), got {q}")))
            }
            Family::Ree if p != 3 || f % 2 == 0 => {
                Err(ActionError::InvalidParameter(format!("Ree(q) needs q = 3^(2m+1), got {q}")))
            }
            _ => Ok((p, f)),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = ActionError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| ActionError::InvalidParameter(format!("unknown family {s}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Full,
    Special,
}

/// Parameters of a two-point-stabilizer (torus) element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TorusParam {
    /// `t ↦ a t` on the projective line.
    Scalar(Elem),
    /// `diag(γ^(q+1), γ^q δ, 1)` with `δ^(q+1) = 1`.
    Unitary { gamma: Elem, delta: Elem },
    /// `y_κ` on the Suzuki and Ree domains.
    Kappa(Elem),
}

/// One element `y·h⁻¹` of the two-point-stabilizer coset.
#[derive(Debug, Clone)]
pub struct CosetElement {
    pub param: TorusParam,
    pub torus: Permutation,
    pub coset: Permutation,
}

/// An indexed point set with its named maps.
#[derive(Debug, Clone)]
pub enum ActionDomain {
    Line(ProjectiveLineDomain),
    Hermitian(HermitianDomain),
    Suzuki(SuzukiDomain),
    Ree(ReeDomain),
}

impl ActionDomain {
    pub fn family(&self) -> Family {
        match self {
            ActionDomain::Line(_) => Family::Pgl2,
            ActionDomain::Hermitian(_) => Family::Pgu3,
            ActionDomain::Suzuki(_) => Family::Sz,
            ActionDomain::Ree(_) => Family::Ree,
        }
    }

    pub fn q(&self) -> u32 {
        match self {
            ActionDomain::Line(d) => d.q(),
            ActionDomain::Hermitian(d) => d.q(),
            ActionDomain::Suzuki(d) => d.q(),
            ActionDomain::Ree(d) => d.q(),
        }
    }

    pub fn degree(&self) -> usize {
        match self {
            ActionDomain::Line(d) => d.degree(),
            ActionDomain::Hermitian(d) => d.degree(),
            ActionDomain::Suzuki(d) => d.degree(),
            ActionDomain::Ree(d) => d.degree(),
        }
    }

    /// The coordinate field: GF(q), or GF(q²) for the Hermitian curve.
    pub fn field(&self) -> &crate::field::FieldCtx {
        match self {
            ActionDomain::Line(d) => d.field(),
            ActionDomain::Hermitian(d) => d.field(),
            ActionDomain::Suzuki(d) => d.field(),
            ActionDomain::Ree(d) => d.field(),
        }
    }

    /// Coordinates of point `i` as field-element indices; empty for ∞ on the
    /// Suzuki and Ree domains.
    pub fn coordinates(&self, i: usize) -> Vec<u32> {
        match self {
            ActionDomain::Line(d) => d.coordinates(i).iter().map(|e| e.0).collect(),
            ActionDomain::Hermitian(d) => d.point(i).iter().map(|e| e.0).collect(),
            ActionDomain::Suzuki(d) => d.point(i).map(|p| p.iter().map(|e| e.0).collect()).unwrap_or_default(),
            ActionDomain::Ree(d) => d.coordinates(i).map(|p| p.iter().map(|e| e.0).collect()).unwrap_or_default(),
        }
    }

    /// Coordinatewise `x ↦ x^p`. Not defined on the projective line.
    pub fn field_automorphism_h(&self) -> Result<Permutation, ActionError> {
        match self {
            ActionDomain::Line(_) => {
                Err(ActionError::InvalidParameter("h is defined for pgu3, sz and ree domains".into()))
            }
            ActionDomain::Hermitian(d) => Ok(d.field_automorphism()),
            ActionDomain::Suzuki(d) => Ok(d.field_automorphism()),
            ActionDomain::Ree(d) => Ok(d.field_automorphism()),
        }
    }

    pub fn torus_element(&self, param: TorusParam) -> Result<Permutation, ActionError> {
        match (self, param) {
            (ActionDomain::Line(d), TorusParam::Scalar(a)) => d.scaling(a),
            (ActionDomain::Hermitian(d), TorusParam::Unitary { gamma, delta }) => d.torus(gamma, delta),
            (ActionDomain::Suzuki(d), TorusParam::Kappa(k)) => d.torus(k),
            (ActionDomain::Ree(d), TorusParam::Kappa(k)) => d.torus(k),
            _ => Err(ActionError::InvalidParameter("torus parameter does not match the domain".into())),
        }
    }

    /// All parameters of the full two-point stabilizer torus, in a fixed order.
    pub fn torus_params(&self) -> Vec<TorusParam> {
        match self {
            ActionDomain::Line(d) => d.field().nonzero().map(TorusParam::Scalar).collect(),
            ActionDomain::Hermitian(d) => d.torus_params(),
            ActionDomain::Suzuki(d) => d.field().nonzero().map(TorusParam::Kappa).collect(),
            ActionDomain::Ree(d) => d.field().nonzero().map(TorusParam::Kappa).collect(),
        }
    }

    /// Distinct torus permutations with the first parameter producing each.
    pub fn torus(&self) -> Result<Vec<(TorusParam, Permutation)>, ActionError> {
        let mut seen = std::collections::HashSet::new();
        let mut out = Vec::new();
        for param in self.torus_params() {
            let y = self.torus_element(param)?;
            if seen.insert(y.clone()) {
                out.push((param, y));
            }
        }
        Ok(out)
    }

    /// `{y·h⁻¹ : y ∈ Y}` for the torus `Y` fixing points 0 and 1.
    pub fn two_point_stabilizer_coset(&self, h: &Permutation) -> Result<Vec<CosetElement>, ActionError> {
        let h_inv = h.inverse();
        Ok(self
            .torus()?
            .into_iter()
            .map(|(param, y)| {
                let coset = y.then(&h_inv);
                CosetElement { param, torus: y, coset }
            })
            .collect())
    }

    /// Generators of the group `family` on this domain, plus the names used
    /// in validation messages.
    pub fn generators(&self, family: Family) -> Result<Vec<(String, Permutation)>, ActionError> {
        match (self, family) {
            (ActionDomain::Line(d), Family::Pgl2) => d.pgl_generators(),
            (ActionDomain::Line(d), Family::Psl2) => d.psl_generators(),
            (ActionDomain::Hermitian(d), Family::Pgu3) => d.pgu_generators(),
            (ActionDomain::Hermitian(d), Family::Psu3) => d.psu_generators(),
            (ActionDomain::Suzuki(d), Family::Sz) => d.generators(),
            (ActionDomain::Ree(d), Family::Ree) => d.generators(),
            _ => Err(ActionError::InvalidParameter(format!("{family} does not act on the {} domain", self.family()))),
        }
    }
}

/// Builds the domain for `family` (special variants share the full one).
pub fn build_domain(family: Family, q: u32) -> Result<ActionDomain, ActionError> {
    build_domain_with_modulus(family, q, None)
}

/// As [`build_domain`], with an explicit field modulus: degree `f` for GF(q),
/// degree `2f` for the GF(q²) of the Hermitian curve.
pub fn build_domain_with_modulus(family: Family, q: u32, modulus: Option<Vec<u32>>) -> Result<ActionDomain, ActionError> {
    family.validate_q(q)?;
    Ok(match family.domain_family() {
        Family::Pgl2 => ActionDomain::Line(ProjectiveLineDomain::with_modulus(q, modulus)?),
        Family::Pgu3 => ActionDomain::Hermitian(HermitianDomain::with_modulus(q, modulus)?),
        Family::Sz => ActionDomain::Suzuki(SuzukiDomain::with_modulus(q, modulus)?),
        Family::Ree => ActionDomain::Ree(ReeDomain::with_modulus(q, modulus)?),
        _ => unreachable!(),
    })
}

/// Evidence that a built group is the one claimed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupCertificate {
    pub family: Family,
    pub q: u32,
    pub degree: usize,
    pub expected_order: u64,
    pub order: u64,
    /// `closure` when every element was enumerated, `orbit-stabilizer` when
    /// the order is `|pair orbit| · |torus|`.
    pub order_method: String,
    pub pair_orbit: u64,
    pub two_transitive: bool,
    pub three_transitive: Option<bool>,
}

impl GroupCertificate {
    pub fn passes(&self) -> bool {
        self.order == self.expected_order && self.two_transitive && self.three_transitive.unwrap_or(true)
    }
}

#[derive(Debug, Clone)]
pub struct BuiltGroup {
    pub domain: ActionDomain,
    pub group: GroupHandle,
    pub certificate: GroupCertificate,
}

/// Builds `family` over GF(q). With `materialize` the closure is enumerated
/// (subject to the memory policy) and its size checked against the order
/// formula; otherwise the order is certified as pair-orbit size times torus
/// size. `extra_generators` replaces the built-in generator list (used for
/// Ree(q) generator files).
pub fn build_group_with(
    family: Family,
    q: u32,
    materialize: bool,
    extra_generators: Option<Vec<Permutation>>,
) -> Result<BuiltGroup, ActionError> {
    build_group_on(build_domain(family, q)?, family, materialize, extra_generators)
}

/// Builds `family` on an already constructed domain.
pub fn build_group_on(
    domain: ActionDomain,
    family: Family,
    materialize: bool,
    extra_generators: Option<Vec<Permutation>>,
) -> Result<BuiltGroup, ActionError> {
    family.validate_q(domain.q())?;
    if family.domain_family() != domain.family() {
        return Err(ActionError::InvalidParameter(format!("{family} does not act on the {} domain", domain.family())));
    }
    let q = domain.q();
    let n = domain.degree();
    let gens: Vec<Permutation> = match extra_generators {
        Some(g) => {
            for p in &g {
                if p.degree() != n {
                    return Err(ActionError::GeneratorFile(format!("generator of degree {} on {n} points", p.degree())));
                }
            }
            g
        }
        None => domain.generators(family)?.into_iter().map(|(_, g)| g).collect(),
    };
    let expected = family.expected_order(q);
    let label = GroupLabel::new(family.name(), q, if family.is_special() { "special" } else { "full" });
    let orbit = PairOrbit::compute(&gens, 0, 1);
    let pair_orbit = orbit.len() as u64;
    let two_transitive = pair_orbit == (n as u64) * (n as u64 - 1);
    let three_transitive = (family == Family::Pgl2).then(|| is_t_transitive(&gens, 3));

    let (group, order, method) = if materialize {
        check_materialize(expected, n).map_err(|e| ActionError::Infeasible(e.to_string()))?;
        let mut g = closure_generate(&gens, expected.saturating_mul(2).max(2)).map_err(|e| match e {
            PermError::CapExceeded(_) => ActionError::OrderMismatch {
                family: family.name().into(),
                expected,
                found: expected.saturating_mul(2),
            },
            other => other.into(),
        })?;
        g.label = label;
        let stab = if family.is_special() || family == Family::Ree {
            g.pair_stabilizer_from_elements()?
        } else {
            domain.torus()?.into_iter().map(|(_, y)| y).collect()
        };
        g.set_pair_stabilizer(stab);
        let order = g.order();
        (g, order, "closure")
    } else {
        if family.is_special() || family == Family::Ree {
            return Err(ActionError::Infeasible(format!(
                "{family}: the pair stabilizer is only known from the materialized group; pass --materialize"
            )));
        }
        let stab: Vec<Permutation> = domain.torus()?.into_iter().map(|(_, y)| y).collect();
        let order = stab.len() as u64 * pair_orbit;
        (GroupHandle::unmaterialized(n, gens, order, label, Some(stab)), order, "orbit-stabilizer")
    };
    let certificate = GroupCertificate {
        family,
        q,
        degree: n,
        expected_order: expected,
        order,
        order_method: method.into(),
        pair_orbit,
        two_transitive,
        three_transitive,
    };
    if order != expected {
        return Err(ActionError::OrderMismatch { family: family.name().into(), expected, found: order });
    }
    if !two_transitive {
        return Err(ActionError::NotTransitive(family.name().into()));
    }
    Ok(BuiltGroup { domain, group, certificate })
}

pub fn build_group(family: Family, q: u32, materialize: bool) -> Result<BuiltGroup, ActionError> {
    build_group_with(family, q, materialize, None)
}

/// Least `k ≥ 1` with `h^k ∈ G`; the index `|⟨G, h⟩ : G|` when `h`
/// normalizes `G`.
pub fn automorphism_index(group: &GroupHandle, h: &Permutation) -> Result<u64, ActionError> {
    let mut power = h.clone();
    for k in 1..=h.order() {
        if group.contains(&power)? {
            return Ok(k);
        }
        power = power.then(h);
    }
    unreachable!("h^order(h) is the identity")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_names_round_trip() {
        for f in Family::ALL {
            assert_eq!(f.name().parse::<Family>().unwrap(), f);
        }
        assert!("agl2".parse::<Family>().is_err());
    }

    #[test]
    fn parameter_constraints() {
        assert!(Family::Sz.validate_q(8).is_ok());
        assert!(Family::Sz.validate_q(4).is_err());
        assert!(Family::Sz.validate_q(9).is_err());
        assert!(Family::Ree.validate_q(27).is_ok());
        assert!(Family::Ree.validate_q(9).is_err());
        assert!(Family::Pgu3.validate_q(6).is_err());
        assert!(build_domain(Family::Sz, 16).is_err());
    }

    #[test]
    fn domain_sizes() {
        assert_eq!(build_domain(Family::Pgu3, 2).unwrap().degree(), 9);
        assert_eq!(build_domain(Family::Sz, 8).unwrap().degree(), 65);
        assert_eq!(build_domain(Family::Ree, 3).unwrap().degree(), 28);
        assert_eq!(build_domain(Family::Pgl2, 7).unwrap().degree(), 8);
    }

    #[test]
    fn expected_orders() {
        assert_eq!(Family::Pgu3.expected_order(2), 216);
        assert_eq!(Family::Psu3.expected_order(2), 72);
        assert_eq!(Family::Sz.expected_order(8), 29120);
        assert_eq!(Family::Ree.expected_order(3), 1512);
        assert_eq!(Family::Pgl2.expected_order(3), 24);
        assert_eq!(Family::Psl2.expected_order(3), 12);
        assert_eq!(Family::Psl2.expected_order(4), 60);
    }
}
