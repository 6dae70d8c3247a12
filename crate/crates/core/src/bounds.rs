//! Exhaustive checks of the fixed-point counting systems and the reduced
//! (two-point-stabilizer coset) distance algorithm.
//!
//! Three polynomial systems control the fixed points of `y·h⁻¹`:
//!
//! * `eq3` over GF(q²): `a^(p−1) = γ^(q+1)`, `b^p = b γ^q δ`, `a + a^q + b^(q+1) = 0`;
//! * `eq9` over GF(q), q = 2^(2m+1): `κa = a²`, `κ^(ℓ+1) b = b²`, `κ^(ℓ+2) c = c²`,
//!   `c = ab + a^(ℓ+2) + b^ℓ`;
//! * `eq8` over GF(q), q = 3^(2m+1): `κa = a³`, `κ^(ℓ+1) b = b³`, `κ^(ℓ+2) c = c³`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::actions::{
    build_domain, build_group, ActionDomain, ActionError, Family, HermitianDomain, ReeDomain, SuzukiDomain, TorusParam,
};
use crate::field::{gcd, Elem, FieldCtx, FieldError};
pub use crate::report::Check;
use crate::perm::{
    check_materialize, covering_radius_exact, distance_to_group, DistanceMode, GroupHandle, PermError, Permutation,
    DEFAULT_SWEEP_DEGREE,
};

/// Solution lists are kept only up to this many entries.
pub const SOLUTION_LIST_LIMIT: usize = 32;

/// Brute-force cross-checks run when `|G| · n` stays below this.
pub const BRUTE_WORK_LIMIT: u64 = 50_000_000;

#[derive(Debug, Error)]
pub enum BoundsError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Action(#[from] ActionError),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SystemId {
    Eq3,
    Eq9,
    Eq8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionCountReport {
    pub system: SystemId,
    pub q: u32,
    pub param: TorusParam,
    pub count: usize,
    /// Solutions as field-element indices; present when `count ≤ 32`.
    pub solutions: Option<Vec<Vec<u32>>>,
    /// The lemma's bound: `p − 1`, `4` or `27`.
    pub bound: usize,
    pub within_bound: bool,
    /// eq9 only: the solutions are exactly the four closed forms.
    pub matches_closed_form: Option<bool>,
}

impl SolutionCountReport {
    fn new(system: SystemId, q: u32, param: TorusParam, sols: Vec<Vec<u32>>, bound: usize) -> Self {
        let count = sols.len();
        SolutionCountReport {
            system,
            q,
            param,
            count,
            solutions: (count <= SOLUTION_LIST_LIMIT).then_some(sols),
            bound,
            within_bound: count <= bound,
            matches_closed_form: None,
        }
    }
}

fn nonzero(x: Elem, what: &str) -> Result<(), BoundsError> {
    if x.is_zero() {
        Err(BoundsError::InvalidParameter(format!("{what} = 0")))
    } else {
        Ok(())
    }
}

/// Per-element tables used by the eq3 sweep.
struct Eq3Tables {
    p: u32,
    q: u32,
    /// `a^(p−1)`
    a_pow: Vec<Elem>,
    /// `b^p`
    b_pow: Vec<Elem>,
    trace: Vec<Elem>,
    norm: Vec<Elem>,
}

impl Eq3Tables {
    fn new(ctx: &FieldCtx, q: u32) -> Result<Self, FieldError> {
        let p = ctx.p();
        let els: Vec<Elem> = ctx.elements().collect();
        Ok(Eq3Tables {
            p,
            q,
            a_pow: els.iter().map(|&a| ctx.pow(a, p as i64 - 1)).collect(),
            b_pow: els.iter().map(|&b| ctx.pow(b, p as i64)).collect(),
            trace: els.iter().map(|&a| ctx.trace(a)).collect::<Result<_, _>>()?,
            norm: els.iter().map(|&b| ctx.norm(b)).collect::<Result<_, _>>()?,
        })
    }

    fn solve(&self, ctx: &FieldCtx, gamma: Elem, delta: Elem) -> Vec<Vec<u32>> {
        let q = self.q as i64;
        let g1 = ctx.pow(gamma, q + 1);
        let g2 = ctx.mul(ctx.pow(gamma, q), delta);
        let mut sols = Vec::new();
        for a in ctx.elements() {
            if self.a_pow[a.index()] != g1 {
                continue;
            }
            for b in ctx.elements() {
                if self.b_pow[b.index()] == ctx.mul(b, g2)
                    && ctx.add(self.trace[a.index()], self.norm[b.index()]).is_zero()
                {
                    sols.push(vec![a.0, b.0]);
                }
            }
        }
        sols
    }
}

fn eq3_checked_params(ctx: &FieldCtx, gamma: Elem, delta: Elem) -> Result<(), BoundsError> {
    nonzero(gamma, "γ")?;
    if ctx.norm(delta)? != Elem::ONE {
        return Err(BoundsError::InvalidParameter("δ^(q+1) ≠ 1".into()));
    }
    Ok(())
}

/// Exhaustive solution count of eq3 over `(a, b) ∈ GF(q²)²`.
pub fn count_eq3(q: u32, gamma: Elem, delta: Elem) -> Result<SolutionCountReport, BoundsError> {
    let ctx = FieldCtx::quadratic_of_order(q)?;
    count_eq3_in(&ctx, q, gamma, delta)
}

fn count_eq3_in(ctx: &FieldCtx, q: u32, gamma: Elem, delta: Elem) -> Result<SolutionCountReport, BoundsError> {
    eq3_checked_params(ctx, gamma, delta)?;
    let t = Eq3Tables::new(ctx, q)?;
    let sols = t.solve(ctx, gamma, delta);
    Ok(SolutionCountReport::new(SystemId::Eq3, q, TorusParam::Unitary { gamma, delta }, sols, t.p as usize - 1))
}

/// eq3 for every `γ ≠ 0` and every norm-one `δ`, γ-major.
pub fn sweep_eq3(q: u32) -> Result<Vec<SolutionCountReport>, BoundsError> {
    let ctx = FieldCtx::quadratic_of_order(q)?;
    let t = Eq3Tables::new(&ctx, q)?;
    let norm_one = ctx.norm_one()?;
    let params: Vec<(Elem, Elem)> = ctx.nonzero().flat_map(|g| norm_one.iter().map(move |&d| (g, d))).collect();
    Ok(params
        .par_iter()
        .map(|&(gamma, delta)| {
            let sols = t.solve(&ctx, gamma, delta);
            SolutionCountReport::new(SystemId::Eq3, q, TorusParam::Unitary { gamma, delta }, sols, t.p as usize - 1)
        })
        .collect())
}

/// One row of the eq3 ↔ fixed-point correspondence check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Eq3Correspondence {
    pub gamma: Elem,
    pub delta: Elem,
    pub fix_count: usize,
    pub solutions_a_nonzero: usize,
    pub holds: bool,
}

/// Checks `fix(y·h⁻¹) = 2 + #{eq3 solutions with a ≠ 0}` for every torus
/// parameter on the Hermitian curve.
pub fn eq3_correspondence(q: u32) -> Result<Vec<Eq3Correspondence>, BoundsError> {
    let domain = HermitianDomain::new(q)?;
    let ctx = domain.field();
    let t = Eq3Tables::new(ctx, q)?;
    let h_inv = domain.field_automorphism().inverse();
    domain
        .torus_params()
        .par_iter()
        .map(|&param| {
            let TorusParam::Unitary { gamma, delta } = param else { unreachable!() };
            let y = domain.torus(gamma, delta)?;
            let fix_count = y.then(&h_inv).fix_count();
            let solutions_a_nonzero = t.solve(ctx, gamma, delta).iter().filter(|s| s[0] != 0).count();
            Ok(Eq3Correspondence { gamma, delta, fix_count, solutions_a_nonzero, holds: fix_count == 2 + solutions_a_nonzero })
        })
        .collect()
}

/// Exhaustive solution count of eq9 over `(a, b, c) ∈ GF(q)³`.
pub fn count_eq9(q: u32, kappa: Elem) -> Result<SolutionCountReport, BoundsError> {
    let d = SuzukiDomain::new(q)?;
    count_eq9_in(&d, kappa)
}

fn count_eq9_in(d: &SuzukiDomain, kappa: Elem) -> Result<SolutionCountReport, BoundsError> {
    nonzero(kappa, "κ")?;
    let f = d.field();
    let l = d.ell() as i64;
    let (k1, k2) = (f.pow(kappa, l + 1), f.pow(kappa, l + 2));
    let sq: Vec<Elem> = f.elements().map(|x| f.mul(x, x)).collect();
    let mut sols = Vec::new();
    for a in f.elements().filter(|&a| f.mul(kappa, a) == sq[a.index()]) {
        for b in f.elements().filter(|&b| f.mul(k1, b) == sq[b.index()]) {
            for c in f.elements() {
                if f.mul(k2, c) == sq[c.index()] && d.c(a, b) == c {
                    sols.push(vec![a.0, b.0, c.0]);
                }
            }
        }
    }
    let mut expected = vec![
        vec![0, 0, 0],
        vec![0, k1.0, k2.0],
        vec![kappa.0, 0, k2.0],
        vec![kappa.0, k1.0, k2.0],
    ];
    expected.sort();
    let mut report = SolutionCountReport::new(SystemId::Eq9, d.q(), TorusParam::Kappa(kappa), sols, 4);
    let mut got = report.solutions.clone().unwrap_or_default();
    got.sort();
    report.within_bound = report.count == 4;
    report.matches_closed_form = Some(got == expected);
    Ok(report)
}

pub fn sweep_eq9(q: u32) -> Result<Vec<SolutionCountReport>, BoundsError> {
    let d = SuzukiDomain::new(q)?;
    let ks: Vec<Elem> = d.field().nonzero().collect();
    ks.par_iter().map(|&k| count_eq9_in(&d, k)).collect()
}

/// Exhaustive solution count of eq8 over `(a, b, c) ∈ GF(q)³`.
pub fn count_eq8(q: u32, kappa: Elem) -> Result<SolutionCountReport, BoundsError> {
    let d = ReeDomain::new(q)?;
    count_eq8_in(&d, kappa)
}

fn count_eq8_in(d: &ReeDomain, kappa: Elem) -> Result<SolutionCountReport, BoundsError> {
    nonzero(kappa, "κ")?;
    let f = d.field();
    let l = d.ell() as i64;
    let (k1, k2) = (f.pow(kappa, l + 1), f.pow(kappa, l + 2));
    let cube: Vec<Elem> = f.elements().map(|x| f.pow(x, 3)).collect();
    let mut sols = Vec::new();
    for a in f.elements() {
        for b in f.elements() {
            for c in f.elements() {
                if f.mul(kappa, a) == cube[a.index()] && f.mul(k1, b) == cube[b.index()] && f.mul(k2, c) == cube[c.index()]
                {
                    sols.push(vec![a.0, b.0, c.0]);
                }
            }
        }
    }
    Ok(SolutionCountReport::new(SystemId::Eq8, d.q(), TorusParam::Kappa(kappa), sols, 27))
}

pub fn sweep_eq8(q: u32) -> Result<Vec<SolutionCountReport>, BoundsError> {
    let d = ReeDomain::new(q)?;
    let ks: Vec<Elem> = d.field().nonzero().collect();
    ks.par_iter().map(|&k| count_eq8_in(&d, k)).collect()
}

/// One row of the `y_κ·h⁻¹` ↔ eq9/eq8 correspondence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KappaCorrespondence {
    pub kappa: Elem,
    pub fix_count: usize,
    pub solutions: usize,
    pub holds: bool,
}

/// Checks `fix(y_κ·h⁻¹) = 1 + #solutions` for every κ: eq9 on the Suzuki
/// domain, eq8 on the Ree domain. The extra fixed point is ∞.
pub fn kappa_correspondence(family: Family, q: u32) -> Result<Vec<KappaCorrespondence>, BoundsError> {
    let domain = match family {
        Family::Sz | Family::Ree => build_domain(family, q)?,
        other => return Err(BoundsError::InvalidParameter(format!("no κ system for {other}"))),
    };
    let h_inv = domain.field_automorphism_h()?.inverse();
    let torus = domain.torus()?;
    torus
        .par_iter()
        .map(|(param, y)| {
            let TorusParam::Kappa(kappa) = *param else { unreachable!() };
            let solutions = match &domain {
                ActionDomain::Suzuki(d) => count_eq9_in(d, kappa)?.count,
                ActionDomain::Ree(d) => count_eq8_in(d, kappa)?.count,
                _ => unreachable!(),
            };
            let fix_count = y.then(&h_inv).fix_count();
            Ok(KappaCorrespondence { kappa, fix_count, solutions, holds: fix_count == 1 + solutions })
        })
        .collect()
}

/// How the reduced distance was justified.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Justification {
    /// `torus` when the pair stabilizer comes from the closed-form torus,
    /// `materialized` when read off the enumerated group.
    pub stabilizer_source: String,
    pub coset_size: usize,
    /// Every `y·h⁻¹` fixes both distinguished points, so the coset maximum
    /// is at least 2 and any `g·h⁻¹` with two fixed points is conjugate into it.
    pub distinguished_pair_fixed: bool,
    pub min_fix: usize,
    /// The shortcut did not apply and brute force was used instead.
    pub fell_back_to_brute: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReducedDistance {
    pub distance: usize,
    pub max_fix: usize,
    /// Torus parameter of the first coset element attaining `max_fix`.
    pub witness_param: Option<TorusParam>,
    /// The group element `y` with `d(h, y) = distance`.
    pub witness: Permutation,
    pub justification: Justification,
}

/// `n − max_{y ∈ G₀₁} fix(y·h⁻¹)`, the distance from `h` to `G` when `G` is
/// 2-transitive and `h` normalizes `G` and fixes points 0 and 1.
///
/// `stabilizer` is `G₀₁` paired with optional torus parameters. If the
/// justification fails, `fallback` is searched by brute force.
pub fn distance_reduced(
    stabilizer: &[(Option<TorusParam>, Permutation)],
    h: &Permutation,
    stabilizer_source: &str,
    fallback: Option<&GroupHandle>,
) -> Result<ReducedDistance, BoundsError> {
    let n = h.degree();
    let h_inv = h.inverse();
    let fixes: Vec<usize> = stabilizer.par_iter().map(|(_, y)| y.then(&h_inv).fix_count()).collect();
    let (best, &max_fix) = fixes
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0)))
        .ok_or_else(|| BoundsError::InvalidParameter("empty stabilizer".into()))?;
    let min_fix = *fixes.iter().min().expect("nonempty");
    let pair_fixed = h.apply(0) == 0
        && h.apply(1) == 1
        && stabilizer.iter().all(|(_, y)| y.apply(0) == 0 && y.apply(1) == 1);
    let mut justification = Justification {
        stabilizer_source: stabilizer_source.into(),
        coset_size: stabilizer.len(),
        distinguished_pair_fixed: pair_fixed,
        min_fix,
        fell_back_to_brute: false,
    };
    if !pair_fixed || max_fix < 2 {
        let g = fallback.ok_or_else(|| {
            BoundsError::InvalidParameter("reduced method not justified and no group for brute force".into())
        })?;
        let d = distance_to_group(h, g, DistanceMode::Brute)?;
        justification.fell_back_to_brute = true;
        return Ok(ReducedDistance {
            distance: d.distance,
            max_fix: n - d.distance,
            witness_param: None,
            witness: d.witness,
            justification,
        });
    }
    Ok(ReducedDistance {
        distance: n - max_fix,
        max_fix,
        witness_param: stabilizer[best].0,
        witness: stabilizer[best].1.clone(),
        justification,
    })
}

/// The reduced distance from `h` to the full group of the domain's family,
/// using the closed-form torus as the pair stabilizer.
pub fn distance_reduced_torus(domain: &ActionDomain) -> Result<ReducedDistance, BoundsError> {
    let h = domain.field_automorphism_h()?;
    let stab: Vec<_> = domain.torus()?.into_iter().map(|(p, y)| (Some(p), y)).collect();
    distance_reduced(&stab, &h, "torus", None)
}

/// The reduced distance for a materialized group, using its own pair stabilizer.
pub fn distance_reduced_group(group: &GroupHandle, h: &Permutation) -> Result<ReducedDistance, BoundsError> {
    let stab: Vec<_> = match group.pair_stabilizer() {
        Some(s) => s.iter().cloned().map(|y| (None, y)).collect(),
        None => group.pair_stabilizer_from_elements()?.into_iter().map(|y| (None, y)).collect(),
    };
    distance_reduced(&stab, h, "materialized", Some(group))
}

/// Lower and upper bounds for one family, as claimed and as computed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub family: Family,
    pub q: u32,
    pub degree: usize,
    /// `d(h, G)` by the reduced method (for psu3, `d(h, PGU(3,q))`, which is
    /// the route the lower bound takes).
    pub lower: usize,
    pub claimed_lower: u64,
    /// Cited upper bound: `n − t` for t-transitive groups, sharpened where
    /// equality is known to be unattainable.
    pub upper: u64,
    pub upper_source: String,
    pub cr_exact: Option<usize>,
    pub brute_distance: Option<usize>,
    /// psu3 only: `d(h, PSU(3,q))`, new data rather than a check.
    pub psu_distance: Option<usize>,
    pub witness: Permutation,
    pub witness_param: Option<TorusParam>,
    pub justification: Justification,
    pub checks: Vec<Check>,
}

impl TheoremReport {
    pub fn passes(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// The claimed `(lower, upper)` for a family, or `None` if no theorem covers it.
pub fn claimed_bounds(family: Family, q: u32) -> Option<(u64, u64, &'static str)> {
    let (p, _) = crate::field::prime_power(q)?;
    let q = q as u64;
    match family {
        Family::Pgu3 | Family::Psu3 => Some((q.pow(3) - p as u64, q.pow(3) - gcd(2, q), "2-transitive bound, unattainable for q even")),
        Family::Sz => Some((q * q - 4, q * q - 2, "2-transitive bound, unattainable")),
        Family::Ree => Some((q.pow(3) - 27, q.pow(3) - 1, "2-transitive bound")),
        Family::Pgl2 | Family::Psl2 => None,
    }
}

/// Options for [`theorem_report`].
#[derive(Debug, Clone, Copy)]
pub struct TheoremOptions {
    /// Cross-check against brute force when `|G|·n ≤ BRUTE_WORK_LIMIT`.
    pub brute: bool,
    /// Run the exact `Sym_n` sweep when `n ≤ DEFAULT_SWEEP_DEGREE`.
    pub exact: bool,
    pub budget: u64,
}

impl Default for TheoremOptions {
    fn default() -> Self {
        TheoremOptions { brute: true, exact: true, budget: 1 << 40 }
    }
}

pub fn theorem_report(family: Family, q: u32, opts: TheoremOptions) -> Result<TheoremReport, BoundsError> {
    let (claimed_lower, upper, upper_source) = claimed_bounds(family, q)
        .ok_or_else(|| BoundsError::InvalidParameter(format!("no bound theorem for {family}")))?;
    let full = family.domain_family();
    let domain = build_domain(full, q)?;
    let n = domain.degree();
    let reduced = distance_reduced_torus(&domain)?;
    let mut checks = vec![
        Check::eq("lower = claimed", claimed_lower, reduced.distance as u64),
        Check::new("lower <= upper", "true", reduced.distance as u64 <= upper, reduced.distance as u64 <= upper),
        Check::new(
            "reduced method justified",
            "true",
            reduced.justification.distinguished_pair_fixed,
            reduced.justification.distinguished_pair_fixed && !reduced.justification.fell_back_to_brute,
        ),
    ];

    let order = full.expected_order(q);
    let small = order.saturating_mul(n as u64) <= BRUTE_WORK_LIMIT && check_materialize(order, n).is_ok();
    let wants_group = (opts.brute && small) || (opts.exact && n <= DEFAULT_SWEEP_DEGREE) || family == Family::Psu3;
    let feasible = match full {
        Family::Ree => q == 3,
        _ => small,
    };
    let group = if wants_group && feasible { Some(build_group(full, q, true)?) } else { None };

    let mut brute_distance = None;
    let mut cr_exact = None;
    if let Some(g) = &group {
        let h = domain.field_automorphism_h()?;
        if opts.brute {
            let d = distance_to_group(&h, &g.group, DistanceMode::Brute)?;
            checks.push(Check::eq("brute = reduced", reduced.distance, d.distance));
            brute_distance = Some(d.distance);
        }
        if opts.exact && n <= DEFAULT_SWEEP_DEGREE {
            let target = if family == Family::Psu3 { build_group(Family::Psu3, q, true)?.group } else { g.group.clone() };
            let cr = covering_radius_exact(&target, opts.budget, DEFAULT_SWEEP_DEGREE)?;
            checks.push(Check::new(
                "lower <= cr_exact <= upper",
                format!("[{}, {upper}]", reduced.distance),
                cr.radius,
                reduced.distance <= cr.radius && cr.radius as u64 <= upper,
            ));
            cr_exact = Some(cr.radius);
        }
    }
    let mut psu_distance = None;
    if family == Family::Psu3 && small {
        let psu = build_group(Family::Psu3, q, true)?;
        let h = domain.field_automorphism_h()?;
        psu_distance = Some(distance_reduced_group(&psu.group, &h)?.distance);
    }
    Ok(TheoremReport {
        family,
        q,
        degree: n,
        lower: reduced.distance,
        claimed_lower,
        upper,
        upper_source: upper_source.into(),
        cr_exact,
        brute_distance,
        psu_distance,
        witness: reduced.witness,
        witness_param: reduced.witness_param,
        justification: reduced.justification,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eq3_at_q2_has_at_most_one_solution() {
        let reports = sweep_eq3(2).unwrap();
        assert_eq!(reports.len(), 3 * 3);
        assert!(reports.iter().all(|r| r.count <= 1 && r.within_bound));
    }

    #[test]
    fn eq3_rejects_bad_delta() {
        let ctx = FieldCtx::quadratic_of_order(3).unwrap();
        let bad = ctx.nonzero().find(|&x| ctx.norm(x).unwrap() != Elem::ONE).unwrap();
        assert!(count_eq3(3, Elem::ONE, bad).is_err());
        assert!(count_eq3(3, Elem::ZERO, Elem::ONE).is_err());
    }

    #[test]
    fn eq3_case_three_has_no_solutions() {
        // γ^((q²−1)/(p−1)) ∉ {±1} forces an empty solution set.
        let ctx = FieldCtx::quadratic_of_order(3).unwrap();
        let minus_one = ctx.neg(Elem::ONE);
        for gamma in ctx.nonzero() {
            let e = ctx.pow(gamma, 8 / 2);
            if e != Elem::ONE && e != minus_one {
                for &delta in &ctx.norm_one().unwrap() {
                    assert_eq!(count_eq3(3, gamma, delta).unwrap().count, 0);
                }
            }
        }
    }

    #[test]
    fn eq9_at_kappa_one() {
        let r = count_eq9(8, Elem::ONE).unwrap();
        assert_eq!(r.count, 4);
        assert_eq!(r.matches_closed_form, Some(true));
        let mut s = r.solutions.unwrap();
        s.sort();
        assert_eq!(s, vec![vec![0, 0, 0], vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 1]]);
    }

    #[test]
    fn kappa_correspondence_at_small_q() {
        assert!(kappa_correspondence(Family::Sz, 8).unwrap().iter().all(|r| r.holds && r.fix_count == 5));
        let ree = kappa_correspondence(Family::Ree, 3).unwrap();
        assert_eq!(ree.len(), 2);
        assert!(ree.iter().all(|r| r.holds));
        assert!(kappa_correspondence(Family::Pgl2, 3).is_err());
    }

    #[test]
    fn eq8_at_q3_is_everything() {
        let r = count_eq8(3, Elem::ONE).unwrap();
        assert_eq!(r.count, 27);
        assert!(count_eq8(3, Elem::ZERO).is_err());
    }

    #[test]
    fn reduced_distance_small_cases() {
        let d = build_domain(Family::Pgu3, 2).unwrap();
        assert_eq!(distance_reduced_torus(&d).unwrap().distance, 6);
        let d = build_domain(Family::Sz, 8).unwrap();
        let r = distance_reduced_torus(&d).unwrap();
        assert_eq!(r.distance, 60);
        assert_eq!(r.max_fix, 5);
        assert_eq!(r.justification.coset_size, 7);
    }

    #[test]
    fn unjustified_reduction_without_group_errors() {
        // A "stabilizer" that moves point 0 cannot justify the shortcut.
        let y = Permutation::from_images(vec![1, 0, 2]).unwrap();
        let h = Permutation::identity(3);
        assert!(distance_reduced(&[(None, y)], &h, "test", None).is_err());
    }

    #[test]
    fn theorem_for_pgu3_q2() {
        let r = theorem_report(Family::Pgu3, 2, TheoremOptions::default()).unwrap();
        assert_eq!((r.lower, r.upper, r.cr_exact), (6, 6, Some(6)));
        assert!(r.passes(), "{:?}", r.checks);
    }
}
