use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rankone::actions::{build_group, Family, HermitianDomain};
use rankone::bounds::claimed_bounds;
use rankone::geometry::{covering_radius_geometric, minkowski_objects, span_and_perp, Ambient, TensorSpace};
use rankone::perm::{covering_radius_exact, Permutation, DEFAULT_SWEEP_DEGREE};
use rankone::report::Check;
use serde::Serialize;

use crate::args::GlobalArgs;
use crate::commands::{merge, need_q, no_modulus, policy};
use crate::report::{Failure, Outcome};

pub const MINKOWSKI_MAX_Q: u32 = 16;
pub const HERMITIAN_MAX_Q: u32 = 8;
const WORD_LENGTH: usize = 24;

fn proj_csv(points: &[Vec<u32>]) -> String {
    let width = points.first().map_or(0, |p| p.len());
    let mut out = String::from("index");
    for k in 0..width {
        out.push_str(&format!(",x{k}"));
    }
    out.push('\n');
    for (i, p) in points.iter().enumerate() {
        out.push_str(&i.to_string());
        for x in p {
            out.push_str(&format!(",{x}"));
        }
        out.push('\n');
    }
    out
}

#[derive(Serialize)]
struct MinkowskiSummary {
    q: u32,
    points: usize,
    lines: usize,
    circles: usize,
}

pub fn minkowski(g: &GlobalArgs) -> Result<Outcome, Failure> {
    no_modulus(g, "geometry")?;
    let q = need_q(g)?;
    if q > MINKOWSKI_MAX_Q {
        return Err(Failure::infeasible(format!("plane enumeration is limited to q <= {MINKOWSKI_MAX_Q}")));
    }
    eprintln!("Minkowski plane M({q})");
    let m = minkowski_objects(q)?;
    let mut out = Outcome { checks: m.verify()?, ..Outcome::default() };
    merge(&mut out, MinkowskiSummary { q, points: m.points.len(), lines: m.lines.len(), circles: m.circles.len() });
    let pts: Vec<Vec<u32>> = m.points.iter().map(|p| p.coords.iter().map(|e| e.0).collect()).collect();
    out.csv = Some(proj_csv(&pts));
    Ok(out)
}

#[derive(Serialize)]
struct OvoidRow {
    label: String,
    span_dim: usize,
    perp_dim: usize,
    perp_segre_points: usize,
    totally_isotropic: bool,
    non_degenerate: bool,
    equals_alternating: bool,
}

/// A group element as a seeded random word in the generators.
pub fn random_word(gens: &[Permutation], rng: &mut ChaCha8Rng, length: usize) -> Permutation {
    let mut w = Permutation::identity(gens[0].degree());
    for _ in 0..length {
        w = w.then(&gens[rng.gen_range(0..gens.len())]);
    }
    w
}

pub fn hermitian(g: &GlobalArgs, samples: usize) -> Result<Outcome, Failure> {
    no_modulus(g, "geometry")?;
    let q = need_q(g)?;
    if q > HERMITIAN_MAX_Q {
        return Err(Failure::infeasible(format!("PG(8,q^2) perp enumeration is limited to q <= {HERMITIAN_MAX_Q}")));
    }
    eprintln!("classical ovoids of U(2,2) at q={q}");
    let space = TensorSpace::pg8(q)?;
    let herm = HermitianDomain::new(q)?;
    let gens: Vec<Permutation> = herm.pgu_generators()?.into_iter().map(|(_, p)| p).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(g.seed);
    let mut elements = vec![("identity".to_string(), Permutation::identity(herm.degree()))];
    for k in 0..samples {
        elements.push((format!("word {k}"), random_word(&gens, &mut rng, WORD_LENGTH)));
    }
    let even = q % 2 == 0;
    let mut rows = Vec::new();
    for (label, f) in &elements {
        let o = space.graph_of(f)?;
        let sp = span_and_perp(&space, &o)?;
        rows.push(OvoidRow {
            label: label.clone(),
            span_dim: sp.span_dim,
            perp_dim: sp.perp_dim,
            perp_segre_points: sp.perp_segre_points,
            totally_isotropic: sp.totally_isotropic,
            non_degenerate: sp.non_degenerate,
            equals_alternating: sp.equals_alternating,
        });
    }
    let mut out = Outcome::default();
    out.checks.push(Check::holds("span is a 5-space", rows.iter().all(|r| r.span_dim == 5)));
    out.checks.push(Check::holds("perp is a plane", rows.iter().all(|r| r.perp_dim == 2)));
    out.checks.push(Check::holds("perp misses the Segre variety", rows.iter().all(|r| r.perp_segre_points == 0)));
    let parity = if even { "perp totally isotropic (q even)" } else { "perp non-degenerate (q odd)" };
    out.checks.push(Check::holds(
        parity,
        rows.iter().all(|r| if even { r.totally_isotropic } else { r.non_degenerate && !r.totally_isotropic }),
    ));
    out.checks.push(Check::holds("perp of graph(1) = <X(x)Y - Y(x)X>", rows[0].equals_alternating));
    out.put("q", q);
    out.put("ovoids", &rows);
    out.csv = Some(space.graph_of(&elements[0].1)?.to_csv());
    Ok(out)
}

pub fn cr(g: &GlobalArgs, ambient: Ambient) -> Result<Outcome, Failure> {
    no_modulus(g, "geometry")?;
    let q = need_q(g)?;
    let family = match ambient {
        Ambient::Pg3 => Family::Pgl2,
        Ambient::Pg8 => Family::Pgu3,
    };
    eprintln!("geometric covering radius in {ambient} at q={q}");
    let geo = covering_radius_geometric(q, ambient)?;
    let mut out = Outcome::default();
    out.checks.push(Check::eq("classical ovoids = |G|", family.expected_order(q), geo.classical_ovoids as u64));
    if let Some((lo, hi, _)) = claimed_bounds(family, q).filter(|(lo, hi, _)| lo == hi) {
        out.checks.push(Check::eq("geometric radius = claimed", lo.min(hi), geo.radius as u64));
    }
    if geo.degree <= DEFAULT_SWEEP_DEGREE {
        policy(g, family.expected_order(q), geo.degree)?;
        let group = build_group(family, q, true)?;
        let exact = covering_radius_exact(&group.group, u64::MAX, DEFAULT_SWEEP_DEGREE)?;
        out.checks.push(Check::eq("geometric radius = exact radius", exact.radius, geo.radius));
        out.put("exact_radius", exact.radius);
    }
    let space = TensorSpace::new(ambient, q)?;
    out.csv = Some(space.graph_unchecked(&geo.witness)?.to_csv());
    out.put("method", "geometric");
    merge(&mut out, &geo);
    Ok(out)
}
