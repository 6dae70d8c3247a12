use std::path::{Path, PathBuf};

use rankone::actions::{
    build_domain, build_domain_with_modulus, build_group_on, load_generator_file, ActionDomain, BuiltGroup, Family,
};
use rankone::bounds::{
    claimed_bounds, distance_reduced_group, distance_reduced_torus, eq3_correspondence, kappa_correspondence,
    sweep_eq3, sweep_eq8, sweep_eq9, theorem_report, ReducedDistance, TheoremOptions,
};
use rankone::field::{gcd, prime_power, Elem};
use rankone::perm::{
    check_materialize, covering_radius_exact, distance_to_group, DistanceMode, Permutation, DEFAULT_SWEEP_DEGREE,
    MAX_MATERIALIZED_ELEMENTS,
};
use rankone::report::Check;
use serde::Serialize;
use serde_json::Value;

use crate::args::{GlobalArgs, Lemma, Method};
use crate::report::{Failure, Outcome};

/// Streamed brute force is refused beyond this many point comparisons.
pub const STREAM_WORK_LIMIT: u64 = 1 << 32;

pub fn need_q(g: &GlobalArgs) -> Result<u32, Failure> {
    g.q.ok_or_else(|| Failure::usage("--q is required"))
}

pub fn need_family(g: &GlobalArgs) -> Result<Family, Failure> {
    g.family.map(Family::from).ok_or_else(|| Failure::usage("--family is required"))
}

pub fn no_modulus(g: &GlobalArgs, command: &str) -> Result<(), Failure> {
    match g.modulus {
        Some(_) => Err(Failure::usage(format!("--modulus is not used by {command}; it applies to build, distance and covering-radius"))),
        None => Ok(()),
    }
}

/// Memory policy plus the run's own `--max-elements` limit.
pub fn policy(g: &GlobalArgs, order: u64, degree: usize) -> Result<(), Failure> {
    check_materialize(order, degree)?;
    let limit = g.max_elements.unwrap_or(MAX_MATERIALIZED_ELEMENTS);
    if order > limit {
        return Err(Failure::infeasible(format!("materializing {order} elements exceeds the limit of {limit}")));
    }
    Ok(())
}

fn load_generators(path: &Path, family: Family, q: u32) -> Result<Vec<(String, Permutation)>, Failure> {
    let file = load_generator_file(path)?;
    if file.family != family.name() || file.q != q {
        return Err(Failure::usage(format!(
            "{} holds generators for {} q={}, not {family} q={q}",
            path.display(),
            file.family,
            file.q
        )));
    }
    Ok(file.permutations()?)
}

pub fn group_on(
    g: &GlobalArgs,
    domain: ActionDomain,
    family: Family,
    materialize: bool,
    generators: Option<&PathBuf>,
) -> Result<BuiltGroup, Failure> {
    let q = domain.q();
    if materialize {
        policy(g, family.expected_order(q), domain.degree())?;
    }
    let extra = match generators {
        Some(path) => Some(load_generators(path, family, q)?.into_iter().map(|(_, p)| p).collect()),
        None => None,
    };
    Ok(build_group_on(domain, family, materialize, extra)?)
}

/// Merges a serializable struct's fields into the results, moving its
/// `checks` (if any) into the ledger.
pub fn merge(out: &mut Outcome, value: impl Serialize) {
    let Value::Object(mut map) = serde_json::to_value(value).expect("serializable") else {
        panic!("merge expects a struct");
    };
    if let Some(checks) = map.remove("checks") {
        out.checks.extend(serde_json::from_value::<Vec<Check>>(checks).expect("check list"));
    }
    out.results.extend(map);
}

fn domain_csv(d: &ActionDomain) -> String {
    let n = d.degree();
    let width = (0..n).map(|i| d.coordinates(i).len()).max().unwrap_or(0);
    let mut out = String::from("index");
    for k in 0..width {
        out.push_str(&format!(",x{k}"));
    }
    out.push('\n');
    for i in 0..n {
        let c = d.coordinates(i);
        out.push_str(&i.to_string());
        if c.is_empty() {
            out.push_str(",inf");
            out.push_str(&",".repeat(width.saturating_sub(1)));
        } else {
            for x in c {
                out.push_str(&format!(",{x}"));
            }
        }
        out.push('\n');
    }
    out
}

#[derive(Serialize)]
struct NamedImages<'a> {
    name: &'a str,
    images: &'a [u32],
}

pub fn build(g: &GlobalArgs, materialize: bool, generators: Option<&PathBuf>) -> Result<Outcome, Failure> {
    let (family, q) = (need_family(g)?, need_q(g)?);
    let domain = build_domain_with_modulus(family, q, g.modulus.clone())?;
    let named = match generators {
        Some(path) => load_generators(path, family, q)?,
        None => domain.generators(family)?,
    };
    let field = domain.field().descriptor();
    let csv = domain_csv(&domain);
    eprintln!("building {family} q={q}");
    let built = group_on(g, domain, family, materialize, generators)?;
    let cert = &built.certificate;
    let n = cert.degree as u64;

    let mut out = Outcome { csv: Some(csv), ..Outcome::default() };
    out.checks.push(Check::eq("order = formula", cert.expected_order, cert.order));
    out.checks.push(Check::eq("pair orbit = n(n-1)", n * (n - 1), cert.pair_orbit));
    if let Some(t3) = cert.three_transitive {
        out.checks.push(Check::holds("3-transitive", t3));
    }
    if materialize && family.is_special() {
        let claimed = match family {
            Family::Psl2 => gcd(2, q as u64 - 1),
            _ => gcd(3, q as u64 + 1),
        };
        let full = family.domain_family().expected_order(q);
        out.checks.push(Check::eq("index in the full group", claimed, full / cert.order));
    }
    out.put("family", family);
    out.put("q", q);
    out.put("degree", cert.degree);
    out.put("field", field);
    out.put("certificate", cert);
    let gens: Vec<NamedImages> = named.iter().map(|(name, p)| NamedImages { name, images: p.images() }).collect();
    out.put("generators", gens);
    Ok(out)
}

#[derive(Serialize)]
struct BruteResult {
    distance: usize,
    mode: DistanceMode,
    elements: u64,
    witness: Permutation,
}

pub fn distance(
    g: &GlobalArgs,
    method: Method,
    materialize: bool,
    generators: Option<&PathBuf>,
) -> Result<Outcome, Failure> {
    let (family, q) = (need_family(g)?, need_q(g)?);
    if family.domain_family() == Family::Pgl2 {
        return Err(Failure::usage("h is defined on the pgu3, sz and ree domains only"));
    }
    let domain = build_domain_with_modulus(family, q, g.modulus.clone())?;
    let n = domain.degree();
    let h = domain.field_automorphism_h()?;
    let mut out = Outcome::default();
    out.put("family", family);
    out.put("q", q);
    out.put("degree", n);
    out.put("h_is_identity", h.is_identity());
    // The lemmas bound d(h, G) for the full groups; for PSU the value is new data.
    let claimed = claimed_bounds(family, q).filter(|_| family != Family::Psu3).map(|(lo, _, _)| lo);
    if let Some(c) = claimed {
        out.put("claimed", c);
    }

    let mut reduced: Option<ReducedDistance> = None;
    if matches!(method, Method::Reduced | Method::Both) {
        eprintln!("reduced distance for {family} q={q}");
        let r = if family.is_special() {
            let built = group_on(g, domain.clone(), family, true, None)?;
            distance_reduced_group(&built.group, &h)?
        } else {
            distance_reduced_torus(&domain)?
        };
        let j = &r.justification;
        out.checks.push(Check::holds(
            "reduced method justified",
            j.distinguished_pair_fixed && !j.fell_back_to_brute,
        ));
        if let Some(c) = claimed {
            out.checks.push(Check::eq("reduced = claimed", c, r.distance as u64));
        }
        out.put("reduced", &r);
        reduced = Some(r);
    }
    if matches!(method, Method::Brute | Method::Both) {
        let order = family.expected_order(q);
        if !materialize && order.saturating_mul(n as u64) > STREAM_WORK_LIMIT {
            return Err(Failure::infeasible(format!(
                "brute force over {order} elements of degree {n} exceeds the work limit; use --method reduced"
            )));
        }
        eprintln!("brute-force distance for {family} q={q} over {order} elements");
        let built = group_on(g, domain, family, materialize, generators)?;
        let mode = if built.group.is_materialized() { DistanceMode::Brute } else { DistanceMode::Stream };
        let d = distance_to_group(&h, &built.group, mode)?;
        if let Some(c) = claimed {
            out.checks.push(Check::eq("brute = claimed", c, d.distance as u64));
        }
        if let Some(r) = &reduced {
            out.checks.push(Check::eq("brute = reduced", r.distance, d.distance));
        }
        out.put("brute", BruteResult { distance: d.distance, mode, elements: built.group.order(), witness: d.witness });
    }
    Ok(out)
}

pub fn covering_radius(g: &GlobalArgs, budget: Option<u64>, generators: Option<&PathBuf>) -> Result<Outcome, Failure> {
    let (family, q) = (need_family(g)?, need_q(g)?);
    let domain = build_domain_with_modulus(family, q, g.modulus.clone())?;
    let n = domain.degree();
    if n > DEFAULT_SWEEP_DEGREE {
        return Err(Failure::infeasible(format!(
            "a sweep of Sym({n}) is beyond the exact bound of degree {DEFAULT_SWEEP_DEGREE}; use theorem for bounds"
        )));
    }
    eprintln!("sweeping Sym({n}) against {family} q={q}");
    let built = group_on(g, domain, family, true, generators)?;
    let cr = covering_radius_exact(&built.group, budget.unwrap_or(u64::MAX), DEFAULT_SWEEP_DEGREE)?;
    let mut out = Outcome::default();
    let transitivity = if family == Family::Pgl2 { 3 } else { 2 };
    out.checks.push(Check::new(
        format!("radius <= n - {transitivity}"),
        format!("<= {}", n - transitivity),
        cr.radius,
        cr.radius <= n - transitivity,
    ));
    let claimed = match family {
        Family::Psl2 => Some((q as u64 - gcd(2, q as u64), q as u64 - gcd(2, q as u64))),
        _ => claimed_bounds(family, q).map(|(lo, hi, _)| (lo, hi)),
    };
    if let Some((lo, hi)) = claimed {
        if lo == hi {
            out.checks.push(Check::eq("radius = claimed", lo, cr.radius as u64));
        } else {
            let r = cr.radius as u64;
            out.checks.push(Check::new("claimed lower <= radius <= upper", format!("[{lo}, {hi}]"), r, lo <= r && r <= hi));
        }
        out.put("claimed", claimed);
    }
    out.put("family", family);
    out.put("q", q);
    out.put("degree", n);
    out.put("method", "exact");
    merge(&mut out, &cr);
    Ok(out)
}

#[derive(Serialize)]
struct SystemSummary {
    lemma: Lemma,
    q: u32,
    params: usize,
    bound: usize,
    max_count: usize,
}

pub fn verify(g: &GlobalArgs, lemma: Lemma) -> Result<Outcome, Failure> {
    no_modulus(g, "verify")?;
    let q = need_q(g)?;
    let mut out = Outcome::default();
    match lemma {
        Lemma::SystemPsu => {
            let (p, _) = prime_power(q).ok_or_else(|| Failure::usage(format!("q = {q} is not a prime power")))?;
            eprintln!("eq3 sweep at q={q}");
            let reports = sweep_eq3(q)?;
            let corr = eq3_correspondence(q)?;
            let max_count = reports.iter().map(|r| r.count).max().unwrap_or(0);
            let expected_params = (q as usize * q as usize - 1) * (q as usize + 1);
            out.checks.push(Check::eq("(gamma, delta) pairs", expected_params, reports.len()));
            out.checks.push(Check::new("count <= p-1 for every pair", format!("<= {}", p - 1), max_count, max_count < p as usize));
            let broken = corr.iter().filter(|c| !c.holds).count();
            out.checks.push(Check::eq("fix(y h^-1) = 2 + solutions with a != 0", 0, broken));
            merge(&mut out, SystemSummary { lemma, q, params: reports.len(), bound: p as usize - 1, max_count });
            out.put("sub_reports", &reports);
            out.put("correspondence", &corr);
        }
        Lemma::SystemSz => {
            eprintln!("eq9 sweep at q={q}");
            let reports = sweep_eq9(q)?;
            let corr = kappa_correspondence(Family::Sz, q)?;
            let max_count = reports.iter().map(|r| r.count).max().unwrap_or(0);
            out.checks.push(Check::eq("kappa values", q as usize - 1, reports.len()));
            out.checks.push(Check::holds("count = 4 for every kappa", reports.iter().all(|r| r.count == 4)));
            out.checks.push(Check::holds(
                "solutions match the closed forms",
                reports.iter().all(|r| r.matches_closed_form == Some(true)),
            ));
            out.checks.push(Check::holds("fix(y h^-1) = 1 + count for every kappa", corr.iter().all(|c| c.holds)));
            merge(&mut out, SystemSummary { lemma, q, params: reports.len(), bound: 4, max_count });
            out.put("sub_reports", &reports);
            out.put("correspondence", &corr);
        }
        Lemma::Eq8 => {
            eprintln!("eq8 sweep at q={q}");
            let reports = sweep_eq8(q)?;
            let corr = kappa_correspondence(Family::Ree, q)?;
            let max_count = reports.iter().map(|r| r.count).max().unwrap_or(0);
            let at_one = reports.iter().find(|r| r.param == rankone::actions::TorusParam::Kappa(Elem::ONE));
            out.checks.push(Check::new("count <= 27 for every kappa", "<= 27", max_count, max_count <= 27));
            out.checks.push(Check::eq("count at kappa = 1", 27, at_one.map(|r| r.count).unwrap_or(0)));
            out.checks.push(Check::holds("fix(y h^-1) = 1 + count for every kappa", corr.iter().all(|c| c.holds)));
            let fix_one = corr.iter().find(|c| c.kappa == Elem::ONE).map(|c| c.fix_count).unwrap_or(0);
            out.checks.push(Check::eq("fix(y_1 h^-1)", 28, fix_one));
            if q == 3 {
                let domain = build_domain(Family::Ree, q)?;
                let h = domain.field_automorphism_h()?;
                out.checks.push(Check::holds("h is the identity at q = 3", h.is_identity()));
                let d = distance_reduced_torus(&domain)?.distance;
                out.checks.push(Check::eq("d(h, Ree(3)) = q^3 - 27", 0, d));
            }
            merge(&mut out, SystemSummary { lemma, q, params: reports.len(), bound: 27, max_count });
            out.put("sub_reports", &reports);
            out.put("correspondence", &corr);
        }
    }
    Ok(out)
}

pub fn theorem(g: &GlobalArgs, no_brute: bool, no_exact: bool) -> Result<Outcome, Failure> {
    no_modulus(g, "theorem")?;
    let (family, q) = (need_family(g)?, need_q(g)?);
    if claimed_bounds(family, q).is_none() {
        return Err(Failure::usage(format!("no bound theorem covers {family}; use covering-radius")));
    }
    family.validate_q(q)?;
    let order = family.domain_family().expected_order(q);
    let degree = family.degree(q) as usize;
    let mut opts = TheoremOptions { brute: !no_brute, exact: !no_exact, ..TheoremOptions::default() };
    // A lowered --max-elements turns the cross-checks off rather than failing.
    if policy(g, order, degree).is_err() {
        opts.brute = false;
        opts.exact = false;
    }
    eprintln!("theorem report for {family} q={q}");
    let report = theorem_report(family, q, opts)?;
    let mut out = Outcome::default();
    merge(&mut out, &report);
    Ok(out)
}
