use proptest::prelude::*;
use rankone::actions::{build_domain_with_modulus, build_group, Family};
use rankone::bounds::distance_reduced_torus;
use rankone::field::{is_irreducible, Elem, FieldCtx};
use rankone::geometry::TensorSpace;
use rankone::perm::{distance_to_group, DistanceMode, Permutation};

const ORDERS: [u32; 8] = [2, 3, 4, 5, 7, 8, 9, 27];

fn arb_perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n as u32).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

/// Monic irreducibles of degree `deg` over GF(p), constant term first.
fn irreducibles(p: u32, deg: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for k in 0..p.pow(deg as u32) {
        let mut c: Vec<u32> = (0..deg).map(|i| (k / p.pow(i as u32)) % p).collect();
        c.push(1);
        if is_irreducible(&c, p) {
            out.push(c);
        }
    }
    out
}

proptest! {
    #[test]
    fn field_axioms(qi in 0usize..ORDERS.len(), a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let f = FieldCtx::of_order(ORDERS[qi]).unwrap();
        let q = f.order();
        let (a, b, c) = (Elem(a % q), Elem(b % q), Elem(c % q));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), Elem::ZERO);
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), Elem::ONE);
            prop_assert_eq!(f.pow(a, q as i64 - 1), Elem::ONE);
        }
        // x ↦ x^p is a ring homomorphism
        prop_assert_eq!(f.frobenius(f.add(a, b), 1), f.add(f.frobenius(a, 1), f.frobenius(b, 1)));
        prop_assert_eq!(f.frobenius(f.mul(a, b), 1), f.mul(f.frobenius(a, 1), f.frobenius(b, 1)));
    }

    #[test]
    fn graphs_round_trip_at_q7(pi in arb_perm(8)) {
        let space = TensorSpace::pg3(7).unwrap();
        let o = space.graph_of(&pi).unwrap();
        prop_assert_eq!(o.len(), 8);
        prop_assert_eq!(space.ovoid_to_permutation(&o).unwrap(), pi);
    }

    #[test]
    fn bridge_identity_at_q7(f in arb_perm(8), g in arb_perm(8)) {
        let space = TensorSpace::pg3(7).unwrap();
        prop_assert_eq!(space.graph_intersection(&f, &g).unwrap(), f.then(&g.inverse()).fix_count());
    }

    #[test]
    fn unitary_bridge_at_q2(f in arb_perm(9), g in arb_perm(9)) {
        let space = TensorSpace::pg8(2).unwrap();
        prop_assert_eq!(space.graph_intersection(&f, &g).unwrap(), f.then(&g.inverse()).fix_count());
    }
}

#[test]
fn reduced_distance_does_not_depend_on_the_modulus() {
    // GF(16) for the Hermitian curve at q = 4, GF(8) for Sz(8)
    for m in irreducibles(2, 4) {
        let d = build_domain_with_modulus(Family::Pgu3, 4, Some(m.clone())).unwrap();
        assert_eq!(distance_reduced_torus(&d).unwrap().distance, 62, "modulus {m:?}");
    }
    for m in irreducibles(2, 3) {
        let d = build_domain_with_modulus(Family::Sz, 8, Some(m.clone())).unwrap();
        assert_eq!(distance_reduced_torus(&d).unwrap().distance, 60, "modulus {m:?}");
    }
}

#[test]
fn reducible_modulus_is_rejected() {
    assert!(build_domain_with_modulus(Family::Pgl2, 8, Some(vec![1, 1, 1, 1])).is_err());
    assert!(build_domain_with_modulus(Family::Pgu3, 2, Some(vec![1, 1, 1])).is_ok());
}

#[test]
fn streamed_and_materialized_distances_agree() {
    let g = build_group(Family::Pgu3, 3, true).unwrap();
    let streamed = build_group(Family::Pgu3, 3, false).unwrap();
    let h = g.domain.field_automorphism_h().unwrap();
    let a = distance_to_group(&h, &g.group, DistanceMode::Brute).unwrap();
    let b = distance_to_group(&h, &streamed.group, DistanceMode::Stream).unwrap();
    assert_eq!(a.distance, b.distance);
    assert_eq!(a.distance, 24);
}
