use rankone::actions::{automorphism_index, build_group, build_group_with, Family, GeneratorFile, REE3_GENERATORS};
use rankone::field::gcd;

#[test]
fn line_groups_match_order_formulas() {
    for q in [2u32, 3, 4, 5, 7, 8, 9] {
        for fam in [Family::Pgl2, Family::Psl2] {
            let g = build_group(fam, q, true).unwrap();
            assert_eq!(g.group.order(), fam.expected_order(q), "{fam} q={q}");
            assert!(g.certificate.passes());
        }
        let pgl = build_group(Family::Pgl2, q, true).unwrap();
        assert_eq!(pgl.certificate.three_transitive, Some(true));
    }
}

#[test]
fn unitary_groups_and_psu_index() {
    for q in [2u32, 3, 4, 5] {
        let pgu = build_group(Family::Pgu3, q, true).unwrap();
        let psu = build_group(Family::Psu3, q, true).unwrap();
        assert_eq!(pgu.group.order(), (q as u64).pow(3) * ((q as u64).pow(3) + 1) * ((q as u64).pow(2) - 1));
        assert_eq!(pgu.group.order() / psu.group.order(), gcd(3, q as u64 + 1));
        let all = pgu.group.elements().unwrap();
        assert!(psu.group.elements().unwrap().iter().all(|e| all.contains(e)));
    }
}

#[test]
fn pgu5_by_orbit_stabilizer() {
    let pgu = build_group(Family::Pgu3, 5, false).unwrap();
    assert_eq!(pgu.certificate.order, 126 * 125 * 24);
    assert_eq!(pgu.certificate.order_method, "orbit-stabilizer");
}

#[test]
fn h_has_the_expected_order_modulo_the_group() {
    for (fam, q, index) in [(Family::Pgu3, 2u32, 2u64), (Family::Pgu3, 3, 2), (Family::Pgu3, 4, 4), (Family::Sz, 8, 3)] {
        let g = build_group(fam, q, true).unwrap();
        let h = g.domain.field_automorphism_h().unwrap();
        assert_eq!(automorphism_index(&g.group, &h).unwrap(), index, "{fam} q={q}");
    }
}

#[test]
fn suzuki_groups() {
    for (q, order) in [(2u32, 20u64), (8, 29120)] {
        let g = build_group(Family::Sz, q, true).unwrap();
        assert_eq!(g.group.order(), order);
        assert!(g.certificate.two_transitive);
    }
    let sz32 = build_group(Family::Sz, 32, false).unwrap();
    assert_eq!(sz32.certificate.order, Family::Sz.expected_order(32));
}

#[test]
fn ree3_from_the_shipped_generators() {
    let g = build_group(Family::Ree, 3, true).unwrap();
    assert_eq!(g.group.order(), 1512);
    assert!(g.certificate.two_transitive);
    assert_eq!(g.group.pair_stabilizer().unwrap().len(), 2);

    let file = GeneratorFile::parse(REE3_GENERATORS).unwrap();
    let gens = file.permutations().unwrap().into_iter().map(|(_, p)| p).collect();
    let again = build_group_with(Family::Ree, 3, true, Some(gens)).unwrap();
    assert_eq!(again.group.order(), 1512);
}

#[test]
fn wrong_generators_are_caught() {
    let file = GeneratorFile::parse(REE3_GENERATORS).unwrap();
    let gens: Vec<_> = file.permutations().unwrap().into_iter().map(|(_, p)| p).take(3).collect();
    assert!(build_group_with(Family::Ree, 3, true, Some(gens)).is_err());
}
