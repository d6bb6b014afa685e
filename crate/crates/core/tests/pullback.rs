use jmodular::dessin::Dessin;
use jmodular::fibers::{config_valid, FiberAssignment, KodairaType};
use jmodular::pullback::{
    check_profile, induced_config, is_induced, preimages, pullback_group, ProfilePoint, RamificationProfile,
};

use KodairaType::*;

fn profile(deg: u32, pts: &[(&str, &[u32])]) -> RamificationProfile {
    RamificationProfile {
        deg,
        points: pts
            .iter()
            .map(|(r, a)| ProfilePoint {
                reference: r.to_string(),
                partition: a.to_vec(),
            })
            .collect(),
        genus: None,
    }
}

fn gamma2() -> Dessin {
    Dessin::from_cycles(6, &[vec![1, 4], vec![2, 6], vec![3, 5]], &[vec![1, 2, 3], vec![4, 5, 6]]).unwrap()
}

/// Index 2, two elliptic points of order 3 and one cusp of width 2.
fn two_a2() -> Dessin {
    Dessin::from_cycles(2, &[vec![1, 2]], &[]).unwrap()
}

fn sample_profiles() -> Vec<(Dessin, RamificationProfile)> {
    vec![
        (Dessin::trivial(), RamificationProfile::identity()),
        (Dessin::trivial(), profile(2, &[("cusp:0", &[2]), ("other:0", &[2])])),
        (Dessin::trivial(), profile(2, &[("a2:0", &[2]), ("b2:0", &[2])])),
        (Dessin::trivial(), profile(3, &[("a2:0", &[3]), ("cusp:0", &[3])])),
        (Dessin::trivial(), profile(3, &[("a2:0", &[3]), ("b2:0", &[2, 1]), ("cusp:0", &[2, 1])])),
        (gamma2(), profile(2, &[("cusp:0", &[2]), ("cusp:1", &[2])])),
        (gamma2(), profile(3, &[("cusp:0", &[3]), ("cusp:2", &[3])])),
        (two_a2(), profile(2, &[("a2:1", &[2]), ("cusp:0", &[2])])),
    ]
}

#[test]
fn profiles_are_genus_zero() {
    for (d, p) in sample_profiles() {
        assert_eq!(check_profile(&p, &d).unwrap(), 0, "{p:?}");
    }
}

#[test]
fn twist_completions_count() {
    // Over a genus-0 base the valid twist patterns on the k' points with a
    // nontrivial class number exactly 2^(k'-1).
    for (d, p) in sample_profiles() {
        let base = induced_config(&d, &p, &[]).unwrap();
        let singular: Vec<String> = base
            .fibers
            .iter()
            .filter(|f| f.kodaira.class() != jmodular::fibers::LocalClass::Trivial)
            .map(|f| f.point.label.clone())
            .collect();
        let k = singular.len();
        let mut valid = 0;
        for mask in 0u32..(1 << k) {
            let twists: Vec<String> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| singular[i].clone()).collect();
            let c = induced_config(&d, &p, &twists).unwrap();
            let c = FiberAssignment::new(
                c.fibers.into_iter().filter(|f| f.kodaira.class() != jmodular::fibers::LocalClass::Trivial).collect(),
            );
            if config_valid(&c).unwrap() {
                valid += 1;
            }
        }
        assert_eq!(valid, 1 << (k - 1), "{p:?}");
    }
}

#[test]
fn pole_orders_multiply() {
    for (d, p) in sample_profiles() {
        let pre = preimages(&d, &p, &jmodular::fibers::minimal_config(&d).unwrap()).unwrap();
        let poles: u32 = pre.iter().map(|q| q.untwisted.j_pole()).sum();
        assert_eq!(poles as usize, p.deg as usize * d.n());
    }
}

#[test]
fn odd_twist_count_is_not_induced() {
    let d = gamma2();
    let up = FiberAssignment::on_dessin(&d, &[IStar(2), I(2), I(2)], 0).unwrap();
    let p = profile(2, &[("cusp:0", &[2]), ("cusp:1", &[2])]);
    let cb = induced_config(&d, &p, &[]).unwrap();
    let check = is_induced(&cb, &d, &p, &up).unwrap();
    assert!(check.induced);
    let cb = induced_config(&d, &p, &["cusp:2/0".to_string()]).unwrap();
    let check = is_induced(&cb, &d, &p, &up).unwrap();
    assert!(!check.induced && !check.parity_even);
}

#[test]
fn index_two_section() {
    let d = two_a2();
    let up = FiberAssignment::on_dessin(&d, &[IVStar, II, I(2)], 0).unwrap();
    assert!(config_valid(&up).unwrap());
    let id = pullback_group(&d, &up, &RamificationProfile::identity(), 256).unwrap();
    assert_eq!(id.index, 1);
    assert!(id.upstream_contains_minus_one && id.pullback_contains_minus_one);

    let p = profile(2, &[("a2:1", &[2]), ("cusp:0", &[2])]);
    let g = pullback_group(&d, &up, &p, 256).unwrap();
    assert_eq!(g.index, 2);
    assert!(!g.pullback_contains_minus_one);
    assert_eq!(g.character_branch_points, vec!["a2:1".to_string(), "cusp:0".to_string()]);
    assert!(g.ramified_exactly_two);
    assert_eq!(g.deg_j, 4);
}

#[test]
fn multiplicative_pullback_of_level_two() {
    let d = gamma2();
    let up = FiberAssignment::on_dessin(&d, &[IStar(2), I(2), I(2)], 0).unwrap();
    let p = profile(2, &[("cusp:0", &[2]), ("cusp:1", &[2])]);
    let g = pullback_group(&d, &up, &p, 256).unwrap();
    assert_eq!(g.index, 1);
    assert_eq!(g.upstream_contains_minus_one, g.pullback_contains_minus_one);
    let cb = induced_config(&d, &p, &[]).unwrap();
    assert!(cb.types().iter().all(|t| matches!(t, I(_))));
}

#[test]
fn bad_profiles_are_rejected() {
    let d = Dessin::trivial();
    assert!(check_profile(&profile(2, &[("cusp:0", &[2]), ("cusp:0", &[2])]), &d).is_err());
    assert!(check_profile(&profile(2, &[("a2:0", &[1])]), &d).is_err());
    assert!(RamificationProfile::from_json(r#"{"deg":2,"points":[{"ref":"cusp:0","partition":[2]}],"genus":0}"#)
        .and_then(|p| check_profile(&p, &d))
        .is_err());
    let p = RamificationProfile::from_json(
        r#"{"deg":2,"points":[{"ref":"cusp:0","partition":[2]},{"ref":"other:0","partition":[2]}],"genus":0}"#,
    )
    .unwrap();
    assert_eq!(check_profile(&p, &d).unwrap(), 0);
    assert!(induced_config(&d, &p, &["cusp:0/5".to_string()]).is_err());
}

#[test]
fn cross_checks_hold_on_small_dessins() {
    use jmodular::enumerate::{enumerate_dessins, Filter};
    use jmodular::fibers::enumerate_configs;
    let mut index_two = 0;
    for n in 1..=8 {
        for d in enumerate_dessins(n, &Filter::genus0()) {
            let c = d.census();
            for (up, _) in enumerate_configs(&d, 0, None).unwrap() {
                let g = pullback_group(&d, &up, &RamificationProfile::identity(), 512).unwrap();
                assert_eq!(g.index, 1);
                // Double covers branched over two cusps, or over an elliptic
                // point of order 3 and a cusp.
                let mut covers = Vec::new();
                if c.cusps() >= 2 {
                    covers.push(profile(2, &[("cusp:0", &[2]), ("cusp:1", &[2])]));
                }
                if c.a2 >= 1 {
                    covers.push(profile(2, &[("a2:0", &[2]), ("cusp:0", &[2])]));
                }
                for p in covers {
                    let g = pullback_group(&d, &up, &p, 512).unwrap();
                    assert_eq!(g.pullback_contains_minus_one, g.index == 1 && g.upstream_contains_minus_one);
                    if g.index == 2 {
                        assert!(c.b2 == 0 && g.upstream_contains_minus_one);
                        index_two += 1;
                    }
                }
            }
        }
    }
    assert!(index_two > 0);
}
