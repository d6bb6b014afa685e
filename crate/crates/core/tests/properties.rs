use proptest::prelude::*;

use jmodular::arith::PslWord;
use jmodular::dessin::Dessin;
use jmodular::enumerate::{enumerate_dessins, Filter};
use jmodular::fibers::{config_valid, marked_points, verify_product, FiberAssignment};
use jmodular::subgroup::{boundary_product, boundary_words, generators, signature, PointedDessin};

fn genus0_upto(n: usize) -> Vec<Dessin> {
    (1..=n).flat_map(|k| enumerate_dessins(k, &Filter::genus0())).collect()
}

/// Random transitive pair on `n` points, built from random cycle data.
fn random_dessin() -> impl Strategy<Value = Dessin> {
    (1usize..=9, any::<u64>()).prop_filter_map("disconnected", |(n, seed)| {
        use rand::seq::SliceRandom;
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut pts: Vec<usize> = (0..n).collect();
        pts.shuffle(&mut rng);
        let mut s3 = (0..n).collect::<Vec<_>>();
        let triples = rng.gen_range(0..=n / 3);
        for c in pts.chunks(3).take(triples) {
            if c.len() == 3 {
                s3[c[0]] = c[1];
                s3[c[1]] = c[2];
                s3[c[2]] = c[0];
            }
        }
        pts.shuffle(&mut rng);
        let mut s2 = (0..n).collect::<Vec<_>>();
        let pairs = rng.gen_range(0..=n / 2);
        for c in pts.chunks(2).take(pairs) {
            if c.len() == 2 {
                s2[c[0]] = c[1];
                s2[c[1]] = c[0];
            }
        }
        Dessin::new(s2, s3).ok()
    })
}

proptest! {
    #[test]
    fn canonical_key_is_a_class_invariant(d in random_dessin(), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut perm: Vec<usize> = (0..d.n()).collect();
        perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        let e = d.relabel(&perm);
        prop_assert_eq!(d.canonical_key(), e.canonical_key());
        prop_assert!(d.is_isomorphic(&e));
        prop_assert_eq!(d.automorphism_count(), e.automorphism_count());
    }

    #[test]
    fn census_identities(d in random_dessin()) {
        let c = d.census();
        prop_assert_eq!(c.a2 + 3 * c.a6, d.n());
        prop_assert_eq!(c.b2 + 2 * c.b4, d.n());
        prop_assert_eq!(c.cusp_widths.iter().sum::<usize>(), d.n());
        prop_assert_eq!(2 + d.n(), c.vertices() + 2 * c.genus);
        prop_assert_eq!(c.et(), 2 * d.n() + 2 * c.cdf());
        if c.genus == 0 {
            prop_assert_eq!(c.et() % 12, 0);
        }
    }

    #[test]
    fn generator_signature(d in random_dessin()) {
        let c = d.census();
        let pd = PointedDessin::new(d.clone(), 0).unwrap();
        let gens = generators(&pd);
        prop_assert_eq!(signature(&gens), (c.b2, c.a2, 2 * c.genus + c.cusps() - 1));
        for g in &gens {
            prop_assert!(pd.contains_word(&g.word));
        }
    }
}

#[test]
fn boundary_loops_multiply_to_identity() {
    for d in genus0_upto(10) {
        for base in [0, d.n() - 1] {
            let pd = PointedDessin::new(d.clone(), base).unwrap();
            let words = boundary_words(&pd).unwrap();
            assert_eq!(words.len(), d.census().marked());
            assert_eq!(boundary_product(&words), PslWord::identity(), "{}", d.to_json());
            for w in &words {
                assert!(pd.contains_word(&w.word));
            }
        }
    }
}

#[test]
fn product_check_agrees_with_euler_count() {
    for d in genus0_upto(9) {
        let points = marked_points(&d);
        let k = points.len();
        if k > 8 {
            continue;
        }
        let pd = PointedDessin::new(d.clone(), 0).unwrap();
        for mask in 0u32..(1 << k) {
            for extra in 0..2 {
                let types: Vec<_> = points
                    .iter()
                    .enumerate()
                    .map(|(i, p)| p.kind.class().pick(mask >> i & 1 == 1))
                    .collect();
                let c = FiberAssignment::on_dessin(&d, &types, extra).unwrap();
                assert_eq!(
                    config_valid(&c).unwrap(),
                    verify_product(&pd, &c).unwrap(),
                    "{} {mask:b} +{extra}",
                    d.to_json()
                );
            }
        }
    }
}
