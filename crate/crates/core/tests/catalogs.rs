use std::path::PathBuf;

use jmodular::enumerate::{
    catalog_saturated, classify_surfaces, enumerate_classes, enumerate_dessins, Filter, SurfaceTarget,
};
use jmodular::fibers::{verify_product, KodairaType};
use jmodular::subgroup::PointedDessin;

fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

/// Compares against a stored file; `JMODULAR_BLESS=1` rewrites it.
fn check_golden(name: &str, actual: &str) {
    let path = golden(name);
    if std::env::var_os("JMODULAR_BLESS").is_some() {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(&path, actual).unwrap();
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(expected, actual, "golden file {name}");
}

#[test]
fn saturated_catalogs() {
    for et in [12, 24] {
        let list = catalog_saturated(et).unwrap();
        let text: String = list.iter().map(|d| format!("{}\n", d.to_json())).collect();
        check_golden(&format!("saturated_et{et}.jsonl"), &text);
        assert!(list.iter().all(|d| d.et() == et && d.genus() == 0));
    }
    let level_two = jmodular::dessin::Dessin::from_cycles(
        6,
        &[vec![1, 4], vec![2, 6], vec![3, 5]],
        &[vec![1, 2, 3], vec![4, 5, 6]],
    )
    .unwrap();
    assert!(catalog_saturated(12).unwrap().iter().any(|d| d.is_isomorphic(&level_two)));
    let tf12 = enumerate_dessins(
        12,
        &Filter {
            genus: Some(0),
            torsion_free: true,
            ..Filter::default()
        },
    );
    let sat24 = catalog_saturated(24).unwrap();
    assert!(tf12.iter().all(|d| sat24.iter().any(|e| e.is_isomorphic(d))));
}

#[test]
fn rational_witnesses() {
    for (c, w) in classify_surfaces(SurfaceTarget::Rational).unwrap() {
        assert_eq!(24, c.dessin.et() + 12 * w.report.twist_count);
        assert_eq!(w.report.euler_total, 12);
    }
}

#[test]
fn k3_witnesses() {
    let list = classify_surfaces(SurfaceTarget::K3).unwrap();
    let mut semistable = 0;
    for (c, w) in &list {
        assert_eq!(48, c.dessin.et() + 12 * w.report.twist_count);
        assert_eq!(w.report.euler_total, 24);
        let pd = PointedDessin::new(c.dessin.clone(), 0).unwrap();
        assert!(verify_product(&pd, &w.assignment).unwrap());
        let census = c.dessin.census();
        if c.dessin.n() == 24 && census.is_torsion_free() && census.cusps() == 6 {
            let types = w.assignment.types();
            assert!(types.iter().all(|t| matches!(t, KodairaType::I(_))));
            assert_eq!(types.iter().map(|t| t.j_pole()).sum::<u32>(), 24);
            semistable += 1;
        }
    }
    assert!(semistable > 0);
    // Every rational group appears again with two extra twists.
    assert!(list.len() > classify_surfaces(SurfaceTarget::Rational).unwrap().len());
}

#[test]
fn enumeration_is_deterministic_across_thread_counts() {
    let run = |threads: usize| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| {
                (1..=12)
                    .flat_map(|n| enumerate_classes(n, &Filter::default()))
                    .map(|c| c.key)
                    .collect::<Vec<_>>()
            })
    };
    assert_eq!(run(1), run(4));
}

#[test]
fn known_class_counts() {
    // Conjugacy classes of subgroups of PSL(2,Z) by index.
    let counts: Vec<usize> = (1..=12)
        .map(|n| enumerate_classes(n, &Filter::default()).len())
        .collect();
    assert_eq!(counts, vec![1, 1, 2, 2, 1, 8, 6, 7, 14, 27, 26, 80]);
    // Subgroups (not up to conjugacy) of index 1..6.
    let subgroups: Vec<usize> = (1..=6)
        .map(|n| enumerate_classes(n, &Filter::default()).iter().map(|c| c.pointed_count()).sum())
        .collect();
    assert_eq!(subgroups, vec![1, 1, 4, 8, 5, 22]);
}
