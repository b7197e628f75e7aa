//! The tester against exhaustive generator-image search on small groups.

use grpiso::blackbox::{build_group, BlackBoxGroup, ClassSGroupSpec, Regenerated, TableGroup};
use grpiso::iso::{group_isomorphism, verify_images, verify_isomorphism, IsoOutcome};
use grpiso::reference::{find_isomorphism, Enumerated};
use grpiso::selftest::corpus;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn agree<G: BlackBoxGroup, H: BlackBoxGroup>(g: &G, h: &H) -> bool {
    let brute = find_isomorphism(g, h).unwrap();
    match group_isomorphism(g, h).unwrap() {
        IsoOutcome::Isomorphic(iso) => {
            assert!(verify_isomorphism(g, h, &iso));
            brute.is_some()
        }
        IsoOutcome::NotIsomorphic(_) => brute.is_none(),
    }
}

#[test]
fn small_corpus_pairs() {
    let specs: Vec<ClassSGroupSpec> = corpus(5).unwrap().into_iter().filter(|s| s.order() <= 200).collect();
    let groups: Vec<_> = specs.iter().map(|s| build_group(s).unwrap()).collect();
    let mut compared = 0;
    for i in 0..groups.len() {
        for j in i..groups.len() {
            if specs[i].order() != specs[j].order() {
                continue;
            }
            assert!(agree(&groups[i], &groups[j]), "{}\n{}", specs[i], specs[j]);
            compared += 1;
        }
    }
    assert!(compared > 50);
}

#[test]
fn regenerated_copies() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for spec in corpus(6).unwrap().into_iter().filter(|s| s.order() <= 200) {
        let g = build_group(&spec).unwrap();
        let h = Regenerated::random(build_group(&spec.with_seed(spec.scramble_seed ^ 77)).unwrap(), &mut rng).unwrap();
        assert!(agree(&g, &h));
        let IsoOutcome::Isomorphic(_) = group_isomorphism(&h, &g).unwrap() else {
            panic!("{spec}")
        };
    }
}

#[test]
fn table_ingested_groups() {
    let s3 = build_group(&ClassSGroupSpec::new(vec![3], 2, vec![vec![2]], 3)).unwrap();
    let e = Enumerated::new(&s3).unwrap();
    let table = TableGroup::new(e.table.clone()).unwrap();
    let IsoOutcome::Isomorphic(iso) = group_isomorphism(&table, &s3).unwrap() else {
        panic!()
    };
    assert!(verify_images(&table, &s3, &iso.gen_images).unwrap());
    let z6 = build_group(&ClassSGroupSpec::abelian(vec![6], 1)).unwrap();
    assert!(!group_isomorphism(&table, &z6).unwrap().is_isomorphic());
}
