mod common;

use bbgroup::constructions::{
    abelian_types, dihedral, quaternion, semidirect_zmod, symmetric, zmod,
};
use bbgroup::oracle::{brute_force_iso, enumerate, CayleyTable};
use common::{abelian_scrambled, rng};
use rand::Rng;

fn table(g: &bbgroup::Group) -> CayleyTable {
    enumerate(g, 200).unwrap()
}

/// Pairwise non-isomorphic groups, labelled.
fn distinct_corpus() -> Vec<(String, CayleyTable)> {
    let mut out = Vec::new();
    for n in 1..=64u64 {
        for t in abelian_types(n) {
            out.push((format!("{t:?}"), table(&zmod(&t))));
        }
    }
    out.push(("S3".into(), table(&symmetric(3))));
    out.push(("D4".into(), table(&dihedral(4))));
    out.push(("Q8".into(), table(&quaternion())));
    out.push(("Z3:Z7".into(), table(&semidirect_zmod(3, 7, 2).unwrap())));
    out.push(("Z5:Z11".into(), table(&semidirect_zmod(5, 11, 3).unwrap())));
    out.push((
        "Z10:Z11".into(),
        table(&semidirect_zmod(10, 11, 10).unwrap()),
    ));
    out.push((
        "Z10:Z11 faithful".into(),
        table(&semidirect_zmod(10, 11, 2).unwrap()),
    ));
    out
}

#[test]
fn tables_are_groups() {
    for (name, t) in distinct_corpus() {
        assert!(t.is_valid_group(), "{name}");
    }
}

#[test]
fn reflexive_on_corpus() {
    for (name, t) in distinct_corpus() {
        assert!(brute_force_iso(&t, &t), "{name}");
    }
}

#[test]
fn distinguishes_non_isomorphic_groups() {
    let corpus = distinct_corpus();
    for i in 0..corpus.len() {
        for j in i + 1..corpus.len() {
            let (a, ta) = &corpus[i];
            let (b, tb) = &corpus[j];
            if ta.order() == tb.order() {
                assert!(!brute_force_iso(ta, tb), "{a} vs {b}");
            }
        }
    }
}

#[test]
fn symmetric_on_random_pairs() {
    let corpus = distinct_corpus();
    let mut r = rng(31);
    for _ in 0..100 {
        let i = r.gen_range(0..corpus.len());
        let same_order: Vec<usize> = (0..corpus.len())
            .filter(|&j| corpus[j].1.order() == corpus[i].1.order())
            .collect();
        let j = same_order[r.gen_range(0..same_order.len())];
        assert_eq!(
            brute_force_iso(&corpus[i].1, &corpus[j].1),
            brute_force_iso(&corpus[j].1, &corpus[i].1)
        );
    }
}

#[test]
fn scrambled_generators_give_isomorphic_tables() {
    let mut r = rng(32);
    for n in [12u64, 16, 36, 48, 64] {
        for t in abelian_types(n) {
            let g = abelian_scrambled(&t, 2, &mut r);
            assert!(brute_force_iso(&table(&zmod(&t)), &table(&g)), "{t:?}");
        }
    }
}

#[test]
fn semidirect_backends_agree() {
    for (c, d, v) in [(3, 7, 2), (4, 5, 2), (2, 9, 8), (6, 7, 3)] {
        let a = table(&semidirect_zmod(c, d, v).unwrap());
        let b = table(&bbgroup::constructions::semidirect_perm(c, d, v).unwrap());
        assert!(brute_force_iso(&a, &b));
    }
}
