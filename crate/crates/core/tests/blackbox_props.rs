mod common;

use bbgroup::blackbox::format::GroupFile;
use bbgroup::blackbox::{
    derived_subgroup, enumerate_span, normal_closure, random_element, Element, Group, Slp,
};
use bbgroup::constructions::{
    alternating5, dihedral, example_matrices, quaternion, s3_times_z2, semidirect_perm,
    semidirect_zmod, symmetric, units, zmod,
};
use bbgroup::oracle::enumerate;
use common::{f, rng};
use proptest::prelude::*;
use rand::Rng;

fn backends() -> Vec<(&'static str, Group)> {
    vec![
        ("zmod", zmod(&[4, 6]).with_order(f(24))),
        ("twisted", semidirect_zmod(3, 7, 2).unwrap()),
        ("perm", symmetric(5)),
        ("matmod", example_matrices().0),
        ("units", units(35, &[2, 3]).unwrap().with_order(f(12))),
    ]
}

fn random_slp<R: Rng>(gens: usize, depth: u32, rng: &mut R) -> Slp {
    if depth == 0 || rng.gen_bool(0.2) {
        return Slp::generator(rng.gen_range(0..gens));
    }
    match rng.gen_range(0..4) {
        0 => random_slp(gens, depth - 1, rng).mul(&random_slp(gens, depth - 1, rng)),
        1 => random_slp(gens, depth - 1, rng).inv(),
        2 => random_slp(gens, depth - 1, rng).pow(rng.gen_range(-50..50)),
        _ => random_slp(gens, depth - 1, rng).conj(&random_slp(gens, depth - 1, rng)),
    }
}

#[test]
fn product_evaluates_to_product() {
    let mut r = rng(1);
    for (name, g) in backends() {
        let k = g.generators().len();
        for _ in 0..1000 {
            let a = random_slp(k, 4, &mut r);
            let b = random_slp(k, 4, &mut r);
            let ab = g.evaluate(&a.mul(&b)).unwrap();
            let expected = g.mul(&g.evaluate(&a).unwrap(), &g.evaluate(&b).unwrap());
            assert!(g.eq(&ab, &expected).unwrap(), "{name}");
        }
    }
}

#[test]
fn element_orders_are_exact() {
    let mut r = rng(2);
    for (name, g) in backends() {
        let n = g.known_order().unwrap().clone();
        for _ in 0..200 {
            let (x, _) = random_element(&g, &mut r);
            let o = g.element_order(&x).unwrap();
            assert_eq!(n.value() % o.value(), 0, "{name}");
            assert!(g.is_identity(&g.pow(&x, o.value())).unwrap());
            for p in o.primes() {
                assert!(!g.is_identity(&g.pow(&x, o.value() / p)).unwrap(), "{name}");
            }
            assert_eq!(g.order_dividing(&x, &n).unwrap(), o);
        }
    }
}

#[test]
fn random_element_words_evaluate() {
    let mut r = rng(3);
    for (name, g) in backends() {
        for _ in 0..100 {
            let (x, w) = random_element(&g, &mut r);
            assert!(g.eq(&g.evaluate(&w).unwrap(), &x).unwrap(), "{name}");
        }
    }
}

fn small_corpus() -> Vec<Group> {
    let mut out = vec![
        symmetric(3),
        symmetric(4),
        dihedral(4),
        dihedral(5),
        quaternion(),
        s3_times_z2(),
        alternating5(),
        semidirect_perm(3, 7, 2).unwrap(),
        semidirect_zmod(4, 5, 2).unwrap(),
        semidirect_zmod(2, 15, 4).unwrap(),
    ];
    for m in [vec![8], vec![2, 4], vec![2, 2, 2], vec![3, 9], vec![6, 6]] {
        out.push(zmod(&m));
    }
    out
}

#[test]
fn normal_closure_is_conjugation_stable() {
    let mut r = rng(4);
    for g in small_corpus() {
        for _ in 0..3 {
            let (seed, _) = random_element(&g, &mut r);
            let gens = normal_closure(&g, &[seed.clone()], 10_000).unwrap();
            let span = enumerate_span(&g.subgroup(gens.clone()), 10_000).unwrap();
            assert!(span.contains(&seed).unwrap());
            for x in &gens {
                for s in g.generators() {
                    assert!(span.contains(&g.conj(x, s)).unwrap());
                }
            }
        }
    }
}

#[test]
fn derived_subgroup_trivial_iff_commutative() {
    for g in small_corpus() {
        let table = enumerate(&g, 200).unwrap();
        let d = derived_subgroup(&g, 10_000).unwrap();
        let trivial = d.generators().iter().all(|x| g.is_identity(x).unwrap());
        assert_eq!(trivial, table.is_commutative());
    }
}

#[test]
fn derived_subgroup_orders() {
    let cases = [
        (symmetric(4), 12),
        (alternating5(), 60),
        (quaternion(), 2),
        (semidirect_perm(3, 7, 2).unwrap(), 7),
    ];
    for (g, expected) in cases {
        let d = derived_subgroup(&g, 10_000).unwrap();
        assert_eq!(enumerate_span(&d, 10_000).unwrap().len(), expected);
    }
}

#[test]
fn equality_is_a_congruence() {
    // in a quotient by a congruence, equal classes multiply to equal classes
    let g = semidirect_perm(3, 7, 2).unwrap();
    let q = g.with_congruence(bbgroup::metacyclic::hall_membership(&g, &f(7)));
    let mut r = rng(5);
    let y = g.generators()[1].clone();
    for _ in 0..300 {
        let (x, _) = random_element(&g, &mut r);
        let (z, _) = random_element(&g, &mut r);
        let x2 = g.mul(&x, &g.pow(&y, r.gen_range(0..7)));
        let z2 = g.mul(&g.pow(&y, r.gen_range(0..7)), &z);
        assert!(q.eq(&x, &x2).unwrap() && q.eq(&z, &z2).unwrap());
        assert!(q.eq(&q.mul(&x, &z), &q.mul(&x2, &z2)).unwrap());
        assert!(q.eq(&x2, &x).unwrap());
    }
}

#[test]
fn group_files_round_trip() {
    for (name, g) in backends() {
        if name == "units" {
            assert!(GroupFile::from_group(&g).is_err());
            continue;
        }
        let file = GroupFile::from_group(&g).unwrap();
        let text = file.to_json();
        let back = GroupFile::parse(&text).unwrap().into_group().unwrap();
        assert_eq!(back.generators(), g.generators());
        assert_eq!(back.known_order(), g.known_order());
    }
}

#[test]
fn group_files_reject_bad_input() {
    for text in [
        r#"{"kind":"zmod","moduli":[6],"generators":[[1]],"extra":1}"#,
        r#"{"kind":"perm","degree":3,"generators":[[0,0,1]]}"#,
        r#"{"kind":"matmod","prime":5,"dim":2,"generators":[[[1,2],[2,4]]]}"#,
        r#"{"kind":"zmod","moduli":[6],"generators":[[1]],"order":6,"order_factors":[[2,2]]}"#,
        r#"{"kind":"zmod","moduli":[3,7],"action":3,"generators":[[1,0]]}"#,
        r#"{"kind":"quaternion"}"#,
    ] {
        assert!(
            GroupFile::parse(text)
                .and_then(GroupFile::into_group)
                .is_err(),
            "{text}"
        );
    }
}

proptest! {
    #[test]
    fn pow_is_additive(a in 0u64..10_000, b in 0u64..10_000, seed in any::<u64>()) {
        let mut r = rng(seed);
        for (_, g) in backends() {
            let (x, _) = random_element(&g, &mut r);
            let lhs = g.pow(&x, a + b);
            let rhs = g.mul(&g.pow(&x, a), &g.pow(&x, b));
            prop_assert!(g.eq(&lhs, &rhs).unwrap());
        }
    }

    #[test]
    fn inverse_cancels(seed in any::<u64>()) {
        let mut r = rng(seed);
        for (_, g) in backends() {
            let (x, _) = random_element(&g, &mut r);
            prop_assert!(g.is_identity(&g.mul(&x, &g.inv(&x))).unwrap());
            prop_assert!(g.is_identity(&g.mul(&g.inv(&x), &x)).unwrap());
        }
    }

    #[test]
    fn zmod_files_parse(moduli in prop::collection::vec(1u64..20, 1..4), seed in any::<u64>()) {
        let mut r = rng(seed);
        let gens: Vec<Element> = (0..3)
            .map(|_| Element::from_slice(&moduli.iter().map(|&m| r.gen_range(0..m)).collect::<Vec<_>>()))
            .collect();
        let g = Group::new(bbgroup::Ambient::Zmod { moduli: moduli.clone() }, gens).unwrap();
        let back = GroupFile::parse(&GroupFile::from_group(&g).unwrap().to_json()).unwrap().into_group().unwrap();
        prop_assert_eq!(back.generators(), g.generators());
    }
}
