mod oracle;

use std::sync::OnceLock;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use gcover_core::construct::{direct_product, from_permutations, semidirect_product, ActionSpec, PermutationGenSet};
use gcover_core::corpus::{corpus_generate, corpus_with_duplicates};
use gcover_core::cover::{sigma, sigma_value};
use gcover_core::descriptor::{instantiate, matches_descriptor, StructureDescriptor as D};
use gcover_core::iso::{fingerprint, is_isomorphic};
use gcover_core::lattice::{core, maximal_data, normal_subgroups, subgroup_conjugacy_classes};
use gcover_core::{Group, SubgroupSet};

fn small() -> &'static [Group] {
    static S: OnceLock<Vec<Group>> = OnceLock::new();
    S.get_or_init(|| corpus_generate(10))
}

fn medium() -> &'static [Group] {
    static M: OnceLock<Vec<Group>> = OnceLock::new();
    M.get_or_init(|| corpus_generate(60).into_iter().filter(|g| !g.is_cyclic()).collect())
}

fn mask(s: &SubgroupSet) -> oracle::Mask {
    s.members().fold(0, |acc, x| acc | 1 << x)
}

fn shuffled(n: usize, seed: u64) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    p
}

#[test]
fn small_corpus_has_every_group_of_order_at_most_ten() {
    let mut by_order = [0usize; 11];
    for g in small() {
        by_order[g.order()] += 1;
    }
    assert_eq!(by_order[1..], [1, 1, 1, 2, 1, 2, 1, 5, 2, 2]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn isomorphism_agrees_with_oracle(i in 0..18usize, j in 0..18usize, seed in any::<u64>()) {
        let a = &small()[i];
        let b = oracle::relabel(&small()[j], &shuffled(small()[j].order(), seed));
        let found = is_isomorphic(a, &b);
        prop_assert_eq!(found.is_some(), oracle::isomorphic(a, &b));
        if let Some(w) = &found {
            prop_assert!(w.is_bijective(&b) && w.is_homomorphism(a, &b));
        }
        prop_assert_eq!(is_isomorphic(&b, a).is_some(), found.is_some());
        prop_assert!(is_isomorphic(a, &oracle::relabel(a, &shuffled(a.order(), !seed))).is_some());
    }

    #[test]
    fn isomorphism_is_transitive(i in 0..18usize, s1 in any::<u64>(), s2 in any::<u64>()) {
        let a = &small()[i];
        let b = oracle::relabel(a, &shuffled(a.order(), s1));
        let c = oracle::relabel(&b, &shuffled(a.order(), s2));
        prop_assert!(is_isomorphic(a, &b).is_some() && is_isomorphic(&b, &c).is_some());
        prop_assert!(is_isomorphic(a, &c).is_some());
    }

    #[test]
    fn generator_order_is_irrelevant(degree in 2..7usize, seeds in prop::collection::vec(any::<u64>(), 1..4), shuffle in any::<u64>()) {
        let gens: Vec<Vec<usize>> = seeds.iter().map(|&s| shuffled(degree, s)).collect();
        let mut other = gens.clone();
        other.push(gens[0].clone());
        other.shuffle(&mut ChaCha8Rng::seed_from_u64(shuffle));
        let a = from_permutations(&PermutationGenSet { degree, generators: gens }).unwrap();
        let b = from_permutations(&PermutationGenSet { degree, generators: other }).unwrap();
        prop_assert_eq!(a.rows(), b.rows());
    }

    #[test]
    fn minimal_covers_are_minimal(i in 0..1000usize) {
        let g = &medium()[i % medium().len()];
        let md = maximal_data(g).unwrap();
        let sr = sigma(g).unwrap();
        let s = sr.value.finite().unwrap();
        prop_assert!(!sr.witnesses.is_empty());
        for w in sr.witnesses.iter().take(20) {
            prop_assert_eq!(w.len(), s);
            let union = |skip: Option<usize>| {
                w.iter().enumerate().filter(|(k, _)| Some(*k) != skip).fold(0, |acc, (_, &p)| acc | mask(&md.maximals[p]))
            };
            prop_assert_eq!(union(None), oracle::full(g));
            for k in 0..w.len() {
                prop_assert_ne!(union(Some(k)), oracle::full(g));
            }
        }
    }

    #[test]
    fn covers_lift_through_quotients(i in 0..1000usize, pick in any::<usize>()) {
        let g = &medium()[i % medium().len()];
        let normals: Vec<SubgroupSet> =
            normal_subgroups(g).unwrap().iter().filter(|n| !n.is_trivial() && n.size() < g.order()).cloned().collect();
        prop_assume!(!normals.is_empty());
        let n = &normals[pick % normals.len()];
        let (q, hom) = g.quotient(n).unwrap();
        prop_assume!(!q.is_cyclic());
        let qmd = maximal_data(&q).unwrap();
        let w = &sigma(&q).unwrap().witnesses[0];
        let mut union = 0;
        for &p in w {
            let pre = g.preimage(&hom, &qmd.maximals[p]);
            prop_assert!(pre.size() < g.order());
            union |= mask(&pre);
        }
        prop_assert_eq!(union, oracle::full(g));
        prop_assert!(sigma_value(g).unwrap().unwrap() <= w.len());
    }

    #[test]
    fn trivial_action_gives_direct_product(i in 1..18usize, j in 1..18usize) {
        let (n, k) = (small()[i].clone(), small()[j].clone());
        let sd = semidirect_product(&ActionSpec::trivial(n.clone(), k.clone())).unwrap();
        prop_assert_eq!(sd.rows(), direct_product(&k, &n).unwrap().rows());
        prop_assert!(is_isomorphic(&sd, &direct_product(&n, &k).unwrap()).is_some());
    }
}

#[test]
fn cores_and_class_sizes() {
    for g in medium().iter().filter(|g| g.order() <= 40) {
        let md = maximal_data(g).unwrap();
        for m in &md.maximals {
            let c = core(g, m).unwrap();
            let brute = (0..g.order()).fold(oracle::full(g), |acc, y| acc & oracle::conjugate(g, mask(m), y));
            assert_eq!(mask(&c), brute, "{}", g.label());
            assert!(oracle::is_normal(g, mask(&c)));
        }
        for class in subgroup_conjugacy_classes(g, &md.maximals).unwrap() {
            let m = mask(&md.maximals[class[0]]);
            let normalizer = (0..g.order()).filter(|&y| oracle::conjugate(g, m, y) == m).count();
            assert_eq!(class.len(), g.order() / normalizer, "{}", g.label());
        }
    }
}

#[test]
fn maximal_covers_are_as_small_as_any_proper_cover() {
    for g in medium().iter().filter(|g| g.order() <= 24) {
        let all = oracle::full(g);
        let proper: Vec<oracle::Mask> = oracle::subgroups(g).into_iter().filter(|&h| h != all).collect();
        let brute = oracle::min_cover(all, &proper, g.order());
        assert_eq!(brute, sigma_value(g).unwrap(), "{}", g.label());
    }
}

fn determining_descriptors() -> Vec<D> {
    let e = |q| D::elementary(q).unwrap();
    vec![
        D::Cyclic(12),
        e(8),
        D::direct(vec![D::Cyclic(2), D::Cyclic(6)]),
        D::direct(vec![e(4), D::Cyclic(3)]),
        D::semidirect(e(3), D::Cyclic(2), true),
        D::semidirect(e(5), D::Cyclic(4), true),
        D::semidirect(e(7), D::Cyclic(3), true),
        D::semidirect(e(4), D::Cyclic(3), true),
        D::semidirect(e(8), D::Cyclic(7), true),
        D::direct(vec![D::semidirect(e(3), D::Cyclic(2), true), D::Cyclic(5)]),
        D::direct(vec![D::semidirect(e(4), D::Cyclic(3), true), D::Cyclic(2)]),
    ]
}

#[test]
fn matching_a_determining_descriptor_fixes_the_group() {
    let corpus = corpus_generate(60);
    for d in determining_descriptors() {
        let inst = instantiate(&d).unwrap();
        assert_eq!(inst.order(), d.order());
        assert!(matches_descriptor(&inst, &d).unwrap(), "{d}");
        let hits: Vec<&Group> =
            corpus.iter().filter(|g| g.order() == d.order() && matches_descriptor(g, &d).unwrap()).collect();
        assert_eq!(hits.len(), 1, "{d}: {:?}", hits.iter().map(|g| g.label()).collect::<Vec<_>>());
        assert!(is_isomorphic(hits[0], &inst).is_some(), "{d}");
    }
}

#[test]
fn corpus_is_duplicate_free_and_sigma_is_an_invariant() {
    let c = corpus_with_duplicates(60);
    for (i, a) in c.groups.iter().enumerate() {
        for b in &c.groups[i + 1..] {
            if fingerprint(a) == fingerprint(b) {
                assert!(is_isomorphic(a, b).is_none(), "{} ≅ {}", a.label(), b.label());
            }
        }
    }
    assert!(!c.duplicates.is_empty());
    for (i, copy) in &c.duplicates {
        let rep = &c.groups[*i];
        assert!(is_isomorphic(rep, copy).is_some(), "{} vs {}", rep.label(), copy.label());
        assert_eq!(sigma_value(rep).unwrap(), sigma_value(copy).unwrap(), "{}", copy.label());
        assert_eq!(maximal_data(rep).unwrap().maximals.len(), maximal_data(copy).unwrap().maximals.len());
    }
}
