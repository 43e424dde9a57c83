//! Stabilizer chains, cosets, block systems and regular subgroups against
//! brute-force closures on small random groups.

use std::collections::{BTreeSet, HashSet};

use designforge_core::permgrp::{coset_action, is_primitive, regular_subgroups};
use designforge_core::{PermGroup, Permutation};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn closure(g: &PermGroup) -> HashSet<Vec<usize>> {
    let n = g.degree();
    let gens: Vec<Permutation> = g.generators().to_vec();
    let mut seen = HashSet::from([(0..n).collect::<Vec<_>>()]);
    let mut queue: Vec<Vec<usize>> = seen.iter().cloned().collect();
    while let Some(x) = queue.pop() {
        for s in &gens {
            let y: Vec<usize> = x.iter().map(|&i| s.apply(i)).collect();
            if seen.insert(y.clone()) {
                queue.push(y);
            }
        }
    }
    seen
}

fn perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

/// Up to three random generators on 3 to 7 points.
fn group() -> impl Strategy<Value = PermGroup> {
    (3usize..=7).prop_flat_map(|n| prop::collection::vec(perm(n), 1..=3).prop_map(move |g| PermGroup::new(n, g).unwrap()))
}

fn block_oracle(n: usize, gens: &[Permutation]) -> bool {
    let orbit_of = |set: BTreeSet<usize>| {
        let mut seen = HashSet::from([set.clone()]);
        let mut out = vec![set];
        let mut i = 0;
        while i < out.len() {
            for g in gens {
                let img: BTreeSet<usize> = out[i].iter().map(|&x| g.apply(x)).collect();
                if seen.insert(img.clone()) {
                    out.push(img);
                }
            }
            i += 1;
        }
        out
    };
    if orbit_of(BTreeSet::from([0])).len() != n {
        return false;
    }
    (0u32..1 << (n - 1)).all(|mask| {
        let b: BTreeSet<usize> = std::iter::once(0).chain((1..n).filter(|i| mask >> (i - 1) & 1 == 1)).collect();
        if b.len() < 2 || b.len() == n || n % b.len() != 0 {
            return true;
        }
        let images = orbit_of(b);
        !images.iter().enumerate().all(|(i, x)| images[i + 1..].iter().all(|y| x.is_disjoint(y)))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn order_matches_closure(g in group()) {
        prop_assert_eq!(g.size() as usize, closure(&g).len());
    }

    #[test]
    fn orbit_stabilizer(g in group(), p in 0usize..3) {
        let orbit = g.orbit(p).unwrap();
        let stab = g.stabilizer(p).unwrap();
        prop_assert_eq!(g.size(), orbit.len() as u64 * stab.size());
        for s in stab.generators() {
            prop_assert!(s.fixes(p));
        }
    }

    #[test]
    fn membership_matches_closure(g in group(), x in perm(7)) {
        let els = closure(&g);
        if x.degree() == g.degree() {
            let images: Vec<usize> = x.images().collect();
            prop_assert_eq!(g.contains(&x), els.contains(&images));
        }
    }

    #[test]
    fn coset_relations(g in group(), p in 0usize..3) {
        let h = g.stabilizer(p).unwrap();
        let ca = coset_action(&g, &h).unwrap();
        prop_assert_eq!(ca.degree() as u64 * h.size(), g.size());
        prop_assert_eq!(ca.kernel_order * ca.image.size(), g.size());
        prop_assert!(ca.image.is_transitive());
        for (i, r) in ca.representatives.iter().enumerate() {
            prop_assert_eq!(ca.coset_of(r), Some(i));
        }
        // The coset action on a point stabilizer is the action on the orbit.
        prop_assert_eq!(ca.degree(), g.orbit(p).unwrap().len());
    }

    #[test]
    fn primitivity_matches_block_oracle(g in group()) {
        if g.is_transitive() {
            prop_assert_eq!(is_primitive(&g).unwrap(), block_oracle(g.degree(), g.generators()));
        }
    }
}

#[test]
fn sifting_random_products() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let gens = vec![
        Permutation::parse_cycles(10, "(0 1 2 3 4 5 6 7 8)").unwrap(),
        Permutation::parse_cycles(10, "(0 9)(1 3)").unwrap(),
    ];
    let g = PermGroup::new(10, gens.clone()).unwrap();
    for _ in 0..1000 {
        let mut x = Permutation::identity(10);
        for _ in 0..rng.gen_range(1..40) {
            x = x.compose(&gens[rng.gen_range(0..gens.len())]);
        }
        let (residue, depth) = g.sift(&x);
        assert!(residue.is_identity(), "product of generators did not sift");
        assert_eq!(depth, g.base().len());
    }
    // An odd permutation does not lie in a group of even ones.
    let a = PermGroup::new(
        6,
        vec![
            Permutation::parse_cycles(6, "(0 1 2)").unwrap(),
            Permutation::parse_cycles(6, "(1 2 3 4 5)").unwrap(),
        ],
    )
    .unwrap();
    assert_eq!(a.size(), 360);
    assert!(!a.contains(&Permutation::parse_cycles(6, "(0 1)").unwrap()));
}

#[test]
fn regular_subgroups_of_small_symmetric_groups() {
    // Regular subgroups of Sym(n) up to conjugacy are the groups of order n.
    for (n, classes) in [(2, 1), (3, 1), (4, 2), (5, 1), (6, 2)] {
        let found = regular_subgroups(&PermGroup::symmetric(n)).unwrap();
        assert_eq!(found.len(), classes, "Sym({n})");
        for r in &found {
            assert_eq!(r.size(), n as u64);
            assert!(r.is_transitive());
        }
    }
}
