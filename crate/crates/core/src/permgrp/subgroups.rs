//! Subgroup constructions: intersection, normalizer, conjugacy, closures.

use super::{GroupError, PermGroup, ELEMENT_BOUND};
use crate::perm::Permutation;

/// Orbit labels and orbit sizes, indexed by point.
fn orbit_labels(g: &PermGroup) -> (Vec<usize>, Vec<usize>) {
    let mut label = vec![usize::MAX; g.degree()];
    let mut size = vec![0; g.degree()];
    for (i, orbit) in g.orbits().into_iter().enumerate() {
        for &p in &orbit {
            label[p] = i;
            size[p] = orbit.len();
        }
    }
    (label, size)
}

/// Partial-image test: a `g` with `H^g = K` maps `H`-orbits onto `K`-orbits.
fn orbit_map_ok(
    h: &(Vec<usize>, Vec<usize>),
    k: &(Vec<usize>, Vec<usize>),
    base: &[usize],
    images: &[usize],
) -> bool {
    let j = images.len() - 1;
    let (x, y) = (base[j], images[j]);
    if h.1[x] != k.1[y] {
        return false;
    }
    (0..j).all(|l| (h.0[base[l]] == h.0[x]) == (k.0[images[l]] == k.0[y]))
}

/// `H ∩ K`.
pub fn intersection(h: &PermGroup, k: &PermGroup) -> Result<PermGroup, GroupError> {
    if h.degree() != k.degree() {
        return Err(crate::perm::PermError::DegreeMismatch {
            expected: h.degree(),
            found: k.degree(),
        }
        .into());
    }
    let (small, large) = if h.order() <= k.order() { (h, k) } else { (k, h) };
    small.check_order_bound(ELEMENT_BOUND)?;
    Ok(small.subgroup_by_property(&[], |_, _| true, |g| large.contains(g)))
}

/// `N_G(H)`, for `H <= G`.
pub fn normalizer(g: &PermGroup, h: &PermGroup) -> Result<PermGroup, GroupError> {
    h.check_subgroup_of(g)?;
    g.check_order_bound(ELEMENT_BOUND)?;
    let labels = orbit_labels(h);
    Ok(g.subgroup_by_property(
        &[],
        |base, images| orbit_map_ok(&labels, &labels, base, images),
        |x| h.generators().iter().all(|y| h.contains(&y.conjugate_by(x))),
    ))
}

/// Some `x` in `G` with `H^x = K`, or `None` after an exhaustive search.
pub fn are_conjugate(
    g: &PermGroup,
    h: &PermGroup,
    k: &PermGroup,
) -> Result<Option<Permutation>, GroupError> {
    h.check_subgroup_of(g)?;
    k.check_subgroup_of(g)?;
    g.check_order_bound(ELEMENT_BOUND)?;
    if h.order() != k.order() {
        return Ok(None);
    }
    let hl = orbit_labels(h);
    let kl = orbit_labels(k);
    let mut hs: Vec<usize> = h.orbits().iter().map(Vec::len).collect();
    let mut ks: Vec<usize> = k.orbits().iter().map(Vec::len).collect();
    hs.sort_unstable();
    ks.sort_unstable();
    if hs != ks {
        return Ok(None);
    }
    Ok(g.find_element(
        &[],
        |base, images| orbit_map_ok(&hl, &kl, base, images),
        |x| h.generators().iter().all(|y| k.contains(&y.conjugate_by(x))),
    ))
}

/// Smallest normal subgroup of `G` containing `elements`.
pub fn normal_closure(g: &PermGroup, elements: &[Permutation]) -> Result<PermGroup, GroupError> {
    for (index, x) in elements.iter().enumerate() {
        if !g.contains(x) {
            return Err(GroupError::NotSubgroup { index });
        }
    }
    let mut gens: Vec<Permutation> = elements.iter().filter(|x| !x.is_identity()).cloned().collect();
    let mut n = PermGroup::new(g.degree(), gens.clone())?;
    let mut i = 0;
    // Every generator of N gets conjugated by every generator of G once.
    while i < gens.len() {
        let y = gens[i].clone();
        for x in g.generators() {
            let c = y.conjugate_by(x);
            if !n.contains(&c) {
                gens.push(c);
                n = PermGroup::new(g.degree(), gens.clone())?;
            }
        }
        i += 1;
    }
    Ok(n)
}

pub fn is_normal(g: &PermGroup, h: &PermGroup) -> bool {
    h.is_subgroup_of(g)
        && h.generators()
            .iter()
            .all(|y| g.generators().iter().all(|x| h.contains(&y.conjugate_by(x))))
}

pub fn commutator(a: &Permutation, b: &Permutation) -> Permutation {
    a.inverse().compose(&b.inverse()).compose(a).compose(b)
}

/// `[G, G]`, the normal closure of the generator commutators.
pub fn derived_subgroup(g: &PermGroup) -> PermGroup {
    let gens = g.generators();
    let mut comms = Vec::new();
    for i in 0..gens.len() {
        for j in (i + 1)..gens.len() {
            comms.push(commutator(&gens[i], &gens[j]));
        }
    }
    normal_closure(g, &comms).expect("commutators lie in the group")
}

/// `Z(G)`.
pub fn centre(g: &PermGroup) -> Result<PermGroup, GroupError> {
    g.check_order_bound(ELEMENT_BOUND)?;
    Ok(g.subgroup_by_property(
        &[],
        |_, _| true,
        |x| {
            g.generators()
                .iter()
                .all(|y| x.compose(y) == y.compose(x))
        },
    ))
}

/// Whether `G` is simple, tested by the normal closure of one
/// representative per conjugacy class of `G`.
pub fn is_simple(g: &PermGroup) -> Result<bool, GroupError> {
    if g.is_trivial() {
        return Ok(false);
    }
    for x in class_representatives(g)? {
        if x.is_identity() {
            continue;
        }
        if normal_closure(g, &[x])?.order() != g.order() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// One element from each conjugacy class.
pub fn class_representatives(g: &PermGroup) -> Result<Vec<Permutation>, GroupError> {
    Ok(conjugacy_classes(g)?
        .into_iter()
        .map(|c| c.into_iter().next().unwrap())
        .collect())
}

/// Conjugacy classes of elements, each sorted, listed by smallest member.
pub fn conjugacy_classes(g: &PermGroup) -> Result<Vec<Vec<Permutation>>, GroupError> {
    let mut elements = g.elements()?;
    elements.sort();
    let index: std::collections::HashMap<Permutation, usize> = elements
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, x)| (x, i))
        .collect();
    let mut done = vec![false; elements.len()];
    let mut classes = Vec::new();
    for start in 0..elements.len() {
        if done[start] {
            continue;
        }
        done[start] = true;
        let mut class = vec![start];
        let mut head = 0;
        while head < class.len() {
            let x = elements[class[head]].clone();
            head += 1;
            for s in g.generators() {
                let j = index[&x.conjugate_by(s)];
                if !done[j] {
                    done[j] = true;
                    class.push(j);
                }
            }
        }
        class.sort_unstable();
        classes.push(class.into_iter().map(|i| elements[i].clone()).collect());
    }
    Ok(classes)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, s: &str) -> Permutation {
        Permutation::parse_cycles(n, s).unwrap()
    }

    #[test]
    fn normalizer_of_five_cycle_in_s5() {
        let s5 = PermGroup::symmetric(5);
        let c5 = PermGroup::cyclic(5);
        assert_eq!(normalizer(&s5, &c5).unwrap().size(), 20);
    }

    #[test]
    fn intersection_with_self() {
        let s4 = PermGroup::symmetric(4);
        let h = PermGroup::new(4, vec![p(4, "(0,1,2,3)"), p(4, "(0,2)")]).unwrap();
        assert!(intersection(&h, &h).unwrap().same_group(&h));
        let k = PermGroup::new(4, vec![p(4, "(0,1,2)"), p(4, "(0,1)")]).unwrap();
        let hk = intersection(&h, &k).unwrap();
        let brute = h.elements().unwrap().iter().filter(|x| k.contains(x)).count();
        assert_eq!(hk.size(), brute as u64);
        assert!(hk.is_subgroup_of(&s4));
    }

    #[test]
    fn conjugacy_of_subgroups() {
        let s4 = PermGroup::symmetric(4);
        let a = PermGroup::new(4, vec![p(4, "(0,1)")]).unwrap();
        let b = PermGroup::new(4, vec![p(4, "(2,3)")]).unwrap();
        let c = PermGroup::new(4, vec![p(4, "(0,1)(2,3)")]).unwrap();
        let x = are_conjugate(&s4, &a, &b).unwrap().unwrap();
        assert!(a.conjugate(&x).same_group(&b));
        assert!(are_conjugate(&s4, &a, &c).unwrap().is_none());
        // The two Klein four-groups of S4 are not conjugate.
        let v_normal = PermGroup::new(4, vec![p(4, "(0,1)(2,3)"), p(4, "(0,2)(1,3)")]).unwrap();
        let v_other = PermGroup::new(4, vec![p(4, "(0,1)"), p(4, "(2,3)")]).unwrap();
        assert!(are_conjugate(&s4, &v_normal, &v_other).unwrap().is_none());
    }

    #[test]
    fn closures_and_simplicity() {
        let s5 = PermGroup::symmetric(5);
        let n = normal_closure(&s5, &[p(5, "(0,1,2)")]).unwrap();
        assert_eq!(n.size(), 60);
        assert_eq!(derived_subgroup(&s5).size(), 60);
        assert!(!is_simple(&s5).unwrap());
        assert!(is_simple(&n).unwrap());
        assert!(is_normal(&s5, &n));
        assert_eq!(centre(&s5).unwrap().size(), 1);
        assert_eq!(centre(&PermGroup::cyclic(6)).unwrap().size(), 6);
        let sizes: Vec<usize> = conjugacy_classes(&s5).unwrap().iter().map(Vec::len).collect();
        assert_eq!(sizes.iter().sum::<usize>(), 120);
        assert_eq!(sizes.len(), 7);
    }
}
