//! Action of a group on the right cosets of a subgroup.

use std::collections::HashMap;

use super::{GroupError, PermGroup, ELEMENT_BOUND};
use crate::perm::Permutation;

#[derive(Clone, Debug)]
pub struct CosetAction {
    /// Image of `G` acting on the cosets `Hg` by right multiplication.
    pub image: PermGroup,
    /// Order of the core of `H` in `G`.
    pub kernel_order: u64,
    /// `representatives[i]` lies in the coset labelled `i`; coset 0 is `H`.
    pub representatives: Vec<Permutation>,
    base: Vec<usize>,
    subgroup_elements: Vec<Permutation>,
    lookup: HashMap<Vec<u32>, usize>,
}

impl CosetAction {
    pub fn degree(&self) -> usize {
        self.representatives.len()
    }

    /// Label of the coset `Hx`, if `x` lies in `G`.
    pub fn coset_of(&self, x: &Permutation) -> Option<usize> {
        let key = coset_key(&self.subgroup_elements, &self.base, x);
        self.lookup.get(&key).copied()
    }

    /// The permutation induced on cosets by `x` in `G`.
    pub fn image_of(&self, x: &Permutation) -> Option<Permutation> {
        let images = self
            .representatives
            .iter()
            .map(|r| self.coset_of(&r.compose(x)))
            .collect::<Option<Vec<_>>>()?;
        Permutation::from_images(images).ok()
    }
}

/// Coset `Hx` is identified by the least base image vector over its elements.
fn coset_key(h_elements: &[Permutation], base: &[usize], x: &Permutation) -> Vec<u32> {
    let mut best: Option<Vec<u32>> = None;
    let mut cur = Vec::with_capacity(base.len());
    for h in h_elements {
        cur.clear();
        cur.extend(base.iter().map(|&b| x.apply(h.apply(b)) as u32));
        if best.as_ref().is_none_or(|b| cur < *b) {
            best = Some(cur.clone());
        }
    }
    best.expect("subgroup has at least the identity")
}

pub fn coset_action(g: &PermGroup, h: &PermGroup) -> Result<CosetAction, GroupError> {
    h.check_subgroup_of(g)?;
    let h_elements = h.elements()?;
    let index = g.order() / h.order();
    let index = u64::try_from(&index).unwrap_or(u64::MAX);
    if index > ELEMENT_BOUND {
        return Err(GroupError::ScaleBound {
            what: "subgroup index",
            value: index,
            bound: ELEMENT_BOUND,
        });
    }
    let base = g.base().to_vec();
    let id = g.identity();
    let mut lookup = HashMap::new();
    lookup.insert(coset_key(&h_elements, &base, &id), 0usize);
    let mut reps = vec![id];
    let mut actions: Vec<Vec<usize>> = vec![Vec::new(); g.generators().len()];
    let mut head = 0;
    while head < reps.len() {
        let r = reps[head].clone();
        for (s, x) in g.generators().iter().enumerate() {
            let y = r.compose(x);
            let key = coset_key(&h_elements, &base, &y);
            let next = reps.len();
            let j = *lookup.entry(key).or_insert(next);
            if j == next {
                reps.push(y);
            }
            actions[s].push(j);
        }
        head += 1;
    }
    debug_assert_eq!(reps.len() as u64, index);
    let n = reps.len();
    let gens = actions
        .into_iter()
        .map(Permutation::from_images)
        .collect::<Result<Vec<_>, _>>()?;
    let image = PermGroup::new(n, gens)?;
    let kernel = g.order() / image.order();
    Ok(CosetAction {
        kernel_order: u64::try_from(&kernel).unwrap_or(u64::MAX),
        image,
        representatives: reps,
        base,
        subgroup_elements: h_elements,
        lookup,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s4_on_cosets_of_s3() {
        let s4 = PermGroup::symmetric(4);
        let s3 = s4.stabilizer(3).unwrap();
        let act = coset_action(&s4, &s3).unwrap();
        assert_eq!(act.degree(), 4);
        assert_eq!(act.kernel_order, 1);
        assert_eq!(act.image.size(), 24);
        assert!(act.image.is_transitive());
        // The trivial coset is stabilized exactly by H.
        assert_eq!(act.image.stabilizer(0).unwrap().size(), 6);
        for x in s4.elements().unwrap() {
            let img = act.image_of(&x).unwrap();
            assert_eq!(img.fixes(0), s3.contains(&x));
        }
    }

    #[test]
    fn kernel_of_action_on_cosets_of_normal_subgroup() {
        let s4 = PermGroup::symmetric(4);
        let v4 = PermGroup::new(
            4,
            vec![
                Permutation::parse_cycles(4, "(0,1)(2,3)").unwrap(),
                Permutation::parse_cycles(4, "(0,2)(1,3)").unwrap(),
            ],
        )
        .unwrap();
        let act = coset_action(&s4, &v4).unwrap();
        assert_eq!(act.degree(), 6);
        assert_eq!(act.kernel_order, 4);
        assert_eq!(act.image.size(), 6);
    }

    #[test]
    fn rejects_non_subgroup() {
        let c = PermGroup::cyclic(5);
        let s = PermGroup::symmetric(5);
        assert!(matches!(coset_action(&c, &s), Err(GroupError::NotSubgroup { .. })));
    }
}
