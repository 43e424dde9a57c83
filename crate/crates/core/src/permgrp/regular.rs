//! Regular subgroups of a transitive group, up to conjugacy.
//!
//! A semiregular subgroup `S` has exactly one element sending `0` to each
//! point of the orbit `0^S`, so it is stored as a table indexed by that image.
//! The search grows `S` by an element mapping `0` to the least point outside
//! `0^S`; every regular overgroup of `S` arises this way. Since conjugate
//! subgroups have conjugate overgroups, only one representative per
//! conjugacy class of intermediate subgroups is expanded.

use std::collections::HashMap;

use super::{GroupError, PermGroup, ELEMENT_BOUND};
use crate::par;
use crate::perm::Permutation;

/// Largest degree accepted by [`regular_subgroups`].
pub const REGULAR_DEGREE_BOUND: usize = 128;

#[derive(Clone)]
struct Semiregular {
    gens: Vec<Permutation>,
    /// `by_image[p]` is the index in `elements` of the element with `0 -> p`.
    by_image: Vec<u32>,
    elements: Vec<Permutation>,
}

const NONE: u32 = u32::MAX;

impl Semiregular {
    fn trivial(n: usize) -> Self {
        let mut by_image = vec![NONE; n];
        by_image[0] = 0;
        Semiregular {
            gens: Vec::new(),
            by_image,
            elements: vec![Permutation::identity(n)],
        }
    }

    fn order(&self) -> usize {
        self.elements.len()
    }

    fn contains(&self, x: &Permutation) -> bool {
        let i = self.by_image[x.apply(0)];
        i != NONE && self.elements[i as usize] == *x
    }

    /// `<S, x>` if it is still semiregular.
    fn extend(&self, x: &Permutation) -> Option<Semiregular> {
        let n = self.by_image.len();
        let mut gens = self.gens.clone();
        gens.push(x.clone());
        let mut by_image = vec![NONE; n];
        by_image[0] = 0;
        let mut elements = vec![Permutation::identity(n)];
        let mut head = 0;
        while head < elements.len() {
            for g in &gens {
                let y = elements[head].compose(g);
                let p = y.apply(0);
                match by_image[p] {
                    NONE => {
                        if y.fixed_point_count() != 0 {
                            return None;
                        }
                        by_image[p] = elements.len() as u32;
                        elements.push(y);
                    }
                    i => {
                        if elements[i as usize] != y {
                            return None;
                        }
                    }
                }
            }
            head += 1;
        }
        Some(Semiregular {
            gens,
            by_image,
            elements,
        })
    }

    /// Invariant of the conjugacy class: order and element-order multiset.
    fn invariant(&self) -> (usize, Vec<u64>) {
        let mut orders: Vec<u64> = self.elements.iter().map(Permutation::order).collect();
        orders.sort_unstable();
        (self.order(), orders)
    }

    fn key(&self) -> Vec<Permutation> {
        let mut e = self.elements.clone();
        e.sort();
        e
    }
}

struct Context {
    n: usize,
    /// Elements of the stabilizer of 0 in `A`.
    stab: Vec<Permutation>,
    /// `transversal[p]` maps 0 to `p`.
    transversal: Vec<Permutation>,
}

impl Context {
    /// Whether some `a` in `A` has `S^a = T`. Composing with an element of
    /// `T` moves `0^a` to any point of its `T`-orbit, so it suffices to try
    /// `a` with `0^a` among the `T`-orbit representatives.
    fn conjugate(&self, s: &Semiregular, t: &Semiregular) -> bool {
        let mut seen = vec![false; self.n];
        for r in 0..self.n {
            if seen[r] {
                continue;
            }
            for e in &t.elements {
                seen[e.apply(r)] = true;
            }
            for h in &self.stab {
                let a = h.compose(&self.transversal[r]);
                if s.gens.iter().all(|g| t.contains(&g.conjugate_by(&a))) {
                    return true;
                }
            }
        }
        false
    }
}

/// Regular subgroups of a transitive group `A`, one per conjugacy class in `A`.
pub fn regular_subgroups(a: &PermGroup) -> Result<Vec<PermGroup>, GroupError> {
    let n = a.degree();
    if n > REGULAR_DEGREE_BOUND {
        return Err(GroupError::ScaleBound {
            what: "degree",
            value: n as u64,
            bound: REGULAR_DEGREE_BOUND as u64,
        });
    }
    if n == 0 || !a.is_transitive() {
        return Err(GroupError::Intransitive);
    }
    a.check_order_bound(ELEMENT_BOUND)?;
    let chain = a.rebased(&[0]);
    let transversal: Vec<Permutation> = chain.levels.first().map_or_else(
        || vec![Permutation::identity(n)],
        |l| l.transversal.iter().map(|t| t.clone().unwrap()).collect(),
    );
    let ctx = Context {
        n,
        stab: a.stabilizer(0)?.elements()?,
        transversal,
    };

    let mut classes: HashMap<(usize, Vec<u64>), Vec<Semiregular>> = HashMap::new();
    let mut stack = vec![Semiregular::trivial(n)];
    let mut found = Vec::new();
    while let Some(s) = stack.pop() {
        if s.order() == n {
            found.push(s);
            continue;
        }
        let target = (0..n).find(|&p| s.by_image[p] == NONE).unwrap();
        let candidates: Vec<Permutation> = ctx
            .stab
            .iter()
            .map(|h| h.compose(&ctx.transversal[target]))
            .collect();
        let extended: Vec<Option<Semiregular>> = par::map(&candidates, |x| s.extend(x));
        let mut keys = std::collections::HashSet::new();
        for t in extended.into_iter().flatten() {
            if n % t.order() != 0 || !keys.insert(t.key()) {
                continue;
            }
            let bucket = classes.entry(t.invariant()).or_default();
            if par::find_first(bucket, |r| ctx.conjugate(&t, r)).is_some() {
                continue;
            }
            bucket.push(t.clone());
            stack.push(t);
        }
    }
    found
        .into_iter()
        .map(|s| PermGroup::new(n, s.gens))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s3_has_one_class() {
        let r = regular_subgroups(&PermGroup::symmetric(3)).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].size(), 3);
    }

    #[test]
    fn s4_has_cyclic_and_klein_classes() {
        let r = regular_subgroups(&PermGroup::symmetric(4)).unwrap();
        assert_eq!(r.len(), 2);
        let mut exps: Vec<u64> = r
            .iter()
            .map(|g| g.elements().unwrap().iter().map(|x| x.order()).max().unwrap())
            .collect();
        exps.sort();
        assert_eq!(exps, vec![2, 4]);
    }

    #[test]
    fn regular_group_is_its_own_answer() {
        let r = regular_subgroups(&PermGroup::cyclic(6)).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].size(), 6);
    }

    #[test]
    fn rejects_intransitive() {
        let g = PermGroup::new(4, vec![Permutation::parse_cycles(4, "(0,1)").unwrap()]).unwrap();
        assert!(matches!(regular_subgroups(&g), Err(GroupError::Intransitive)));
    }
}
