//! Finite permutation groups backed by a base and strong generating set.

pub mod blocks;
pub(crate) mod chain;
pub mod coset;
pub mod io;
pub mod regular;
pub(crate) mod search;
pub mod subgroups;

use std::fmt;

use num_bigint::BigUint;
use thiserror::Error;

use crate::perm::{PermError, Permutation};
use chain::StabChain;
use search::Property;

pub use blocks::{is_primitive, minimal_block_system};
pub use coset::{coset_action, CosetAction};
pub use regular::regular_subgroups;
pub use subgroups::{are_conjugate, intersection, normal_closure, normalizer};

/// Largest group whose elements are ever listed explicitly.
pub const ELEMENT_BOUND: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("group of order {order} exceeds the element bound {bound}")]
    OrderBoundExceeded { order: String, bound: u64 },
    #[error("not a subgroup: generator {index} does not lie in the group")]
    NotSubgroup { index: usize },
    #[error("group is not transitive")]
    Intransitive,
    #[error("{what} is {value}, above the bound {bound}")]
    ScaleBound {
        what: &'static str,
        value: u64,
        bound: u64,
    },
}

#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: StabChain,
    order: BigUint,
}

impl PermGroup {
    /// The group generated by `gens`, all of degree `degree`.
    pub fn new(degree: usize, gens: Vec<Permutation>) -> Result<Self, GroupError> {
        for g in &gens {
            if g.degree() != degree {
                return Err(PermError::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                }
                .into());
            }
        }
        Ok(Self::build(degree, gens, &[]))
    }

    /// Like [`new`](Self::new) but from raw image lists.
    pub fn from_image_lists(degree: usize, lists: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        let gens = lists
            .into_iter()
            .map(Permutation::from_images)
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(degree, gens)
    }

    pub fn trivial(degree: usize) -> Self {
        Self::build(degree, Vec::new(), &[])
    }

    pub fn symmetric(n: usize) -> Self {
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(Permutation::from_cycles(n, &[(0..n).collect()]).unwrap());
            gens.push(Permutation::from_cycles(n, &[vec![0, 1]]).unwrap());
        }
        Self::from_chain(n, gens, StabChain::symmetric(n))
    }

    pub fn cyclic(n: usize) -> Self {
        let gens = if n >= 2 {
            vec![Permutation::from_cycles(n, &[(0..n).collect()]).unwrap()]
        } else {
            Vec::new()
        };
        Self::build(n, gens, &[])
    }

    pub(crate) fn build(degree: usize, generators: Vec<Permutation>, prefix: &[usize]) -> Self {
        let chain = StabChain::build(degree, &generators, prefix);
        Self::from_chain(degree, generators, chain)
    }

    fn from_chain(degree: usize, generators: Vec<Permutation>, chain: StabChain) -> Self {
        let order = chain
            .orbit_lengths()
            .iter()
            .fold(BigUint::from(1u32), |acc, &l| acc * BigUint::from(l));
        PermGroup {
            degree,
            generators,
            chain,
            order,
        }
    }

    /// Same group, with a chain whose base begins with `prefix`.
    pub(crate) fn rebased(&self, prefix: &[usize]) -> StabChain {
        let mut seen = vec![false; self.degree];
        let prefix: Vec<usize> = prefix
            .iter()
            .copied()
            .filter(|&p| !std::mem::replace(&mut seen[p], true))
            .collect();
        if self.chain.base.starts_with(&prefix) {
            return self.chain.clone();
        }
        StabChain::build(self.degree, &self.chain.strong, &prefix)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn base(&self) -> &[usize] {
        &self.chain.base
    }

    /// Strong generators level by level: entry `i` generates the pointwise
    /// stabilizer of the first `i` base points.
    pub fn strong_generators(&self) -> Vec<Vec<Permutation>> {
        (0..self.chain.levels.len())
            .map(|i| self.chain.stabilizer_gens(i))
            .collect()
    }

    /// Fundamental orbit lengths along the chain.
    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.chain.orbit_lengths()
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    /// The order when it fits in a `u64`.
    pub fn order_u64(&self) -> Option<u64> {
        u64::try_from(&self.order).ok()
    }

    /// Order as `u64`, for groups known to be small. Panics otherwise.
    pub fn size(&self) -> u64 {
        self.order_u64().expect("group order does not fit in u64")
    }

    pub fn is_trivial(&self) -> bool {
        self.chain.levels.is_empty()
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.chain.contains(g)
    }

    /// Strips `g` through the chain. The residue is the identity iff `g`
    /// lies in the group; the second value is the level where it stopped.
    pub fn sift(&self, g: &Permutation) -> (Permutation, usize) {
        self.chain.sift_from(g.clone(), 0)
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.generators.iter().all(|g| other.contains(g))
    }

    pub(crate) fn check_subgroup_of(&self, other: &PermGroup) -> Result<(), GroupError> {
        if self.degree != other.degree {
            return Err(PermError::DegreeMismatch {
                expected: other.degree,
                found: self.degree,
            }
            .into());
        }
        match self.generators.iter().position(|g| !other.contains(g)) {
            Some(index) => Err(GroupError::NotSubgroup { index }),
            None => Ok(()),
        }
    }

    pub fn same_group(&self, other: &PermGroup) -> bool {
        self.order == other.order && self.is_subgroup_of(other)
    }

    fn check_point(&self, p: usize) -> Result<(), GroupError> {
        if p >= self.degree {
            Err(GroupError::PointOutOfRange {
                point: p,
                degree: self.degree,
            })
        } else {
            Ok(())
        }
    }

    /// Sorted orbit of `p`.
    pub fn orbit(&self, p: usize) -> Result<Vec<usize>, GroupError> {
        self.check_point(p)?;
        let mut seen = vec![false; self.degree];
        seen[p] = true;
        let mut orbit = vec![p];
        let mut head = 0;
        while head < orbit.len() {
            let x = orbit[head];
            head += 1;
            for g in &self.generators {
                let y = g.apply(x);
                if !seen[y] {
                    seen[y] = true;
                    orbit.push(y);
                }
            }
        }
        orbit.sort_unstable();
        Ok(orbit)
    }

    /// Orbits as sorted lists, ordered by smallest point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for p in 0..self.degree {
            if !seen[p] {
                let o = self.orbit(p).unwrap();
                for &x in &o {
                    seen[x] = true;
                }
                out.push(o);
            }
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.degree <= 1 || self.orbit(0).unwrap().len() == self.degree
    }

    pub fn stabilizer(&self, p: usize) -> Result<PermGroup, GroupError> {
        self.pointwise_stabilizer(&[p])
    }

    pub fn pointwise_stabilizer(&self, points: &[usize]) -> Result<PermGroup, GroupError> {
        for &p in points {
            self.check_point(p)?;
        }
        let chain = self.rebased(points);
        let depth = {
            let mut seen = vec![false; self.degree];
            points
                .iter()
                .filter(|&&p| !std::mem::replace(&mut seen[p], true))
                .count()
        };
        Ok(Self::build(self.degree, chain.stabilizer_gens(depth), &[]))
    }

    /// `{g : S^g = S}`.
    pub fn setwise_stabilizer(&self, set: &[usize]) -> Result<PermGroup, GroupError> {
        for &p in set {
            self.check_point(p)?;
        }
        let mut member = vec![false; self.degree];
        for &p in set {
            member[p] = true;
        }
        let mut prefix: Vec<usize> = set.to_vec();
        prefix.sort_unstable();
        prefix.dedup();
        let chain = self.rebased(&prefix);
        let gens = search::subgroup_generators(&chain, &SetwiseProp { member: &member });
        Ok(Self::build(self.degree, gens, &[]))
    }

    /// Group generated by `{g in self : pred(g)}`, which the caller asserts is
    /// a subgroup. `partial` may reject partial base images early; it gets the
    /// base and the images of its first few points.
    pub fn subgroup_by_property(
        &self,
        prefix: &[usize],
        partial: impl Fn(&[usize], &[usize]) -> bool,
        pred: impl Fn(&Permutation) -> bool,
    ) -> PermGroup {
        let chain = self.rebased(prefix);
        let prop = FnProp { partial, pred };
        let gens = search::subgroup_generators(&chain, &prop);
        Self::build(self.degree, gens, &[])
    }

    /// Some element satisfying `pred`, using `partial` for pruning as in
    /// [`subgroup_by_property`](Self::subgroup_by_property).
    pub fn find_element(
        &self,
        prefix: &[usize],
        partial: impl Fn(&[usize], &[usize]) -> bool,
        pred: impl Fn(&Permutation) -> bool,
    ) -> Option<Permutation> {
        let chain = self.rebased(prefix);
        search::find_element(&chain, &FnProp { partial, pred })
    }

    /// Fails when the order exceeds `bound`.
    pub fn check_order_bound(&self, bound: u64) -> Result<u64, GroupError> {
        match self.order_u64() {
            Some(o) if o <= bound => Ok(o),
            _ => Err(GroupError::OrderBoundExceeded {
                order: self.order.to_string(),
                bound,
            }),
        }
    }

    /// Every element, in a fixed order, provided the order is at most
    /// [`ELEMENT_BOUND`].
    pub fn elements(&self) -> Result<Vec<Permutation>, GroupError> {
        self.check_order_bound(ELEMENT_BOUND)?;
        Ok(self.chain.elements())
    }

    /// A uniformly random element when `pick(n)` is uniform on `0..n`.
    pub fn random_element(&self, pick: impl FnMut(usize) -> usize) -> Permutation {
        self.chain.element_from_choices(pick)
    }

    /// `H^g = g^-1 H g`.
    pub fn conjugate(&self, g: &Permutation) -> PermGroup {
        let gens = self.generators.iter().map(|h| h.conjugate_by(g)).collect();
        Self::build(self.degree, gens, &[])
    }

    /// The group induced on an invariant subset; point `subset[i]` becomes `i`.
    /// Returns `None` if the subset is not invariant.
    pub fn restrict(&self, subset: &[usize]) -> Option<PermGroup> {
        let gens = self
            .generators
            .iter()
            .map(|g| g.restrict(subset))
            .collect::<Option<Vec<_>>>()?;
        Some(Self::build(subset.len(), gens, &[]))
    }

    /// Image under a homomorphism given on generators, e.g. an induced action
    /// on some other set of size `degree`.
    pub fn map_generators(
        &self,
        degree: usize,
        f: impl Fn(&Permutation) -> Permutation,
    ) -> PermGroup {
        let gens = self.generators.iter().map(f).collect();
        Self::build(degree, gens, &[])
    }

    /// Adds generators, returning the larger group.
    pub fn extended(&self, extra: &[Permutation]) -> PermGroup {
        let mut gens = self.generators.clone();
        gens.extend(extra.iter().cloned());
        Self::build(self.degree, gens, &[])
    }

    /// Whether every non-identity element fixes at most `k` points, checked on
    /// the chain without listing elements: it suffices that the pointwise
    /// stabilizer of any `k + 1` points is trivial, which is tested through
    /// stabilizers of orbit representatives.
    pub fn fixes_at_most(&self, k: usize) -> bool {
        fn rec(g: &PermGroup, fixed: &mut Vec<usize>, k: usize) -> bool {
            if g.is_trivial() {
                return true;
            }
            if fixed.len() == k + 1 {
                return false;
            }
            let mut seen = vec![false; g.degree];
            for p in 0..g.degree {
                if seen[p] || fixed.contains(&p) {
                    continue;
                }
                for x in g.orbit(p).unwrap() {
                    seen[x] = true;
                }
                fixed.push(p);
                let s = g.stabilizer(p).unwrap();
                let ok = rec(&s, fixed, k);
                fixed.pop();
                if !ok {
                    return false;
                }
            }
            true
        }
        rec(self, &mut Vec::new(), k)
    }
}

struct SetwiseProp<'a> {
    member: &'a [bool],
}

impl Property for SetwiseProp<'_> {
    fn partial_ok(&self, base: &[usize], images: &[usize]) -> bool {
        let j = images.len() - 1;
        self.member[base[j]] == self.member[images[j]]
    }

    fn accept(&self, g: &Permutation) -> bool {
        (0..self.member.len()).all(|p| !self.member[p] || self.member[g.apply(p)])
    }
}

struct FnProp<P, Q> {
    partial: P,
    pred: Q,
}

impl<P: Fn(&[usize], &[usize]) -> bool, Q: Fn(&Permutation) -> bool> Property for FnProp<P, Q> {
    fn partial_ok(&self, base: &[usize], images: &[usize]) -> bool {
        (self.partial)(base, images)
    }

    fn accept(&self, g: &Permutation) -> bool {
        (self.pred)(g)
    }
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "PermGroup(degree {}, order {}, gens {:?})",
            self.degree, self.order, self.generators
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, s: &str) -> Permutation {
        Permutation::parse_cycles(n, s).unwrap()
    }

    /// Closure of the generators by breadth-first multiplication.
    fn brute_closure(n: usize, gens: &[Permutation]) -> Vec<Permutation> {
        let mut set = std::collections::BTreeSet::new();
        let id = Permutation::identity(n);
        set.insert(id.clone());
        let mut queue = vec![id];
        while let Some(x) = queue.pop() {
            for g in gens {
                let y = x.compose(g);
                if set.insert(y.clone()) {
                    queue.push(y);
                }
            }
        }
        set.into_iter().collect()
    }

    #[test]
    fn dihedral_of_order_ten() {
        let g = PermGroup::new(5, vec![p(5, "(0,1,2,3,4)"), p(5, "(1,4)(2,3)")]).unwrap();
        assert_eq!(g.size(), 10);
        assert_eq!(g.orbit(0).unwrap(), vec![0, 1, 2, 3, 4]);
        assert!(g.is_transitive());
    }

    #[test]
    fn empty_generators_give_trivial_group() {
        let g = PermGroup::new(6, vec![]).unwrap();
        assert_eq!(g.size(), 1);
        assert_eq!(g.orbits().len(), 6);
    }

    #[test]
    fn degree_mismatch_is_rejected() {
        let err = PermGroup::new(5, vec![p(4, "(0,1)")]).unwrap_err();
        assert!(matches!(err, GroupError::Perm(PermError::DegreeMismatch { .. })));
        let err = PermGroup::from_image_lists(3, vec![vec![0, 0, 1]]).unwrap_err();
        assert!(matches!(err, GroupError::Perm(PermError::NotBijective { .. })));
    }

    #[test]
    fn orders_match_brute_closure() {
        let cases: Vec<(usize, Vec<Permutation>)> = vec![
            (6, vec![p(6, "(0,1,2,3,4,5)"), p(6, "(0,1)")]),
            (7, vec![p(7, "(0,1,2,3,4,5,6)"), p(7, "(1,2,4)(3,6,5)")]),
            (8, vec![p(8, "(0,1)(2,3)"), p(8, "(0,2)(4,6)"), p(8, "(1,5,7)")]),
            (9, vec![p(9, "(0,1,2)(3,4,5)(6,7,8)"), p(9, "(0,3,6)(1,4,7)")]),
        ];
        for (n, gens) in cases {
            let g = PermGroup::new(n, gens.clone()).unwrap();
            let all = brute_closure(n, &gens);
            assert_eq!(g.size(), all.len() as u64);
            for x in &all {
                assert!(g.contains(x));
            }
            let mut listed = g.elements().unwrap();
            listed.sort();
            assert_eq!(listed, all);
        }
    }

    #[test]
    fn stabilizers() {
        let s5 = PermGroup::symmetric(5);
        assert_eq!(s5.size(), 120);
        assert_eq!(s5.stabilizer(2).unwrap().size(), 24);
        assert_eq!(s5.pointwise_stabilizer(&[0, 1, 2, 3, 4]).unwrap().size(), 1);
        let set = s5.setwise_stabilizer(&[1, 3]).unwrap();
        assert_eq!(set.size(), 12);
        for g in set.elements().unwrap() {
            let mut img = vec![g.apply(1), g.apply(3)];
            img.sort();
            assert_eq!(img, vec![1, 3]);
        }
        let c = PermGroup::cyclic(7);
        assert!(c.stabilizer(3).unwrap().is_trivial());
        assert!(matches!(
            c.stabilizer(7),
            Err(GroupError::PointOutOfRange { .. })
        ));
    }

    #[test]
    fn setwise_stabilizer_matches_filter() {
        let g = PermGroup::new(8, vec![p(8, "(0,1,2,3,4,5,6,7)"), p(8, "(1,7)(2,6)(3,5)"), p(8, "(0,4)")])
            .unwrap();
        for set in [vec![0, 1], vec![0, 2, 5], vec![1, 3, 5, 7], vec![]] {
            let count = g
                .elements()
                .unwrap()
                .iter()
                .filter(|x| {
                    let mut img: Vec<usize> = set.iter().map(|&q| x.apply(q)).collect();
                    img.sort();
                    img == set
                })
                .count() as u64;
            assert_eq!(g.setwise_stabilizer(&set).unwrap().size(), count, "{set:?}");
        }
    }

    #[test]
    fn fixes_at_most_agrees_with_scan() {
        let groups = [
            PermGroup::symmetric(4),
            PermGroup::cyclic(6),
            PermGroup::new(5, vec![p(5, "(0,1,2,3,4)"), p(5, "(1,4)(2,3)")]).unwrap(),
            PermGroup::new(7, vec![p(7, "(0,1,2,3,4,5,6)"), p(7, "(1,2,4)(3,6,5)")]).unwrap(),
        ];
        for g in &groups {
            let max_fix = g
                .elements()
                .unwrap()
                .iter()
                .filter(|x| !x.is_identity())
                .map(|x| x.fixed_point_count())
                .max()
                .unwrap_or(0);
            for k in 0..4 {
                assert_eq!(g.fixes_at_most(k), max_fix <= k, "{g:?} k={k}");
            }
        }
    }
}
