//! Naming small groups: cyclic, dihedral, abelian, or a fingerprint.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::galois::prime_factors;
use crate::perm::Permutation;
use crate::permgrp::subgroups::{centre, conjugacy_classes, derived_subgroup};
use crate::permgrp::{coset_action, GroupError, PermGroup};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RecognizeError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("group is not transitive")]
    Intransitive,
    #[error("group is regular, and regular groups are not Frobenius groups")]
    Regular,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IsoFingerprint {
    pub order: u64,
    /// `(element order, count)` pairs.
    pub element_orders: Vec<(u64, u64)>,
    /// `(class size, count)` pairs.
    pub class_sizes: Vec<(u64, u64)>,
    pub centre_order: u64,
    pub derived_order: u64,
    pub abelianization: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "shape")]
pub enum GroupShape {
    /// Cyclic of order `n`.
    #[serde(rename = "Z")]
    Cyclic { n: u64 },
    /// Dihedral of order `2n`, `n >= 3`.
    #[serde(rename = "D")]
    Dihedral { n: u64 },
    /// `Z_p^d` with `d >= 2`.
    #[serde(rename = "E")]
    ElementaryAbelian { p: u64, d: u32 },
    /// Non-cyclic abelian with the given invariant factors, each dividing the next.
    #[serde(rename = "A")]
    Abelian { invariants: Vec<u64> },
    #[serde(rename = "O")]
    Other { fingerprint: Box<IsoFingerprint> },
}

impl GroupShape {
    pub fn dihedral_of_order(order: u64) -> Self {
        GroupShape::Dihedral { n: order / 2 }
    }

    pub fn is_dihedral(&self) -> bool {
        matches!(self, GroupShape::Dihedral { .. })
    }

    pub fn is_abelian(&self) -> bool {
        !matches!(self, GroupShape::Dihedral { .. } | GroupShape::Other { .. })
    }
}

impl fmt::Display for GroupShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupShape::Cyclic { n } => write!(f, "Z{n}"),
            GroupShape::Dihedral { n } => write!(f, "D{}", 2 * n),
            GroupShape::ElementaryAbelian { p, d } => write!(f, "{p}^{d}"),
            GroupShape::Abelian { invariants } => {
                let parts: Vec<String> = invariants.iter().map(|k| format!("Z{k}")).collect();
                write!(f, "{}", parts.join("x"))
            }
            GroupShape::Other { fingerprint } => write!(f, "group of order {}", fingerprint.order),
        }
    }
}

fn commutes(a: &Permutation, b: &Permutation) -> bool {
    a.compose(b) == b.compose(a)
}

pub fn is_abelian(g: &PermGroup) -> bool {
    let gens = g.generators();
    (0..gens.len()).all(|i| (i + 1..gens.len()).all(|j| commutes(&gens[i], &gens[j])))
}

/// Invariant factors of an abelian group from its element orders:
/// `log_p #{x : x^(p^j) = 1}` equals the number of cyclic p-parts of
/// order at least `p^i`, summed over `i <= j`.
fn abelian_invariants(order_counts: &BTreeMap<u64, u64>, order: u64) -> Vec<u64> {
    let mut primary: Vec<Vec<u64>> = Vec::new();
    for p in prime_factors(order) {
        let mut exps = Vec::new();
        let mut prev = 0u32;
        let mut j = 1u32;
        loop {
            let pj = p.pow(j);
            let count: u64 = order_counts
                .iter()
                .filter(|(&o, _)| pj % o == 0)
                .map(|(_, &c)| c)
                .sum();
            let logc = count.ilog(p);
            let at_least_j = logc - prev;
            if at_least_j == 0 {
                break;
            }
            exps.push(at_least_j);
            prev = logc;
            j += 1;
        }
        // exps[i] = number of parts >= p^(i+1); turn into part sizes.
        let mut parts = Vec::new();
        for (i, &c) in exps.iter().enumerate() {
            let next = exps.get(i + 1).copied().unwrap_or(0);
            for _ in 0..(c - next) {
                parts.push(p.pow(i as u32 + 1));
            }
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        primary.push(parts);
    }
    let width = primary.iter().map(Vec::len).max().unwrap_or(0);
    let mut inv: Vec<u64> = (0..width)
        .map(|i| primary.iter().map(|ps| ps.get(i).copied().unwrap_or(1)).product())
        .collect();
    inv.reverse();
    inv
}

fn order_counts(elements: &[Permutation]) -> BTreeMap<u64, u64> {
    let mut m = BTreeMap::new();
    for x in elements {
        *m.entry(x.order()).or_insert(0) += 1;
    }
    m
}

/// Invariant factors of an abelian group.
pub fn abelian_invariants_of(g: &PermGroup) -> Result<Vec<u64>, GroupError> {
    let elements = g.elements()?;
    Ok(abelian_invariants(&order_counts(&elements), g.size()))
}

pub fn recognize_shape(g: &PermGroup) -> Result<GroupShape, GroupError> {
    let elements = g.elements()?;
    let order = elements.len() as u64;
    let counts = order_counts(&elements);
    if is_abelian(g) {
        let inv = abelian_invariants(&counts, order);
        return Ok(match inv.len() {
            0 => GroupShape::Cyclic { n: 1 },
            1 => GroupShape::Cyclic { n: inv[0] },
            d if inv.iter().all(|&k| k == prime_factors(order)[0]) => {
                GroupShape::ElementaryAbelian {
                    p: inv[0],
                    d: d as u32,
                }
            }
            _ => GroupShape::Abelian { invariants: inv },
        });
    }
    if order % 2 == 0 && order >= 6 {
        let n = order / 2;
        if let Some(r) = elements.iter().find(|x| x.order() == n) {
            let rinv = r.inverse();
            let rotations = PermGroup::new(g.degree(), vec![r.clone()])?;
            let found = elements.iter().any(|t| {
                t.order() == 2 && !rotations.contains(t) && r.conjugate_by(t) == rinv
            });
            if found {
                return Ok(GroupShape::Dihedral { n });
            }
        }
    }
    Ok(GroupShape::Other {
        fingerprint: Box::new(fingerprint(g)?),
    })
}

pub fn fingerprint(g: &PermGroup) -> Result<IsoFingerprint, GroupError> {
    let elements = g.elements()?;
    let order = elements.len() as u64;
    let element_orders: Vec<(u64, u64)> = order_counts(&elements).into_iter().collect();
    let mut sizes = BTreeMap::new();
    for c in conjugacy_classes(g)? {
        *sizes.entry(c.len() as u64).or_insert(0) += 1;
    }
    let derived = derived_subgroup(g);
    let quotient = coset_action(g, &derived)?.image;
    let abelianization = abelian_invariants_of(&quotient)?;
    Ok(IsoFingerprint {
        order,
        element_orders,
        class_sizes: sizes.into_iter().collect(),
        centre_order: centre(g)?.size(),
        derived_order: derived.size(),
        abelianization,
    })
}

/// Transitive with nontrivial point stabilizers in which only the identity
/// fixes two points.
pub fn is_frobenius(g: &PermGroup) -> Result<bool, RecognizeError> {
    if g.degree() == 0 || !g.is_transitive() {
        return Err(RecognizeError::Intransitive);
    }
    let stab = g.stabilizer(0)?;
    if stab.is_trivial() {
        return Err(RecognizeError::Regular);
    }
    let s = stab.size() as usize;
    Ok(stab
        .orbits()
        .iter()
        .all(|o| o.len() == s || o == &[0]))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum IsoVerdict {
    Yes,
    No,
    Undecided,
}

/// Largest order for which an explicit isomorphism is searched for.
pub const ISO_SEARCH_BOUND: u64 = 200;

/// Cayley table of a small group.
struct Table {
    elements: Vec<Permutation>,
    mul: Vec<Vec<u16>>,
    orders: Vec<u64>,
}

impl Table {
    fn new(g: &PermGroup) -> Result<Self, GroupError> {
        let mut elements = g.elements()?;
        elements.sort();
        let index: HashMap<&Permutation, u16> = elements
            .iter()
            .enumerate()
            .map(|(i, x)| (x, i as u16))
            .collect();
        let mul = elements
            .iter()
            .map(|a| elements.iter().map(|b| index[&a.compose(b)]).collect())
            .collect();
        let orders = elements.iter().map(Permutation::order).collect();
        Ok(Table {
            elements,
            mul,
            orders,
        })
    }

    fn identity(&self) -> usize {
        self.elements.iter().position(Permutation::is_identity).unwrap()
    }

    fn closure_size(&self, gens: &[usize]) -> usize {
        let mut seen = vec![false; self.elements.len()];
        let id = self.identity();
        seen[id] = true;
        let mut queue = vec![id];
        while let Some(x) = queue.pop() {
            for &s in gens {
                let y = self.mul[x][s] as usize;
                if !seen[y] {
                    seen[y] = true;
                    queue.push(y);
                }
            }
        }
        seen.iter().filter(|&&b| b).count()
    }

    /// A generating set of at most two elements, if one exists.
    fn two_generators(&self) -> Option<Vec<usize>> {
        let n = self.elements.len();
        let mut by_order: Vec<usize> = (0..n).collect();
        by_order.sort_by_key(|&i| std::cmp::Reverse(self.orders[i]));
        for &a in &by_order {
            if self.orders[a] as usize == n {
                return Some(vec![a]);
            }
        }
        for (ia, &a) in by_order.iter().enumerate() {
            for &b in &by_order[ia..] {
                if self.closure_size(&[a, b]) == n {
                    return Some(vec![a, b]);
                }
            }
        }
        None
    }

    /// Extends `gens[i] -> images[i]` along the Cayley graph; returns whether
    /// it is a well-defined bijective homomorphism.
    fn extends_to_isomorphism(&self, other: &Table, gens: &[usize], images: &[usize]) -> bool {
        let n = self.elements.len();
        let mut phi = vec![usize::MAX; n];
        let mut used = vec![false; n];
        let id = self.identity();
        phi[id] = other.identity();
        used[phi[id]] = true;
        let mut queue = vec![id];
        while let Some(x) = queue.pop() {
            for (&s, &t) in gens.iter().zip(images) {
                let y = self.mul[x][s] as usize;
                let img = other.mul[phi[x]][t] as usize;
                if phi[y] == usize::MAX {
                    if used[img] {
                        return false;
                    }
                    used[img] = true;
                    phi[y] = img;
                    queue.push(y);
                } else if phi[y] != img {
                    return false;
                }
            }
        }
        phi.iter().all(|&v| v != usize::MAX)
    }
}

/// `No` when fingerprints differ; `Yes` for abelian groups with equal
/// invariants or when an explicit isomorphism is found on two generators;
/// `Undecided` otherwise.
pub fn same_iso_class(g: &PermGroup, h: &PermGroup) -> Result<IsoVerdict, GroupError> {
    let (fg, fh) = (fingerprint(g)?, fingerprint(h)?);
    if fg != fh {
        return Ok(IsoVerdict::No);
    }
    if is_abelian(g) {
        // Equal element-order statistics determine a finite abelian group.
        return Ok(IsoVerdict::Yes);
    }
    if fg.order > ISO_SEARCH_BOUND {
        return Ok(IsoVerdict::Undecided);
    }
    let (tg, th) = (Table::new(g)?, Table::new(h)?);
    let Some(gens) = tg.two_generators() else {
        return Ok(IsoVerdict::Undecided);
    };
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&s| {
            (0..th.elements.len())
                .filter(|&t| th.orders[t] == tg.orders[s])
                .collect()
        })
        .collect();
    let found = match gens.len() {
        1 => candidates[0]
            .iter()
            .any(|&a| tg.extends_to_isomorphism(&th, &gens, &[a])),
        _ => candidates[0].iter().any(|&a| {
            candidates[1]
                .iter()
                .any(|&b| tg.extends_to_isomorphism(&th, &gens, &[a, b]))
        }),
    };
    // Every isomorphism sends the generators somewhere in the candidate
    // lists, so a failed exhaustive search refutes isomorphism.
    Ok(if found { IsoVerdict::Yes } else { IsoVerdict::No })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::{dihedral, paley_frobenius};

    fn p(n: usize, s: &str) -> Permutation {
        Permutation::parse_cycles(n, s).unwrap()
    }

    #[test]
    fn basic_shapes() {
        assert_eq!(
            recognize_shape(&PermGroup::symmetric(3)).unwrap(),
            GroupShape::Dihedral { n: 3 }
        );
        let v4 = PermGroup::new(4, vec![p(4, "(0,1)(2,3)"), p(4, "(0,2)(1,3)")]).unwrap();
        assert_eq!(
            recognize_shape(&v4).unwrap(),
            GroupShape::ElementaryAbelian { p: 2, d: 2 }
        );
        assert_eq!(
            recognize_shape(&PermGroup::cyclic(6)).unwrap(),
            GroupShape::Cyclic { n: 6 }
        );
        assert_eq!(
            recognize_shape(&PermGroup::trivial(3)).unwrap(),
            GroupShape::Cyclic { n: 1 }
        );
        let z2z4 = PermGroup::new(6, vec![p(6, "(0,1,2,3)"), p(6, "(4,5)")]).unwrap();
        assert_eq!(
            recognize_shape(&z2z4).unwrap(),
            GroupShape::Abelian { invariants: vec![2, 4] }
        );
        assert!(matches!(
            recognize_shape(&PermGroup::symmetric(4)).unwrap(),
            GroupShape::Other { .. }
        ));
    }

    #[test]
    fn dihedral_family() {
        for n in 3..=20 {
            assert_eq!(
                recognize_shape(&dihedral(n).unwrap()).unwrap(),
                GroupShape::Dihedral { n: n as u64 }
            );
        }
    }

    #[test]
    fn json_form() {
        let s = serde_json::to_string(&GroupShape::Dihedral { n: 9 }).unwrap();
        assert_eq!(s, r#"{"shape":"D","n":9}"#);
        assert_eq!(GroupShape::Dihedral { n: 9 }.to_string(), "D18");
        assert_eq!(GroupShape::Cyclic { n: 6 }.to_string(), "Z6");
    }

    #[test]
    fn frobenius() {
        assert!(is_frobenius(&paley_frobenius(7).unwrap()).unwrap());
        assert!(is_frobenius(&dihedral(9).unwrap()).unwrap());
        assert!(!is_frobenius(&dihedral(8).unwrap()).unwrap());
        assert!(is_frobenius(&PermGroup::symmetric(3)).unwrap());
        assert_eq!(is_frobenius(&PermGroup::cyclic(5)), Err(RecognizeError::Regular));
        let intrans = PermGroup::new(4, vec![p(4, "(0,1)")]).unwrap();
        assert_eq!(is_frobenius(&intrans), Err(RecognizeError::Intransitive));
    }

    #[test]
    fn isomorphism_classes() {
        let z6 = PermGroup::cyclic(6);
        let s3 = PermGroup::symmetric(3);
        assert_eq!(same_iso_class(&z6, &s3).unwrap(), IsoVerdict::No);
        assert_eq!(same_iso_class(&dihedral(3).unwrap(), &s3).unwrap(), IsoVerdict::Yes);
        // D12 in its natural action and as S3 x Z2 on 5 points.
        let d12 = dihedral(6).unwrap();
        let s3z2 = PermGroup::new(5, vec![p(5, "(0,1,2)"), p(5, "(0,1)"), p(5, "(3,4)")]).unwrap();
        assert_eq!(same_iso_class(&d12, &s3z2).unwrap(), IsoVerdict::Yes);
        // Q8 and D8 share element orders only partially; compare with Z2^3 too.
        let q8 = PermGroup::new(
            8,
            vec![p(8, "(0,1,2,3)(4,5,6,7)"), p(8, "(0,4,2,6)(1,7,3,5)")],
        )
        .unwrap();
        assert_eq!(q8.size(), 8);
        assert_eq!(same_iso_class(&q8, &dihedral(4).unwrap()).unwrap(), IsoVerdict::No);
        let e8a = PermGroup::new(6, vec![p(6, "(0,1)"), p(6, "(2,3)"), p(6, "(4,5)")]).unwrap();
        let e8b = PermGroup::new(8, vec![p(8, "(0,1)(2,3)(4,5)(6,7)"), p(8, "(0,2)(1,3)(4,6)(5,7)"), p(8, "(0,4)(1,5)(2,6)(3,7)")]).unwrap();
        assert_eq!(same_iso_class(&e8a, &e8b).unwrap(), IsoVerdict::Yes);
    }

    #[test]
    fn abelian_invariants_oracle() {
        // Z2 x Z4 x Z3 x Z9 on 2+4+3+9 points.
        let g = PermGroup::new(
            18,
            vec![
                p(18, "(0,1)"),
                p(18, "(2,3,4,5)"),
                p(18, "(6,7,8)"),
                p(18, "(9,10,11,12,13,14,15,16,17)"),
            ],
        )
        .unwrap();
        assert_eq!(abelian_invariants_of(&g).unwrap(), vec![6, 36]);
    }
}
