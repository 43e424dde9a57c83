//! Incidence structures and 2-designs.

pub mod automorphisms;
pub mod flags;
pub mod io;
pub mod params;
pub mod symmetric;

use std::collections::HashMap;

use thiserror::Error;

use crate::perm::Permutation;
use crate::permgrp::{GroupError, PermGroup};

pub use automorphisms::design_automorphisms;
pub use flags::{block_action, flag_action, flag_report, local_block_action, local_point_action, FlagReport, LocalAction};
pub use params::{check_admissible, verify_2design, Admissibility, DesignParams};

/// Point sets are stored as `u128` masks.
pub const MAX_POINTS: usize = 128;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DesignError {
    #[error("{v} points exceeds the supported maximum of {max}")]
    TooManyPoints { v: usize, max: usize },
    #[error("point {point} out of range for {v} points")]
    PointOutOfRange { point: usize, v: usize },
    #[error("block {block:?} repeats a point")]
    RepeatedPoint { block: Vec<usize> },
    #[error("block {block:?} occurs more than once")]
    DuplicateBlock { block: Vec<usize> },
    #[error("design needs at least two points and one block")]
    Degenerate,
    #[error("block {index} has size {found}, expected {expected}")]
    UnequalBlockSizes {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("pair {pair:?} lies in {found} blocks, expected {expected}")]
    NonConstantPairCount {
        pair: (usize, usize),
        expected: usize,
        found: usize,
    },
    #[error("no pair of points lies in a block")]
    ZeroLambda,
    #[error("generator {generator} maps block {block:?} outside the design")]
    NotAutomorphism {
        generator: usize,
        block: Vec<usize>,
    },
    #[error("design is not symmetric ({v} points, {b} blocks)")]
    NotSymmetric { v: usize, b: usize },
    #[error("group is not flag-transitive on the design")]
    NotFlagTransitive,
    #[error("the equivalent criteria for {what} disagree: {values:?}")]
    CriteriaDisagree { what: &'static str, values: Vec<bool> },
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IncidenceStructure {
    v: usize,
    blocks: Vec<Vec<usize>>,
    masks: Vec<u128>,
}

#[inline]
pub fn mask_of(points: &[usize]) -> u128 {
    points.iter().fold(0u128, |m, &p| m | (1u128 << p))
}

pub fn points_of(mask: u128) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    let mut m = mask;
    while m != 0 {
        let p = m.trailing_zeros() as usize;
        out.push(p);
        m &= m - 1;
    }
    out
}

#[inline]
pub fn image_mask(g: &Permutation, mask: u128) -> u128 {
    let mut out = 0u128;
    let mut m = mask;
    while m != 0 {
        let p = m.trailing_zeros() as usize;
        out |= 1u128 << g.apply(p);
        m &= m - 1;
    }
    out
}

impl IncidenceStructure {
    /// Sorts every block and the block list. Repeated blocks are an error.
    pub fn new(v: usize, blocks: Vec<Vec<usize>>) -> Result<Self, DesignError> {
        if v > MAX_POINTS {
            return Err(DesignError::TooManyPoints { v, max: MAX_POINTS });
        }
        let mut sorted = Vec::with_capacity(blocks.len());
        for mut b in blocks {
            if let Some(&p) = b.iter().find(|&&p| p >= v) {
                return Err(DesignError::PointOutOfRange { point: p, v });
            }
            b.sort_unstable();
            if b.windows(2).any(|w| w[0] == w[1]) {
                return Err(DesignError::RepeatedPoint { block: b });
            }
            sorted.push(b);
        }
        sorted.sort();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(DesignError::DuplicateBlock { block: w[0].clone() });
        }
        let masks = sorted.iter().map(|b| mask_of(b)).collect();
        Ok(IncidenceStructure {
            v,
            blocks: sorted,
            masks,
        })
    }

    pub fn from_masks(v: usize, masks: impl IntoIterator<Item = u128>) -> Result<Self, DesignError> {
        Self::new(v, masks.into_iter().map(points_of).collect())
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn b(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block(&self, i: usize) -> &[usize] {
        &self.blocks[i]
    }

    pub fn masks(&self) -> &[u128] {
        &self.masks
    }

    pub fn block_index_map(&self) -> HashMap<u128, usize> {
        self.masks.iter().enumerate().map(|(i, &m)| (m, i)).collect()
    }

    /// Index of the block with the given point set.
    pub fn find_block(&self, mask: u128) -> Option<usize> {
        self.masks.binary_search_by(|m| points_cmp(*m, mask)).ok()
    }

    pub fn is_incident(&self, x: usize, block: usize) -> bool {
        self.masks[block] >> x & 1 == 1
    }

    /// Indices of the blocks through `x`.
    pub fn blocks_through(&self, x: usize) -> Vec<usize> {
        (0..self.b()).filter(|&i| self.is_incident(x, i)).collect()
    }

    /// Incident `(point, block)` pairs, ordered by block then point.
    pub fn flags(&self) -> Vec<(usize, usize)> {
        self.blocks
            .iter()
            .enumerate()
            .flat_map(|(i, b)| b.iter().map(move |&x| (x, i)))
            .collect()
    }

    pub fn is_automorphism(&self, g: &Permutation) -> bool {
        g.degree() == self.v
            && self
                .masks
                .iter()
                .all(|&m| self.find_block(image_mask(g, m)).is_some())
    }

    /// Permutation of block indices induced by an automorphism.
    pub fn block_permutation(&self, g: &Permutation) -> Option<Permutation> {
        let images = self
            .masks
            .iter()
            .map(|&m| self.find_block(image_mask(g, m)))
            .collect::<Option<Vec<_>>>()?;
        Permutation::from_images(images).ok()
    }

    /// Blocks replaced by their complements.
    pub fn complement(&self) -> Result<Self, DesignError> {
        let all = if self.v == 128 { u128::MAX } else { (1u128 << self.v) - 1 };
        Self::from_masks(self.v, self.masks.iter().map(|&m| all & !m))
    }

    /// Points and blocks exchanged: point `i` of the dual is block `i`, and
    /// block `x` of the dual is the set of blocks through point `x`.
    pub fn dual(&self) -> Result<Self, DesignError> {
        Self::new(self.b(), (0..self.v).map(|x| self.blocks_through(x)).collect())
    }

    /// Points of block `i` fixed by `g`.
    pub fn fixed_points_on_block(&self, g: &Permutation, i: usize) -> usize {
        self.blocks[i].iter().filter(|&&x| g.fixes(x)).count()
    }

    /// Blocks mapped to themselves by `g`.
    pub fn fixed_blocks(&self, g: &Permutation) -> Vec<usize> {
        (0..self.b())
            .filter(|&i| image_mask(g, self.masks[i]) == self.masks[i])
            .collect()
    }
}

/// Order on masks matching the lexicographic order of sorted point lists.
fn points_cmp(a: u128, b: u128) -> std::cmp::Ordering {
    let (mut x, mut y) = (a, b);
    loop {
        match (x == 0, y == 0) {
            (true, true) => return std::cmp::Ordering::Equal,
            (true, false) => return std::cmp::Ordering::Less,
            (false, true) => return std::cmp::Ordering::Greater,
            _ => {}
        }
        let (px, py) = (x.trailing_zeros(), y.trailing_zeros());
        if px != py {
            return px.cmp(&py);
        }
        x &= x - 1;
        y &= y - 1;
    }
}

/// The orbit of `base` under `G`, as a design.
pub fn design_from_base_block(g: &PermGroup, base: &[usize]) -> Result<IncidenceStructure, DesignError> {
    let v = g.degree();
    if v > MAX_POINTS {
        return Err(DesignError::TooManyPoints { v, max: MAX_POINTS });
    }
    if let Some(&p) = base.iter().find(|&&p| p >= v) {
        return Err(DesignError::PointOutOfRange { point: p, v });
    }
    let start = mask_of(base);
    let mut seen = std::collections::HashSet::new();
    seen.insert(start);
    let mut orbit = vec![start];
    let mut head = 0;
    while head < orbit.len() {
        let m = orbit[head];
        head += 1;
        for s in g.generators() {
            let img = image_mask(s, m);
            if seen.insert(img) {
                orbit.push(img);
            }
        }
    }
    IncidenceStructure::from_masks(v, orbit)
}

/// Whether `G` maps blocks to blocks; on failure, the first bad generator
/// and block.
pub fn check_automorphism_group(g: &PermGroup, d: &IncidenceStructure) -> Result<(), DesignError> {
    for (i, s) in g.generators().iter().enumerate() {
        if s.degree() != d.v() {
            return Err(GroupError::Perm(crate::perm::PermError::DegreeMismatch {
                expected: d.v(),
                found: s.degree(),
            })
            .into());
        }
        for (j, &m) in d.masks().iter().enumerate() {
            if d.find_block(image_mask(s, m)).is_none() {
                return Err(DesignError::NotAutomorphism {
                    generator: i,
                    block: d.block(j).to_vec(),
                });
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn fano() -> IncidenceStructure {
        IncidenceStructure::new(
            7,
            (0..7).map(|i| vec![i, (i + 1) % 7, (i + 3) % 7]).collect(),
        )
        .unwrap()
    }

    #[test]
    fn construction_normalizes_and_rejects() {
        let d = IncidenceStructure::new(4, vec![vec![2, 0], vec![1, 3]]).unwrap();
        assert_eq!(d.blocks(), &[vec![0, 2], vec![1, 3]]);
        assert!(matches!(
            IncidenceStructure::new(4, vec![vec![0, 1], vec![1, 0]]),
            Err(DesignError::DuplicateBlock { .. })
        ));
        assert!(matches!(
            IncidenceStructure::new(4, vec![vec![0, 4]]),
            Err(DesignError::PointOutOfRange { point: 4, .. })
        ));
        assert!(matches!(
            IncidenceStructure::new(4, vec![vec![0, 0]]),
            Err(DesignError::RepeatedPoint { .. })
        ));
    }

    #[test]
    fn mask_order_matches_block_order() {
        let d = fano();
        for (i, &m) in d.masks().iter().enumerate() {
            assert_eq!(d.find_block(m), Some(i));
        }
        assert_eq!(d.find_block(mask_of(&[0, 1, 2])), None);
    }

    #[test]
    fn dual_and_complement() {
        let d = fano();
        let dual = d.dual().unwrap();
        assert_eq!(dual.b(), 7);
        assert!(dual.blocks().iter().all(|b| b.len() == 3));
        let c = d.complement().unwrap();
        assert!(c.blocks().iter().all(|b| b.len() == 4));
        let rot = Permutation::from_images((0..7).map(|i| (i + 1) % 7).collect()).unwrap();
        assert!(d.is_automorphism(&rot));
        assert!(d.is_automorphism(&Permutation::identity(7)));
        let swap = Permutation::parse_cycles(7, "(0,1)").unwrap();
        assert!(!d.is_automorphism(&swap));
    }

    #[test]
    fn orbit_of_base_block() {
        let g = PermGroup::cyclic(7);
        let d = design_from_base_block(&g, &[0, 1, 3]).unwrap();
        assert_eq!(d, fano());
        assert!(check_automorphism_group(&g, &d).is_ok());
        let bad = PermGroup::symmetric(7);
        assert!(matches!(
            check_automorphism_group(&bad, &d),
            Err(DesignError::NotAutomorphism { .. })
        ));
    }
}
