//! Full automorphism group of an incidence structure by backtracking over
//! `Sym(v)`.
//!
//! After fixing the images of the points `0..m`, each block meets this prefix
//! in some trace, and an automorphism maps the multiset of traces onto the
//! multiset of traces on the image prefix. Comparing these multisets prunes
//! almost every branch once a handful of points are placed.

use super::{image_mask, DesignError, IncidenceStructure};
use crate::permgrp::chain::StabChain;
use crate::permgrp::search::{subgroup_generators, Property};
use crate::permgrp::{GroupError, PermGroup};
use crate::perm::Permutation;

/// Largest point count accepted by [`design_automorphisms`].
pub const AUTOMORPHISM_POINT_BOUND: usize = 64;

struct TraceProp<'a> {
    d: &'a IncidenceStructure,
}

impl Property for TraceProp<'_> {
    fn partial_ok(&self, _base: &[usize], images: &[usize]) -> bool {
        // The base of the symmetric chain is 0, 1, 2, ...
        let m = images.len();
        let prefix: u128 = if m == 128 { u128::MAX } else { (1u128 << m) - 1 };
        let target = images.iter().fold(0u128, |acc, &p| acc | 1u128 << p);
        let mut mapped: Vec<u128> = Vec::with_capacity(self.d.b());
        let mut wanted: Vec<u128> = Vec::with_capacity(self.d.b());
        for &blk in self.d.masks() {
            let mut t = blk & prefix;
            let mut img = 0u128;
            while t != 0 {
                let p = t.trailing_zeros() as usize;
                img |= 1u128 << images[p];
                t &= t - 1;
            }
            mapped.push(img);
            wanted.push(blk & target);
        }
        mapped.sort_unstable();
        wanted.sort_unstable();
        mapped == wanted
    }

    fn accept(&self, g: &Permutation) -> bool {
        self.d
            .masks()
            .iter()
            .all(|&m| self.d.find_block(image_mask(g, m)).is_some())
    }
}

/// All point permutations mapping blocks to blocks.
pub fn design_automorphisms(d: &IncidenceStructure) -> Result<PermGroup, DesignError> {
    let v = d.v();
    if v > AUTOMORPHISM_POINT_BOUND {
        return Err(GroupError::ScaleBound {
            what: "point count",
            value: v as u64,
            bound: AUTOMORPHISM_POINT_BOUND as u64,
        }
        .into());
    }
    let chain = StabChain::symmetric(v);
    let gens = subgroup_generators(&chain, &TraceProp { d });
    Ok(PermGroup::build(v, gens, &[]))
}
