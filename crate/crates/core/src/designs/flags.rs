//! Actions on blocks and flags, flag-transitivity and local actions.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{check_automorphism_group, verify_2design, DesignError, IncidenceStructure};
use crate::perm::Permutation;
use crate::permgrp::{GroupError, PermGroup};
use crate::recognize::{recognize_shape, GroupShape};

/// Induced action on block indices.
pub fn block_action(g: &PermGroup, d: &IncidenceStructure) -> Result<PermGroup, DesignError> {
    check_automorphism_group(g, d)?;
    Ok(g.map_generators(d.b(), |s| d.block_permutation(s).expect("automorphism")))
}

/// Induced action on flags, with the flag list giving the point order.
pub fn flag_action(
    g: &PermGroup,
    d: &IncidenceStructure,
) -> Result<(PermGroup, Vec<(usize, usize)>), DesignError> {
    check_automorphism_group(g, d)?;
    let flags = d.flags();
    let index: HashMap<(usize, usize), usize> =
        flags.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    let on_flags = g.map_generators(flags.len(), |s| {
        let bp = d.block_permutation(s).expect("automorphism");
        let images = flags
            .iter()
            .map(|&(x, b)| index[&(s.apply(x), bp.apply(b))])
            .collect();
        Permutation::from_images(images).expect("bijection on flags")
    });
    Ok((on_flags, flags))
}

fn order_of(g: &PermGroup) -> Result<u64, DesignError> {
    Ok(g.check_order_bound(u64::MAX)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlagReport {
    pub flags: usize,
    pub group_order: u64,
    pub flag_transitive: bool,
    pub flag_regular: bool,
    /// `G_x` is transitive on the blocks through `x`, for every point `x`.
    pub locally_transitive: bool,
    pub point_transitive: bool,
    pub block_transitive: bool,
}

/// Flag-transitivity is computed three ways (one orbit on flags; `G`
/// transitive on blocks with `G_B` transitive on `B`; `G` transitive on
/// points with `G_x` transitive on the blocks through `x`) and, for
/// block-transitive groups, flag-regularity four ways (regular on flags;
/// `G_x` regular on the blocks through `x`; `G_B` regular on `B`;
/// flag-transitive with `|G| = vr`). Disagreement is an error.
pub fn flag_report(g: &PermGroup, d: &IncidenceStructure) -> Result<FlagReport, DesignError> {
    let (on_flags, flags) = flag_action(g, d)?;
    let order = order_of(g)?;
    let on_blocks = block_action(g, d)?;
    let point_transitive = g.is_transitive();
    let block_transitive = d.b() > 0 && on_blocks.is_transitive();

    let by_flags = !flags.is_empty() && on_flags.is_transitive();
    let (gb0, on_b0) = induced_on_block(g, d, 0)?;
    let (gx0, on_x0) = induced_on_point(g, d, 0)?;
    let by_blocks = block_transitive && on_b0.is_transitive();
    let by_points = point_transitive && on_x0.is_transitive();
    if by_flags != by_blocks || by_flags != by_points {
        return Err(DesignError::CriteriaDisagree {
            what: "flag-transitivity",
            values: vec![by_flags, by_blocks, by_points],
        });
    }

    let mut locally_transitive = true;
    for orbit in g.orbits() {
        let x = orbit[0];
        if !induced_on_point(g, d, x)?.1.is_transitive() {
            locally_transitive = false;
            break;
        }
    }

    let mut flag_regular = false;
    if block_transitive {
        let (x0, b0) = flags[0];
        let flag_stab = g.stabilizer(x0)?.setwise_stabilizer(d.block(b0))?;
        let regular_on_flags = by_flags && flag_stab.is_trivial();
        // A transitive action is regular iff the stabilizer order equals the
        // degree, which also forces faithfulness.
        let point_regular = point_transitive
            && on_x0.is_transitive()
            && order_of(&gx0)? == on_x0.degree() as u64;
        let block_regular = on_b0.is_transitive() && order_of(&gb0)? == on_b0.degree() as u64;
        let by_order = by_flags && order == flags.len() as u64;
        let values = vec![regular_on_flags, point_regular, block_regular, by_order];
        if values.iter().any(|&c| c != values[0]) {
            return Err(DesignError::CriteriaDisagree {
                what: "flag-regularity",
                values,
            });
        }
        flag_regular = values[0];
    }

    Ok(FlagReport {
        flags: flags.len(),
        group_order: order,
        flag_transitive: by_flags,
        flag_regular,
        locally_transitive,
        point_transitive,
        block_transitive,
    })
}

#[derive(Clone)]
pub struct LocalAction {
    /// On the blocks through `x` (listed by [`IncidenceStructure::blocks_through`])
    /// or on the points of `B` in increasing order.
    pub induced: PermGroup,
    pub kernel_order: u64,
    pub faithful: bool,
    pub shape: GroupShape,
}

fn local(stabilizer: &PermGroup, induced: PermGroup) -> Result<LocalAction, DesignError> {
    let kernel_order = order_of(stabilizer)? / order_of(&induced)?;
    let shape = recognize_shape(&induced)?;
    Ok(LocalAction {
        induced,
        kernel_order,
        faithful: kernel_order == 1,
        shape,
    })
}

/// `G_x` on the blocks through `x`.
pub fn local_point_action(g: &PermGroup, d: &IncidenceStructure, x: usize) -> Result<LocalAction, DesignError> {
    let (gx, induced) = induced_on_point(g, d, x)?;
    local(&gx, induced)
}

fn induced_on_point(
    g: &PermGroup,
    d: &IncidenceStructure,
    x: usize,
) -> Result<(PermGroup, PermGroup), DesignError> {
    if x >= d.v() {
        return Err(DesignError::PointOutOfRange { point: x, v: d.v() });
    }
    let gx = g.stabilizer(x)?;
    let through = d.blocks_through(x);
    let pos: HashMap<usize, usize> = through.iter().enumerate().map(|(i, &b)| (b, i)).collect();
    let induced = gx.map_generators(through.len(), |s| {
        let bp = d.block_permutation(s).expect("automorphism");
        Permutation::from_images(through.iter().map(|&b| pos[&bp.apply(b)]).collect())
            .expect("stabilizer permutes the blocks through x")
    });
    Ok((gx, induced))
}

/// `G_B` on the points of block `block`.
pub fn local_block_action(
    g: &PermGroup,
    d: &IncidenceStructure,
    block: usize,
) -> Result<LocalAction, DesignError> {
    let (gb, induced) = induced_on_block(g, d, block)?;
    local(&gb, induced)
}

fn induced_on_block(
    g: &PermGroup,
    d: &IncidenceStructure,
    block: usize,
) -> Result<(PermGroup, PermGroup), DesignError> {
    if block >= d.b() {
        return Err(GroupError::PointOutOfRange { point: block, degree: d.b() }.into());
    }
    let gb = g.setwise_stabilizer(d.block(block))?;
    let induced = gb.restrict(d.block(block)).expect("stabilizer fixes the block");
    Ok((gb, induced))
}

/// `|G| < |G_x|^3` at the point `x`; returns the two orders and the verdict.
pub fn cubic_bound(g: &PermGroup, x: usize) -> Result<(u64, u64, bool), DesignError> {
    let n = order_of(g)? as u128;
    let s = order_of(&g.stabilizer(x)?)? as u128;
    Ok((n as u64, s as u64, n < s * s * s))
}

/// `r |Γ ∩ B| = λ |Γ|` for every nontrivial `G_x`-orbit `Γ` and every block
/// `B` through `x`. Returns the violating `(Γ, B)` pairs as (orbit
/// representative, block index).
pub fn davies_check(
    g: &PermGroup,
    d: &IncidenceStructure,
    x: usize,
) -> Result<Vec<(usize, usize)>, DesignError> {
    let params = verify_2design(d)?;
    if !flag_report(g, d)?.flag_transitive {
        return Err(DesignError::NotFlagTransitive);
    }
    let gx = g.stabilizer(x)?;
    let mut bad = Vec::new();
    for orbit in gx.orbits() {
        if orbit.len() == 1 && orbit[0] == x {
            continue;
        }
        let gamma = super::mask_of(&orbit);
        for b in d.blocks_through(x) {
            let meet = (gamma & d.masks()[b]).count_ones() as u64;
            if params.r * meet != params.lambda * orbit.len() as u64 {
                bad.push((orbit[0], b));
            }
        }
    }
    Ok(bad)
}
