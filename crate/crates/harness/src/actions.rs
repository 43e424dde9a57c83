//! The permutation groups the harness works with, as actions on cosets of
//! their dihedral (or Borel) subgroups.

use anyhow::{Context, Result};
use designforge_core::constructors::{
    nonsplit_torus_dihedral, pgl2, point_stabilizer, psl2, torus_pair_dihedral, ProjectiveGroup,
};
use designforge_core::permgrp::coset_action;
use designforge_core::PermGroup;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Linear {
    Psl,
    Pgl,
}

/// Which subgroup of PSL₂(q) or PGL₂(q) is the point stabilizer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Subgroup {
    /// Normalizer of the split torus, dihedral of order `2(q-1)/d`.
    Split,
    /// Normalizer of the nonsplit torus, dihedral of order `2(q+1)/d`.
    Nonsplit,
    /// Stabilizer of a point of the projective line.
    Borel,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ActionSpec {
    pub linear: Linear,
    pub q: u64,
    pub subgroup: Subgroup,
}

pub struct Action {
    pub spec: ActionSpec,
    pub name: String,
    /// The abstract group, on the projective line.
    pub projective: ProjectiveGroup,
    /// The subgroup, on the projective line.
    pub subgroup: PermGroup,
    /// The group acting on cosets of the subgroup; point 0 is the subgroup.
    pub group: PermGroup,
    /// Order of the core of the subgroup.
    pub kernel_order: u64,
}

impl ActionSpec {
    pub const fn new(linear: Linear, q: u64, subgroup: Subgroup) -> Self {
        ActionSpec { linear, q, subgroup }
    }

    pub fn projective(&self) -> Result<ProjectiveGroup> {
        match self.linear {
            Linear::Psl => psl2(self.q),
            Linear::Pgl => pgl2(self.q),
        }
        .with_context(|| format!("constructing the group for q = {}", self.q))
    }

    pub fn build(&self) -> Result<Action> {
        let projective = self.projective()?;
        let subgroup = match self.subgroup {
            Subgroup::Split => torus_pair_dihedral(&projective),
            Subgroup::Nonsplit => nonsplit_torus_dihedral(&projective)?,
            Subgroup::Borel => point_stabilizer(&projective),
        };
        let ca = coset_action(&projective.group, &subgroup)?;
        Ok(Action {
            spec: *self,
            name: projective.name(),
            projective,
            subgroup,
            group: ca.image,
            kernel_order: ca.kernel_order,
        })
    }
}

impl Action {
    pub fn degree(&self) -> usize {
        self.group.degree()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn psl2_8_on_28_points() {
        let a = ActionSpec::new(Linear::Psl, 8, Subgroup::Nonsplit).build().unwrap();
        assert_eq!(a.degree(), 28);
        assert_eq!(a.group.size(), 504);
        assert_eq!(a.kernel_order, 1);
        assert_eq!(a.group.stabilizer(0).unwrap().size(), 18);
    }
}
