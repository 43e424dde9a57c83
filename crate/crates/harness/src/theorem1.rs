//! The symmetric 2-(16,6,2) and 2-(15,8,4) designs and their flag-regular
//! subgroups: every such group is found as a regular subgroup of the full
//! automorphism group acting on flags.

use anyhow::{ensure, Result};
use designforge_core::constructors::{difference_set_design, pg32_plane_complements, z2_4_from_bits};
use designforge_core::designs::{
    block_action, design_automorphisms, flag_action, flag_report, local_block_action, local_point_action,
    verify_2design,
};
use designforge_core::permgrp::{are_conjugate, is_primitive, regular_subgroups};
use designforge_core::recognize::{recognize_shape, same_iso_class, IsoVerdict};
use designforge_core::{GroupShape, IncidenceStructure, PermGroup, Permutation};
use serde_json::{json, Value};

use crate::report::{timed, VerificationReport};

/// The biplane developed from `{0, 1, 2, 4, 8, 15}` in `Z_2^4`.
pub fn biplane16() -> Result<IncidenceStructure> {
    let set = z2_4_from_bits(&["0000", "0001", "0010", "0100", "1000", "1111"]);
    Ok(difference_set_design(2, 4, &set)?)
}

/// Flag-regular subgroups of `Aut(D)`, one per conjugacy class, acting on
/// points.
pub fn flag_regular_groups(d: &IncidenceStructure, aut: &PermGroup) -> Result<Vec<PermGroup>> {
    let (on_flags, flags) = flag_action(aut, d)?;
    let mut first_flag = vec![usize::MAX; d.v()];
    for (i, &(x, _)) in flags.iter().enumerate().rev() {
        first_flag[x] = i;
    }
    // An automorphism is determined by where it sends the flags, and the
    // point of a flag's image is the image of the flag's point.
    let to_points = |s: &Permutation| {
        Permutation::from_images((0..d.v()).map(|x| flags[s.apply(first_flag[x])].0).collect())
            .expect("flag action is induced by a point permutation")
    };
    Ok(regular_subgroups(&on_flags)?
        .iter()
        .map(|r| r.map_generators(d.v(), to_points))
        .collect())
}

/// Structure of one flag-transitive group on a symmetric design.
pub struct GroupSummary {
    pub point_stabilizer: GroupShape,
    pub block_stabilizer: GroupShape,
    pub point_local: GroupShape,
    pub block_local: GroupShape,
    pub faithful: bool,
    pub conjugate: bool,
    pub point_primitive: bool,
    pub block_primitive: bool,
    pub flag_regular: bool,
    pub order: u64,
}

impl GroupSummary {
    pub fn of(g: &PermGroup, d: &IncidenceStructure) -> Result<Self> {
        let flags = flag_report(g, d)?;
        ensure!(flags.flag_transitive, "group is not flag-transitive");
        let gx = g.stabilizer(0)?;
        let gb = g.setwise_stabilizer(d.block(0))?;
        let pl = local_point_action(g, d, 0)?;
        let bl = local_block_action(g, d, 0)?;
        Ok(GroupSummary {
            point_stabilizer: recognize_shape(&gx)?,
            block_stabilizer: recognize_shape(&gb)?,
            point_local: pl.shape,
            block_local: bl.shape,
            faithful: pl.faithful && bl.faithful,
            conjugate: are_conjugate(g, &gx, &gb)?.is_some(),
            point_primitive: is_primitive(g)?,
            block_primitive: is_primitive(&block_action(g, d)?)?,
            flag_regular: flags.flag_regular,
            order: flags.group_order,
        })
    }

    /// The four stabilizer and local-action shapes agree.
    pub fn shapes_agree(&self) -> bool {
        let s = &self.point_stabilizer;
        *s == self.block_stabilizer && *s == self.point_local && *s == self.block_local
    }

    pub fn to_json(&self, g: &PermGroup) -> Value {
        json!({
            "order": self.order,
            "generators": g.generators().iter().map(ToString::to_string).collect::<Vec<_>>(),
            "point_stabilizer": self.point_stabilizer.to_string(),
            "block_stabilizer": self.block_stabilizer.to_string(),
            "point_local": self.point_local.to_string(),
            "block_local": self.block_local.to_string(),
            "faithful": self.faithful,
            "stabilizers_conjugate": self.conjugate,
            "point_primitive": self.point_primitive,
            "block_primitive": self.block_primitive,
            "flag_regular": self.flag_regular,
        })
    }
}

/// Partition into isomorphism classes; `None` if some pair is undecided.
pub fn iso_classes(groups: &[PermGroup]) -> Result<Option<Vec<Vec<usize>>>> {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    'next: for (i, g) in groups.iter().enumerate() {
        for class in classes.iter_mut() {
            match same_iso_class(g, &groups[class[0]])? {
                IsoVerdict::Yes => {
                    class.push(i);
                    continue 'next;
                }
                IsoVerdict::No => {}
                IsoVerdict::Undecided => return Ok(None),
            }
        }
        classes.push(vec![i]);
    }
    Ok(Some(classes))
}

/// Stabilizer counts stated for the five point-imprimitive groups.
pub const STATED_SPLIT: (usize, usize) = (3, 2);

/// Everything about the 16-point groups except the D6/Z6 split, which is
/// written to `split` and reported separately.
fn biplane_claim(r: &mut VerificationReport, split: &mut Option<(usize, usize)>) -> Result<()> {
    let d = biplane16()?;
    let p = verify_2design(&d)?;
    let aut = design_automorphisms(&d)?;
    r.expect(p.to_string() == "2-(16,6,2)", || json!({ "params": p.to_string() }));
    r.expect(aut.size() == 11520, || json!({ "aut_order": aut.size() }));
    let regular = flag_regular_groups(&d, &aut)?;
    let mut imprimitive = Vec::new();
    let mut summaries = Vec::new();
    for g in &regular {
        let s = GroupSummary::of(g, &d)?;
        if !s.point_primitive {
            imprimitive.push(g.clone());
            summaries.push(s);
        }
    }
    let mut d6 = 0;
    let mut z6 = 0;
    for (g, s) in imprimitive.iter().zip(&summaries) {
        let w = s.to_json(g);
        // |G_x| = 2p forces the 2-(16,6,2) biplane with G imprimitive on
        // points and blocks.
        let ok = s.order == 96
            && s.flag_regular
            && s.faithful
            && s.conjugate
            && s.shapes_agree()
            && !s.block_primitive;
        r.expect(ok, || w.clone());
        match s.point_stabilizer {
            GroupShape::Dihedral { n: 3 } => d6 += 1,
            GroupShape::Cyclic { n: 6 } => z6 += 1,
            _ => {
                r.refute(json!({ "unexpected_stabilizer": s.point_stabilizer.to_string() }));
            }
        }
        r.witness(w);
    }
    let classes = iso_classes(&imprimitive)?;
    r.witness(json!({
        "aut_order": aut.size(),
        "flag_regular_conjugacy_classes": regular.len(),
        "point_imprimitive_conjugacy_classes": imprimitive.len(),
        "isomorphism_classes": classes.as_ref().map(Vec::len),
        "stabilizer_counts": { "D6": d6, "Z6": z6 },
    }));
    *split = Some((d6, z6));
    match classes {
        Some(c) => {
            r.expect(c.len() == 5, || json!({ "isomorphism_classes": c }));
        }
        None => {
            r.skip("isomorphism test undecided for some pair; class count not asserted");
        }
    }
    Ok(())
}

fn pg32_claim(r: &mut VerificationReport) -> Result<()> {
    let d = pg32_plane_complements()?;
    let p = verify_2design(&d)?;
    let aut = design_automorphisms(&d)?;
    r.expect(p.to_string() == "2-(15,8,4)", || json!({ "params": p.to_string() }));
    r.expect(aut.size() == 20160, || json!({ "aut_order": aut.size() }));
    let regular = flag_regular_groups(&d, &aut)?;
    let mut found = 0;
    for g in &regular {
        let s = GroupSummary::of(g, &d)?;
        let w = s.to_json(g);
        let good = s.order == 120
            && s.point_stabilizer == GroupShape::Dihedral { n: 4 }
            && s.conjugate
            && s.faithful
            && !s.point_primitive
            && !s.block_primitive;
        if good {
            found += 1;
        }
        r.witness(w);
    }
    r.witness(json!({ "aut_order": aut.size(), "flag_regular_conjugacy_classes": regular.len(), "with_d8_stabilizer": found }));
    r.expect(found >= 1, || json!({ "with_d8_stabilizer": 0 }));
    Ok(())
}

pub fn verify_theorem1_examples() -> Vec<VerificationReport> {
    let mut split = None;
    let biplane = timed("theorem1/biplane-16", |r| biplane_claim(r, &mut split));
    let split = timed("theorem1/biplane-16/stabilizer-split", |r| {
        let (d6, z6) = split.ok_or_else(|| anyhow::anyhow!("groups not computed"))?;
        let (e6, ez6) = STATED_SPLIT;
        let w = json!({ "found": { "D6": d6, "Z6": z6 }, "stated": { "D6": e6, "Z6": ez6 } });
        if (d6, z6) == STATED_SPLIT {
            r.witness(w);
        } else {
            r.refute(w);
        }
        Ok(())
    });
    vec![biplane, split, timed("theorem1/pg32-complements-15", pg32_claim)]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn iso_classes_of_small_groups() {
        let c4 = PermGroup::cyclic(4);
        let v4 = PermGroup::new(4, vec![
            Permutation::parse_cycles(4, "(0,1)(2,3)").unwrap(),
            Permutation::parse_cycles(4, "(0,2)(1,3)").unwrap(),
        ])
        .unwrap();
        let c = iso_classes(&[c4.clone(), v4, c4]).unwrap().unwrap();
        assert_eq!(c, vec![vec![0, 2], vec![1]]);
    }
}
