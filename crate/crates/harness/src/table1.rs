//! Primitive actions of PSL₂(q) and PGL₂(q) with dihedral point stabilizers.
//!
//! Each listed row is rebuilt as a coset action and checked for primitivity
//! and for the exact dihedral stabilizer. The rows that the side conditions
//! exclude (the dihedral subgroup is not maximal) are checked as well, by
//! confirming that their coset action is imprimitive.

use anyhow::{ensure, Result};
use designforge_core::constructors::psl2;
use designforge_core::permgrp::{coset_action, intersection, is_primitive};
use designforge_core::recognize::recognize_shape;
use designforge_core::GroupShape;
use serde_json::json;

use crate::actions::{ActionSpec, Linear, Subgroup};
use crate::report::{timed, VerificationReport};

pub const DEFAULT_Q: [u64; 7] = [4, 5, 7, 8, 9, 11, 13];

/// Largest q accepted without the explicit override.
pub const Q_LIMIT: u64 = 13;

/// Beyond this even the override is refused: element lists grow as q³.
pub const Q_HARD_LIMIT: u64 = 49;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Row {
    /// The action is primitive with a dihedral stabilizer of this order.
    Listed { order: u64 },
    /// A side condition excludes the row; the action must be imprimitive.
    Excluded,
}

/// Rows for one q, in a fixed order: PSL₂ nonsplit, split, Borel, then
/// PGL₂ nonsplit and split for odd q.
pub fn rows(q: u64) -> Vec<(ActionSpec, Row)> {
    let odd = q % 2 == 1;
    let d = if odd { 2 } else { 1 };
    let mut out = Vec::new();
    let psl = |s| ActionSpec::new(Linear::Psl, q, s);
    let pgl = |s| ActionSpec::new(Linear::Pgl, q, s);
    let row = |listed: bool, order: u64| if listed { Row::Listed { order } } else { Row::Excluded };
    out.push((psl(Subgroup::Nonsplit), row(!matches!(q, 7 | 9), 2 * (q + 1) / d)));
    out.push((psl(Subgroup::Split), row(!matches!(q, 5 | 7 | 9 | 11), 2 * (q - 1) / d)));
    if q == 5 {
        out.push((psl(Subgroup::Borel), Row::Listed { order: 10 }));
    }
    if odd {
        out.push((pgl(Subgroup::Nonsplit), Row::Listed { order: 2 * (q + 1) }));
        out.push((pgl(Subgroup::Split), row(q != 5, 2 * (q - 1))));
    }
    out
}

/// PGL₂(q) rows whose stabilizer meets PSL₂(q) in a non-maximal subgroup.
fn socle_not_maximal(spec: &ActionSpec) -> bool {
    matches!(
        (spec.q, spec.subgroup),
        (7, Subgroup::Nonsplit | Subgroup::Split) | (9, Subgroup::Nonsplit | Subgroup::Split) | (11, Subgroup::Split)
    )
}

fn subgroup_name(s: Subgroup) -> &'static str {
    match s {
        Subgroup::Split => "split",
        Subgroup::Nonsplit => "nonsplit",
        Subgroup::Borel => "borel",
    }
}

fn check_row(spec: &ActionSpec, row: Row, r: &mut VerificationReport) -> Result<()> {
    let a = spec.build()?;
    let order = a.projective.group.size();
    let stab_order = a.subgroup.size();
    ensure!(a.kernel_order == 1, "coset action has kernel of order {}", a.kernel_order);
    ensure!(a.degree() as u64 * stab_order == order, "degree {} is not the index", a.degree());
    let primitive = is_primitive(&a.group)?;
    let shape = recognize_shape(&a.group.stabilizer(0)?)?;
    let mut w = json!({
        "group": a.name,
        "subgroup": subgroup_name(spec.subgroup),
        "order": order,
        "degree": a.degree(),
        "stabilizer": shape.to_string(),
        "primitive": primitive,
    });
    match row {
        Row::Listed { order: expected } => {
            let want = GroupShape::dihedral_of_order(expected);
            r.expect(primitive && shape == want, || w.clone());
            if spec.linear == Linear::Pgl {
                // The stabilizer meets the socle in a subgroup of index 2,
                // which is maximal in the socle except in a few small cases.
                let t = psl2(spec.q)?.group;
                ensure!(t.is_subgroup_of(&a.projective.group), "PSL2({}) not inside PGL2({})", spec.q, spec.q);
                let tx = intersection(&a.subgroup, &t)?;
                let tx_maximal = is_primitive(&coset_action(&t, &tx)?.image)?;
                w["socle_stabilizer"] = json!(recognize_shape(&tx)?.to_string());
                w["socle_stabilizer_maximal"] = json!(tx_maximal);
                r.expect(
                    2 * tx.size() == stab_order && tx_maximal != socle_not_maximal(spec),
                    || w.clone(),
                );
            }
        }
        Row::Excluded => {
            r.expect(!primitive, || w.clone());
        }
    }
    r.witness(w);
    Ok(())
}

pub fn verify_table1(qs: &[u64]) -> Vec<VerificationReport> {
    let mut out = Vec::new();
    for &q in qs {
        for (spec, row) in rows(q) {
            let kind = match row {
                Row::Listed { order } => format!("D{order}"),
                Row::Excluded => "excluded".to_string(),
            };
            let lin = match spec.linear {
                Linear::Psl => "PSL2",
                Linear::Pgl => "PGL2",
            };
            let claim = format!("table1/{lin}({q})/{}/{kind}", subgroup_name(spec.subgroup));
            out.push(timed(claim, |r| check_row(&spec, row, r)));
        }
    }
    out
}
