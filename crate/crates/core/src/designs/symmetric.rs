//! Checks specific to symmetric designs: fixed points against fixed blocks,
//! involutions, axes and centres, and fixed-point bounds for automorphisms of
//! order at least `λ`.

use serde::{Deserialize, Serialize};

use super::{image_mask, verify_2design, DesignError, DesignParams, IncidenceStructure};
use crate::par;
use crate::perm::Permutation;
use crate::permgrp::{are_conjugate, PermGroup};

fn symmetric_params(d: &IncidenceStructure) -> Result<DesignParams, DesignError> {
    let p = verify_2design(d)?;
    if !p.is_symmetric() {
        return Err(DesignError::NotSymmetric { v: d.v(), b: d.b() });
    }
    Ok(p)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetricReport {
    pub params: DesignParams,
    pub dual_params: DesignParams,
    pub elements_scanned: u64,
    /// Elements with unequal numbers of fixed points and fixed blocks.
    pub balance_violations: Vec<String>,
    /// Some `g` with `G_x^g = G_B`, for `x = 0` and the first block.
    pub stabilizers_conjugate: bool,
}

/// Dual structure, fixed-point balance over every element of `G`, and
/// conjugacy of a point stabilizer with a block stabilizer.
pub fn symmetric_checks(d: &IncidenceStructure, g: &PermGroup) -> Result<SymmetricReport, DesignError> {
    let params = symmetric_params(d)?;
    super::check_automorphism_group(g, d)?;
    let dual_params = verify_2design(&d.dual()?)?;
    let elements = g.elements()?;
    let bad: Vec<Option<String>> = par::map(&elements, |x| {
        (x.fixed_point_count() != d.fixed_blocks(x).len()).then(|| x.to_string())
    });
    let gx = g.stabilizer(0)?;
    let gb = g.setwise_stabilizer(d.block(0))?;
    let stabilizers_conjugate = are_conjugate(g, &gx, &gb)?.is_some();
    Ok(SymmetricReport {
        params,
        dual_params,
        elements_scanned: elements.len() as u64,
        balance_violations: bad.into_iter().flatten().collect(),
        stabilizers_conjugate,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Outcome {
    Holds,
    Violated,
    /// The hypotheses of the check are not satisfied.
    NotApplicable,
}

impl Outcome {
    fn from_bool(ok: bool) -> Self {
        if ok {
            Outcome::Holds
        } else {
            Outcome::Violated
        }
    }
}

/// For an involution with a fixed point, at least `k/λ + 1` fixed points
/// when `k` and `λ` are both even and at least `(k-1)/λ + 1` otherwise.
pub fn involution_fix_bound(d: &IncidenceStructure, g: &Permutation) -> Result<Outcome, DesignError> {
    let p = symmetric_params(d)?;
    if g.order() != 2 || !p.is_nontrivial() {
        return Ok(Outcome::NotApplicable);
    }
    let fix = g.fixed_point_count() as u64;
    if fix == 0 {
        return Ok(Outcome::NotApplicable);
    }
    let top = if p.k % 2 == 0 && p.lambda % 2 == 0 { p.k } else { p.k - 1 };
    // fix >= top/λ + 1, cleared of denominators.
    Ok(Outcome::from_bool((fix - 1) * p.lambda >= top))
}

/// Blocks fixed pointwise by a non-identity `g`.
pub fn axes(d: &IncidenceStructure, g: &Permutation) -> Vec<usize> {
    if g.is_identity() {
        return Vec::new();
    }
    (0..d.b())
        .filter(|&i| d.block(i).iter().all(|&x| g.fixes(x)))
        .collect()
}

/// Points all of whose blocks are fixed by a non-identity `g`.
pub fn centres(d: &IncidenceStructure, g: &Permutation) -> Vec<usize> {
    if g.is_identity() {
        return Vec::new();
    }
    (0..d.v())
        .filter(|&x| {
            d.blocks_through(x)
                .into_iter()
                .all(|b| image_mask(g, d.masks()[b]) == d.masks()[b])
        })
        .collect()
}

/// The axis of `g`, if it has exactly one. Use [`axial_checks`] to see
/// whether more than one occurs.
pub fn axis(d: &IncidenceStructure, g: &Permutation) -> Option<usize> {
    match axes(d, g).as_slice() {
        [b] => Some(*b),
        _ => None,
    }
}

pub fn centre(d: &IncidenceStructure, g: &Permutation) -> Option<usize> {
    match centres(d, g).as_slice() {
        [x] => Some(*x),
        _ => None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxialReport {
    pub axes: Vec<usize>,
    pub centres: Vec<usize>,
    /// At most one axis and at most one centre.
    pub unique: bool,
    /// An axis with a fixed point off it forces that point to be a centre,
    /// and a centre with a fixed block not through it forces that block to
    /// be an axis.
    pub axial_central: Outcome,
}

pub fn axial_checks(d: &IncidenceStructure, g: &Permutation) -> Result<AxialReport, DesignError> {
    symmetric_params(d)?;
    let ax = axes(d, g);
    let ce = centres(d, g);
    let unique = ax.len() <= 1 && ce.len() <= 1;
    let mut applicable = false;
    let mut ok = true;
    for &b in &ax {
        for x in g.fixed_points() {
            if !d.is_incident(x, b) {
                applicable = true;
                ok &= ce.contains(&x);
            }
        }
    }
    for &x in &ce {
        for b in d.fixed_blocks(g) {
            if !d.is_incident(x, b) {
                applicable = true;
                ok &= ax.contains(&b);
            }
        }
    }
    let axial_central = if applicable {
        Outcome::from_bool(ok)
    } else {
        Outcome::NotApplicable
    };
    Ok(AxialReport {
        axes: ax,
        centres: ce,
        unique,
        axial_central,
    })
}

/// Whether `G_B^B` is semiregular on `B` for the first block.
pub fn block_action_semiregular(g: &PermGroup, d: &IncidenceStructure) -> Result<bool, DesignError> {
    let gb = g.setwise_stabilizer(d.block(0))?;
    let on_b = gb.restrict(d.block(0)).expect("stabilizer fixes the block");
    Ok(on_b.fixes_at_most(0))
}

/// For block-transitive `G` with `λ > 1` and `G_B^B` semiregular, an element
/// of order `λ` fixes at most `min(⌊k/λ⌋⌊(k-1)/λ⌋ + 1, ⌊k/λ⌋(λ-1) + 1)`
/// points and one of larger order fixes at most one.
pub fn fixed_points_core_bound(
    d: &IncidenceStructure,
    g: &PermGroup,
    x: &Permutation,
) -> Result<Outcome, DesignError> {
    let p = symmetric_params(d)?;
    super::check_automorphism_group(g, d)?;
    if p.lambda <= 1
        || !super::block_action(g, d)?.is_transitive()
        || !block_action_semiregular(g, d)?
    {
        return Ok(Outcome::NotApplicable);
    }
    Ok(core_bound(&p, x))
}

/// The bound itself, once the group hypotheses are known to hold.
pub fn core_bound(p: &DesignParams, x: &Permutation) -> Outcome {
    let o = x.order();
    let fix = x.fixed_point_count() as u64;
    let (k, l) = (p.k, p.lambda);
    if o < l {
        Outcome::NotApplicable
    } else if o == l {
        let bound = (k / l * ((k - 1) / l) + 1).min(k / l * (l - 1) + 1);
        Outcome::from_bool(fix <= bound)
    } else {
        Outcome::from_bool(fix <= 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::designs::{design_automorphisms, design_from_base_block};

    fn fano() -> IncidenceStructure {
        design_from_base_block(&PermGroup::cyclic(7), &[0, 1, 3]).unwrap()
    }

    #[test]
    fn fano_full_scan() {
        let d = fano();
        let a = design_automorphisms(&d).unwrap();
        let r = symmetric_checks(&d, &a).unwrap();
        assert_eq!(r.elements_scanned, 168);
        assert!(r.balance_violations.is_empty());
        assert_eq!(r.dual_params, r.params);
        // Point and line stabilizers of PSL_3(2) are both S_4 but are only
        // swapped by the graph automorphism.
        assert!(!r.stabilizers_conjugate);
        let mut elations = 0;
        for x in a.elements().unwrap() {
            let rep = axial_checks(&d, &x).unwrap();
            assert!(rep.unique);
            assert_ne!(rep.axial_central, Outcome::Violated);
            assert_ne!(involution_fix_bound(&d, &x).unwrap(), Outcome::Violated);
            if rep.axes.len() == 1 {
                assert_eq!(rep.centres.len(), 1);
                elations += 1;
            }
        }
        // One elation for each of the 21 incident (centre, axis) pairs.
        assert_eq!(elations, 21);
    }

    #[test]
    fn identity_has_no_axis() {
        let d = fano();
        assert_eq!(axis(&d, &Permutation::identity(7)), None);
        assert_eq!(centre(&d, &Permutation::identity(7)), None);
    }

    #[test]
    fn non_symmetric_rejected() {
        let mut blocks = Vec::new();
        for x in 0..5 {
            for y in x + 1..5 {
                blocks.push(vec![x, y]);
            }
        }
        let d = IncidenceStructure::new(5, blocks).unwrap();
        assert!(matches!(
            involution_fix_bound(&d, &Permutation::identity(5)),
            Err(DesignError::NotSymmetric { .. })
        ));
    }

    #[test]
    fn hypothesis_not_met_is_reported() {
        // lambda = 1 for the Fano plane.
        let d = fano();
        let a = design_automorphisms(&d).unwrap();
        let x = Permutation::identity(7);
        assert_eq!(fixed_points_core_bound(&d, &a, &x).unwrap(), Outcome::NotApplicable);
    }
}
