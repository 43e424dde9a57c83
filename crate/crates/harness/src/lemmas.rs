//! Property scans over every constructed (design, group) instance.
//!
//! [`instance_reports`] runs each check whose hypotheses the instance meets
//! and marks the rest skipped, so it also serves user-supplied input.

use anyhow::{ensure, Context, Result};
use designforge_core::constructors::{
    ag24_lines, dihedral, paley_frobenius, quadratic_residues, z2_4_d10,
};
use designforge_core::designs::flags::{cubic_bound, davies_check};
use designforge_core::designs::symmetric::{
    axial_checks, block_action_semiregular, core_bound, involution_fix_bound, symmetric_checks, Outcome,
};
use designforge_core::designs::{
    block_action, design_automorphisms, design_from_base_block, flag_report, local_block_action,
    local_point_action, verify_2design, FlagReport,
};
use designforge_core::permgrp::{are_conjugate, is_primitive, ELEMENT_BOUND};
use designforge_core::recognize::{is_frobenius, recognize_shape};
use designforge_core::{DesignParams, GroupShape, IncidenceStructure, PermGroup, Permutation};
use serde_json::json;

use crate::report::{timed, VerificationReport};
use crate::search::{flag_transitive_design_search, SearchSpec, Strategy, MAX_RANK_DEFAULT};
use crate::{theorem1, theorem2};

pub struct Instance {
    pub label: String,
    pub design: IncidenceStructure,
    pub group: PermGroup,
}

impl Instance {
    fn new(label: impl Into<String>, design: IncidenceStructure, group: PermGroup) -> Self {
        Instance {
            label: label.into(),
            design,
            group,
        }
    }
}

/// What the scans need to know about a flag-transitive symmetric instance.
struct Local {
    params: DesignParams,
    gx: PermGroup,
    gb: PermGroup,
    point_stabilizer: GroupShape,
    block_stabilizer: GroupShape,
    point_local: GroupShape,
    block_local: GroupShape,
    block_faithful: bool,
}

impl Local {
    fn new(d: &IncidenceStructure, g: &PermGroup, params: DesignParams) -> Result<Self> {
        let gx = g.stabilizer(0)?;
        let gb = g.setwise_stabilizer(d.block(0))?;
        let bl = local_block_action(g, d, 0)?;
        Ok(Local {
            params,
            point_stabilizer: recognize_shape(&gx)?,
            block_stabilizer: recognize_shape(&gb)?,
            point_local: local_point_action(g, d, 0)?.shape,
            block_local: bl.shape,
            block_faithful: bl.faithful,
            gx,
            gb,
        })
    }

    /// Points off the first block whose stabilizer is `G_B`.
    fn matching_points(&self, d: &IncidenceStructure, g: &PermGroup) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        for x in (0..d.v()).filter(|&x| !d.is_incident(x, 0)) {
            if g.stabilizer(x)?.same_group(&self.gb) {
                out.push(x);
            }
        }
        Ok(out)
    }
}

fn skip_unless(r: &mut VerificationReport, cond: bool, reason: &str) -> bool {
    if !cond {
        r.skip(reason);
    }
    cond
}

/// Elements for the per-element scans, or why they are not run.
fn scan_elements(g: &PermGroup, sym: bool) -> Result<Vec<Permutation>, String> {
    if !sym {
        return Err(NOT_SYM.to_string());
    }
    if g.check_order_bound(ELEMENT_BOUND).is_err() {
        return Err(format!("group order exceeds the element scan bound {ELEMENT_BOUND}"));
    }
    g.elements().map_err(|e| e.to_string())
}

const NOT_SYM: &str = "not a nontrivial symmetric design";

/// Every applicable check on one instance, one report per check.
pub fn instance_reports(label: &str, d: &IncidenceStructure, g: &PermGroup) -> Vec<VerificationReport> {
    let mut out = Vec::new();
    let claim = |name: &str| format!("{name}/{label}");

    let mut params = None;
    out.push(timed(claim("parameter-identities"), |r| {
        let p = verify_2design(d)?;
        let v = p.violations();
        r.witness(json!({ "params": p.to_string(), "r": p.r, "b": p.b, "nontrivial": p.is_nontrivial() }));
        r.expect(v.is_empty(), || json!({ "violations": v }));
        params = Some(p);
        Ok(())
    }));
    let Some(params) = params else {
        return out;
    };

    let mut flags: Option<FlagReport> = None;
    out.push(timed(claim("flag-criteria"), |r| {
        // The equivalent criteria are compared inside flag_report.
        let f = flag_report(g, d)?;
        r.witness(serde_json::to_value(&f)?);
        flags = Some(f);
        Ok(())
    }));
    let Some(flags) = flags else {
        return out;
    };
    let ft = flags.flag_transitive;

    out.push(timed(claim("cubic-bound"), |r| {
        if skip_unless(r, ft, "not flag-transitive") {
            let (n, s, ok) = cubic_bound(g, 0)?;
            r.expect(ok, || json!({ "order": n, "stabilizer": s }));
            r.witness(json!({ "order": n, "stabilizer": s }));
        }
        Ok(())
    }));

    out.push(timed(claim("suborbit-intersections"), |r| {
        if skip_unless(r, ft, "not flag-transitive") {
            let bad = davies_check(g, d, 0)?;
            let suborbits = g.stabilizer(0)?.orbits().len();
            r.expect(bad.is_empty(), || json!({ "violations": bad }));
            r.witness(json!({ "suborbits": suborbits, "blocks_through_point": params.r }));
        }
        Ok(())
    }));

    let sym = params.is_symmetric() && params.is_nontrivial();
    symmetric_scans(&mut out, label, d, g, &params, sym);

    let local = if sym && ft {
        Local::new(d, g, params).map_err(|e| {
            let mut r = VerificationReport::new(claim("local-actions"));
            r.refute(json!({ "error": format!("{e:#}") }));
            out.push(r);
        })
        .ok()
    } else {
        None
    };
    local_scans(&mut out, label, d, g, local.as_ref());
    out
}

fn symmetric_scans(
    out: &mut Vec<VerificationReport>,
    label: &str,
    d: &IncidenceStructure,
    g: &PermGroup,
    params: &DesignParams,
    sym: bool,
) {
    let claim = |name: &str| format!("{name}/{label}");
    let elements = scan_elements(g, sym);
    let with_elements = |name: &str, f: &dyn Fn(&mut VerificationReport, &[Permutation]) -> Result<()>| {
        timed(claim(name), |r| match &elements {
            Ok(els) => f(r, els),
            Err(reason) => {
                r.skip(reason.clone());
                Ok(())
            }
        })
    };

    out.push(with_elements("fixed-point-balance", &|r, _| {
        let s = symmetric_checks(d, g)?;
        r.expect(s.balance_violations.is_empty(), || json!({ "elements": s.balance_violations }));
        r.expect(s.dual_params == s.params, || json!({ "dual": s.dual_params.to_string() }));
        r.witness(json!({ "elements_scanned": s.elements_scanned, "dual": s.dual_params.to_string() }));
        Ok(())
    }));

    out.push(with_elements("involution-fixed-points", &|r, els| {
        let mut applicable = 0;
        for x in els {
            match involution_fix_bound(d, x)? {
                Outcome::Holds => applicable += 1,
                Outcome::Violated => {
                    r.refute(json!({ "element": x.to_string(), "fixed": x.fixed_point_count() }));
                }
                Outcome::NotApplicable => {}
            }
        }
        r.witness(json!({ "involutions_with_fixed_points": applicable }));
        if applicable == 0 {
            r.skip("no involution with a fixed point");
        }
        Ok(())
    }));

    out.push(with_elements("axis-centre", &|r, els| {
        let mut axial = 0;
        let mut implication_checked = 0;
        for x in els {
            let a = axial_checks(d, x)?;
            let bad = !a.unique || a.axial_central == Outcome::Violated;
            r.expect(!bad, || json!({ "element": x.to_string(), "axes": a.axes, "centres": a.centres }));
            axial += usize::from(!a.axes.is_empty());
            implication_checked += usize::from(a.axial_central != Outcome::NotApplicable);
        }
        r.witness(json!({ "elements": els.len(), "axial": axial, "implication_checked": implication_checked }));
        Ok(())
    }));

    out.push(with_elements("core-fixed-points", &|r, els| {
        let hypotheses = params.lambda > 1 && block_action(g, d)?.is_transitive() && block_action_semiregular(g, d)?;
        if !skip_unless(r, hypotheses, "needs lambda > 1, block-transitivity and a semiregular block action") {
            return Ok(());
        }
        let mut checked = 0;
        for x in els {
            match core_bound(params, x) {
                Outcome::Violated => {
                    r.refute(json!({ "element": x.to_string(), "order": x.order(), "fixed": x.fixed_point_count() }));
                }
                Outcome::Holds => checked += 1,
                Outcome::NotApplicable => {}
            }
        }
        r.witness(json!({ "elements_of_order_at_least_lambda": checked }));
        Ok(())
    }));
}

fn local_scans(
    out: &mut Vec<VerificationReport>,
    label: &str,
    d: &IncidenceStructure,
    g: &PermGroup,
    local: Option<&Local>,
) {
    let claim = |name: &str| format!("{name}/{label}");
    const NOT_FT: &str = "not a flag-transitive nontrivial symmetric design";

    out.push(timed(claim("abelian-block-action"), |r| {
        let Some(l) = local.filter(|l| l.block_local.is_abelian()) else {
            r.skip("block action is not abelian on a flag-transitive symmetric design");
            return Ok(());
        };
        let xs = l.matching_points(d, g)?;
        r.expect(l.block_faithful && !xs.is_empty(), || json!({ "faithful": l.block_faithful, "points": xs }));
        r.witness(json!({ "block_local": l.block_local.to_string(), "points_with_equal_stabilizer": xs }));
        Ok(())
    }));

    out.push(timed(claim("frobenius"), |r| {
        let Some(l) = local else {
            r.skip(NOT_FT);
            return Ok(());
        };
        if !skip_unless(r, is_frobenius(g).unwrap_or(false), "group is not a Frobenius group") {
            return Ok(());
        }
        let f = flag_report(g, d)?;
        let order = f.group_order;
        let pp = is_primitive(g)?;
        let bp = is_primitive(&block_action(g, d)?)?;
        let xs = l.matching_points(d, g)?;
        let w = json!({ "order": order, "point_primitive": pp, "block_primitive": bp, "flag_regular": f.flag_regular, "points_with_equal_stabilizer": xs });
        r.expect(order % 2 == 1 && pp && bp && f.flag_regular && !xs.is_empty(), || w.clone());
        r.witness(w);
        Ok(())
    }));

    out.push(timed(claim("dihedral-block-size"), |r| {
        let Some((l, n)) = local.and_then(|l| match l.block_local {
            GroupShape::Dihedral { n } => Some((l, n)),
            _ => None,
        }) else {
            r.skip("block action is not dihedral on a flag-transitive symmetric design");
            return Ok(());
        };
        let k = l.params.k;
        r.expect(k == n || k == 2 * n, || json!({ "k": k, "n": n }));
        r.witness(json!({ "k": k, "n": n }));
        Ok(())
    }));

    let dihedral_gb = local.and_then(|l| match l.block_stabilizer {
        GroupShape::Dihedral { n } if l.params.lambda > 1 => Some((l, n)),
        _ => None,
    });
    const NOT_DIH: &str = "block stabilizer is not dihedral with lambda > 1";

    out.push(timed(claim("dihedral-stabilizer-fixed-points"), |r| {
        let Some((l, n)) = dihedral_gb else {
            r.skip(NOT_DIH);
            return Ok(());
        };
        let gen = l
            .gb
            .elements()?
            .into_iter()
            .find(|x| x.order() == n)
            .context("dihedral group without a rotation")?;
        let fix = gen.fixed_point_count();
        let xs = l.matching_points(d, g)?;
        let w = json!({ "n": n, "rotation_fixed_points": fix, "points_with_equal_stabilizer": xs, "faithful": l.block_faithful });
        r.expect((fix == 1 || fix == 3) && !xs.is_empty() && l.block_faithful, || w.clone());
        r.witness(w);
        Ok(())
    }));

    out.push(timed(claim("lambda-even"), |r| {
        let Some((l, _)) = dihedral_gb else {
            r.skip(NOT_DIH);
            return Ok(());
        };
        r.expect(l.params.lambda % 2 == 0, || json!({ "lambda": l.params.lambda }));
        Ok(())
    }));

    out.push(timed(claim("local-equivalence"), |r| {
        let Some(l) = local.filter(|l| l.params.lambda > 1) else {
            r.skip("needs a flag-transitive symmetric design with lambda > 1");
            return Ok(());
        };
        let shapes = [&l.point_stabilizer, &l.block_stabilizer, &l.point_local, &l.block_local];
        let Some(k) = shapes.iter().find(|s| s.is_abelian() || s.is_dihedral()) else {
            r.skip("no stabilizer or local action is abelian or dihedral");
            return Ok(());
        };
        let agree = shapes.iter().all(|s| s == k);
        let conjugate = are_conjugate(g, &l.gx, &l.gb)?.is_some();
        let pp = is_primitive(g)?;
        let bp = is_primitive(&block_action(g, d)?)?;
        let odd_frobenius = matches!(k, GroupShape::Cyclic { .. })
            && is_frobenius(g).unwrap_or(false)
            && g.size() % 2 == 1;
        let structure = if k.is_dihedral() { !pp && !bp } else { (!pp && !bp) || odd_frobenius };
        let w = json!({
            "shapes": shapes.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
            "conjugate": conjugate,
            "point_primitive": pp,
            "block_primitive": bp,
        });
        r.expect(agree && conjugate && structure, || w.clone());
        r.witness(w);
        Ok(())
    }));
}

/// In `D_2n` on `n` points each non-identity element fixes at most one point
/// when `n` is odd, and none or two when `n` is even.
pub fn dihedral_fixed_points(ns: std::ops::RangeInclusive<usize>) -> VerificationReport {
    timed("dihedral-fixed-point-dichotomy", |r| {
        for n in ns {
            let g = dihedral(n)?;
            let mut counts: Vec<usize> = g
                .elements()?
                .iter()
                .filter(|x| !x.is_identity())
                .map(Permutation::fixed_point_count)
                .collect();
            counts.sort_unstable();
            counts.dedup();
            let ok = if n % 2 == 1 {
                counts.iter().all(|&c| c <= 1)
            } else {
                counts.iter().all(|&c| c == 0 || c == 2)
            };
            r.expect(ok, || json!({ "n": n, "fixed_point_counts": counts }));
            r.witness(json!({ "n": n, "fixed_point_counts": counts }));
        }
        Ok(())
    })
}

/// Enlarging the group that develops a 2-design keeps it a 2-design.
pub fn orbit_closure() -> VerificationReport {
    timed("orbit-closure", |r| {
        let rot = Permutation::from_images((0..7).map(|i| (i + 1) % 7).collect())?;
        let mul = Permutation::from_images((0..7).map(|i| 2 * i % 7).collect())?;
        let base = [1, 2, 4];
        let z7 = PermGroup::new(7, vec![rot.clone()])?;
        let f21 = PermGroup::new(7, vec![rot, mul])?;
        let fano = design_from_base_block(&z7, &base)?;
        let psl32 = design_automorphisms(&fano)?;
        let chain = [("Z7", z7), ("F21", f21), ("PSL3(2)", psl32), ("Sym(7)", PermGroup::symmetric(7))];
        for (name, m) in &chain {
            let p = verify_2design(&design_from_base_block(m, &base)?)?;
            r.witness(json!({ "group": name, "order": m.size(), "params": p.to_string() }));
        }
        let big = theorem1::biplane16()?;
        let aut = design_automorphisms(&big)?;
        for (name, m) in [("Aut", aut), ("Sym(16)", PermGroup::symmetric(16))] {
            let p = verify_2design(&design_from_base_block(&m, big.block(0))?)?;
            r.witness(json!({ "group": name, "params": p.to_string() }));
        }
        Ok(())
    })
}

fn search_designs(g: &PermGroup, k: u64, lambda: u64, strategy: Strategy) -> Result<Vec<IncidenceStructure>> {
    let spec = SearchSpec::new("corpus", g.clone(), k, lambda)?;
    let outcome = flag_transitive_design_search(&spec, strategy, MAX_RANK_DEFAULT)?;
    Ok(outcome.designs().context("search skipped")?.to_vec())
}

/// Every (design, group) pair the scans run over.
pub fn corpus() -> Result<Vec<Instance>> {
    let mut out = Vec::new();

    let fano_group = paley_frobenius(7)?;
    let fano = design_from_base_block(&fano_group, &quadratic_residues(7))?;
    out.push(Instance::new("fano/PSL3(2)", fano.clone(), design_automorphisms(&fano)?));

    let bi = theorem1::biplane16()?;
    let bi_aut = design_automorphisms(&bi)?;
    for (i, g) in theorem1::flag_regular_groups(&bi, &bi_aut)?.into_iter().enumerate() {
        out.push(Instance::new(format!("biplane16/flag-regular-{i}"), bi.clone(), g));
    }
    out.push(Instance::new("biplane16/Aut", bi, bi_aut));

    let pg = designforge_core::constructors::pg32_plane_complements()?;
    let pg_aut = design_automorphisms(&pg)?;
    for (i, g) in theorem1::flag_regular_groups(&pg, &pg_aut)?.into_iter().enumerate() {
        out.push(Instance::new(format!("pg32/flag-regular-{i}"), pg.clone(), g));
    }
    out.push(Instance::new("pg32/Aut", pg, pg_aut));

    for p in [7u64, 11, 19, 23] {
        let g = paley_frobenius(p)?;
        let d = design_from_base_block(&g, &quadratic_residues(p))?;
        out.push(Instance::new(format!("paley{p}/Frobenius"), d, g));
    }

    for case in &theorem2::CASES {
        let a = case.action.build()?;
        let k = match case.k {
            Some(k) => k,
            None => theorem2::admissible_block_sizes(&a.group, case.lambda)?[0],
        };
        let spec = SearchSpec::new("corpus", a.group.clone(), k, case.lambda)?;
        let strategy = if spec.precondition_failure(Strategy::SubgroupOrbit, 0).is_none() {
            Strategy::SubgroupOrbit
        } else {
            Strategy::SubsetScan
        };
        let designs = search_designs(&a.group, k, case.lambda, strategy)?;
        ensure!(!designs.is_empty(), "no design for case ({})", case.tag);
        for (i, d) in designs.into_iter().enumerate() {
            out.push(Instance::new(format!("{}-on-{}/k{k}/{i}", a.name, a.degree()), d, a.group.clone()));
        }
    }

    out.push(Instance::new("AG(2,4)/Z2^4:D10", ag24_lines()?, z2_4_d10()));
    Ok(out)
}

pub fn lemma_scans() -> Vec<VerificationReport> {
    let mut out = Vec::new();
    match corpus() {
        Ok(instances) => {
            for inst in &instances {
                out.extend(instance_reports(&inst.label, &inst.design, &inst.group));
            }
        }
        Err(e) => {
            let mut r = VerificationReport::new("corpus");
            r.refute(json!({ "error": format!("{e:#}") }));
            out.push(r);
        }
    }
    out.push(dihedral_fixed_points(3..=12));
    out.push(orbit_closure());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn paley_11_scans() {
        let g = paley_frobenius(11).unwrap();
        let d = design_from_base_block(&g, &quadratic_residues(11)).unwrap();
        let reports = instance_reports("paley11", &d, &g);
        assert!(reports.iter().all(|r| !r.is_refuted()), "{reports:#?}");
        let frob = reports.iter().find(|r| r.claim.starts_with("frobenius")).unwrap();
        assert!(frob.is_confirmed());
        let core = reports.iter().find(|r| r.claim.starts_with("core-fixed-points")).unwrap();
        assert!(core.is_confirmed());
    }

    #[test]
    fn dichotomy() {
        assert!(dihedral_fixed_points(3..=8).is_confirmed());
    }
}
