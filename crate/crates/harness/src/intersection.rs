//! In PGL₂(q), q odd, the split-torus normalizer `D_{2(q-1)}` meets every
//! conjugate of the nonsplit-torus normalizer `D_{2(q+1)}` nontrivially.
//!
//! One `H` is fixed and `K` runs over all its conjugates, using a transversal
//! of `N_G(K)`. Since `G` permutes the conjugates of `H` transitively, this
//! covers every pair.

use anyhow::{ensure, Result};
use designforge_core::constructors::{nonsplit_torus_dihedral, pgl2, torus_pair_dihedral};
use designforge_core::permgrp::{coset_action, normalizer};
use designforge_core::{par, GroupShape};
use designforge_core::recognize::recognize_shape;
use serde_json::json;

use crate::report::{timed, VerificationReport};

pub const DEFAULT_Q: [u64; 5] = [5, 7, 9, 11, 13];

fn check(q: u64, r: &mut VerificationReport) -> Result<()> {
    let g = pgl2(q)?;
    let h = torus_pair_dihedral(&g);
    let k = nonsplit_torus_dihedral(&g)?;
    ensure!(recognize_shape(&h)? == GroupShape::dihedral_of_order(2 * (q - 1)), "H is not D{}", 2 * (q - 1));
    ensure!(recognize_shape(&k)? == GroupShape::dihedral_of_order(2 * (q + 1)), "K is not D{}", 2 * (q + 1));
    let n = normalizer(&g.group, &k)?;
    let transversal = coset_action(&g.group, &n)?.representatives;
    let h_elems: Vec<_> = h.elements()?.into_iter().filter(|x| !x.is_identity()).collect();
    let meets = par::map(&transversal, |t| {
        let kt = k.conjugate(t);
        h_elems.iter().filter(|x| kt.contains(x)).count() + 1
    });
    let trivial: Vec<usize> = (0..meets.len()).filter(|&i| meets[i] == 1).collect();
    for &i in &trivial {
        r.refute(json!({ "q": q, "conjugator": transversal[i].to_string() }));
    }
    let mut sizes = meets.clone();
    sizes.sort_unstable();
    sizes.dedup();
    r.witness(json!({
        "q": q,
        "H": format!("D{}", h.size()),
        "K": format!("D{}", k.size()),
        "conjugates": transversal.len(),
        "trivial_intersections": trivial.len(),
        "intersection_orders": sizes,
    }));
    Ok(())
}

pub fn verify_intersection(qs: &[u64]) -> Vec<VerificationReport> {
    qs.iter()
        .map(|&q| {
            timed(format!("split-meets-nonsplit/PGL2({q})"), |r| {
                if q % 2 == 0 || q < 5 {
                    r.skip(format!("q = {q} must be odd and at least 5"));
                    return Ok(());
                }
                check(q, r)
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q5_has_ten_conjugates() {
        let r = &verify_intersection(&[5])[0];
        assert!(r.is_confirmed(), "{r:?}");
        assert_eq!(r.witnesses[0]["conjugates"], 10);
        assert_eq!(r.witnesses[0]["trivial_intersections"], 0);
    }

    #[test]
    fn even_q_is_skipped() {
        assert!(matches!(verify_intersection(&[8])[0].status, crate::report::Status::Skipped(_)));
    }
}
