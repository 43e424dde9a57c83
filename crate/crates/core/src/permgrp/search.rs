//! Backtrack searches over the elements of a group, walking its stabilizer
//! chain so that base images are fixed one level at a time.
//!
//! An element is written `g = u_m ... u_1 u_0` (right action, `u_m` applied
//! first) with `u_j` a transversal element of level `j`. Choosing `u_0` first
//! fixes the image of `b_0`, then `u_1` fixes the image of `b_1`, and so on,
//! which is what lets a property reject whole subtrees from partial images.

use super::chain::StabChain;
use crate::perm::Permutation;

pub(crate) trait Property {
    /// `images[j]` is the image of `base[j]`, for every `j < images.len()`.
    /// Returning false discards every element with these base images.
    fn partial_ok(&self, base: &[usize], images: &[usize]) -> bool;
    fn accept(&self, g: &Permutation) -> bool;
}

/// Generators of `{g in G : prop.accept(g)}`, which must be a subgroup.
///
/// Levels are completed from the bottom up. At level `i` only one element
/// per orbit of the already-found subgroup on `b_i` is looked for, and a
/// failed image rules out its whole orbit.
pub(crate) fn subgroup_generators(chain: &StabChain, prop: &impl Property) -> Vec<Permutation> {
    let n = chain.degree;
    let m = chain.levels.len();
    let mut gens: Vec<Permutation> = Vec::new();
    let mut images: Vec<usize> = Vec::with_capacity(m);
    for i in (0..m).rev() {
        let b = chain.base[i];
        let mut reached = orbit_mask(n, b, &gens);
        let mut failed = vec![false; n];
        for &beta in &chain.levels[i].orbit {
            if reached[beta] || failed[beta] {
                continue;
            }
            images.clear();
            images.extend_from_slice(&chain.base[..i]);
            images.push(beta);
            let u = chain.levels[i].transversal[beta].as_ref().unwrap();
            let found = if prop.partial_ok(&chain.base, &images) {
                descend(chain, prop, i + 1, u.clone(), &mut images)
            } else {
                None
            };
            match found {
                Some(g) => {
                    gens.push(g);
                    reached = orbit_mask(n, b, &gens);
                }
                None => {
                    for p in orbit_mask_list(n, beta, &gens) {
                        failed[p] = true;
                    }
                }
            }
        }
    }
    gens
}

/// Some element of `G` satisfying the property, if any.
pub(crate) fn find_element(chain: &StabChain, prop: &impl Property) -> Option<Permutation> {
    let mut images = Vec::with_capacity(chain.levels.len());
    descend(chain, prop, 0, Permutation::identity(chain.degree), &mut images)
}

fn descend(
    chain: &StabChain,
    prop: &impl Property,
    level: usize,
    suffix: Permutation,
    images: &mut Vec<usize>,
) -> Option<Permutation> {
    if level == chain.levels.len() {
        return prop.accept(&suffix).then_some(suffix);
    }
    let lvl = &chain.levels[level];
    for &beta in &lvl.orbit {
        images.push(suffix.apply(beta));
        if prop.partial_ok(&chain.base, images) {
            let next = lvl.transversal[beta].as_ref().unwrap().compose(&suffix);
            if let Some(g) = descend(chain, prop, level + 1, next, images) {
                images.pop();
                return Some(g);
            }
        }
        images.pop();
    }
    None
}

fn orbit_mask(n: usize, p: usize, gens: &[Permutation]) -> Vec<bool> {
    let mut mask = vec![false; n];
    for q in orbit_mask_list(n, p, gens) {
        mask[q] = true;
    }
    mask
}

fn orbit_mask_list(n: usize, p: usize, gens: &[Permutation]) -> Vec<usize> {
    let mut seen = vec![false; n];
    seen[p] = true;
    let mut orbit = vec![p];
    let mut head = 0;
    while head < orbit.len() {
        let x = orbit[head];
        head += 1;
        for g in gens {
            let y = g.apply(x);
            if !seen[y] {
                seen[y] = true;
                orbit.push(y);
            }
        }
    }
    orbit
}
