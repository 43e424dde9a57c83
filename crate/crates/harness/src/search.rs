//! Exhaustive searches for flag-transitive 2-designs admitting a given group.
//!
//! A flag-transitive design is a single `G`-orbit of blocks, so it is
//! determined by one block `B`, and `G_B` is transitive on `B`. Two
//! strategies find all such `B`:
//!
//! * [`Strategy::SubsetScan`] walks every k-subset, grouping them into
//!   `G`-orbits with a visited bitmap indexed by colex rank, and keeps orbits
//!   of length `b`.
//! * [`Strategy::SubgroupOrbit`] enumerates subgroups `⟨a, c⟩` of order
//!   `|G|/b` up to conjugacy, and keeps their orbits of length `k` whose full
//!   setwise stabilizer is that subgroup. This is complete when every group
//!   of that order is 2-generated.

use std::collections::{BTreeSet, HashSet};
use std::sync::atomic::{AtomicU64, Ordering};

use anyhow::{bail, ensure, Result};
use designforge_core::combin::{binomial, next_subset_colex, BinomialTable};
use designforge_core::designs::{
    check_admissible, design_from_base_block, flag_report, image_mask, mask_of, points_of,
    verify_2design,
};
use designforge_core::permgrp::subgroups::class_representatives;
use designforge_core::permgrp::ELEMENT_BOUND;
use designforge_core::{par, DesignParams, IncidenceStructure, PermGroup, Permutation};
use serde::{Deserialize, Serialize};

/// Guard on `C(v, k)` for [`Strategy::SubsetScan`]; the bitmap takes
/// `C(v, k) / 8` bytes.
pub const MAX_RANK_DEFAULT: u64 = 5_000_000;

/// Orders `n` for which every group of order `n` is generated by two
/// elements. Each is a product of at most three primes with every Sylow
/// subgroup cyclic or of rank 2: Z4, Z2², Z6, S3, Z7, Z10, D10, Z2×Z6, Z12,
/// D12, A4, Dic3, Z14, D14, Z15.
pub const TWO_GENERATED_ORDERS: [u64; 7] = [4, 6, 7, 10, 12, 14, 15];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Strategy {
    SubsetScan,
    SubgroupOrbit,
}

pub struct SearchSpec {
    pub label: String,
    pub group: PermGroup,
    pub params: DesignParams,
    /// `|G_B| = |G| / b`.
    pub block_stabilizer_order: u64,
}

impl SearchSpec {
    /// Rejects parameters that are not admissible or with `b ∤ |G|`.
    pub fn new(label: impl Into<String>, group: PermGroup, k: u64, lambda: u64) -> Result<Self> {
        let label = label.into();
        let v = group.degree() as u64;
        let adm = check_admissible(v, k, lambda);
        let Some(params) = adm.params(v, k, lambda) else {
            bail!("{label}: 2-({v},{k},{lambda}) is not admissible: {:?}", adm.violations);
        };
        let order = group.check_order_bound(ELEMENT_BOUND)?;
        ensure!(
            order % params.b == 0,
            "{label}: b = {} does not divide |G| = {order}",
            params.b
        );
        Ok(SearchSpec {
            label,
            group,
            params,
            block_stabilizer_order: order / params.b,
        })
    }

    /// Reasons the strategy cannot be run exhaustively, if any.
    pub fn precondition_failure(&self, strategy: Strategy, max_rank: u64) -> Option<String> {
        let p = &self.params;
        match strategy {
            Strategy::SubsetScan => {
                let n = binomial(p.v, p.k);
                (n > max_rank).then(|| format!("C({}, {}) = {n} exceeds the rank limit {max_rank}", p.v, p.k))
            }
            Strategy::SubgroupOrbit => (!TWO_GENERATED_ORDERS.contains(&self.block_stabilizer_order)).then(|| {
                format!(
                    "groups of order {} are not known to be 2-generated",
                    self.block_stabilizer_order
                )
            }),
        }
    }

    pub fn preconditions(&self, strategy: Strategy, max_rank: u64) -> Vec<String> {
        let p = &self.params;
        let mut out = vec![
            format!("{}: r = {}, b = {}, |G_B| = {}", p, p.r, p.b, self.block_stabilizer_order),
            "blocks form one G-orbit and G_B is transitive on B".to_string(),
        ];
        match strategy {
            Strategy::SubsetScan => out.push(format!(
                "every {}-subset visited: C({}, {}) = {} <= {max_rank}",
                p.k,
                p.v,
                p.k,
                binomial(p.v, p.k)
            )),
            Strategy::SubgroupOrbit => out.push(format!(
                "every group of order {} is 2-generated; a ranges over class representatives, c over all elements",
                self.block_stabilizer_order
            )),
        }
        out
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    /// Subsets (scan) or element pairs (subgroups) examined.
    pub examined: u64,
    /// Block orbits of length `b`, or distinct subgroups of order `|G_B|`.
    pub candidates: u64,
}

pub enum SearchOutcome {
    Complete {
        designs: Vec<IncidenceStructure>,
        stats: SearchStats,
    },
    Skipped(String),
}

impl SearchOutcome {
    pub fn designs(&self) -> Option<&[IncidenceStructure]> {
        match self {
            SearchOutcome::Complete { designs, .. } => Some(designs),
            SearchOutcome::Skipped(_) => None,
        }
    }
}

/// All flag-transitive designs with the spec's parameters whose block set is
/// a `G`-orbit, sorted by block list.
pub fn flag_transitive_design_search(spec: &SearchSpec, strategy: Strategy, max_rank: u64) -> Result<SearchOutcome> {
    if let Some(reason) = spec.precondition_failure(strategy, max_rank) {
        return Ok(SearchOutcome::Skipped(reason));
    }
    let (bases, stats) = match strategy {
        Strategy::SubsetScan => subset_scan(spec),
        Strategy::SubgroupOrbit => subgroup_orbits(spec)?,
    };
    let mut seen = BTreeSet::new();
    let mut designs = Vec::new();
    for base in bases {
        let d = design_from_base_block(&spec.group, &points_of(base))?;
        if !seen.insert(d.masks().to_vec()) {
            continue;
        }
        if accept(spec, &d)? {
            designs.push(d);
        }
    }
    designs.sort_by(|a, b| a.blocks().cmp(b.blocks()));
    Ok(SearchOutcome::Complete { designs, stats })
}

fn accept(spec: &SearchSpec, d: &IncidenceStructure) -> Result<bool> {
    if d.b() as u64 != spec.params.b {
        return Ok(false);
    }
    match verify_2design(d) {
        Ok(p) if p == spec.params => {}
        _ => return Ok(false),
    }
    Ok(flag_report(&spec.group, d)?.flag_transitive)
}

fn orbit_of_mask(gens: &[Permutation], start: u128, limit: usize) -> Vec<u128> {
    let mut seen = HashSet::from([start]);
    let mut orbit = vec![start];
    let mut head = 0;
    while head < orbit.len() && orbit.len() <= limit {
        let m = orbit[head];
        head += 1;
        for s in gens {
            let img = image_mask(s, m);
            if seen.insert(img) {
                orbit.push(img);
            }
        }
    }
    orbit
}

/// Minimal masks of the block orbits of length `b`.
fn subset_scan(spec: &SearchSpec) -> (Vec<u128>, SearchStats) {
    let (v, k) = (spec.params.v as usize, spec.params.k as usize);
    let total = binomial(v as u64, k as u64);
    let table = BinomialTable::new(v, k);
    let visited: Vec<AtomicU64> = (0..total.div_ceil(64)).map(|_| AtomicU64::new(0)).collect();
    let gens = spec.group.generators();
    let b = spec.params.b as usize;
    let parts = (par::current_threads() as u64 * 8).max(1);

    let per_chunk = par::map(&par::chunks(total, parts), |range| {
        let mut found = Vec::new();
        let mut examined = 0u64;
        let mut subset = Vec::new();
        table.unrank(range.start, k, &mut subset);
        let mut pts = Vec::with_capacity(k);
        for rank in range.clone() {
            if rank > range.start {
                next_subset_colex(&mut subset, v);
            }
            examined += 1;
            if visited[(rank / 64) as usize].load(Ordering::Relaxed) >> (rank % 64) & 1 == 1 {
                continue;
            }
            let orbit = orbit_of_mask(gens, mask_of(&subset), usize::MAX);
            for &m in &orbit {
                pts.clear();
                pts.extend(points_of(m));
                let r = table.rank(&pts);
                visited[(r / 64) as usize].fetch_or(1 << (r % 64), Ordering::Relaxed);
            }
            if orbit.len() == b {
                // Two workers can race on the same orbit; keying by the
                // least mask makes the merge idempotent.
                found.push(*orbit.iter().min().expect("orbit is nonempty"));
            }
        }
        (found, examined)
    });

    let mut bases = BTreeSet::new();
    let mut examined = 0;
    for (found, n) in per_chunk {
        bases.extend(found);
        examined += n;
    }
    let stats = SearchStats {
        examined,
        candidates: bases.len() as u64,
    };
    (bases.into_iter().collect(), stats)
}

/// The subgroup generated by `gens`, or `None` once it exceeds `limit`
/// elements.
fn bounded_closure(gens: &[&Permutation], limit: usize) -> Option<Vec<Permutation>> {
    let id = Permutation::identity(gens[0].degree());
    let mut seen = HashSet::from([id.clone()]);
    let mut elems = vec![id];
    let mut head = 0;
    while head < elems.len() {
        let x = elems[head].clone();
        head += 1;
        for g in gens {
            let y = x.compose(g);
            if seen.insert(y.clone()) {
                elems.push(y);
                if elems.len() > limit {
                    return None;
                }
            }
        }
    }
    elems.sort_unstable();
    Some(elems)
}

/// Orbits of length `k` of the subgroups of order `|G_B|` whose setwise
/// stabilizer is exactly that subgroup, as masks.
fn subgroup_orbits(spec: &SearchSpec) -> Result<(Vec<u128>, SearchStats)> {
    let m = spec.block_stabilizer_order;
    let k = spec.params.k as usize;
    let divides = |x: &Permutation| m % x.order() == 0;
    let firsts: Vec<Permutation> = class_representatives(&spec.group)?
        .into_iter()
        .filter(|a| !a.is_identity() && divides(a))
        .collect();
    let seconds: Vec<Permutation> = spec.group.elements()?.into_iter().filter(divides).collect();

    let per_first = par::map(&firsts, |a| {
        let mut subgroups = BTreeSet::new();
        for c in &seconds {
            if let Some(h) = bounded_closure(&[a, c], m as usize) {
                if h.len() as u64 == m {
                    subgroups.insert(h);
                }
            }
        }
        subgroups
    });
    let examined = (firsts.len() * seconds.len()) as u64;
    let subgroups: BTreeSet<Vec<Permutation>> = per_first.into_iter().flatten().collect();

    let list: Vec<&Vec<Permutation>> = subgroups.iter().collect();
    let per_subgroup = par::map(&list, |h| -> Result<Vec<u128>> {
        let gens: Vec<Permutation> = h.iter().filter(|x| !x.is_identity()).cloned().collect();
        let hg = PermGroup::new(spec.group.degree(), gens)?;
        let mut out = Vec::new();
        for orbit in hg.orbits() {
            if orbit.len() != k {
                continue;
            }
            if spec.group.setwise_stabilizer(&orbit)?.size() == m {
                out.push(mask_of(&orbit));
            }
        }
        Ok(out)
    });
    let mut bases = BTreeSet::new();
    for r in per_subgroup {
        bases.extend(r?);
    }
    let stats = SearchStats {
        examined,
        candidates: subgroups.len() as u64,
    };
    Ok((bases.into_iter().collect(), stats))
}

/// Results of running a spec under every strategy whose preconditions hold.
pub struct SearchRun {
    /// The common result, or `None` if no strategy could run.
    pub designs: Option<Vec<IncidenceStructure>>,
    /// Per-strategy summary for the report.
    pub summaries: Vec<serde_json::Value>,
    pub preconditions: Vec<String>,
    /// Set when two strategies returned different designs.
    pub disagreement: Option<serde_json::Value>,
}

/// Runs both strategies where possible and cross-checks their results.
pub fn run_all_strategies(spec: &SearchSpec, max_rank: u64) -> Result<SearchRun> {
    let mut run = SearchRun {
        designs: None,
        summaries: Vec::new(),
        preconditions: Vec::new(),
        disagreement: None,
    };
    for strategy in [Strategy::SubsetScan, Strategy::SubgroupOrbit] {
        match flag_transitive_design_search(spec, strategy, max_rank)? {
            SearchOutcome::Skipped(reason) => {
                run.summaries
                    .push(serde_json::json!({ "strategy": strategy, "skipped": reason }));
            }
            SearchOutcome::Complete { designs, stats } => {
                run.preconditions.extend(
                    spec.preconditions(strategy, max_rank)
                        .into_iter()
                        .filter(|p| !run.preconditions.contains(p))
                        .collect::<Vec<_>>(),
                );
                run.summaries.push(serde_json::json!({
                    "strategy": strategy,
                    "designs": designs.len(),
                    "stats": stats,
                }));
                match &run.designs {
                    None => run.designs = Some(designs),
                    Some(prev) if *prev != designs => {
                        run.disagreement = Some(serde_json::json!({
                            "strategy": strategy,
                            "found": designs.iter().map(|d| d.block(0).to_vec()).collect::<Vec<_>>(),
                            "previously": prev.iter().map(|d| d.block(0).to_vec()).collect::<Vec<_>>(),
                        }));
                    }
                    Some(_) => {}
                }
            }
        }
    }
    Ok(run)
}
