//! Parameter sets for which no flag-transitive design exists with the given
//! group. Each search is exhaustive under the preconditions it reports.

use anyhow::Result;
use designforge_core::constructors::z2_4_d10;
use designforge_core::PermGroup;
use serde_json::json;

use crate::actions::{ActionSpec, Linear, Subgroup};
use crate::report::{timed, VerificationReport};
use crate::search::{run_all_strategies, SearchSpec};

#[derive(Clone, Copy)]
pub enum Source {
    Projective(ActionSpec),
    /// `Z_2^4 : D_10` on 16 points.
    AffineD10,
}

pub struct Case {
    pub source: Source,
    pub k: u64,
    pub lambda: u64,
}

const fn proj(linear: Linear, q: u64, subgroup: Subgroup, k: u64, lambda: u64) -> Case {
    Case {
        source: Source::Projective(ActionSpec::new(linear, q, subgroup)),
        k,
        lambda,
    }
}

pub const CASES: [Case; 8] = [
    proj(Linear::Psl, 8, Subgroup::Nonsplit, 4, 2),
    proj(Linear::Psl, 8, Subgroup::Nonsplit, 7, 4),
    proj(Linear::Pgl, 5, Subgroup::Nonsplit, 4, 4),
    proj(Linear::Pgl, 7, Subgroup::Nonsplit, 6, 4),
    proj(Linear::Pgl, 9, Subgroup::Split, 12, 4),
    proj(Linear::Pgl, 9, Subgroup::Nonsplit, 15, 8),
    proj(Linear::Pgl, 13, Subgroup::Nonsplit, 12, 4),
    Case {
        source: Source::AffineD10,
        k: 10,
        lambda: 6,
    },
];

fn group_of(source: Source) -> Result<(String, PermGroup)> {
    Ok(match source {
        Source::Projective(spec) => {
            let a = spec.build()?;
            (a.name, a.group)
        }
        Source::AffineD10 => ("Z2^4:D10".to_string(), z2_4_d10()),
    })
}

fn run_case(case: &Case, max_rank: u64, r: &mut VerificationReport) -> Result<()> {
    let (name, g) = group_of(case.source)?;
    let spec = SearchSpec::new(name.clone(), g, case.k, case.lambda)?;
    let run = run_all_strategies(&spec, max_rank)?;
    r.preconditions.extend(run.preconditions);
    r.witness(json!({ "group": name, "searches": run.summaries }));
    if let Some(dis) = run.disagreement {
        r.refute(dis);
    }
    match run.designs {
        None => {
            r.skip("no search strategy applies");
        }
        Some(designs) => {
            for d in designs {
                r.refute(json!({ "design_base_block": d.block(0), "blocks": d.b() }));
            }
            r.precondition("empty result: exhaustive under the preconditions above");
        }
    }
    Ok(())
}

pub fn nonexistence_searches(max_rank: u64) -> Vec<VerificationReport> {
    CASES
        .iter()
        .map(|c| {
            let v = match c.source {
                Source::Projective(s) => s.build().map(|a| format!("{}/{}", a.name, a.degree())).unwrap_or_default(),
                Source::AffineD10 => "Z2^4:D10/16".to_string(),
            };
            timed(format!("nonexist/{v}/k={},lambda={}", c.k, c.lambda), |r| run_case(c, max_rank, r))
        })
        .collect()
}
