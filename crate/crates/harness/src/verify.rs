//! The `verify` subcommand: checks on a user-supplied design and group.

use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use designforge_core::designs::io::DesignJson;
use designforge_core::designs::{check_automorphism_group, DesignError};
use designforge_core::permgrp::io::GroupJson;
use serde::de::DeserializeOwned;
use serde_json::json;

use crate::lemmas::instance_reports;
use crate::report::VerificationReport;

/// Parses `path`, naming the offending field and its line and column.
fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let de = &mut serde_json::Deserializer::from_str(&text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let field = e.path().to_string();
        let inner = e.into_inner();
        anyhow!(
            "{}: line {}, column {}, field `{field}`: {inner}",
            path.display(),
            inner.line(),
            inner.column()
        )
    })
}

/// Malformed files are errors; checks beyond the scale bounds come back
/// skipped.
pub fn verify_files(design: &Path, group: &Path) -> Result<Vec<VerificationReport>> {
    let dj: DesignJson = read_json(design)?;
    let gj: GroupJson = read_json(group)?;
    let d = match dj.to_design() {
        Ok(d) => d,
        Err(e @ DesignError::TooManyPoints { .. }) => {
            let mut r = VerificationReport::new("input");
            r.skip(e.to_string());
            return Ok(vec![r]);
        }
        Err(e) => bail!("{}: {e}", design.display()),
    };
    let g = gj
        .to_group()
        .map_err(|(i, e)| anyhow!("{}: generator {i}: {e}", group.display()))?;
    if g.degree() != d.v() {
        bail!(
            "{}: degree {} does not match the {} points of {}",
            group.display(),
            g.degree(),
            d.v(),
            design.display()
        );
    }
    if let Err(e) = check_automorphism_group(&g, &d) {
        let mut r = VerificationReport::new("automorphism-group");
        r.refute(json!({ "error": e.to_string() }));
        return Ok(vec![r]);
    }
    Ok(instance_reports("input", &d, &g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn file(text: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(text.as_bytes()).unwrap();
        f
    }

    #[test]
    fn fano_with_frobenius() {
        let d = file(r#"{"v": 7, "blocks": [[1,2,4],[2,3,5],[3,4,6],[4,5,0],[5,6,1],[6,0,2],[0,1,3]]}"#);
        let g = file(r#"{"degree": 7, "generators": ["(0 1 2 3 4 5 6)", [0,2,4,6,1,3,5]]}"#);
        let reports = verify_files(d.path(), g.path()).unwrap();
        assert!(reports.iter().all(|r| !r.is_refuted()), "{reports:#?}");
        assert!(reports.iter().any(|r| r.claim == "frobenius/input" && r.is_confirmed()));
    }

    #[test]
    fn diagnostics_locate_the_fault() {
        let d = file("{\"v\": 7,\n \"blocks\": [[1, \"x\"]]}");
        let g = file(r#"{"degree": 7, "generators": []}"#);
        let msg = format!("{:#}", verify_files(d.path(), g.path()).unwrap_err());
        assert!(msg.contains("line 2") && msg.contains("blocks[0][1]"), "{msg}");

        let d = file(r#"{"v": 7, "blocks": [[1,2,4],[2,3,5],[3,4,6],[4,5,0],[5,6,1],[6,0,2],[0,1,3]]}"#);
        let g = file(r#"{"degree": 7, "generators": [[0,1,2,3,4,5,6], [0,0,1,2,3,4,5]]}"#);
        let msg = format!("{:#}", verify_files(d.path(), g.path()).unwrap_err());
        assert!(msg.contains("generator 1"), "{msg}");
    }

    #[test]
    fn non_automorphism_is_refuted() {
        let d = file(r#"{"v": 7, "blocks": [[1,2,4],[2,3,5],[3,4,6],[4,5,0],[5,6,1],[6,0,2],[0,1,3]]}"#);
        let g = file(r#"{"degree": 7, "generators": ["(0 1)"]}"#);
        let reports = verify_files(d.path(), g.path()).unwrap();
        assert!(reports[0].is_refuted());
    }
}
