//! Shared plumbing for the `caykit` binary: group arguments, run
//! configuration and the composed pipelines.

pub mod pipeline;

use std::path::Path;

use anyhow::{bail, Context, Result};
use caykit::group::{Family, GroupSpec};

pub use pipeline::{run_pipeline, Artifact, Pipeline, RunConfig, SCHEMA_VERSION};

/// Reads a group argument: a path to a JSON spec, inline JSON, or a
/// shorthand such as `Z^2`, `F2`, `ZZ3`, `C7`, `S4`, or `Z x C2`.
pub fn parse_group(arg: &str) -> Result<GroupSpec> {
    let trimmed = arg.trim();
    if trimmed.starts_with('{') {
        return Ok(GroupSpec::from_json_str(trimmed)?);
    }
    let path = Path::new(trimmed);
    if path.is_file() {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        return Ok(GroupSpec::from_json_str(&text)?);
    }
    let factors: Vec<&str> = trimmed.split(['x', '×']).map(str::trim).collect();
    let specs = factors.iter().map(|f| shorthand(f)).collect::<Result<Vec<_>>>()?;
    if specs.len() == 1 {
        Ok(specs.into_iter().next().unwrap())
    } else {
        Ok(GroupSpec::product(specs)?)
    }
}

fn shorthand(s: &str) -> Result<GroupSpec> {
    let upper = s.to_ascii_uppercase();
    let num = |rest: &str| -> Result<u64> {
        rest.parse().with_context(|| format!("bad group shorthand {s:?}"))
    };
    let family = match upper.as_str() {
        "Z" => Family::FreeAbelian(1),
        "ZZ3" | "Z*Z3" => Family::FreeProductZZ3,
        _ if upper.starts_with("Z^") => Family::FreeAbelian(num(&upper[2..])? as usize),
        _ if upper.starts_with("Z_") || upper.starts_with("Z/") => Family::FiniteCyclic(num(&upper[2..])? as u32),
        _ if upper.starts_with('C') => Family::FiniteCyclic(num(&upper[1..])? as u32),
        _ if upper.starts_with('F') => Family::Free(num(&upper[1..])? as usize),
        _ if upper.starts_with('S') => Family::FiniteSymmetric(num(&upper[1..])? as usize),
        _ if upper.starts_with('Z') => Family::FreeAbelian(num(&upper[1..])? as usize),
        _ => bail!("unknown group shorthand {s:?}"),
    };
    let spec = GroupSpec::new(family)?;
    caykit::group::Group::new(&spec)?;
    Ok(spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shorthands() {
        assert_eq!(parse_group("Z^2").unwrap().family, Family::FreeAbelian(2));
        assert_eq!(parse_group("f3").unwrap().family, Family::Free(3));
        assert_eq!(parse_group("ZZ3").unwrap().family, Family::FreeProductZZ3);
        assert_eq!(parse_group("C7").unwrap().family, Family::FiniteCyclic(7));
        assert_eq!(parse_group("Z_7").unwrap().family, Family::FiniteCyclic(7));
        assert_eq!(parse_group("S4").unwrap().family, Family::FiniteSymmetric(4));
        let p = parse_group("Z x C2").unwrap();
        assert!(matches!(p.family, Family::DirectProduct(ref f) if f.len() == 2));
        assert!(parse_group("Q8").is_err());
        assert!(parse_group("S12").is_err());
    }

    #[test]
    fn inline_json() {
        let g = parse_group(r#"{"family":"free","params":{"m":2}}"#).unwrap();
        assert_eq!(g.family, Family::Free(2));
    }
}
