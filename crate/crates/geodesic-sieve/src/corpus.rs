//! Corpus specification mini-language.
//!
//! A corpus is a whitespace- or semicolon-separated list of flat specs:
//!
//! ```text
//! cyclic:15  cyclic:3..41,odd  dihedral:3..20  symmetric:5  alternating:5
//! semidirect:7,3,2  dicyclic:12  heisenberg:3  table:groups/my_group.json
//! cyclic:13*alternating:4      (direct product)
//! builtin:desk                 (the built-in verification corpus)
//! ```
//!
//! Ranges expand to one group per value; products combine single groups
//! with `*`.

use crate::group::{self, FiniteGroup, GroupJson};
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("cannot parse corpus spec {spec:?}: {reason}")]
    BadSpec { spec: String, reason: String },
    #[error("cannot read table file {path}: {reason}")]
    TableFile { path: String, reason: String },
    #[error("group construction failed for {spec:?}: {source}")]
    Group {
        spec: String,
        #[source]
        source: group::GroupError,
    },
}

#[derive(Debug)]
pub struct CorpusEntry {
    pub spec: String,
    pub group: FiniteGroup,
}

/// Built-in verification corpus: cyclic and dihedral ranges, the small
/// dicyclic/symmetric/alternating groups, a few semidirect products and
/// direct products up to order 360.
pub fn desk_corpus_specs() -> Vec<String> {
    let mut specs: Vec<String> = vec![
        "cyclic:3..41".into(),
        "dihedral:3..20".into(),
        "dicyclic:8".into(),
        "dicyclic:12".into(),
        "symmetric:3".into(),
        "symmetric:4".into(),
        "symmetric:5".into(),
        "alternating:4".into(),
        "alternating:5".into(),
        "semidirect:7,3,2".into(),
        "semidirect:13,3,3".into(),
        "semidirect:5,4,2".into(),
        "semidirect:7,6,3".into(),
        "cyclic:3*cyclic:3".into(),
        "heisenberg:3".into(),
        "cyclic:13*alternating:4".into(),
        "cyclic:4*symmetric:3".into(),
        "cyclic:5*symmetric:3".into(),
        "cyclic:3*alternating:4".into(),
        "cyclic:2*alternating:5".into(),
        "cyclic:3*alternating:5".into(),
    ];
    specs.dedup();
    specs
}

/// Expands and builds every group named by the given specs, in order.
pub fn build_corpus(specs: &[String]) -> Result<Vec<CorpusEntry>, CorpusError> {
    let mut out = Vec::new();
    for raw in specs {
        for item in raw.split(|c: char| c.is_whitespace() || c == ';') {
            let item = item.trim();
            if item.is_empty() {
                continue;
            }
            if item == "builtin:desk" {
                let nested = desk_corpus_specs();
                out.extend(build_corpus(&nested)?);
                continue;
            }
            for spec in expand_ranges(item)? {
                let group = build_product(&spec)?;
                out.push(CorpusEntry { spec, group });
            }
        }
    }
    Ok(out)
}

/// Expands a range argument (only meaningful outside products).
fn expand_ranges(item: &str) -> Result<Vec<String>, CorpusError> {
    if item.contains('*') {
        if item.contains("..") {
            return Err(CorpusError::BadSpec {
                spec: item.to_string(),
                reason: "ranges cannot be combined with products".into(),
            });
        }
        return Ok(vec![item.to_string()]);
    }
    let (family, args) = match item.split_once(':') {
        Some(p) => p,
        None => return Ok(vec![item.to_string()]),
    };
    if !args.contains("..") {
        return Ok(vec![item.to_string()]);
    }
    let (range, parity) = match args.split_once(',') {
        Some((r, p @ ("odd" | "even"))) => (r, Some(p)),
        Some(_) => {
            return Err(CorpusError::BadSpec {
                spec: item.to_string(),
                reason: "range suffix must be ,odd or ,even".into(),
            })
        }
        None => (args, None),
    };
    let (lo, hi) = range.split_once("..").unwrap();
    let lo: usize = lo.parse().map_err(|_| bad(item, "range start"))?;
    let hi: usize = hi.parse().map_err(|_| bad(item, "range end"))?;
    if lo > hi {
        return Err(bad(item, "empty range"));
    }
    Ok((lo..=hi)
        .filter(|n| match parity {
            Some("odd") => n % 2 == 1,
            Some("even") => n % 2 == 0,
            _ => true,
        })
        .map(|n| format!("{family}:{n}"))
        .collect())
}

fn bad(spec: &str, reason: &str) -> CorpusError {
    CorpusError::BadSpec { spec: spec.to_string(), reason: reason.to_string() }
}

/// Builds a single spec, resolving `*` products left to right.
fn build_product(spec: &str) -> Result<FiniteGroup, CorpusError> {
    let mut parts = spec.split('*');
    let first = parts.next().expect("split yields at least one part");
    let mut acc = build_atom(first.trim())?;
    for p in parts {
        let rhs = build_atom(p.trim())?;
        acc = group::direct_product(&acc, &rhs)
            .map_err(|source| CorpusError::Group { spec: spec.to_string(), source })?;
    }
    Ok(acc)
}

fn build_atom(spec: &str) -> Result<FiniteGroup, CorpusError> {
    let (family, args) = spec
        .split_once(':')
        .ok_or_else(|| bad(spec, "expected family:args"))?;
    let wrap = |r: Result<FiniteGroup, group::GroupError>| {
        r.map_err(|source| CorpusError::Group { spec: spec.to_string(), source })
    };
    match family {
        "cyclic" => wrap(group::cyclic(parse_one(spec, args)?)),
        "dihedral" => wrap(group::dihedral(parse_one(spec, args)?)),
        "symmetric" => wrap(group::symmetric(parse_one(spec, args)?)),
        "alternating" => wrap(group::alternating(parse_one(spec, args)?)),
        "heisenberg" => wrap(group::heisenberg(parse_one(spec, args)?)),
        "dicyclic" => {
            let order = parse_one(spec, args)?;
            if order % 4 != 0 || order == 0 {
                return Err(bad(spec, "dicyclic order must be a positive multiple of 4"));
            }
            wrap(group::dicyclic(order / 4))
        }
        "semidirect" => {
            let v = parse_list(spec, args, 3)?;
            wrap(group::semidirect_cyclic(v[0], v[1], v[2]))
        }
        "table" => {
            let path = Path::new(args);
            let text = std::fs::read_to_string(path).map_err(|e| CorpusError::TableFile {
                path: args.to_string(),
                reason: e.to_string(),
            })?;
            let json: GroupJson =
                serde_json::from_str(&text).map_err(|e| CorpusError::TableFile {
                    path: args.to_string(),
                    reason: e.to_string(),
                })?;
            wrap(FiniteGroup::from_json(&json))
        }
        _ => Err(bad(spec, "unknown family")),
    }
}

fn parse_one(spec: &str, args: &str) -> Result<usize, CorpusError> {
    args.parse().map_err(|_| bad(spec, "expected one integer argument"))
}

fn parse_list(spec: &str, args: &str, want: usize) -> Result<Vec<usize>, CorpusError> {
    let v: Result<Vec<usize>, _> = args.split(',').map(|a| a.trim().parse()).collect();
    match v {
        Ok(v) if v.len() == want => Ok(v),
        _ => Err(bad(spec, "expected comma-separated integers")),
    }
}
