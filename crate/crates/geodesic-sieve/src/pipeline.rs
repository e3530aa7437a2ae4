//! Batch driver: filter -> preprocess -> search per group, oracle
//! cross-checks, and machine-readable reports.
//!
//! Groups are processed in corpus order; workers parallelize across groups
//! only (a single group's search is sequential), and report assembly is
//! single-threaded in corpus order so identical configurations produce
//! identical reports up to the duration fields.

use crate::bounds::BoundSet;
use crate::corpus::{build_corpus, CorpusEntry};
use crate::filters::{self, FilterReason, FilterVerdict, GroupFacts};
use crate::geodesy::Classification;
use crate::oracle::{self, OracleError};
use crate::preprocess::{self, InstanceMode, PreprocessError};
use crate::search::{check_group, SearchConfig, SearchOutcome};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::io::Write;
use std::time::Duration;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunConfig {
    pub corpus: Vec<String>,
    pub stages: Stages,
    pub lattice_cap: usize,
    pub auto_cap: usize,
    pub oracle_cap: usize,
    pub budget_secs: u64,
    pub collision_limit: Option<usize>,
    pub workers: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            corpus: vec!["builtin:desk".into()],
            stages: Stages::default(),
            lattice_cap: crate::group::DEFAULT_LATTICE_CAP,
            auto_cap: crate::group::DEFAULT_LATTICE_CAP,
            oracle_cap: oracle::DEFAULT_ORACLE_CAP,
            budget_secs: 600,
            collision_limit: None,
            workers: 1,
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Stages {
    pub filter: bool,
    pub search: bool,
}

impl Default for Stages {
    fn default() -> Self {
        Stages { filter: true, search: true }
    }
}

impl Stages {
    pub fn parse(s: &str) -> Result<Stages, String> {
        match s {
            "all" => Ok(Stages { filter: true, search: true }),
            "filter" => Ok(Stages { filter: true, search: false }),
            "search" => Ok(Stages { filter: false, search: true }),
            other => Err(format!("unknown stage selection {other:?} (filter|search|all)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GroupVerdict {
    ConjectureHolds,
    Counterexample,
    Incomplete,
    Error,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct GroupReport {
    pub group: String,
    pub spec: String,
    pub order: usize,
    pub verdict: GroupVerdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub filter: Option<FilterVerdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bounds: Option<BoundSet>,
    /// Set when preprocessing proved no non-complete geodetic set exists
    /// (a required subset lost all its candidates).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verified_without_search: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub search: Option<SearchOutcome>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct RunReport {
    pub version: String,
    pub corpus_provenance: String,
    pub config: RunConfig,
    pub groups: Vec<GroupReport>,
    pub summary: Summary,
}

#[derive(Debug, Default, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub conjecture_holds: usize,
    pub counterexamples: usize,
    pub incomplete: usize,
    pub errors: usize,
    pub searched: usize,
    pub filtered_by: BTreeMap<String, usize>,
}

const PROVENANCE: &str = "built-in family constructors plus user-supplied multiplication \
     tables; not an exhaustive census of isomorphism classes per order";

fn version() -> String {
    env!("CARGO_PKG_VERSION").to_string()
}

/// Filter -> preprocess -> search for one group.
pub fn verify_group(entry: &CorpusEntry, config: &RunConfig) -> GroupReport {
    let g = &entry.group;
    let facts = GroupFacts::collect(g, config.lattice_cap);
    let mut report = GroupReport {
        group: g.name().to_string(),
        spec: entry.spec.clone(),
        order: g.order(),
        verdict: GroupVerdict::ConjectureHolds,
        filter: None,
        bounds: Some(facts.bound.clone()),
        verified_without_search: None,
        search: None,
        error: None,
    };

    if config.stages.filter {
        let verdict = filters::filter(&facts);
        let filtered = verdict.filtered;
        report.filter = Some(verdict);
        if filtered {
            return report;
        }
    }

    if !config.stages.search {
        return report;
    }

    match preprocess::build_instance(&facts, InstanceMode::Pruned, config.auto_cap) {
        Err(PreprocessError::InfeasibleGroup { provenance }) => {
            report.verified_without_search = Some(format!(
                "required subset ({provenance:?}) has no allowed candidates"
            ));
        }
        Err(e) => {
            report.verdict = GroupVerdict::Error;
            report.error = Some(e.to_string());
        }
        Ok(instance) => {
            let search_config = SearchConfig {
                collision_limit: config.collision_limit,
                budget: Duration::from_secs(config.budget_secs),
                ..SearchConfig::default()
            };
            match check_group(&facts, &instance, &search_config) {
                Err(e) => {
                    report.verdict = GroupVerdict::Error;
                    report.error = Some(e.to_string());
                }
                Ok(outcome) => {
                    let nontrivial = outcome
                        .geodetic_sets
                        .iter()
                        .any(|s| s.class == Classification::Nontrivial);
                    report.verdict = if nontrivial {
                        GroupVerdict::Counterexample
                    } else if outcome.incomplete {
                        GroupVerdict::Incomplete
                    } else {
                        GroupVerdict::ConjectureHolds
                    };
                    report.search = Some(outcome);
                }
            }
        }
    }
    report
}

/// Runs the verification pipeline over a corpus. Exit code: 0 when the
/// conjecture holds everywhere, 2 on any counterexample, 1 on errors or
/// timeouts.
pub fn run_verify(config: &RunConfig) -> Result<(RunReport, i32), String> {
    let entries = build_corpus(&config.corpus).map_err(|e| e.to_string())?;
    let groups = run_parallel(&entries, config.workers, |e| verify_group(e, config));

    let mut summary = Summary { total: groups.len(), ..Summary::default() };
    for g in &groups {
        match g.verdict {
            GroupVerdict::ConjectureHolds => summary.conjecture_holds += 1,
            GroupVerdict::Counterexample => summary.counterexamples += 1,
            GroupVerdict::Incomplete => summary.incomplete += 1,
            GroupVerdict::Error => summary.errors += 1,
        }
        if let Some(f) = &g.filter {
            if f.filtered {
                *summary.filtered_by.entry(format!("{:?}", f.reason)).or_default() += 1;
            }
        }
        if g.search.is_some() {
            summary.searched += 1;
        }
    }
    let code = if summary.counterexamples > 0 {
        2
    } else if summary.errors > 0 || summary.incomplete > 0 {
        1
    } else {
        0
    };
    Ok((
        RunReport {
            version: version(),
            corpus_provenance: PROVENANCE.to_string(),
            config: config.clone(),
            groups,
            summary,
        },
        code,
    ))
}

#[derive(Debug, Serialize)]
pub struct DiffEntry {
    pub group: String,
    pub spec: String,
    pub order: usize,
    pub candidates: usize,
    pub status: DiffStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<usize>>,
    pub subsets_enumerated: u64,
    pub sets_tested: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DiffStatus {
    Agree,
    Disagree,
    CapExceeded,
    Error,
}

#[derive(Debug, Serialize)]
pub struct DiffReport {
    pub version: String,
    pub config: RunConfig,
    pub entries: Vec<DiffEntry>,
    pub agreements: usize,
    pub disagreements: usize,
    pub skipped: usize,
}

/// Compares the search (exhaustive mode, no filters) against the
/// brute-force oracle on every corpus group within the candidate cap.
/// Exit code: 0 when all checked groups agree, 2 on a mismatch, 1 on error.
pub fn run_oracle_diff(config: &RunConfig) -> Result<(DiffReport, i32), String> {
    let entries = build_corpus(&config.corpus).map_err(|e| e.to_string())?;
    let diffs = run_parallel(&entries, config.workers, |e| diff_group(e, config));

    let agreements = diffs.iter().filter(|d| d.status == DiffStatus::Agree).count();
    let disagreements = diffs.iter().filter(|d| d.status == DiffStatus::Disagree).count();
    let skipped = diffs.iter().filter(|d| d.status == DiffStatus::CapExceeded).count();
    let errors = diffs.iter().filter(|d| d.status == DiffStatus::Error).count();
    let code = if disagreements > 0 {
        2
    } else if errors > 0 {
        1
    } else {
        0
    };
    Ok((
        DiffReport {
            version: version(),
            config: config.clone(),
            entries: diffs,
            agreements,
            disagreements,
            skipped,
        },
        code,
    ))
}

fn diff_group(entry: &CorpusEntry, config: &RunConfig) -> DiffEntry {
    let g = &entry.group;
    let mut out = DiffEntry {
        group: g.name().to_string(),
        spec: entry.spec.clone(),
        order: g.order(),
        candidates: preprocess::candidate_space(g).len(),
        status: DiffStatus::Agree,
        witness: None,
        subsets_enumerated: 0,
        sets_tested: 0,
    };
    let oracle_report = match oracle::brute_force(g, config.oracle_cap) {
        Err(OracleError::CapExceeded { .. }) => {
            out.status = DiffStatus::CapExceeded;
            return out;
        }
        Ok(r) => r,
    };
    out.subsets_enumerated = oracle_report.subsets_enumerated;

    let facts = GroupFacts::collect(g, config.lattice_cap);
    let search_config = SearchConfig {
        collision_limit: config.collision_limit,
        budget: Duration::from_secs(config.budget_secs),
        ..SearchConfig::default()
    };
    let outcome = preprocess::build_instance(&facts, InstanceMode::Exhaustive, config.auto_cap)
        .map_err(|e| e.to_string())
        .and_then(|instance| {
            check_group(&facts, &instance, &search_config).map_err(|e| e.to_string())
        });
    match outcome {
        Err(e) => {
            out.status = DiffStatus::Error;
            out.witness = None;
            out.group = format!("{} ({e})", out.group);
        }
        Ok(outcome) => {
            out.sets_tested = outcome.sets_tested;
            let agreement = oracle::compare(&oracle_report, &outcome);
            if !agreement.agree {
                out.status = DiffStatus::Disagree;
                out.witness = agreement
                    .missing_from_search
                    .into_iter()
                    .chain(agreement.extra_in_search)
                    .min_by_key(|s| (s.len(), s.clone()));
            }
        }
    }
    out
}

fn run_parallel<T: Send, F: Fn(&CorpusEntry) -> T + Sync + Send>(
    entries: &[CorpusEntry],
    workers: usize,
    f: F,
) -> Vec<T> {
    if workers <= 1 {
        return entries.iter().map(f).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .expect("worker pool");
    pool.install(|| {
        use rayon::prelude::*;
        entries.par_iter().map(f).collect()
    })
}

/// Table-style aggregation of saved run reports (text or CSV).
pub fn render_report(reports: &[RunReport], csv: bool, w: &mut impl Write) -> std::io::Result<()> {
    let mut rows: Vec<(&GroupReport, &str)> = Vec::new();
    for r in reports {
        for g in &r.groups {
            let reason: &str = match (&g.filter, &g.verified_without_search) {
                (Some(f), _) if f.filtered => reason_name(f.reason),
                (_, Some(_)) => "PreprocessInfeasible",
                _ if g.search.is_some() => "Searched",
                _ => "NotRun",
            };
            rows.push((g, reason));
        }
    }
    rows.sort_by_key(|(g, _)| (g.order, g.group.clone()));

    if csv {
        writeln!(w, "group,order,category,verdict,sets_tested,duration_ms")?;
        for (g, reason) in &rows {
            let (tested, ms) = g
                .search
                .as_ref()
                .map(|s| (s.sets_tested, s.duration_ms))
                .unwrap_or((0, 0));
            writeln!(
                w,
                "{},{},{},{:?},{},{}",
                g.group, g.order, reason, g.verdict, tested, ms
            )?;
        }
        return Ok(());
    }

    writeln!(w, "{:<28} {:>6} {:<24} {:<17} {:>12} {:>10}", "Group", "Order", "Category", "Verdict", "Sets tested", "ms")?;
    for (g, reason) in &rows {
        let (tested, ms) = g
            .search
            .as_ref()
            .map(|s| (s.sets_tested.to_string(), s.duration_ms.to_string()))
            .unwrap_or_else(|| ("-".into(), "-".into()));
        writeln!(
            w,
            "{:<28} {:>6} {:<24} {:<17} {:>12} {:>10}",
            g.group,
            g.order,
            reason,
            format!("{:?}", g.verdict),
            tested,
            ms
        )?;
    }
    writeln!(w)?;
    let mut census: BTreeMap<&str, usize> = BTreeMap::new();
    for (_, reason) in &rows {
        *census.entry(reason).or_default() += 1;
    }
    writeln!(w, "Groups by category:")?;
    for (reason, count) in census {
        writeln!(w, "  {reason:<26} {count}")?;
    }
    Ok(())
}

fn reason_name(reason: FilterReason) -> &'static str {
    match reason {
        FilterReason::Abelian => "Abelian",
        FilterReason::EvenCenter => "EvenCenter",
        FilterReason::LargeCenter => "LargeCenter",
        FilterReason::AbelianIndex2 => "AbelianIndex2",
        FilterReason::NilpotentClass2Special => "NilpotentClass2Special",
        FilterReason::NilpotentGeneral => "NilpotentGeneral",
        FilterReason::AbelianIndex3Centerless => "AbelianIndex3Centerless",
        FilterReason::AbelianIndex3NotNormal => "AbelianIndex3NotNormal",
        FilterReason::CommutativityDegree => "CommutativityDegree",
        FilterReason::BoundInfeasible => "BoundInfeasible",
        FilterReason::None => "None",
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick_config(corpus: &[&str]) -> RunConfig {
        RunConfig {
            corpus: corpus.iter().map(|s| s.to_string()).collect(),
            budget_secs: 60,
            ..RunConfig::default()
        }
    }

    #[test]
    fn verify_dihedral_range_filters_everything() {
        let (report, code) = run_verify(&quick_config(&["dihedral:3..12"])).unwrap();
        assert_eq!(code, 0);
        assert_eq!(report.summary.total, 10);
        assert_eq!(report.summary.conjecture_holds, 10);
        for g in &report.groups {
            let f = g.filter.as_ref().unwrap();
            assert!(f.filtered);
            assert!(matches!(
                f.reason,
                FilterReason::AbelianIndex2 | FilterReason::EvenCenter
            ));
        }
    }

    #[test]
    fn verify_a5_searches_and_holds() {
        let (report, code) = run_verify(&quick_config(&["alternating:5"])).unwrap();
        assert_eq!(code, 0);
        let g = &report.groups[0];
        assert_eq!(g.verdict, GroupVerdict::ConjectureHolds);
        let s = g.search.as_ref().expect("A5 reaches the search");
        assert!(!s.geodetic_sets.iter().any(|x| x.class == Classification::Nontrivial));
    }

    #[test]
    fn oracle_diff_small_corpus_agrees() {
        let cfg = quick_config(&["cyclic:3..8", "symmetric:3", "dicyclic:8"]);
        let (diff, code) = run_oracle_diff(&cfg).unwrap();
        assert_eq!(code, 0, "{diff:?}");
        assert_eq!(diff.disagreements, 0);
        assert!(diff.agreements >= 8);
    }

    #[test]
    fn corrupt_table_reports_error_exit() {
        let dir = std::env::temp_dir().join("geodesic-sieve-test-pipeline");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("bad.json");
        // C6 with an intercalate swap: Latin but not associative.
        let mut t: Vec<Vec<usize>> =
            (0..6).map(|a| (0..6).map(|b| (a + b) % 6).collect()).collect();
        t[1].swap(1, 4);
        t[4].swap(1, 4);
        std::fs::write(
            &path,
            serde_json::to_string(&serde_json::json!({"name": "bad", "order": 6, "table": t}))
                .unwrap(),
        )
        .unwrap();
        let cfg = quick_config(&[&format!("table:{}", path.display())]);
        let err = run_verify(&cfg);
        assert!(err.is_err(), "corrupt tables fail corpus construction");
    }

    #[test]
    fn parallel_equals_sequential() {
        let mut cfg = quick_config(&["cyclic:3..10", "dihedral:3..6"]);
        let (seq, _) = run_verify(&cfg).unwrap();
        cfg.workers = 4;
        let (par, _) = run_verify(&cfg).unwrap();
        let strip = |r: &RunReport| {
            r.groups
                .iter()
                .map(|g| (g.group.clone(), g.verdict, g.search.as_ref().map(|s| s.sets_tested)))
                .collect::<Vec<_>>()
        };
        assert_eq!(strip(&seq), strip(&par));
    }
}
