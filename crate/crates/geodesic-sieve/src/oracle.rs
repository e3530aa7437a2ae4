//! Brute-force ground truth for small groups.
//!
//! Enumerates every subset of the candidate space, expands it to a
//! symmetric set, keeps the generating ones, and tests geodicity by the
//! matrix-power counter. Deliberately shares no code with the search's BFS
//! fast path, and classifies results from first principles, so the two
//! routes have independent failure modes.

use crate::geodesy::{all_counts_oracle, Classification};
use crate::group::{subgroup_closure, FiniteGroup};
use crate::preprocess::{candidate_space, CandidateSpace};
use crate::search::{GeodeticSet, SearchOutcome};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("candidate space of size {candidates} exceeds the brute-force cap {cap}")]
    CapExceeded { candidates: usize, cap: usize },
}

pub const DEFAULT_ORACLE_CAP: usize = 20;

#[derive(Debug, Clone, Serialize)]
pub struct OracleReport {
    pub group: String,
    pub all_geodetic: Vec<GeodeticSet>,
    pub subsets_enumerated: u64,
}

/// Exhaustively tests all `2^#candidates` symmetric subsets.
pub fn brute_force(g: &FiniteGroup, cap: usize) -> Result<OracleReport, OracleError> {
    let cands = candidate_space(g);
    let nc = cands.len();
    if nc > cap {
        return Err(OracleError::CapExceeded { candidates: nc, cap });
    }
    let mut all_geodetic: Vec<GeodeticSet> = Vec::new();
    for mask in 0u64..(1u64 << nc) {
        let sigma = expand_mask(g, &cands, mask);
        if sigma.is_empty() && g.order() > 1 {
            continue;
        }
        if subgroup_closure(g, sigma.iter().copied()).len() != g.order() {
            continue;
        }
        if is_geodetic_by_counts(g, &sigma) {
            let class = classify_first_principles(g, &sigma);
            all_geodetic.push(GeodeticSet { elements: sigma, class });
        }
    }
    all_geodetic.sort_by(|a, b| (a.elements.len(), &a.elements).cmp(&(b.elements.len(), &b.elements)));
    Ok(OracleReport {
        group: g.name().to_string(),
        all_geodetic,
        subsets_enumerated: 1u64 << nc,
    })
}

fn expand_mask(g: &FiniteGroup, cands: &CandidateSpace, mask: u64) -> Vec<usize> {
    let mut sigma = Vec::new();
    for c in 0..cands.len() {
        if mask >> c & 1 == 1 {
            let (a, b) = cands.expand(g, c);
            sigma.push(a);
            if let Some(b) = b {
                sigma.push(b);
            }
        }
    }
    sigma.sort_unstable();
    sigma
}

/// All vertices reachable with exactly one geodesic each, via matrix powers.
fn is_geodetic_by_counts(g: &FiniteGroup, sigma: &[usize]) -> bool {
    all_counts_oracle(g, sigma)
        .iter()
        .all(|e| matches!(e, Some((_, 1))))
}

/// Classification by direct set comparison, independent of
/// `geodesy::classify_trivial`.
fn classify_first_principles(g: &FiniteGroup, sigma: &[usize]) -> Classification {
    let n = g.order();
    let all_nontrivial: Vec<usize> = (1..n).collect();
    if sigma == all_nontrivial {
        return Classification::Complete;
    }
    if n % 2 == 1 && sigma.len() == 2 && g.mul(sigma[0], sigma[1]) == 0 && sigma[0] != sigma[1] {
        return Classification::OddCycle;
    }
    Classification::Nontrivial
}

#[derive(Debug, Clone, Serialize)]
pub struct Agreement {
    pub agree: bool,
    /// Sets the oracle found but the search missed (smallest first).
    pub missing_from_search: Vec<Vec<usize>>,
    /// Sets the search reported but the oracle refutes.
    pub extra_in_search: Vec<Vec<usize>>,
}

/// Set-equality comparison of the two geodetic families.
pub fn compare(oracle: &OracleReport, search: &SearchOutcome) -> Agreement {
    let o: Vec<&Vec<usize>> = oracle.all_geodetic.iter().map(|s| &s.elements).collect();
    let s: Vec<&Vec<usize>> = search.geodetic_sets.iter().map(|s| &s.elements).collect();
    let missing: Vec<Vec<usize>> =
        o.iter().filter(|x| !s.contains(x)).map(|x| (*x).clone()).collect();
    let extra: Vec<Vec<usize>> =
        s.iter().filter(|x| !o.contains(x)).map(|x| (*x).clone()).collect();
    Agreement {
        agree: missing.is_empty() && extra.is_empty(),
        missing_from_search: missing,
        extra_in_search: extra,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, symmetric};

    #[test]
    fn s3_only_complete() {
        let s3 = symmetric(3).unwrap();
        let rep = brute_force(&s3, 20).unwrap();
        assert_eq!(rep.subsets_enumerated, 16);
        assert_eq!(rep.all_geodetic.len(), 1);
        assert_eq!(rep.all_geodetic[0].elements, (1..6).collect::<Vec<_>>());
        assert_eq!(rep.all_geodetic[0].class, Classification::Complete);
    }

    #[test]
    fn c5_three_sets() {
        let c5 = cyclic(5).unwrap();
        let rep = brute_force(&c5, 20).unwrap();
        assert_eq!(rep.subsets_enumerated, 4);
        let sets: Vec<&Vec<usize>> = rep.all_geodetic.iter().map(|s| &s.elements).collect();
        assert_eq!(sets, vec![&vec![1, 4], &vec![2, 3], &vec![1, 2, 3, 4]]);
        assert_eq!(rep.all_geodetic[0].class, Classification::OddCycle);
    }

    #[test]
    fn c4_only_complete() {
        let c4 = cyclic(4).unwrap();
        let rep = brute_force(&c4, 20).unwrap();
        assert_eq!(rep.subsets_enumerated, 4);
        assert_eq!(rep.all_geodetic.len(), 1);
        assert_eq!(rep.all_geodetic[0].elements, vec![1, 2, 3]);
    }

    #[test]
    fn odd_cycle_counts_match_totient() {
        // For odd n, the odd-cycle sets are the phi(n)/2 generator pairs
        // (for n = 3 the complete graph and the cycle coincide).
        for n in [5usize, 7, 9, 11, 13, 15] {
            let g = cyclic(n).unwrap();
            let rep = brute_force(&g, 20).unwrap();
            let cycles =
                rep.all_geodetic.iter().filter(|s| s.class == Classification::OddCycle).count();
            let phi = (1..n).filter(|&k| num_integer::gcd(k, n) == 1).count();
            assert_eq!(cycles, phi / 2, "n = {n}");
            assert!(rep
                .all_geodetic
                .iter()
                .any(|s| s.class == Classification::Complete));
        }
    }

    #[test]
    fn cap_exceeded() {
        let s5 = symmetric(5).unwrap();
        assert!(matches!(
            brute_force(&s5, 20),
            Err(OracleError::CapExceeded { .. })
        ));
    }

    #[test]
    fn compare_detects_mismatch() {
        let c5 = cyclic(5).unwrap();
        let rep = brute_force(&c5, 20).unwrap();
        let mut outcome = SearchOutcome {
            geodetic_sets: rep
                .all_geodetic
                .iter()
                .map(|s| GeodeticSet { elements: s.elements.clone(), class: s.class })
                .collect(),
            sets_tested: 0,
            frames_pushed: 0,
            fillin_failures: 0,
            collision_prunes: 0,
            runs: vec![],
            incomplete: false,
            duration_ms: 0,
        };
        assert!(compare(&rep, &outcome).agree);
        // withhold one set
        let withheld = outcome.geodetic_sets.remove(0);
        let diff = compare(&rep, &outcome);
        assert!(!diff.agree);
        assert_eq!(diff.missing_from_search, vec![withheld.elements.clone()]);
        // inject a bogus set
        outcome.geodetic_sets.push(GeodeticSet {
            elements: vec![1],
            class: Classification::Nontrivial,
        });
        outcome.geodetic_sets.push(withheld);
        let diff = compare(&rep, &outcome);
        assert!(!diff.agree);
        assert_eq!(diff.extra_in_search, vec![vec![1]]);
    }
}
