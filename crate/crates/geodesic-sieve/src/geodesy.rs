//! Geodetic testing of Cayley graphs.
//!
//! Cayley graphs are vertex-transitive, so it suffices to check that
//! geodesics from the identity vertex to every other vertex are unique.
//! [`GeodesyEngine::geodesy`] runs a single-source BFS that counts
//! geodesics per vertex (saturating at 2 -- only "unique vs not" matters)
//! and records elements with two or more geodesics of length exactly three
//! for the collision handler. [`geodesic_count_oracle`] recomputes counts
//! independently via adjacency-matrix powers for cross-validation.

use crate::bitset::ElementSet;
use crate::group::FiniteGroup;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeodesyError {
    #[error("generating set is not inverse-closed: contains {element} but not its inverse")]
    AsymmetricSigma { element: usize },
    #[error("vertex {vertex} is not reachable from the identity")]
    Unreachable { vertex: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Geodetic,
    NotGenerating,
    Collisions,
    ShortCentralGeodesic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Classification {
    Complete,
    OddCycle,
    #[serde(rename = "NONTRIVIAL")]
    Nontrivial,
}

/// Outcome of one geodetic test.
#[derive(Debug, Clone)]
pub struct GeodesyResult {
    pub verdict: Verdict,
    /// Elements with >= 2 geodesics at distance exactly 3, capped at the
    /// collision limit. Nonempty only when `verdict == Collisions`.
    pub collisions: Vec<usize>,
    /// Set when the verdict is `Geodetic`.
    pub classification: Option<Classification>,
    /// Largest distance seen before the test stopped.
    pub diameter: usize,
}

#[derive(Debug, Clone)]
pub struct GeodesyOptions<'a> {
    pub collision_limit: usize,
    /// Required central geodesic length: reaching a nontrivial central
    /// element strictly earlier makes the branch dead.
    pub central: Option<CentralCheck<'a>>,
}

#[derive(Debug, Clone, Copy)]
pub struct CentralCheck<'a> {
    pub length: usize,
    pub center: &'a ElementSet,
}

/// Default cap on recorded distance-3 collisions.
pub fn default_collision_limit(order: usize) -> usize {
    let base = 32.min(order.div_ceil(16));
    if order % 2 == 0 {
        base + 8
    } else {
        base
    }
}

/// Breadth-first geodetic test with reusable scratch buffers; one engine
/// per worker.
pub struct GeodesyEngine {
    dist: Vec<u16>,
    count: Vec<u8>,
    queue: Vec<u32>,
}

const UNSEEN: u16 = u16::MAX;

impl GeodesyEngine {
    pub fn new(order: usize) -> Self {
        GeodesyEngine {
            dist: vec![UNSEEN; order],
            count: vec![0; order],
            queue: Vec::with_capacity(order),
        }
    }

    /// Tests whether `Cay(G, sigma)` is geodetic.
    ///
    /// `sigma` must be a symmetric subset of `G \ {1}`; asymmetry is
    /// rejected. On a collision, the BFS completes the layer carrying the
    /// first collision and stops.
    pub fn geodesy(
        &mut self,
        g: &FiniteGroup,
        sigma: &[usize],
        opts: &GeodesyOptions,
    ) -> Result<GeodesyResult, GeodesyError> {
        let n = g.order();
        for &a in sigma {
            debug_assert!(a != 0, "identity in generating set");
            if !sigma.contains(&g.inv(a)) {
                return Err(GeodesyError::AsymmetricSigma { element: a });
            }
        }

        self.dist.resize(n, UNSEEN);
        self.count.resize(n, 0);
        self.dist.fill(UNSEEN);
        self.count.fill(0);
        self.queue.clear();

        self.dist[0] = 0;
        self.count[0] = 1;
        self.queue.push(0);

        let mut layer_start = 0usize;
        let mut depth = 0usize;
        let mut reached = 1usize;
        let mut collision_seen = false;
        let mut collisions: Vec<usize> = Vec::new();

        while layer_start < self.queue.len() {
            let layer_end = self.queue.len();
            let next_depth = depth + 1;
            for qi in layer_start..layer_end {
                let v = self.queue[qi] as usize;
                let cv = self.count[v];
                for &a in sigma {
                    let w = g.mul(v, a);
                    if self.dist[w] == UNSEEN {
                        self.dist[w] = next_depth as u16;
                        self.count[w] = cv;
                        self.queue.push(w as u32);
                        reached += 1;
                        if let Some(cc) = &opts.central {
                            if next_depth < cc.length && w != 0 && cc.center.contains(w) {
                                return Ok(GeodesyResult {
                                    verdict: Verdict::ShortCentralGeodesic,
                                    collisions: Vec::new(),
                                    classification: None,
                                    diameter: next_depth,
                                });
                            }
                        }
                    } else if self.dist[w] as usize == next_depth {
                        self.count[w] = self.count[w].saturating_add(cv).min(2);
                    }
                }
            }
            // Layer `next_depth` is complete; check it for collisions.
            for qi in layer_end..self.queue.len() {
                let w = self.queue[qi] as usize;
                if self.count[w] >= 2 {
                    collision_seen = true;
                    if next_depth == 3 && collisions.len() < opts.collision_limit {
                        collisions.push(w);
                    }
                }
            }
            depth = next_depth;
            layer_start = layer_end;
            if collision_seen {
                return Ok(GeodesyResult {
                    verdict: Verdict::Collisions,
                    collisions,
                    classification: None,
                    diameter: depth,
                });
            }
        }

        let diameter = depth.saturating_sub(1);
        if reached < n {
            return Ok(GeodesyResult {
                verdict: Verdict::NotGenerating,
                collisions: Vec::new(),
                classification: None,
                diameter,
            });
        }
        Ok(GeodesyResult {
            verdict: Verdict::Geodetic,
            collisions: Vec::new(),
            classification: Some(classify_trivial(g, sigma)),
            diameter,
        })
    }
}

/// Number of geodesics from the identity to `v`, computed independently of
/// the BFS path: iterate the row vector `e_1 A^d` and read entry `v` at the
/// first power `d` where it becomes nonzero (every length-d walk achieving
/// the distance is a geodesic).
pub fn geodesic_count_oracle(
    g: &FiniteGroup,
    sigma: &[usize],
    v: usize,
) -> Result<(usize, u128), GeodesyError> {
    let n = g.order();
    if v == 0 {
        return Ok((0, 1));
    }
    let mut row = vec![0u128; n];
    row[0] = 1;
    let mut next = vec![0u128; n];
    for d in 1..=n {
        next.fill(0);
        for x in 0..n {
            if row[x] > 0 {
                for &a in sigma {
                    let y = g.mul(x, a);
                    next[y] = next[y].saturating_add(row[x]);
                }
            }
        }
        std::mem::swap(&mut row, &mut next);
        if row[v] > 0 {
            return Ok((d, row[v]));
        }
    }
    Err(GeodesyError::Unreachable { vertex: v })
}

/// Distances and geodesic counts to every vertex via the matrix-power
/// route; `None` entries are unreachable.
pub fn all_counts_oracle(g: &FiniteGroup, sigma: &[usize]) -> Vec<Option<(usize, u128)>> {
    let n = g.order();
    let mut out: Vec<Option<(usize, u128)>> = vec![None; n];
    out[0] = Some((0, 1));
    let mut row = vec![0u128; n];
    row[0] = 1;
    let mut next = vec![0u128; n];
    for d in 1..=n {
        if out.iter().all(|e| e.is_some()) {
            break;
        }
        next.fill(0);
        for x in 0..n {
            if row[x] > 0 {
                for &a in sigma {
                    let y = g.mul(x, a);
                    next[y] = next[y].saturating_add(row[x]);
                }
            }
        }
        std::mem::swap(&mut row, &mut next);
        let mut progressed = false;
        for y in 0..n {
            if out[y].is_none() && row[y] > 0 {
                out[y] = Some((d, row[y]));
                progressed = true;
            }
        }
        if !progressed {
            break;
        }
    }
    out
}

/// Classification of a geodetic `Cay(G, sigma)`.
///
/// Complete iff `sigma = G \ {1}` (takes precedence: K3 is also a 3-cycle);
/// odd cycle iff `sigma = {a, a^-1}` with `a != a^-1`, `<a> = G` and `|G|`
/// odd; anything else is a nontrivial find.
pub fn classify_trivial(g: &FiniteGroup, sigma: &[usize]) -> Classification {
    let n = g.order();
    if sigma.len() == n - 1 {
        return Classification::Complete;
    }
    if sigma.len() == 2 && n % 2 == 1 {
        let (a, b) = (sigma[0], sigma[1]);
        if b == g.inv(a) && a != b && crate::group::subgroup_closure(g, [a]).len() == n {
            return Classification::OddCycle;
        }
    }
    Classification::Nontrivial
}
