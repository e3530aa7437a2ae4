//! Pruned enumeration of symmetric generating sets.
//!
//! Candidate sets are enumerated as a binary counter over the candidate
//! space (candidate 0 is the least significant position), maintained on a
//! stack of frames. Pushing candidate `I` extends the top frame; popping
//! restores it. Two invariants tie the stack together:
//!
//! - I1: for a frame above another, `X ⊇ X'`, `I < I'`, and
//!   `X ∩ [I', |C|) = X' ∩ [I', |C|)`;
//! - I2: directly above, additionally `X ∩ [I, |C|) = (X' ∩ [I, |C|)) ∪ {I}`.
//!
//! Each pushed set is saturated (`fill_in`): whenever one element has two
//! length-two factorizations over the current set with distinct first
//! factors, the products joining the square's corners are forced in as
//! well. Saturated sets are tested by BFS; unresolved distance-3 collisions
//! spawn temporary required subsets tied to the current frame. Jumps driven
//! by required subsets, per-frame forbidden candidates and the size bounds
//! skip counter ranges wholesale.

use crate::bitset::ElementSet;
use crate::bounds;
use crate::filters::GroupFacts;
use crate::geodesy::{
    default_collision_limit, CentralCheck, Classification, GeodesyEngine, GeodesyOptions, Verdict,
};
use crate::group::FiniteGroup;
use crate::preprocess::{CandidateSpace, Instance, InstanceMode, Provenance, RequiredSubset};
use serde::{Deserialize, Serialize};
use std::cmp::Reverse;
use std::collections::HashMap;
use std::time::{Duration, Instant};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("re-verification failed for a reported generating set: {0:?}")]
    VerificationMismatch(Vec<usize>),
}

#[derive(Debug, Clone)]
pub struct SearchConfig {
    /// Cap on recorded distance-3 collisions; `None` picks the order-based
    /// default.
    pub collision_limit: Option<usize>,
    /// Wall-clock budget for one group.
    pub budget: Duration,
    /// Check stack invariants on every transition (also enabled by the
    /// GEODESIC_SIEVE_DEBUG_ASSERT environment variable).
    pub assert_invariants: bool,
    /// Force order-two elements that appear as a product of two generators
    /// into the set (their geodesics must have odd length).
    pub order2_product_rule: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            collision_limit: None,
            budget: Duration::from_secs(600),
            assert_invariants: false,
            order2_product_rule: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeodeticSet {
    pub elements: Vec<usize>,
    pub class: Classification,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunStats {
    pub central_length: Option<usize>,
    pub sets_tested: u64,
    pub frames_pushed: u64,
    pub fillin_failures: u64,
    pub collision_prunes: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SearchOutcome {
    pub geodetic_sets: Vec<GeodeticSet>,
    pub sets_tested: u64,
    pub frames_pushed: u64,
    pub fillin_failures: u64,
    pub collision_prunes: u64,
    pub runs: Vec<RunStats>,
    /// Budget expiry: the outcome under-approximates.
    pub incomplete: bool,
    pub duration_ms: u128,
}

const ROOT: usize = usize::MAX;

struct Frame {
    x: ElementSet,
    increment: usize,
    forbidden: ElementSet,
    temp_required: Vec<RequiredSubset>,
    /// Size of the largest complete cyclic subgroup seen in sigma.
    clique_hint: usize,
    /// Active bound on |sigma| for this frame.
    sigma_cap: usize,
}

enum FillResult {
    Ok,
    /// `mark_parent`: the failure provably recurs for any future push of
    /// this increment onto the parent frame.
    Fail { mark_parent: bool },
}

enum CollisionOutcome {
    /// `grew`: order-two collisions forced candidates in directly; the set
    /// must be re-saturated and re-tested.
    Ok { grew: bool },
    Fail { mark_parent: bool },
}

///: Ok(()) usable, Err(persists-in-parent-scope) blocked.
type TrialVerdict = Result<(), bool>;

/// Counter positions are a fixed permutation of the candidate indices:
/// members of small required subsets sit at the top of the counter, so the
/// jump that satisfies such a subset happens once near the root instead of
/// once per sibling subtree. Position 0 stays the least significant
/// counter bit; all stack state is kept in position space.
struct CounterSpace<'a> {
    g: &'a FiniteGroup,
    cands: &'a CandidateSpace,
    /// position -> candidate
    order: Vec<usize>,
    /// candidate -> position
    pos: Vec<usize>,
}

impl<'a> CounterSpace<'a> {
    fn build(g: &'a FiniteGroup, cands: &'a CandidateSpace, required: &[RequiredSubset]) -> Self {
        let nc = cands.len();
        let mut smallest = vec![usize::MAX; nc];
        for r in required {
            for &m in &r.members {
                smallest[m] = smallest[m].min(r.members.len());
            }
        }
        // Low positions: candidates in no or only large subsets; high
        // positions: candidates from the smallest subsets.
        let mut order: Vec<usize> = (0..nc).collect();
        order.sort_by_key(|&c| (Reverse(smallest[c]), c));
        let mut pos = vec![0usize; nc];
        for (p, &c) in order.iter().enumerate() {
            pos[c] = p;
        }
        CounterSpace { g, cands, order, pos }
    }

    fn len(&self) -> usize {
        self.order.len()
    }

    fn is_involution_at(&self, p: usize) -> bool {
        self.cands.is_involution(self.order[p])
    }

    fn pos_of_elem(&self, e: usize) -> Option<usize> {
        self.cands.candidate_of(e).map(|c| self.pos[c])
    }

    fn to_positions(&self, members: &[usize]) -> Vec<usize> {
        let mut v: Vec<usize> = members.iter().map(|&c| self.pos[c]).collect();
        v.sort_unstable();
        v
    }

    /// Symmetric element set of a position bit array, ascending.
    fn sigma(&self, x: &ElementSet) -> Vec<usize> {
        let mut out = Vec::with_capacity(2 * x.len());
        for p in x.iter() {
            let (a, b) = self.cands.expand(self.g, self.order[p]);
            out.push(a);
            if let Some(b) = b {
                out.push(b);
            }
        }
        out.sort_unstable();
        out
    }

    fn sigma_size(&self, x: &ElementSet) -> usize {
        x.iter().map(|p| if self.is_involution_at(p) { 1 } else { 2 }).sum()
    }
}

struct Engine<'a> {
    g: &'a FiniteGroup,
    space: CounterSpace<'a>,
    required: Vec<RequiredSubset>,
    collision_limit: usize,
    order2_rule: bool,
    six_divides: bool,
    base_sigma_cap: usize,
    base_m0: u64,
    center_z: u64,
    use_center_bound: bool,
    center: &'a ElementSet,
    central_length: Option<usize>,
    geod: GeodesyEngine,
    deadline: Instant,
    assert_invariants: bool,
    found: Vec<(Vec<usize>, Classification)>,
    stats: RunStats,
}

/// Runs the pruned enumeration for one group.
///
/// With a nontrivial center (pruned mode) the counter runs once per
/// feasible central geodesic length, longest first; the complete generating
/// set is tested at the end if no run reached it (the size bounds prune
/// everything between `sigma_max` and the complete set, so the counter
/// normally cannot). Every reported set is re-verified by an independent
/// geodesy call.
pub fn check_group(
    facts: &GroupFacts,
    instance: &Instance,
    config: &SearchConfig,
) -> Result<SearchOutcome, SearchError> {
    let g = facts.group;
    let n = g.order();
    let started = Instant::now();
    let deadline = started + config.budget;
    let assert_invariants = config.assert_invariants
        || std::env::var("GEODESIC_SIEVE_DEBUG_ASSERT").map(|v| v == "1").unwrap_or(false);
    let collision_limit = config.collision_limit.unwrap_or_else(|| default_collision_limit(n));

    let bound = &facts.bound;
    let base_sigma_cap = if n >= 6 { bound.sigma_max as usize } else { n.saturating_sub(1) };
    let centered = instance.mode == InstanceMode::Pruned && facts.center.len() >= 2;

    let base_forbidden_cands = candidate_forbidden(instance, &instance.forbidden);

    let mut runs: Vec<RunStats> = Vec::new();
    let mut found: Vec<(Vec<usize>, Classification)> = Vec::new();
    let mut incomplete = false;

    // One run per feasible central length (longest first, they fail
    // faster), or a single unconstrained run. A nontrivial center with no
    // feasible length needs no run at all.
    let run_specs: Vec<Option<usize>> = if centered {
        let mut ks = instance.central.lengths.clone();
        ks.sort_unstable_by_key(|&k| Reverse(k));
        ks.into_iter().map(Some).collect()
    } else {
        vec![None]
    };

    for spec in run_specs {
        let mut required = instance.required.clone();
        let mut forbidden = base_forbidden_cands.clone();
        let mut skip_run = false;
        if let Some(k) = spec {
            if let Some(short) = instance.central.short_forbidden.get(&k) {
                for c in 0..instance.candidates.len() {
                    if short.contains(instance.candidates.rep(c)) {
                        forbidden.insert(c);
                    }
                }
            }
            let mut root_subsets: Vec<RequiredSubset> = Vec::new();
            for (_z, elems) in instance.central.roots.get(&k).into_iter().flatten() {
                let mut members: Vec<usize> = elems
                    .iter()
                    .filter_map(|&e| instance.candidates.candidate_of(e))
                    .filter(|&c| !forbidden.contains(c))
                    .collect();
                members.sort_unstable();
                members.dedup();
                if members.is_empty() {
                    // Some central element has no usable root at this
                    // length: no solutions with this central diameter.
                    skip_run = true;
                    break;
                }
                root_subsets.push(RequiredSubset { members, provenance: Provenance::CentralRoots });
            }
            root_subsets.sort_by(|a, b| a.members.cmp(&b.members));
            root_subsets.dedup();
            required.extend(root_subsets);
        }
        if skip_run {
            runs.push(RunStats {
                central_length: spec,
                sets_tested: 0,
                frames_pushed: 0,
                fillin_failures: 0,
                collision_prunes: 0,
            });
            continue;
        }

        let space = CounterSpace::build(g, &instance.candidates, &required);
        let required: Vec<RequiredSubset> = required
            .iter()
            .map(|r| RequiredSubset {
                members: space.to_positions(&r.members),
                provenance: r.provenance,
            })
            .collect();
        let forbidden_pos =
            ElementSet::from_indices(space.len(), forbidden.iter().map(|c| space.pos[c]));

        let mut engine = Engine {
            g,
            space,
            required,
            collision_limit,
            order2_rule: config.order2_product_rule,
            six_divides: n % 6 == 0,
            base_sigma_cap,
            base_m0: bound.m0,
            center_z: facts.center.len() as u64,
            use_center_bound: centered,
            center: &facts.center,
            central_length: spec,
            geod: GeodesyEngine::new(n),
            deadline,
            assert_invariants,
            found: Vec::new(),
            stats: RunStats {
                central_length: spec,
                sets_tested: 0,
                frames_pushed: 0,
                fillin_failures: 0,
                collision_prunes: 0,
            },
        };
        let finished = engine.run(forbidden_pos);
        for (sigma, _) in &engine.found {
            verify_solution(g, sigma)?;
        }
        found.append(&mut engine.found);
        runs.push(engine.stats);
        if !finished {
            incomplete = true;
            break;
        }
    }

    let mut sets_tested_extra = 0u64;
    if !incomplete {
        let complete: Vec<usize> = (1..n).collect();
        if !found.iter().any(|(s, _)| *s == complete) {
            let mut geod = GeodesyEngine::new(n);
            let opts = GeodesyOptions { collision_limit, central: None };
            sets_tested_extra = 1;
            let res = geod.geodesy(g, &complete, &opts).expect("complete set is symmetric");
            if res.verdict == Verdict::Geodetic {
                found.push((complete, res.classification.unwrap()));
            }
        }
    }

    // Deduplicate across runs and order deterministically.
    found.sort_by(|a, b| (a.0.len(), &a.0).cmp(&(b.0.len(), &b.0)));
    found.dedup_by(|a, b| a.0 == b.0);

    Ok(SearchOutcome {
        sets_tested: runs.iter().map(|r| r.sets_tested).sum::<u64>() + sets_tested_extra,
        frames_pushed: runs.iter().map(|r| r.frames_pushed).sum(),
        fillin_failures: runs.iter().map(|r| r.fillin_failures).sum(),
        collision_prunes: runs.iter().map(|r| r.collision_prunes).sum(),
        geodetic_sets: found
            .into_iter()
            .map(|(elements, class)| GeodeticSet { elements, class })
            .collect(),
        runs,
        incomplete,
        duration_ms: started.elapsed().as_millis(),
    })
}

/// Independent re-check of a reported generating set.
pub fn verify_solution(g: &FiniteGroup, sigma: &[usize]) -> Result<Classification, SearchError> {
    let mut geod = GeodesyEngine::new(g.order());
    let opts = GeodesyOptions { collision_limit: 4, central: None };
    match geod.geodesy(g, sigma, &opts) {
        Ok(r) if r.verdict == Verdict::Geodetic => Ok(r.classification.unwrap()),
        _ => Err(SearchError::VerificationMismatch(sigma.to_vec())),
    }
}

fn candidate_forbidden(instance: &Instance, forbidden_elems: &ElementSet) -> ElementSet {
    let mut out = ElementSet::new(instance.candidates.len());
    for c in 0..instance.candidates.len() {
        if forbidden_elems.contains(instance.candidates.rep(c)) {
            out.insert(c);
        }
    }
    out
}

impl<'a> Engine<'a> {
    /// Main counter loop; false on budget expiry.
    fn run(&mut self, initial_forbidden: ElementSet) -> bool {
        let nc = self.space.len();
        let mut stack: Vec<Frame> = vec![Frame {
            x: ElementSet::new(nc),
            increment: ROOT,
            forbidden: initial_forbidden,
            temp_required: Vec::new(),
            clique_hint: 1,
            sigma_cap: self.base_sigma_cap.min(self.center_capped(self.base_m0)),
        }];
        let mut i_next = 0usize;
        let mut tick = 0u32;

        loop {
            tick = tick.wrapping_add(1);
            if tick % 256 == 0 && Instant::now() > self.deadline {
                return false;
            }

            i_next = i_next.max(self.required_jump(&stack));

            // Skip set bits and forbidden candidates; pop frames the
            // increment position climbs past.
            loop {
                let top = stack.last().expect("root never pops");
                while i_next < nc && top.x.contains(i_next) {
                    i_next += 1;
                }
                if i_next >= nc {
                    return true;
                }
                if i_next >= top.increment {
                    stack.pop();
                    continue;
                }
                if top.forbidden.contains(i_next) {
                    i_next += 1;
                    continue;
                }
                break;
            }

            let parent = stack.last().unwrap();
            let i_last = parent.increment;
            let mut x = parent.x.clone();
            x.insert(i_next);
            if std::env::var("GS_TRACE").is_ok() {
                eprintln!("PUSH {} depth={}", i_next, stack.len());
            }
            stack.push(Frame {
                x,
                increment: i_next,
                forbidden: parent.forbidden.clone(),
                temp_required: Vec::new(),
                clique_hint: parent.clique_hint,
                sigma_cap: parent.sigma_cap,
            });
            self.stats.frames_pushed += 1;
            if self.assert_invariants {
                assert_stack_invariants(&stack, nc);
            }

            i_next = self.check_gen_set(&mut stack, i_last);

            if self.assert_invariants {
                assert_stack_invariants(&stack, nc);
            }
        }
    }

    /// Saturate, test, resolve; returns the next increment position
    /// (0 = continue counting, the top increment = prune this subtree).
    fn check_gen_set(&mut self, stack: &mut Vec<Frame>, i_last: usize) -> usize {
        let top_i = stack.last().unwrap().increment;
        let mut first_pass = true;
        loop {
            match self.fill_in(stack, i_last, first_pass) {
                FillResult::Fail { mark_parent } => {
                    self.stats.fillin_failures += 1;
                    if mark_parent {
                        mark_forbidden_on_parent(stack, top_i);
                    }
                    return top_i;
                }
                FillResult::Ok => {}
            }

            let sigma = self.space.sigma(&stack.last().unwrap().x);
            self.stats.sets_tested += 1;
            let opts = GeodesyOptions {
                collision_limit: self.collision_limit,
                central: self
                    .central_length
                    .map(|length| CentralCheck { length, center: self.center }),
            };
            let res = self.geod.geodesy(self.g, &sigma, &opts).expect("sigma is symmetric");
            if std::env::var("GS_TRACE").is_ok() {
                eprintln!("TEST size={} verdict={:?} collisions={} sigma={:?}", sigma.len(), res.verdict, res.collisions.len(), sigma);
            }
            match res.verdict {
                Verdict::Geodetic => {
                    self.found.push((sigma, res.classification.unwrap()));
                    return 0;
                }
                Verdict::ShortCentralGeodesic => return top_i,
                Verdict::NotGenerating => return 0,
                Verdict::Collisions => {
                    match self.handle_collisions(stack, &res.collisions, i_last) {
                        CollisionOutcome::Fail { mark_parent } => {
                            self.stats.collision_prunes += 1;
                            if mark_parent {
                                mark_forbidden_on_parent(stack, top_i);
                            }
                            return top_i;
                        }
                        CollisionOutcome::Ok { grew: true } => {
                            first_pass = false;
                            continue;
                        }
                        CollisionOutcome::Ok { grew: false } => return 0,
                    }
                }
            }
        }
    }

    fn required_met(&self, stack: &[Frame]) -> bool {
        let top = stack.last().unwrap();
        let mut all = self.required.iter().chain(stack.iter().flat_map(|f| f.temp_required.iter()));
        all.all(|subset| subset.members.iter().any(|&m| top.x.contains(m)))
    }

    /// Unmet required subsets force the counter to jump. Picks the subset
    /// whose smallest allowed candidate is maximal (ties: smaller subset,
    /// then provenance rank, then list position) and returns that
    /// candidate; returns the top increment itself when a subset cannot be
    /// met under this frame.
    fn required_jump(&self, stack: &[Frame]) -> usize {
        let top = stack.last().unwrap();
        let nc = self.space.len();
        // (candidate, Reverse(size), Reverse(provenance), Reverse(position))
        let mut best: Option<(usize, Reverse<usize>, Reverse<Provenance>, Reverse<usize>)> = None;
        let all = self.required.iter().chain(stack.iter().flat_map(|f| f.temp_required.iter()));
        for (pos, subset) in all.enumerate() {
            if subset.members.iter().any(|&m| top.x.contains(m)) {
                continue;
            }
            let c = match subset.members.iter().copied().find(|&m| !top.forbidden.contains(m)) {
                // Every member is forbidden here: the whole subtree is dead.
                None => return top.increment.min(nc),
                Some(c) => c,
            };
            let key = (c, Reverse(subset.members.len()), Reverse(subset.provenance), Reverse(pos));
            if best.map_or(true, |b| key > b) {
                best = Some(key);
            }
        }
        match best {
            None => 0,
            Some((c, ..)) if c < top.increment => c,
            // The needed candidate sits at or above the current increment:
            // only a pop can satisfy the subset.
            Some(_) => top.increment.min(nc),
        }
    }

    /// Saturates the top frame to a fixpoint. The closure may only add
    /// candidates below the frame increment; anything else fails the frame.
    /// `first_pass` distinguishes the closure of the freshly pushed set
    /// (whose failures provably recur) from re-saturations after collision
    /// handling grew the set.
    fn fill_in(&mut self, stack: &mut [Frame], i_last: usize, first_pass: bool) -> FillResult {
        let top = stack.last_mut().unwrap();
        let top_i = top.increment;
        loop {
            if self.space.sigma_size(&top.x) > top.sigma_cap {
                return FillResult::Fail { mark_parent: first_pass };
            }
            let sigma = self.space.sigma(&top.x);
            let forced = self.forced_candidates(&sigma, &top.x);
            if forced.is_empty() {
                let hint = self.largest_complete_cyclic(&sigma);
                if hint > top.clique_hint {
                    top.clique_hint = hint;
                    // A complete subgroup H in a non-complete geodetic
                    // Cayley graph forces |G| >= |H|^3 - |H|^2 + |H|.
                    if !self.complete_subgroup_admissible(hint) {
                        return FillResult::Fail { mark_parent: first_pass };
                    }
                    let m0 = self.base_m0.max(hint as u64 + 1);
                    top.sigma_cap = top.sigma_cap.min(self.sigma_cap_for(m0));
                    if self.space.sigma_size(&top.x) > top.sigma_cap {
                        return FillResult::Fail { mark_parent: first_pass };
                    }
                }
                return FillResult::Ok;
            }
            for &j in &forced {
                // On the first pass the frame's forbidden array still equals
                // the parent's, so these failures recur on any re-push.
                if top.forbidden.contains(j) {
                    return FillResult::Fail { mark_parent: first_pass };
                }
                if j > top_i {
                    return FillResult::Fail { mark_parent: first_pass && j > i_last };
                }
            }
            for &j in &forced {
                top.x.insert(j);
            }
        }
    }

    /// Candidates forced into the set by the current sigma: diamond corners
    /// from double factorizations, order-two products, and complete C6 / S3
    /// subgroups in groups of order divisible by six.
    fn forced_candidates(&self, sigma: &[usize], x: &ElementSet) -> Vec<usize> {
        let g = self.g;
        let n = g.order();
        let mut forced_elems: Vec<usize> = Vec::new();
        let mut first_of: Vec<usize> = vec![usize::MAX; n];
        for &s in sigma {
            for &t in sigma {
                let e = g.mul(s, t);
                if e == 0 {
                    continue;
                }
                if self.order2_rule && g.elem_order(e) == 2 {
                    forced_elems.push(e);
                }
                let f = first_of[e];
                if f == usize::MAX {
                    first_of[e] = s;
                } else if f != s {
                    // e = f t' = s t forces e and the diagonal f^{-1} s.
                    forced_elems.push(e);
                    forced_elems.push(g.mul(g.inv(f), s));
                }
            }
        }
        if self.six_divides {
            for &s in sigma {
                if g.elem_order(s) == 6 {
                    let mut p = g.mul(s, s);
                    while p != 0 {
                        forced_elems.push(p);
                        p = g.mul(p, s);
                    }
                }
            }
            for (ai, &a) in sigma.iter().enumerate() {
                for &b in &sigma[ai + 1..] {
                    if let Some(h) = crate::group::subgroup_closure_capped(g, [a, b], 6) {
                        if h.len() == 6 && !crate::group::is_abelian_subset(g, &h) {
                            forced_elems.extend(h.iter().filter(|&e| e != 0));
                        }
                    }
                }
            }
        }
        let mut out: Vec<usize> = forced_elems
            .into_iter()
            .filter_map(|e| self.space.pos_of_elem(e))
            .filter(|&p| !x.contains(p))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Largest cyclic subgroup fully inside sigma (sorted).
    fn largest_complete_cyclic(&self, sigma: &[usize]) -> usize {
        let g = self.g;
        let mut best = 1usize;
        for &s in sigma {
            let ord = g.elem_order(s) as usize;
            if ord <= best {
                continue;
            }
            let mut p = g.mul(s, s);
            let mut complete = true;
            while p != 0 {
                if sigma.binary_search(&p).is_err() {
                    complete = false;
                    break;
                }
                p = g.mul(p, s);
            }
            if complete {
                best = ord;
            }
        }
        best
    }

    fn complete_subgroup_admissible(&self, h: usize) -> bool {
        let h = h as u128;
        h * h * h - h * h + h <= self.g.order() as u128
    }

    fn sigma_cap_for(&self, m0: u64) -> usize {
        let n = self.g.order() as u64;
        if n < 6 {
            return self.base_sigma_cap;
        }
        (bounds::sigma_bound(n, m0) as usize).min(self.center_capped(m0))
    }

    fn center_capped(&self, m0: u64) -> usize {
        if self.use_center_bound && self.g.order() >= 6 {
            bounds::sigma_bound_center(self.g.order() as u64, self.center_z, m0) as usize
        } else {
            usize::MAX
        }
    }

    /// Resolves recorded distance-3 collisions. Order-two elements are
    /// forced in directly (their geodesics must have odd length, so length
    /// one); if any were added the caller re-saturates and re-tests. Every
    /// other collision spawns a temporary required subset of validated
    /// resolving candidates, tied to the top frame.
    fn handle_collisions(
        &mut self,
        stack: &mut Vec<Frame>,
        collisions: &[usize],
        i_last: usize,
    ) -> CollisionOutcome {
        let top_i = stack.last().unwrap().increment;
        let parent_idx = stack.len() - 2;

        // Order-two collisions first: the only choice is the element itself.
        let mut grew = false;
        for &e in collisions {
            if self.g.elem_order(e) != 2 {
                continue;
            }
            let c = self.space.pos_of_elem(e).expect("collision element is nontrivial");
            if stack.last().unwrap().x.contains(c) {
                continue;
            }
            if stack.last().unwrap().forbidden.contains(c) {
                return CollisionOutcome::Fail {
                    mark_parent: stack[parent_idx].forbidden.contains(c),
                };
            }
            if c > top_i {
                return CollisionOutcome::Fail { mark_parent: c > i_last };
            }
            stack.last_mut().unwrap().x.insert(c);
            grew = true;
        }
        if grew {
            return CollisionOutcome::Ok { grew: true };
        }

        let mut trial_memo: HashMap<usize, TrialVerdict> = HashMap::new();
        let mut new_subsets: Vec<RequiredSubset> = Vec::new();
        for &e in collisions {
            if self.g.elem_order(e) == 2 {
                continue;
            }
            let (singles, pair_max) = self.resolutions_for(stack.last().unwrap(), e);
            let mut members: Vec<usize> = Vec::new();
            let mut blockers_persist = true;
            for j in singles.into_iter().chain(pair_max) {
                self.consider_resolution(
                    stack,
                    parent_idx,
                    i_last,
                    j,
                    &mut members,
                    &mut blockers_persist,
                    &mut trial_memo,
                );
            }
            if members.is_empty() {
                return CollisionOutcome::Fail { mark_parent: blockers_persist };
            }
            members.sort_unstable();
            members.dedup();
            new_subsets.push(RequiredSubset { members, provenance: Provenance::Collision });
        }

        if std::env::var("GS_TRACE").is_ok() {
            let sizes: Vec<usize> = new_subsets.iter().map(|s| s.members.len()).collect();
            eprintln!("  SUBSETS {:?}", sizes);
        }
        stack.last_mut().unwrap().temp_required.extend(new_subsets);
        CollisionOutcome::Ok { grew: false }
    }

    /// Candidates whose addition would give the collision element `e` a
    /// representation of length at most two: `e` itself, single candidates
    /// completing a factorization with an existing generator, and for
    /// factorizations needing two new candidates, the larger of the two.
    fn resolutions_for(&self, top: &Frame, e: usize) -> (Vec<usize>, Vec<usize>) {
        let g = self.g;
        let mut sigma_set = ElementSet::new(g.order());
        for v in self.space.sigma(&top.x) {
            sigma_set.insert(v);
        }
        let mut singles: Vec<usize> = Vec::new();
        let mut pair_max: Vec<usize> = Vec::new();
        if let Some(c) = self.space.pos_of_elem(e) {
            singles.push(c);
        }
        for s in 1..g.order() {
            let t = g.mul(g.inv(s), e);
            if t == 0 {
                continue; // s == e, covered above
            }
            match (sigma_set.contains(s), sigma_set.contains(t)) {
                (true, true) => continue, // e would already have length two
                (true, false) => singles.extend(self.space.pos_of_elem(t)),
                (false, true) => singles.extend(self.space.pos_of_elem(s)),
                (false, false) => {
                    if let (Some(cs), Some(ct)) =
                        (self.space.pos_of_elem(s), self.space.pos_of_elem(t))
                    {
                        if cs == ct {
                            singles.push(cs);
                        } else {
                            pair_max.push(cs.max(ct));
                        }
                    }
                }
            }
        }
        singles.sort_unstable();
        singles.dedup();
        pair_max.sort_unstable();
        pair_max.dedup();
        (singles, pair_max)
    }

    #[allow(clippy::too_many_arguments)]
    fn consider_resolution(
        &mut self,
        stack: &mut [Frame],
        parent_idx: usize,
        i_last: usize,
        j: usize,
        members: &mut Vec<usize>,
        blockers_persist: &mut bool,
        memo: &mut HashMap<usize, TrialVerdict>,
    ) {
        let top_i = stack.last().unwrap().increment;
        if stack.last().unwrap().x.contains(j) {
            return;
        }
        if let Some(&verdict) = memo.get(&j) {
            match verdict {
                Ok(()) => members.push(j),
                Err(persists) => {
                    if !persists {
                        *blockers_persist = false;
                    }
                }
            }
            return;
        }
        if stack.last().unwrap().forbidden.contains(j) {
            if !stack[parent_idx].forbidden.contains(j) {
                *blockers_persist = false;
            }
            return;
        }
        if j > top_i {
            if j <= i_last {
                *blockers_persist = false;
            }
            return;
        }
        let verdict = self.trial_fill_in(stack, i_last, j);
        memo.insert(j, verdict);
        match verdict {
            Ok(()) => members.push(j),
            Err(persists) => {
                // The inclusion of j provably fails anywhere in this
                // frame's subtree.
                stack.last_mut().unwrap().forbidden.insert(j);
                if !persists {
                    *blockers_persist = false;
                }
            }
        }
    }

    /// Dry-run closure of `X ∪ {j}` under the same constraints as
    /// `fill_in`; `Err(persists)` reports whether the failure also holds
    /// from the parent frame's viewpoint.
    fn trial_fill_in(&self, stack: &[Frame], i_last: usize, j: usize) -> TrialVerdict {
        let top = stack.last().unwrap();
        let parent = &stack[stack.len() - 2];
        let top_i = top.increment;
        let mut x = top.x.clone();
        x.insert(j);
        loop {
            if self.space.sigma_size(&x) > top.sigma_cap {
                return Err(true);
            }
            let sigma = self.space.sigma(&x);
            let forced = self.forced_candidates(&sigma, &x);
            if forced.is_empty() {
                if !self.complete_subgroup_admissible(self.largest_complete_cyclic(&sigma)) {
                    return Err(true);
                }
                return Ok(());
            }
            for &k in &forced {
                if top.forbidden.contains(k) {
                    return Err(parent.forbidden.contains(k));
                }
                if k > top_i {
                    return Err(k > i_last);
                }
            }
            for &k in &forced {
                x.insert(k);
            }
        }
    }
}

/// The failed top frame is about to pop; inserting the mark there as well
/// keeps the forbidden arrays monotone at every observation point.
fn mark_forbidden_on_parent(stack: &mut [Frame], candidate: usize) {
    let idx = stack.len() - 2;
    stack[idx].forbidden.insert(candidate);
    stack[idx + 1].forbidden.insert(candidate);
}

/// Checks I1 between every frame pair and I2 between neighbours.
fn assert_stack_invariants(stack: &[Frame], nc: usize) {
    for w in stack.windows(2) {
        let (below, above) = (&w[0], &w[1]);
        assert!(above.increment < below.increment, "I1: increments must decrease upward");
        assert!(below.x.is_subset_of(&above.x), "I1: X grows upward");
        assert!(below.forbidden.is_subset_of(&above.forbidden), "forbidden arrays grow upward");
        // I2: above.x agrees with below.x on [I, nc) except for I itself.
        let i = above.increment;
        for c in i..nc {
            let expect = below.x.contains(c) || c == i;
            assert_eq!(above.x.contains(c), expect, "I2 fails at candidate {c}");
        }
    }
    // I1's restriction across non-adjacent pairs.
    for hi in 0..stack.len() {
        for lo in 0..hi {
            let (below, above) = (&stack[lo], &stack[hi]);
            for c in below.increment.min(nc)..nc {
                assert_eq!(
                    above.x.contains(c),
                    below.x.contains(c),
                    "I1 restriction fails between frames {lo} and {hi} at {c}"
                );
            }
        }
    }
}
