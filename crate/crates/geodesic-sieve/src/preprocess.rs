//! Per-group search preparation: the candidate index space, forbidden
//! elements, required subsets, automorphism reduction and central geodesic
//! profiles.
//!
//! A *candidate* is one representative per inverse pair of nontrivial
//! elements; candidate sets index the search's binary counter. A *forbidden*
//! element can only occur in the complete generating set. A *required
//! subset* is a set of candidates of which every geodetic generating set
//! must contain at least one.

use crate::bitset::ElementSet;
use crate::filters::GroupFacts;
use crate::group::{self, FiniteGroup, GroupJson};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone)]
pub enum PreprocessError {
    /// A required subset has no allowed candidate left: no geodetic
    /// generating set beyond the complete graph exists, the group is
    /// verified without search.
    #[error("required subset ({provenance:?}) has no allowed candidates")]
    InfeasibleGroup { provenance: Provenance },
    #[error("instance does not match its group: {0}")]
    BadInstance(String),
}

/// Ordered inverse-pair representatives; the binary counter runs over these.
#[derive(Debug, Clone)]
pub struct CandidateSpace {
    reps: Vec<u16>,
    is_involution: Vec<bool>,
    candidate_of: Vec<u16>, // element -> candidate index; MAX for the identity
}

const NO_CAND: u16 = u16::MAX;

impl CandidateSpace {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn rep(&self, c: usize) -> usize {
        self.reps[c] as usize
    }

    pub fn is_involution(&self, c: usize) -> bool {
        self.is_involution[c]
    }

    pub fn candidate_of(&self, elem: usize) -> Option<usize> {
        match self.candidate_of[elem] {
            NO_CAND => None,
            c => Some(c as usize),
        }
    }

    /// The 1- or 2-element symmetric set a candidate contributes.
    pub fn expand(&self, g: &FiniteGroup, c: usize) -> (usize, Option<usize>) {
        let r = self.rep(c);
        if self.is_involution[c] {
            (r, None)
        } else {
            (r, Some(g.inv(r)))
        }
    }

    /// Materializes the symmetric set of a candidate bit array, ascending.
    pub fn sigma(&self, g: &FiniteGroup, x: &ElementSet) -> Vec<usize> {
        let mut out = Vec::with_capacity(2 * x.len());
        for c in x.iter() {
            let (a, b) = self.expand(g, c);
            out.push(a);
            if let Some(b) = b {
                out.push(b);
            }
        }
        out.sort_unstable();
        out
    }

    /// Number of elements the candidate set expands to.
    pub fn sigma_size(&self, x: &ElementSet) -> usize {
        x.iter().map(|c| if self.is_involution[c] { 1 } else { 2 }).sum()
    }
}

/// One representative per inverse pair, ordered by representative index.
pub fn candidate_space(g: &FiniteGroup) -> CandidateSpace {
    let n = g.order();
    let mut reps = Vec::new();
    let mut is_involution = Vec::new();
    let mut candidate_of = vec![NO_CAND; n];
    for x in 1..n {
        let inv = g.inv(x);
        if inv >= x {
            let c = reps.len() as u16;
            reps.push(x as u16);
            is_involution.push(inv == x);
            candidate_of[x] = c;
            candidate_of[inv] = c;
        }
    }
    CandidateSpace { reps, is_involution, candidate_of }
}

/// Elements that no geodetic generating set except the complete one can
/// contain: nontrivial `h` in `{g, g^2}` whose conjugacy class lies inside
/// `{h, h^-1}`. Covers central elements and their square roots.
pub fn forbidden_elements(facts: &GroupFacts) -> ElementSet {
    let g = facts.group;
    let n = g.order();
    let mut tiny_class = ElementSet::new(n); // h with h^G ⊆ {h^{±1}}
    for class in &facts.classes {
        match class.len() {
            1 => {
                for h in class.iter() {
                    tiny_class.insert(h);
                }
            }
            2 => {
                let v = class.to_vec();
                if v[1] == g.inv(v[0]) {
                    tiny_class.insert(v[0]);
                    tiny_class.insert(v[1]);
                }
            }
            _ => {}
        }
    }
    tiny_class.remove(0);
    let mut out = ElementSet::new(n);
    for x in 1..n {
        if tiny_class.contains(x) {
            out.insert(x);
            continue;
        }
        let sq = g.mul(x, x);
        if sq != 0 && tiny_class.contains(sq) {
            out.insert(x);
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Provenance {
    OrderTwoClass,
    IndexTwoSubgroup,
    CentralRoots,
    MaximalComplement,
    Collision,
}

/// A set of candidates of which every geodetic generating set must contain
/// at least one. Members are candidate indices, sorted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RequiredSubset {
    pub members: Vec<usize>,
    pub provenance: Provenance,
}

impl RequiredSubset {
    fn from_elements(
        g: &FiniteGroup,
        cands: &CandidateSpace,
        elems: impl IntoIterator<Item = usize>,
        provenance: Provenance,
    ) -> RequiredSubset {
        let _ = g;
        let mut members: Vec<usize> =
            elems.into_iter().filter_map(|e| cands.candidate_of(e)).collect();
        members.sort_unstable();
        members.dedup();
        RequiredSubset { members, provenance }
    }
}

/// The three preprocessing families of required subsets, expressed in
/// candidates, with forbidden candidates removed and supersets of smaller
/// subsets dropped. `InfeasibleGroup` when a subset empties out.
///
/// With `remove_forbidden = false` the raw subsets are returned (the
/// exhaustive mode used for oracle comparison).
pub fn required_subsets(
    facts: &GroupFacts,
    cands: &CandidateSpace,
    forbidden: &ElementSet,
    remove_forbidden: bool,
) -> Result<Vec<RequiredSubset>, PreprocessError> {
    let g = facts.group;
    let n = g.order();
    let mut subsets: Vec<RequiredSubset> = Vec::new();

    // Conjugacy classes of order-two elements.
    for class in &facts.classes {
        let first = class.iter().next().unwrap();
        if first != 0 && g.elem_order(first) == 2 {
            subsets.push(RequiredSubset::from_elements(
                g,
                cands,
                class.iter(),
                Provenance::OrderTwoClass,
            ));
        }
    }

    // Normal subgroups of index two (minus the identity).
    if let Some(lattice) = &facts.lattice {
        if n % 2 == 0 {
            for h in lattice.iter().filter(|h| h.len() == n / 2) {
                subsets.push(RequiredSubset::from_elements(
                    g,
                    cands,
                    h.iter().filter(|&x| x != 0),
                    Provenance::IndexTwoSubgroup,
                ));
            }
        }
        // Complements of maximal subgroups (a generating set must leave
        // every maximal subgroup).
        let maximal = maximal_from_lattice(lattice, n);
        for m in maximal {
            subsets.push(RequiredSubset::from_elements(
                g,
                cands,
                (0..n).filter(|&x| !m.contains(x)),
                Provenance::MaximalComplement,
            ));
        }
    }

    if remove_forbidden {
        for s in &mut subsets {
            s.members.retain(|&c| !forbidden.contains(cands.rep(c)));
            if s.members.is_empty() {
                return Err(PreprocessError::InfeasibleGroup { provenance: s.provenance });
            }
        }
    }

    Ok(drop_supersets(subsets))
}

fn maximal_from_lattice(lattice: &[ElementSet], n: usize) -> Vec<&ElementSet> {
    let proper: Vec<&ElementSet> = lattice.iter().filter(|h| h.len() < n).collect();
    proper
        .iter()
        .filter(|h| !proper.iter().any(|k| k.len() > h.len() && h.is_subset_of(k)))
        .copied()
        .collect()
}

/// Keeps each subset unless an earlier-or-smaller one is contained in it.
fn drop_supersets(subsets: Vec<RequiredSubset>) -> Vec<RequiredSubset> {
    let mut kept: Vec<RequiredSubset> = Vec::new();
    // Scan smaller subsets first so strict supersets always see their
    // subsets; preserve construction order among equals.
    let mut order: Vec<usize> = (0..subsets.len()).collect();
    order.sort_by_key(|&i| (subsets[i].members.len(), i));
    let mut dropped = vec![false; subsets.len()];
    for &i in &order {
        let si = &subsets[i];
        let redundant = kept.iter().any(|k: &RequiredSubset| {
            k.members.len() <= si.members.len()
                && k.members.iter().all(|m| si.members.binary_search(m).is_ok())
        });
        if redundant {
            dropped[i] = true;
        } else {
            kept.push(si.clone());
        }
    }
    subsets
        .into_iter()
        .enumerate()
        .filter_map(|(i, s)| (!dropped[i]).then_some(s))
        .collect()
}

/// Shrinks required subsets to orbit representatives under the automorphism
/// group, refining to the stabilizer of the already-selected candidates
/// after each subset. Orbits of an element and its inverse count as one;
/// representatives are chosen inside the original subset.
pub fn automorphism_reduce(
    g: &FiniteGroup,
    cands: &CandidateSpace,
    required: &[RequiredSubset],
    autos: &[Vec<u16>],
) -> Vec<RequiredSubset> {
    let mut active: Vec<&Vec<u16>> = autos.iter().collect();
    let mut out = Vec::with_capacity(required.len());
    for subset in required {
        if active.len() <= 1 {
            out.push(subset.clone());
            continue;
        }
        // Orbit id for each member: the minimal candidate in its full orbit.
        let mut orbit_min: BTreeMap<usize, usize> = BTreeMap::new(); // member -> orbit id
        for &c in &subset.members {
            let rep = cands.rep(c);
            let mut min_c = c;
            for phi in &active {
                let image = phi[rep] as usize;
                if let Some(ic) = cands.candidate_of(image) {
                    min_c = min_c.min(ic);
                }
            }
            orbit_min.insert(c, min_c);
        }
        // One representative (the least member) per orbit id.
        let mut chosen: BTreeMap<usize, usize> = BTreeMap::new(); // orbit id -> member
        for &c in &subset.members {
            let id = orbit_min[&c];
            chosen.entry(id).or_insert(c);
        }
        let members: Vec<usize> = chosen.values().copied().collect();
        // Refine to the point-wise stabilizer of the selected candidates
        // (as inverse pairs).
        active.retain(|phi| {
            members.iter().all(|&c| {
                let rep = cands.rep(c);
                cands.candidate_of(phi[rep] as usize) == Some(c)
            })
        });
        let mut members = members;
        members.sort_unstable();
        out.push(RequiredSubset { members, provenance: subset.provenance });
    }
    let _ = g;
    drop_supersets(out)
}

/// Central geodesic structure: feasible lengths `k`, the root sets
/// realizing each nontrivial central element at that length, and the
/// elements whose short powers already land in the center.
#[derive(Debug, Clone, Default)]
pub struct CentralProfile {
    /// Feasible central geodesic lengths, ascending. Empty for trivial
    /// centers (single unconstrained run) and for centers no length can
    /// realize (group verified without search).
    pub lengths: Vec<usize>,
    /// Per length: for each nontrivial central element `z` (ascending), the
    /// non-central roots `c` with `c^k = z`.
    pub roots: BTreeMap<usize, Vec<(usize, Vec<usize>)>>,
    /// Per length: elements `e` with `e^j` a nontrivial central element for
    /// some `1 <= j < k`.
    pub short_forbidden: BTreeMap<usize, ElementSet>,
}

pub fn central_profile(facts: &GroupFacts) -> CentralProfile {
    let g = facts.group;
    let n = g.order();
    let z = &facts.center;
    if z.len() < 2 {
        return CentralProfile::default();
    }
    let index = n / z.len();
    let needs_odd = z.iter().any(|e| g.elem_order(e) >= 4);
    let mut profile = CentralProfile::default();
    for k in 3..=index {
        if index % k != 0 || (needs_odd && k % 2 == 0) {
            continue;
        }
        let mut roots: Vec<(usize, Vec<usize>)> = Vec::new();
        let mut all_realized = true;
        for target in z.iter().filter(|&e| e != 0) {
            let r: Vec<usize> = (1..n)
                .filter(|&c| !z.contains(c) && g.pow(c, k as u64) == target)
                .collect();
            if r.is_empty() {
                all_realized = false;
                break;
            }
            roots.push((target, r));
        }
        if !all_realized {
            continue;
        }
        let mut short = ElementSet::new(n);
        for e in 1..n {
            let mut p = e;
            for _ in 1..k {
                if p != 0 && z.contains(p) {
                    short.insert(e);
                    break;
                }
                p = g.mul(p, e);
            }
        }
        profile.lengths.push(k);
        profile.roots.insert(k, roots);
        profile.short_forbidden.insert(k, short);
    }
    profile
}

/// How an instance constrains the search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum InstanceMode {
    /// Full pruning: forbidden elements, automorphism-reduced subsets,
    /// central profile. Assumes the filter stage ran (non-abelian group),
    /// so only complete graphs can contain forbidden elements.
    Pruned,
    /// Only unconditionally sound pruning; search output equals the
    /// brute-force oracle on any group. Used for cross-validation.
    Exhaustive,
}

/// Everything the search needs for one group.
#[derive(Debug, Clone)]
pub struct Instance {
    pub mode: InstanceMode,
    pub candidates: CandidateSpace,
    /// Forbidden elements (group indices).
    pub forbidden: ElementSet,
    pub required: Vec<RequiredSubset>,
    pub central: CentralProfile,
}

/// Builds the search instance. `auto_cap` limits the automorphism
/// computation in pruned mode.
pub fn build_instance(
    facts: &GroupFacts,
    mode: InstanceMode,
    auto_cap: usize,
) -> Result<Instance, PreprocessError> {
    let g = facts.group;
    let cands = candidate_space(g);
    match mode {
        InstanceMode::Exhaustive => {
            let forbidden = ElementSet::new(g.order());
            let required = required_subsets(facts, &cands, &forbidden, false)?;
            Ok(Instance {
                mode,
                candidates: cands,
                forbidden,
                required,
                central: CentralProfile::default(),
            })
        }
        InstanceMode::Pruned => {
            let forbidden = forbidden_elements(facts);
            let raw = required_subsets(facts, &cands, &forbidden, true)?;
            let autos = group::automorphisms(g, auto_cap);
            let required = automorphism_reduce(g, &cands, &raw, &autos);
            let central = central_profile(facts);
            Ok(Instance { mode, candidates: cands, forbidden, required, central })
        }
    }
}

/// Wire form of an instance, importable/exportable for parity testing.
#[derive(Serialize, Deserialize)]
pub struct InstanceJson {
    pub group: GroupJson,
    pub forbidden: Vec<usize>,
    pub required: Vec<RequiredSubset>,
    pub central_lengths: Vec<usize>,
    pub candidates: Vec<usize>,
}

pub fn instance_to_json(g: &FiniteGroup, instance: &Instance) -> InstanceJson {
    InstanceJson {
        group: g.to_json(),
        forbidden: instance.forbidden.to_vec(),
        required: instance.required.clone(),
        central_lengths: instance.central.lengths.clone(),
        candidates: (0..instance.candidates.len()).map(|c| instance.candidates.rep(c)).collect(),
    }
}

/// Rebuilds an instance from its wire form; the central profile is
/// recomputed from the group (only the feasible lengths are stored).
pub fn instance_from_json(
    json: &InstanceJson,
    lattice_cap: usize,
) -> Result<(FiniteGroup, Instance), PreprocessError> {
    let g = FiniteGroup::from_json(&json.group)
        .map_err(|e| PreprocessError::BadInstance(e.to_string()))?;
    let facts = GroupFacts::collect(&g, lattice_cap);
    let cands = candidate_space(&g);
    let expect: Vec<usize> = (0..cands.len()).map(|c| cands.rep(c)).collect();
    if expect != json.candidates {
        return Err(PreprocessError::BadInstance("candidate list mismatch".into()));
    }
    let forbidden = ElementSet::from_indices(g.order(), json.forbidden.iter().copied());
    let mut central = central_profile(&facts);
    central.lengths.retain(|k| json.central_lengths.contains(k));
    central.roots.retain(|k, _| json.central_lengths.contains(k));
    central.short_forbidden.retain(|k, _| json.central_lengths.contains(k));
    let instance = Instance {
        mode: InstanceMode::Pruned,
        candidates: cands,
        forbidden,
        required: json.required.clone(),
        central,
    };
    Ok((g, instance))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{
        alternating, cyclic, dihedral, direct_product, heisenberg, semidirect_cyclic, symmetric,
        DEFAULT_LATTICE_CAP,
    };

    fn facts(g: &FiniteGroup) -> GroupFacts<'_> {
        GroupFacts::collect(g, DEFAULT_LATTICE_CAP)
    }

    #[test]
    fn candidate_counts() {
        let s3 = symmetric(3).unwrap();
        assert_eq!(candidate_space(&s3).len(), 4); // 3 involutions + 1 pair
        let c5 = cyclic(5).unwrap();
        assert_eq!(candidate_space(&c5).len(), 2);
        let g = semidirect_cyclic(7, 3, 2).unwrap();
        assert_eq!(candidate_space(&g).len(), 10); // 7 order-3 pairs + 3 order-7 pairs
    }

    #[test]
    fn candidate_pairs_partition_nontrivial_elements() {
        for g in [symmetric(4).unwrap(), dihedral(6).unwrap(), heisenberg(3).unwrap()] {
            let cs = candidate_space(&g);
            let mut covered = vec![0usize; g.order()];
            for c in 0..cs.len() {
                let (a, b) = cs.expand(&g, c);
                covered[a] += 1;
                if let Some(b) = b {
                    covered[b] += 1;
                }
            }
            assert_eq!(covered[0], 0);
            assert!(covered[1..].iter().all(|&k| k == 1), "{}", g.name());
        }
    }

    #[test]
    fn forbidden_in_s3_and_frobenius() {
        let s3 = symmetric(3).unwrap();
        let f = forbidden_elements(&facts(&s3));
        // both order-3 elements: their class is {r, r^2} = {r^{±1}}
        let expected: Vec<usize> =
            s3.elements().filter(|&x| s3.elem_order(x) == 3).collect();
        assert_eq!(f.to_vec(), expected);

        let g = semidirect_cyclic(7, 3, 2).unwrap();
        assert!(forbidden_elements(&facts(&g)).is_empty());
    }

    #[test]
    fn central_elements_forbidden() {
        let g = direct_product(&cyclic(3).unwrap(), &symmetric(3).unwrap()).unwrap();
        let fx = facts(&g);
        let f = forbidden_elements(&fx);
        for z in fx.center.iter().filter(|&z| z != 0) {
            assert!(f.contains(z));
        }
    }

    #[test]
    fn s3_infeasible_without_search() {
        let s3 = symmetric(3).unwrap();
        let fx = facts(&s3);
        let cands = candidate_space(&s3);
        let forbidden = forbidden_elements(&fx);
        let err = required_subsets(&fx, &cands, &forbidden, true).unwrap_err();
        assert!(matches!(err, PreprocessError::InfeasibleGroup { .. }));
    }

    #[test]
    fn a5_required_subsets() {
        let a5 = alternating(5).unwrap();
        let fx = facts(&a5);
        let cands = candidate_space(&a5);
        let forbidden = forbidden_elements(&fx);
        let subs = required_subsets(&fx, &cands, &forbidden, true).unwrap();
        // one order-two class of 15 candidates, plus maximal complements
        let order2: Vec<_> =
            subs.iter().filter(|s| s.provenance == Provenance::OrderTwoClass).collect();
        assert_eq!(order2.len(), 1);
        assert_eq!(order2[0].members.len(), 15);
        assert!(subs.iter().any(|s| s.provenance == Provenance::MaximalComplement));
        assert!(!subs.iter().any(|s| s.provenance == Provenance::IndexTwoSubgroup));
    }

    #[test]
    fn frobenius21_maximal_complement() {
        // The complement of the C7 subgroup: 14 order-3 elements = 7 candidates.
        let g = semidirect_cyclic(7, 3, 2).unwrap();
        let fx = facts(&g);
        let cands = candidate_space(&g);
        let subs = required_subsets(&fx, &cands, &ElementSet::new(21), false).unwrap();
        assert!(subs
            .iter()
            .any(|s| s.provenance == Provenance::MaximalComplement && s.members.len() == 7));
    }

    #[test]
    fn supersets_dropped() {
        let subs = vec![
            RequiredSubset { members: vec![1, 2, 3], provenance: Provenance::MaximalComplement },
            RequiredSubset { members: vec![1, 2], provenance: Provenance::OrderTwoClass },
            RequiredSubset { members: vec![2], provenance: Provenance::IndexTwoSubgroup },
            RequiredSubset { members: vec![1, 4], provenance: Provenance::OrderTwoClass },
        ];
        let kept = drop_supersets(subs);
        assert_eq!(kept.len(), 2);
        assert!(kept.iter().any(|s| s.members == vec![2]));
        assert!(kept.iter().any(|s| s.members == vec![1, 4]));
    }

    #[test]
    fn reduction_on_s3_transpositions() {
        let s3 = symmetric(3).unwrap();
        let cands = candidate_space(&s3);
        let autos = group::automorphisms(&s3, 512);
        let transpositions: Vec<usize> = s3
            .elements()
            .filter(|&x| s3.elem_order(x) == 2)
            .filter_map(|x| cands.candidate_of(x))
            .collect();
        let subs = vec![RequiredSubset {
            members: transpositions,
            provenance: Provenance::OrderTwoClass,
        }];
        let reduced = automorphism_reduce(&s3, &cands, &subs, &autos);
        assert_eq!(reduced[0].members.len(), 1);
    }

    #[test]
    fn reduction_identity_only_is_noop() {
        let a5 = alternating(5).unwrap();
        let cands = candidate_space(&a5);
        let subs = vec![RequiredSubset { members: vec![3, 7, 9], provenance: Provenance::Collision }];
        let id: Vec<u16> = (0..a5.order() as u16).collect();
        let reduced = automorphism_reduce(&a5, &cands, &subs, &[id]);
        assert_eq!(reduced, subs);
    }

    #[test]
    fn reduction_a5_involutions_to_one() {
        let a5 = alternating(5).unwrap();
        let fx = facts(&a5);
        let cands = candidate_space(&a5);
        let forbidden = forbidden_elements(&fx);
        let subs = required_subsets(&fx, &cands, &forbidden, true).unwrap();
        let autos = group::automorphisms(&a5, 512);
        assert_eq!(autos.len(), 120); // Aut(A5) = S5
        let reduced = automorphism_reduce(&a5, &cands, &subs, &autos);
        let order2 = reduced
            .iter()
            .find(|s| s.provenance == Provenance::OrderTwoClass)
            .expect("order-two subset survives");
        assert_eq!(order2.members.len(), 1);
    }

    #[test]
    fn central_profile_trivial_center() {
        let g = semidirect_cyclic(7, 3, 2).unwrap();
        let p = central_profile(&facts(&g));
        assert!(p.lengths.is_empty());
    }

    #[test]
    fn central_profile_order27() {
        // C9 : C3 has |Z| = 3 and |G/Z| = 9: k must divide 9; k = 3 has the
        // a-type roots, k = 9 has none (exponent 9 kills c^9 = z).
        let g = semidirect_cyclic(9, 3, 4).unwrap();
        let fx = facts(&g);
        assert_eq!(fx.center.len(), 3);
        let p = central_profile(&fx);
        assert_eq!(p.lengths, vec![3]);
        for (_, roots) in &p.roots[&3] {
            assert!(!roots.is_empty());
        }
        // short powers for k = 3: elements whose square is central
        let short = &p.short_forbidden[&3];
        for e in 1..fx.group.order() {
            let e2 = fx.group.mul(e, e);
            let hits = (e != 0 && fx.center.contains(e)) || (e2 != 0 && fx.center.contains(e2));
            assert_eq!(short.contains(e), hits, "element {e}");
        }
    }

    #[test]
    fn central_lengths_odd_when_center_has_order_four_element() {
        // C20 as a quick structural check of the parity rule: |Z| = 20
        // (abelian), index 1 -> no k >= 3 at all; use C4 x S3 instead:
        // Z = C4 contains an order-4 element, |G/Z| = 6, so k in {3}..but 3|6
        // and parity excludes nothing odd; k=3 must still realize roots.
        let g = direct_product(&cyclic(4).unwrap(), &symmetric(3).unwrap()).unwrap();
        let fx = facts(&g);
        assert_eq!(fx.center.len(), 4);
        let p = central_profile(&fx);
        for k in &p.lengths {
            assert!(k % 2 == 1);
        }
    }

    #[test]
    fn instance_json_round_trip() {
        let g = semidirect_cyclic(5, 4, 2).unwrap();
        let fx = facts(&g);
        let inst = build_instance(&fx, InstanceMode::Pruned, 512).unwrap();
        let json = instance_to_json(&g, &inst);
        let text = serde_json::to_string(&json).unwrap();
        let parsed: InstanceJson = serde_json::from_str(&text).unwrap();
        let (g2, inst2) = instance_from_json(&parsed, DEFAULT_LATTICE_CAP).unwrap();
        assert_eq!(g2.order(), 20);
        assert_eq!(inst2.required, inst.required);
        assert_eq!(inst2.forbidden.to_vec(), inst.forbidden.to_vec());
        assert_eq!(inst2.central.lengths, inst.central.lengths);
    }
}
