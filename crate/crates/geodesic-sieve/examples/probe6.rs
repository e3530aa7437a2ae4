use geodesic_sieve::filters::GroupFacts;
use geodesic_sieve::group;
use geodesic_sieve::preprocess::{build_instance, InstanceMode};
use geodesic_sieve::search::{check_group, SearchConfig};

fn main() {
    let g = group::alternating(6).unwrap();
    let facts = GroupFacts::collect(&g, 512);
    let inst = build_instance(&facts, InstanceMode::Pruned, 512).unwrap();
    eprintln!("candidates: {}", inst.candidates.len());
    eprintln!("forbidden: {:?}", inst.forbidden.to_vec());
    for r in &inst.required {
        eprintln!("required {:?}: {} members {:?}", r.provenance, r.members.len(), r.members);
    }
    eprintln!("bound: {:?}", facts.bound);
    let limit = std::env::var("GS_LIMIT").ok().and_then(|v| v.parse().ok());
    let cfg = SearchConfig { collision_limit: limit, ..SearchConfig::default() };
    let out = check_group(&facts, &inst, &cfg).unwrap();
    eprintln!("sets_tested: {}  frames: {}  fillin_fails: {}  collision_prunes: {}",
        out.sets_tested, out.frames_pushed, out.fillin_failures, out.collision_prunes);
    for s in &out.geodetic_sets {
        eprintln!("found: {:?} {} elements", s.class, s.elements.len());
    }
}
