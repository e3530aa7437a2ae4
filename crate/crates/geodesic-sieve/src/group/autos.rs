//! Automorphism group by generator-image backtracking.
//!
//! Pick a short generating sequence, enumerate image tuples that preserve
//! element orders and extend to a consistent homomorphism, and keep the
//! bijective ones. Past the cap (or the internal node budget) the function
//! returns only the identity; downstream reductions stay correct, just
//! weaker.

use super::FiniteGroup;

/// Node budget for the backtracking; hitting it aborts to identity-only.
const NODE_BUDGET: usize = 4_000_000;

/// The full automorphism group of `G` as permutations of elements, sorted
/// lexicographically. `vec![identity]` if `|G| > cap` or the search is
/// aborted by the node budget.
pub fn automorphisms(g: &FiniteGroup, cap: usize) -> Vec<Vec<u16>> {
    let n = g.order();
    let identity: Vec<u16> = (0..n as u16).collect();
    if n > cap {
        return vec![identity];
    }
    if n == 1 {
        return vec![identity];
    }

    let gens = generating_sequence(g);

    // Candidate images per generator: same element order.
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&x| (1..n).filter(|&y| g.elem_order(y) == g.elem_order(x)).collect())
        .collect();

    let mut autos: Vec<Vec<u16>> = Vec::new();
    let mut images = vec![0usize; gens.len()];
    let mut budget = NODE_BUDGET;
    if !extend(g, &gens, &candidates, &mut images, 0, &mut autos, &mut budget) {
        return vec![identity];
    }

    autos.sort();
    autos
}

fn generating_sequence(g: &FiniteGroup) -> Vec<usize> {
    let n = g.order();
    // First generator: maximal element order, least index among ties.
    let first = (1..n).max_by_key(|&x| (g.elem_order(x), std::cmp::Reverse(x))).unwrap();
    let mut gens = vec![first];
    let mut span = super::subgroup_closure(g, [first]);
    while span.len() < n {
        // Extend by the element giving the largest closure, least index ties.
        let mut best: Option<(usize, crate::bitset::ElementSet, usize)> = None;
        for x in 1..n {
            if span.contains(x) {
                continue;
            }
            let mut seed: Vec<usize> = gens.clone();
            seed.push(x);
            let c = super::subgroup_closure(g, seed);
            let better = match &best {
                None => true,
                Some((len, _, _)) => c.len() > *len,
            };
            if better {
                let done = c.len() == n;
                best = Some((c.len(), c, x));
                if done {
                    break;
                }
            }
        }
        let (_, c, x) = best.expect("proper subgroup has outside elements");
        gens.push(x);
        span = c;
    }
    gens
}

/// Depth-first over image tuples; returns false when the budget runs out.
fn extend(
    g: &FiniteGroup,
    gens: &[usize],
    candidates: &[Vec<usize>],
    images: &mut [usize],
    depth: usize,
    autos: &mut Vec<Vec<u16>>,
    budget: &mut usize,
) -> bool {
    if depth == gens.len() {
        if let Some(phi) = complete_map(g, gens, images) {
            if verify(g, &phi) {
                autos.push(phi);
            }
        }
        return true;
    }
    for &y in &candidates[depth] {
        if *budget == 0 {
            return false;
        }
        *budget -= 1;
        images[depth] = y;
        // Partial consistency: the prefix must already extend to a
        // well-defined homomorphism on the subgroup it generates.
        if complete_map(g, &gens[..=depth], &images[..=depth]).is_some()
            && !extend(g, gens, candidates, images, depth + 1, autos, budget)
        {
            return false;
        }
    }
    true
}

/// Extends `gens[i] -> images[i]` to a map on `<gens>` by BFS, checking
/// every product edge; `None` on any inconsistency.
fn complete_map(g: &FiniteGroup, gens: &[usize], images: &[usize]) -> Option<Vec<u16>> {
    let n = g.order();
    const UNSET: u16 = u16::MAX;
    let mut phi = vec![UNSET; n];
    phi[0] = 0;
    let mut queue = vec![0usize];
    let mut head = 0;
    while head < queue.len() {
        let a = queue[head];
        head += 1;
        let fa = phi[a] as usize;
        for (&s, &fs) in gens.iter().zip(images) {
            let b = g.mul(a, s);
            let fb = g.mul(fa, fs) as u16;
            if phi[b] == UNSET {
                phi[b] = fb;
                queue.push(b);
            } else if phi[b] != fb {
                return None;
            }
        }
    }
    Some(phi)
}

/// Full table check plus bijectivity.
fn verify(g: &FiniteGroup, phi: &[u16]) -> bool {
    let n = g.order();
    if phi.iter().any(|&v| v == u16::MAX) {
        return false; // partial map (generators span a proper subgroup)
    }
    let mut seen = vec![false; n];
    for &v in phi {
        if seen[v as usize] {
            return false;
        }
        seen[v as usize] = true;
    }
    for a in 0..n {
        for b in 0..n {
            if phi[g.mul(a, b)] != g.mul(phi[a] as usize, phi[b] as usize) as u16 {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::families::*;

    #[test]
    fn automorphism_counts() {
        // Images of a C5 generator: the 4 nonidentity elements.
        assert_eq!(automorphisms(&cyclic(5).unwrap(), 512).len(), 4);
        // All automorphisms of S3 are inner.
        assert_eq!(automorphisms(&symmetric(3).unwrap(), 512).len(), 6);
        // Aut(C2 x C2) permutes the 3 involutions: GL(2,2) = S3.
        let v4 = direct_product(&cyclic(2).unwrap(), &cyclic(2).unwrap()).unwrap();
        assert_eq!(automorphisms(&v4, 512).len(), 6);
    }

    #[test]
    fn over_cap_degrades_to_identity() {
        let g = symmetric(4).unwrap();
        let autos = automorphisms(&g, 10);
        assert_eq!(autos.len(), 1);
        assert!(autos[0].iter().enumerate().all(|(i, &v)| i == v as usize));
    }

    #[test]
    fn every_automorphism_preserves_products() {
        let g = semidirect_cyclic(7, 3, 2).unwrap();
        let autos = automorphisms(&g, 512);
        // |Aut(C7:C3)| = 42
        assert_eq!(autos.len(), 42);
        for phi in &autos {
            assert_eq!(phi[0], 0);
            for a in g.elements() {
                for b in g.elements() {
                    assert_eq!(
                        phi[g.mul(a, b)],
                        g.mul(phi[a] as usize, phi[b] as usize) as u16
                    );
                }
            }
        }
    }

    #[test]
    fn aut_q8_order_24() {
        assert_eq!(automorphisms(&dicyclic(2).unwrap(), 512).len(), 24);
    }
}
