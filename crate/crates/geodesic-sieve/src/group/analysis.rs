//! Element-level group analysis: center, conjugacy classes, exponent,
//! commutators, closures, nilpotency, commutativity degree.

use super::FiniteGroup;
use crate::bitset::ElementSet;
use num_integer::Integer;
use num_rational::Ratio;

pub fn is_abelian(g: &FiniteGroup) -> bool {
    let n = g.order();
    (0..n).all(|a| (a + 1..n).all(|b| g.mul(a, b) == g.mul(b, a)))
}

/// `Z(G) = {g : gh = hg for all h}`.
pub fn center(g: &FiniteGroup) -> ElementSet {
    let n = g.order();
    ElementSet::from_indices(
        n,
        (0..n).filter(|&z| (0..n).all(|h| g.mul(z, h) == g.mul(h, z))),
    )
}

/// Partition of the elements into conjugacy classes, ordered by least
/// element index.
pub fn conjugacy_classes(g: &FiniteGroup) -> Vec<ElementSet> {
    let n = g.order();
    let mut assigned = vec![false; n];
    let mut classes = Vec::new();
    for x in 0..n {
        if assigned[x] {
            continue;
        }
        let mut class = ElementSet::new(n);
        for h in 0..n {
            let y = g.conj(x, h);
            if class.insert(y) {
                assigned[y] = true;
            }
        }
        classes.push(class);
    }
    classes
}

/// Smallest `k >= 1` with `g^k = 1` for every `g`: the lcm of element orders.
pub fn exponent(g: &FiniteGroup) -> u64 {
    g.elements().fold(1u64, |acc, x| acc.lcm(&(g.elem_order(x) as u64)))
}

/// Subgroup generated by `seed`, computed by saturation under
/// multiplication. `cap` aborts early (returns None) once the closure
/// exceeds it, for callers probing "is this subgroup small".
pub fn subgroup_closure_capped(
    g: &FiniteGroup,
    seed: impl IntoIterator<Item = usize>,
    cap: usize,
) -> Option<ElementSet> {
    let n = g.order();
    let mut members = ElementSet::new(n);
    members.insert(0);
    let mut gens: Vec<usize> = Vec::new();
    for s in seed {
        if members.insert(s) {
            gens.push(s);
        }
    }
    let mut queue: Vec<usize> = members.iter().collect();
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for &s in &gens {
            let y = g.mul(x, s);
            if members.insert(y) {
                if members.len() > cap {
                    return None;
                }
                queue.push(y);
            }
        }
    }
    Some(members)
}

/// Subgroup generated by `seed`.
pub fn subgroup_closure(g: &FiniteGroup, seed: impl IntoIterator<Item = usize>) -> ElementSet {
    subgroup_closure_capped(g, seed, usize::MAX).unwrap()
}

/// Derived subgroup `G' = <[a,b] : a, b in G>`.
pub fn commutator_subgroup(g: &FiniteGroup) -> ElementSet {
    commutators_of(g, &ElementSet::full(g.order()))
}

/// `<[x, h] : x in xs, h in G>`
fn commutators_of(g: &FiniteGroup, xs: &ElementSet) -> ElementSet {
    let n = g.order();
    let mut seed = ElementSet::new(n);
    for x in xs.iter() {
        for h in 0..n {
            seed.insert(g.commutator(x, h));
        }
    }
    subgroup_closure(g, seed.iter())
}

/// Nilpotency class via the lower central series `γ_1 = G`,
/// `γ_{i+1} = [γ_i, G]`; `None` when the series stalls above the trivial
/// subgroup. The trivial group has class 0, nontrivial abelian groups
/// class 1.
pub fn nilpotency_class(g: &FiniteGroup) -> Option<u32> {
    let n = g.order();
    if n == 1 {
        return Some(0);
    }
    let mut gamma = ElementSet::full(n);
    let mut class = 0u32;
    loop {
        let next = commutators_of(g, &gamma);
        class += 1;
        if next.len() == 1 {
            return Some(class);
        }
        if next == gamma {
            return None;
        }
        gamma = next;
    }
}

/// Probability that two uniformly random elements commute, as an exact
/// rational. Equals (number of conjugacy classes) / |G|.
pub fn commutativity_degree(g: &FiniteGroup) -> Ratio<u64> {
    Ratio::new(conjugacy_classes(g).len() as u64, g.order() as u64)
}

/// Pair-counting route for the same quantity; kept separate so the two can
/// be cross-checked.
pub fn commutativity_degree_by_pairs(g: &FiniteGroup) -> Ratio<u64> {
    let n = g.order();
    let commuting = (0..n)
        .map(|a| (0..n).filter(|&b| g.mul(a, b) == g.mul(b, a)).count() as u64)
        .sum::<u64>();
    Ratio::new(commuting, (n * n) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::families::*;

    #[test]
    fn centers() {
        assert_eq!(center(&symmetric(3).unwrap()).len(), 1);
        assert_eq!(center(&dihedral(4).unwrap()).len(), 2);
        assert_eq!(center(&cyclic(6).unwrap()).len(), 6);
    }

    #[test]
    fn conjugacy_class_sizes() {
        let mut sizes: Vec<usize> =
            conjugacy_classes(&symmetric(3).unwrap()).iter().map(|c| c.len()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 2, 3]);

        let g = cyclic(8).unwrap();
        assert!(conjugacy_classes(&g).iter().all(|c| c.len() == 1));

        let mut sizes: Vec<usize> =
            conjugacy_classes(&alternating(5).unwrap()).iter().map(|c| c.len()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 12, 12, 15, 20]);
    }

    #[test]
    fn center_is_union_of_singleton_classes() {
        for g in [symmetric(4).unwrap(), dicyclic(3).unwrap(), heisenberg(3).unwrap()] {
            let z = center(&g);
            let singletons: Vec<usize> = conjugacy_classes(&g)
                .iter()
                .filter(|c| c.len() == 1)
                .flat_map(|c| c.iter())
                .collect();
            assert_eq!(z.to_vec(), {
                let mut s = singletons;
                s.sort();
                s
            });
        }
    }

    #[test]
    fn exponents() {
        assert_eq!(exponent(&cyclic(6).unwrap()), 6);
        assert_eq!(exponent(&symmetric(3).unwrap()), 6);
        assert_eq!(exponent(&heisenberg(3).unwrap()), 3);
    }

    #[test]
    fn commutator_subgroups() {
        let s3 = symmetric(3).unwrap();
        let d = commutator_subgroup(&s3);
        assert_eq!(d.len(), 3);
        assert!(d.iter().all(|x| x == 0 || s3.elem_order(x) == 3));

        assert_eq!(commutator_subgroup(&cyclic(12).unwrap()).len(), 1);
    }

    #[test]
    fn closure_satisfies_lagrange() {
        let groups =
            [symmetric(4).unwrap(), alternating(5).unwrap(), semidirect_cyclic(7, 3, 2).unwrap()];
        for g in &groups {
            for s in g.elements() {
                let h = subgroup_closure(g, [s]);
                assert_eq!(g.order() % h.len(), 0, "Lagrange fails in {}", g.name());
            }
        }
    }

    #[test]
    fn closure_of_transposition() {
        let s3 = symmetric(3).unwrap();
        let t = s3.elements().find(|&x| s3.elem_order(x) == 2).unwrap();
        assert_eq!(subgroup_closure(&s3, [t]).len(), 2);
    }

    #[test]
    fn nilpotency_classes() {
        assert_eq!(nilpotency_class(&cyclic(9).unwrap()), Some(1));
        assert_eq!(nilpotency_class(&dihedral(4).unwrap()), Some(2));
        assert_eq!(nilpotency_class(&heisenberg(3).unwrap()), Some(2));
        assert_eq!(nilpotency_class(&symmetric(3).unwrap()), None);
        assert_eq!(nilpotency_class(&cyclic(1).unwrap()), Some(0));
    }

    #[test]
    fn nilpotent_implies_nontrivial_center() {
        for g in [dihedral(4).unwrap(), dicyclic(2).unwrap(), heisenberg(3).unwrap()] {
            if nilpotency_class(&g).is_some() && g.order() > 1 {
                assert!(center(&g).len() > 1);
            }
        }
    }

    #[test]
    fn commutativity_degrees() {
        let half = Ratio::new(1u64, 2);
        assert_eq!(commutativity_degree(&symmetric(3).unwrap()), half);
        assert_eq!(commutativity_degree(&dihedral(4).unwrap()), Ratio::new(5, 8));
        assert_eq!(commutativity_degree(&cyclic(5).unwrap()), Ratio::new(1, 1));
    }

    #[test]
    fn two_degree_routes_agree() {
        for g in [
            symmetric(3).unwrap(),
            symmetric(4).unwrap(),
            dihedral(7).unwrap(),
            dicyclic(3).unwrap(),
            heisenberg(3).unwrap(),
            semidirect_cyclic(5, 4, 2).unwrap(),
        ] {
            assert_eq!(commutativity_degree(&g), commutativity_degree_by_pairs(&g), "{}", g.name());
        }
    }
}
