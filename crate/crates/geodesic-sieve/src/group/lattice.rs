//! Subgroup lattice by iterated closure.
//!
//! Start from the cyclic subgroups, then repeatedly extend each known
//! subgroup by one outside element and close. Every subgroup arises this
//! way (add its generators one at a time). Feasible to a few hundred
//! elements; callers gate on a cap and degrade when it is exceeded.

use super::{FiniteGroup, GroupError};
use crate::bitset::ElementSet;
use std::collections::HashMap;

/// All subgroups of `G`, sorted by (order, members). Errors with
/// `SizeLimit` when `|G| > cap`.
pub fn all_subgroups(g: &FiniteGroup, cap: usize) -> Result<Vec<ElementSet>, GroupError> {
    let n = g.order();
    if n > cap {
        return Err(GroupError::SizeLimit { requested: n, cap });
    }

    // subgroup bitset -> generating set used to build it
    let mut known: HashMap<Vec<u64>, Vec<usize>> = HashMap::new();
    let mut order: Vec<ElementSet> = Vec::new();

    let trivial = ElementSet::from_indices(n, [0]);
    known.insert(trivial.words().to_vec(), vec![]);
    order.push(trivial);

    let mut head = 0;
    while head < order.len() {
        let members = order[head].clone();
        let gens = known[members.words()].clone();
        head += 1;
        if members.len() == n {
            continue;
        }
        for x in 1..n {
            if members.contains(x) {
                continue;
            }
            let mut new_gens = gens.clone();
            new_gens.push(x);
            let closure = close(g, &members, x, &new_gens);
            if !known.contains_key(closure.words()) {
                known.insert(closure.words().to_vec(), new_gens);
                order.push(closure);
            }
        }
    }

    order.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.to_vec().cmp(&b.to_vec())));
    Ok(order)
}

/// Closure of `base ∪ {x}` given a generating set for the result.
/// O(|result| * |gens|) products.
fn close(g: &FiniteGroup, base: &ElementSet, x: usize, gens: &[usize]) -> ElementSet {
    let mut members = base.clone();
    members.insert(x);
    let mut queue: Vec<usize> = members.iter().collect();
    let mut head = 0;
    while head < queue.len() {
        let a = queue[head];
        head += 1;
        for &s in gens {
            let y = g.mul(a, s);
            if members.insert(y) {
                queue.push(y);
            }
        }
    }
    members
}

/// Proper subgroups with no proper intermediate overgroup.
pub fn maximal_subgroups(g: &FiniteGroup, cap: usize) -> Result<Vec<ElementSet>, GroupError> {
    let all = all_subgroups(g, cap)?;
    let n = g.order();
    let proper: Vec<&ElementSet> = all.iter().filter(|h| h.len() < n).collect();
    let mut maximal = Vec::new();
    'outer: for h in &proper {
        for k in &proper {
            if k.len() > h.len() && h.is_subset_of(k) {
                continue 'outer;
            }
        }
        maximal.push((*h).clone());
    }
    Ok(maximal)
}

/// Normal subgroups of index exactly `k`.
pub fn normal_subgroups_of_index(
    g: &FiniteGroup,
    k: usize,
    cap: usize,
) -> Result<Vec<ElementSet>, GroupError> {
    let n = g.order();
    if k == 0 || n % k != 0 {
        return Ok(vec![]);
    }
    let target = n / k;
    let all = all_subgroups(g, cap)?;
    Ok(all
        .into_iter()
        .filter(|h| h.len() == target && is_normal(g, h))
        .collect())
}

pub fn is_normal(g: &FiniteGroup, h: &ElementSet) -> bool {
    h.iter().all(|x| (0..g.order()).all(|c| h.contains(g.conj(x, c))))
}

pub fn is_abelian_subset(g: &FiniteGroup, h: &ElementSet) -> bool {
    let v = h.to_vec();
    v.iter().all(|&a| v.iter().all(|&b| g.mul(a, b) == g.mul(b, a)))
}

/// Frattini subgroup: intersection of all maximal subgroups.
pub fn frattini_subgroup(g: &FiniteGroup, cap: usize) -> Result<ElementSet, GroupError> {
    let maximal = maximal_subgroups(g, cap)?;
    let n = g.order();
    if maximal.is_empty() {
        return Ok(ElementSet::full(n)); // trivial group: empty intersection
    }
    Ok(ElementSet::from_indices(
        n,
        (0..n).filter(|&x| maximal.iter().all(|m| m.contains(x))),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::families::*;
    use crate::group::DEFAULT_LATTICE_CAP as CAP;

    #[test]
    fn s3_lattice() {
        let s3 = symmetric(3).unwrap();
        let subs = all_subgroups(&s3, CAP).unwrap();
        // 1, three C2, one C3, S3
        assert_eq!(subs.len(), 6);
        let mut sizes: Vec<usize> = subs.iter().map(|s| s.len()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 2, 2, 2, 3, 6]);
    }

    #[test]
    fn a5_maximal_orders() {
        let a5 = alternating(5).unwrap();
        let mut orders: Vec<usize> =
            maximal_subgroups(&a5, CAP).unwrap().iter().map(|m| m.len()).collect();
        orders.sort();
        orders.dedup();
        assert_eq!(orders, vec![6, 10, 12]);
    }

    #[test]
    fn index_two_subgroups() {
        let s3 = symmetric(3).unwrap();
        let n2 = normal_subgroups_of_index(&s3, 2, CAP).unwrap();
        assert_eq!(n2.len(), 1);
        assert_eq!(n2[0].len(), 3);

        let a5 = alternating(5).unwrap();
        assert!(normal_subgroups_of_index(&a5, 2, CAP).unwrap().is_empty());
    }

    #[test]
    fn lattice_cap() {
        let a5 = alternating(5).unwrap();
        assert!(matches!(all_subgroups(&a5, 30), Err(GroupError::SizeLimit { .. })));
    }

    #[test]
    fn frattini_of_q8() {
        // Phi(Q8) = Z(Q8) = {1, -1}
        let q8 = dicyclic(2).unwrap();
        assert_eq!(frattini_subgroup(&q8, CAP).unwrap().len(), 2);
    }

    #[test]
    fn subgroup_count_s4() {
        let s4 = symmetric(4).unwrap();
        assert_eq!(all_subgroups(&s4, CAP).unwrap().len(), 30);
    }
}
