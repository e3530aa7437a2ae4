//! Finite groups as dense multiplication tables.
//!
//! A [`FiniteGroup`] stores the full `n x n` multiplication table together
//! with cached inverses and element orders. Element `0` is always the
//! identity; ingestion re-indexes if the input table uses a different
//! position. Construction validates the group axioms: the associativity
//! check is exhaustive up to [`EXHAUSTIVE_CHECK_LIMIT`] elements and sampled
//! above that.

mod analysis;
mod autos;
mod families;
mod lattice;

pub use analysis::{
    center, commutator_subgroup, commutativity_degree, commutativity_degree_by_pairs,
    conjugacy_classes, exponent, is_abelian, nilpotency_class, subgroup_closure,
    subgroup_closure_capped,
};
pub use autos::automorphisms;
pub use families::{
    alternating, cyclic, dicyclic, dihedral, direct_product, from_permutations, heisenberg,
    semidirect_cyclic, symmetric,
};
pub use lattice::{
    all_subgroups, frattini_subgroup, is_abelian_subset, is_normal, maximal_subgroups,
    normal_subgroups_of_index,
};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest group order accepted by default.
pub const DEFAULT_ORDER_CAP: usize = 5040;

/// Orders up to this size get an exhaustive associativity check; larger
/// tables are sampled.
pub const EXHAUSTIVE_CHECK_LIMIT: usize = 512;

/// Default cap on subgroup-lattice and automorphism computations. These are
/// accelerators; past the cap the callers degrade instead of failing.
pub const DEFAULT_LATTICE_CAP: usize = 512;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("table is not square at row {row}: expected {expected} entries, found {found}")]
    Malformed { row: usize, expected: usize, found: usize },
    #[error("table entry out of range at ({row},{col}): {value} >= {order}")]
    EntryOutOfRange { row: usize, col: usize, value: usize, order: usize },
    #[error("no identity element found")]
    NoIdentity,
    #[error("row or column {index} is not a permutation (duplicate value {value})")]
    NotLatinSquare { index: usize, value: usize },
    #[error("associativity fails at ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("element {element} has no inverse")]
    MissingInverse { element: usize },
    #[error("invalid semidirect action: {r}^{n} != 1 (mod {m}) or gcd({r},{m}) != 1")]
    InvalidAction { m: u64, n: u64, r: u64 },
    #[error("group of order {requested} exceeds the cap of {cap}")]
    SizeLimit { requested: usize, cap: usize },
}

/// Immutable multiplication-table representation of a finite group.
///
/// Invariants (established by [`FiniteGroup::from_table`]):
/// - element 0 is the identity,
/// - `inverse[g]` satisfies `mul(g, inverse[g]) == 0`,
/// - every row and column of the table is a permutation of `0..n`,
/// - the operation is associative,
/// - `elem_order[g]` is the least `k >= 1` with `g^k == 0`.
#[derive(Clone)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    table: Vec<u16>,
    inverse: Vec<u16>,
    elem_order: Vec<u32>,
}

/// On-disk JSON form: `{"name": .., "order": .., "table": [[..]]}`.
#[derive(Serialize, Deserialize)]
pub struct GroupJson {
    pub name: String,
    pub order: usize,
    pub table: Vec<Vec<usize>>,
}

impl FiniteGroup {
    /// Validates `table` and builds the group, relocating the identity to
    /// index 0 if necessary.
    pub fn from_table(name: &str, table: &[Vec<usize>]) -> Result<FiniteGroup, GroupError> {
        let n = table.len();
        if n == 0 {
            return Err(GroupError::NoIdentity);
        }
        if n > DEFAULT_ORDER_CAP {
            return Err(GroupError::SizeLimit { requested: n, cap: DEFAULT_ORDER_CAP });
        }
        for (row, r) in table.iter().enumerate() {
            if r.len() != n {
                return Err(GroupError::Malformed { row, expected: n, found: r.len() });
            }
            for (col, &v) in r.iter().enumerate() {
                if v >= n {
                    return Err(GroupError::EntryOutOfRange { row, col, value: v, order: n });
                }
            }
        }

        // Locate the (two-sided) identity.
        let identity = (0..n)
            .find(|&e| (0..n).all(|h| table[e][h] == h) && (0..n).all(|g| table[g][e] == g))
            .ok_or(GroupError::NoIdentity)?;

        // Re-index so the identity sits at 0 (swap 0 <-> identity).
        let map = |g: usize| -> usize {
            if g == identity {
                0
            } else if g == 0 {
                identity
            } else {
                g
            }
        };
        let mut flat = vec![0u16; n * n];
        for a in 0..n {
            for b in 0..n {
                flat[map(a) * n + map(b)] = map(table[a][b]) as u16;
            }
        }

        Self::from_reindexed(name, n, flat)
    }

    fn from_reindexed(name: &str, n: usize, flat: Vec<u16>) -> Result<FiniteGroup, GroupError> {
        // Latin square: each row and column is a permutation.
        let mut seen = vec![false; n];
        for g in 0..n {
            seen.fill(false);
            for h in 0..n {
                let v = flat[g * n + h] as usize;
                if seen[v] {
                    return Err(GroupError::NotLatinSquare { index: g, value: v });
                }
                seen[v] = true;
            }
        }
        for h in 0..n {
            seen.fill(false);
            for g in 0..n {
                let v = flat[g * n + h] as usize;
                if seen[v] {
                    return Err(GroupError::NotLatinSquare { index: h, value: v });
                }
                seen[v] = true;
            }
        }

        // Associativity: exhaustive for small orders, sampled beyond.
        if n <= EXHAUSTIVE_CHECK_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    let ab = flat[a * n + b] as usize;
                    for c in 0..n {
                        let bc = flat[b * n + c] as usize;
                        if flat[ab * n + c] != flat[a * n + bc] {
                            return Err(GroupError::NotAssociative { a, b, c });
                        }
                    }
                }
            }
        } else {
            // splitmix64 with a fixed seed keeps the sample deterministic.
            let mut state = 0x9e3779b97f4a7c15u64;
            let mut next = move || {
                state = state.wrapping_add(0x9e3779b97f4a7c15);
                let mut z = state;
                z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
                z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
                (z ^ (z >> 31)) as usize
            };
            for _ in 0..200_000 {
                let a = next() % n;
                let b = next() % n;
                let c = next() % n;
                let ab = flat[a * n + b] as usize;
                let bc = flat[b * n + c] as usize;
                if flat[ab * n + c] != flat[a * n + bc] {
                    return Err(GroupError::NotAssociative { a, b, c });
                }
            }
        }

        // Inverses.
        let mut inverse = vec![0u16; n];
        for g in 0..n {
            match (0..n).find(|&h| flat[g * n + h] == 0) {
                Some(h) => inverse[g] = h as u16,
                None => return Err(GroupError::MissingInverse { element: g }),
            }
        }

        // Element orders: smallest k >= 1 with g^k == identity.
        let mut elem_order = vec![1u32; n];
        for g in 1..n {
            let mut x = flat[g * n + g] as usize; // g^2
            let mut k = 2u32;
            while x != 0 {
                x = flat[x * n + g] as usize;
                k += 1;
            }
            elem_order[g] = k;
        }

        Ok(FiniteGroup { name: name.to_string(), order: n, table: flat, inverse, elem_order })
    }

    pub fn from_json(json: &GroupJson) -> Result<FiniteGroup, GroupError> {
        if json.table.len() != json.order {
            return Err(GroupError::Malformed {
                row: 0,
                expected: json.order,
                found: json.table.len(),
            });
        }
        Self::from_table(&json.name, &json.table)
    }

    pub fn to_json(&self) -> GroupJson {
        let n = self.order;
        GroupJson {
            name: self.name.clone(),
            order: n,
            table: (0..n)
                .map(|g| (0..n).map(|h| self.mul(g, h)).collect())
                .collect(),
        }
    }

    #[inline]
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: &str) {
        self.name = name.to_string();
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, g: usize) -> usize {
        self.inverse[g] as usize
    }

    /// Order of the element `g` in the group.
    #[inline]
    pub fn elem_order(&self, g: usize) -> u32 {
        self.elem_order[g]
    }

    pub fn pow(&self, g: usize, k: u64) -> usize {
        let k = k % self.elem_order(g) as u64;
        let mut acc = 0;
        for _ in 0..k {
            acc = self.mul(acc, g);
        }
        acc
    }

    /// `h^{-1} g h`
    #[inline]
    pub fn conj(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(self.inv(h), g), h)
    }

    /// `[g, h] = g^{-1} h^{-1} g h`
    #[inline]
    pub fn commutator(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(self.inv(g), self.inv(h)), self.mul(g, h))
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }
}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.name, self.order)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_group() {
        let g = FiniteGroup::from_table("1", &[vec![0]]).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.elem_order(0), 1);
    }

    #[test]
    fn c2_from_table() {
        let g = FiniteGroup::from_table("C2", &[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.elem_order(0), 1);
        assert_eq!(g.elem_order(1), 2);
        assert_eq!(g.inv(1), 1);
    }

    #[test]
    fn identity_reindexed_to_zero() {
        // C3 written with identity at position 2.
        // Elements {a, b, e} with a*a=b, a*b=e, b*b=a.
        let t = vec![vec![1, 2, 0], vec![2, 0, 1], vec![0, 1, 2]];
        let g = FiniteGroup::from_table("C3-shifted", &t).unwrap();
        assert_eq!(g.order(), 3);
        for h in 0..3 {
            assert_eq!(g.mul(0, h), h);
            assert_eq!(g.mul(h, 0), h);
        }
        assert_eq!(g.elem_order(1), 3);
    }

    #[test]
    fn corrupted_c6_not_associative() {
        // Swap the intercalate at rows {1,4} x cols {1,4} of the C6 table
        // (entries 2/5 form a 2x2 sub-square): rows and columns stay Latin
        // but associativity breaks, e.g. (1*1)*2 != 1*(1*2).
        let mut t: Vec<Vec<usize>> =
            (0..6).map(|a| (0..6).map(|b| (a + b) % 6).collect()).collect();
        t[1].swap(1, 4);
        t[4].swap(1, 4);
        let err = FiniteGroup::from_table("C6-bad", &t).unwrap_err();
        assert!(matches!(err, GroupError::NotAssociative { .. }), "got {err:?}");
    }

    #[test]
    fn json_round_trip() {
        let g = families::cyclic(5).unwrap();
        let j = g.to_json();
        let g2 = FiniteGroup::from_json(&j).unwrap();
        assert_eq!(g2.order(), 5);
        for a in 0..5 {
            for b in 0..5 {
                assert_eq!(g.mul(a, b), g2.mul(a, b));
            }
        }
    }
}
