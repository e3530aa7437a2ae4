//! Verification that geodetic Cayley graphs of finite groups are complete
//! graphs or odd cycles.
//!
//! A connected graph is *geodetic* if every pair of vertices is joined by a
//! unique shortest path. For a finite group `G` with a symmetric generating
//! set `Σ` (inverse-closed, not containing the identity), the Cayley graph
//! `Cay(G, Σ)` is geodetic in exactly two known situations: `Σ = G \ {1}`
//! (complete graph) and `Σ = {a, a⁻¹}` generating a cyclic group of odd
//! order (odd cycle). This crate checks, for groups supplied as
//! multiplication tables or built from families, that no other geodetic
//! generating set exists.
//!
//! The pipeline has three stages:
//!
//! 1. **Filtering** ([`filters`]): structural tests that settle a group
//!    outright (abelian, even-order center, abelian index-2 subgroup, ...).
//! 2. **Preprocessing** ([`preprocess`]): forbidden elements, required
//!    subsets, automorphism reduction and central geodesic profiles that
//!    shrink the search space.
//! 3. **Search** ([`search`]): a pruned binary-counter enumeration of
//!    symmetric generating sets, saturating each set with forced generators
//!    and testing geodicity by breadth-first search.
//!
//! An independent brute-force [`oracle`] cross-checks the search on small
//! groups. The [`pipeline`] module glues everything into batch runs with
//! machine-readable reports; `examples/` shows each capability end to end.

#![forbid(unsafe_code)]

pub mod bitset;
pub mod bounds;
pub mod corpus;
pub mod filters;
pub mod geodesy;
pub mod group;
pub mod oracle;
pub mod pipeline;
pub mod preprocess;
pub mod search;

pub use bitset::ElementSet;
pub use group::FiniteGroup;
