//! Size bounds for generating sets of geodetic, non-complete, non-cycle
//! Cayley graphs.
//!
//! For such a graph the neighborhood of the identity splits into `m >= 3`
//! disjoint cliques, and with `alpha(m) = (3m-4)/(2m-2)` a two-ball volume
//! argument forces `alpha(m0) * |Sigma|^2 < |G|` for any admissible lower
//! bound `m0 <= m`. Groups with a nontrivial center satisfy sharper
//! inequalities obtained by placing two-balls on central elements. All
//! comparisons here are exact integer arithmetic; the floating `0.845
//! sqrt(|G|)` form is only ever reported, never used to prune.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

/// Computed size bounds for one group.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoundSet {
    /// Clique-count lower bound used (>= 3).
    pub m0: u64,
    /// `alpha(m0)` as an exact rational, serialized "p/q".
    #[serde(serialize_with = "serialize_ratio", deserialize_with = "deserialize_ratio")]
    pub alpha0: Ratio<i64>,
    /// Largest `d` with `alpha0 * d^2 < |G|`.
    pub sigma_max: u64,
    /// Center-aware bound (set when `|Z(G)| >= 2`).
    pub center_sigma_max: Option<u64>,
    /// Whether any `d` in `[max(3, |Z|-1), min(sigma_max, center_sigma_max)]`
    /// exists at all.
    pub feasible: bool,
}

fn serialize_ratio<S: serde::Serializer>(r: &Ratio<i64>, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format!("{}/{}", r.numer(), r.denom()))
}

fn deserialize_ratio<'de, D: serde::Deserializer<'de>>(d: D) -> Result<Ratio<i64>, D::Error> {
    let s = String::deserialize(d)?;
    let (p, q) = s
        .split_once('/')
        .ok_or_else(|| serde::de::Error::custom("expected p/q"))?;
    let p: i64 = p.parse().map_err(serde::de::Error::custom)?;
    let q: i64 = q.parse().map_err(serde::de::Error::custom)?;
    Ok(Ratio::new(p, q))
}

/// `alpha(m0) = (3 m0 - 4) / (2 m0 - 2)`, increasing in `m0` with limit 3/2.
///
/// Panics if `m0 < 3`.
pub fn alpha(m0: u64) -> Ratio<i64> {
    assert!(m0 >= 3, "alpha requires m0 >= 3, got {m0}");
    Ratio::new(3 * m0 as i64 - 4, 2 * m0 as i64 - 2)
}

/// Admissibility of `m0`: `(m0-1)(3m0-4)(m0-2)^2 / 2 < order` (strict).
fn m0_admissible(m0: u64, order: u64) -> bool {
    let m = m0 as u128;
    (m - 1) * (3 * m - 4) * (m - 2) * (m - 2) < 2 * order as u128
}

/// Largest admissible `m0 >= 3` for a group of this order (order >= 6;
/// `m0 = 3` is always valid there since 1*2*5/2 = 5).
pub fn max_m0(order: u64) -> u64 {
    debug_assert!(order >= 6);
    let mut m0 = 3;
    while m0_admissible(m0 + 1, order) {
        m0 += 1;
    }
    m0
}

/// Largest `d` with `alpha(m0) * d^2 < order`, i.e. `p d^2 < q * order`
/// for `alpha = p/q`.
pub fn sigma_bound(order: u64, m0: u64) -> u64 {
    let a = alpha(m0);
    let (p, q) = (*a.numer() as u128, *a.denom() as u128);
    let lim = q * order as u128;
    let mut d = (lim / p).isqrt() as u64;
    while p * (d as u128 + 1) * (d as u128 + 1) < lim {
        d += 1;
    }
    while d > 0 && p * (d as u128) * (d as u128) >= lim {
        d -= 1;
    }
    d
}

/// Center-aware bound: the largest `d` such that for every `z0` in
/// `1..=z_order`
///
/// ```text
///   alpha0 * z0 * d^2 / 2  -  z0 (z0 - 2) d  +  z0 (z0 - 1) / 2  <=  order
/// ```
///
/// holds. Scanning all `z0` is cheap and exact; the analytic optimum sits
/// near `z0 ~ alpha0 * d / 4`.
pub fn sigma_bound_center(order: u64, z_order: u64, m0: u64) -> u64 {
    let a = alpha(m0);
    let (p, q) = (*a.numer() as i128, *a.denom() as i128);
    let n = order as i128;
    let admissible = |d: i128| -> bool {
        (1..=z_order as i128).all(|z0| {
            // multiply through by 2q > 0
            p * z0 * d * d - 2 * q * z0 * (z0 - 2) * d + q * z0 * (z0 - 1) <= 2 * q * n
        })
    };
    let mut best = 0u64;
    for d in 0..=sigma_bound(order, m0) {
        if admissible(d as i128) {
            best = d;
        }
    }
    best
}

/// Why a group was rejected by the center-size feasibility test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CenterFeasibility {
    Pass,
    /// `alpha0 (|Z|-1)^2 <= |G|` violated.
    FailSquare,
    /// `alpha0^2 (|Z|-1)^3 / 16 <= |G|` violated.
    FailCube,
    /// `alpha0 (|Z|-1)^4 / 4 < |G|` violated (only applies when `3 ∤ |G|`
    /// and `5, 7 ∤ |G : Z|`).
    FailQuartic,
}

impl CenterFeasibility {
    pub fn passed(self) -> bool {
        matches!(self, CenterFeasibility::Pass)
    }
}

/// Center-size feasibility with `m0 = 3` (`alpha0 = 5/4`), mirroring the
/// filtering-stage checks. A failure means no non-complete geodetic
/// generating set can exist.
pub fn center_feasibility(order: u64, z_order: u64) -> CenterFeasibility {
    if z_order < 2 {
        return CenterFeasibility::Pass;
    }
    let z1 = (z_order - 1) as u128;
    let n = order as u128;
    // 5/4 (z-1)^2 <= n  <=>  5 (z-1)^2 <= 4 n
    if 5 * z1 * z1 > 4 * n {
        return CenterFeasibility::FailSquare;
    }
    // 1/16 (5/4)^2 (z-1)^3 <= n  <=>  25 (z-1)^3 <= 256 n
    if 25 * z1 * z1 * z1 > 256 * n {
        return CenterFeasibility::FailCube;
    }
    // 1/4 * 5/4 (z-1)^4 < n  <=>  5 (z-1)^4 < 16 n, when 3 ∤ |G|, 5,7 ∤ |G:Z|
    let index = order / z_order;
    if order % 3 != 0 && index % 5 != 0 && index % 7 != 0 && 5 * z1 * z1 * z1 * z1 >= 16 * n {
        return CenterFeasibility::FailQuartic;
    }
    CenterFeasibility::Pass
}

/// Bounds for a group of the given order and center size. `m0_floor` can be
/// raised by a caller holding a clique-size witness; it is clamped to at
/// least 3 and combined with the order-derived maximum.
pub fn bound_set(order: u64, z_order: u64, m0_floor: Option<u64>) -> BoundSet {
    let m0 = if order >= 6 {
        max_m0(order).max(m0_floor.unwrap_or(0)).max(3)
    } else {
        m0_floor.unwrap_or(3).max(3)
    };
    let sigma_max = if order >= 6 { sigma_bound(order, m0) } else { order.saturating_sub(1) };
    let center_sigma_max =
        (z_order >= 2 && order >= 6).then(|| sigma_bound_center(order, z_order, m0));
    let lower = 3.max(z_order.saturating_sub(1));
    let upper = center_sigma_max.map_or(sigma_max, |c| c.min(sigma_max));
    BoundSet { m0, alpha0: alpha(m0), sigma_max, center_sigma_max, feasible: lower <= upper }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alpha_values() {
        assert_eq!(alpha(3), Ratio::new(5, 4));
        assert_eq!(alpha(6), Ratio::new(7, 5));
    }

    #[test]
    fn alpha_increasing_below_three_halves() {
        let limit = Ratio::new(3i64, 2);
        let mut prev = alpha(3);
        for m in 4..=10_000 {
            let a = alpha(m);
            assert!(a > prev && a < limit, "m = {m}");
            prev = a;
        }
        // spot-check far out
        assert!(alpha(1_000_000) < limit);
    }

    #[test]
    fn max_m0_thresholds() {
        assert_eq!(max_m0(6), 3);
        assert_eq!(max_m0(560), 5);
        assert_eq!(max_m0(561), 6);
    }

    #[test]
    fn sigma_bounds() {
        // order 720: m0 = 6, alpha = 7/5, 22^2 * 7 = 3388 < 3600, 23^2 * 7 = 3703
        assert_eq!(max_m0(720), 6);
        assert_eq!(sigma_bound(720, 6), 22);
        // order 60 with m0 = 3: 5 * 36 = 180 < 240, 5 * 49 = 245
        assert_eq!(sigma_bound(60, 3), 6);
    }

    #[test]
    fn sigma_bound_never_exceeds_sqrt_4n_over_5() {
        for n in 6..2000u64 {
            let d = sigma_bound(n, 3);
            assert!(5 * d * d < 4 * n, "n = {n}");
            let isqrt = (4 * n / 5).isqrt();
            assert!(d <= isqrt, "n = {n}: {d} > {isqrt}");
        }
    }

    #[test]
    fn center_bound_at_most_plain_bound() {
        for n in (6..2000u64).step_by(7) {
            let m0 = max_m0(n);
            assert!(sigma_bound_center(n, 2, m0) <= sigma_bound(n, m0), "n = {n}");
        }
    }

    #[test]
    fn center_bound_monotone_in_z() {
        let mut prev = u64::MAX;
        for z in 2..=20 {
            let b = sigma_bound_center(1000, z, max_m0(1000));
            assert!(b <= prev, "z = {z}");
            prev = b;
        }
    }

    #[test]
    fn degenerate_center_reduces_to_plain_bound() {
        // z0 = 1 only: inequality p d^2 + 2q d + 0 <= 2qn is weaker than the
        // strict plain bound for every d below it.
        for n in [60u64, 156, 720] {
            let m0 = max_m0(n);
            let plain = sigma_bound(n, m0);
            let c = sigma_bound_center(n, 1, m0);
            assert!(c <= plain);
            assert!(c + 2 >= plain, "z0=1 case should be within additive slack");
        }
    }

    #[test]
    fn center_infeasibility_examples() {
        // C13 x A4: order 156, |Z| = 13 -> already the square bound fails.
        assert_eq!(center_feasibility(156, 13), CenterFeasibility::FailSquare);
        // C7 x (C13 : C4): order 364, |Z| = 7, 3 ∤ 364, 5,7 ∤ 52,
        // 5 * 6^4 = 6480 >= 16 * 364 = 5824.
        assert_eq!(center_feasibility(364, 7), CenterFeasibility::FailQuartic);
        // trivial center: vacuous pass
        assert_eq!(center_feasibility(60, 1), CenterFeasibility::Pass);
    }

    #[test]
    fn center_sigma_example_156() {
        // |G| = 156 with |Z| = 13 needs d >= 12, but the center-aware bound
        // sits below that.
        let bs = bound_set(156, 13, None);
        assert!(bs.center_sigma_max.unwrap() < 12);
        assert!(!bs.feasible);
    }
}
