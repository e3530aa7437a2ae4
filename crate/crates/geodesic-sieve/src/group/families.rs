//! Constructors for the built-in group families.

use super::{FiniteGroup, GroupError, DEFAULT_ORDER_CAP};
use std::collections::HashMap;

fn build(name: &str, n: usize, mul: impl Fn(usize, usize) -> usize) -> Result<FiniteGroup, GroupError> {
    if n > DEFAULT_ORDER_CAP {
        return Err(GroupError::SizeLimit { requested: n, cap: DEFAULT_ORDER_CAP });
    }
    let table: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| mul(a, b)).collect()).collect();
    FiniteGroup::from_table(name, &table)
}

/// Cyclic group of order `n`.
pub fn cyclic(n: usize) -> Result<FiniteGroup, GroupError> {
    assert!(n >= 1);
    build(&format!("C{n}"), n, |a, b| (a + b) % n)
}

/// Dihedral group of order `2n` (symmetries of the regular `n`-gon).
///
/// Elements `0..n` are rotations `r^i`, elements `n..2n` are reflections
/// `s r^i`.
pub fn dihedral(n: usize) -> Result<FiniteGroup, GroupError> {
    assert!(n >= 1);
    let name = format!("D{}", 2 * n);
    build(&name, 2 * n, |a, b| {
        let (i, s1) = if a < n { (a, false) } else { (a - n, true) };
        let (j, s2) = if b < n { (b, false) } else { (b - n, true) };
        // (s^x r^i)(s^y r^j) = s^{x+y} r^{(-1)^y i + j}
        let i_signed = if s2 { (n - i) % n } else { i };
        let k = (i_signed + j) % n;
        match s1 ^ s2 {
            false => k,
            true => n + k,
        }
    })
}

/// Dicyclic group of order `4m` (`m >= 1`); `Dic8` is the quaternion group.
///
/// Presentation `a^{2m} = 1`, `b^2 = a^m`, `b a b^{-1} = a^{-1}`. Elements
/// `0..2m` are `a^i`, elements `2m..4m` are `a^i b`.
pub fn dicyclic(m: usize) -> Result<FiniteGroup, GroupError> {
    assert!(m >= 1);
    let n2 = 2 * m;
    let name = format!("Dic{}", 4 * m);
    build(&name, 4 * m, |x, y| {
        let (i, bi) = if x < n2 { (x, false) } else { (x - n2, true) };
        let (j, bj) = if y < n2 { (y, false) } else { (y - n2, true) };
        // b a^j = a^{-j} b,  b b = a^m
        match (bi, bj) {
            (false, false) => (i + j) % n2,
            (false, true) => n2 + (i + j) % n2,
            (true, false) => n2 + (i + (n2 - j)) % n2,
            (true, true) => (i + (n2 - j) + m) % n2,
        }
    })
}

/// Heisenberg group of order `p^3` for an odd prime `p`: upper unitriangular
/// 3x3 matrices over `F_p`. Exponent `p` for odd `p`.
pub fn heisenberg(p: usize) -> Result<FiniteGroup, GroupError> {
    assert!(p >= 2);
    let n = p * p * p;
    let name = format!("Heis{n}");
    // element (a, b, c) encoded a*p^2 + b*p + c; identity (0,0,0) = 0
    build(&name, n, |x, y| {
        let (a1, b1, c1) = (x / (p * p), (x / p) % p, x % p);
        let (a2, b2, c2) = (y / (p * p), (y / p) % p, y % p);
        let a = (a1 + a2) % p;
        let b = (b1 + b2) % p;
        let c = (c1 + c2 + a1 * b2) % p;
        a * p * p + b * p + c
    })
}

/// Semidirect product `C_m ⋊ C_n` with the action `x -> x^r` of the `C_n`
/// generator on `C_m`. Requires `gcd(r, m) = 1` and `r^n ≡ 1 (mod m)`.
///
/// `r = 1` is the trivial action, giving `C_m x C_n`.
pub fn semidirect_cyclic(m: usize, n: usize, r: usize) -> Result<FiniteGroup, GroupError> {
    assert!(m >= 1 && n >= 1);
    let r = r % m.max(1);
    if gcd(r as u64, m as u64) != 1 || pow_mod(r as u64, n as u64, m as u64) != 1 % m as u64 {
        return Err(GroupError::InvalidAction { m: m as u64, n: n as u64, r: r as u64 });
    }
    // powers of r mod m, indexed by the C_n component
    let mut rp = vec![1usize; n];
    for i in 1..n {
        rp[i] = rp[i - 1] * r % m;
    }
    let name = format!("C{m}:C{n}(r={r})");
    // element (a, b) with a in Z_m, b in Z_n, encoded a*n + b; identity 0
    // (a1,b1)(a2,b2) = (a1 + r^{b1} a2, b1 + b2)
    build(&name, m * n, |x, y| {
        let (a1, b1) = (x / n, x % n);
        let (a2, b2) = (y / n, y % n);
        let a = (a1 + rp[b1] * a2) % m;
        let b = (b1 + b2) % n;
        a * n + b
    })
}

/// Direct product of two groups; elements `(g, h)` encoded `g * |H| + h`.
pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Result<FiniteGroup, GroupError> {
    let (ng, nh) = (g.order(), h.order());
    let n = ng.checked_mul(nh).filter(|&n| n <= DEFAULT_ORDER_CAP).ok_or(
        GroupError::SizeLimit { requested: ng.saturating_mul(nh), cap: DEFAULT_ORDER_CAP },
    )?;
    let name = format!("{} x {}", g.name(), h.name());
    build(&name, n, |x, y| {
        let (g1, h1) = (x / nh, x % nh);
        let (g2, h2) = (y / nh, y % nh);
        g.mul(g1, g2) * nh + h.mul(h1, h2)
    })
}

/// Symmetric group on `k` points, `k <= 7` under the default order cap.
pub fn symmetric(k: usize) -> Result<FiniteGroup, GroupError> {
    assert!(k >= 1);
    let perms = all_permutations(k, false)?;
    permutation_table(&format!("S{k}"), k, perms)
}

/// Alternating group on `k` points.
pub fn alternating(k: usize) -> Result<FiniteGroup, GroupError> {
    assert!(k >= 1);
    let perms = all_permutations(k, true)?;
    permutation_table(&format!("A{k}"), k, perms)
}

/// Closure of a set of permutations (of `0..degree`) under composition.
pub fn from_permutations(
    degree: usize,
    gens: &[Vec<usize>],
    cap: usize,
) -> Result<FiniteGroup, GroupError> {
    for g in gens {
        assert_eq!(g.len(), degree, "generator degree mismatch");
        let mut seen = vec![false; degree];
        for &v in g {
            assert!(v < degree && !seen[v], "not a permutation");
            seen[v] = true;
        }
    }
    let id: Vec<usize> = (0..degree).collect();
    let mut gens: Vec<Vec<usize>> = gens.to_vec();
    gens.sort();
    gens.dedup();

    let mut elems: Vec<Vec<usize>> = vec![id.clone()];
    let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
    index.insert(id, 0);
    let mut head = 0;
    while head < elems.len() {
        let cur = elems[head].clone();
        head += 1;
        for g in &gens {
            let prod: Vec<usize> = (0..degree).map(|i| cur[g[i]]).collect();
            if !index.contains_key(&prod) {
                if elems.len() >= cap {
                    return Err(GroupError::SizeLimit { requested: elems.len() + 1, cap });
                }
                index.insert(prod.clone(), elems.len());
                elems.push(prod);
            }
        }
    }
    let name = format!("Perm(deg {degree}, order {})", elems.len());
    permutation_table_with_index(&name, degree, elems, index)
}

fn all_permutations(k: usize, even_only: bool) -> Result<Vec<Vec<usize>>, GroupError> {
    let mut total: usize = (1..=k).product();
    if even_only && k >= 2 {
        total /= 2;
    }
    if total > DEFAULT_ORDER_CAP {
        return Err(GroupError::SizeLimit { requested: total, cap: DEFAULT_ORDER_CAP });
    }
    // Lexicographic generation keeps the identity first.
    let mut perms = Vec::with_capacity(total);
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        if !even_only || parity(&cur) == 0 {
            perms.push(cur.clone());
        }
        if !next_permutation(&mut cur) {
            break;
        }
    }
    Ok(perms)
}

fn parity(p: &[usize]) -> u8 {
    let mut seen = vec![false; p.len()];
    let mut par = 0u8;
    for i in 0..p.len() {
        if seen[i] {
            continue;
        }
        let mut j = i;
        let mut len = 0;
        while !seen[j] {
            seen[j] = true;
            j = p[j];
            len += 1;
        }
        par ^= ((len - 1) & 1) as u8;
    }
    par
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

fn permutation_table(
    name: &str,
    degree: usize,
    perms: Vec<Vec<usize>>,
) -> Result<FiniteGroup, GroupError> {
    let index: HashMap<Vec<usize>, usize> =
        perms.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
    permutation_table_with_index(name, degree, perms, index)
}

fn permutation_table_with_index(
    name: &str,
    degree: usize,
    perms: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
) -> Result<FiniteGroup, GroupError> {
    let n = perms.len();
    if n > DEFAULT_ORDER_CAP {
        return Err(GroupError::SizeLimit { requested: n, cap: DEFAULT_ORDER_CAP });
    }
    let mut table: Vec<Vec<usize>> = vec![vec![0; n]; n];
    let mut prod = vec![0usize; degree];
    for a in 0..n {
        for b in 0..n {
            for i in 0..degree {
                prod[i] = perms[a][perms[b][i]];
            }
            table[a][b] = *index.get(&prod).expect("closure under composition");
        }
    }
    FiniteGroup::from_table(name, &table)
}

fn gcd(a: u64, b: u64) -> u64 {
    num_integer::gcd(a, b)
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{center, is_abelian};

    #[test]
    fn family_orders() {
        assert_eq!(cyclic(15).unwrap().order(), 15);
        assert_eq!(dihedral(10).unwrap().order(), 20);
        assert_eq!(symmetric(4).unwrap().order(), 24);
        assert_eq!(alternating(5).unwrap().order(), 60);
        assert_eq!(dicyclic(2).unwrap().order(), 8);
        assert_eq!(dicyclic(3).unwrap().order(), 12);
        assert_eq!(heisenberg(3).unwrap().order(), 27);
        assert_eq!(semidirect_cyclic(7, 3, 2).unwrap().order(), 21);
    }

    #[test]
    fn c2_orders() {
        let g = cyclic(2).unwrap();
        assert_eq!(g.elem_order(0), 1);
        assert_eq!(g.elem_order(1), 2);
    }

    #[test]
    fn quaternion_properties() {
        let q8 = dicyclic(2).unwrap();
        // exactly one element of order 2
        let invols: Vec<_> = q8.elements().filter(|&g| q8.elem_order(g) == 2).collect();
        assert_eq!(invols.len(), 1);
        assert_eq!(center(&q8).len(), 2);
    }

    #[test]
    fn semidirect_center_and_action() {
        // Faithful action: trivial center, computed by scanning all 21 elements.
        let g = semidirect_cyclic(7, 3, 2).unwrap();
        assert_eq!(center(&g).len(), 1);
        // Trivial action: the direct product C7 x C3 = C21 is abelian.
        let h = semidirect_cyclic(7, 3, 1).unwrap();
        assert!(is_abelian(&h));
        assert_eq!(h.order(), 21);
        // Bad action: 2^2 = 4 != 1 mod 7.
        assert!(matches!(
            semidirect_cyclic(7, 2, 2),
            Err(GroupError::InvalidAction { .. })
        ));
    }

    #[test]
    fn heisenberg_is_exponent_three() {
        let g = heisenberg(3).unwrap();
        assert!(g.elements().skip(1).all(|x| g.elem_order(x) == 3));
    }

    #[test]
    fn from_permutations_closure() {
        // <(0 1), (0 1 2)> = S3
        let g = from_permutations(3, &[vec![1, 0, 2], vec![1, 2, 0]], 100).unwrap();
        assert_eq!(g.order(), 6);
        // cap exceeded
        assert!(matches!(
            from_permutations(5, &[vec![1, 2, 3, 4, 0], vec![1, 0, 2, 3, 4]], 10),
            Err(GroupError::SizeLimit { .. })
        ));
    }

    #[test]
    fn dihedral_relations() {
        let n = 7;
        let g = dihedral(n).unwrap();
        let r = 1; // rotation by one step
        let s = n; // a reflection
        assert_eq!(g.elem_order(r), n as u32);
        assert_eq!(g.elem_order(s), 2);
        // s r s = r^{-1}
        assert_eq!(g.mul(g.mul(s, r), s), g.inv(r));
    }

    #[test]
    fn direct_product_component_mul() {
        let a = cyclic(13).unwrap();
        let b = alternating(4).unwrap();
        let p = direct_product(&a, &b).unwrap();
        assert_eq!(p.order(), 156);
        assert_eq!(center(&p).len(), 13);
    }
}
