//! Extension routes: candidate `(tau, n0)` data for extending a catalogued
//! group N by a prime p, complete up to isomorphism of the extension.
//!
//! Every non-perfect group G has a normal subgroup M of some prime index p
//! (pull back an index-p subgroup of the nontrivial abelianization), and
//! choosing t outside M identifies G with the cyclic extension of M by
//! tau = conjugation-by-t and n0 = t^p. Replacing (tau, n0) by
//! (alpha tau alpha^-1, alpha(n0)) for alpha in Aut(M) yields an
//! isomorphic extension, so tau only matters up to conjugacy in Aut(M),
//! while every compatible n0 must be kept.

use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::hash::{Hash, Hasher};
use std::ops::ControlFlow;

use prodquot_core::group::{
    for_each_automorphism, generating_set, subgroup_closure, Elem, ElementSet, GroupTable,
};

/// Hard ceiling on one streamed automorphism enumeration. The groups in
/// range whose automorphism groups exceed this are all covered by the
/// canonical-form shape below or by the index-two skip, so hitting the cap
/// means a planning error, not a big computation to wait out.
const AUT_CAP: usize = 2_500_000;

/// Node budget for one automorphism-conjugacy check. Running out keeps the
/// candidate (possibly redundantly) — it never drops one.
const CONJ_BUDGET: usize = 200_000;

pub fn tau_candidates(n: &GroupTable, p: usize) -> Vec<(Vec<Elem>, Elem)> {
    if let Some(shape) = ElemAbShape::detect(n) {
        return special_candidates(n, &shape, p);
    }
    if covered_by_index_two(n, p) {
        return Vec::new();
    }
    generic_candidates(n, p)
}

/// Index-two coverage: for odd p coprime to |N| every extension splits as
/// N x| Z_p, and the Z_p-action on V = N^ab (x) F2 splits V into trivial
/// summands and simple modules of dimension d = ord_p(2). If the 2-rank r
/// of N^ab is positive but not a multiple of d, a trivial summand is
/// forced, so the coinvariants — and with them G^ab — keep a factor of 2,
/// and G also arises by extending one of its own index-two subgroups, whose
/// order |N|p/2 is likewise catalogued. This route can then be dropped.
fn covered_by_index_two(n: &GroupTable, p: usize) -> bool {
    if p == 2 || n.order() % p == 0 {
        return false;
    }
    let r = n.abelianization_invariants().iter().filter(|d| *d % 2 == 0).count();
    if r == 0 {
        return false;
    }
    let d = (1..p).find(|&e| (1u32 << e) % p as u32 == 1).expect("2 is a unit mod an odd prime");
    r % d != 0
}

/// Shape N = (Z2)^k x Z_m with m odd: the one family whose automorphism
/// groups get too big to stream, and where conjugacy classes have clean
/// canonical forms instead: Aut(N) = GL(k, 2) x (Z/m)*, so a class is a
/// choice of rational canonical form A with A^p = 1 together with a unit u
/// with u^p = 1.
struct ElemAbShape {
    /// Bitmask over the involution basis -> element of the 2-part.
    combo: Vec<Elem>,
    /// Element -> bitmask of its 2-part over the basis.
    coord2: Vec<u32>,
    /// Element -> discrete log of its odd part on `codd`.
    dlog: Vec<u32>,
    codd: Elem,
    k: usize,
    m: u32,
}

impl ElemAbShape {
    fn detect(n: &GroupTable) -> Option<Self> {
        if !n.is_abelian() {
            return None;
        }
        let order = n.order() as u32;
        let mut m = order;
        while m % 2 == 0 {
            m /= 2;
        }
        let k = (order / m).trailing_zeros() as usize;
        if n.count_elements_of_order(4) > 0 {
            return None; // 2-part not elementary abelian
        }
        let codd = if m == 1 {
            0
        } else {
            n.elements().find(|&x| n.elem_order(x) as u32 == m)? // odd part must be cyclic
        };
        let mut basis = Vec::new();
        let mut span = ElementSet::identity_only();
        for x in n.elements() {
            if n.elem_order(x) == 2 && !span.contains(x) {
                basis.push(x);
                span = subgroup_closure(n, basis.iter().copied());
            }
        }
        assert_eq!(basis.len(), k, "involution basis of the elementary 2-part");
        let mut combo = vec![0 as Elem; 1 << k];
        for mask in 0..1u32 << k {
            let mut e = 0 as Elem;
            for (i, &b) in basis.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    e = n.mul(e, b);
                }
            }
            combo[mask as usize] = e;
        }
        let mask_of: HashMap<Elem, u32> =
            combo.iter().enumerate().map(|(i, &e)| (e, i as u32)).collect();
        let dlog_of: HashMap<Elem, u32> =
            (0..m).map(|t| (n.pow(codd, t as i64), t)).collect();
        let mut coord2 = vec![0u32; order as usize];
        let mut dlog = vec![0u32; order as usize];
        for x in n.elements() {
            // x = x^m * x^(m+1): the 2-part and odd part of x, since m is
            // odd and m+1 is even with m+1 = 1 mod m.
            coord2[x as usize] = mask_of[&n.pow(x, m as i64)];
            dlog[x as usize] = dlog_of[&n.pow(x, m as i64 + 1)];
        }
        Some(ElemAbShape { combo, coord2, dlog, codd, k, m })
    }
}

/// Block kinds for order-p matrices over F2: companion blocks of the
/// irreducible factors of x^p - 1 other than x - 1 (for p = 2, of the sole
/// elementary divisor (x+1)^2), as `(degree, low coefficient mask)`.
fn block_kinds(p: usize) -> Vec<(usize, u32)> {
    match p {
        2 => vec![(2, 0b01)],                  // x^2 + 1
        3 => vec![(2, 0b11)],                  // x^2 + x + 1
        5 => vec![(4, 0b1111)],                // x^4 + x^3 + x^2 + x + 1
        7 => vec![(3, 0b011), (3, 0b101)],     // x^3 + x + 1, x^3 + x^2 + 1
        _ => panic!("no prime {p} divides a catalogued order"),
    }
}

/// Matrices as column masks: column j is the image of basis vector j.
fn apply_cols(mat: &[u32], v: u32) -> u32 {
    let mut out = 0;
    for (j, &col) in mat.iter().enumerate() {
        if v >> j & 1 == 1 {
            out ^= col;
        }
    }
    out
}

/// Canonical forms of the A in GL(k, 2) with A^p = 1, one per conjugacy
/// class: every multiset of companion blocks fitting in k coordinates,
/// padded by the identity.
fn f2_canonical_forms(k: usize, p: usize) -> Vec<Vec<u32>> {
    let kinds = block_kinds(p);
    let mut out = Vec::new();
    let mut counts = vec![0usize; kinds.len()];
    loop {
        let width: usize = kinds.iter().zip(&counts).map(|(&(d, _), &c)| d * c).sum();
        if width <= k {
            let mut m: Vec<u32> = (0..k).map(|j| 1u32 << j).collect();
            let mut pos = 0;
            for (&(d, coeffs), &c) in kinds.iter().zip(&counts) {
                for _ in 0..c {
                    for i in 0..d - 1 {
                        m[pos + i] = 1 << (pos + i + 1);
                    }
                    let mut last = 0u32;
                    for i in 0..d {
                        if coeffs >> i & 1 == 1 {
                            last |= 1 << (pos + i);
                        }
                    }
                    m[pos + d - 1] = last;
                    pos += d;
                }
            }
            out.push(m);
        }
        // Next count vector, bounded by k blocks of the smallest degree.
        let mut i = 0;
        loop {
            if i == counts.len() {
                return out;
            }
            counts[i] += 1;
            if kinds[i].0 * counts[i] <= k {
                break;
            }
            counts[i] = 0;
            i += 1;
        }
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 { a } else { gcd(b, a % b) }
}

fn pow_mod(mut base: u64, mut exp: u32, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

fn special_candidates(n: &GroupTable, shape: &ElemAbShape, p: usize) -> Vec<(Vec<Elem>, Elem)> {
    let m = shape.m;
    let units: Vec<u32> = if m == 1 {
        vec![0]
    } else {
        (1..m)
            .filter(|&u| gcd(u, m) == 1 && pow_mod(u as u64, p as u32, m as u64) == 1 % m as u64)
            .collect()
    };
    let mut out = Vec::new();
    for mat in f2_canonical_forms(shape.k, p) {
        for &u in &units {
            let mut tau = vec![0 as Elem; n.order()];
            for x in n.elements() {
                let two = shape.combo[apply_cols(&mat, shape.coord2[x as usize]) as usize];
                let exp = if m == 1 {
                    0
                } else {
                    (u as u64 * shape.dlog[x as usize] as u64 % m as u64) as i64
                };
                tau[x as usize] = n.mul(two, n.pow(shape.codd, exp));
            }
            for n0 in n.elements() {
                if tau[n0 as usize] == n0 {
                    out.push((tau.clone(), n0));
                }
            }
        }
    }
    out
}

/// Per-element isomorphism invariant: order, class size, and the
/// (order, class size) sequence of proper powers, hashed. Any automorphism
/// preserves these values elementwise.
fn elem_invariant_hashes(g: &GroupTable) -> Vec<u64> {
    let cc = g.conjugacy_classes();
    let class_size: Vec<u32> = g
        .elements()
        .map(|e| cc.classes[cc.class_of[e as usize] as usize].len() as u32)
        .collect();
    g.elements()
        .map(|e| {
            let mut h = DefaultHasher::new();
            let o = g.elem_order(e);
            (o, class_size[e as usize]).hash(&mut h);
            let mut x = e;
            for _ in 2..=o {
                x = g.mul(x, e);
                (g.elem_order(x), class_size[x as usize]).hash(&mut h);
            }
            h.finish()
        })
        .collect()
}

/// `tau` composed with itself `p` times.
fn power_map(tau: &[Elem], p: usize) -> Vec<Elem> {
    let mut out: Vec<Elem> = (0..tau.len() as Elem).collect();
    for _ in 0..p {
        for slot in out.iter_mut() {
            *slot = tau[*slot as usize];
        }
    }
    out
}

/// Conjugation-invariant hash of an automorphism: its cycle type as a
/// permutation plus the multiset of (invariant of x, invariant of tau(x))
/// pairs. Conjugate automorphisms always collide; colliding ones are then
/// separated by the exact search.
fn conjugacy_key(tau: &[Elem], inv: &[u64]) -> u64 {
    let order = tau.len();
    let mut seen = vec![false; order];
    let mut cycles: Vec<u32> = Vec::new();
    for start in 0..order {
        if seen[start] {
            continue;
        }
        let mut len = 0u32;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = tau[x] as usize;
            len += 1;
        }
        cycles.push(len);
    }
    cycles.sort_unstable();
    let mut pairs: Vec<(u64, u64)> =
        (0..order).map(|x| (inv[x], inv[tau[x] as usize])).collect();
    pairs.sort_unstable();
    let mut h = DefaultHasher::new();
    (order, cycles, pairs).hash(&mut h);
    h.finish()
}

/// Closes the partial assignment gens[i] -> imgs[i] under products exactly
/// like the isomorphism search, additionally requiring the commuting
/// square m(tau(x)) = tau2(m(x)) wherever both sides are defined. Returns
/// None on any inconsistency (or an exhausted budget), otherwise whether
/// the closure reached the entire group.
fn close_commuting(
    n: &GroupTable,
    gens: &[Elem],
    imgs: &[Elem],
    tau: &[Elem],
    tau2: &[Elem],
    tau_inv: &[Elem],
    budget: &mut usize,
) -> Option<bool> {
    let order = n.order();
    let mut m = vec![u16::MAX; order];
    let mut used = vec![false; order];
    let mut list: Vec<Elem> = vec![0];
    m[0] = 0;
    used[0] = true;
    // Checks for a fresh pair x -> y, in both tau-directions; the second
    // assignment of any (x, tau(x)) pair sees the first, so a completed map
    // satisfies the commuting square everywhere.
    macro_rules! assign {
        ($x:expr, $y:expr) => {{
            let (x, y) = ($x, $y);
            if *budget == 0 {
                return None;
            }
            *budget -= 1;
            let slot = m[x as usize];
            if slot != u16::MAX {
                if slot != y {
                    return None;
                }
                false
            } else {
                if used[y as usize] {
                    return None;
                }
                let tx = tau[x as usize];
                let mtx = m[tx as usize];
                if mtx != u16::MAX && mtx != tau2[y as usize] {
                    return None;
                }
                let px = tau_inv[x as usize];
                let mpx = m[px as usize];
                if mpx != u16::MAX && tau2[mpx as usize] != y {
                    return None;
                }
                m[x as usize] = y;
                used[y as usize] = true;
                list.push(x);
                true
            }
        }};
    }
    for (&g, &h) in gens.iter().zip(imgs.iter()) {
        assign!(g, h);
    }
    let mut qi = 0;
    while qi < list.len() {
        let x = list[qi];
        qi += 1;
        let mx = m[x as usize];
        for (&g, &h) in gens.iter().zip(imgs.iter()) {
            assign!(n.mul(x, g), n.mul(mx, h));
        }
    }
    Some(list.len() == order)
}

/// Backtracking search for alpha in Aut(N) with alpha tau alpha^-1 = tau2.
/// `false` covers both "none exists" and "budget ran out".
fn conjugate_in_aut(
    n: &GroupTable,
    gens: &[Elem],
    cands: &[Vec<Elem>],
    tau: &[Elem],
    tau2: &[Elem],
    budget: &mut usize,
) -> bool {
    let mut tau_inv = vec![0 as Elem; tau.len()];
    for (x, &y) in tau.iter().enumerate() {
        tau_inv[y as usize] = x as Elem;
    }
    fn descend(
        n: &GroupTable,
        gens: &[Elem],
        cands: &[Vec<Elem>],
        tau: &[Elem],
        tau2: &[Elem],
        tau_inv: &[Elem],
        imgs: &mut Vec<Elem>,
        budget: &mut usize,
    ) -> bool {
        let level = imgs.len();
        for &h in &cands[level] {
            if *budget == 0 {
                return false;
            }
            imgs.push(h);
            match close_commuting(n, gens, imgs, tau, tau2, tau_inv, budget) {
                Some(true) => {
                    imgs.pop();
                    return true;
                }
                Some(false) => {
                    if level + 1 < gens.len()
                        && descend(n, gens, cands, tau, tau2, tau_inv, imgs, budget)
                    {
                        imgs.pop();
                        return true;
                    }
                }
                None => {}
            }
            imgs.pop();
        }
        false
    }
    let mut imgs = Vec::with_capacity(gens.len());
    descend(n, gens, cands, tau, tau2, &tau_inv, &mut imgs, budget)
}

fn generic_candidates(n: &GroupTable, p: usize) -> Vec<(Vec<Elem>, Elem)> {
    let order = n.order();
    let mut inn: HashMap<Vec<Elem>, Elem> = HashMap::new();
    for a in n.elements() {
        let map: Vec<Elem> = n.elements().map(|x| n.conj(a, x)).collect();
        inn.entry(map).or_insert(a);
    }
    let inv = elem_invariant_hashes(n);
    let gens = generating_set(n);
    let cands: Vec<Vec<Elem>> = gens
        .iter()
        .map(|&g| n.elements().filter(|&h| inv[h as usize] == inv[g as usize]).collect())
        .collect();
    let mut kept: Vec<Vec<Elem>> = Vec::new();
    let mut buckets: HashMap<u64, Vec<usize>> = HashMap::new();
    let mut seen = 0usize;
    for_each_automorphism(n, &mut |tau| {
        seen += 1;
        assert!(
            seen <= AUT_CAP,
            "automorphism enumeration for a group of order {order} exceeded the cap"
        );
        if inn.contains_key(&power_map(&tau, p)) {
            let key = conjugacy_key(&tau, &inv);
            let bucket = buckets.entry(key).or_default();
            let covered = bucket.iter().any(|&i| {
                let mut budget = CONJ_BUDGET;
                conjugate_in_aut(n, &gens, &cands, &kept[i], &tau, &mut budget)
            });
            if !covered {
                bucket.push(kept.len());
                kept.push(tau);
            }
        }
        ControlFlow::Continue(())
    });
    let z = n.center();
    let mut out = Vec::new();
    for tau in &kept {
        let a = inn[&power_map(tau, p)];
        // Everything inducing tau^p by conjugation is the coset a Z(N).
        for zc in z.iter() {
            let n0 = n.mul(a, zc);
            if tau[n0 as usize] == n0 {
                out.push((tau.clone(), n0));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use prodquot_core::group::{
        abelian, are_isomorphic, cyclic, cyclic_extension, dicyclic, dihedral, direct_product,
        metacyclic, quaternion8, symmetric,
    };

    fn extension_classes(n: &GroupTable, p: usize) -> Vec<GroupTable> {
        let mut acc = crate::accum::Accumulator::new();
        for (tau, n0) in tau_candidates(n, p) {
            acc.push(cyclic_extension(n, p, &tau, n0));
        }
        acc.finish()
    }

    #[test]
    fn doubling_z4_gives_the_four_classes_containing_it() {
        let classes = extension_classes(&cyclic(4), 2);
        let expected =
            [cyclic(8), abelian(&[2, 4]), dihedral(4), quaternion8()];
        assert_eq!(classes.len(), expected.len());
        for e in &expected {
            assert!(classes.iter().any(|c| are_isomorphic(c, e)));
        }
    }

    #[test]
    fn doubling_v4_gives_three_classes() {
        let classes = extension_classes(&abelian(&[2, 2]), 2);
        let expected = [abelian(&[2, 2, 2]), abelian(&[2, 4]), dihedral(4)];
        assert_eq!(classes.len(), expected.len());
        for e in &expected {
            assert!(classes.iter().any(|c| are_isomorphic(c, e)));
        }
    }

    #[test]
    fn doubling_q8_exercises_the_generic_route() {
        let classes = extension_classes(&quaternion8(), 2);
        // The order-16 groups with a quaternion subgroup of index two.
        let pauli = {
            let dp = direct_product(&dihedral(4), &cyclic(4));
            let diag = subgroup_closure(&dp, [10 as Elem]);
            dp.quotient(&diag).0
        };
        let expected = [
            direct_product(&cyclic(2), &quaternion8()),
            dicyclic(4),
            metacyclic(2, 8, 3).unwrap(),
            pauli,
        ];
        assert_eq!(classes.len(), expected.len());
        for e in &expected {
            assert!(classes.iter().any(|c| are_isomorphic(c, e)));
        }
    }

    #[test]
    fn frobenius_route_from_the_seven_canonical_forms() {
        let classes = extension_classes(&abelian(&[2, 2, 2]), 7);
        assert_eq!(classes.len(), 2);
        let abelian_count =
            classes.iter().filter(|c| c.is_abelian()).count();
        assert_eq!(abelian_count, 1);
        let frob = classes.iter().find(|c| !c.is_abelian()).unwrap();
        assert_eq!(frob.order(), 56);
        assert_eq!(frob.center().len(), 1);
        assert_eq!(frob.count_elements_of_order(7), 48);
    }

    #[test]
    fn index_two_skip_only_fires_when_justified() {
        // S3 by 5: the skip applies (rank 1, ord_5(2) = 4), and indeed every
        // order-30 group with a normal S3 also has an index-two subgroup.
        assert!(covered_by_index_two(&symmetric(3), 5));
        assert!(tau_candidates(&symmetric(3), 5).is_empty());
        // S3 by 3 divides the order, so no skip; S3 by 2 never skips.
        assert!(!covered_by_index_two(&symmetric(3), 3));
        assert!(!covered_by_index_two(&symmetric(3), 2));
        // Perfect-abelianization case: rank 0 never skips.
        assert!(!covered_by_index_two(&abelian(&[3, 3]), 5));
    }

    #[test]
    fn special_shape_detection_is_selective() {
        assert!(ElemAbShape::detect(&abelian(&[2, 2, 6])).is_some());
        assert!(ElemAbShape::detect(&abelian(&[15])).is_some());
        assert!(ElemAbShape::detect(&abelian(&[])).is_some());
        assert!(ElemAbShape::detect(&abelian(&[4, 2])).is_none());
        assert!(ElemAbShape::detect(&abelian(&[3, 3])).is_none());
        assert!(ElemAbShape::detect(&symmetric(3)).is_none());
    }

    #[test]
    fn special_and_generic_agree_on_small_shapes() {
        // (Z2)^2 x Z3 by 2: run the canonical-form path and an uncapped
        // generic enumeration; the resulting class sets must coincide.
        let n = abelian(&[2, 2, 3]);
        let special = {
            let mut acc = crate::accum::Accumulator::new();
            let shape = ElemAbShape::detect(&n).unwrap();
            for (tau, n0) in special_candidates(&n, &shape, 2) {
                acc.push(cyclic_extension(&n, 2, &tau, n0));
            }
            acc.finish()
        };
        let generic = {
            let mut acc = crate::accum::Accumulator::new();
            for (tau, n0) in generic_candidates(&n, 2) {
                acc.push(cyclic_extension(&n, 2, &tau, n0));
            }
            acc.finish()
        };
        assert_eq!(special.len(), generic.len());
        for g in &generic {
            assert!(special.iter().any(|s| are_isomorphic(s, g)));
        }
    }
}
