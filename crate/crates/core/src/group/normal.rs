use std::collections::HashSet;

use super::set::subgroup_closure;
use super::{Elem, ElementSet, GroupTable};

/// All normal subgroups, including the trivial subgroup and the whole group.
///
/// A normal subgroup is a union of conjugacy classes closed under products,
/// and the closure of any union of classes is again a union of classes, so a
/// breadth-first walk that repeatedly adjoins one class and re-closes visits
/// the entire lattice.
///
/// Results are sorted by size, then by membership list, so the order is
/// deterministic.
pub fn normal_subgroups(g: &GroupTable) -> Vec<ElementSet> {
    let cc = g.conjugacy_classes();
    let trivial = ElementSet::identity_only();
    let mut seen: HashSet<ElementSet> = HashSet::new();
    seen.insert(trivial);
    let mut queue = vec![trivial];
    while let Some(n) = queue.pop() {
        for class in &cc.classes {
            if n.contains(class[0]) {
                continue;
            }
            let ext = subgroup_closure(g, n.iter().chain(class.iter().copied()));
            if seen.insert(ext) {
                queue.push(ext);
            }
        }
    }
    let mut out: Vec<ElementSet> = seen.into_iter().collect();
    out.sort_by(|a, b| (a.len(), a.to_vec()).cmp(&(b.len(), b.to_vec())));
    out
}

/// The subgroups of index 2 (all of which are normal).
///
/// These are exactly the kernels of the surjections onto the group of order
/// 2, i.e. the preimages of hyperplanes in `G / K` where `K` is generated by
/// the derived subgroup and all squares.
pub fn index_two_subgroups(g: &GroupTable) -> Vec<ElementSet> {
    let mut seed = g.derived_subgroup();
    for a in g.elements() {
        seed.insert(g.mul(a, a));
    }
    let k = subgroup_closure(g, seed.iter());
    let (q, proj) = g.quotient(&k);
    debug_assert!(q.elements().all(|e| q.elem_order(e) <= 2));

    // Coordinates on the elementary abelian quotient.
    let mut basis: Vec<Elem> = Vec::new();
    let mut span = ElementSet::identity_only();
    for e in q.elements() {
        if !span.contains(e) {
            basis.push(e);
            span = subgroup_closure(&q, basis.iter().copied());
        }
    }
    let rank = basis.len();
    let mut coords = vec![0u32; q.order()];
    for mask in 0u32..(1 << rank) {
        let mut prod: Elem = 0;
        for (i, &b) in basis.iter().enumerate() {
            if mask >> i & 1 == 1 {
                prod = q.mul(prod, b);
            }
        }
        coords[prod as usize] = mask;
    }

    let mut out = Vec::new();
    for functional in 1u32..(1 << rank) {
        let mut h = ElementSet::empty();
        for x in g.elements() {
            if (coords[proj[x as usize] as usize] & functional).count_ones() % 2 == 0 {
                h.insert(x);
            }
        }
        out.push(h);
    }
    out.sort_by_key(|h| h.to_vec());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{abelian, cyclic, dihedral, dicyclic};

    #[test]
    fn normal_subgroup_counts() {
        // Z6: one subgroup per divisor, all normal.
        assert_eq!(normal_subgroups(&cyclic(6)).len(), 4);
        // D4: 1, Z2(center), three order-4, Z4 counted there, and G; plus
        // the derived subgroup is the center. Total: 6.
        assert_eq!(normal_subgroups(&dihedral(4)).len(), 6);
        // D5: 1, Z5, G.
        assert_eq!(normal_subgroups(&dihedral(5)).len(), 3);
        // Q8: 1, center, three Z4, G.
        assert_eq!(normal_subgroups(&dicyclic(2)).len(), 6);
    }

    #[test]
    fn normal_subgroups_are_normal() {
        let g = dihedral(6);
        for n in normal_subgroups(&g) {
            assert!(g.is_normal(&n));
        }
    }

    #[test]
    fn index_two_counts() {
        assert_eq!(index_two_subgroups(&dihedral(4)).len(), 3);
        assert_eq!(index_two_subgroups(&dihedral(5)).len(), 1);
        assert_eq!(index_two_subgroups(&cyclic(12)).len(), 1);
        assert_eq!(index_two_subgroups(&abelian(&[2, 2, 2])).len(), 7);
        assert_eq!(index_two_subgroups(&cyclic(9)).len(), 0);
    }

    #[test]
    fn index_two_subgroups_have_index_two() {
        let g = dihedral(8);
        let subs = index_two_subgroups(&g);
        assert_eq!(subs.len(), 3);
        for h in subs {
            assert_eq!(h.len() * 2, g.order());
            assert!(g.is_normal(&h));
            // closed under multiplication
            for a in h.iter() {
                for b in h.iter() {
                    assert!(h.contains(g.mul(a, b)));
                }
            }
        }
    }
}
