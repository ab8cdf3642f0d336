use std::collections::HashSet;
use std::ops::ControlFlow;

use super::set::subgroup_closure;
use super::{Elem, ElementSet, GroupTable};

/// An automorphism (or isomorphism) as the image list `elem -> map[elem]`.
pub type Automorphism = Vec<Elem>;

/// `f` then `g`, as a map: `compose(f, g)[x] = g[f[x]]`.
pub fn compose_maps(f: &[Elem], g: &[Elem]) -> Automorphism {
    f.iter().map(|&y| g[y as usize]).collect()
}

pub fn invert_map(f: &[Elem]) -> Automorphism {
    let mut out = vec![0 as Elem; f.len()];
    for (x, &y) in f.iter().enumerate() {
        out[y as usize] = x as Elem;
    }
    out
}

/// Greedy generating sequence: repeatedly adjoin the element of largest
/// order outside the current closure (smallest index on ties). Not minimal
/// in general, but short, and short sequences are what keep the
/// isomorphism backtracking shallow.
pub fn generating_set(g: &GroupTable) -> Vec<Elem> {
    let mut gens = Vec::new();
    let mut closure = ElementSet::identity_only();
    while closure.len() < g.order() {
        let next = g
            .elements()
            .filter(|&e| !closure.contains(e))
            .max_by_key(|&e| (g.elem_order(e), std::cmp::Reverse(e)))
            .expect("closure smaller than group");
        gens.push(next);
        closure = subgroup_closure(g, gens.iter().copied());
    }
    gens
}

/// Fast deterministic 64-bit mixer. Hashes here only build heuristic
/// element classes — a collision costs extra search work, never a wrong
/// answer — so speed beats hash quality.
#[derive(Clone, Copy)]
struct Mix(u64);

impl Mix {
    fn new() -> Self {
        Mix(0x9E37_79B9_7F4A_7C15)
    }
    fn add(&mut self, x: u64) {
        self.0 = (self.0.rotate_left(5) ^ x).wrapping_mul(0x517C_C1B7_2722_0A95);
    }
    fn finish(self) -> u64 {
        let mut h = self.0;
        h ^= h >> 32;
        h = h.wrapping_mul(0xD6E8_FEB8_6659_FD93);
        h ^= h >> 32;
        h
    }
}

/// Per-element isomorphism invariants: order, class size, the
/// (order, class size) sequence of all proper powers, the histogram of
/// orders of square roots, the histogram of orders of commuting elements,
/// then iterated refinement against the multiplication table, all hashed.
/// Isomorphic groups induce equal multisets, and any isomorphism matches
/// elements with equal values. Catalog deduplication tests one group
/// against many: compute this once and hand it to
/// [`are_isomorphic_given`] instead of letting every call recompute it.
pub fn element_invariants(g: &GroupTable) -> Vec<u64> {
    let cc = g.conjugacy_classes();
    let class_size: Vec<u32> = g
        .elements()
        .map(|e| cc.classes[cc.class_of[e as usize] as usize].len() as u32)
        .collect();

    fn bump(hist: &mut Vec<(u16, u32)>, order: u16) {
        match hist.iter_mut().find(|(o, _)| *o == order) {
            Some((_, c)) => *c += 1,
            None => hist.push((order, 1)),
        }
    }
    let mut sqrt_hist: Vec<Vec<(u16, u32)>> = vec![Vec::new(); g.order()];
    for y in g.elements() {
        bump(&mut sqrt_hist[g.mul(y, y) as usize], g.elem_order(y));
    }
    let mut comm_hist: Vec<Vec<(u16, u32)>> = vec![Vec::new(); g.order()];
    for e in g.elements() {
        let hist = &mut comm_hist[e as usize];
        for x in g.elements() {
            if g.mul(e, x) == g.mul(x, e) {
                bump(hist, g.elem_order(x));
            }
        }
    }
    for hist in sqrt_hist.iter_mut().chain(comm_hist.iter_mut()) {
        hist.sort_unstable();
    }

    let mut inv: Vec<u64> = g
        .elements()
        .map(|e| {
            let mut h = Mix::new();
            let o = g.elem_order(e);
            h.add((u64::from(o) << 32) | u64::from(class_size[e as usize]));
            let mut x = e;
            for _ in 2..=o {
                x = g.mul(x, e);
                h.add((u64::from(g.elem_order(x)) << 32) | u64::from(class_size[x as usize]));
            }
            for &(o, c) in &sqrt_hist[e as usize] {
                h.add(1 << 63 | (u64::from(o) << 32) | u64::from(c));
            }
            for &(o, c) in &comm_hist[e as usize] {
                h.add(1 << 62 | (u64::from(o) << 32) | u64::from(c));
            }
            h.finish()
        })
        .collect();

    // Iterated refinement: rehash each element with the multiset of
    // (value of x, value of e*x) pairs until the partition stops
    // splitting. Still a true isomorphism invariant, and each round can
    // only split classes, so candidate lists shrink toward automorphism
    // orbits.
    let mut classes = distinct_count(&inv);
    loop {
        let mut pairs: Vec<(u64, u64)> = Vec::with_capacity(g.order());
        let next: Vec<u64> = g
            .elements()
            .map(|e| {
                pairs.clear();
                pairs.extend(
                    g.elements().map(|x| (inv[x as usize], inv[g.mul(e, x) as usize])),
                );
                pairs.sort_unstable();
                let mut h = Mix::new();
                h.add(inv[e as usize]);
                for &(u, v) in &pairs {
                    h.add(u);
                    h.add(v);
                }
                h.finish()
            })
            .collect();
        let next_classes = distinct_count(&next);
        inv = next;
        if next_classes == classes {
            break;
        }
        classes = next_classes;
    }
    inv
}

fn distinct_count(values: &[u64]) -> usize {
    let mut sorted: Vec<u64> = values.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    sorted.len()
}

/// Extends the partial map `gens[i] -> imgs[i]` to the subgroup generated by
/// the listed generators. Returns the map (defined exactly on that
/// subgroup), the set of used images, and the subgroup size — or `None` if
/// the assignment is inconsistent with the two tables.
fn close_assignment(
    a: &GroupTable,
    b: &GroupTable,
    gens: &[Elem],
    imgs: &[Elem],
) -> Option<(Vec<Elem>, Vec<bool>, usize)> {
    let mut m = vec![u16::MAX; a.order()];
    let mut used = vec![false; b.order()];
    m[0] = 0;
    used[0] = true;
    let mut list: Vec<Elem> = vec![0];
    for (&g, &h) in gens.iter().zip(imgs) {
        if m[g as usize] != u16::MAX {
            if m[g as usize] != h {
                return None;
            }
            continue;
        }
        if used[h as usize] {
            return None;
        }
        m[g as usize] = h;
        used[h as usize] = true;
        list.push(g);
    }
    // Close under right multiplication by the generators, checking every
    // product; consistency of all (x, gen) products makes the final map a
    // homomorphism on the generated subgroup.
    let mut qi = 0;
    while qi < list.len() {
        let x = list[qi];
        qi += 1;
        let mx = m[x as usize];
        for (&g, &h) in gens.iter().zip(imgs) {
            let xg = a.mul(x, g);
            let y = b.mul(mx, h);
            let slot = m[xg as usize];
            if slot == u16::MAX {
                if used[y as usize] {
                    return None;
                }
                m[xg as usize] = y;
                used[y as usize] = true;
                list.push(xg);
            } else if slot != y {
                return None;
            }
        }
    }
    Some((m, used, list.len()))
}

/// Enumerates isomorphisms `a -> b`, feeding each to `visit` until it breaks.
fn enumerate_isomorphisms(
    a: &GroupTable,
    b: &GroupTable,
    visit: &mut dyn FnMut(Vec<Elem>) -> ControlFlow<()>,
) {
    if a.order() != b.order() {
        return;
    }
    let inv_a = element_invariants(a);
    let inv_b = element_invariants(b);
    enumerate_isomorphisms_given(a, &inv_a, b, &inv_b, visit)
}

/// [`enumerate_isomorphisms`] with the [`element_invariants`] of both sides
/// supplied by the caller.
fn enumerate_isomorphisms_given(
    a: &GroupTable,
    inv_a: &[u64],
    b: &GroupTable,
    inv_b: &[u64],
    visit: &mut dyn FnMut(Vec<Elem>) -> ControlFlow<()>,
) {
    if a.order() != b.order() {
        return;
    }
    {
        let mut sa = inv_a.to_vec();
        let mut sb = inv_b.to_vec();
        sa.sort_unstable();
        sb.sort_unstable();
        if sa != sb {
            return;
        }
    }
    let gens = generating_set(a);
    let cands: Vec<Vec<Elem>> = gens
        .iter()
        .map(|&g| {
            b.elements().filter(|&h| inv_b[h as usize] == inv_a[g as usize]).collect::<Vec<_>>()
        })
        .collect();

    fn recurse(
        a: &GroupTable,
        b: &GroupTable,
        gens: &[Elem],
        cands: &[Vec<Elem>],
        imgs: &mut Vec<Elem>,
        visit: &mut dyn FnMut(Vec<Elem>) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        let level = imgs.len();
        for &h in &cands[level] {
            imgs.push(h);
            if let Some((m, _, size)) = close_assignment(a, b, &gens[..level + 1], imgs) {
                if level + 1 == gens.len() {
                    debug_assert_eq!(size, a.order());
                    visit(m)?;
                } else {
                    recurse(a, b, gens, cands, imgs, visit)?;
                }
            }
            imgs.pop();
        }
        ControlFlow::Continue(())
    }

    if gens.is_empty() {
        // Trivial group.
        let _ = visit(vec![0]);
        return;
    }
    let mut imgs = Vec::with_capacity(gens.len());
    let _ = recurse(a, b, &gens, &cands, &mut imgs, visit);
}

/// Some isomorphism `a -> b`, or `None` if the groups are not isomorphic.
pub fn isomorphism(a: &GroupTable, b: &GroupTable) -> Option<Automorphism> {
    let mut found = None;
    enumerate_isomorphisms(a, b, &mut |m| {
        found = Some(m);
        ControlFlow::Break(())
    });
    found
}

pub fn are_isomorphic(a: &GroupTable, b: &GroupTable) -> bool {
    isomorphism(a, b).is_some()
}

/// [`are_isomorphic`] with the [`element_invariants`] of both sides
/// supplied by the caller, for loops that test one group against many.
pub fn are_isomorphic_given(a: &GroupTable, inv_a: &[u64], b: &GroupTable, inv_b: &[u64]) -> bool {
    let mut found = false;
    enumerate_isomorphisms_given(a, inv_a, b, inv_b, &mut |_| {
        found = true;
        ControlFlow::Break(())
    });
    found
}

/// The full automorphism group as image lists. The identity is included.
pub fn automorphism_group(g: &GroupTable) -> Vec<Automorphism> {
    let mut out = Vec::new();
    enumerate_isomorphisms(g, g, &mut |m| {
        out.push(m);
        ControlFlow::Continue(())
    });
    out
}

/// Like [`automorphism_group`], but gives up (returning `None`) as soon as
/// more than `cap` automorphisms have been found. Lets callers bail out on
/// groups like large elementary abelian ones whose automorphism groups are
/// astronomically big.
pub fn automorphisms_capped(g: &GroupTable, cap: usize) -> Option<Vec<Automorphism>> {
    let mut out = Vec::new();
    let mut overflow = false;
    enumerate_isomorphisms(g, g, &mut |m| {
        if out.len() >= cap {
            overflow = true;
            return ControlFlow::Break(());
        }
        out.push(m);
        ControlFlow::Continue(())
    });
    (!overflow).then_some(out)
}

/// Streams every automorphism of `g` through `visit` without materializing
/// the whole automorphism group, stopping early if `visit` breaks. The
/// identity is included; the enumeration order is deterministic.
pub fn for_each_automorphism(
    g: &GroupTable,
    visit: &mut dyn FnMut(Automorphism) -> ControlFlow<()>,
) {
    enumerate_isomorphisms(g, g, visit);
}

/// A small generating set for the automorphism group: greedily keeps the
/// automorphisms not already generated by the chosen ones.
pub fn reduced_automorphism_generators(g: &GroupTable) -> Vec<Automorphism> {
    let all = automorphism_group(g);
    reduce_automorphism_generators(g, &all)
}

/// The greedy reduction itself, for callers that already hold the full
/// automorphism list.
pub fn reduce_automorphism_generators(g: &GroupTable, all: &[Automorphism]) -> Vec<Automorphism> {
    let id: Automorphism = g.elements().collect();
    let mut closure: HashSet<Automorphism> = HashSet::new();
    closure.insert(id);
    let mut gens: Vec<Automorphism> = Vec::new();
    for a in all {
        if closure.contains(a) {
            continue;
        }
        gens.push(a.clone());
        // Re-close under composition.
        let mut frontier: Vec<Automorphism> = vec![a.clone()];
        closure.insert(a.clone());
        while let Some(x) = frontier.pop() {
            let members: Vec<Automorphism> = closure.iter().cloned().collect();
            for y in members {
                for p in [compose_maps(&x, &y), compose_maps(&y, &x)] {
                    if !closure.contains(&p) {
                        closure.insert(p.clone());
                        frontier.push(p);
                    }
                }
            }
        }
        if closure.len() == all.len() {
            break;
        }
    }
    gens
}
