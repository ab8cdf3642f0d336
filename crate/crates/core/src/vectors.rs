//! Generating vectors: tuples of group elements realizing a branched cover
//! of a genus-0 or genus-1 curve, together with the freeness conditions the
//! classification hinges on.
//!
//! A vector of type `(0 | m_1..m_r)` is `(g_1..g_r)` with `ord(g_i) = m_i`,
//! `g_1 ... g_r = 1`, generating the group; type `(1 | n_1..n_s)` is
//! `(l_1..l_s; h_1, h_2)` with the long relation `l_1 ... l_s [h_1,h_2] = 1`
//! and everything together generating. The stabilizers of a point in the
//! corresponding action are exactly the conjugates of the cyclic groups
//! `<l_j>`, which is what `stabilizer_union` collects and the conditions
//! (U), (M1), (M2) consume.

use crate::error::VectorError;
use crate::group::{subgroup_closure, Elem, ElementSet, GroupTable};
use crate::signature::BranchSignature;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeneratingVector {
    pub signature: BranchSignature,
    /// `g_1..g_r` (genus 0) or `l_1..l_s` (genus 1).
    pub branch: Vec<Elem>,
    /// Empty for genus 0; `h_1, h_2` for genus 1.
    pub handles: Vec<Elem>,
}

impl GeneratingVector {
    pub fn new(
        g: &GroupTable,
        signature: BranchSignature,
        branch: Vec<Elem>,
        handles: Vec<Elem>,
    ) -> Result<Self, VectorError> {
        let v = GeneratingVector { signature, branch, handles };
        v.validate(g)?;
        Ok(v)
    }

    pub fn validate(&self, g: &GroupTable) -> Result<(), VectorError> {
        let periods = self.signature.periods();
        if self.branch.len() != periods.len() {
            return Err(VectorError::WrongBranchCount {
                got: self.branch.len(),
                want: periods.len(),
            });
        }
        let want_handles = 2 * self.signature.base_genus() as usize;
        if self.handles.len() != want_handles {
            return Err(VectorError::WrongHandleCount {
                got: self.handles.len(),
                want: want_handles,
            });
        }
        for (i, (&b, &m)) in self.branch.iter().zip(periods).enumerate() {
            if g.elem_order(b) as u32 != m {
                return Err(VectorError::WrongOrder { index: i, got: g.elem_order(b), want: m });
            }
        }
        if self.long_relation_product(g) != g.identity() {
            return Err(VectorError::LongRelation);
        }
        let closure = subgroup_closure(g, self.elements());
        if closure.len() != g.order() {
            return Err(VectorError::NotGenerating);
        }
        Ok(())
    }

    /// `g_1 ... g_r [h_1,h_2]`; the identity for a valid vector.
    pub fn long_relation_product(&self, g: &GroupTable) -> Elem {
        let mut acc = g.product(&self.branch);
        if let [h1, h2] = self.handles[..] {
            acc = g.mul(acc, g.comm(h1, h2));
        }
        acc
    }

    /// Branch elements, then handles.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        self.branch.iter().chain(self.handles.iter()).copied()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    /// Stop at the first witness; the leading branch element only runs over
    /// conjugacy-class representatives, which conjugation-invariance of
    /// existence permits.
    Exists,
    /// The complete list, no pruning of any kind.
    All,
}

/// Exhaustive search for generating vectors of the given type. `Exists`
/// returns at most one vector (deterministically the first); `All` returns
/// the full list ordered lexicographically by the free slots.
pub fn find_generating_vectors(
    g: &GroupTable,
    sig: &BranchSignature,
    mode: SearchMode,
) -> Vec<GeneratingVector> {
    // A period with no elements of that order, or more independent
    // generators needed than there are free slots, kills the search before
    // it starts. Neither skip can lose a genuine vector.
    let periods = sig.periods();
    for &m in periods {
        if u16::try_from(m).map_or(true, |m| g.count_elements_of_order(m) == 0) {
            return Vec::new();
        }
    }
    let free_slots = if sig.base_genus() == 0 {
        periods.len().saturating_sub(1)
    } else {
        periods.len().saturating_sub(1) + 2
    };
    if g.abelianization_invariants().len() > free_slots {
        return Vec::new();
    }
    let mut out = Vec::new();
    if sig.base_genus() == 0 {
        search_genus0(g, sig, mode, &mut out);
    } else {
        search_genus1(g, sig, mode, &mut out);
    }
    out
}

pub fn exists_generating_vector(g: &GroupTable, sig: &BranchSignature) -> Option<GeneratingVector> {
    find_generating_vectors(g, sig, SearchMode::Exists).into_iter().next()
}

fn elements_of_order(g: &GroupTable, m: u32) -> Vec<Elem> {
    g.elements().filter(|&e| g.elem_order(e) as u32 == m).collect()
}

fn class_reps_of_order(g: &GroupTable, m: u32) -> Vec<Elem> {
    g.conjugacy_classes()
        .representatives()
        .filter(|&e| g.elem_order(e) as u32 == m)
        .collect()
}

/// `closure(base ∪ {x})` for `base` already closed.
fn extend_closure(g: &GroupTable, base: ElementSet, x: Elem) -> ElementSet {
    if base.contains(x) {
        return base;
    }
    let mut set = base;
    let mut members = set.to_vec();
    set.insert(x);
    members.push(x);
    let mut frontier = vec![x];
    while let Some(y) = frontier.pop() {
        let snapshot = members.len();
        for i in 0..snapshot {
            let m = members[i];
            for p in [g.mul(m, y), g.mul(y, m)] {
                if !set.contains(p) {
                    set.insert(p);
                    members.push(p);
                    frontier.push(p);
                }
            }
        }
    }
    set
}

fn search_genus0(
    g: &GroupTable,
    sig: &BranchSignature,
    mode: SearchMode,
    out: &mut Vec<GeneratingVector>,
) {
    let periods = sig.periods();
    let r = periods.len();
    if r == 1 {
        // g_1 = 1 of order >= 2: impossible.
        return;
    }
    let firsts = match mode {
        SearchMode::Exists => class_reps_of_order(g, periods[0]),
        SearchMode::All => elements_of_order(g, periods[0]),
    };
    let buckets: Vec<Vec<Elem>> =
        periods[1..r - 1].iter().map(|&m| elements_of_order(g, m)).collect();
    let last_order = periods[r - 1];
    let mut chosen: Vec<Elem> = Vec::with_capacity(r);

    // Depth-first over the r-1 free slots; the last element is the inverse
    // of the partial product, so only its order and the closure of the free
    // slots need checking at the bottom.
    fn descend(
        g: &GroupTable,
        sig: &BranchSignature,
        buckets: &[Vec<Elem>],
        depth: usize,
        product: Elem,
        closure: ElementSet,
        last_order: u32,
        chosen: &mut Vec<Elem>,
        stop_at_one: bool,
        out: &mut Vec<GeneratingVector>,
    ) -> bool {
        if depth == buckets.len() {
            let last = g.inv(product);
            if g.elem_order(last) as u32 != last_order || closure.len() != g.order() {
                return false;
            }
            let mut branch = chosen.clone();
            branch.push(last);
            out.push(GeneratingVector {
                signature: sig.clone(),
                branch,
                handles: Vec::new(),
            });
            return stop_at_one;
        }
        for &e in &buckets[depth] {
            chosen.push(e);
            let done = descend(
                g,
                sig,
                buckets,
                depth + 1,
                g.mul(product, e),
                extend_closure(g, closure, e),
                last_order,
                chosen,
                stop_at_one,
                out,
            );
            chosen.pop();
            if done {
                return true;
            }
        }
        false
    }

    let stop_at_one = mode == SearchMode::Exists;
    for &e in &firsts {
        chosen.push(e);
        let done = descend(
            g,
            sig,
            &buckets,
            0,
            e,
            extend_closure(g, ElementSet::identity_only(), e),
            last_order,
            &mut chosen,
            stop_at_one,
            out,
        );
        chosen.pop();
        if done {
            return;
        }
    }
}

fn search_genus1(
    g: &GroupTable,
    sig: &BranchSignature,
    mode: SearchMode,
    out: &mut Vec<GeneratingVector>,
) {
    let periods = sig.periods();
    let s = periods.len();
    let stop_at_one = mode == SearchMode::Exists;
    let all: Vec<Elem> = g.elements().collect();

    if s == 0 {
        // Two commuting handles generating the whole group.
        for &h1 in &all {
            for &h2 in &all {
                if g.comm(h1, h2) != g.identity() {
                    continue;
                }
                if subgroup_closure(g, [h1, h2]).len() != g.order() {
                    continue;
                }
                out.push(GeneratingVector {
                    signature: sig.clone(),
                    branch: Vec::new(),
                    handles: vec![h1, h2],
                });
                if stop_at_one {
                    return;
                }
            }
        }
        return;
    }

    // Free slots l_1..l_{s-1}, then h_1, h_2; the long relation determines
    // l_s = (l_1...l_{s-1})^-1 [h_1,h_2]^-1.
    let firsts = if s >= 2 {
        match mode {
            SearchMode::Exists => class_reps_of_order(g, periods[0]),
            SearchMode::All => elements_of_order(g, periods[0]),
        }
    } else {
        Vec::new()
    };
    let mut buckets: Vec<Vec<Elem>> = Vec::new();
    if s >= 2 {
        buckets.push(firsts);
        for &m in &periods[1..s - 1] {
            buckets.push(elements_of_order(g, m));
        }
    }
    buckets.push(all.clone());
    buckets.push(all);
    let last_order = periods[s - 1];

    fn descend(
        g: &GroupTable,
        sig: &BranchSignature,
        buckets: &[Vec<Elem>],
        depth: usize,
        prefix_product: Elem,
        closure: ElementSet,
        last_order: u32,
        chosen: &mut Vec<Elem>,
        stop_at_one: bool,
        out: &mut Vec<GeneratingVector>,
    ) -> bool {
        if depth == buckets.len() {
            let s_minus_1 = chosen.len() - 2;
            let (h1, h2) = (chosen[s_minus_1], chosen[s_minus_1 + 1]);
            let k = g.comm(h1, h2);
            let last = g.mul(g.inv(prefix_product), g.inv(k));
            if g.elem_order(last) as u32 != last_order || closure.len() != g.order() {
                return false;
            }
            let mut branch: Vec<Elem> = chosen[..s_minus_1].to_vec();
            branch.push(last);
            out.push(GeneratingVector {
                signature: sig.clone(),
                branch,
                handles: vec![h1, h2],
            });
            return stop_at_one;
        }
        let is_branch_slot = depth < buckets.len() - 2;
        for &e in &buckets[depth] {
            chosen.push(e);
            let product = if is_branch_slot { g.mul(prefix_product, e) } else { prefix_product };
            let done = descend(
                g,
                sig,
                buckets,
                depth + 1,
                product,
                extend_closure(g, closure, e),
                last_order,
                chosen,
                stop_at_one,
                out,
            );
            chosen.pop();
            if done {
                return true;
            }
        }
        false
    }

    let mut chosen: Vec<Elem> = Vec::new();
    descend(
        g,
        sig,
        &buckets,
        0,
        g.identity(),
        ElementSet::identity_only(),
        last_order,
        &mut chosen,
        stop_at_one,
        out,
    );
}

/// Union over all branch elements `v` and all `σ ∈ G` of `σ<v>σ^-1` — the
/// set of elements fixing some point of the covering curve. Handles
/// contribute nothing; the identity is always included.
pub fn stabilizer_union(g: &GroupTable, v: &GeneratingVector) -> ElementSet {
    stabilizer_union_over(g, &v.branch, None)
}

/// As `stabilizer_union`, but conjugating only by the elements of
/// `conjugators` when given (the mixed conditions conjugate by `G°` inside
/// the bigger group).
pub fn stabilizer_union_over(
    g: &GroupTable,
    branch: &[Elem],
    conjugators: Option<&ElementSet>,
) -> ElementSet {
    let mut union = ElementSet::identity_only();
    for &b in branch {
        let mut powers = Vec::new();
        let mut x = b;
        while x != g.identity() {
            powers.push(x);
            x = g.mul(x, b);
        }
        match conjugators {
            None => {
                for sigma in g.elements() {
                    for &p in &powers {
                        union.insert(g.conj(sigma, p));
                    }
                }
            }
            Some(set) => {
                for sigma in set.iter() {
                    for &p in &powers {
                        union.insert(g.conj(sigma, p));
                    }
                }
            }
        }
    }
    union
}

/// Condition (U): the two stabilizer unions meet only in the identity, so
/// the diagonal action on the product of the two curves is free.
pub fn check_condition_u(g: &GroupTable, v: &GeneratingVector, w: &GeneratingVector) -> bool {
    debug_assert_eq!(v.signature.base_genus(), 0);
    debug_assert_eq!(w.signature.base_genus(), 1);
    stabilizer_union(g, v).intersects_only_identity(&stabilizer_union(g, w))
}

/// Whether `1 -> G° -> G -> Z2 -> 1` is nonsplit: no involution survives
/// outside `G°`, equivalently both groups have the same number of elements
/// of order 2.
pub fn is_nonsplit_extension(g: &GroupTable, gcirc: &ElementSet) -> bool {
    debug_assert_eq!(gcirc.len() * 2, g.order());
    g.elements().all(|e| g.elem_order(e) != 2 || gcirc.contains(e))
}

/// Condition (M1): for every `g ∈ G∖G°` the branch set `{l_1..l_s}` is
/// disjoint from its `g`-conjugate. Branch elements live in `G`-coordinates.
pub fn check_m1(g: &GroupTable, gcirc: &ElementSet, branch: &[Elem]) -> bool {
    let branch_set = ElementSet::from_elems(branch.iter().copied());
    for y in g.elements() {
        if gcirc.contains(y) {
            continue;
        }
        if branch.iter().any(|&l| branch_set.contains(g.conj(y, l))) {
            return false;
        }
    }
    true
}

/// Condition (M2): for every `g ∈ G∖G°`, `g²` avoids every `G°`-conjugate
/// of every `<l_j>`.
pub fn check_m2(g: &GroupTable, gcirc: &ElementSet, branch: &[Elem]) -> bool {
    let forbidden = stabilizer_union_over(g, branch, Some(gcirc));
    for y in g.elements() {
        if gcirc.contains(y) {
            continue;
        }
        if forbidden.contains(g.mul(y, y)) {
            return false;
        }
    }
    true
}

/// The order-2 elements of the subgroup generated by `members`' commutators
/// — `[H,H]_2` for `H` given as an element set.
fn derived_involutions(g: &GroupTable, members: &ElementSet) -> Vec<Elem> {
    let elems: Vec<Elem> = members.to_vec();
    let mut comms = Vec::new();
    for &a in &elems {
        for &b in &elems {
            comms.push(g.comm(a, b));
        }
    }
    let derived = subgroup_closure(g, comms);
    derived.iter().filter(|&e| g.elem_order(e) == 2).collect()
}

/// The cheap (M1)-impossibility test for the `(1|2)` mixed case: if the
/// involutions of `[G,G]` are all central, or someone outside `G°` commutes
/// with every involution of `[G°,G°]`, then `l_1` (always an involution of
/// `[G°,G°]`) has a centralizer sticking out of `G°` and (M1) can never
/// hold. Purely an optimization: drivers must produce identical output with
/// it disabled.
pub fn involution_centralizer_prune(g: &GroupTable, gcirc: &ElementSet) -> bool {
    let full = ElementSet::full(g.order());
    let g_derived_2 = derived_involutions(g, &full);
    let center = g.center();
    if g_derived_2.iter().all(|&e| center.contains(e)) {
        return true;
    }
    let gcirc_derived_2 = derived_involutions(g, gcirc);
    g.elements().any(|y| {
        !gcirc.contains(y) && gcirc_derived_2.iter().all(|&e| g.comm(y, e) == g.identity())
    })
}
