//! Moduli-component counting via move orbits on generating vectors.
//!
//! Two surfaces land in the same component of the moduli space exactly
//! when their defining vectors are related by braid moves on the
//! genus-zero side, mapping-class moves on the genus-one side, and a
//! simultaneous automorphism of the group. Orbits are counted by BFS
//! over the finite state space; every move is a bijection on a finite
//! set, so forward edges alone already close each orbit.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use crate::group::{
    automorphism_group, reduced_automorphism_generators, Automorphism, Elem, ElementSet,
    GroupTable,
};
use crate::signature::BranchSignature;
use crate::vectors::{
    check_m1, check_m2, find_generating_vectors, stabilizer_union, SearchMode,
};

pub const DEFAULT_STATE_CAP: usize = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrbitError {
    /// BFS touched more states than the cap allows.
    StateCapExceeded { cap: usize },
    /// No vector (or vector pair) satisfies the freeness conditions, so
    /// there is no moduli point to count.
    EmptyCandidateSet,
}

impl fmt::Display for OrbitError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrbitError::StateCapExceeded { cap } => {
                write!(f, "orbit search exceeded the state cap of {cap}")
            }
            OrbitError::EmptyCandidateSet => {
                write!(f, "no admissible vectors to count orbits of")
            }
        }
    }
}

impl std::error::Error for OrbitError {}

/// Braid move on a genus-zero branch tuple: slot `i` takes the old value
/// of slot `i+1`, slot `i+1` takes the old `i` conjugated by it. The
/// two-slot product is unchanged, hence so is the long relation.
pub fn apply_sigma(g: &GroupTable, i: usize, branch: &mut [Elem]) {
    let a = branch[i];
    let b = branch[i + 1];
    branch[i] = b;
    branch[i + 1] = g.mul(g.mul(g.inv(b), a), b);
    debug_assert_eq!(g.mul(branch[i], branch[i + 1]), g.mul(a, b));
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Genus1Move {
    TAlpha,
    TBeta,
    TGamma,
    Rho,
}

/// Moves generating the mapping-class action on a genus-one vector,
/// laid out as `[l_1, .., l_s, h_1, h_2]` with `s = w.len() - 2`.
/// `TGamma` and `Rho` exist only for `s = 2`. Every new slot value is
/// computed from the old ones.
pub fn apply_genus1_move(g: &GroupTable, mv: Genus1Move, w: &mut [Elem]) {
    let s = w.len() - 2;
    let (h1, h2) = (w[s], w[s + 1]);
    match mv {
        Genus1Move::TAlpha => {
            w[s + 1] = g.mul(h2, h1);
        }
        Genus1Move::TBeta => {
            w[s] = g.mul(h1, g.inv(h2));
        }
        Genus1Move::TGamma => {
            assert_eq!(s, 2, "t_gamma needs two branch points");
            let (l1, l2) = (w[0], w[1]);
            let c = g.product(&[h1, g.inv(h2), g.inv(h1)]);
            w[1] = g.product(&[c, l2, g.inv(c)]);
            w[2] = g.product(&[g.inv(h2), l1, h1]);
        }
        Genus1Move::Rho => {
            assert_eq!(s, 2, "rho needs two branch points");
            let (l1, l2) = (w[0], w[1]);
            w[0] = g.product(&[g.inv(h2), g.inv(h1), l2, h1, h2]);
            w[1] = g.product(&[g.inv(h1), g.inv(h2), l1, h2, h1]);
            w[2] = g.inv(h1);
            w[3] = g.inv(h2);
        }
    }
}

/// The moves available for a genus-one vector with `s` branch points.
pub fn genus1_moves(s: usize) -> &'static [Genus1Move] {
    match s {
        2 => &[Genus1Move::TAlpha, Genus1Move::TBeta, Genus1Move::TGamma, Genus1Move::Rho],
        _ => &[Genus1Move::TAlpha, Genus1Move::TBeta],
    }
}

/// `l_1 .. l_s [h_1, h_2]` for a genus-one slot layout.
fn genus1_relation(g: &GroupTable, w: &[Elem]) -> Elem {
    let s = w.len() - 2;
    let mut acc = g.identity();
    for &l in &w[..s] {
        acc = g.mul(acc, l);
    }
    g.mul(acc, g.comm(w[s], w[s + 1]))
}

fn pack(slots: &[Elem]) -> u128 {
    debug_assert!(slots.len() <= 16);
    let mut x = 0u128;
    for (k, &e) in slots.iter().enumerate() {
        debug_assert!(e < 256);
        x |= (e as u128) << (8 * k);
    }
    x
}

fn unpack(x: u128, n: usize, out: &mut Vec<Elem>) {
    out.clear();
    for k in 0..n {
        out.push(((x >> (8 * k)) & 0xff) as Elem);
    }
}

struct Bfs {
    visited: HashSet<u128>,
    queue: VecDeque<u128>,
    cap: usize,
}

impl Bfs {
    fn new(cap: usize) -> Self {
        Bfs { visited: HashSet::new(), queue: VecDeque::new(), cap }
    }

    /// Returns false if the seed was already covered by an earlier orbit.
    fn start(&mut self, seed: u128) -> bool {
        if !self.visited.insert(seed) {
            return false;
        }
        self.queue.push_back(seed);
        true
    }

    fn push(&mut self, state: u128) -> Result<(), OrbitError> {
        if self.visited.insert(state) {
            if self.visited.len() > self.cap {
                return Err(OrbitError::StateCapExceeded { cap: self.cap });
            }
            self.queue.push_back(state);
        }
        Ok(())
    }
}

/// Components of the unmixed moduli stratum for `(G, m, n)`: orbits of
/// vector pairs under braid moves, genus-one moves, and simultaneous
/// automorphisms. `auts` must generate the automorphism group; the count
/// does not depend on the choice of generating set.
pub fn count_components_unmixed(
    g: &GroupTable,
    m: &BranchSignature,
    n: &BranchSignature,
    auts: &[Automorphism],
    cap: usize,
) -> Result<u32, OrbitError> {
    assert!(g.order() <= 256, "orbit states pack one byte per element");
    let vs = find_generating_vectors(g, m, SearchMode::All);
    let ws = find_generating_vectors(g, n, SearchMode::All);
    let v_unions: Vec<ElementSet> = vs.iter().map(|v| stabilizer_union(g, v)).collect();
    let w_unions: Vec<ElementSet> = ws.iter().map(|w| stabilizer_union(g, w)).collect();

    let r = m.num_periods();
    let s = n.num_periods();
    let width = r + s + 2;
    assert!(width <= 16, "state exceeds the packed width");

    let mut seeds: Vec<u128> = Vec::new();
    let mut slots: Vec<Elem> = Vec::with_capacity(width);
    for (vi, v) in vs.iter().enumerate() {
        for (wi, w) in ws.iter().enumerate() {
            if v_unions[vi].intersects_only_identity(&w_unions[wi]) {
                slots.clear();
                slots.extend_from_slice(&v.branch);
                slots.extend_from_slice(&w.branch);
                slots.extend_from_slice(&w.handles);
                seeds.push(pack(&slots));
            }
        }
    }
    if seeds.is_empty() {
        return Err(OrbitError::EmptyCandidateSet);
    }

    let mut bfs = Bfs::new(cap);
    let mut components = 0u32;
    let mut cur: Vec<Elem> = Vec::with_capacity(width);
    let mut next: Vec<Elem> = Vec::with_capacity(width);
    for &seed in &seeds {
        if !bfs.start(seed) {
            continue;
        }
        components += 1;
        while let Some(state) = bfs.queue.pop_front() {
            unpack(state, width, &mut cur);
            for i in 0..r.saturating_sub(1) {
                next.clone_from(&cur);
                apply_sigma(g, i, &mut next[..r]);
                assert_eq!(g.product(&next[..r]), g.identity());
                bfs.push(pack(&next))?;
            }
            for &mv in genus1_moves(s) {
                next.clone_from(&cur);
                apply_genus1_move(g, mv, &mut next[r..]);
                assert_eq!(genus1_relation(g, &next[r..]), g.identity());
                bfs.push(pack(&next))?;
            }
            for phi in auts {
                next.clear();
                next.extend(cur.iter().map(|&e| phi[e as usize]));
                bfs.push(pack(&next))?;
            }
        }
    }
    Ok(components)
}

/// Convenience wrapper using a reduced generating set of `Aut(G)`.
pub fn count_components_unmixed_default(
    g: &GroupTable,
    m: &BranchSignature,
    n: &BranchSignature,
) -> Result<u32, OrbitError> {
    let auts = reduced_automorphism_generators(g);
    count_components_unmixed(g, m, n, &auts, DEFAULT_STATE_CAP)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MixedOrbitReport {
    pub components: u32,
    /// True when letting automorphisms move the index-two subgroup
    /// changes the count; the reported `components` fixes the subgroup.
    pub aut_choice_sensitive: bool,
}

/// Vectors of the index-two subgroup satisfying the mixed freeness
/// conditions, in ambient coordinates.
fn mixed_candidates(
    g: &GroupTable,
    gcirc: &ElementSet,
    n: &BranchSignature,
) -> Vec<Vec<Elem>> {
    let (st, embed) = g.subgroup_table(gcirc);
    let mut out = Vec::new();
    for v in find_generating_vectors(&st, n, SearchMode::All) {
        let branch: Vec<Elem> = v.branch.iter().map(|&e| embed[e as usize]).collect();
        if check_m1(g, gcirc, &branch) && check_m2(g, gcirc, &branch) {
            let mut slots = branch;
            slots.extend(v.handles.iter().map(|&e| embed[e as usize]));
            out.push(slots);
        }
    }
    out
}

fn mixed_orbit_count(
    g: &GroupTable,
    seeds: &[u128],
    extra_seeds: &[u128],
    auts: &[Automorphism],
    s: usize,
    cap: usize,
) -> Result<u32, OrbitError> {
    let width = s + 2;
    let mut bfs = Bfs::new(cap);
    // Counted seeds run first, so any orbit meeting them is charged to
    // them; orbits reachable only from the extra states cost nothing.
    let mut components = 0u32;
    let mut cur: Vec<Elem> = Vec::with_capacity(width);
    let mut next: Vec<Elem> = Vec::with_capacity(width);
    for &seed in seeds.iter().chain(extra_seeds) {
        if !bfs.start(seed) {
            continue;
        }
        if seeds.contains(&seed) {
            components += 1;
        }
        while let Some(state) = bfs.queue.pop_front() {
            unpack(state, width, &mut cur);
            for &mv in genus1_moves(s) {
                next.clone_from(&cur);
                apply_genus1_move(g, mv, &mut next);
                assert_eq!(genus1_relation(g, &next), g.identity());
                bfs.push(pack(&next))?;
            }
            for phi in auts {
                next.clear();
                next.extend(cur.iter().map(|&e| phi[e as usize]));
                bfs.push(pack(&next))?;
            }
        }
    }
    Ok(components)
}

/// Components of the mixed moduli stratum for `(G, G°, n)`. The count
/// uses automorphisms preserving `G°`; the report also says whether
/// letting all of `Aut(G)` act (merging strata of different index-two
/// subgroups) would have merged any orbits.
pub fn count_components_mixed(
    g: &GroupTable,
    gcirc: &ElementSet,
    n: &BranchSignature,
    cap: usize,
) -> Result<MixedOrbitReport, OrbitError> {
    assert!(g.order() <= 256, "orbit states pack one byte per element");
    let s = n.num_periods();
    assert!(s + 2 <= 16, "state exceeds the packed width");

    let candidates = mixed_candidates(g, gcirc, n);
    if candidates.is_empty() {
        return Err(OrbitError::EmptyCandidateSet);
    }
    let seeds: Vec<u128> = candidates.iter().map(|c| pack(c)).collect();

    let all_auts = automorphism_group(g);
    let preserving: Vec<Automorphism> = all_auts
        .iter()
        .filter(|phi| gcirc.iter().all(|e| gcirc.contains(phi[e as usize])))
        .cloned()
        .collect();

    let fixed = mixed_orbit_count(g, &seeds, &[], &preserving, s, cap)?;

    // Union semantics: same moves, but all automorphisms, over the
    // candidate sets of every index-two subgroup the vectors can reach.
    let mut extra: Vec<u128> = Vec::new();
    for other in crate::group::index_two_subgroups(g) {
        if other == *gcirc {
            continue;
        }
        extra.extend(mixed_candidates(g, &other, n).iter().map(|c| pack(c)));
    }
    let union = mixed_orbit_count(g, &seeds, &extra, &all_auts, s, cap)?;

    Ok(MixedOrbitReport { components: fixed, aut_choice_sensitive: union != fixed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{
        abelian, dihedral, metacyclic, semidirect_product, subgroup_closure, symmetric,
    };
    use crate::signature::BranchSignature;
    use crate::vectors::GeneratingVector;

    fn sig0(periods: &[u32]) -> BranchSignature {
        BranchSignature::genus0(periods.to_vec()).unwrap()
    }

    fn sig1(periods: &[u32]) -> BranchSignature {
        BranchSignature::genus1(periods.to_vec()).unwrap()
    }

    #[test]
    fn sigma_moves_satisfy_the_braid_relations() {
        let g = symmetric(4);
        let sig = sig0(&[2, 3, 3, 4]);
        for v in find_generating_vectors(&g, &sig, SearchMode::All).iter().take(50) {
            let b = v.branch.clone();
            // adjacent: s_i s_{i+1} s_i = s_{i+1} s_i s_{i+1}
            let mut x = b.clone();
            apply_sigma(&g, 0, &mut x);
            apply_sigma(&g, 1, &mut x);
            apply_sigma(&g, 0, &mut x);
            let mut y = b.clone();
            apply_sigma(&g, 1, &mut y);
            apply_sigma(&g, 0, &mut y);
            apply_sigma(&g, 1, &mut y);
            assert_eq!(x, y);
            // distant: s_0 s_2 = s_2 s_0
            let mut x = b.clone();
            apply_sigma(&g, 0, &mut x);
            apply_sigma(&g, 2, &mut x);
            let mut y = b.clone();
            apply_sigma(&g, 2, &mut y);
            apply_sigma(&g, 0, &mut y);
            assert_eq!(x, y);
        }
    }

    #[test]
    fn genus1_moves_preserve_the_long_relation_and_generation() {
        let g = symmetric(3);
        let sig = sig1(&[2, 2]);
        for v in find_generating_vectors(&g, &sig, SearchMode::All) {
            let mut w: Vec<Elem> = v.branch.clone();
            w.extend_from_slice(&v.handles);
            for &mv in genus1_moves(2) {
                let mut x = w.clone();
                apply_genus1_move(&g, mv, &mut x);
                assert_eq!(genus1_relation(&g, &x), g.identity());
                let gen = subgroup_closure(&g, x.iter().copied());
                assert_eq!(gen.len(), g.order(), "moves preserve generation");
                let rebuilt = GeneratingVector::new(
                    &g,
                    sig.clone(),
                    x[..2].to_vec(),
                    x[2..].to_vec(),
                );
                assert!(rebuilt.is_ok(), "moved tuple is again a generating vector");
            }
        }
    }

    #[test]
    fn dihedral_two_two_four_four_stratum_is_connected() {
        // D4 with m = (2,2,4,4), n = (2,2): a single component.
        let g = dihedral(4);
        let n = count_components_unmixed_default(&g, &sig0(&[2, 2, 4, 4]), &sig1(&[2, 2]))
            .unwrap();
        assert_eq!(n, 1);
    }

    #[test]
    fn z2_z4_stratum_splits_in_two() {
        let g = abelian(&[2, 4]);
        let n = count_components_unmixed_default(&g, &sig0(&[2, 2, 4, 4]), &sig1(&[2, 2]))
            .unwrap();
        assert_eq!(n, 2);
    }

    #[test]
    fn orbit_count_is_independent_of_the_automorphism_generating_set() {
        let g = abelian(&[2, 4]);
        let m = sig0(&[2, 2, 4, 4]);
        let n = sig1(&[2, 2]);
        let reduced = reduced_automorphism_generators(&g);
        let full = automorphism_group(&g);
        let a = count_components_unmixed(&g, &m, &n, &reduced, DEFAULT_STATE_CAP).unwrap();
        let b = count_components_unmixed(&g, &m, &n, &full, DEFAULT_STATE_CAP).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn order_sixteen_mixed_strata_are_connected() {
        // The three order-16 groups admitting a mixed action with
        // n = (2,2). In each one exactly one index-two subgroup carries
        // admissible vectors, the moves alone leave finitely many
        // orbits, and the subgroup-preserving automorphisms merge them
        // into a single component.
        let groups = vec![
            metacyclic(2, 8, 3).unwrap(),
            metacyclic(2, 8, 5).unwrap(),
            {
                // x of order 4 acting on <y, z> = Z2 x Z2 by y -> yz, z -> z.
                let twist: Vec<Elem> = vec![0, 1, 3, 2];
                let ident: Vec<Elem> = vec![0, 1, 2, 3];
                semidirect_product(
                    &abelian(&[4]),
                    &abelian(&[2, 2]),
                    &[ident.clone(), twist.clone(), ident, twist],
                )
                .unwrap()
            },
        ];
        let n = sig1(&[2, 2]);
        for g in &groups {
            let mut admissible = 0;
            for sub in crate::group::index_two_subgroups(g) {
                if mixed_candidates(g, &sub, &n).is_empty() {
                    let err = count_components_mixed(g, &sub, &n, DEFAULT_STATE_CAP)
                        .unwrap_err();
                    assert_eq!(err, OrbitError::EmptyCandidateSet);
                    continue;
                }
                admissible += 1;
                let report = count_components_mixed(g, &sub, &n, DEFAULT_STATE_CAP).unwrap();
                assert_eq!(report.components, 1);
                assert!(!report.aut_choice_sensitive);
            }
            assert_eq!(admissible, 1, "exactly one subgroup carries vectors");
        }
    }

    #[test]
    fn automorphisms_merge_the_two_move_orbits_of_the_modular_group() {
        // In <x, y | x^2 = y^8 = 1, x y x^-1 = y^5> with index-two
        // subgroup <x, y^2>, the branch entries of an admissible vector
        // are forced to a common involution t with t in {x, x y^4}, and
        // no move changes it: the moves alone leave two orbits. The
        // automorphism fixing y and sending x to x y^4 joins them.
        let g = metacyclic(2, 8, 5).unwrap();
        let n = sig1(&[2, 2]);
        let sub = crate::group::index_two_subgroups(&g)
            .into_iter()
            .find(|s| !mixed_candidates(&g, s, &n).is_empty())
            .unwrap();
        let seeds: Vec<u128> =
            mixed_candidates(&g, &sub, &n).iter().map(|c| pack(c)).collect();
        let bare = mixed_orbit_count(&g, &seeds, &[], &[], 2, DEFAULT_STATE_CAP).unwrap();
        assert_eq!(bare, 2);
        let report = count_components_mixed(&g, &sub, &n, DEFAULT_STATE_CAP).unwrap();
        assert_eq!(report.components, 1);
    }

    #[test]
    fn state_cap_is_enforced() {
        let g = dihedral(4);
        let err = count_components_unmixed(
            &g,
            &sig0(&[2, 2, 4, 4]),
            &sig1(&[2, 2]),
            &reduced_automorphism_generators(&g),
            10,
        )
        .unwrap_err();
        assert_eq!(err, OrbitError::StateCapExceeded { cap: 10 });
    }

    #[test]
    fn empty_stratum_is_an_error() {
        // Z8 is cyclic: no (2,2,4,4)-vector generates it.
        let g = abelian(&[8]);
        let err = count_components_unmixed_default(&g, &sig0(&[2, 2, 4, 4]), &sig1(&[2, 2]))
            .unwrap_err();
        assert_eq!(err, OrbitError::EmptyCandidateSet);
    }
}
