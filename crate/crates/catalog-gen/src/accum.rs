//! Isomorphism-class accumulator. Candidates are bucketed by a cheap
//! invariant hash so the exact backtracking test only runs against the few
//! existing classes sharing the hash; a class is kept the first time it is
//! seen, so arrival order (which is deterministic) fixes the class order.

use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::hash::{Hash, Hasher};

use prodquot_core::group::{are_isomorphic_given, element_invariants, Fingerprint, GroupTable};

pub struct Accumulator {
    classes: Vec<GroupTable>,
    // Element invariants of each class, cached: the sorted copy refutes
    // almost every non-isomorphic bucket neighbour in O(n), and the
    // unsorted copy feeds the backtracking test on the near-certain
    // matches that remain, so nothing is recomputed per candidate.
    invariants: Vec<Vec<u64>>,
    profiles: Vec<Vec<u64>>,
    buckets: HashMap<u64, Vec<usize>>,
}

impl Accumulator {
    pub fn new() -> Self {
        Accumulator {
            classes: Vec::new(),
            invariants: Vec::new(),
            profiles: Vec::new(),
            buckets: HashMap::new(),
        }
    }

    pub fn push(&mut self, g: GroupTable) -> bool {
        let key = refined_key(&g);
        let inv = element_invariants(&g);
        self.push_prepared(g, key, inv)
    }

    /// Adds `g` unless an isomorphic class is already present. Returns
    /// whether a new class was created. `key` must be `refined_key(&g)`
    /// and `inv` its `element_invariants`, precomputed so candidate
    /// preparation can happen outside this (serial) call.
    pub fn push_prepared(&mut self, g: GroupTable, key: u64, inv: Vec<u64>) -> bool {
        let mut profile = inv.clone();
        profile.sort_unstable();
        let bucket = self.buckets.entry(key).or_default();
        for &i in bucket.iter() {
            if self.profiles[i] != profile {
                continue;
            }
            let start = std::time::Instant::now();
            let hit = are_isomorphic_given(&self.classes[i], &self.invariants[i], &g, &inv);
            let secs = start.elapsed().as_secs_f64();
            if secs > 2.0 {
                eprintln!(
                    "slow isomorphism test: order {} vs class {} -> {} ({:.1}s)",
                    g.order(),
                    i,
                    hit,
                    secs
                );
            }
            if hit {
                return false;
            }
        }
        bucket.push(self.classes.len());
        self.classes.push(g);
        self.invariants.push(inv);
        self.profiles.push(profile);
        true
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn finish(self) -> Vec<GroupTable> {
        self.classes
    }
}

/// Invariant hash refining [`Fingerprint`]: also folds in the multiset of
/// per-element `(order, class size, order of the square, class size of the
/// square)` tuples, which separates most non-isomorphic 2-groups the
/// fingerprint alone conflates. Equal keys still do not imply isomorphism.
pub fn refined_key(g: &GroupTable) -> u64 {
    let mut h = DefaultHasher::new();
    Fingerprint::of(g).hash(&mut h);
    let cc = g.conjugacy_classes();
    let class_size: Vec<u32> =
        g.elements().map(|e| cc.classes[cc.class_of[e as usize] as usize].len() as u32).collect();
    let mut rows: Vec<(u16, u32, u16, u32)> = g
        .elements()
        .map(|e| {
            let sq = g.mul(e, e);
            (g.elem_order(e), class_size[e as usize], g.elem_order(sq), class_size[sq as usize])
        })
        .collect();
    rows.sort_unstable();
    rows.hash(&mut h);
    h.finish()
}
