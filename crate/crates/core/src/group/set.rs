use super::{Elem, GroupTable, MAX_ORDER};

const WORDS: usize = MAX_ORDER / 64;

/// Subset of a group's elements as a fixed-width bitset.
///
/// Sized for [`MAX_ORDER`]; all set operations are word-parallel, which is
/// what makes the stabilizer-union intersection tests in the freeness checks
/// cheap enough to run inside the innermost search loops.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct ElementSet {
    bits: [u64; WORDS],
}

impl Default for ElementSet {
    fn default() -> Self {
        Self::empty()
    }
}

impl ElementSet {
    pub fn empty() -> Self {
        ElementSet { bits: [0; WORDS] }
    }

    /// The singleton `{identity}`.
    pub fn identity_only() -> Self {
        let mut s = Self::empty();
        s.insert(0);
        s
    }

    pub fn full(order: usize) -> Self {
        let mut s = Self::empty();
        for e in 0..order {
            s.insert(e as Elem);
        }
        s
    }

    pub fn from_elems(elems: impl IntoIterator<Item = Elem>) -> Self {
        let mut s = Self::empty();
        for e in elems {
            s.insert(e);
        }
        s
    }

    #[inline]
    pub fn insert(&mut self, e: Elem) {
        self.bits[e as usize / 64] |= 1u64 << (e as usize % 64);
    }

    #[inline]
    pub fn remove(&mut self, e: Elem) {
        self.bits[e as usize / 64] &= !(1u64 << (e as usize % 64));
    }

    #[inline]
    pub fn contains(&self, e: Elem) -> bool {
        self.bits[e as usize / 64] >> (e as usize % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut out = *self;
        for i in 0..WORDS {
            out.bits[i] |= other.bits[i];
        }
        out
    }

    pub fn union_with(&mut self, other: &Self) {
        for i in 0..WORDS {
            self.bits[i] |= other.bits[i];
        }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let mut out = *self;
        for i in 0..WORDS {
            out.bits[i] &= other.bits[i];
        }
        out
    }

    /// True when the intersection contains nothing but (at most) the identity.
    pub fn intersects_only_identity(&self, other: &Self) -> bool {
        if self.bits[0] & other.bits[0] & !1 != 0 {
            return false;
        }
        self.bits[1..]
            .iter()
            .zip(other.bits[1..].iter())
            .all(|(a, b)| a & b == 0)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.bits.iter().zip(other.bits.iter()).all(|(a, b)| a & b == 0)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.bits.iter().zip(other.bits.iter()).all(|(a, b)| a & !b == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = Elem> + '_ {
        self.bits.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some((i * 64 + b) as Elem)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<Elem> {
        self.iter().collect()
    }
}

impl std::fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Closure of `seed` under multiplication: the subgroup it generates.
pub fn subgroup_closure(g: &GroupTable, seed: impl IntoIterator<Item = Elem>) -> ElementSet {
    let mut set = ElementSet::identity_only();
    let mut frontier: Vec<Elem> = Vec::new();
    let mut members: Vec<Elem> = vec![0];
    for e in seed {
        if !set.contains(e) {
            set.insert(e);
            members.push(e);
            frontier.push(e);
        }
    }
    while let Some(x) = frontier.pop() {
        // Right- and left-multiply existing members by the new element.
        let snapshot_len = members.len();
        for i in 0..snapshot_len {
            let m = members[i];
            for p in [g.mul(m, x), g.mul(x, m)] {
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
