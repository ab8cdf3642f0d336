//! Dense multiplication-table representation of a finite group.
//!
//! Every group handled by this crate is small (order at most a few hundred),
//! so a flat `order x order` table with `u16` element indices is both the
//! simplest and the fastest representation for the element-level scans the
//! classification needs. Element `0` is always the identity.

mod construct;
mod fingerprint;
mod iso;
mod normal;
mod queries;
mod set;

pub use construct::*;
pub use fingerprint::Fingerprint;
pub use iso::{
    are_isomorphic, are_isomorphic_given, automorphism_group, automorphisms_capped, compose_maps,
    element_invariants, for_each_automorphism, generating_set, invert_map, isomorphism,
    reduce_automorphism_generators, reduced_automorphism_generators, Automorphism,
};
pub use normal::{index_two_subgroups, normal_subgroups};
pub use queries::{abelian_invariants, ConjugacyClasses};
pub use set::{subgroup_closure, ElementSet};

use crate::error::GroupError;

/// Element index into a [`GroupTable`].
pub type Elem = u16;

/// Hard ceiling on table sizes. Keeps `order^2` tables and the bitset type
/// comfortably small; the classification never needs groups past order 192.
pub const MAX_ORDER: usize = 1024;

/// A finite group given by its full multiplication table.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupTable {
    order: usize,
    /// Row-major: `mul[a * order + b]` is the product `a * b`.
    mul: Vec<Elem>,
    inv: Vec<Elem>,
    elem_order: Vec<u16>,
    /// A generating set found during construction; not necessarily minimal.
    generators: Vec<Elem>,
}

impl std::fmt::Debug for GroupTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GroupTable")
            .field("order", &self.order)
            .field("generators", &self.generators)
            .finish()
    }
}

impl GroupTable {
    /// Builds a group from a row-major multiplication table, verifying the
    /// group axioms.
    ///
    /// Closure, the identity at index 0, cancellativity and existence of
    /// inverses are checked directly. Associativity is checked with Light's
    /// test: it suffices to verify `x(ay) = (xa)y` for all `x, y` when `a`
    /// ranges over a generating set, which keeps verification at
    /// `O(|gens| * order^2)` instead of `O(order^3)`.
    pub fn from_mul_table(order: usize, mul: Vec<Elem>) -> Result<Self, GroupError> {
        if order == 0 {
            return Err(GroupError::Empty);
        }
        if order > MAX_ORDER {
            return Err(GroupError::OrderTooLarge(order));
        }
        if mul.len() != order * order {
            return Err(GroupError::BadTableSize { order, got: mul.len() });
        }
        for (i, &v) in mul.iter().enumerate() {
            if (v as usize) >= order {
                return Err(GroupError::EntryOutOfRange {
                    row: i / order,
                    col: i % order,
                    value: v as usize,
                    order,
                });
            }
        }
        for a in 0..order {
            if mul[a] as usize != a || mul[a * order] as usize != a {
                return Err(GroupError::BadIdentity { elem: a });
            }
        }
        // Latin-square property: every row and column is a permutation.
        let mut seen_row = vec![false; order];
        let mut seen_col = vec![false; order];
        for a in 0..order {
            seen_row.iter_mut().for_each(|s| *s = false);
            seen_col.iter_mut().for_each(|s| *s = false);
            for b in 0..order {
                let r = mul[a * order + b] as usize;
                let c = mul[b * order + a] as usize;
                if seen_row[r] || seen_col[c] {
                    return Err(GroupError::NotCancellative { elem: a });
                }
                seen_row[r] = true;
                seen_col[c] = true;
            }
        }

        let generators = generating_set_from_table(order, &mul);
        for &a in &generators {
            let a = a as usize;
            for x in 0..order {
                let xa = mul[x * order + a] as usize;
                for y in 0..order {
                    let ay = mul[a * order + y] as usize;
                    if mul[x * order + ay] != mul[xa * order + y] {
                        return Err(GroupError::NotAssociative { a: x, b: a, c: y });
                    }
                }
            }
        }

        let mut inv = vec![0 as Elem; order];
        for a in 0..order {
            match (0..order).find(|&b| mul[a * order + b] == 0 && mul[b * order + a] == 0) {
                Some(b) => inv[a] = b as Elem,
                None => return Err(GroupError::NoInverse { elem: a }),
            }
        }

        let mut elem_order = vec![0u16; order];
        for a in 0..order {
            let mut k = 1u16;
            let mut x = a;
            while x != 0 {
                x = mul[x * order + a] as usize;
                k += 1;
            }
            elem_order[a] = k;
        }

        Ok(GroupTable { order, mul, inv, elem_order, generators })
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn identity(&self) -> Elem {
        0
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inv[a as usize]
    }

    /// Multiplicative order of `a`.
    #[inline]
    pub fn elem_order(&self, a: Elem) -> u16 {
        self.elem_order[a as usize]
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order as Elem
    }

    /// `a^k` for any integer exponent.
    pub fn pow(&self, a: Elem, k: i64) -> Elem {
        let n = self.elem_order(a) as i64;
        let mut k = k.rem_euclid(n);
        let mut acc = 0 as Elem;
        let mut base = a;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// `g a g^-1`.
    #[inline]
    pub fn conj(&self, g: Elem, a: Elem) -> Elem {
        self.mul(self.mul(g, a), self.inv(g))
    }

    /// `[a, b] = a b a^-1 b^-1`.
    #[inline]
    pub fn comm(&self, a: Elem, b: Elem) -> Elem {
        self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))
    }

    pub fn count_elements_of_order(&self, k: u16) -> usize {
        self.elem_order.iter().filter(|&&o| o == k).count()
    }

    /// Distinct element orders, sorted ascending.
    pub fn order_spectrum(&self) -> Vec<u16> {
        let mut v: Vec<u16> = self.elem_order.clone();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Generating set recorded at construction time.
    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    /// Product of a slice of elements, left to right; empty product is the
    /// identity.
    pub fn product(&self, elems: &[Elem]) -> Elem {
        elems.iter().fold(0, |acc, &e| self.mul(acc, e))
    }

    /// Full `O(order^3)` associativity check. The constructor already proves
    /// associativity via Light's test; this exists so tests can cross-check
    /// the shortcut on small tables.
    pub fn verify_associativity_exhaustive(&self) -> Result<(), GroupError> {
        let n = self.order;
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul[a * n + b] as usize;
                for c in 0..n {
                    let bc = self.mul[b * n + c] as usize;
                    if self.mul[ab * n + c] != self.mul[a * n + bc] {
                        return Err(GroupError::NotAssociative { a, b, c });
                    }
                }
            }
        }
        Ok(())
    }
}

/// Greedy generating set for a raw table: repeatedly add the smallest element
/// outside the current closure. Closure here is plain product-closure, which
/// does not presuppose associativity, so the result is safe to feed Light's
/// test.
fn generating_set_from_table(order: usize, mul: &[Elem]) -> Vec<Elem> {
    let mut gens = Vec::new();
    let mut in_closure = vec![false; order];
    in_closure[0] = true;
    let mut closure: Vec<usize> = vec![0];
    let mut next = 1;
    while closure.len() < order {
        while next < order && in_closure[next] {
            next += 1;
        }
        if next >= order {
            break;
        }
        gens.push(next as Elem);
        in_closure[next] = true;
        closure.push(next);
        // Re-close under products until stable.
        loop {
            let mut added = false;
            let snapshot = closure.clone();
            for &a in &snapshot {
                for &b in &snapshot {
                    let p = mul[a * order + b] as usize;
                    if !in_closure[p] {
                        in_closure[p] = true;
                        closure.push(p);
                        added = true;
                    }
                }
            }
            if !added {
                break;
            }
        }
    }
    gens
}
