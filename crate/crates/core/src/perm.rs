//! Permutations on `0..degree` and the closure of a generating set into a
//! [`GroupTable`].
//!
//! Products compose left to right: `mul_perm(a, b)` means "apply `a`, then
//! `b`". This matches the convention used for the catalog's permutation
//! generators and makes `perm_of_element` a homomorphism rather than an
//! anti-homomorphism.

use std::collections::HashMap;

use crate::error::PermError;
use crate::group::{Elem, GroupTable, MAX_ORDER};

pub type Perm = Vec<u16>;

pub fn identity_perm(degree: usize) -> Perm {
    (0..degree as u16).collect()
}

/// `a` then `b`.
pub fn mul_perm(a: &[u16], b: &[u16]) -> Perm {
    a.iter().map(|&x| b[x as usize]).collect()
}

pub fn inv_perm(a: &[u16]) -> Perm {
    let mut out = vec![0u16; a.len()];
    for (i, &x) in a.iter().enumerate() {
        out[x as usize] = i as u16;
    }
    out
}

pub fn is_permutation(a: &[u16], degree: usize) -> bool {
    if a.len() != degree {
        return false;
    }
    let mut seen = vec![false; degree];
    for &x in a {
        if (x as usize) >= degree || seen[x as usize] {
            return false;
        }
        seen[x as usize] = true;
    }
    true
}

pub fn perm_order(a: &[u16]) -> u64 {
    let mut seen = vec![false; a.len()];
    let mut order: u64 = 1;
    for start in 0..a.len() {
        if seen[start] {
            continue;
        }
        let mut len: u64 = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = a[x] as usize;
            len += 1;
        }
        order = num_integer::lcm(order, len);
    }
    order
}

/// A generating set of permutations of common degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermGenSet {
    pub degree: usize,
    pub gens: Vec<Perm>,
}

impl PermGenSet {
    /// An empty generator list is allowed and generates the trivial group.
    pub fn new(degree: usize, gens: Vec<Perm>) -> Result<Self, PermError> {
        if degree == 0 {
            return Err(PermError::BadLength { degree: 0, got: 0 });
        }
        for g in &gens {
            if g.len() != degree {
                return Err(PermError::BadLength { degree, got: g.len() });
            }
            if !is_permutation(g, degree) {
                return Err(PermError::NotBijective { degree });
            }
        }
        Ok(PermGenSet { degree, gens })
    }
}

/// The group generated by a set of permutations, as a multiplication table,
/// together with the permutation realizing each element. Element 0 is the
/// identity; generators appear among the elements in discovery order.
pub fn group_from_permutations(
    gens: &PermGenSet,
) -> Result<(GroupTable, Vec<Perm>), PermError> {
    let mut elems: Vec<Perm> = vec![identity_perm(gens.degree)];
    let mut index: HashMap<Perm, u16> = HashMap::new();
    index.insert(elems[0].clone(), 0);
    let mut qi = 0;
    while qi < elems.len() {
        let cur = elems[qi].clone();
        qi += 1;
        for g in &gens.gens {
            let next = mul_perm(&cur, g);
            if !index.contains_key(&next) {
                if elems.len() >= MAX_ORDER {
                    return Err(PermError::TooLarge(MAX_ORDER));
                }
                index.insert(next.clone(), elems.len() as u16);
                elems.push(next);
            }
        }
    }
    let n = elems.len();
    let mut mul = vec![0 as Elem; n * n];
    for i in 0..n {
        for j in 0..n {
            let p = mul_perm(&elems[i], &elems[j]);
            mul[i * n + j] = index[&p];
        }
    }
    let table = GroupTable::from_mul_table(n, mul)?;
    Ok((table, elems))
}

/// Cycle notation, fixed points omitted; the identity prints as `()`.
pub fn cycle_string(a: &[u16]) -> String {
    let mut seen = vec![false; a.len()];
    let mut out = String::new();
    for start in 0..a.len() {
        if seen[start] || a[start] as usize == start {
            seen[start] = true;
            continue;
        }
        out.push('(');
        let mut x = start;
        let mut first = true;
        while !seen[x] {
            seen[x] = true;
            if !first {
                out.push(',');
            }
            first = false;
            out.push_str(&(x + 1).to_string());
            x = a[x] as usize;
        }
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}
