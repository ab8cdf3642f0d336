use super::set::subgroup_closure;
use super::{Elem, ElementSet, GroupTable};

/// Partition of the group into conjugacy classes.
///
/// `class_of[e]` indexes into `classes`; each class lists its elements in
/// ascending order, and classes are sorted by their smallest member, so class
/// 0 is always `{identity}`.
#[derive(Debug, Clone)]
pub struct ConjugacyClasses {
    pub classes: Vec<Vec<Elem>>,
    pub class_of: Vec<u16>,
}

impl ConjugacyClasses {
    pub fn representatives(&self) -> impl Iterator<Item = Elem> + '_ {
        self.classes.iter().map(|c| c[0])
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c.len()).collect()
    }
}

impl GroupTable {
    pub fn conjugacy_class(&self, a: Elem) -> ElementSet {
        let mut s = ElementSet::empty();
        for g in self.elements() {
            s.insert(self.conj(g, a));
        }
        s
    }

    pub fn conjugacy_classes(&self) -> ConjugacyClasses {
        let n = self.order();
        let mut class_of = vec![u16::MAX; n];
        let mut classes = Vec::new();
        for a in self.elements() {
            if class_of[a as usize] != u16::MAX {
                continue;
            }
            let idx = classes.len() as u16;
            let members = self.conjugacy_class(a).to_vec();
            for &m in &members {
                class_of[m as usize] = idx;
            }
            classes.push(members);
        }
        ConjugacyClasses { classes, class_of }
    }

    pub fn centralizer(&self, a: Elem) -> ElementSet {
        let mut s = ElementSet::empty();
        for g in self.elements() {
            if self.mul(g, a) == self.mul(a, g) {
                s.insert(g);
            }
        }
        s
    }

    pub fn centralizer_of_set(&self, set: &ElementSet) -> ElementSet {
        let mut s = ElementSet::empty();
        'outer: for g in self.elements() {
            for a in set.iter() {
                if self.mul(g, a) != self.mul(a, g) {
                    continue 'outer;
                }
            }
            s.insert(g);
        }
        s
    }

    pub fn center(&self) -> ElementSet {
        let mut s = ElementSet::empty();
        'outer: for a in self.elements() {
            for g in self.elements() {
                if self.mul(g, a) != self.mul(a, g) {
                    continue 'outer;
                }
            }
            s.insert(a);
        }
        s
    }

    pub fn is_abelian(&self) -> bool {
        self.elements().all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Subgroup generated by all commutators `[a, b]`.
    pub fn derived_subgroup(&self) -> ElementSet {
        let mut comms = ElementSet::empty();
        for a in self.elements() {
            for b in self.elements() {
                comms.insert(self.comm(a, b));
            }
        }
        subgroup_closure(self, comms.iter())
    }

    /// Subgroup generated by `[h, k]` for `h in hs`, `k in ks`.
    pub fn commutator_subgroup(&self, hs: &ElementSet, ks: &ElementSet) -> ElementSet {
        let mut comms = ElementSet::empty();
        for a in hs.iter() {
            for b in ks.iter() {
                comms.insert(self.comm(a, b));
            }
        }
        subgroup_closure(self, comms.iter())
    }

    /// Derived series `G > G' > G'' > ...` down to its stable term.
    pub fn derived_series(&self) -> Vec<ElementSet> {
        let mut series = vec![ElementSet::full(self.order())];
        loop {
            let last = series.last().unwrap();
            let next = self.commutator_subgroup(last, last);
            if next.len() == last.len() {
                break;
            }
            series.push(next);
        }
        series
    }

    pub fn is_solvable(&self) -> bool {
        self.derived_series().last().unwrap().len() == 1
    }

    pub fn is_normal(&self, h: &ElementSet) -> bool {
        self.elements().all(|g| h.iter().all(|x| h.contains(self.conj(g, x))))
    }

    /// Quotient by a normal subgroup. Returns the quotient table together
    /// with the projection map element -> quotient element.
    ///
    /// Panics if `n` is not a normal subgroup; callers pass verified input.
    pub fn quotient(&self, n: &ElementSet) -> (GroupTable, Vec<Elem>) {
        assert!(n.contains(0) && self.is_normal(n), "quotient needs a normal subgroup");
        let order = self.order();
        let mut coset_of = vec![u16::MAX; order];
        let mut reps: Vec<Elem> = Vec::new();
        // Scanning from 0 puts the identity coset first, so the quotient
        // identity is element 0 as the table type requires.
        for g in self.elements() {
            if coset_of[g as usize] != u16::MAX {
                continue;
            }
            let idx = reps.len() as u16;
            reps.push(g);
            for h in n.iter() {
                coset_of[self.mul(g, h) as usize] = idx;
            }
        }
        let k = reps.len();
        let mut mul = vec![0 as Elem; k * k];
        for (i, &a) in reps.iter().enumerate() {
            for (j, &b) in reps.iter().enumerate() {
                mul[i * k + j] = coset_of[self.mul(a, b) as usize];
            }
        }
        let q = GroupTable::from_mul_table(k, mul).expect("quotient by a normal subgroup");
        (q, coset_of)
    }

    /// Restriction of the group structure to a subgroup's elements. Returns
    /// the subgroup as its own table plus the embedding (subgroup elem ->
    /// parent elem), with subgroup elements in ascending parent order.
    ///
    /// Panics if the set is not closed under multiplication.
    pub fn subgroup_table(&self, h: &ElementSet) -> (GroupTable, Vec<Elem>) {
        let members = h.to_vec();
        let k = members.len();
        let mut index_of = vec![u16::MAX; self.order()];
        for (i, &m) in members.iter().enumerate() {
            index_of[m as usize] = i as u16;
        }
        let mut mul = vec![0 as Elem; k * k];
        for (i, &a) in members.iter().enumerate() {
            for (j, &b) in members.iter().enumerate() {
                let p = index_of[self.mul(a, b) as usize];
                assert_ne!(p, u16::MAX, "set is not closed under multiplication");
                mul[i * k + j] = p;
            }
        }
        let t = GroupTable::from_mul_table(k, mul).expect("subgroup restriction");
        (t, members)
    }

    /// Invariant factors `d_1 | d_2 | ... | d_k` of the abelianization.
    pub fn abelianization_invariants(&self) -> Vec<u32> {
        let derived = self.derived_subgroup();
        let (ab, _) = self.quotient(&derived);
        abelian_invariants(&ab)
    }
}

fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut primes = Vec::new();
    let mut p = 2;
    while n > 1 {
        if n % p == 0 {
            primes.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    primes
}

/// Invariant factor decomposition of an abelian group in divisibility order
/// `d_1 | d_2 | ...`, computed from p-primary element-order statistics -- no
/// generator hunting needed.
pub fn abelian_invariants(g: &GroupTable) -> Vec<u32> {
    assert!(g.is_abelian());
    let n = g.order() as u32;
    if n == 1 {
        return Vec::new();
    }
    let primes = prime_factors(n);
    let primary: Vec<Vec<u32>> = primes.iter().map(|&p| primary_type(g, p)).collect();
    // Align the largest exponents across primes to form invariant factors.
    let rank = primary.iter().map(|t| t.len()).max().unwrap();
    let mut factors = Vec::new();
    for i in 0..rank {
        let mut f = 1u32;
        for (t, &p) in primary.iter().zip(&primes) {
            if i < t.len() {
                f *= p.pow(t[i]);
            }
        }
        factors.push(f);
    }
    factors.reverse();
    factors
}

/// Exponents `e_1 >= e_2 >= ...` of the p-part `prod Z_{p^{e_i}}` of an
/// abelian group, from the counts `c_k = #{x : ord(x) | p^k}`.
fn primary_type(g: &GroupTable, p: u32) -> Vec<u32> {
    // c_k = p^{sum_i min(e_i, k)}, so log_p(c_k) - log_p(c_{k-1}) counts the
    // exponents that are >= k.
    let mut logs = vec![0u32];
    let mut k = 1;
    loop {
        let pk = p.pow(k);
        let c = g
            .elements()
            .filter(|&x| {
                let o = g.elem_order(x) as u32;
                pk % o == 0
            })
            .count() as u32;
        let log = log_base(c, p);
        if log == *logs.last().unwrap() {
            break;
        }
        logs.push(log);
        k += 1;
    }
    let mut out = Vec::new();
    for k in (1..logs.len()).rev() {
        let ge_k = (logs[k] - logs[k - 1]) as usize;
        while out.len() < ge_k {
            out.push(k as u32);
        }
    }
    out
}

fn log_base(mut n: u32, p: u32) -> u32 {
    let mut k = 0;
    while n > 1 {
        debug_assert_eq!(n % p, 0);
        n /= p;
        k += 1;
    }
    k
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{abelian, cyclic, dihedral, subgroup_closure};

    #[test]
    fn center_and_classes_of_dihedral() {
        let d4 = dihedral(4); // order 8
        assert_eq!(d4.center().len(), 2);
        let mut sizes = d4.conjugacy_classes().class_sizes();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 1, 2, 2, 2]);
        let d5 = dihedral(5);
        assert_eq!(d5.center().len(), 1);
        assert_eq!(d5.conjugacy_classes().classes.len(), 4);
    }

    #[test]
    fn centralizer_matches_class_size() {
        let d6 = dihedral(6);
        for a in d6.elements() {
            let class = d6.conjugacy_class(a);
            let cent = d6.centralizer(a);
            assert_eq!(class.len() * cent.len(), d6.order());
        }
    }

    #[test]
    fn derived_series_of_dihedral() {
        let d6 = dihedral(6); // order 12, derived subgroup Z3
        let series = d6.derived_series();
        let sizes: Vec<usize> = series.iter().map(|s| s.len()).collect();
        assert_eq!(sizes, vec![12, 3, 1]);
        assert!(d6.is_solvable());
    }

    #[test]
    fn quotient_of_dihedral_by_rotations() {
        let d4 = dihedral(4);
        let r = d4.elements().find(|&e| d4.elem_order(e) == 4).unwrap();
        let rot = subgroup_closure(&d4, [r]);
        assert_eq!(rot.len(), 4);
        let (q, proj) = d4.quotient(&rot);
        assert_eq!(q.order(), 2);
        assert_eq!(proj.iter().filter(|&&c| c == 0).count(), 4);
    }

    #[test]
    fn subgroup_table_roundtrip() {
        let d6 = dihedral(6);
        let r = d6.elements().find(|&e| d6.elem_order(e) == 6).unwrap();
        let h = subgroup_closure(&d6, [r]);
        let (t, emb) = d6.subgroup_table(&h);
        assert_eq!(t.order(), 6);
        for a in t.elements() {
            for b in t.elements() {
                assert_eq!(emb[t.mul(a, b) as usize], d6.mul(emb[a as usize], emb[b as usize]));
            }
        }
    }

    #[test]
    fn abelian_invariants_recovered() {
        for inv in [vec![2, 4], vec![2, 2, 2], vec![6], vec![2, 6], vec![3, 9], vec![12]] {
            let g = abelian(&inv);
            assert_eq!(abelian_invariants(&g), inv, "type {inv:?}");
        }
        assert_eq!(abelian_invariants(&cyclic(1)), Vec::<u32>::new());
    }

    #[test]
    fn abelianization_of_dihedral() {
        assert_eq!(dihedral(5).abelianization_invariants(), vec![2]);
        assert_eq!(dihedral(4).abelianization_invariants(), vec![2, 2]);
    }
}
