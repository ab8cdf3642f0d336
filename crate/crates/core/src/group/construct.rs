//! Direct constructions of the families of groups the classification keeps
//! meeting by name.

use super::{Elem, GroupTable};
use crate::error::GroupError;
use crate::perm::{group_from_permutations, PermGenSet};

fn table_from_fn(order: usize, f: impl Fn(usize, usize) -> usize) -> GroupTable {
    let mut mul = vec![0 as Elem; order * order];
    for a in 0..order {
        for b in 0..order {
            mul[a * order + b] = f(a, b) as Elem;
        }
    }
    GroupTable::from_mul_table(order, mul).expect("constructed table must satisfy group axioms")
}

/// Z_n.
pub fn cyclic(n: usize) -> GroupTable {
    assert!(n >= 1);
    table_from_fn(n, |a, b| (a + b) % n)
}

/// Direct product of cyclic groups of the given orders. `abelian(&[2, 4])`
/// is Z2 x Z4; an empty list gives the trivial group.
pub fn abelian(invariants: &[u32]) -> GroupTable {
    let mut g = cyclic(1);
    for &d in invariants {
        g = direct_product(&g, &cyclic(d as usize));
    }
    g
}

/// Dihedral group of order `2n`, the symmetries of the regular n-gon.
pub fn dihedral(n: usize) -> GroupTable {
    assert!(n >= 1);
    // Elements 0..n are rotations, n..2n reflections r^i * s.
    table_from_fn(2 * n, |a, b| {
        let (i, ra) = (a % n, a >= n);
        let (j, rb) = (b % n, b >= n);
        match (ra, rb) {
            (false, false) => (i + j) % n,
            (false, true) => n + (i + j) % n,
            // s r^j = r^{-j} s
            (true, false) => n + (i + n - j) % n,
            (true, true) => (i + n - j) % n,
        }
    })
}

/// Dicyclic group of order `4n`: `< a, x | a^{2n} = 1, x^2 = a^n,
/// x a x^-1 = a^-1 >`. `dicyclic(2)` is the quaternion group Q8.
pub fn dicyclic(n: usize) -> GroupTable {
    assert!(n >= 1);
    let m = 2 * n;
    // Elements 0..2n are a^i, 2n..4n are a^i x.
    table_from_fn(4 * n, |a, b| {
        let (i, xa) = (a % m, a >= m);
        let (j, xb) = (b % m, b >= m);
        match (xa, xb) {
            (false, false) => (i + j) % m,
            (false, true) => m + (i + j) % m,
            // (a^i x)(a^j) = a^{i-j} x
            (true, false) => m + (i + m - j) % m,
            // (a^i x)(a^j x) = a^{i-j} x^2 = a^{i-j+n}
            (true, true) => (i + m - j + n) % m,
        }
    })
}

/// Split metacyclic group `< x, y | x^m = y^n = 1, x y x^-1 = y^r >` of
/// order `m * n`. Requires `r^m = 1 (mod n)` so the presentation is
/// consistent. `metacyclic(2, n, n - 1)` is dihedral of order 2n.
pub fn metacyclic(m: usize, n: usize, r: usize) -> Result<GroupTable, GroupError> {
    if m < 1 || n < 1 {
        return Err(GroupError::InvalidParameters(
            "metacyclic orders must be positive".into(),
        ));
    }
    if mod_pow(r, m, n) != 1 % n {
        return Err(GroupError::InvalidParameters(format!(
            "metacyclic needs {r}^{m} = 1 (mod {n})"
        )));
    }
    // Element i*n + j stands for x^i y^j; x^i y^j x^k y^l = x^{i+k} y^{j r^k + l}.
    Ok(table_from_fn(m * n, |a, b| {
        let (i, j) = (a / n, a % n);
        let (k, l) = (b / n, b % n);
        let rk = mod_pow(r, k, n);
        ((i + k) % m) * n + (j * rk + l) % n
    }))
}

/// The quaternion group Q8.
pub fn quaternion8() -> GroupTable {
    dicyclic(2)
}

fn mod_pow(mut base: usize, mut exp: usize, modulus: usize) -> usize {
    if modulus == 1 {
        return 0;
    }
    let mut acc = 1usize;
    base %= modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % modulus;
        }
        base = base * base % modulus;
        exp >>= 1;
    }
    acc
}

pub fn direct_product(a: &GroupTable, b: &GroupTable) -> GroupTable {
    let (na, nb) = (a.order(), b.order());
    table_from_fn(na * nb, |x, y| {
        let (xa, xb) = (x / nb, x % nb);
        let (ya, yb) = (y / nb, y % nb);
        a.mul(xa as Elem, ya as Elem) as usize * nb + b.mul(xb as Elem, yb as Elem) as usize
    })
}

/// Semidirect product `B ⋊ A` with `B` normal, from an action of `A` on `B`
/// given as one automorphism of `B` per element of `A`. The action must be a
/// homomorphism `A -> Aut(B)` under left-to-right composition (the same
/// convention `compose_maps` uses); pairs multiply as
/// `(a1, b1)(a2, b2) = (a1 a2, action[a2](b1) * b2)`.
///
/// With the trivial action this is the direct product.
pub fn semidirect_product(
    a: &GroupTable,
    b: &GroupTable,
    action: &[Vec<Elem>],
) -> Result<GroupTable, GroupError> {
    let (na, nb) = (a.order(), b.order());
    if action.len() != na {
        return Err(GroupError::InvalidParameters(format!(
            "action lists {} automorphisms for a group of order {na}",
            action.len()
        )));
    }
    for (i, phi) in action.iter().enumerate() {
        if phi.len() != nb || !crate::perm::is_permutation(phi, nb) {
            return Err(GroupError::InvalidParameters(format!(
                "action[{i}] is not a bijection on {nb} elements"
            )));
        }
        for x in b.elements() {
            for y in b.elements() {
                if phi[b.mul(x, y) as usize] != b.mul(phi[x as usize], phi[y as usize]) {
                    return Err(GroupError::InvalidParameters(format!(
                        "action[{i}] is not multiplicative at ({x},{y})"
                    )));
                }
            }
        }
    }
    for a1 in a.elements() {
        for a2 in a.elements() {
            let composed = crate::group::compose_maps(&action[a1 as usize], &action[a2 as usize]);
            if action[a.mul(a1, a2) as usize] != composed {
                return Err(GroupError::InvalidParameters(format!(
                    "action is not a homomorphism at ({a1},{a2})"
                )));
            }
        }
    }
    // Pair (a, b) sits at index a*|B| + b, matching direct_product.
    Ok(table_from_fn(na * nb, |x, y| {
        let (xa, xb) = (x / nb, x % nb);
        let (ya, yb) = (y / nb, y % nb);
        let moved = action[ya][xb] as usize;
        a.mul(xa as Elem, ya as Elem) as usize * nb + b.mul(moved as Elem, yb as Elem) as usize
    }))
}

/// Symmetric group on `n` letters, `n <= 5` (bigger tables are never needed).
pub fn symmetric(n: usize) -> GroupTable {
    assert!((1..=5).contains(&n));
    if n == 1 {
        return cyclic(1);
    }
    let mut transposition = crate::perm::identity_perm(n);
    transposition.swap(0, 1);
    let mut cycle: Vec<u16> = (0..n as u16).map(|i| (i + 1) % n as u16).collect();
    if n == 2 {
        cycle = transposition.clone();
    }
    let gens = PermGenSet::new(n, vec![transposition, cycle]).unwrap();
    group_from_permutations(&gens).unwrap().0
}

/// Alternating group on `n` letters, `n <= 5`.
pub fn alternating(n: usize) -> GroupTable {
    assert!((1..=5).contains(&n));
    if n <= 2 {
        return cyclic(1);
    }
    let three_cycle: Vec<u16> = {
        let mut p = crate::perm::identity_perm(n);
        p[0] = 1;
        p[1] = 2;
        p[2] = 0;
        p
    };
    let second: Vec<u16> = if n == 3 {
        three_cycle.clone()
    } else if n == 4 {
        // (2,3,4)
        let mut p = crate::perm::identity_perm(n);
        p[1] = 2;
        p[2] = 3;
        p[3] = 1;
        p
    } else {
        // (1,2,3,4,5)
        (0..n as u16).map(|i| (i + 1) % n as u16).collect()
    };
    let gens = PermGenSet::new(n, vec![three_cycle, second]).unwrap();
    group_from_permutations(&gens).unwrap().0
}

/// Extension of `n` by a cyclic group of prime order `p`, from an
/// automorphism `tau` of `n` and an element `n0` with `tau(n0) = n0` and
/// `tau^p = conjugation by n0`. The new generator `t` satisfies
/// `t a t^-1 = tau(a)` and `t^p = n0`; the result has order `p * |n|`, with
/// `n` embedded as the elements `(0, a)`.
///
/// Every group with a normal subgroup of prime index arises this way, which
/// is what the catalog generator leans on.
pub fn cyclic_extension(n: &GroupTable, p: usize, tau: &[Elem], n0: Elem) -> GroupTable {
    let size = n.order();
    assert!(p >= 2);
    assert_eq!(tau.len(), size);
    assert_eq!(tau[n0 as usize], n0, "tau must fix n0");
    // tau^p must be conjugation by n0.
    {
        let mut x: Vec<Elem> = (0..size as Elem).collect();
        for _ in 0..p {
            x = x.iter().map(|&e| tau[e as usize]).collect();
        }
        for a in n.elements() {
            assert_eq!(
                x[a as usize],
                n.conj(n0, a),
                "tau^p must equal conjugation by n0"
            );
        }
    }
    // Inverse powers of tau: tau_neg[j] = tau^{-j} for j in 0..p.
    let tau_inv = crate::group::invert_map(tau);
    let mut tau_neg: Vec<Vec<Elem>> = vec![(0..size as Elem).collect()];
    for j in 1..p {
        let prev = &tau_neg[j - 1];
        tau_neg.push(prev.iter().map(|&e| tau_inv[e as usize]).collect());
    }
    // Element i * size + a stands for t^i a.
    table_from_fn(p * size, |x, y| {
        let (i, a) = (x / size, (x % size) as Elem);
        let (j, b) = (y / size, (y % size) as Elem);
        let moved = tau_neg[j][a as usize];
        let prod = n.mul(moved, b);
        if i + j < p {
            (i + j) * size + prod as usize
        } else {
            (i + j - p) * size + n.mul(n0, prod) as usize
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{are_isomorphic, isomorphism};

    #[test]
    fn orders_and_spectra() {
        assert_eq!(symmetric(4).order(), 24);
        assert_eq!(alternating(5).order(), 60);
        assert_eq!(alternating(4).count_elements_of_order(3), 8);
        assert_eq!(alternating(5).count_elements_of_order(5), 24);
        assert_eq!(dicyclic(2).count_elements_of_order(2), 1);
        assert_eq!(dihedral(4).count_elements_of_order(2), 5);
    }

    #[test]
    fn metacyclic_matches_dihedral() {
        assert!(are_isomorphic(&metacyclic(2, 7, 6).unwrap(), &dihedral(7)));
        // modular group of order 16
        let m16 = metacyclic(2, 8, 5).unwrap();
        assert_eq!(m16.order(), 16);
        assert_eq!(m16.count_elements_of_order(2), 3);
        assert!(!are_isomorphic(&m16, &dihedral(8)));
        assert_eq!(metacyclic(2, 12, 5).unwrap().order(), 24);
        assert!(matches!(
            metacyclic(2, 12, 3),
            Err(crate::error::GroupError::InvalidParameters(_))
        ));
    }

    #[test]
    fn quaternion_is_dicyclic_2() {
        let q8 = quaternion8();
        assert_eq!(q8.order(), 8);
        assert!(are_isomorphic(&q8, &dicyclic(2)));
    }

    #[test]
    fn semidirect_products() {
        // Trivial action gives the direct product exactly.
        let z4 = cyclic(4);
        let z3 = cyclic(3);
        let trivial: Vec<Vec<Elem>> = (0..4).map(|_| z3.elements().collect()).collect();
        let sd = semidirect_product(&z4, &z3, &trivial).unwrap();
        assert!(are_isomorphic(&sd, &direct_product(&z4, &z3)));

        // Z4 inverting Z3 through its quotient of order 2: the dicyclic
        // group of order 12 (unique involution).
        let inv: Vec<Elem> = vec![0, 2, 1];
        let id: Vec<Elem> = vec![0, 1, 2];
        let action = vec![id.clone(), inv.clone(), id.clone(), inv.clone()];
        let sd = semidirect_product(&z4, &z3, &action).unwrap();
        assert_eq!(sd.order(), 12);
        assert_eq!(sd.count_elements_of_order(2), 1);
        assert!(are_isomorphic(&sd, &dicyclic(3)));

        // Non-homomorphic action is rejected: inversion has order 2, so no
        // homomorphism from Z3 can hit it.
        let bad = vec![id.clone(), inv, id];
        let bad = semidirect_product(&cyclic(3), &z3, &bad);
        assert!(matches!(
            bad,
            Err(crate::error::GroupError::InvalidParameters(_))
        ));
    }

    #[test]
    fn s3_is_z3_extension() {
        let z3 = cyclic(3);
        // inversion automorphism
        let tau: Vec<Elem> = vec![0, 2, 1];
        let ext = cyclic_extension(&z3, 2, &tau, 0);
        assert!(are_isomorphic(&ext, &symmetric(3)));
    }

    #[test]
    fn q8_as_nonsplit_extension_of_z4() {
        let z4 = cyclic(4);
        let tau: Vec<Elem> = vec![0, 3, 2, 1]; // inversion
        let ext = cyclic_extension(&z4, 2, &tau, 2); // t^2 = a^2
        assert!(are_isomorphic(&ext, &dicyclic(2)));
    }

    #[test]
    fn extension_embeds_base() {
        let d4 = dihedral(4);
        let id: Vec<Elem> = d4.elements().collect();
        let ext = cyclic_extension(&d4, 2, &id, 0); // D4 x Z2
        assert_eq!(ext.order(), 16);
        let emb = isomorphism(&direct_product(&d4, &cyclic(2)), &ext);
        assert!(emb.is_some());
        for a in d4.elements() {
            for b in d4.elements() {
                assert_eq!(ext.mul(a, b), d4.mul(a, b));
            }
        }
    }

    #[test]
    #[should_panic(expected = "tau^p")]
    fn bad_extension_data_panics() {
        let z5 = cyclic(5);
        let tau: Vec<Elem> = vec![0, 2, 4, 1, 3]; // order 4 automorphism
        cyclic_extension(&z5, 2, &tau, 0);
    }
}
