//! One abelian group per isomorphism class of a given order, from the
//! partitions of each prime exponent.

use prodquot_core::group::{abelian, GroupTable};

/// Partitions of `k` as weakly decreasing parts, lexicographically largest
/// first.
fn partitions(k: u32) -> Vec<Vec<u32>> {
    fn rec(rest: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            prefix.push(part);
            rec(rest - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(k, k, &mut Vec::new(), &mut out);
    out
}

pub fn prime_factorization(mut n: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while n > 1 {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    out
}

pub fn abelian_groups(n: u32) -> Vec<GroupTable> {
    if n == 1 {
        return vec![abelian(&[])];
    }
    let factored = prime_factorization(n);
    let per_prime: Vec<Vec<Vec<u32>>> = factored.iter().map(|&(_, e)| partitions(e)).collect();
    let mut out = Vec::new();
    let mut choice = vec![0usize; per_prime.len()];
    loop {
        let mut invariants: Vec<u32> = Vec::new();
        for ((&(p, _), parts), &c) in factored.iter().zip(&per_prime).zip(&choice) {
            invariants.extend(parts[c].iter().map(|&e| p.pow(e)));
        }
        out.push(abelian(&invariants));
        // Mixed-radix increment over the partition choices.
        let mut i = 0;
        loop {
            if i == choice.len() {
                return out;
            }
            choice[i] += 1;
            if choice[i] < per_prime[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}
