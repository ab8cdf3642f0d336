//! One-shot generator for the small-group catalog under `data/`.
//!
//! For each order in the divisor-closed range the classifier needs, every
//! isomorphism class is produced from three sources: abelian groups from
//! integer partitions, the three nonsolvable seeds without an index-two
//! subgroup, and cyclic extensions of the already-stored classes of index
//! a prime. The class count of every order is checked against the known
//! total, so a missing or duplicated class aborts the run. Classes are
//! then labeled with public ids and written as generator permutations.

mod abelian;
mod accum;
mod extend;
mod label;
mod matgroups;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use rayon::prelude::*;

use prodquot_core::group::{
    alternating, cyclic_extension, element_invariants, generating_set, GroupTable,
};

use accum::{refined_key, Accumulator};

/// Orders the catalog carries, with the number of isomorphism classes of
/// each. The list is closed under division by primes, which the extension
/// route relies on; the counts are the completeness check for the run.
const EXPECTED: &[(u32, usize)] = &[
    (1, 1),
    (2, 1),
    (3, 1),
    (4, 2),
    (5, 1),
    (6, 2),
    (7, 1),
    (8, 5),
    (9, 2),
    (10, 2),
    (12, 5),
    (14, 2),
    (15, 1),
    (16, 14),
    (18, 5),
    (20, 5),
    (21, 2),
    (24, 15),
    (27, 5),
    (28, 4),
    (30, 4),
    (32, 51),
    (36, 14),
    (40, 14),
    (42, 6),
    (45, 2),
    (48, 52),
    (54, 15),
    (56, 13),
    (60, 13),
    (64, 267),
    (72, 50),
    (80, 52),
    (84, 15),
    (90, 10),
    (96, 231),
    (108, 45),
    (120, 47),
    (144, 197),
    (160, 238),
    (168, 57),
    (192, 1543),
];

fn generate(max_order: u32) -> BTreeMap<u32, Vec<GroupTable>> {
    let mut store: BTreeMap<u32, Vec<GroupTable>> = BTreeMap::new();
    for &(n, expected) in EXPECTED.iter().filter(|&&(n, _)| n <= max_order) {
        let t0 = Instant::now();
        let mut acc = Accumulator::new();
        for g in abelian::abelian_groups(n) {
            acc.push(g);
        }
        // Perfect groups never arise as a cyclic extension of a smaller
        // catalogued order; in this range there are exactly three.
        match n {
            60 => {
                acc.push(alternating(5));
            }
            120 => {
                acc.push(matgroups::sl2_5());
            }
            168 => {
                acc.push(matgroups::gl3_2());
            }
            _ => {}
        }
        let mut candidates = 0usize;
        for (p, _) in abelian::prime_factorization(n) {
            let m = n / p;
            let kernels = store.get(&m).unwrap_or_else(|| panic!("order {m} not yet stored"));
            for kern in kernels {
                let cands = extend::tau_candidates(kern, p as usize);
                for chunk in cands.chunks(64) {
                    let built: Vec<(GroupTable, u64, Vec<u64>)> = chunk
                        .par_iter()
                        .map(|(tau, n0)| {
                            let g = cyclic_extension(kern, p as usize, tau, *n0);
                            let key = refined_key(&g);
                            let inv = element_invariants(&g);
                            (g, key, inv)
                        })
                        .collect();
                    for (g, key, inv) in built {
                        candidates += 1;
                        if candidates % 2000 == 0 {
                            eprintln!(
                                "order {n:3}: {candidates} candidates, {} classes so far, {:.0?}",
                                acc.len(),
                                t0.elapsed()
                            );
                        }
                        acc.push_prepared(g, key, inv);
                    }
                }
            }
        }
        let classes = acc.finish();
        assert_eq!(classes.len(), expected, "class count at order {n}");
        eprintln!("order {n:3}: {:4} classes   {:.1?}", classes.len(), t0.elapsed());
        store.insert(n, classes);
    }
    store
}

fn entry_line(n: u32, id: u32, g: &GroupTable) -> String {
    let degree = g.order();
    let mut s = format!("{{\"order\":{n},\"id\":{id},\"degree\":{degree},\"gens\":[");
    if degree == 1 {
        s.push_str("[1]");
    } else {
        // Right-regular representation: each generator x becomes the
        // permutation y -> y*x, written 1-based.
        for (gi, &x) in generating_set(g).iter().enumerate() {
            if gi > 0 {
                s.push(',');
            }
            s.push('[');
            for y in g.elements() {
                if y > 0 {
                    s.push(',');
                }
                let _ = write!(s, "{}", g.mul(y, x) + 1);
            }
            s.push(']');
        }
    }
    s.push_str("]}\n");
    s
}

fn emit(
    store: &BTreeMap<u32, Vec<GroupTable>>,
    labels: &BTreeMap<u32, Vec<u32>>,
    out: &PathBuf,
) -> std::io::Result<()> {
    let mut text = String::from(
        "# Small-group catalog: every isomorphism class of each listed order,\n\
         # numbered per the GAP small-group library and given by generators of\n\
         # its right-regular permutation representation.\n",
    );
    for (&n, classes) in store {
        let ids = &labels[&n];
        let _ = writeln!(text, "{{\"manifest\":true,\"order\":{n},\"count\":{}}}", classes.len());
        let mut by_id: Vec<(u32, usize)> = ids.iter().copied().zip(0..classes.len()).collect();
        by_id.sort_unstable();
        for (id, idx) in by_id {
            text.push_str(&entry_line(n, id, &classes[idx]));
        }
    }
    if let Some(dir) = out.parent() {
        if !dir.as_os_str().is_empty() {
            std::fs::create_dir_all(dir)?;
        }
    }
    std::fs::write(out, text)
}

fn main() {
    let mut out = PathBuf::from("data/smallgroups.jsonl");
    let mut max_order = 192u32;
    let mut args = std::env::args().skip(1);
    while let Some(a) = args.next() {
        match a.as_str() {
            "--out" => out = PathBuf::from(args.next().expect("--out needs a path")),
            "--max-order" => {
                max_order = args
                    .next()
                    .expect("--max-order needs a value")
                    .parse()
                    .expect("--max-order needs an integer")
            }
            other => {
                eprintln!("unknown argument: {other}");
                eprintln!("usage: catalog-gen [--out PATH] [--max-order N]");
                std::process::exit(2);
            }
        }
    }
    let t0 = Instant::now();
    let store = generate(max_order);
    let labels = label::assign_ids(&store);
    emit(&store, &labels, &out).expect("failed to write the catalog");
    let total: usize = store.values().map(Vec::len).sum();
    eprintln!(
        "wrote {total} classes across {} orders to {} in {:.1?}",
        store.len(),
        out.display(),
        t0.elapsed()
    );
}
