//! Top-level classification drivers.
//!
//! A surface with `p_g = q = 1` isogenous to a product determines a finite
//! group acting on two curves; conversely every admissible pair of
//! generating vectors produces such a surface. The drivers here walk the
//! finite search space — admissible branch types, catalog groups of the
//! forced order, vectors, freeness conditions — and emit one record per
//! occurring `(group, type)` combination, with witnesses.

use std::collections::{BTreeSet, HashMap};

use crate::catalog::{Catalog, GroupId};
use crate::group::{index_two_subgroups, Elem, ElementSet, GroupTable};
use crate::signature::{enumerate_admissible_tuples, rh_genus, surface_invariants, BranchSignature};
use crate::vectors::{
    check_m1, check_m2, find_generating_vectors, is_nonsplit_extension, involution_centralizer_prune,
    stabilizer_union, GeneratingVector, SearchMode,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SurfaceKind {
    Unmixed,
    Mixed,
}

/// Moduli dimension of a classification row: `r + s - 3` for the unmixed
/// shape, `s` for the mixed one.
pub fn dimension(kind: SurfaceKind, r: usize, s: usize) -> usize {
    match kind {
        SurfaceKind::Unmixed => r + s - 3,
        SurfaceKind::Mixed => s,
    }
}

/// Witness vectors proving a record occurs.
#[derive(Debug, Clone)]
pub enum Witness {
    Unmixed {
        /// Genus-zero vector on the fiber side.
        v: GeneratingVector,
        /// Genus-one vector on the base side.
        w: GeneratingVector,
    },
    Mixed {
        /// Genus-one vector of the index-two subgroup, in subgroup
        /// coordinates.
        v: GeneratingVector,
        /// Map from subgroup coordinates to elements of the full group.
        embed: Vec<Elem>,
        /// The index-two subgroup inside the full group.
        gcirc: ElementSet,
    },
}

/// One row of the classification: a group together with the branch data
/// of an occurring action.
#[derive(Debug, Clone)]
pub struct SurfaceRecord {
    pub kind: SurfaceKind,
    pub g_f: u32,
    pub g_c: u32,
    pub group: GroupId,
    /// Mixed records only: the isomorphism class of the index-two subgroup.
    pub subgroup: Option<GroupId>,
    /// Genus-zero branch type; absent for mixed records.
    pub m: Option<BranchSignature>,
    /// Genus-one branch type.
    pub n: BranchSignature,
    pub chi: i64,
    pub k2: i64,
    pub g_alb: u32,
    pub dimension: usize,
    /// Moduli component count, filled in by the orbit counter on demand.
    pub components: Option<u32>,
    pub witness: Witness,
}

impl SurfaceRecord {
    fn sort_key(&self) -> (u32, u32, u32, u8, Vec<u32>, Vec<u32>, u32) {
        (
            self.g_f,
            self.group.order,
            self.group.id,
            match self.kind {
                SurfaceKind::Unmixed => 0,
                SurfaceKind::Mixed => 1,
            },
            self.m.as_ref().map(|s| s.periods().to_vec()).unwrap_or_default(),
            self.n.periods().to_vec(),
            self.subgroup.map(|s| s.id).unwrap_or(0),
        )
    }
}

/// Driver output: the records plus any orders the catalog could not
/// supply. A nonempty `missing_orders` demotes the run to partial.
#[derive(Debug, Clone)]
pub struct ClassifyOutcome {
    pub records: Vec<SurfaceRecord>,
    pub missing_orders: Vec<u32>,
}

impl ClassifyOutcome {
    pub fn is_partial(&self) -> bool {
        !self.missing_orders.is_empty()
    }
}

/// Shape of one unmixed fiber-genus case: the fixed genus-one type, the
/// order multiplier `|G| = k * alpha(m)`, and the alpha cap coming from
/// the automorphism bound of a curve of that genus.
#[derive(Debug, Clone)]
pub struct UnmixedCase {
    pub g_f: u32,
    pub n_periods: Vec<u32>,
    pub order_factor: u32,
    pub alpha_cap: u32,
}

/// The three fiber genera with `|Aut| <= 84(2g-2)`-style caps: genus 3
/// allows alpha up to 84, genus 4 up to 40, genus 5 up to 48.
pub fn unmixed_case(g_f: u32) -> Option<UnmixedCase> {
    match g_f {
        3 => Some(UnmixedCase { g_f: 3, n_periods: vec![2, 2], order_factor: 2, alpha_cap: 84 }),
        4 => Some(UnmixedCase { g_f: 4, n_periods: vec![3], order_factor: 3, alpha_cap: 40 }),
        5 => Some(UnmixedCase { g_f: 5, n_periods: vec![2], order_factor: 4, alpha_cap: 48 }),
        _ => None,
    }
}

/// Picks a pair `(V, W)` with disjoint stabilizer unions, if one exists.
/// Unions repeat heavily across vectors, so candidates are deduplicated
/// by union set first; the witness is the first vector recorded for each
/// union. The unpruned double loop is the oracle this is tested against.
fn disjoint_union_pair(
    g: &GroupTable,
    vs: &[GeneratingVector],
    ws: &[GeneratingVector],
) -> Option<(usize, usize)> {
    let mut v_unions: Vec<(ElementSet, usize)> = Vec::new();
    for (i, v) in vs.iter().enumerate() {
        let su = stabilizer_union(g, v);
        if !v_unions.iter().any(|(s, _)| *s == su) {
            v_unions.push((su, i));
        }
    }
    let mut w_unions: Vec<(ElementSet, usize)> = Vec::new();
    for (i, w) in ws.iter().enumerate() {
        let su = stabilizer_union(g, w);
        if !w_unions.iter().any(|(s, _)| *s == su) {
            w_unions.push((su, i));
        }
    }
    for (vu, vi) in &v_unions {
        for (wu, wi) in &w_unions {
            if vu.intersects_only_identity(wu) {
                return Some((*vi, *wi));
            }
        }
    }
    None
}

/// Classification of the unmixed surfaces with fiber genus `g_f`,
/// using the default alpha cap for that genus.
pub fn classify_unmixed(g_f: u32, catalog: &Catalog) -> ClassifyOutcome {
    let case = unmixed_case(g_f).expect("unmixed fiber genus must be 3, 4 or 5");
    classify_unmixed_with(&case, catalog)
}

pub fn classify_unmixed_with(case: &UnmixedCase, catalog: &Catalog) -> ClassifyOutcome {
    let n_sig = BranchSignature::genus1(case.n_periods.clone()).expect("valid genus-one type");
    let s = n_sig.num_periods();
    let mut records: Vec<SurfaceRecord> = Vec::new();
    let mut missing: BTreeSet<u32> = BTreeSet::new();
    let mut table_cache: HashMap<GroupId, GroupTable> = HashMap::new();

    for tuple in enumerate_admissible_tuples(case.alpha_cap) {
        let order = case.order_factor * tuple.alpha;
        if !catalog.is_complete(order) {
            missing.insert(order);
            continue;
        }
        let m_sig =
            BranchSignature::genus0(tuple.periods.clone()).expect("admissible tuple is a type");
        let r = m_sig.num_periods();
        for entry in catalog.entries_of_order(order) {
            let gid = entry.group_id;
            let g = table_cache.entry(gid).or_insert_with(|| {
                entry.realize().unwrap_or_else(|e| panic!("catalog entry {gid} realizes: {e}"))
            });
            let vs = find_generating_vectors(g, &m_sig, SearchMode::All);
            if vs.is_empty() {
                continue;
            }
            let ws = find_generating_vectors(g, &n_sig, SearchMode::All);
            if ws.is_empty() {
                continue;
            }
            let Some((vi, wi)) = disjoint_union_pair(g, &vs, &ws) else {
                continue;
            };
            let g_c = rh_genus(&n_sig, order as u64).expect("genus-one branch genus is integral");
            let (chi, k2) =
                surface_invariants(g_c, case.g_f, order as u64).expect("integral invariants");
            records.push(SurfaceRecord {
                kind: SurfaceKind::Unmixed,
                g_f: case.g_f,
                g_c,
                group: gid,
                subgroup: None,
                m: Some(m_sig.clone()),
                n: n_sig.clone(),
                chi,
                k2,
                g_alb: case.g_f,
                dimension: dimension(SurfaceKind::Unmixed, r, s),
                components: None,
                witness: Witness::Unmixed { v: vs[vi].clone(), w: ws[wi].clone() },
            });
        }
    }
    records.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    ClassifyOutcome { records, missing_orders: missing.into_iter().collect() }
}

/// The three candidate mixed shapes: `(g_C, n, |G|)`.
pub fn mixed_cases() -> Vec<(u32, Vec<u32>, u32)> {
    vec![(5, vec![2, 2], 16), (7, vec![3], 36), (9, vec![2], 64)]
}

/// Classification of the mixed surfaces, with the derived-subgroup
/// involution prune enabled.
pub fn classify_mixed(catalog: &Catalog) -> ClassifyOutcome {
    classify_mixed_with(catalog, true)
}

/// `prune = false` disables the derived-subgroup prune; the record set
/// must be identical either way (the prune is an optimization whose
/// soundness is asserted in tests).
pub fn classify_mixed_with(catalog: &Catalog, prune: bool) -> ClassifyOutcome {
    let mut records: Vec<SurfaceRecord> = Vec::new();
    let mut missing: BTreeSet<u32> = BTreeSet::new();
    for (g_c, n_periods, order) in mixed_cases() {
        let n_sig = BranchSignature::genus1(n_periods.clone()).expect("valid genus-one type");
        let s = n_sig.num_periods();
        if !catalog.is_complete(order) {
            missing.insert(order);
            continue;
        }
        // One row per isomorphism type of (G, G°): conjugate or merely
        // isomorphic repeats of G° collapse here.
        let mut seen: BTreeSet<(GroupId, GroupId)> = BTreeSet::new();
        for entry in catalog.entries_of_order(order) {
            let gid = entry.group_id;
            let g = entry.realize().unwrap_or_else(|e| panic!("catalog entry {gid} realizes: {e}"));
            for gcirc in index_two_subgroups(&g) {
                if !is_nonsplit_extension(&g, &gcirc) {
                    continue;
                }
                if prune && n_sig.periods() == [2] && involution_centralizer_prune(&g, &gcirc) {
                    continue;
                }
                let (st, embed) = g.subgroup_table(&gcirc);
                let vs = find_generating_vectors(&st, &n_sig, SearchMode::All);
                let witness = vs.iter().find(|v| {
                    let branch: Vec<Elem> =
                        v.branch.iter().map(|&e| embed[e as usize]).collect();
                    check_m1(&g, &gcirc, &branch) && check_m2(&g, &gcirc, &branch)
                });
                let Some(v) = witness else {
                    continue;
                };
                let sub_id = catalog
                    .identify(&st)
                    .unwrap_or_else(|e| panic!("index-two subgroup of {gid} identifies: {e}"));
                if !seen.insert((gid, sub_id)) {
                    continue;
                }
                let (chi, k2) =
                    surface_invariants(g_c, g_c, order as u64).expect("integral invariants");
                records.push(SurfaceRecord {
                    kind: SurfaceKind::Mixed,
                    g_f: g_c,
                    g_c,
                    group: gid,
                    subgroup: Some(sub_id),
                    m: None,
                    n: n_sig.clone(),
                    chi,
                    k2,
                    g_alb: g_c,
                    dimension: dimension(SurfaceKind::Mixed, 0, s),
                    components: None,
                    witness: Witness::Mixed { v: v.clone(), embed, gcirc },
                });
            }
        }
    }
    records.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    ClassifyOutcome { records, missing_orders: missing.into_iter().collect() }
}
