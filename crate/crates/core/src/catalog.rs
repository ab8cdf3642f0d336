//! The shipped small-groups library.
//!
//! The catalog is ingested from a newline-delimited file of permutation
//! generators, one group per line, labeled `(order, id)` in the conventional
//! small-group numbering (GAP's `IdSmallGroup`). Classification drivers
//! treat an order as exhaustively covered only when the file's manifest
//! marks it complete; everything else downgrades to a coverage warning.
//!
//! The file format is deliberately dumb: UTF-8, LF newlines, each line
//! either an entry `{"order":O,"id":I,"degree":D,"gens":[[...],...]}` with
//! 1-based permutation images (optionally `"name":"..."`), or a manifest
//! line `{"manifest":true,"order":O,"count":K}`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::path::Path;

use rayon::prelude::*;

use crate::error::{CatalogError, IdentifyError, PermError};
use crate::group::{are_isomorphic, Fingerprint, GroupTable};
use crate::perm::{group_from_permutations, PermGenSet};

/// `(order, id)` label of an isomorphism class in the small-groups
/// numbering; prints as `G(24,5)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupId {
    pub order: u32,
    pub id: u32,
}

impl GroupId {
    pub fn new(order: u32, id: u32) -> Self {
        GroupId { order, id }
    }
}

impl fmt::Display for GroupId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G({},{})", self.order, self.id)
    }
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub group_id: GroupId,
    pub perm_gens: PermGenSet,
    pub name: Option<String>,
}

impl CatalogEntry {
    /// Multiplication table of the generated group.
    pub fn realize(&self) -> Result<GroupTable, PermError> {
        group_from_permutations(&self.perm_gens).map(|(t, _)| t)
    }
}

#[derive(Debug, Clone, Default)]
pub struct Catalog {
    entries: BTreeMap<GroupId, CatalogEntry>,
    manifest: BTreeMap<u32, u32>,
}

impl Catalog {
    pub fn load(path: &Path) -> Result<Catalog, CatalogError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CatalogError::Io(format!("{}: {e}", path.display())))?;
        Catalog::parse(&text)
    }

    /// Parses catalog text and enforces the structural invariants: parseable
    /// lines, distinct ids, and — for each order the manifest marks
    /// complete — exactly the declared number of entries with ids
    /// consecutive from 1. Semantic checks (each entry really generates a
    /// group of its declared order, pairwise non-isomorphism) live in
    /// [`Catalog::validate`].
    pub fn parse(text: &str) -> Result<Catalog, CatalogError> {
        let mut cat = Catalog::default();
        for (idx, line) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let v: serde_json::Value = serde_json::from_str(line)
                .map_err(|e| CatalogError::Malformed { line: lineno, msg: e.to_string() })?;
            let obj = v.as_object().ok_or_else(|| CatalogError::Malformed {
                line: lineno,
                msg: "expected a JSON object".into(),
            })?;
            let get_u32 = |key: &str| -> Result<u32, CatalogError> {
                obj.get(key)
                    .and_then(|x| x.as_u64())
                    .and_then(|x| u32::try_from(x).ok())
                    .ok_or_else(|| CatalogError::Malformed {
                        line: lineno,
                        msg: format!("missing or bad \"{key}\""),
                    })
            };
            if obj.get("manifest").is_some() {
                let order = get_u32("order")?;
                let count = get_u32("count")?;
                if cat.manifest.insert(order, count).is_some() {
                    return Err(CatalogError::Malformed {
                        line: lineno,
                        msg: format!("duplicate manifest for order {order}"),
                    });
                }
                continue;
            }
            let order = get_u32("order")?;
            let id = get_u32("id")?;
            let degree = get_u32("degree")? as usize;
            let gens_v = obj
                .get("gens")
                .and_then(|x| x.as_array())
                .ok_or_else(|| CatalogError::Malformed {
                    line: lineno,
                    msg: "missing or bad \"gens\"".into(),
                })?;
            let mut gens = Vec::with_capacity(gens_v.len());
            for g in gens_v {
                let images = g.as_array().ok_or_else(|| CatalogError::Malformed {
                    line: lineno,
                    msg: "generator must be an array of images".into(),
                })?;
                let mut perm = Vec::with_capacity(images.len());
                for im in images {
                    // Images are 1-based on disk.
                    let im = im.as_u64().filter(|&x| (1..=degree as u64).contains(&x)).ok_or_else(
                        || CatalogError::Malformed {
                            line: lineno,
                            msg: format!("image out of range 1..={degree}"),
                        },
                    )?;
                    perm.push((im - 1) as u16);
                }
                gens.push(perm);
            }
            let perm_gens = PermGenSet::new(degree, gens).map_err(|e| CatalogError::Malformed {
                line: lineno,
                msg: e.to_string(),
            })?;
            let name = obj.get("name").and_then(|x| x.as_str()).map(str::to_owned);
            let group_id = GroupId::new(order, id);
            let entry = CatalogEntry { group_id, perm_gens, name };
            if cat.entries.insert(group_id, entry).is_some() {
                return Err(CatalogError::DuplicateId { line: lineno, order, id });
            }
        }
        for (&order, &count) in &cat.manifest {
            let present = cat.entries_of_order(order).count() as u32;
            if present != count {
                return Err(CatalogError::ManifestMismatch { order, declared: count, present });
            }
            for (k, e) in cat.entries_of_order(order).enumerate() {
                let expect = k as u32 + 1;
                if e.group_id.id != expect {
                    return Err(CatalogError::NonConsecutiveIds { order, missing: expect });
                }
            }
        }
        Ok(cat)
    }

    pub fn entry(&self, id: GroupId) -> Option<&CatalogEntry> {
        self.entries.get(&id)
    }

    pub fn entries(&self) -> impl Iterator<Item = &CatalogEntry> {
        self.entries.values()
    }

    pub fn entries_of_order(&self, order: u32) -> impl Iterator<Item = &CatalogEntry> {
        self.entries
            .range(GroupId::new(order, 0)..=GroupId::new(order, u32::MAX))
            .map(|(_, e)| e)
    }

    /// Orders with at least one entry, ascending.
    pub fn orders(&self) -> Vec<u32> {
        let mut out: Vec<u32> = self.entries.keys().map(|id| id.order).collect();
        out.dedup();
        out
    }

    /// Whether the manifest certifies every isomorphism class of this order
    /// is present. The trivial order needs no certificate.
    pub fn is_complete(&self, order: u32) -> bool {
        order == 1 && self.entries.contains_key(&GroupId::new(1, 1))
            || self.manifest.contains_key(&order)
    }

    pub fn declared_count(&self, order: u32) -> Option<u32> {
        self.manifest.get(&order).copied()
    }

    /// Semantic validation: every entry generates a group of exactly its
    /// declared order, and no two entries of an order marked complete are
    /// isomorphic. Returns all problems found, not just the first.
    pub fn validate(&self) -> ValidationReport {
        let mut problems: Vec<CatalogError> = Vec::new();
        // Realize every entry once, in parallel, keeping only fingerprints.
        let fps: Vec<(GroupId, Result<Fingerprint, CatalogError>)> = self
            .entries
            .par_iter()
            .map(|(&id, e)| {
                let r = match e.realize() {
                    Ok(t) if t.order() as u32 == id.order => Ok(Fingerprint::of(&t)),
                    Ok(t) => Err(CatalogError::BadEntry {
                        order: id.order,
                        id: id.id,
                        msg: format!(
                            "generators produce {} elements, declared {}",
                            t.order(),
                            id.order
                        ),
                    }),
                    Err(e) => Err(CatalogError::BadEntry {
                        order: id.order,
                        id: id.id,
                        msg: e.to_string(),
                    }),
                };
                (id, r)
            })
            .collect();
        let mut buckets: HashMap<(u32, Fingerprint), Vec<GroupId>> = HashMap::new();
        for (id, r) in fps {
            match r {
                Ok(fp) if self.manifest.contains_key(&id.order) => {
                    buckets.entry((id.order, fp)).or_default().push(id);
                }
                Ok(_) => {}
                Err(e) => problems.push(e),
            }
        }
        // Only fingerprint collisions need the real isomorphism test.
        let collisions: Vec<&Vec<GroupId>> =
            buckets.values().filter(|ids| ids.len() > 1).collect();
        let iso_problems: Vec<CatalogError> = collisions
            .par_iter()
            .flat_map(|ids| {
                let tables: Vec<(GroupId, GroupTable)> = ids
                    .iter()
                    .map(|id| (*id, self.entries[id].realize().expect("realized above")))
                    .collect();
                let mut found = Vec::new();
                for i in 0..tables.len() {
                    for j in i + 1..tables.len() {
                        if are_isomorphic(&tables[i].1, &tables[j].1) {
                            found.push(CatalogError::IsomorphicPair {
                                order: tables[i].0.order,
                                a: tables[i].0.id,
                                b: tables[j].0.id,
                            });
                        }
                    }
                }
                found
            })
            .collect();
        problems.extend(iso_problems);
        problems.sort_by_key(|p| format!("{p}"));
        ValidationReport {
            entries_checked: self.entries.len(),
            complete_orders: self.manifest.keys().copied().collect(),
            problems,
        }
    }

    /// Looks `g` up by isomorphism. Requires the catalog to be complete at
    /// `|g|`; `NotFound` therefore means the catalog itself is inconsistent.
    pub fn identify(&self, g: &GroupTable) -> Result<GroupId, IdentifyError> {
        let order = g.order() as u32;
        if !self.is_complete(order) {
            return Err(IdentifyError::OrderIncomplete(order));
        }
        let fp = Fingerprint::of(g);
        for e in self.entries_of_order(order) {
            let t = match e.realize() {
                Ok(t) => t,
                Err(_) => continue,
            };
            if Fingerprint::of(&t) == fp && are_isomorphic(g, &t) {
                return Ok(e.group_id);
            }
        }
        Err(IdentifyError::NotFound(order))
    }
}

#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub entries_checked: usize,
    /// Orders whose manifest lines certify completeness.
    pub complete_orders: Vec<u32>,
    pub problems: Vec<CatalogError>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.problems.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, dihedral, quaternion8};

    fn toy_catalog() -> &'static str {
        // Orders 4 and 8 complete; order 6 present but uncertified.
        concat!(
            "{\"order\":4,\"id\":1,\"degree\":4,\"gens\":[[2,3,4,1]]}\n",
            "{\"order\":4,\"id\":2,\"degree\":4,\"gens\":[[2,1,4,3],[3,4,1,2]]}\n",
            "{\"manifest\":true,\"order\":4,\"count\":2}\n",
            "{\"order\":6,\"id\":1,\"degree\":3,\"gens\":[[2,1,3],[2,3,1]]}\n",
            "{\"order\":8,\"id\":1,\"degree\":8,\"gens\":[[2,3,4,5,6,7,8,1]]}\n",
            "{\"order\":8,\"id\":2,\"degree\":6,\"gens\":[[2,3,4,1,5,6],[1,2,3,4,6,5]]}\n",
            "{\"order\":8,\"id\":3,\"degree\":4,\"gens\":[[2,3,4,1],[2,1,4,3]],\"name\":\"D4\"}\n",
            "{\"order\":8,\"id\":4,\"degree\":8,\"gens\":[[2,3,4,1,6,7,8,5],[5,8,7,6,3,2,1,4]]}\n",
            "{\"order\":8,\"id\":5,\"degree\":8,\"gens\":[[2,1,3,4,5,6,7,8],[1,2,4,3,5,6,7,8],[1,2,3,4,6,5,7,8]]}\n",
            "{\"manifest\":true,\"order\":8,\"count\":5}\n",
        )
    }

    #[test]
    fn parse_and_validate_roundtrip() {
        let cat = Catalog::parse(toy_catalog()).unwrap();
        assert_eq!(cat.entries().count(), 8);
        assert!(cat.is_complete(4));
        assert!(cat.is_complete(8));
        assert!(!cat.is_complete(6));
        assert_eq!(cat.declared_count(8), Some(5));
        assert_eq!(cat.entry(GroupId::new(8, 3)).unwrap().name.as_deref(), Some("D4"));
        let report = cat.validate();
        assert!(report.is_valid(), "problems: {:?}", report.problems);
        assert_eq!(report.entries_checked, 8);
        assert_eq!(report.complete_orders, vec![4, 8]);
    }

    #[test]
    fn identify_against_toy_catalog() {
        let cat = Catalog::parse(toy_catalog()).unwrap();
        assert_eq!(cat.identify(&dihedral(4)).unwrap(), GroupId::new(8, 3));
        assert_eq!(cat.identify(&quaternion8()).unwrap(), GroupId::new(8, 4));
        assert_eq!(cat.identify(&cyclic(4)).unwrap(), GroupId::new(4, 1));
        // Order 6 is present but not certified complete.
        assert_eq!(
            cat.identify(&cyclic(6)),
            Err(IdentifyError::OrderIncomplete(6))
        );
        // Order 5 is absent entirely.
        assert_eq!(
            cat.identify(&cyclic(5)),
            Err(IdentifyError::OrderIncomplete(5))
        );
    }

    #[test]
    fn structural_errors_are_reported_with_lines() {
        let bad = "{\"order\":4,\"id\":1,\"degree\":3,\"gens\":[[2,3,4]]}\n";
        match Catalog::parse(bad) {
            Err(CatalogError::Malformed { line: 1, msg }) => {
                assert!(msg.contains("1..=3"), "{msg}");
            }
            other => panic!("unexpected: {other:?}"),
        }

        let dup = "{\"order\":4,\"id\":1,\"degree\":4,\"gens\":[[2,3,4,1]]}\n\
                   {\"order\":4,\"id\":1,\"degree\":4,\"gens\":[[2,1,4,3]]}\n";
        assert!(matches!(
            Catalog::parse(dup),
            Err(CatalogError::DuplicateId { line: 2, order: 4, id: 1 })
        ));

        let short = "{\"order\":4,\"id\":1,\"degree\":4,\"gens\":[[2,3,4,1]]}\n\
                     {\"manifest\":true,\"order\":4,\"count\":2}\n";
        assert!(matches!(
            Catalog::parse(short),
            Err(CatalogError::ManifestMismatch { order: 4, declared: 2, present: 1 })
        ));

        let gap = "{\"order\":4,\"id\":1,\"degree\":4,\"gens\":[[2,3,4,1]]}\n\
                   {\"order\":4,\"id\":3,\"degree\":4,\"gens\":[[2,1,4,3],[3,4,1,2]]}\n\
                   {\"manifest\":true,\"order\":4,\"count\":2}\n";
        assert!(matches!(
            Catalog::parse(gap),
            Err(CatalogError::NonConsecutiveIds { order: 4, missing: 2 })
        ));
    }

    #[test]
    fn validation_catches_wrong_order_and_isomorphic_pair() {
        // Declared order 6 but generates Z3.
        let wrong = "{\"order\":6,\"id\":1,\"degree\":3,\"gens\":[[2,3,1]]}\n";
        let cat = Catalog::parse(wrong).unwrap();
        let report = cat.validate();
        assert_eq!(report.problems.len(), 1);
        assert!(matches!(
            &report.problems[0],
            CatalogError::BadEntry { order: 6, id: 1, .. }
        ));

        // Two copies of Z4 inside a "complete" order.
        let iso = "{\"order\":4,\"id\":1,\"degree\":4,\"gens\":[[2,3,4,1]]}\n\
                   {\"order\":4,\"id\":2,\"degree\":4,\"gens\":[[4,3,1,2]]}\n\
                   {\"manifest\":true,\"order\":4,\"count\":2}\n";
        let cat = Catalog::parse(iso).unwrap();
        let report = cat.validate();
        assert!(matches!(
            &report.problems[..],
            [CatalogError::IsomorphicPair { order: 4, a: 1, b: 2 }]
        ));
    }
}
