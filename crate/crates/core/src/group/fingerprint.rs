use super::GroupTable;

/// Cheap isomorphism invariants, used both to bucket groups before running
/// the backtracking isomorphism test and to reject non-isomorphic pairs
/// early. Equal fingerprints do not imply isomorphism.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fingerprint {
    pub order: u32,
    /// `(element order, multiplicity)`, ascending.
    pub order_histogram: Vec<(u16, u32)>,
    pub center_order: u32,
    /// Orders along the derived series, starting at the group itself.
    pub derived_series_orders: Vec<u32>,
    /// Invariant factors of the abelianization.
    pub abelianization: Vec<u32>,
    /// `(class size, multiplicity)`, ascending.
    pub class_size_histogram: Vec<(u32, u32)>,
}

impl Fingerprint {
    pub fn of(g: &GroupTable) -> Self {
        let mut order_histogram: Vec<(u16, u32)> = Vec::new();
        {
            let mut orders: Vec<u16> = g.elements().map(|e| g.elem_order(e)).collect();
            orders.sort_unstable();
            for o in orders {
                match order_histogram.last_mut() {
                    Some((v, c)) if *v == o => *c += 1,
                    _ => order_histogram.push((o, 1)),
                }
            }
        }
        let mut class_size_histogram: Vec<(u32, u32)> = Vec::new();
        {
            let mut sizes: Vec<u32> =
                g.conjugacy_classes().classes.iter().map(|c| c.len() as u32).collect();
            sizes.sort_unstable();
            for s in sizes {
                match class_size_histogram.last_mut() {
                    Some((v, c)) if *v == s => *c += 1,
                    _ => class_size_histogram.push((s, 1)),
                }
            }
        }
        Fingerprint {
            order: g.order() as u32,
            order_histogram,
            center_order: g.center().len() as u32,
            derived_series_orders: g.derived_series().iter().map(|s| s.len() as u32).collect(),
            abelianization: g.abelianization_invariants(),
            class_size_histogram,
        }
    }
}
