//! HLT-style Todd-Coxeter coset enumeration over the trivial subgroup.
//!
//! Cosets are scanned in definition order; every relator is scanned at every
//! live coset and gaps are filled by defining new cosets, with single-gap
//! deductions applied immediately. Coincidences are processed eagerly
//! through a union-find with a merge queue. The strategy is deterministic,
//! which the tests rely on.

use crate::error::CosetError;
use crate::perm::PermGenSet;

use super::{Letter, Presentation};

const UNDEF: u32 = u32::MAX;

struct Enumerator {
    ncols: usize,
    /// `table[c * ncols + col]`: the coset reached from `c` by the column's
    /// letter; columns alternate generator, inverse.
    table: Vec<u32>,
    parent: Vec<u32>,
    live: usize,
    cap: usize,
    queue: std::collections::VecDeque<(u32, u32)>,
}

#[inline]
fn col_of(l: Letter) -> usize {
    l.gen as usize * 2 + l.inv as usize
}

#[inline]
fn inv_col(col: usize) -> usize {
    col ^ 1
}

impl Enumerator {
    fn new(ngens: usize, cap: usize) -> Self {
        let mut e = Enumerator {
            ncols: 2 * ngens,
            table: Vec::new(),
            parent: Vec::new(),
            live: 0,
            cap,
            queue: Default::default(),
        };
        e.define_root();
        e
    }

    fn define_root(&mut self) {
        self.table.extend(std::iter::repeat(UNDEF).take(self.ncols));
        self.parent.push(0);
        self.live = 1;
    }

    fn define(&mut self, from: u32, col: usize) -> Result<u32, CosetError> {
        if self.live >= self.cap {
            return Err(CosetError::CapExceeded(self.cap));
        }
        let new = self.parent.len() as u32;
        self.table.extend(std::iter::repeat(UNDEF).take(self.ncols));
        self.parent.push(new);
        self.live += 1;
        self.set(from, col, new);
        Ok(new)
    }

    #[inline]
    fn get(&self, c: u32, col: usize) -> u32 {
        self.table[c as usize * self.ncols + col]
    }

    fn set(&mut self, c: u32, col: usize, to: u32) {
        self.table[c as usize * self.ncols + col] = to;
        self.table[to as usize * self.ncols + inv_col(col)] = c;
    }

    fn find(&mut self, mut c: u32) -> u32 {
        while self.parent[c as usize] != c {
            let p = self.parent[c as usize];
            self.parent[c as usize] = self.parent[p as usize];
            c = self.parent[c as usize];
        }
        c
    }

    /// Record that two cosets are equal and drain all consequences.
    fn coincide(&mut self, a: u32, b: u32) {
        self.queue.push_back((a, b));
        while let Some((a, b)) = self.queue.pop_front() {
            let a = self.find(a);
            let b = self.find(b);
            if a == b {
                continue;
            }
            // Keep the smaller index alive: deterministic, and keeps coset 0
            // the representative of the identity.
            let (keep, drop) = if a < b { (a, b) } else { (b, a) };
            self.parent[drop as usize] = keep;
            self.live -= 1;
            for col in 0..self.ncols {
                let d = self.get(drop, col);
                if d == UNDEF {
                    continue;
                }
                let existing = self.get(keep, col);
                if existing == UNDEF {
                    self.set(keep, col, d);
                } else if self.find(existing) != self.find(d) {
                    self.queue.push_back((existing, d));
                }
                // Make sure the neighbor's back-edge lands on the survivor.
                let d_back = self.get(d, inv_col(col));
                if d_back != UNDEF && self.find(d_back) == drop {
                    self.set(d, inv_col(col), keep);
                }
            }
        }
    }

    /// Scan relator `w` at coset `alpha`, filling gaps by definitions and
    /// closing the final gap as a deduction or coincidence.
    fn scan_and_fill(&mut self, alpha: u32, w: &[Letter]) -> Result<(), CosetError> {
        if w.is_empty() {
            return Ok(());
        }
        let mut f = alpha;
        let mut i = 0usize; // next forward position
        let mut b = alpha;
        let mut j = w.len(); // next backward position is j-1
        loop {
            // Forward through defined edges.
            while i < j {
                let next = self.get(f, col_of(w[i]));
                if next == UNDEF {
                    break;
                }
                f = self.find(next);
                i += 1;
            }
            if i == j {
                if f != b {
                    self.coincide(f, b);
                }
                return Ok(());
            }
            // Backward through defined inverse edges.
            while j > i {
                let next = self.get(b, inv_col(col_of(w[j - 1])));
                if next == UNDEF {
                    break;
                }
                b = self.find(next);
                j -= 1;
            }
            if i == j {
                if f != b {
                    self.coincide(f, b);
                }
                return Ok(());
            }
            if j == i + 1 {
                // Single gap: deduction.
                self.set(f, col_of(w[i]), b);
                return Ok(());
            }
            // Wider gap: define one coset forward and keep scanning.
            let new = self.define(f, col_of(w[i]))?;
            f = new;
            i += 1;
        }
    }

    /// Live cosets in index order, relabeled densely.
    fn compact(&mut self) -> (Vec<u32>, usize) {
        let n = self.parent.len();
        let mut relabel = vec![UNDEF; n];
        let mut count = 0u32;
        for c in 0..n as u32 {
            if self.find(c) == c {
                relabel[c as usize] = count;
                count += 1;
            }
        }
        (relabel, count as usize)
    }
}

/// Enumerates the cosets of the trivial subgroup in the presented group,
/// returning the regular permutation action of the generators.
///
/// Fails with `CapExceeded` once more than `coset_cap` cosets are alive at
/// the same time, which is the practical signal for an infinite (or merely
/// too large) group.
pub fn coset_enumeration(p: &Presentation, coset_cap: usize) -> Result<PermGenSet, CosetError> {
    let ngens = p.generators.len();
    let mut e = Enumerator::new(ngens, coset_cap.max(1));

    let mut alpha: u32 = 0;
    while (alpha as usize) < e.parent.len() {
        if e.find(alpha) != alpha {
            alpha += 1;
            continue;
        }
        for rel in &p.relators {
            e.scan_and_fill(alpha, rel)?;
            if e.find(alpha) != alpha {
                break;
            }
        }
        if e.find(alpha) == alpha {
            // Complete the row so generators absent from relators still act.
            for col in 0..e.ncols {
                if e.get(alpha, col) == UNDEF {
                    e.define(alpha, col)?;
                }
            }
        }
        alpha += 1;
    }

    let (relabel, count) = e.compact();
    let mut gens = Vec::with_capacity(ngens);
    for g in 0..ngens {
        let col = 2 * g;
        let mut perm = vec![0u16; count];
        for c in 0..e.parent.len() as u32 {
            if e.find(c) != c {
                continue;
            }
            let img = e.get(c, col);
            debug_assert_ne!(img, UNDEF);
            let img = e.find(img);
            perm[relabel[c as usize] as usize] = relabel[img as usize] as u16;
        }
        gens.push(perm);
    }
    Ok(PermGenSet::new(count, gens).map_err(CosetError::Perm)?)
}

#[cfg(test)]
mod tests {
    use super::super::parse_presentation;
    use super::*;
    use crate::group::{are_isomorphic, dicyclic, dihedral, metacyclic};
    use crate::perm::group_from_permutations;
    use crate::presentation::realize_presentation;

    fn order_of(text: &str) -> usize {
        let p = parse_presentation(text).unwrap();
        let pg = coset_enumeration(&p, 50_000).unwrap();
        pg.degree
    }

    #[test]
    fn small_presentations() {
        assert_eq!(order_of("gens: a; rel: a = 1;"), 1);
        assert_eq!(order_of("gens: a; rel: a^7 = 1;"), 7);
        assert_eq!(order_of("gens: x,y; rel: x^2=1; rel: y^2=1; rel: [x,y]=1;"), 4);
        // S3 two ways
        assert_eq!(order_of("gens: x,y; rel: x^2=1; rel: y^3=1; rel: x*y*x^-1=y^-1;"), 6);
        assert_eq!(order_of("gens: a,b; rel: a^2=1; rel: b^2=1; rel: (a*b)^3=1;"), 6);
    }

    #[test]
    fn dihedral_and_quaternion_presentations() {
        let p = parse_presentation(
            "gens: x, y;\nrel: x^2 = 1;\nrel: y^8 = 1;\nrel: x*y*x^-1 = y^3;\n",
        )
        .unwrap();
        let r = realize_presentation(&p, 50_000).unwrap();
        assert_eq!(r.table.order(), 16);
        assert!(are_isomorphic(&r.table, &metacyclic(2, 8, 3).unwrap()));

        let q8 = parse_presentation("gens: a, b; rel: a^4 = 1; rel: b^2 = a^2; rel: b*a*b^-1 = a^-1;")
            .unwrap();
        let r = realize_presentation(&q8, 50_000).unwrap();
        assert!(are_isomorphic(&r.table, &dicyclic(2)));
    }

    #[test]
    fn triangle_group_2_3_6_is_infinite() {
        let p = parse_presentation("gens: a,b; rel: a^2=1; rel: b^3=1; rel: (a*b)^6=1;").unwrap();
        // (2,3,6) is euclidean: infinite group, must hit the cap.
        assert_eq!(coset_enumeration(&p, 500), Err(CosetError::CapExceeded(500)));
    }

    #[test]
    fn free_generator_gets_row_completion() {
        let p = parse_presentation("gens: a, b; rel: a^2 = 1;").unwrap();
        // Free product Z2 * Z: infinite.
        assert!(matches!(coset_enumeration(&p, 200), Err(CosetError::CapExceeded(_))));
    }

    #[test]
    fn generator_elements_match_realization() {
        let p = parse_presentation(
            "gens: x, y;\nrel: x^2 = 1;\nrel: y^12 = 1;\nrel: x*y*x^-1 = y^5;\n",
        )
        .unwrap();
        let r = realize_presentation(&p, 50_000).unwrap();
        assert_eq!(r.table.order(), 24);
        let x = r.gen_elems[0];
        let y = r.gen_elems[1];
        assert_eq!(r.table.elem_order(x), 2);
        assert_eq!(r.table.elem_order(y), 12);
        assert_eq!(r.table.conj(x, y), r.table.pow(y, 5));
        // eval on a word: x y x^-1 y^-5 is the identity
        use crate::presentation::Letter;
        let w = [
            Letter { gen: 0, inv: false },
            Letter { gen: 1, inv: false },
            Letter { gen: 0, inv: true },
        ];
        assert_eq!(r.eval(&w), r.table.mul(r.table.mul(x, y), r.table.inv(x)));
    }

    #[test]
    fn regular_action_degree_equals_order() {
        let p = parse_presentation("gens: s, t; rel: s^4=1; rel: t^2=1; rel: (s*t)^2=1;").unwrap();
        let pg = coset_enumeration(&p, 50_000).unwrap();
        let (g, _) = group_from_permutations(&pg).unwrap();
        assert_eq!(pg.degree, g.order());
        assert!(are_isomorphic(&g, &dihedral(4)));
    }
}
