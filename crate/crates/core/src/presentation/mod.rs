//! Finite presentations: parsing, printing, and realization as concrete
//! groups via coset enumeration.
//!
//! The textual grammar (one declaration per statement, `#` comments to end
//! of line):
//!
//! ```text
//! gens: x, y;
//! rel: x^2 = 1;
//! rel: x*y*x^-1 = y^3;
//! ```
//!
//! Words are `*`-separated factors; a factor is a generator, a parenthesized
//! word, or a commutator `[u,v] = u v u^-1 v^-1`, optionally raised to an
//! integer power. `1` is the empty word. Relations `lhs = rhs` are
//! normalized to the single relator `lhs * rhs^-1`.

mod coset;
mod parse;

pub use coset::coset_enumeration;
pub use parse::parse_presentation;

use crate::error::{CosetError, PermError};
use crate::group::{Elem, GroupTable};
use crate::perm::{group_from_permutations, Perm};

/// One letter of a relator word: a generator or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    pub gen: u16,
    pub inv: bool,
}

impl Letter {
    pub fn inverse(self) -> Self {
        Letter { gen: self.gen, inv: !self.inv }
    }
}

/// Inverse of a word: reverse it and invert each letter.
pub fn invert_word(w: &[Letter]) -> Vec<Letter> {
    w.iter().rev().map(|l| l.inverse()).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<String>,
    /// Relators, each equal to the identity.
    pub relators: Vec<Vec<Letter>>,
}

impl Presentation {
    /// Renders in the same grammar `parse_presentation` accepts, with runs
    /// of a repeated letter compressed to powers. Parsing the output yields
    /// a structurally identical presentation.
    pub fn print(&self) -> String {
        let mut out = String::from("gens: ");
        out.push_str(&self.generators.join(", "));
        out.push_str(";\n");
        for rel in &self.relators {
            out.push_str("rel: ");
            out.push_str(&self.word_string(rel));
            out.push_str(" = 1;\n");
        }
        out
    }

    pub fn word_string(&self, w: &[Letter]) -> String {
        if w.is_empty() {
            return "1".into();
        }
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < w.len() {
            let mut j = i;
            while j < w.len() && w[j] == w[i] {
                j += 1;
            }
            let name = &self.generators[w[i].gen as usize];
            let count = (j - i) as i64;
            let exp = if w[i].inv { -count } else { count };
            if exp == 1 {
                parts.push(name.clone());
            } else {
                parts.push(format!("{name}^{exp}"));
            }
            i = j;
        }
        parts.join("*")
    }
}

/// A presentation realized as a concrete group: the table plus the element
/// each generator maps to.
#[derive(Debug, Clone)]
pub struct RealizedPresentation {
    pub table: GroupTable,
    pub gen_elems: Vec<Elem>,
    /// Regular representation produced by the coset enumeration.
    pub perms: Vec<Perm>,
}

impl RealizedPresentation {
    /// Evaluates a word in the realized group.
    pub fn eval(&self, w: &[Letter]) -> Elem {
        w.iter().fold(0, |acc, l| {
            let g = self.gen_elems[l.gen as usize];
            let g = if l.inv { self.table.inv(g) } else { g };
            self.table.mul(acc, g)
        })
    }
}

/// Coset enumeration followed by closure into a multiplication table.
pub fn realize_presentation(
    p: &Presentation,
    coset_cap: usize,
) -> Result<RealizedPresentation, CosetError> {
    let perm_gens = coset_enumeration(p, coset_cap)?;
    let (table, perms) = group_from_permutations(&perm_gens)?;
    let index_of = |perm: &Perm| -> Result<Elem, PermError> {
        perms
            .iter()
            .position(|q| q == perm)
            .map(|i| i as Elem)
            .ok_or(PermError::TooLarge(perms.len()))
    };
    let mut gen_elems = Vec::with_capacity(p.generators.len());
    for g in &perm_gens.gens {
        gen_elems.push(index_of(g)?);
    }
    Ok(RealizedPresentation { table, gen_elems, perms })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn print_parse_roundtrip() {
        let text = "gens: x, y;\nrel: x^2 = 1;\nrel: y^8 = 1;\nrel: x*y*x^-1 = y^3;\n";
        let p = parse_presentation(text).unwrap();
        assert_eq!(p.generators, vec!["x", "y"]);
        assert_eq!(p.relators.len(), 3);
        let printed = p.print();
        let q = parse_presentation(&printed).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn relators_normalized_against_rhs() {
        let p = parse_presentation("gens: x, y; rel: x*y = y*x;").unwrap();
        // x y (y x)^-1 = x y x^-1 y^-1
        assert_eq!(
            p.relators[0],
            vec![
                Letter { gen: 0, inv: false },
                Letter { gen: 1, inv: false },
                Letter { gen: 0, inv: true },
                Letter { gen: 1, inv: true },
            ]
        );
    }
}
