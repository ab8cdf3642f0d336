//! Rendering group elements as words over a catalog entry's generators,
//! so emitted witnesses can be re-checked against the entry alone.

use prodquot_core::catalog::CatalogEntry;
use prodquot_core::group::{Elem, GroupTable};
use prodquot_core::perm::group_from_permutations;

/// Shortest-word table for one realized entry: `words[e]` multiplies out
/// to element `e` in the realization order used by `CatalogEntry::realize`.
pub struct WordTable {
    words: Vec<String>,
}

impl WordTable {
    pub fn for_entry(entry: &CatalogEntry, table: &GroupTable) -> WordTable {
        let (check, elems) =
            group_from_permutations(&entry.perm_gens).expect("entry realized before");
        assert_eq!(check.order(), table.order(), "same realization");
        let gen_elems: Vec<Elem> = entry
            .perm_gens
            .gens
            .iter()
            .map(|p| {
                elems.iter().position(|q| q == p).expect("generator is in its own closure")
                    as Elem
            })
            .collect();
        WordTable { words: shortest_words(table, &gen_elems) }
    }

    pub fn word(&self, e: Elem) -> &str {
        &self.words[e as usize]
    }

    pub fn render(&self, elems: &[Elem]) -> Vec<String> {
        elems.iter().map(|&e| self.word(e).to_string()).collect()
    }
}

/// BFS from the identity over right multiplication; generator `i` is
/// written `g{i+1}`, repeated letters compress to powers, the identity
/// prints as `1`.
fn shortest_words(g: &GroupTable, gen_elems: &[Elem]) -> Vec<String> {
    let n = g.order();
    let mut parent: Vec<Option<(Elem, usize)>> = vec![None; n];
    let mut seen = vec![false; n];
    let mut queue = std::collections::VecDeque::new();
    seen[g.identity() as usize] = true;
    queue.push_back(g.identity());
    while let Some(cur) = queue.pop_front() {
        for (i, &ge) in gen_elems.iter().enumerate() {
            let next = g.mul(cur, ge);
            if !seen[next as usize] {
                seen[next as usize] = true;
                parent[next as usize] = Some((cur, i));
                queue.push_back(next);
            }
        }
    }
    (0..n as Elem)
        .map(|e| {
            assert!(seen[e as usize], "generators generate the group");
            let mut letters: Vec<usize> = Vec::new();
            let mut cur = e;
            while let Some((prev, i)) = parent[cur as usize] {
                letters.push(i);
                cur = prev;
            }
            letters.reverse();
            if letters.is_empty() {
                return "1".to_string();
            }
            let mut parts: Vec<String> = Vec::new();
            let mut k = 0;
            while k < letters.len() {
                let mut j = k;
                while j < letters.len() && letters[j] == letters[k] {
                    j += 1;
                }
                let run = j - k;
                if run == 1 {
                    parts.push(format!("g{}", letters[k] + 1));
                } else {
                    parts.push(format!("g{}^{}", letters[k] + 1, run));
                }
                k = j;
            }
            parts.join("*")
        })
        .collect()
}
