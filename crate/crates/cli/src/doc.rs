//! Result document: the serializable run record emitted as JSON, CSV or
//! a text table. Field order is fixed so that parsing an emitted JSON
//! document and re-serializing it is byte-identical.

use std::collections::HashMap;

use prodquot_core::catalog::{Catalog, GroupId};
use prodquot_core::classify::{ClassifyOutcome, SurfaceRecord, Witness};
use prodquot_core::group::Elem;
use serde::{Deserialize, Serialize};

use crate::words::WordTable;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Serialize, Deserialize)]
pub struct Document {
    pub schema_version: u32,
    pub tool_version: String,
    pub command: String,
    pub catalog_hash: String,
    pub coverage: Coverage,
    pub timing_ms: u64,
    pub records: Vec<RecordOut>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct Coverage {
    pub complete: bool,
    pub missing_orders: Vec<u32>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct IdOut {
    pub order: u32,
    pub id: u32,
}

impl IdOut {
    fn of(g: GroupId) -> IdOut {
        IdOut { order: g.order, id: g.id }
    }

    fn label(&self) -> String {
        format!("G({},{})", self.order, self.id)
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct WitnessOut {
    pub v_branch: Vec<String>,
    pub v_handles: Vec<String>,
    pub w_branch: Vec<String>,
    pub w_handles: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct RecordOut {
    pub kind: String,
    pub g_f: u32,
    pub g_c: u32,
    pub g_alb: u32,
    pub group: IdOut,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subgroup: Option<IdOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<String>,
    pub n: String,
    pub chi: i64,
    pub k2: i64,
    pub dimension: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub components: Option<u32>,
    /// Present (and true) only when fixing the index-two subgroup gave a
    /// different component count than letting all automorphisms act.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub aut_choice_sensitive: Option<bool>,
    pub witness: WitnessOut,
}

/// Signature periods in the tuple form used throughout the output:
/// `"2,4,12"` (CSV quoting keeps the commas safe).
fn periods_string(periods: &[u32]) -> String {
    periods.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",")
}

pub fn build_document(
    command: String,
    catalog_hash: String,
    outcome: &ClassifyOutcome,
    sensitivity: &HashMap<usize, bool>,
    catalog: &Catalog,
    timing_ms: u64,
) -> Document {
    let mut word_tables: HashMap<GroupId, WordTable> = HashMap::new();
    let records = outcome
        .records
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let entry = catalog.entry(r.group).expect("record group is in the catalog");
            let words = word_tables.entry(r.group).or_insert_with(|| {
                let table = entry.realize().expect("record group realizes");
                WordTable::for_entry(entry, &table)
            });
            record_out(r, words, sensitivity.get(&i).copied())
        })
        .collect();
    Document {
        schema_version: SCHEMA_VERSION,
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        command,
        catalog_hash,
        coverage: Coverage {
            complete: outcome.missing_orders.is_empty(),
            missing_orders: outcome.missing_orders.clone(),
        },
        timing_ms,
        records,
    }
}

fn record_out(r: &SurfaceRecord, words: &WordTable, sensitive: Option<bool>) -> RecordOut {
    let witness = match &r.witness {
        Witness::Unmixed { v, w } => WitnessOut {
            v_branch: words.render(&v.branch),
            v_handles: words.render(&v.handles),
            w_branch: words.render(&w.branch),
            w_handles: words.render(&w.handles),
        },
        Witness::Mixed { v, embed, .. } => {
            let map = |slots: &[Elem]| -> Vec<String> {
                let in_g: Vec<Elem> = slots.iter().map(|&e| embed[e as usize]).collect();
                words.render(&in_g)
            };
            WitnessOut {
                v_branch: map(&v.branch),
                v_handles: map(&v.handles),
                w_branch: Vec::new(),
                w_handles: Vec::new(),
            }
        }
    };
    RecordOut {
        kind: match r.kind {
            prodquot_core::classify::SurfaceKind::Unmixed => "unmixed".into(),
            prodquot_core::classify::SurfaceKind::Mixed => "mixed".into(),
        },
        g_f: r.g_f,
        g_c: r.g_c,
        g_alb: r.g_alb,
        group: IdOut::of(r.group),
        subgroup: r.subgroup.map(IdOut::of),
        m: r.m.as_ref().map(|s| periods_string(s.periods())),
        n: periods_string(r.n.periods()),
        chi: r.chi,
        k2: r.k2,
        dimension: r.dimension,
        components: r.components,
        aut_choice_sensitive: sensitive.filter(|&s| s).map(|_| true),
        witness,
    }
}

pub fn render_json(doc: &Document) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("document serializes");
    s.push('\n');
    s
}

/// RFC-4180 style quoting: a field is quoted when it contains a comma,
/// quote or newline; embedded quotes are doubled.
fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn render_csv(doc: &Document) -> String {
    let mut out = String::new();
    out.push_str(
        "schema_version,kind,g_f,g_c,g_alb,order,id,subgroup_order,subgroup_id,m,n,chi,k2,\
         dimension,components,aut_choice_sensitive,witness_v,witness_w\n",
    );
    for r in &doc.records {
        let witness_v = [r.witness.v_branch.join(" "), r.witness.v_handles.join(" ")]
            .iter()
            .filter(|s| !s.is_empty())
            .cloned()
            .collect::<Vec<_>>()
            .join(" | ");
        let witness_w = [r.witness.w_branch.join(" "), r.witness.w_handles.join(" ")]
            .iter()
            .filter(|s| !s.is_empty())
            .cloned()
            .collect::<Vec<_>>()
            .join(" | ");
        let fields = [
            doc.schema_version.to_string(),
            r.kind.clone(),
            r.g_f.to_string(),
            r.g_c.to_string(),
            r.g_alb.to_string(),
            r.group.order.to_string(),
            r.group.id.to_string(),
            r.subgroup.as_ref().map(|s| s.order.to_string()).unwrap_or_default(),
            r.subgroup.as_ref().map(|s| s.id.to_string()).unwrap_or_default(),
            r.m.clone().unwrap_or_default(),
            r.n.clone(),
            r.chi.to_string(),
            r.k2.to_string(),
            r.dimension.to_string(),
            r.components.map(|c| c.to_string()).unwrap_or_default(),
            r.aut_choice_sensitive.map(|b| b.to_string()).unwrap_or_default(),
            witness_v,
            witness_w,
        ];
        let line: Vec<String> = fields.iter().map(|f| csv_field(f)).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

/// Exponent-compressed tuple, e.g. `(2^2,4^2)`.
fn exponent_form(periods_csv: &str) -> String {
    let parts: Vec<&str> = periods_csv.split(',').collect();
    let mut out: Vec<String> = Vec::new();
    let mut i = 0;
    while i < parts.len() {
        let mut j = i;
        while j < parts.len() && parts[j] == parts[i] {
            j += 1;
        }
        if j - i == 1 {
            out.push(parts[i].to_string());
        } else {
            out.push(format!("{}^{}", parts[i], j - i));
        }
        i = j;
    }
    format!("({})", out.join(","))
}

pub fn render_table(doc: &Document) -> String {
    let mut rows: Vec<[String; 6]> = Vec::new();
    for r in &doc.records {
        let group = match &r.subgroup {
            Some(s) => format!("{} > {}", r.group.label(), s.label()),
            None => r.group.label(),
        };
        let ty = match &r.m {
            Some(m) => exponent_form(m),
            None => exponent_form(&r.n),
        };
        let n_col = match (r.components, r.aut_choice_sensitive) {
            (Some(c), Some(true)) => format!("{c}*"),
            (Some(c), _) => c.to_string(),
            (None, _) => "-".into(),
        };
        rows.push([
            r.g_f.to_string(),
            r.g_c.to_string(),
            group,
            ty,
            r.dimension.to_string(),
            n_col,
        ]);
    }
    let header = ["gF", "gC", "group", "type", "D", "N"];
    let mut width = [0usize; 6];
    for c in 0..6 {
        width[c] = header[c].len();
        for row in &rows {
            width[c] = width[c].max(row[c].len());
        }
    }
    let mut out = String::new();
    let fmt_row = |cells: &[String; 6], width: &[usize; 6]| -> String {
        let mut line = String::new();
        for c in 0..6 {
            if c > 0 {
                line.push_str("  ");
            }
            if c == 2 || c == 3 {
                line.push_str(&format!("{:<w$}", cells[c], w = width[c]));
            } else {
                line.push_str(&format!("{:>w$}", cells[c], w = width[c]));
            }
        }
        line.trim_end().to_string()
    };
    let header_cells: [String; 6] = header.map(|h| h.to_string());
    out.push_str(&fmt_row(&header_cells, &width));
    out.push('\n');
    for row in &rows {
        out.push_str(&fmt_row(row, &width));
        out.push('\n');
    }
    if !doc.coverage.complete {
        out.push_str(&format!(
            "warning: catalog incomplete for orders {:?}; rows may be missing\n",
            doc.coverage.missing_orders
        ));
    }
    out.push_str(&format!("{} records\n", doc.records.len()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponent_form_compresses_runs() {
        assert_eq!(exponent_form("2,2,4,4"), "(2^2,4^2)");
        assert_eq!(exponent_form("2,4,12"), "(2,4,12)");
        assert_eq!(exponent_form("3"), "(3)");
    }

    #[test]
    fn csv_quotes_only_when_needed() {
        assert_eq!(csv_field("2,4,12"), "\"2,4,12\"");
        assert_eq!(csv_field("plain"), "plain");
        assert_eq!(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
    }
}
