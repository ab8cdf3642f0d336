//! Command-line front end: classification runs, group inspection,
//! tuple/orbit queries, catalog maintenance, and the published-script
//! reimplementations.

mod doc;
mod words;

use std::collections::HashMap;
use std::fmt::Display;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use sha2::{Digest, Sha256};

use prodquot_core::catalog::{Catalog, GroupId};
use prodquot_core::classify::{
    classify_mixed, classify_unmixed_with, dimension, unmixed_case, ClassifyOutcome, SurfaceKind,
    Witness,
};
use prodquot_core::group::{
    automorphisms_capped, index_two_subgroups, reduce_automorphism_generators,
    reduced_automorphism_generators, GroupTable,
};
use prodquot_core::moduli::{
    count_components_mixed, count_components_unmixed, OrbitError, DEFAULT_STATE_CAP,
};
use prodquot_core::perm::{group_from_permutations, PermGenSet};
use prodquot_core::presentation::{parse_presentation, realize_presentation};
use prodquot_core::signature::{enumerate_admissible_tuples, BranchSignature};
use prodquot_core::vectors::{exists_generating_vector, is_nonsplit_extension};

const EXIT_INTERNAL: i32 = 1;
const EXIT_INVALID: i32 = 2;
const EXIT_COVERAGE: i32 = 3;

const AUT_LIST_CAP: usize = 2_000_000;

#[derive(Parser)]
#[command(name = "prodquot", version, about = "Classification of surfaces with pg = q = 1 \
isogenous to a product of curves", max_term_width = 100)]
struct Cli {
    /// Catalog path; overrides the PRODQUOT_CATALOG environment variable.
    #[arg(long, global = true)]
    catalog: Option<PathBuf>,
    /// Output format for classification runs.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Cache directory: classification reruns with identical inputs are
    /// served from disk, byte-identical.
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    /// Fail (exit 3) when the catalog lacks a required order.
    #[arg(long, global = true)]
    require_exhaustive: bool,
    /// Worker threads for orbit counting; defaults to all cores.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

impl Format {
    fn tag(self) -> &'static str {
        match self {
            Format::Table => "table",
            Format::Json => "json",
            Format::Csv => "csv",
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a classification driver and emit the result document.
    Classify {
        #[command(subcommand)]
        which: ClassifyCmd,
    },
    /// Inspect or identify a single group.
    Group {
        #[command(subcommand)]
        which: GroupCmd,
    },
    /// Print the admissible branch-signature tuples with alpha below a cap.
    Tuples {
        #[arg(long)]
        alpha_cap: u32,
    },
    /// Count moduli components for one (group, type) combination.
    Orbits {
        #[arg(long)]
        order: u32,
        #[arg(long)]
        id: u32,
        /// Genus-zero periods, comma-separated (unmixed only).
        #[arg(long)]
        m: Option<String>,
        /// Genus-one periods, comma-separated.
        #[arg(long)]
        n: String,
        /// Count mixed components instead of unmixed ones.
        #[arg(long)]
        mixed: bool,
        #[arg(long)]
        state_cap: Option<usize>,
    },
    /// Validate or summarize a catalog file.
    Catalog {
        #[command(subcommand)]
        which: CatalogCmd,
    },
    /// Reimplementations of the published computer scripts 1 and 2.
    Script {
        #[arg(value_parser = clap::value_parser!(u32).range(1..=2))]
        number: u32,
    },
}

#[derive(Subcommand)]
enum ClassifyCmd {
    /// Surfaces where the group preserves the two curve factors.
    Unmixed {
        /// Fiber genus: 3, 4 or 5.
        #[arg(long)]
        gf: u32,
        /// Override the default alpha cap for this fiber genus.
        #[arg(long)]
        alpha_cap: Option<u32>,
        /// Also count moduli components per record (column N).
        #[arg(long)]
        with_orbits: bool,
        #[arg(long)]
        state_cap: Option<usize>,
    },
    /// Surfaces where some element exchanges the two factors.
    Mixed {
        #[arg(long)]
        with_orbits: bool,
        #[arg(long)]
        state_cap: Option<usize>,
    },
}

#[derive(Subcommand)]
enum GroupCmd {
    /// Invariants of a catalog group.
    Info {
        #[arg(long)]
        order: u32,
        #[arg(long)]
        id: u32,
    },
    /// Identify the isomorphism class of a presented or permutation group.
    #[command(group(ArgGroup::new("source").required(true)))]
    Identify {
        /// Presentation file (gens/rel grammar).
        #[arg(long, group = "source")]
        presentation: Option<PathBuf>,
        /// Permutation file: one generator per line, 1-based images.
        #[arg(long, group = "source")]
        perms: Option<PathBuf>,
        /// Coset limit for realizing presentations.
        #[arg(long, default_value_t = 200_000)]
        coset_cap: usize,
    },
}

#[derive(Subcommand)]
enum CatalogCmd {
    /// Full validation: parse, realize every entry, check ids and manifests.
    Validate { path: Option<PathBuf> },
    /// Orders, entry counts and the content hash.
    Info { path: Option<PathBuf> },
}

struct Failure {
    code: i32,
    msg: String,
}

fn invalid(msg: impl Display) -> Failure {
    Failure { code: EXIT_INVALID, msg: msg.to_string() }
}

fn internal(msg: impl Display) -> Failure {
    Failure { code: EXIT_INTERNAL, msg: msg.to_string() }
}

fn main() {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        rayon::ThreadPoolBuilder::new().num_threads(t).build_global().ok();
    }
    if let Err(f) = run(cli) {
        if !f.msg.is_empty() {
            eprintln!("error: {}", f.msg);
        }
        std::process::exit(f.code);
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.cmd {
        Cmd::Classify { ref which } => cmd_classify(&cli, which),
        Cmd::Group { ref which } => cmd_group(&cli, which),
        Cmd::Tuples { alpha_cap } => {
            for t in enumerate_admissible_tuples(alpha_cap) {
                println!("{t}");
            }
            Ok(())
        }
        Cmd::Orbits { order, id, ref m, ref n, mixed, state_cap } => {
            cmd_orbits(&cli, order, id, m.as_deref(), n, mixed, state_cap)
        }
        Cmd::Catalog { ref which } => cmd_catalog(&cli, which),
        Cmd::Script { number } => cmd_script(&cli, number),
    }
}

struct LoadedCatalog {
    catalog: Catalog,
    hash: String,
}

fn catalog_path(cli: &Cli) -> PathBuf {
    cli.catalog
        .clone()
        .or_else(|| std::env::var_os("PRODQUOT_CATALOG").map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("data/smallgroups.jsonl"))
}

fn load_catalog_at(path: &Path) -> Result<LoadedCatalog, Failure> {
    let bytes =
        std::fs::read(path).map_err(|e| invalid(format!("{}: {e}", path.display())))?;
    let hash = hex::encode(Sha256::digest(&bytes));
    let text = String::from_utf8(bytes)
        .map_err(|_| invalid(format!("{}: not valid UTF-8", path.display())))?;
    let catalog = Catalog::parse(&text)
        .map_err(|e| invalid(format!("{}: {e}", path.display())))?;
    Ok(LoadedCatalog { catalog, hash })
}

fn load_catalog(cli: &Cli) -> Result<LoadedCatalog, Failure> {
    load_catalog_at(&catalog_path(cli))
}

fn realize_entry(catalog: &Catalog, gid: GroupId) -> Result<GroupTable, Failure> {
    let entry = catalog
        .entry(gid)
        .ok_or_else(|| invalid(format!("no catalog entry {gid}")))?;
    entry.realize().map_err(|e| internal(format!("{gid} does not realize: {e}")))
}

fn parse_periods(s: &str) -> Result<Vec<u32>, Failure> {
    s.split(',')
        .map(|p| p.trim().parse::<u32>())
        .collect::<Result<Vec<u32>, _>>()
        .map_err(|_| invalid(format!("bad period list {s:?}; expected e.g. 2,4,12")))
}

// ---------------------------------------------------------------- classify

fn cmd_classify(cli: &Cli, which: &ClassifyCmd) -> Result<(), Failure> {
    let loaded = load_catalog(cli)?;
    if loaded.catalog.entries().next().is_none() {
        return Err(invalid("catalog has no entries"));
    }

    let (command, with_orbits, state_cap) = match *which {
        ClassifyCmd::Unmixed { gf, alpha_cap, with_orbits, state_cap } => {
            let mut c = format!("classify unmixed --gf {gf}");
            if let Some(a) = alpha_cap {
                c.push_str(&format!(" --alpha-cap {a}"));
            }
            if with_orbits {
                c.push_str(" --with-orbits");
            }
            (c, with_orbits, state_cap)
        }
        ClassifyCmd::Mixed { with_orbits, state_cap } => {
            let mut c = String::from("classify mixed");
            if with_orbits {
                c.push_str(" --with-orbits");
            }
            (c, with_orbits, state_cap)
        }
    };
    let cap = state_cap.unwrap_or(DEFAULT_STATE_CAP);

    let cache_key = hex::encode(Sha256::digest(
        format!(
            "{}|{}|{}|{}|{}|{}",
            doc::SCHEMA_VERSION,
            env!("CARGO_PKG_VERSION"),
            loaded.hash,
            command,
            cli.format.tag(),
            cap,
        )
        .as_bytes(),
    ));
    if let Some(dir) = &cli.cache {
        let out_file = dir.join(format!("{cache_key}.out"));
        if let Ok(cached) = std::fs::read_to_string(&out_file) {
            eprintln!("cache hit: {cache_key}");
            print!("{cached}");
            let partial = dir.join(format!("{cache_key}.partial")).exists();
            if partial {
                eprintln!("warning: catalog coverage incomplete (cached run)");
                if cli.require_exhaustive {
                    return Err(Failure { code: EXIT_COVERAGE, msg: String::new() });
                }
            }
            return Ok(());
        }
    }

    let start = Instant::now();
    let mut outcome = match *which {
        ClassifyCmd::Unmixed { gf, alpha_cap, .. } => {
            let mut case =
                unmixed_case(gf).ok_or_else(|| invalid("--gf must be 3, 4 or 5"))?;
            if let Some(a) = alpha_cap {
                case.alpha_cap = a;
            }
            classify_unmixed_with(&case, &loaded.catalog)
        }
        ClassifyCmd::Mixed { .. } => classify_mixed(&loaded.catalog),
    };
    let sensitivity = if with_orbits {
        fill_orbits(&mut outcome, &loaded.catalog, cap)?
    } else {
        HashMap::new()
    };
    let timing_ms = start.elapsed().as_millis() as u64;

    let document = doc::build_document(
        command,
        loaded.hash,
        &outcome,
        &sensitivity,
        &loaded.catalog,
        timing_ms,
    );
    let rendered = match cli.format {
        Format::Json => doc::render_json(&document),
        Format::Csv => doc::render_csv(&document),
        Format::Table => doc::render_table(&document),
    };

    if let Some(dir) = &cli.cache {
        std::fs::create_dir_all(dir)
            .map_err(|e| internal(format!("cache dir {}: {e}", dir.display())))?;
        std::fs::write(dir.join(format!("{cache_key}.out")), &rendered)
            .map_err(|e| internal(format!("cache write: {e}")))?;
        if !document.coverage.complete {
            std::fs::write(dir.join(format!("{cache_key}.partial")), b"")
                .map_err(|e| internal(format!("cache write: {e}")))?;
        }
    }
    print!("{rendered}");

    if !document.coverage.complete {
        eprintln!(
            "warning: catalog coverage incomplete for orders {:?}",
            document.coverage.missing_orders
        );
        if cli.require_exhaustive {
            return Err(Failure { code: EXIT_COVERAGE, msg: String::new() });
        }
    }
    Ok(())
}

fn fill_orbits(
    outcome: &mut ClassifyOutcome,
    catalog: &Catalog,
    cap: usize,
) -> Result<HashMap<usize, bool>, Failure> {
    let results: Result<Vec<(usize, u32, Option<bool>)>, Failure> = outcome
        .records
        .par_iter()
        .enumerate()
        .map(|(i, r)| {
            let g = realize_entry(catalog, r.group)?;
            match (&r.kind, &r.witness) {
                (SurfaceKind::Unmixed, _) => {
                    let m = r.m.as_ref().expect("unmixed records carry m");
                    let auts = reduced_automorphism_generators(&g);
                    let n = count_components_unmixed(&g, m, &r.n, &auts, cap)
                        .map_err(|e| internal(format!("{}: {e}", r.group)))?;
                    Ok((i, n, None))
                }
                (SurfaceKind::Mixed, Witness::Mixed { gcirc, .. }) => {
                    let rep = count_components_mixed(&g, gcirc, &r.n, cap)
                        .map_err(|e| internal(format!("{}: {e}", r.group)))?;
                    Ok((i, rep.components, Some(rep.aut_choice_sensitive)))
                }
                _ => unreachable!("witness shape matches record kind"),
            }
        })
        .collect();
    let mut sensitivity = HashMap::new();
    for (i, n, sensitive) in results? {
        outcome.records[i].components = Some(n);
        if let Some(s) = sensitive {
            sensitivity.insert(i, s);
        }
    }
    Ok(sensitivity)
}

// ------------------------------------------------------------------- group

fn cmd_group(cli: &Cli, which: &GroupCmd) -> Result<(), Failure> {
    match which {
        GroupCmd::Info { order, id } => {
            let loaded = load_catalog(cli)?;
            let gid = GroupId::new(*order, *id);
            let entry = loaded
                .catalog
                .entry(gid)
                .ok_or_else(|| invalid(format!("no catalog entry {gid}")))?;
            let g = entry.realize().map_err(|e| internal(format!("{gid}: {e}")))?;
            println!("{gid}");
            if let Some(name) = &entry.name {
                println!("name: {name}");
            }
            println!("order: {}", g.order());
            println!("n2: {}", g.count_elements_of_order(2));
            println!("center: {}", g.center().len());
            println!("derived: {}", g.derived_subgroup().len());
            println!("abelian: {}", if g.is_abelian() { "yes" } else { "no" });
            match automorphisms_capped(&g, 5_000_000) {
                Some(auts) => println!("automorphisms: {}", auts.len()),
                None => println!("automorphisms: more than 5000000"),
            }
            for periods in [vec![2u32], vec![2, 2], vec![3]] {
                let sig = BranchSignature::genus1(periods.clone())
                    .expect("valid genus-one signature");
                let yes = exists_generating_vector(&g, &sig).is_some();
                let shown: Vec<String> = periods.iter().map(|p| p.to_string()).collect();
                println!(
                    "(1|{})-generated: {}",
                    shown.join(","),
                    if yes { "yes" } else { "no" }
                );
            }
            Ok(())
        }
        GroupCmd::Identify { presentation, perms, coset_cap } => {
            let loaded = load_catalog(cli)?;
            let table = if let Some(path) = presentation {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| invalid(format!("{}: {e}", path.display())))?;
                let p = parse_presentation(&text)
                    .map_err(|e| invalid(format!("{}: {e}", path.display())))?;
                realize_presentation(&p, *coset_cap)
                    .map_err(|e| invalid(format!("{}: {e}", path.display())))?
                    .table
            } else {
                let path = perms.as_ref().expect("clap enforces one source");
                read_perm_group(path)?
            };
            let gid = loaded
                .catalog
                .identify(&table)
                .map_err(|e| invalid(format!("identification failed: {e}")))?;
            println!("order: {}", table.order());
            println!("id: ({},{})", gid.order, gid.id);
            Ok(())
        }
    }
}

/// One generator per line: whitespace-separated 1-based images.
fn read_perm_group(path: &Path) -> Result<GroupTable, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| invalid(format!("{}: {e}", path.display())))?;
    let mut gens: Vec<Vec<u16>> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let images: Result<Vec<u64>, _> =
            line.split_whitespace().map(|t| t.parse::<u64>()).collect();
        let images =
            images.map_err(|_| invalid(format!("line {}: bad image list", lineno + 1)))?;
        if images.iter().any(|&x| x == 0) {
            return Err(invalid(format!("line {}: images are 1-based", lineno + 1)));
        }
        gens.push(images.iter().map(|&x| (x - 1) as u16).collect());
    }
    if gens.is_empty() {
        return Err(invalid("no permutations in file"));
    }
    let degree = gens.iter().map(|g| g.len()).max().unwrap();
    // Pad shorter lines with fixed points so mixed degrees line up.
    for g in &mut gens {
        let have = g.len();
        g.extend(have as u16..degree as u16);
    }
    let set = PermGenSet::new(degree, gens).map_err(|e| invalid(e.to_string()))?;
    let (table, _) = group_from_permutations(&set).map_err(|e| invalid(e.to_string()))?;
    Ok(table)
}

// ------------------------------------------------------------------ orbits

fn cmd_orbits(
    cli: &Cli,
    order: u32,
    id: u32,
    m: Option<&str>,
    n: &str,
    mixed: bool,
    state_cap: Option<usize>,
) -> Result<(), Failure> {
    let loaded = load_catalog(cli)?;
    let gid = GroupId::new(order, id);
    let g = realize_entry(&loaded.catalog, gid)?;
    let cap = state_cap.unwrap_or(DEFAULT_STATE_CAP);
    let n_sig = BranchSignature::genus1(parse_periods(n)?)
        .map_err(|e| invalid(format!("--n: {e}")))?;
    let s = n_sig.num_periods();

    if mixed {
        if m.is_some() {
            return Err(invalid("--m does not apply to mixed orbits"));
        }
        let mut found = false;
        for gcirc in index_two_subgroups(&g) {
            if !is_nonsplit_extension(&g, &gcirc) {
                continue;
            }
            match count_components_mixed(&g, &gcirc, &n_sig, cap) {
                Ok(rep) => {
                    found = true;
                    let (st, _) = g.subgroup_table(&gcirc);
                    match loaded.catalog.identify(&st) {
                        Ok(sid) => println!("G° = {sid}"),
                        Err(_) => println!("G° of order {}", st.order()),
                    }
                    println!("N = {}", rep.components);
                    println!("D = {}", dimension(SurfaceKind::Mixed, 0, s));
                    if rep.aut_choice_sensitive {
                        println!(
                            "note: N counts orbits under automorphisms preserving G°; \
                             the unrestricted automorphism action merges differently"
                        );
                    }
                }
                Err(OrbitError::EmptyCandidateSet) => continue,
                Err(e) => return Err(internal(format!("{gid}: {e}"))),
            }
        }
        if !found {
            return Err(invalid(format!(
                "{gid} admits no mixed structure of type (1|{})",
                n_sig.exponent_form()
            )));
        }
        Ok(())
    } else {
        let m = m.ok_or_else(|| invalid("unmixed orbits need --m"))?;
        let m_sig = BranchSignature::genus0(parse_periods(m)?)
            .map_err(|e| invalid(format!("--m: {e}")))?;
        let r = m_sig.num_periods();
        let all = automorphisms_capped(&g, AUT_LIST_CAP)
            .ok_or_else(|| internal(format!("automorphism group exceeds {AUT_LIST_CAP}")))?;
        let auts = reduce_automorphism_generators(&g, &all);
        match count_components_unmixed(&g, &m_sig, &n_sig, &auts, cap) {
            Ok(count) => {
                println!("N = {count}");
                println!("D = {}", dimension(SurfaceKind::Unmixed, r, s));
                Ok(())
            }
            Err(OrbitError::EmptyCandidateSet) => Err(invalid(format!(
                "{gid} has no vector pair of type (0|{}) x (1|{}) with a free action",
                m_sig.exponent_form(),
                n_sig.exponent_form()
            ))),
            Err(e) => Err(internal(format!("{gid}: {e}"))),
        }
    }
}

// ----------------------------------------------------------------- catalog

fn cmd_catalog(cli: &Cli, which: &CatalogCmd) -> Result<(), Failure> {
    match which {
        CatalogCmd::Validate { path } => {
            let path = path.clone().unwrap_or_else(|| catalog_path(cli));
            let loaded = load_catalog_at(&path)?;
            let report = loaded.catalog.validate();
            println!("entries checked: {}", report.entries_checked);
            for order in loaded.catalog.orders() {
                let count = loaded.catalog.entries_of_order(order).count();
                let status = if loaded.catalog.is_complete(order) {
                    "complete"
                } else {
                    "incomplete"
                };
                println!("order {order}: {count} entries, {status}");
            }
            if report.problems.is_empty() {
                println!("no problems found");
                Ok(())
            } else {
                for p in &report.problems {
                    eprintln!("problem: {p}");
                }
                Err(invalid(format!("{} validation problems", report.problems.len())))
            }
        }
        CatalogCmd::Info { path } => {
            let path = path.clone().unwrap_or_else(|| catalog_path(cli));
            let loaded = load_catalog_at(&path)?;
            println!("catalog: {}", path.display());
            println!("sha256: {}", loaded.hash);
            println!("entries: {}", loaded.catalog.entries().count());
            let orders = loaded.catalog.orders();
            println!("orders: {}", orders.len());
            let complete = orders.iter().filter(|&&o| loaded.catalog.is_complete(o)).count();
            println!("complete orders: {complete}");
            Ok(())
        }
    }
}

// ----------------------------------------------------------------- scripts

/// Script 1 scans the order-24 classes for a nonabelian group with a
/// (0|2,4,12) generating pair; script 2 scans the order-36 classes for
/// groups with a normal subgroup of class G(18,3). Both print the same
/// id lists as the published runs.
fn cmd_script(cli: &Cli, number: u32) -> Result<(), Failure> {
    let loaded = load_catalog(cli)?;
    match number {
        1 => {
            if !loaded.catalog.is_complete(24) {
                return Err(invalid("script 1 needs the complete order-24 catalog"));
            }
            let sig = BranchSignature::genus0(vec![2, 4, 12]).expect("valid signature");
            let mut hits = Vec::new();
            for entry in loaded.catalog.entries_of_order(24) {
                let g = entry
                    .realize()
                    .map_err(|e| internal(format!("{}: {e}", entry.group_id)))?;
                if !g.is_abelian() && exists_generating_vector(&g, &sig).is_some() {
                    hits.push(format!("[24,{}]", entry.group_id.id));
                }
            }
            println!("{}", hits.join(" "));
            Ok(())
        }
        2 => {
            if !loaded.catalog.is_complete(36) || !loaded.catalog.is_complete(18) {
                return Err(invalid("script 2 needs the complete order-36 and order-18 catalogs"));
            }
            let target = GroupId::new(18, 3);
            let mut hits = Vec::new();
            for entry in loaded.catalog.entries_of_order(36) {
                let g = entry
                    .realize()
                    .map_err(|e| internal(format!("{}: {e}", entry.group_id)))?;
                let found = prodquot_core::group::normal_subgroups(&g).iter().any(|ns| {
                    if ns.len() != 18 {
                        return false;
                    }
                    let (st, _) = g.subgroup_table(ns);
                    loaded.catalog.identify(&st).map(|sid| sid == target).unwrap_or(false)
                });
                if found {
                    hits.push(format!("[36,{}]", entry.group_id.id));
                }
            }
            println!("{}", hits.join(" "));
            Ok(())
        }
        _ => unreachable!("clap range restricts the script number"),
    }
}
