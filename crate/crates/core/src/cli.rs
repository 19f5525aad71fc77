//! The `hg` command line.
//!
//! Every subcommand prints plain text by default and a JSON document with
//! `--json`. Exit status: 0 on success, 1 on a domain error or a failed
//! check, 2 on a usage error.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::catalog::{
    cartan_matrix, dual_finite_group_hypergroup, fundamental_quotient, parse_fusion_document, su2_parity_grading,
    uq_grading, LieKind, LieType,
};
use crate::classify::classify_quantum_subgroups;
use crate::error::{HgError, Result};
use crate::freeprod::free_product;
use crate::hypercore::{
    parse_hypergroup, serialize_hypergroup, verify_axioms, verify_axioms_window, AxiomReport,
    FiniteHypergroup, Hypergroup, Scope,
};
use crate::lowindex::{conjugacy_classes, dihedral_families, enumerate_subgroups, match_family, GroupPresentation};
use crate::morphism::{parse_table_map, stable_kernel, MultiMap};
use crate::structure::{
    coset_space, double_coset_hypergroup, generated_subhypergroup, subhypergroup, windowed_closure, Side,
    Subhypergroup,
};

/// Window used for lazy hypergroups when `--window` is not given.
pub const DEFAULT_WINDOW: usize = 6;

const CLOSURE_BUDGET: usize = 100_000;

#[derive(Debug, Parser)]
#[command(name = "hg", version, about = "Discrete hypergroups from fusion rules")]
pub struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

/// Where a hypergroup comes from.
#[derive(Debug, Clone, Args)]
pub struct Source {
    /// Built-in hypergroup: su2, uq, dual:S3, dual:C<n>, dual:C2xC2.
    #[arg(long, conflicts_with = "file", required_unless_present = "file")]
    pub catalog: Option<String>,
    /// A hypergroup document or a fusion document (JSON).
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// Size bound for lazy hypergroups.
    #[arg(long)]
    pub window: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Verify the hypergroup axioms.
    Check {
        #[command(flatten)]
        source: Source,
    },
    /// Product `x ⋆ y`.
    Product {
        #[command(flatten)]
        source: Source,
        x: String,
        y: String,
    },
    /// Subhypergroup generated by elements.
    Closure {
        #[command(flatten)]
        source: Source,
        #[arg(required = true)]
        elements: Vec<String>,
    },
    /// Coset space of a subhypergroup.
    Cosets {
        #[command(flatten)]
        source: Source,
        /// Subhypergroup members (finite) or generators (lazy, closed on the window).
        #[arg(long, value_delimiter = ',', required = true)]
        subgroup: Vec<String>,
        #[arg(long, default_value = "right")]
        side: Side,
    },
    /// Double coset hypergroup `K\H/K`.
    DoubleCosets {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_delimiter = ',', required = true)]
        subgroup: Vec<String>,
    },
    /// Stable kernel of a morphism.
    Stker {
        /// Finite morphism document `{ "source", "target", "map" }`.
        #[arg(long, conflicts_with = "grading", required_unless_present = "grading")]
        map: Option<PathBuf>,
        /// Built-in grading: su2-parity or uq.
        #[arg(long)]
        grading: Option<String>,
        #[arg(long)]
        window: Option<usize>,
    },
    /// Free product of copies of catalog hypergroups.
    Freeprod {
        /// Factor names; all factors must be of the same kind.
        #[arg(long, value_delimiter = ',', required = true)]
        factors: Vec<String>,
        #[arg(long)]
        window: Option<usize>,
        /// Two words to multiply; without them the axioms are checked on the window.
        words: Vec<String>,
    },
    /// Show a built-in hypergroup.
    Catalog {
        name: String,
        #[arg(long)]
        window: Option<usize>,
    },
    /// The fundamental group `P/Q` of a simple Lie type.
    Pq { kind: String, rank: usize },
    /// Subgroups of finite index of a free product of cyclic groups.
    Lowindex {
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 6)]
        max_index: usize,
        /// Group the records by conjugacy.
        #[arg(long)]
        conjugacy: bool,
    },
    /// Finite-index quantum subgroups of a free product of duals.
    Classify {
        /// Comma-separated Lie types, e.g. A1,A1.
        #[arg(long)]
        lie: String,
        #[arg(long, default_value_t = 6)]
        max_index: usize,
        /// Verify subhypergroup axioms and separation on this window.
        #[arg(long)]
        window: Option<usize>,
    },
}

/// Text and JSON renderings of a result; `ok` is false for failed checks.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub text: String,
    pub json: Value,
    pub ok: bool,
}

impl Outcome {
    fn ok(text: String, json: Value) -> Self {
        Outcome { text, json, ok: true }
    }

    pub fn render(&self, as_json: bool) -> String {
        if as_json {
            serde_json::to_string_pretty(&self.json).expect("JSON values serialize")
        } else {
            self.text.clone()
        }
    }
}

use crate::catalog::CatalogHypergroup as Loaded;

macro_rules! with_loaded {
    ($loaded:expr, $h:ident => $body:expr) => {
        match $loaded {
            Loaded::Finite($h) => $body,
            Loaded::Su2($h) => $body,
            Loaded::Uq($h) => $body,
        }
    };
}

fn load_catalog(name: &str) -> Result<Loaded> {
    crate::catalog::catalog_hypergroup(name)
}

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| HgError::schema(path.display().to_string(), e.to_string()))
}

/// A hypergroup document has `elements`; a fusion document has `fusion`.
fn finite_from_value(v: &Value) -> Result<FiniteHypergroup> {
    let text = v.to_string();
    if v.get("fusion").is_some() {
        dual_finite_group_hypergroup(&parse_fusion_document(&text)?)
    } else {
        parse_hypergroup(&text)
    }
}

fn load(source: &Source) -> Result<Loaded> {
    match (&source.catalog, &source.file) {
        (Some(name), _) => load_catalog(name),
        (None, Some(path)) => {
            let text = read_file(path)?;
            let v: Value = serde_json::from_str(&text).map_err(|e| HgError::schema("/", e.to_string()))?;
            Ok(Loaded::Finite(finite_from_value(&v)?))
        }
        (None, None) => Err(HgError::schema("--catalog", "a hypergroup source is required")),
    }
}

fn scope_for<H: Hypergroup>(h: &H, window: Option<usize>) -> Scope {
    if h.is_finite() {
        Scope::All
    } else {
        Scope::Window(window.unwrap_or(DEFAULT_WINDOW))
    }
}

fn parse_all<H: Hypergroup>(h: &H, xs: &[String]) -> Result<Vec<H::Elem>> {
    xs.iter()
        .map(|s| {
            let x = h.parse_element(s)?;
            h.check_member(&x)?;
            Ok(x)
        })
        .collect()
}

fn labels<H: Hypergroup>(h: &H, xs: impl IntoIterator<Item = H::Elem>) -> Vec<String> {
    xs.into_iter().map(|x| h.format_element(&x)).collect()
}

fn axiom_outcome(report: &AxiomReport) -> Outcome {
    let mut text = String::new();
    let verdict = if report.passed() { "pass" } else { "fail" };
    let _ = write!(text, "{verdict}: {} elements, {} triples", report.elements_checked, report.triples_checked);
    if let Some(w) = report.window {
        let _ = write!(text, " (window {w})");
    }
    for v in &report.violations {
        let _ = write!(text, "\n  {v:?}");
    }
    Outcome {
        text,
        json: serde_json::to_value(report).expect("report serializes"),
        ok: report.passed(),
    }
}

fn check(loaded: &Loaded, window: Option<usize>) -> Outcome {
    let w = window.unwrap_or(DEFAULT_WINDOW);
    axiom_outcome(&match loaded {
        Loaded::Finite(h) => verify_axioms(h),
        Loaded::Su2(h) => verify_axioms_window(h, w),
        Loaded::Uq(h) => verify_axioms_window(h, w),
    })
}

fn product<H: Hypergroup>(h: &H, x: &str, y: &str) -> Result<Outcome> {
    let xs = parse_all(h, &[x.to_string(), y.to_string()])?;
    let p = h.multiply(&xs[0], &xs[1])?;
    let out = labels(h, p);
    Ok(Outcome::ok(out.join(" "), json!(out)))
}

fn closure<H: Hypergroup>(h: &H, elements: &[String], window: Option<usize>) -> Result<Outcome> {
    let seed = parse_all(h, elements)?;
    let k = match scope_for(h, window) {
        Scope::All => generated_subhypergroup(h, seed, CLOSURE_BUDGET)?,
        Scope::Window(w) => windowed_closure(h, seed, w, CLOSURE_BUDGET)?,
    };
    let members = labels(h, k.member_set().cloned().unwrap_or_default());
    let window = (!h.is_finite()).then(|| window.unwrap_or(DEFAULT_WINDOW));
    Ok(Outcome::ok(
        members.join(" "),
        json!({ "members": members, "window": window }),
    ))
}

/// The subhypergroup named on the command line: a checked member set for
/// finite hypergroups, the windowed closure of the given elements for
/// lazy ones.
fn named_subgroup<H: Hypergroup>(h: &H, members: &[String], scope: Scope) -> Result<Subhypergroup<H::Elem>> {
    let xs = parse_all(h, members)?;
    match scope {
        Scope::All => subhypergroup(h, xs),
        Scope::Window(w) => windowed_closure(h, xs, w, CLOSURE_BUDGET),
    }
}

fn cosets<H: Hypergroup>(h: &H, members: &[String], side: Side, window: Option<usize>) -> Result<Outcome> {
    let scope = scope_for(h, window);
    let k = named_subgroup(h, members, scope)?;
    let part = coset_space(h, &k, side, scope)?;
    let text = part
        .blocks
        .iter()
        .map(|b| format!("{{{}}}", labels(h, b.iter().cloned()).join(", ")))
        .collect::<Vec<_>>()
        .join("\n");
    Ok(Outcome::ok(format!("{} {side} cosets\n{text}", part.count()), part.to_json(h)))
}

fn double_cosets<H: Hypergroup>(h: &H, members: &[String], window: Option<usize>) -> Result<Outcome> {
    let scope = scope_for(h, window);
    let k = named_subgroup(h, members, scope)?;
    let q = double_coset_hypergroup(h, &k, scope)?;
    let mut text = String::new();
    let mut classes = Vec::new();
    for (i, c) in q.classes.iter().enumerate() {
        let members = labels(h, c.iter().cloned());
        let _ = writeln!(text, "[{}] = {{{}}}", q.label(i), members.join(", "));
        classes.push(json!({ "label": q.label(i), "members": members }));
    }
    let mut products = serde_json::Map::new();
    for (&(a, b), p) in &q.products {
        let out: Vec<&str> = p.iter().map(|&c| q.label(c)).collect();
        let _ = writeln!(text, "[{}] * [{}] = {}", q.label(a), q.label(b), out.join(" "));
        products.insert(format!("{}|{}", q.label(a), q.label(b)), json!(out));
    }
    Ok(Outcome::ok(
        text.trim_end().to_string(),
        json!({
            "classes": classes,
            "products": products,
            "complete": q.is_complete(),
            "escaped": q.escaped,
            "window": q.window,
        }),
    ))
}

fn stker_report<M>(phi: &M, window: Option<usize>) -> Result<Outcome>
where
    M: MultiMap + Clone + Send + Sync + 'static,
{
    let h = phi.source();
    let scope = scope_for(h, window);
    let k = stable_kernel(phi, scope)?;
    let elems = h.scope_elements(scope)?;
    let members = labels(h, k.kernel.members_in(h, &elems));
    let mut text = members.join(" ");
    if let Some(w) = scope.bound().filter(|_| !h.is_finite()) {
        let _ = write!(text, "\n(members of size at most {w}; method {:?})", k.method);
    }
    Ok(Outcome::ok(
        text,
        json!({
            "members": members,
            "method": k.method,
            "trace": k.trace,
            "window": k.window.or((!h.is_finite()).then(|| scope.bound()).flatten()),
        }),
    ))
}

fn resolve_ref(v: &Value, path: &str) -> Result<FiniteHypergroup> {
    match v {
        Value::String(name) => match load_catalog(name)? {
            Loaded::Finite(h) => Ok(h),
            _ => Err(HgError::schema(path, format!("`{name}` is not a finite hypergroup"))),
        },
        Value::Object(_) => finite_from_value(v),
        _ => Err(HgError::schema(path, "expected a catalog name or a hypergroup document")),
    }
}

fn stker(map: Option<&Path>, grading: Option<&str>, window: Option<usize>) -> Result<Outcome> {
    match (map, grading) {
        (Some(path), _) => stker_report(&parse_table_map(&read_file(path)?, resolve_ref)?, window),
        (None, Some("su2-parity")) => stker_report(&su2_parity_grading(), window),
        (None, Some("uq")) => stker_report(&uq_grading(), window),
        (None, Some(other)) => Err(HgError::UnknownElement(other.to_string())),
        (None, None) => Err(HgError::schema("--map", "a morphism is required")),
    }
}

fn freeprod_with<H>(factors: Vec<H>, window: Option<usize>, words: &[String]) -> Result<Outcome>
where
    H: Hypergroup + Sync,
{
    let fp = free_product(factors)?;
    match words {
        [] => Ok(axiom_outcome(&verify_axioms_window(&fp, window.unwrap_or(4)))),
        [x, y] => product(&fp, x, y),
        _ => Err(HgError::schema("words", "expected zero or two words")),
    }
}

fn freeprod(names: &[String], window: Option<usize>, words: &[String]) -> Result<Outcome> {
    let loaded = names.iter().map(|n| load_catalog(n)).collect::<Result<Vec<_>>>()?;
    let mixed = || HgError::schema("--factors", "factors must all be finite, all su2, or all uq");
    match loaded.first() {
        Some(Loaded::Finite(_)) => {
            let fs = loaded
                .into_iter()
                .map(|l| if let Loaded::Finite(h) = l { Ok(h) } else { Err(mixed()) })
                .collect::<Result<Vec<_>>>()?;
            freeprod_with(fs, window, words)
        }
        Some(Loaded::Su2(_)) => {
            let fs = loaded
                .into_iter()
                .map(|l| if let Loaded::Su2(h) = l { Ok(h) } else { Err(mixed()) })
                .collect::<Result<Vec<_>>>()?;
            freeprod_with(fs, window, words)
        }
        Some(Loaded::Uq(_)) => {
            let fs = loaded
                .into_iter()
                .map(|l| if let Loaded::Uq(h) = l { Ok(h) } else { Err(mixed()) })
                .collect::<Result<Vec<_>>>()?;
            freeprod_with(fs, window, words)
        }
        None => Err(HgError::EmptyFactorList),
    }
}

fn catalog(name: &str, window: Option<usize>) -> Result<Outcome> {
    let loaded = load_catalog(name)?;
    if let Loaded::Finite(h) = &loaded {
        let mut text = String::new();
        for x in h.labels() {
            for y in h.labels() {
                let _ = writeln!(text, "{x} * {y} = {}", labels(h, h.product(x, y)).join(" "));
            }
        }
        let json: Value = serde_json::from_str(&serialize_hypergroup(h)).expect("serialized document is JSON");
        return Ok(Outcome::ok(text.trim_end().to_string(), json));
    }
    with_loaded!(&loaded, h => {
        let w = window.unwrap_or(4);
        let elems = h.elements_up_to(w);
        let mut text = format!("{name}: elements of size at most {w}\n");
        let mut rows = Vec::new();
        for x in &elems {
            let inv = h.format_element(&h.inverse_of(x));
            let _ = writeln!(text, "{}  (inverse {inv}, size {})", h.format_element(x), h.size(x));
            rows.push(json!({ "element": h.format_element(x), "inverse": inv, "size": h.size(x) }));
        }
        Ok(Outcome::ok(text.trim_end().to_string(), json!({ "name": name, "window": w, "elements": rows })))
    })
}

fn pq(kind: &str, rank: usize) -> Result<Outcome> {
    let kind: LieKind = kind.parse()?;
    let t = LieType::new(kind, rank)?;
    let q = fundamental_quotient(kind, rank)?;
    Ok(Outcome::ok(
        q.to_string(),
        json!({
            "type": t.to_string(),
            "cartan": cartan_matrix(kind, rank)?,
            "invariants": q.factors,
            "order": q.order(),
            "group": q.to_string(),
        }),
    ))
}

fn action_text(p: &GroupPresentation, action: &Value) -> String {
    p.generators
        .iter()
        .map(|g| format!("{}={}", g.name, action[&g.name]))
        .collect::<Vec<_>>()
        .join(" ")
}

fn lowindex(group: &str, max_index: usize, conjugacy: bool) -> Result<Outcome> {
    let p: GroupPresentation = group.parse()?;
    let records = enumerate_subgroups(&p, max_index)?;
    let families = (p.name() == "C2*C2").then(|| match_family(&p, &records, &dihedral_families(max_index), 2 * max_index));
    let mut text = format!("{} subgroups of {} with index at most {max_index}", records.len(), p.name());
    let mut rows = Vec::new();
    for (i, r) in records.iter().enumerate() {
        let action = r.action_json(&p);
        let family = families.as_ref().and_then(|f| f.family_of(i));
        let _ = write!(text, "\nindex {}  {}", r.index, action_text(&p, &action));
        if let Some(f) = family {
            let _ = write!(text, "  {f}");
        }
        rows.push(json!({ "index": r.index, "action": action }));
    }
    let mut json = json!({ "group": p.name(), "max_index": max_index, "records": rows });
    if conjugacy {
        let classes = conjugacy_classes(&records);
        let _ = write!(text, "\n{} conjugacy classes", classes.len());
        for c in &classes {
            let members: Vec<String> = c.iter().map(|i| (i + 1).to_string()).collect();
            let _ = write!(text, "\n  index {}: records {}", records[c[0]].index, members.join(", "));
        }
        json["conjugacy_classes"] = json!(classes);
    }
    if let Some(f) = families {
        if !f.unmatched_records.is_empty() {
            let _ = write!(text, "\nrecords outside the listed families: {}", f.unmatched_records.len());
        }
        json["families"] = serde_json::to_value(&f).expect("report serializes");
    }
    Ok(Outcome::ok(text, json))
}

fn classify(lie: &str, max_index: usize, window: Option<usize>) -> Result<Outcome> {
    let types = crate::catalog::parse_lie_types(lie)?;
    let c = classify_quantum_subgroups(&types, max_index)?;
    let p = &c.grading.presentation;
    let mut text = format!("grading group {} ({})", c.grading_group(), c.grading.provenance());
    if c.grading.group_level_only() {
        text.push_str("\ngroup-level only: no fusion data for some factor");
    }
    for r in &c.records {
        let _ = write!(text, "\nindex {}  {}", r.index, action_text(p, &r.group_subgroup.action_json(p)));
        if let Some(f) = &r.family_match {
            let _ = write!(text, "  {f}");
        }
    }
    let mut json = c.to_json();
    let mut ok = true;
    if let Some(w) = window.filter(|_| !c.grading.group_level_only()) {
        let axioms = c.check_windows(w);
        let sep = c.separation(2 * max_index.max(w / 2));
        let _ = write!(
            text,
            "\nsubhypergroup axioms on window {w}: {}\nseparation on window {}: {} of {} pairs separated",
            if axioms.is_ok() { "pass" } else { "fail" },
            sep.window,
            sep.pairs - sep.unseparated.len(),
            sep.pairs
        );
        ok = axioms.is_ok() && sep.unseparated.is_empty();
        json["window_checks"] = json!({
            "window": w,
            "axioms": axioms.as_ref().map(|_| "pass".to_string()).unwrap_or_else(|e| e.to_string()),
            "separation": sep,
        });
    }
    Ok(Outcome { text, json, ok })
}

/// Runs a parsed command.
pub fn execute(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Check { source } => {
            Ok(check(&load(source)?, source.window))
        }
        Command::Product { source, x, y } => {
            let loaded = load(source)?;
            with_loaded!(&loaded, h => product(h, x, y))
        }
        Command::Closure { source, elements } => {
            let loaded = load(source)?;
            with_loaded!(&loaded, h => closure(h, elements, source.window))
        }
        Command::Cosets { source, subgroup, side } => {
            let loaded = load(source)?;
            with_loaded!(&loaded, h => cosets(h, subgroup, *side, source.window))
        }
        Command::DoubleCosets { source, subgroup } => {
            let loaded = load(source)?;
            with_loaded!(&loaded, h => double_cosets(h, subgroup, source.window))
        }
        Command::Stker { map, grading, window } => stker(map.as_deref(), grading.as_deref(), *window),
        Command::Freeprod { factors, window, words } => freeprod(factors, *window, words),
        Command::Catalog { name, window } => catalog(name, *window),
        Command::Pq { kind, rank } => pq(kind, *rank),
        Command::Lowindex { group, max_index, conjugacy } => lowindex(group, *max_index, *conjugacy),
        Command::Classify { lie, max_index, window } => classify(lie, *max_index, *window),
    }
}

/// Parses `argv`, runs the command, and returns the exit status with the
/// text for standard output and standard error.
pub fn run<I, T>(argv: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            return if code == 0 { (0, text, String::new()) } else { (2, String::new(), text) };
        }
    };
    match execute(&cli) {
        Ok(out) => (i32::from(!out.ok), out.render(cli.json) + "\n", String::new()),
        Err(e) => {
            let msg = if cli.json {
                json!({ "error": e.to_string() }).to_string()
            } else {
                format!("error: {e}")
            };
            (1, String::new(), msg + "\n")
        }
    }
}

/// Entry point of the `hg` binary.
pub fn cli_main<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let (code, out, err) = run(argv);
    print!("{out}");
    eprint!("{err}");
    code
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hg(args: &str) -> (i32, String, String) {
        run(std::iter::once("hg").chain(args.split_whitespace()))
    }

    #[test]
    fn documented_invocations() {
        assert_eq!(hg("pq A 2"), (0, "Z/3\n".into(), String::new()));
        assert_eq!(hg("product --catalog su2 1 1").1, "0 2\n");
        let (code, out, _) = hg("classify --lie A1,A1 --max-index 2 --json");
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["grading_group"], "C2*C2");
        assert_eq!(v["records"].as_array().unwrap().len(), 4);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(hg("frobnicate").0, 2);
        assert_eq!(hg("product --catalog su2 1").0, 2);
        assert_eq!(hg("product --catalog nope 1 1").0, 1);
        assert_eq!(hg("pq B 1").0, 1);
        assert_eq!(hg("--help").0, 0);
    }

    #[test]
    fn subcommands() {
        assert_eq!(hg("check --catalog dual:S3").0, 0);
        assert_eq!(hg("check --catalog su2 --window 4").0, 0);
        assert_eq!(hg("closure --catalog su2 --window 6 2").1, "0 2 4 6\n");
        let (_, out, _) = hg("cosets --catalog dual:S3 --subgroup triv,sgn");
        assert!(out.starts_with("2 right cosets"));
        let (code, out, _) = hg("double-cosets --catalog uq --window 3 --subgroup [1][-1]");
        assert_eq!(code, 0, "{out}");
        let (_, out, _) = hg("stker --grading su2-parity --window 6");
        assert!(out.starts_with("0 2 4 6"));
        assert_eq!(hg("freeprod --factors su2,su2 --window 3").0, 0);
        assert_eq!(hg(r#"freeprod --factors su2,su2 [["0","1"]] [["0","1"]]"#).1, r#"[] [["0","2"]]"#.to_string() + "\n");
        assert!(hg("catalog dual:C4").1.contains("1 * 3 = 0"));
        assert!(hg("lowindex --group C2*C2 --max-index 3 --conjugacy").1.starts_with("7 subgroups"));
        let (code, out, _) = hg("classify --lie A1 --max-index 2 --window 4");
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("separation"));
    }
}
