//! Output reports. The machine form is the serde serialization of
//! [`OutputReport`]; the pretty form is rendered from the same values.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::Serialize;

use crate::json::JInt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Invalid,
}

#[derive(Debug, Clone, Serialize)]
pub struct InputRef {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub sha256: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct OutputReport {
    pub schema: u64,
    pub command: &'static str,
    pub inputs: Vec<InputRef>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<CommandResult>,
    pub warnings: Vec<String>,
}

impl OutputReport {
    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Ok => 0,
            Status::Invalid => 1,
        }
    }

    pub fn to_machine(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum CommandResult {
    Recover(RecoverResult),
    Classify(ClassifyResult),
    Compare(CompareResult),
    Validate(ValidateResult),
    Polytope(PolytopeResult),
}

#[derive(Debug, Clone, Serialize)]
pub struct FactorOut {
    #[serde(rename = "type")]
    pub kind: String,
    pub rank: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct GroupOut {
    pub factors: Vec<FactorOut>,
    pub central_rank: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct DivisorOut {
    pub phi: Vec<String>,
    pub removed: Vec<usize>,
}

/// A document in the input schema, so recovered data can be read back.
#[derive(Debug, Clone, Serialize)]
pub struct DatumOut {
    pub schema: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub group: GroupOut,
    pub monoid_generators: Vec<Vec<JInt>>,
    pub spherical_roots: Vec<Vec<JInt>>,
    pub divisors: Vec<DivisorOut>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DivisorRow {
    pub id: usize,
    /// Values on the lattice basis.
    pub phi_lattice: Vec<String>,
    /// A covector on weight coordinates restricting to the valuation.
    pub phi: Vec<String>,
    /// Removed simple roots, numbered from 1.
    pub removed: Vec<usize>,
    pub stabilizer: String,
    pub source: String,
    pub hidden: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct NodeRow {
    pub subset: Vec<usize>,
    pub levi: Vec<String>,
    pub invertible_rank: usize,
    pub case: String,
    pub found: Vec<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RecoverResult {
    pub lattice_basis: Vec<Vec<JInt>>,
    pub minimal_generators: Vec<Vec<JInt>>,
    pub pi_a: Vec<String>,
    pub root_types: BTreeMap<String, String>,
    pub divisors: Vec<DivisorRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<NodeRow>>,
    pub datum: DatumOut,
}

#[derive(Debug, Clone, Serialize)]
pub struct RootRow {
    pub weight: Vec<JInt>,
    pub coefficients: Vec<String>,
    pub form: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassifyResult {
    pub lattice_basis: Vec<Vec<JInt>>,
    pub saturated: bool,
    pub minimal_generators: Vec<Vec<JInt>>,
    pub invertible_rank: usize,
    pub pi_a: Vec<String>,
    pub root_types: BTreeMap<String, String>,
    pub partners: BTreeMap<String, String>,
    pub spherical_roots: Vec<RootRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exceptional_triple: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CompareResult {
    pub same_group: bool,
    pub monoids_equal: bool,
    pub lattices_equal: bool,
    pub spherical_roots_equal: bool,
    pub x_plus_equivalent: bool,
    pub x_plus_psi_equivalent: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub recovered_identical: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub interpretation: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ViolationRow {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub root: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub divisor: Option<usize>,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ValidateResult {
    pub passed: bool,
    pub monoid_checked: bool,
    pub divisor_count: usize,
    pub violations: Vec<ViolationRow>,
    pub hidden_divisors: Vec<usize>,
    pub hidden_spherical_roots: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exceptional_triple: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PolytopeResult {
    pub divisor_source: String,
    pub empty: bool,
    pub bounded: bool,
    pub vertices: Vec<Vec<String>>,
    pub rays: Vec<Vec<JInt>>,
}

/// `G`, `P_∅ (=B)` or `P_Π∖{a1,a3}` for the parabolic removing `removed` from `active`.
pub fn stabilizer_label(removed: &BTreeSet<usize>, active: &BTreeSet<usize>) -> String {
    if removed.is_empty() {
        "G".into()
    } else if removed == active {
        "P_∅ (=B)".into()
    } else {
        let names: Vec<String> = removed.iter().map(|r| format!("a{}", r + 1)).collect();
        format!("P_Π∖{{{}}}", names.join(","))
    }
}

fn tuple<T: ToString>(v: &[T]) -> String {
    format!("({})", v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "))
}

fn set<T: ToString>(v: &[T]) -> String {
    format!("{{{}}}", v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "))
}

fn yes(b: bool) -> &'static str {
    if b {
        "YES"
    } else {
        "NO"
    }
}

fn table(out: &mut String, header: &[&str], rows: &[Vec<String>]) {
    let mut w: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (i, c) in r.iter().enumerate() {
            w[i] = w[i].max(c.chars().count());
        }
    }
    let line = |cells: Vec<String>| -> String {
        let padded: Vec<String> = cells.iter().enumerate().map(|(i, c)| format!("{}{}", c, " ".repeat(w[i] - c.chars().count()))).collect();
        format!(" {}", padded.join(" | ")).trim_end().to_string()
    };
    let _ = writeln!(out, "{}", line(header.iter().map(|h| h.to_string()).collect()));
    let _ = writeln!(out, "-{}", w.iter().map(|n| "-".repeat(*n)).collect::<Vec<_>>().join("-+-"));
    for r in rows {
        let _ = writeln!(out, "{}", line(r.clone()));
    }
}

fn types_line(t: &BTreeMap<String, String>) -> String {
    if t.is_empty() {
        return "(none)".into();
    }
    // sort numerically by root index
    let mut v: Vec<(&String, &String)> = t.iter().collect();
    v.sort_by_key(|(k, _)| k[1..].parse::<usize>().unwrap_or(0));
    v.iter().map(|(k, t)| format!("{}={}", k, t)).collect::<Vec<_>>().join(" ")
}

impl OutputReport {
    pub fn to_pretty(&self) -> String {
        let mut out = String::new();
        let names: Vec<String> = self
            .inputs
            .iter()
            .map(|i| format!("{} (sha256 {})", i.name.clone().unwrap_or_else(|| "unnamed".into()), &i.sha256[..12]))
            .collect();
        let _ = writeln!(out, "{}: {}", self.command, names.join(" vs "));
        if let Some(e) = &self.error {
            let _ = writeln!(out, "error: {}", e);
        }
        match &self.result {
            Some(CommandResult::Recover(r)) => render_recover(&mut out, r),
            Some(CommandResult::Classify(r)) => render_classify(&mut out, r),
            Some(CommandResult::Compare(r)) => render_compare(&mut out, r),
            Some(CommandResult::Validate(r)) => render_validate(&mut out, r),
            Some(CommandResult::Polytope(r)) => render_polytope(&mut out, r),
            None => {}
        }
        for w in &self.warnings {
            let _ = writeln!(out, "warning: {}", w);
        }
        let _ = writeln!(out, "status: {}", if self.status == Status::Ok { "ok" } else { "invalid" });
        out
    }
}

fn render_lattice(out: &mut String, basis: &[Vec<JInt>]) {
    let b: Vec<String> = basis.iter().map(|v| tuple(v)).collect();
    let _ = writeln!(out, "lattice X: rank {}, basis {}", basis.len(), if b.is_empty() { "(empty)".into() } else { b.join(" ") });
}

fn render_recover(out: &mut String, r: &RecoverResult) {
    render_lattice(out, &r.lattice_basis);
    let _ = writeln!(out, "minimal generators: {}", r.minimal_generators.iter().map(|v| tuple(v)).collect::<Vec<_>>().join(" "));
    let _ = writeln!(out, "Pi^a: {}", set(&r.pi_a));
    let _ = writeln!(out, "root types: {}", types_line(&r.root_types));
    let rows: Vec<Vec<String>> = r
        .divisors
        .iter()
        .map(|d| {
            vec![
                format!("D{}", d.id),
                tuple(&d.phi_lattice),
                tuple(&d.phi),
                d.stabilizer.clone(),
                d.source.clone(),
                if d.hidden { "yes".into() } else { "no".into() },
            ]
        })
        .collect();
    let _ = writeln!(out, "{} B-divisor(s):", r.divisors.len());
    table(out, &["id", "phi on X", "phi covector", "G_D", "source", "hidden"], &rows);
    if let Some(trace) = &r.trace {
        let _ = writeln!(out, "recursion nodes:");
        for n in trace {
            let found: Vec<String> = n.found.iter().map(|i| format!("D{}", i)).collect();
            let _ = writeln!(
                out,
                "  I = {}: levi {}, invertible rank {}, case {}{}",
                set(&n.subset),
                set(&n.levi),
                n.invertible_rank,
                n.case,
                if found.is_empty() { String::new() } else { format!(", found {}", found.join(" ")) }
            );
        }
    }
}

fn render_classify(out: &mut String, r: &ClassifyResult) {
    render_lattice(out, &r.lattice_basis);
    let _ = writeln!(out, "saturated: {}", yes(r.saturated));
    let _ = writeln!(out, "minimal generators: {}", r.minimal_generators.iter().map(|v| tuple(v)).collect::<Vec<_>>().join(" "));
    let _ = writeln!(out, "invertible rank: {}", r.invertible_rank);
    let _ = writeln!(out, "Pi^a: {}", set(&r.pi_a));
    let _ = writeln!(out, "root types: {}", types_line(&r.root_types));
    for (a, b) in &r.partners {
        if a < b {
            let _ = writeln!(out, "partners: {} ~ {}", a, b);
        }
    }
    let rows: Vec<Vec<String>> = r.spherical_roots.iter().map(|s| vec![tuple(&s.weight), tuple(&s.coefficients), s.form.clone()]).collect();
    let _ = writeln!(out, "{} spherical root(s):", rows.len());
    table(out, &["weight", "root coefficients", "form"], &rows);
    if let Some(t) = &r.exceptional_triple {
        let _ = writeln!(out, "note: {}", t);
    }
}

fn render_compare(out: &mut String, r: &CompareResult) {
    let lines = [
        ("same group", r.same_group),
        ("weight monoids equal", r.monoids_equal),
        ("lattices equal", r.lattices_equal),
        ("spherical roots equal", r.spherical_roots_equal),
        ("X+-equivalent", r.x_plus_equivalent),
        ("X+Psi-equivalent", r.x_plus_psi_equivalent),
    ];
    for (k, v) in lines {
        let _ = writeln!(out, "{:<24}{}", format!("{}:", k), yes(v));
    }
    if let Some(b) = r.recovered_identical {
        let _ = writeln!(out, "{:<24}{}", "recovered data equal:", yes(b));
    }
    if let Some(i) = &r.interpretation {
        let _ = writeln!(out, "{}", i);
    }
}

fn render_validate(out: &mut String, r: &ValidateResult) {
    let _ = writeln!(out, "divisors: {}", r.divisor_count);
    let _ = writeln!(out, "monoid half-space check: {}", if r.monoid_checked { "run" } else { "skipped (monoid not saturated)" });
    if r.violations.is_empty() {
        let _ = writeln!(out, "all checks passed");
    } else {
        let rows: Vec<Vec<String>> = r
            .violations
            .iter()
            .map(|v| vec![v.kind.clone(), v.root.clone().unwrap_or_default(), v.divisor.map(|d| format!("D{}", d)).unwrap_or_default(), v.detail.clone()])
            .collect();
        table(out, &["violation", "root", "divisor", "detail"], &rows);
    }
    if !r.hidden_spherical_roots.is_empty() {
        let _ = writeln!(out, "hidden spherical roots (by position): {}", set(&r.hidden_spherical_roots.iter().map(|i| i + 1).collect::<Vec<_>>()));
    }
    if let Some(t) = &r.exceptional_triple {
        let _ = writeln!(out, "note: {}", t);
    }
}

fn render_polytope(out: &mut String, r: &PolytopeResult) {
    let _ = writeln!(out, "divisors: {}", r.divisor_source);
    if r.empty {
        let _ = writeln!(out, "polytope is empty");
        return;
    }
    let _ = writeln!(out, "bounded: {}", yes(r.bounded));
    for v in &r.vertices {
        let _ = writeln!(out, "vertex {}", tuple(v));
    }
    for v in &r.rays {
        let _ = writeln!(out, "ray    {}", tuple(v));
    }
}
