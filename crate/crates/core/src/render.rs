//! Text, Markdown and JSON renderings of reports, tables and certificates.
//!
//! Minimality and Kodaira dimension are catalog assertions, never computed;
//! they are printed with a trailing `*`. A Kodaira entry additionally reads
//! `(certified)` when a blow-down certificate for the case was found.

use std::fmt::Write;

use serde_json::{json, Value};

use crate::catalog::Catalog;
use crate::engine::{full_report, singularity_summary, InvariantReport};
use crate::error::Result;
use crate::rationality::certify_case;
use crate::scalar::fmt_rat;
use crate::scenario::QuotientScenario;

/// Output format shared by every command.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Markdown,
}

/// Marker appended to asserted (uncomputed) values.
pub const ANNOTATION_MARK: &str = "*";

/// Report plus whether a rationality certificate backs the κ = −∞ entry.
#[derive(Clone, Debug)]
pub struct CaseResult {
    pub report: InvariantReport,
    pub certified: bool,
    pub table: Option<u32>,
    pub order_column: Option<String>,
}

/// Compute the report and, for rationality cases, the certificates.
pub fn evaluate(s: &QuotientScenario) -> Result<CaseResult> {
    let report = full_report(s)?;
    let certified = match s.rationality_case {
        Some(case) => !certify_case(case, report.q)?.is_empty(),
        None => false,
    };
    Ok(CaseResult {
        report,
        certified,
        table: s.table,
        order_column: s.order_column.clone(),
    })
}

/// Evaluate scenarios concurrently, keeping input order.
pub fn evaluate_all(scenarios: &[&QuotientScenario]) -> Vec<Result<CaseResult>> {
    std::thread::scope(|scope| {
        let handles: Vec<_> = scenarios
            .iter()
            .map(|s| scope.spawn(move || evaluate(s)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("evaluation thread panicked"))
            .collect()
    })
}

fn minimal_cell(r: &CaseResult) -> String {
    match &r.report.annotations {
        Some(a) => format!("{}{ANNOTATION_MARK}", if a.minimal { "yes" } else { "no" }),
        None => String::new(),
    }
}

fn kodaira_cell(r: &CaseResult) -> String {
    match &r.report.annotations {
        Some(a) if r.certified => format!("{}{ANNOTATION_MARK} (certified)", a.kodaira),
        Some(a) => format!("{}{ANNOTATION_MARK}", a.kodaira),
        None => String::new(),
    }
}

/// One table row as cells.
pub fn row_cells(r: &CaseResult) -> Vec<String> {
    let rep = &r.report;
    let mut cells = Vec::new();
    if r.table == Some(1) {
        cells.push(r.order_column.clone().unwrap_or_default());
        cells.push(rep.label.clone());
    } else {
        cells.push(rep.name.clone());
    }
    cells.extend([
        rep.c1_squared.to_string(),
        rep.c2.to_string(),
        rep.q.to_string(),
        rep.pg.to_string(),
        rep.chi.to_string(),
        rep.fiber_genus.map(|g| g.to_string()).unwrap_or_default(),
        singularity_summary(&rep.singularities),
        minimal_cell(r),
        kodaira_cell(r),
    ]);
    cells
}

pub fn table_header(t: u32) -> Vec<&'static str> {
    let mut h = if t == 1 { vec!["O", "Type"] } else { vec!["G"] };
    h.extend([
        "c1^2",
        "c2",
        "q",
        "p_g",
        "chi",
        "g",
        "Singularities",
        "Min",
        "kappa",
    ]);
    h
}

/// Rendered table with the computed rows.
#[derive(Clone, Debug)]
pub struct TableDocument {
    pub table: u32,
    pub rows: Vec<CaseResult>,
}

impl TableDocument {
    pub fn all_noether_ok(&self) -> bool {
        self.rows.iter().all(|r| r.report.noether_ok)
    }
}

/// Evaluate table `t` of a catalog.
pub fn build_table(catalog: &Catalog, t: u32) -> Result<TableDocument> {
    let scenarios = catalog.table(t);
    let rows = evaluate_all(&scenarios)
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    Ok(TableDocument { table: t, rows })
}

fn markdown_grid(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = String::new();
    writeln!(out, "| {} |", header.join(" | ")).unwrap();
    writeln!(out, "|{}", "---|".repeat(header.len())).unwrap();
    for r in rows {
        writeln!(out, "| {} |", r.join(" | ")).unwrap();
    }
    out
}

fn text_grid(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: Vec<&str>| -> String {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
            .collect();
        padded.join("  ").trim_end().to_string()
    };
    let mut out = String::new();
    writeln!(out, "{}", line(header.to_vec())).unwrap();
    let total: usize = widths.iter().sum::<usize>() + 2 * (widths.len() - 1);
    writeln!(out, "{}", "-".repeat(total)).unwrap();
    for r in rows {
        writeln!(out, "{}", line(r.iter().map(String::as_str).collect())).unwrap();
    }
    out
}

const FOOTNOTE: &str = "* catalog assertion, not computed";

pub fn render_table(doc: &TableDocument, format: Format) -> String {
    let header = table_header(doc.table);
    let rows: Vec<Vec<String>> = doc.rows.iter().map(row_cells).collect();
    match format {
        Format::Markdown => markdown_grid(&header, &rows),
        Format::Text => format!(
            "Table {}\n{}{FOOTNOTE}\n",
            doc.table,
            text_grid(&header, &rows)
        ),
        Format::Json => serde_json::to_string_pretty(&table_json(doc)).expect("json") + "\n",
    }
}

pub fn table_json(doc: &TableDocument) -> Value {
    json!({
        "table": doc.table,
        "rows": doc.rows.iter().map(report_json).collect::<Vec<_>>(),
    })
}

/// Full report as JSON with sorted keys and `"p/q"` rationals.
pub fn report_json(r: &CaseResult) -> Value {
    let rep = &r.report;
    let sings: Vec<Value> = rep
        .singularities
        .iter()
        .map(|(s, c)| {
            let chain = s.chain();
            json!({
                "type": s.to_string(),
                "n": s.n(),
                "q": s.q(),
                "count": c,
                "chain": chain.selfints,
                "discrepancies": chain.discrepancies.iter().map(fmt_rat).collect::<Vec<_>>(),
                "k2_correction": fmt_rat(&crate::hj::k2_correction(s)),
            })
        })
        .collect();
    let annotations = rep.annotations.as_ref().map(|a| {
        json!({
            "minimal": a.minimal,
            "kodaira": a.kodaira,
            "certified": r.certified,
            "computed": false,
            "cite": a.cite,
        })
    });
    json!({
        "label": rep.label,
        "name": rep.name,
        "group_order": rep.group_order,
        "c1_squared": rep.c1_squared,
        "c2": rep.c2,
        "q": rep.q,
        "p_g": rep.pg,
        "chi": rep.chi,
        "h11": rep.h11,
        "fiber_genus": rep.fiber_genus,
        "singularities": sings,
        "singularity_summary": singularity_summary(&rep.singularities),
        "noether_ok": rep.noether_ok,
        "flags": rep.flags,
        "k2_quotient": fmt_rat(&rep.k2_quotient),
        "k2_corrections": fmt_rat(&rep.k2_corrections),
        "euler_quotient": rep.euler_quotient,
        "exceptional_components": rep.exceptional_components,
        "citation": rep.citation,
        "annotations": annotations,
    })
}

pub fn render_report(r: &CaseResult, format: Format) -> String {
    let rep = &r.report;
    match format {
        Format::Json => serde_json::to_string_pretty(&report_json(r)).expect("json") + "\n",
        Format::Markdown => {
            let t = if r.table == Some(1) { 1 } else { 2 };
            let header = table_header(t);
            let mut rr = r.clone();
            rr.table = Some(t);
            markdown_grid(&header, &[row_cells(&rr)])
        }
        Format::Text => {
            let mut out = String::new();
            writeln!(out, "Case {}: {}", rep.label, rep.name).unwrap();
            writeln!(out, "  |G|            {}", rep.group_order).unwrap();
            writeln!(
                out,
                "  c1^2           {}  (K^2 of S/G = {}, corrections {})",
                rep.c1_squared,
                fmt_rat(&rep.k2_quotient),
                fmt_rat(&rep.k2_corrections)
            )
            .unwrap();
            writeln!(
                out,
                "  c2             {}  (e(S/G) = {}, exceptional curves {})",
                rep.c2, rep.euler_quotient, rep.exceptional_components
            )
            .unwrap();
            writeln!(out, "  q              {}", rep.q).unwrap();
            writeln!(out, "  p_g            {}", rep.pg).unwrap();
            writeln!(out, "  chi            {}", rep.chi).unwrap();
            writeln!(out, "  h11            {}", rep.h11).unwrap();
            if let Some(g) = rep.fiber_genus {
                writeln!(out, "  fiber genus    {g}").unwrap();
            }
            let sing = singularity_summary(&rep.singularities);
            writeln!(
                out,
                "  singularities  {}",
                if sing.is_empty() { "none" } else { &sing }
            )
            .unwrap();
            writeln!(
                out,
                "  Noether        {} (12chi = {}, c1^2 + c2 = {})",
                if rep.noether_ok { "ok" } else { "FAILED" },
                12 * rep.chi,
                rep.c1_squared + rep.c2
            )
            .unwrap();
            if rep.annotations.is_some() {
                writeln!(out, "  minimal        {}", minimal_cell(r)).unwrap();
                writeln!(out, "  kappa          {}", kodaira_cell(r)).unwrap();
            }
            for f in &rep.flags {
                writeln!(out, "  flag: {f}").unwrap();
            }
            writeln!(out, "  source: {}", rep.citation).unwrap();
            if rep.annotations.is_some() {
                writeln!(out, "{FOOTNOTE}").unwrap();
            }
            out
        }
    }
}
