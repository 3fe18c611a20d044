//! `fanoq`: invariants of Fano surface quotients from the command line.
//!
//! Exit codes: 0 success, 1 computation inconsistency, 2 input error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use fano_quotients::blowdown::RationalityCertificate;
use fano_quotients::catalog::Catalog;
use fano_quotients::error::Error;
use fano_quotients::hj::{k2_correction, CyclicSing};
use fano_quotients::rationality::{
    build_klein_config, build_xv_config, catalog_irregularity, certify_config, klein_stage1,
    klein_stage2, klein_transcript, xv_transcript, KleinOption,
};
use fano_quotients::render::{
    build_table, evaluate, render_report, render_table, table_json, Format,
};
use fano_quotients::scalar::fmt_rat;
use fano_quotients::scenario::parse_scenario;

#[derive(Parser)]
#[command(
    name = "fanoq",
    version,
    about = "Exact invariants of quotients of Fano surfaces"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: FormatArg,
    /// Directory of scenario files to use instead of the built-in catalog.
    #[arg(long, global = true)]
    catalog: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
    Markdown,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Text => Format::Text,
            FormatArg::Json => Format::Json,
            FormatArg::Markdown => Format::Markdown,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Invariants of one catalog case.
    Report { case: String },
    /// Both classification tables.
    Tables,
    /// Hirzebruch–Jung resolution of A_{n,q}.
    Resolve { n: u64, q: u64 },
    /// Replay a rationality argument and print its certificate.
    Rationality {
        #[arg(value_enum)]
        case: RationalityArg,
    },
    /// Validate a scenario file.
    Validate { file: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum RationalityArg {
    Klein,
    Xv,
}

/// Error with the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::UnknownCase(_) | Error::InvalidSingularity(_) | Error::InvalidScenario(_) => 2,
            _ => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

fn load_catalog(dir: Option<&Path>) -> Result<Catalog, Failure> {
    let Some(dir) = dir else {
        return Ok(Catalog::builtin().clone());
    };
    let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| input_error(format!("{}: {e}", dir.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    let mut docs = Vec::new();
    for p in &paths {
        let text =
            std::fs::read_to_string(p).map_err(|e| input_error(format!("{}: {e}", p.display())))?;
        docs.push((p.file_name().unwrap().to_string_lossy().into_owned(), text));
    }
    Catalog::from_documents(docs.iter().map(|(n, t)| (n.as_str(), t.as_str()))).map_err(|ds| {
        input_error(
            ds.iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join("\n"),
        )
    })
}

fn run(cli: Cli) -> Result<(String, u8), Failure> {
    let format: Format = cli.format.into();
    match cli.command {
        Command::Report { case } => {
            let catalog = load_catalog(cli.catalog.as_deref())?;
            let s = catalog.get(&case)?;
            let r = evaluate(s)?;
            let code = if r.report.noether_ok { 0 } else { 1 };
            Ok((render_report(&r, format), code))
        }
        Command::Tables => {
            let catalog = load_catalog(cli.catalog.as_deref())?;
            let docs = [build_table(&catalog, 1)?, build_table(&catalog, 2)?];
            let code = if docs.iter().all(|d| d.all_noether_ok()) {
                0
            } else {
                1
            };
            let out = match format {
                Format::Json => {
                    let v = json!({ "tables": docs.iter().map(table_json).collect::<Vec<_>>() });
                    serde_json::to_string_pretty(&v).expect("json") + "\n"
                }
                _ => docs
                    .iter()
                    .map(|d| render_table(d, format))
                    .collect::<Vec<_>>()
                    .join("\n"),
            };
            Ok((out, code))
        }
        Command::Resolve { n, q } => {
            let s = CyclicSing::new(n, q)?;
            let chain = s.chain();
            let corr = k2_correction(&s);
            let discs: Vec<String> = chain.discrepancies.iter().map(fmt_rat).collect();
            let out = match format {
                Format::Json => {
                    let v = json!({
                        "n": s.n(),
                        "q": s.q(),
                        "type": s.to_string(),
                        "chain": chain.selfints,
                        "discrepancies": discs,
                        "k2_correction": fmt_rat(&corr),
                    });
                    serde_json::to_string_pretty(&v).expect("json") + "\n"
                }
                _ => {
                    let selfints: Vec<String> =
                        chain.selfints.iter().map(|b| format!("-{b}")).collect();
                    format!(
                        "{s} (n = {}, q = {})\n  chain          {}\n  discrepancies  {}\n  K^2 correction {}\n",
                        s.n(),
                        s.q(),
                        selfints.join(", "),
                        discs.join(", "),
                        fmt_rat(&corr)
                    )
                }
            };
            Ok((out, 0))
        }
        Command::Rationality { case } => {
            let out = match (case, format) {
                (RationalityArg::Klein, Format::Json) => {
                    let q = catalog_irregularity("XI")?;
                    let s1 = klein_stage1();
                    let s2 = klein_stage2(&s1)?;
                    let mut certs = Vec::new();
                    for o in [KleinOption::One, KleinOption::Two] {
                        let c = certify_config(&build_klein_config(o, q)?)?;
                        let (a, b, x, y) = o.coefficients();
                        certs.push(json!({ "option": [a, b, x, y], "certificate": c.to_json() }));
                    }
                    let v = json!({
                        "case": "klein",
                        "q": q,
                        "stage1": s1,
                        "w_candidates": s2.w_candidates,
                        "a13_b13": s2.a13_b13,
                        "w": s2.w,
                        "survivors": s2.survivors,
                        "certificates": certs,
                    });
                    serde_json::to_string_pretty(&v).expect("json") + "\n"
                }
                (RationalityArg::Xv, Format::Json) => {
                    let q = catalog_irregularity("XV")?;
                    let c: RationalityCertificate = certify_config(&build_xv_config(q)?)?;
                    let v = json!({ "case": "xv", "q": q, "certificate": c.to_json() });
                    serde_json::to_string_pretty(&v).expect("json") + "\n"
                }
                (RationalityArg::Klein, Format::Text) => klein_transcript()?,
                (RationalityArg::Xv, Format::Text) => xv_transcript()?,
                (RationalityArg::Klein, Format::Markdown) => {
                    format!("```\n{}```\n", klein_transcript()?)
                }
                (RationalityArg::Xv, Format::Markdown) => format!("```\n{}```\n", xv_transcript()?),
            };
            Ok((out, 0))
        }
        Command::Validate { file } => {
            let text = std::fs::read_to_string(&file)
                .map_err(|e| input_error(format!("{}: {e}", file.display())))?;
            match parse_scenario(&text) {
                Ok(s) => Ok((format!("ok: {} ({})\n", s.label, s.name), 0)),
                Err(ds) => Err(input_error(
                    ds.iter()
                        .map(ToString::to_string)
                        .collect::<Vec<_>>()
                        .join("\n"),
                )),
            }
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok((out, code)) => {
            print!("{out}");
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
