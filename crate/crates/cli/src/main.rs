use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use vanset::catalog::{self, NamedGroup};
use vanset::config::{Config, DEFAULT_SEED};
use vanset::verifier::{Summary, VerificationReport};
use vanset::{analysis_report, Analysis, Error};

const DESK_ELEMENT_CAP: u64 = 50_000;
const STRETCH_ELEMENT_CAP: u64 = 200_000;

#[derive(Parser)]
#[command(name = "vanset", version, about = "Vanishing classes and structure of finite permutation groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Options,
}

#[derive(Args, Clone)]
struct Options {
    /// Largest group order enumerated element by element.
    #[arg(long, global = true, value_name = "N", value_parser = clap::value_parser!(u64).range(1..))]
    cap_elements: Option<u64>,
    /// Largest number of normal subgroups kept in a lattice.
    #[arg(long, global = true, value_name = "N", value_parser = clap::value_parser!(u64).range(1..))]
    cap_lattice: Option<u64>,
    /// Largest number of candidates tried in complement searches.
    #[arg(long, global = true, value_name = "N", value_parser = clap::value_parser!(u64).range(1..))]
    cap_search: Option<u64>,
    #[arg(long, global = true, value_name = "S", default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Include the large groups (M11, A8) and raise the element cap.
    #[arg(long, global = true)]
    stretch: bool,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write output here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Full report for one group.
    Analyze { target: String },
    /// Character table.
    Table { target: String },
    /// Prime graph of the vanishing element orders.
    Graph { target: String },
    /// Check every theorem on the corpus plus any `.grp` files in DIR.
    Verify { dir: Option<PathBuf> },
    /// List the built-in corpus.
    Catalog,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Dot,
}

enum Failure {
    Core(Error),
    Io(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn kind(&self) -> &'static str {
        match self {
            Failure::Core(e) => e.kind(),
            Failure::Io(_) => "io",
            Failure::Usage(_) => "usage",
        }
    }

    fn code(&self) -> u8 {
        match self {
            Failure::Core(Error::Resource { .. }) => 3,
            Failure::Core(Error::Internal(_)) => 1,
            _ => 2,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Core(e) => e.to_string(),
            Failure::Io(m) | Failure::Usage(m) => m.clone(),
        }
    }
}

fn config(opts: &Options) -> Config {
    let mut c = Config::default();
    let default_cap = if opts.stretch { STRETCH_ELEMENT_CAP } else { DESK_ELEMENT_CAP };
    c.element_cap = opts.cap_elements.unwrap_or(default_cap);
    if let Some(n) = opts.cap_lattice {
        c.lattice_cap = n as usize;
    }
    if let Some(n) = opts.cap_search {
        c.search_cap = n;
    }
    c.seed = opts.seed;
    c
}

fn resolve(target: &str) -> Result<NamedGroup, Failure> {
    let path = Path::new(target);
    if target.ends_with(".grp") || target.contains(std::path::MAIN_SEPARATOR) || path.is_file() {
        return Ok(catalog::load_group_file(path)?);
    }
    Ok(catalog::lookup(target)?)
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn code_of(summary: &Summary) -> u8 {
    if summary.fail > 0 {
        1
    } else if summary.resource > 0 {
        3
    } else {
        0
    }
}

fn summary_line(s: &Summary) -> String {
    format!(
        "pass {} fail {} flagged {} na {} resource {}",
        s.pass, s.fail, s.flagged, s.na, s.resource
    )
}

fn analyze(target: &str, opts: &Options) -> Result<(String, u8), Failure> {
    let named = resolve(target)?;
    let a = Analysis::new(&named, &config(opts))?;
    let report = analysis_report(&a)?;
    let summary = Summary::of(&report.verdicts);
    let text = match opts.format.unwrap_or(Format::Json) {
        Format::Json => to_json(&report),
        Format::Dot => a.prime_graph().to_dot(&report.name),
        Format::Text => {
            let s = &report.structure;
            let v = &report.vanishing;
            let mut out = String::new();
            let _ = writeln!(out, "group {} order {} degree {}", report.name, report.order, report.degree);
            let _ = writeln!(out, "classes {}", report.classes.len());
            let _ = writeln!(out, "vanishing classes {:?}", v.vanishing_class_indices);
            let _ = writeln!(out, "vanishing orders {:?}", v.orders);
            let _ = writeln!(
                out,
                "pairwise gcd max {} star {} star-star {}",
                v.pairwise_gcd_max, v.satisfies_star, v.satisfies_star_star
            );
            let _ = writeln!(
                out,
                "abelian {} nilpotent {} supersolvable {} solvable {}",
                s.abelian, s.nilpotent, s.supersolvable, s.solvable
            );
            let _ = writeln!(out, "fitting height {}", s.fitting_height);
            match &report.frobenius.decomposition {
                Some(d) => {
                    let _ = writeln!(out, "frobenius kernel {} complement {}", d.kernel.order(), d.complement_order);
                }
                None => {
                    let _ = writeln!(out, "frobenius none");
                }
            }
            for v in &report.verdicts {
                let _ = writeln!(out, "{:<7}{}", v.theorem.as_str(), v.status);
            }
            out
        }
    };
    Ok((text, code_of(&summary)))
}

fn table(target: &str, opts: &Options) -> Result<(String, u8), Failure> {
    let named = resolve(target)?;
    let ctx = vanset::GroupContext::new(named.group.clone(), &config(opts))?;
    let t = ctx.character_table()?;
    let text = match opts.format.unwrap_or(Format::Text) {
        Format::Json => to_json(&vanset::analysis::TableSummary::new(t)),
        Format::Dot => return Err(Failure::Usage("table has no dot format".into())),
        Format::Text => {
            let cells: Vec<Vec<String>> = t
                .values
                .iter()
                .map(|row| row.iter().map(|v| v.to_string()).collect())
                .collect();
            let header = class_labels(t.classes.iter().map(|c| c.element_order));
            let width = cells
                .iter()
                .flatten()
                .chain(header.iter())
                .map(|s| s.chars().count())
                .max()
                .unwrap_or(1);
            let mut out = String::new();
            let _ = writeln!(out, "{} order {}", named.name, t.group_order);
            let label_width = format!("X.{}", t.len()).len();
            let _ = write!(out, "{:label_width$}", "");
            for h in &header {
                let _ = write!(out, "  {h:>width$}");
            }
            out.push('\n');
            for (r, row) in cells.iter().enumerate() {
                let _ = write!(out, "{:label_width$}", format!("X.{}", r + 1));
                for v in row {
                    let _ = write!(out, "  {v:>width$}");
                }
                out.push('\n');
            }
            out
        }
    };
    Ok((text, 0))
}

/// `1a 2a 2b 3a …`: element order plus a letter per class of that order.
fn class_labels(orders: impl Iterator<Item = u64>) -> Vec<String> {
    let mut seen = std::collections::BTreeMap::new();
    orders
        .map(|o| {
            let k = seen.entry(o).or_insert(0u8);
            let label = format!("{o}{}", (b'a' + *k % 26) as char);
            *k += 1;
            label
        })
        .collect()
}

fn graph(target: &str, opts: &Options) -> Result<(String, u8), Failure> {
    let named = resolve(target)?;
    let ctx = vanset::GroupContext::new(named.group.clone(), &config(opts))?;
    let g = vanset::vanishing_prime_graph(ctx.vanishing_profile()?);
    let text = match opts.format.unwrap_or(Format::Dot) {
        Format::Dot => g.to_dot(&named.name),
        Format::Json => to_json(&g),
        Format::Text => {
            let comps: Vec<String> = g.components.iter().map(|c| format!("{c:?}")).collect();
            format!("{} components {}\n", g.component_count(), comps.join(" "))
        }
    };
    Ok((text, 0))
}

fn verify(dir: Option<&Path>, opts: &Options) -> Result<(String, u8), Failure> {
    let mut corpus = catalog::default_corpus();
    if opts.stretch {
        corpus.extend(catalog::stretch_corpus());
    }
    if let Some(d) = dir {
        corpus.extend(catalog::load_group_dir(d)?);
    }
    let report: VerificationReport = vanset::run_corpus(&corpus, &config(opts));
    let code = report.exit_code() as u8;
    let text = match opts.format.unwrap_or(Format::Json) {
        Format::Json => to_json(&report),
        Format::Dot => return Err(Failure::Usage("verify has no dot format".into())),
        Format::Text => {
            let mut out = String::new();
            for g in &report.groups {
                let _ = writeln!(out, "{:<14}{:>7}  {}", g.group, g.order, summary_line(&g.summary));
                for v in g.verdicts.iter().filter(|v| {
                    !matches!(v.status, vanset::Status::Pass | vanset::Status::NotApplicable)
                }) {
                    let _ = writeln!(out, "  {} {} {}", v.theorem, v.status, v.witness);
                }
            }
            for v in &report.arithmetic {
                let _ = writeln!(out, "{:<14}{:>7}  {} {}", v.group, "", v.theorem, v.status);
            }
            for (id, s) in &report.by_theorem {
                let _ = writeln!(out, "{:<7}{}", id.as_str(), summary_line(s));
            }
            let _ = writeln!(out, "total  {}", summary_line(&report.summary));
            out
        }
    };
    Ok((text, code))
}

fn list_catalog(opts: &Options) -> Result<(String, u8), Failure> {
    let mut corpus = catalog::default_corpus();
    if opts.stretch {
        corpus.extend(catalog::stretch_corpus());
    }
    let text = match opts.format.unwrap_or(Format::Text) {
        Format::Json => to_json(&corpus),
        Format::Dot => return Err(Failure::Usage("catalog has no dot format".into())),
        Format::Text => {
            let mut out = String::new();
            for g in &corpus {
                let tags: Vec<&str> = g.tags.iter().map(String::as_str).collect();
                let _ = writeln!(out, "{:<14}{:>7}  {}", g.name, g.order, tags.join(","));
            }
            out
        }
    };
    Ok((text, 0))
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    let opts = &cli.opts;
    let (text, code) = match &cli.command {
        Command::Analyze { target } => analyze(target, opts)?,
        Command::Table { target } => table(target, opts)?,
        Command::Graph { target } => graph(target, opts)?,
        Command::Verify { dir } => verify(dir.as_deref(), opts)?,
        Command::Catalog => list_catalog(opts)?,
    };
    match &opts.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    Ok(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or("").trim_start_matches("error: ");
            eprintln!("error[usage]: {first}");
            return ExitCode::from(2);
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error[{}]: {}", f.kind(), f.message().replace('\n', " "));
            ExitCode::from(f.code())
        }
    }
}
