//! `sulva`: list, analyze and render the catalog rules, and run `.sulva` scripts.
//!
//! Exit status: 0 on success, 1 when an assertion or analysis tolerance fails,
//! 2 on usage and I/O errors. Requested output goes to stdout, diagnostics to
//! stderr.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use sulva_core::analysis::{self, AnalysisError, RuleReport};
use sulva_core::catalog::{self, CatalogError, InputKind};
use sulva_core::exactreal::set_tower_cap;
use sulva_core::geom::Figure;
use sulva_core::script::{self, Evaluation};
use sulva_core::svg::{self, Label, Layers, RenderOptions};
use sulva_core::ConstructibleReal;

#[derive(Debug, Parser)]
#[command(
    name = "sulva",
    version,
    about = "Exact constructions and error analysis for Sulvasutra rules"
)]
struct Cli {
    #[command(flatten)]
    config: Config,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Config {
    /// Working precision of enclosures, in bits.
    #[arg(long, global = true, env = "SULVA_PRECISION_BITS", default_value_t = 128,
          value_parser = clap::value_parser!(u32).range(8..=1024))]
    precision_bits: u32,
    /// Decimal digits in printed values.
    #[arg(long, global = true, default_value_t = 12, value_parser = clap::value_parser!(u32).range(1..=60))]
    digits: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Maximum height of a quadratic tower.
    #[arg(long, global = true, default_value_t = 6, value_parser = clap::value_parser!(u32).range(1..=32))]
    tower_cap: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List every rule with its kind and citation.
    Catalog,
    /// Certified implied pi and relative error for rules (or `all`).
    Analyze {
        #[arg(required = true)]
        rules: Vec<String>,
        /// Order rows by absolute error instead of rule id.
        #[arg(long)]
        rank: bool,
    },
    /// Parse and evaluate a construction script.
    Run {
        script: PathBuf,
        /// Write the emitted figures as SVG.
        #[arg(long)]
        svg: Option<PathBuf>,
        #[command(flatten)]
        render: RenderArgs,
    },
    /// Render a rule's construction as SVG.
    Render {
        rule: String,
        /// Side or diameter, as an exact literal such as `1`, `3/2` or `0.25`.
        #[arg(long, default_value = "1")]
        size: String,
        /// Output file; stdout when omitted.
        #[arg(long, short, alias = "svg")]
        output: Option<PathBuf>,
        #[command(flatten)]
        render: RenderArgs,
    },
}

#[derive(Debug, Args)]
struct RenderArgs {
    #[arg(long, default_value_t = 800)]
    width: u32,
    #[arg(long, default_value_t = 800)]
    height: u32,
    #[arg(long, default_value_t = 0.1)]
    margin: f64,
    #[arg(long)]
    grid: bool,
    #[arg(long)]
    no_labels: bool,
    #[arg(long)]
    no_witness_points: bool,
}

impl RenderArgs {
    fn options(&self, digits: u32) -> RenderOptions {
        RenderOptions {
            width: self.width,
            height: self.height,
            margin: self.margin,
            digits,
            layers: Layers {
                grid: self.grid,
                labels: !self.no_labels,
                witness_points: !self.no_witness_points,
            },
        }
    }
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    /// Assertion or tolerance failure; details were already reported.
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Usage(_) | CliError::Io { .. } => 2,
        }
    }
}

impl From<AnalysisError> for CliError {
    fn from(e: AnalysisError) -> Self {
        match e {
            AnalysisError::WidthUnattained { .. } => CliError::Failed(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<CatalogError> for CliError {
    fn from(e: CatalogError) -> Self {
        CliError::Usage(e.to_string())
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn print(text: &str) -> Result<(), CliError> {
    let mut out = io::stdout().lock();
    out.write_all(text.as_bytes())
        .and_then(|_| out.flush())
        .map_err(|source| CliError::Io {
            path: "<stdout>".into(),
            source,
        })
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("plain data serializes");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct CatalogRow {
    id: &'static str,
    kind: &'static str,
    citation: &'static str,
    input: &'static str,
    reconstruction_flag: bool,
    description: &'static str,
}

fn cmd_catalog(cfg: &Config) -> Result<(), CliError> {
    let rows: Vec<CatalogRow> = catalog::catalog()
        .iter()
        .map(|r| CatalogRow {
            id: r.id,
            kind: r.kind.as_str(),
            citation: r.citation,
            input: match r.input {
                InputKind::Side => "side",
                InputKind::Diameter => "diameter",
            },
            reconstruction_flag: r.reconstruction,
            description: r.description,
        })
        .collect();
    if cfg.format == Format::Json {
        return print(&to_json(&rows));
    }
    let w_id = rows.iter().map(|r| r.id.len()).max().unwrap_or(2).max(2);
    let w_kind = rows.iter().map(|r| r.kind.len()).max().unwrap_or(4).max(4);
    let mut out = format!("{:w_id$}  {:w_kind$}  citation\n", "id", "kind");
    for r in &rows {
        out.push_str(&format!(
            "{:w_id$}  {:w_kind$}  {}\n",
            r.id, r.kind, r.citation
        ));
    }
    print(&out)
}

fn cmd_analyze(cfg: &Config, rules: &[String], rank: bool) -> Result<(), CliError> {
    let mut reports: Vec<RuleReport> = if rules.iter().any(|r| r == "all") {
        if rules.len() > 1 {
            return Err(CliError::Usage(
                "`all` cannot be combined with rule ids".into(),
            ));
        }
        analysis::paper_table(cfg.precision_bits)?
    } else {
        let ids: Vec<&str> = rules.iter().map(String::as_str).collect();
        analysis::compare_rules(&ids, cfg.precision_bits)?
    };
    if rank {
        analysis::sort_by_error(&mut reports);
    } else {
        reports.sort_by(|a, b| a.rule_id.cmp(b.rule_id));
    }
    match cfg.format {
        Format::Json => {
            let rows: Vec<_> = reports.iter().map(|r| r.to_row(cfg.digits)).collect();
            print(&to_json(&rows))
        }
        Format::Table => print(&analysis::format_table(&reports, cfg.digits)),
    }
}

fn read_script(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

#[derive(Serialize)]
struct RunJson<'a> {
    bindings: Vec<NamedValue>,
    assertions: Vec<AssertionJson>,
    emitted: Vec<&'a str>,
    diagnostics: &'a [script::Diagnostic],
    success: bool,
}

#[derive(Serialize)]
struct NamedValue {
    name: String,
    kind: &'static str,
    value: String,
}

#[derive(Serialize)]
struct AssertionJson {
    line: u32,
    column: u32,
    assertion: String,
    passed: bool,
    lhs: Option<[String; 2]>,
    rhs: Option<[String; 2]>,
}

fn run_json(ev: &Evaluation, digits: u32) -> String {
    let bounds = |iv: &Option<sulva_core::Interval>| {
        iv.as_ref().map(|iv| {
            let (lo, hi) = iv.to_decimal_bounds(digits);
            [lo, hi]
        })
    };
    let doc = RunJson {
        bindings: ev
            .bindings
            .iter()
            .map(|(name, v)| NamedValue {
                name: name.clone(),
                kind: v.type_name(),
                value: v.to_string(),
            })
            .collect(),
        assertions: ev
            .assertions
            .iter()
            .map(|a| AssertionJson {
                line: a.pos.line,
                column: a.pos.column,
                assertion: a.text.clone(),
                passed: a.passed,
                lhs: bounds(&a.lhs),
                rhs: bounds(&a.rhs),
            })
            .collect(),
        emitted: ev.emitted.iter().map(|(n, _)| n.as_str()).collect(),
        diagnostics: &ev.diagnostics,
        success: ev.success(),
    };
    to_json(&doc)
}

fn cmd_run(
    cfg: &Config,
    path: &Path,
    svg_out: Option<&Path>,
    render: &RenderArgs,
) -> Result<(), CliError> {
    let src = read_script(path)?;
    let name = path.display();
    let ast = match script::parse(&src) {
        Ok(ast) => ast,
        Err(diags) => {
            for d in &diags {
                eprintln!("{name}:{d}");
            }
            return Err(CliError::Failed(format!("{} diagnostic(s)", diags.len())));
        }
    };
    let ev = script::evaluate(&ast);
    for d in &ev.diagnostics {
        eprintln!("{name}:{d}");
    }
    match cfg.format {
        Format::Json => print(&run_json(&ev, cfg.digits))?,
        Format::Table => print(&ev.report())?,
    }
    if let Some(out) = svg_out {
        let (figures, labels) = ev.render_input();
        if figures.is_empty() {
            return Err(CliError::Usage("the script emits nothing drawable".into()));
        }
        let doc = svg::to_svg(&figures, &labels, &render.options(cfg.digits))
            .map_err(|e| CliError::Usage(e.to_string()))?;
        write_file(out, &doc)?;
    }
    if ev.success() {
        Ok(())
    } else {
        Err(CliError::Failed("evaluation reported errors".into()))
    }
}

/// An exact literal as accepted by scripts: `3`, `-17/12`, `0.25`.
fn parse_size(text: &str) -> Result<ConstructibleReal, CliError> {
    let ast = script::parse(&format!("let size = {text};"))
        .map_err(|_| CliError::Usage(format!("invalid size `{text}`")))?;
    match &ast.stmts[..] {
        [script::Stmt {
            kind: script::StmtKind::Let { value, .. },
            ..
        }] => match &value.kind {
            script::ExprKind::Literal(q) => Ok(ConstructibleReal::from_ratio(q.clone())),
            _ => Err(CliError::Usage(format!("invalid size `{text}`"))),
        },
        _ => Err(CliError::Usage(format!("invalid size `{text}`"))),
    }
}

fn cmd_render(
    cfg: &Config,
    rule_id: &str,
    size: &str,
    output: Option<&Path>,
    render: &RenderArgs,
) -> Result<(), CliError> {
    let rule = catalog::find(rule_id)?;
    let size = parse_size(size)?;
    let out = rule
        .construct(&size)
        .map_err(|e| CliError::Usage(format!("cannot construct `{rule_id}`: {e}")))?;
    if out.figures.is_empty() {
        return Err(CliError::Usage(format!(
            "`{rule_id}` has no figures to render"
        )));
    }
    let opts = render.options(cfg.digits);
    let mut figures = out.figures.clone();
    figures.extend(out.witness_points.iter().cloned().map(Figure::Point));
    let mut labels = Vec::new();
    if let Some(last) = out.figures.last() {
        let at = match last {
            Figure::Circle(c) => c.center().clone(),
            Figure::Square(s) => s.center().clone(),
            Figure::Segment(s) => s.b().clone(),
            Figure::Point(p) => p.clone(),
        };
        let text = match out.actual.as_real() {
            Some(v) => opts.value_label(rule.id, v),
            None => format!("{} = {}", rule.id, out.actual),
        };
        labels.push(Label { at, text });
    }
    let doc = svg::to_svg(&figures, &labels, &opts).map_err(|e| CliError::Usage(e.to_string()))?;
    match output {
        Some(path) => write_file(path, &doc),
        None => print(&doc),
    }
}

fn dispatch(cli: &Cli) -> Result<(), CliError> {
    let cfg = &cli.config;
    set_tower_cap(cfg.tower_cap as usize);
    match &cli.command {
        Command::Catalog => cmd_catalog(cfg),
        Command::Analyze { rules, rank } => cmd_analyze(cfg, rules, *rank),
        Command::Run {
            script,
            svg,
            render,
        } => cmd_run(cfg, script, svg.as_deref(), render),
        Command::Render {
            rule,
            size,
            output,
            render,
        } => cmd_render(cfg, rule, size, output.as_deref(), render),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("sulva: {e}");
            ExitCode::from(e.code())
        }
    }
}
