use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use levi_tanaka::crmodels::{default_jobs, sweep, verify_symbol, CrError, SweepJob, TheoremReport};
use levi_tanaka::freelie::{codim_range_for_length, cumulative_dim, witt_dim};
use levi_tanaka::frames::{
    bch_group_law, frame_bracket_mismatch, growth_and_nondegeneracy, left_invariant_frame, symbol_from_frame,
    tangential_cr_field, Catalog, Chart, FrameError, FrameSymbol, Realization,
};
use levi_tanaka::liealg::{build_symbol_algebra, AlgebraError, QuotientSpec, SymbolAlgebra};
use levi_tanaka::prolong::{Flavor, ProlongError, ProlongationBuilder};

#[derive(Parser)]
#[command(name = "levi-tanaka", version, about = "Symbol algebras, prolongations and CR automorphism algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Model catalog to use instead of the built-in one.
    #[arg(long, global = true)]
    catalog: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Form {
    Complex,
    Real,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// Codimension of a default or `--quotient` symbol algebra.
    #[arg(long)]
    k: Option<usize>,
    /// Catalog model id.
    #[arg(long)]
    model: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Free Lie algebra dimensions and the codimensions each length serves.
    Witt {
        #[arg(long, default_value_t = 7)]
        max_length: usize,
    },
    /// Print a symbol algebra.
    Symbol {
        #[command(flatten)]
        source: Source,
        /// Top-degree quotient: `default`, `keep:W1,W2,…` or `matrix:[[…],…]`.
        #[arg(long, conflicts_with = "model")]
        quotient: Option<String>,
        #[arg(long, value_enum, default_value = "complex")]
        form: Form,
    },
    /// Tanaka or Levi-Tanaka prolongation of a symbol algebra.
    Prolong {
        #[command(flatten)]
        source: Source,
        /// Top-degree quotient: `default`, `keep:W1,W2,…` or `matrix:[[…],…]`.
        #[arg(long, conflicts_with = "model")]
        quotient: Option<String>,
        /// `levi-tanaka` or `tanaka`.
        #[arg(long, default_value = "levi-tanaka")]
        flavor: String,
        /// Highest degree computed before giving up.
        #[arg(long)]
        guard: Option<usize>,
    },
    /// Compare aut_CR with the Levi-Tanaka prolongation.
    #[command(group = ArgGroup::new("target").required(true).multiple(false))]
    Verify {
        /// Codimension of a default or `--quotient` symbol algebra.
        #[arg(long, group = "target")]
        k: Option<usize>,
        /// Catalog model id.
        #[arg(long, group = "target")]
        model: Option<String>,
        /// Sweep default quotients for every codimension up to this bound.
        #[arg(long, group = "target")]
        all: Option<usize>,
        /// Top-degree quotient: `default`, `keep:W1,W2,…` or `matrix:[[…],…]`.
        #[arg(long, conflicts_with = "model")]
        quotient: Option<String>,
        /// With `--all`, also sweep catalog models in range.
        #[arg(long, requires = "all")]
        with_catalog: bool,
        /// With `--all`, print every full report instead of a summary.
        #[arg(long, short)]
        verbose: bool,
    },
    /// Show a catalog model: its CR field, growth vector and induced symbol.
    Model { id: String },
    /// List the catalog.
    Catalog,
    /// Group law and left-invariant frame on the group of a symbol algebra.
    Bch {
        #[command(flatten)]
        source: Source,
        /// Top-degree quotient: `default`, `keep:W1,W2,…` or `matrix:[[…],…]`.
        #[arg(long, conflicts_with = "model")]
        quotient: Option<String>,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Failed(String),
}

impl From<AlgebraError> for CliError {
    fn from(e: AlgebraError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<FrameError> for CliError {
    fn from(e: FrameError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<ProlongError> for CliError {
    fn from(e: ProlongError) -> Self {
        CliError::Failed(e.to_string())
    }
}

impl From<CrError> for CliError {
    fn from(e: CrError) -> Self {
        match e {
            CrError::Algebra(a) => CliError::Input(a.to_string()),
            CrError::RhoTooSmall(_) => CliError::Input(e.to_string()),
            other => CliError::Failed(other.to_string()),
        }
    }
}

/// Text and JSON renderings of a command's result, and whether it succeeded.
struct Output {
    text: String,
    json: Value,
    ok: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let body = match cli.format {
                Format::Text => out.text,
                Format::Json => serde_json::to_string_pretty(&out.json).expect("serializable") + "\n",
            };
            if let Err(e) = emit(&cli, &body) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(CliError::Input(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(CliError::Failed(e)) => {
            eprintln!("failed: {e}");
            ExitCode::from(1)
        }
    }
}

fn emit(cli: &Cli, body: &str) -> std::io::Result<()> {
    match &cli.output {
        Some(path) => std::fs::write(path, body),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn load_catalog(cli: &Cli) -> Result<Catalog, CliError> {
    match &cli.catalog {
        None => Ok(Catalog::embedded()),
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
            Ok(Catalog::from_json(&text)?)
        }
    }
}

fn parse_quotient(q: Option<&str>) -> Result<QuotientSpec, CliError> {
    Ok(q.map(str::parse).transpose()?.unwrap_or(QuotientSpec::Default))
}

/// The symbol algebra selected by `--k`/`--quotient` or `--model`, and an id.
fn resolve(cli: &Cli, k: Option<usize>, model: Option<&str>, quotient: Option<&str>) -> Result<(SymbolAlgebra, String), CliError> {
    match (k, model) {
        (Some(k), None) => {
            let q = parse_quotient(quotient)?;
            let id = format!("k{k:02}-{}", q.label());
            Ok((build_symbol_algebra(k, q)?, id))
        }
        (None, Some(id)) => {
            let fs = symbol_from_frame(&load_catalog(cli)?.model(id)?)?;
            Ok((fs.symbol, id.to_string()))
        }
        _ => Err(CliError::Input("give exactly one of --k or --model".into())),
    }
}

fn run(cli: &Cli) -> Result<Output, CliError> {
    match &cli.command {
        Command::Witt { max_length } => Ok(cmd_witt(*max_length)),
        Command::Symbol { source, quotient, form } => {
            let (s, id) = resolve(cli, source.k, source.model.as_deref(), quotient.as_deref())?;
            let alg = match form {
                Form::Complex => s.algebra().clone(),
                Form::Real => s.real_form()?.algebra,
            };
            Ok(Output {
                text: format!("symbol algebra {id}\n{}", alg.to_text()),
                json: serde_json::to_value(alg.to_doc()).expect("serializable"),
                ok: true,
            })
        }
        Command::Prolong { source, quotient, flavor, guard } => {
            let (s, id) = resolve(cli, source.k, source.model.as_deref(), quotient.as_deref())?;
            let flavor: Flavor = flavor.parse().map_err(CliError::Input)?;
            let m = s.real_form()?.algebra;
            let mut builder = ProlongationBuilder::new(&m).flavor(flavor);
            if let Some(g) = guard {
                builder = builder.guard(*g);
            }
            let p = builder.build()?;
            let dims: Vec<String> = p.dims_by_degree().iter().map(|(d, n)| format!("{d}:{n}")).collect();
            let text = format!(
                "{} prolongation of {id}\ntotal dimension {}\ndegree:dim {}\n{}",
                flavor.name(),
                p.total_dim(),
                dims.join(" "),
                p.algebra().to_text()
            );
            let json = json!({
                "model": id,
                "flavor": flavor.name(),
                "total_dim": p.total_dim(),
                "dims_by_degree": p.dims_by_degree(),
                "algebra": p.algebra().to_doc(),
            });
            Ok(Output { text, json, ok: true })
        }
        Command::Verify { k, model, all, quotient, with_catalog, verbose } => match all {
            Some(max_k) => cmd_sweep(cli, *max_k, *with_catalog, *verbose),
            None => {
                let (s, id) = resolve(cli, *k, model.as_deref(), quotient.as_deref())?;
                let r = verify_symbol(&s, &id)?;
                Ok(Output { text: r.to_text(), json: serde_json::to_value(&r).expect("serializable"), ok: r.confirmed() })
            }
        },
        Command::Model { id } => cmd_model(cli, id),
        Command::Catalog => {
            let cat = load_catalog(cli)?;
            let mut text = String::new();
            for e in &cat.entries {
                let _ = writeln!(text, "{:<12} k={:<3} rho={}  {:<12} {}", e.id, e.k, e.rho, e.origin, e.defining.join("; "));
            }
            Ok(Output { text, json: serde_json::to_value(&cat).expect("serializable"), ok: true })
        }
        Command::Bch { source, quotient } => {
            let (s, id) = resolve(cli, source.k, source.model.as_deref(), quotient.as_deref())?;
            cmd_bch(&s, &id)
        }
    }
}

fn cmd_witt(max_length: usize) -> Output {
    let mut text = format!("{:>3} {:>6} {:>10}  {}\n", "len", "witt", "cumulative", "codimensions");
    let mut rows = Vec::new();
    for len in 1..=max_length {
        let range = codim_range_for_length(len);
        let ks = match range {
            None => "—".to_string(),
            Some((a, b)) if a == b => format!("k={a}"),
            Some((a, b)) => format!("k={a}…{b}"),
        };
        let _ = writeln!(text, "{len:>3} {:>6} {:>10}  {ks}", witt_dim(len), cumulative_dim(len));
        rows.push(json!({
            "length": len,
            "witt_dim": witt_dim(len),
            "cumulative_dim": cumulative_dim(len),
            "codim_range": range.map(|(a, b)| [a, b]),
        }));
    }
    Output { text, json: Value::Array(rows), ok: true }
}

fn cmd_sweep(cli: &Cli, max_k: usize, with_catalog: bool, verbose: bool) -> Result<Output, CliError> {
    let mut jobs = default_jobs(max_k);
    if with_catalog {
        for e in load_catalog(cli)?.entries.iter().filter(|e| e.k <= max_k) {
            let fs = symbol_from_frame(&e.model()?)?;
            jobs.push(SweepJob { id: e.id.clone(), k: e.k, quotient: fs.symbol.quotient().clone() });
        }
    }
    let entries = sweep(jobs);
    let mut text = format!("{:<20} {:>3} {:>4}  {:<14} {:>6} {:>6}  {}\n", "model", "k", "rho", "case", "aut_CR", "LT", "verdict");
    let mut reports: Vec<Value> = Vec::new();
    let mut ok = true;
    for e in &entries {
        match &e.result {
            Ok(r) => {
                ok &= r.confirmed();
                if verbose {
                    text += &r.to_text();
                    text.push('\n');
                } else {
                    let _ = writeln!(
                        text,
                        "{:<20} {:>3} {:>4}  {:<14} {:>6} {:>6}  {}  {}",
                        r.model,
                        r.k,
                        r.rho,
                        r.case.name(),
                        r.aut_cr_dim,
                        r.levi_tanaka_dim,
                        r.verdict,
                        dims_line(r)
                    );
                }
                reports.push(serde_json::to_value(r).expect("serializable"));
            }
            Err(err) => {
                ok = false;
                let _ = writeln!(text, "{:<20} {:>3}  error: {err}", e.id, e.k);
                reports.push(json!({ "model": e.id, "k": e.k, "error": err.to_string() }));
            }
        }
    }
    let confirmed = entries.iter().filter(|e| e.result.as_ref().is_ok_and(TheoremReport::confirmed)).count();
    let _ = writeln!(text, "{confirmed}/{} confirmed", entries.len());
    Ok(Output { text, json: Value::Array(reports), ok })
}

fn dims_line(r: &TheoremReport) -> String {
    let d: Vec<String> = r.levi_tanaka_dims.iter().map(|(deg, n)| format!("{deg}:{n}")).collect();
    d.join(" ")
}

fn cmd_model(cli: &Cli, id: &str) -> Result<Output, CliError> {
    let cat = load_catalog(cli)?;
    let entry = cat.get(id)?;
    let m = entry.model()?;
    let l = tangential_cr_field(&m)?;
    let lb = l.conj()?;
    let (f, v) = growth_and_nondegeneracy(&m)?;
    let mut text = String::new();
    let _ = writeln!(text, "model      {id} (k={}, rho={}, {})", entry.k, entry.rho, entry.origin);
    for d in &entry.defining {
        let _ = writeln!(text, "           {d}");
    }
    if let Realization::Rigid { phis } = &m.realization {
        let names = Chart::Cr { k: m.k }.names();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        for (j, p) in phis.iter().enumerate() {
            let _ = writeln!(text, "φ{}         {}", j + 1, p.display_with(&refs));
        }
    }
    let _ = writeln!(text, "L          {l}");
    let _ = writeln!(text, "L̄          {lb}");
    let _ = writeln!(text, "growth     {:?}", f.growth);
    let _ = writeln!(text, "totally nondegenerate: {}", v.totally_nondegenerate);
    let mut json = json!({
        "id": id,
        "k": entry.k,
        "rho": entry.rho,
        "L": l.to_string(),
        "Lbar": lb.to_string(),
        "growth": f.growth,
        "totally_nondegenerate": v.totally_nondegenerate,
    });
    if v.totally_nondegenerate {
        let fs: FrameSymbol = symbol_from_frame(&m)?;
        let _ = writeln!(text, "survivors  {}", fs.survivor_labels().join(", "));
        let _ = writeln!(text, "symbol:\n{}", fs.symbol.algebra().to_text());
        json["survivors"] = json!(fs.survivor_labels());
        json["symbol"] = serde_json::to_value(fs.symbol.algebra().to_doc()).expect("serializable");
    }
    Ok(Output { text, json, ok: true })
}

fn cmd_bch(s: &SymbolAlgebra, id: &str) -> Result<Output, CliError> {
    let m = s.real_form()?.algebra;
    let law = bch_group_law(&m)?;
    let n = law.dim();
    let names: Vec<String> =
        law.labels().iter().map(|l| format!("a[{l}]")).chain(law.labels().iter().map(|l| format!("b[{l}]"))).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let frame = left_invariant_frame(&law);
    let associative = law.is_associative();
    let mismatch = frame_bracket_mismatch(&m, &frame)?;
    let mut text = format!("group law of {id} (class {}) in exponential coordinates\n", law.class());
    let components: Vec<String> = law.law().iter().map(|p| p.display_with(&refs)).collect();
    for (i, c) in components.iter().enumerate() {
        let _ = writeln!(text, "  ({})  {c}", law.labels()[i]);
    }
    text += "left-invariant frame:\n";
    for (i, f) in frame.iter().enumerate() {
        let _ = writeln!(text, "  X[{}] = {f}", law.labels()[i]);
    }
    let _ = writeln!(text, "associative: {associative}");
    let _ = writeln!(text, "frame reproduces brackets: {}", mismatch.is_none());
    let json = json!({
        "model": id,
        "dim": n,
        "class": law.class(),
        "labels": law.labels(),
        "law": components,
        "frame": frame.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "associative": associative,
        "frame_reproduces_brackets": mismatch.is_none(),
    });
    Ok(Output { text, json, ok: associative && mismatch.is_none() })
}
