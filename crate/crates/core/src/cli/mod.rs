//! Text format and command-line front end.

mod format;
mod parse;

use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

pub use format::{cpolynomial, monomial, polynomial, presentation as serialize, xterm, ymonomial};
pub use parse::{parse_polynomial, parse_presentation};

use crate::algebra::Polynomial;
use crate::complete::{is_gsb, shirshov_complete, CompletionConfig, CompletionStatus, Failure};
use crate::compose::ShapeBound;
use crate::embed::{build_embedding, check_embedding_compositions, injectivity_unchecked, Family, Presentation};
use crate::error::Error;
use crate::order::OrderContext;
use crate::reduce::{irr_members, normal_form};
use crate::verify::check_cd_equivalence;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Parser, Debug)]
#[command(name = "nagsb", version, about = "Gröbner–Shirshov bases in k[Y](X)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Discard composition rules whose leading degree exceeds this.
    #[arg(long, global = true, default_value_t = 6)]
    max_deg: usize,
    /// Largest X-degree of Y-intersection ambiguities; default is each
    /// pair's minimal shape.
    #[arg(long, global = true)]
    shape_bound: Option<usize>,
    /// Keep rules whose leading word becomes reducible instead of re-inserting them
    #[arg(long, global = true)]
    no_interreduce: bool,
    /// Degree window for `irr`, `verify` and the injectivity check.
    #[arg(long, global = true, default_value_t = 3)]
    deg: u32,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Report whether the relations form a Gröbner–Shirshov basis.
    Check { file: PathBuf },
    /// Run the Shirshov algorithm.
    Complete {
        file: PathBuf,
        /// Output file; stdout if omitted
        #[arg(short)]
        o: Option<PathBuf>,
    },
    /// Normal form of an expression modulo the relations.
    Nf {
        file: PathBuf,
        #[arg(long)]
        expr: String,
    },
    /// Irreducible monomials up to `--deg`.
    Irr { file: PathBuf },
    /// Cross-check basis, leading-term and dimension criteria at `--deg`.
    Verify { file: PathBuf },
    /// Build the two-generator embedding and check it.
    Embed {
        file: PathBuf,
        /// Output file; stdout if omitted
        #[arg(short)]
        o: Option<PathBuf>,
    },
}

enum Failed {
    Usage(String),
    Verdict,
    /// A false verdict reported as an engine error.
    Refused(String),
}

impl From<Error> for Failed {
    fn from(e: Error) -> Self {
        match e {
            Error::SourceIncomplete { .. } | Error::NotGsb => Failed::Refused(e.to_string()),
            e => Failed::Usage(e.to_string()),
        }
    }
}

type Outcome = Result<(), Failed>;

/// Runs one command. Exit status: 0 for success or a true verdict, 1 for a
/// false verdict, 2 for usage, input or I/O errors.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(&cli, out, err) {
        Ok(()) => 0,
        Err(Failed::Verdict) => 1,
        Err(Failed::Refused(msg)) => {
            let _ = writeln!(err, "{msg}");
            1
        }
        Err(Failed::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

fn config(cli: &Cli) -> Result<CompletionConfig, Failed> {
    let c = CompletionConfig {
        max_deg: cli.max_deg,
        shape_bound: cli.shape_bound.map_or(ShapeBound::Minimal, ShapeBound::AtMost),
        interreduce: !cli.no_interreduce,
    };
    c.validate()?;
    Ok(c)
}

fn bounds(c: &CompletionConfig) -> String {
    format!("max-deg {}, shape-bound {}", c.max_deg, c.shape_bound)
}

fn load(path: &Path) -> Result<Presentation, Failed> {
    let text = std::fs::read_to_string(path).map_err(|e| Failed::Usage(format!("{}: {e}", path.display())))?;
    parse_presentation(&text).map_err(|e| Failed::Usage(format!("{}: {e}", path.display())))
}

fn save(path: &Path, p: &Presentation) -> Outcome {
    std::fs::write(path, serialize(p)).map_err(|e| Failed::Usage(format!("{}: {e}", path.display())))
}

/// The working relation set `rels ∪ crels·X`, canonical.
fn working_set(p: &Presentation) -> Result<Vec<Polynomial>, Failed> {
    let lifted = Presentation {
        ctx: p.ctx.clone(),
        crels: Vec::new(),
        rels: p.lifted(),
    };
    Ok(lifted.canonicalize()?.rels)
}

fn print_failure(out: &mut dyn Write, ctx: &OrderContext, f: &Failure) -> std::io::Result<()> {
    writeln!(
        out,
        "  {} of rel {} and rel {} at {}: remainder {}",
        f.ambiguity.kind,
        f.f + 1,
        f.g + 1,
        monomial(ctx, &f.ambiguity.w),
        polynomial(ctx, &f.remainder)
    )
}

fn io(e: std::io::Error) -> Failed {
    Failed::Usage(e.to_string())
}

fn dispatch(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let cfg = config(cli)?;
    match &cli.command {
        Command::Check { file } => {
            let p = load(file)?;
            let rules = working_set(&p)?;
            let report = is_gsb(&p.ctx, &rules, &cfg)?;
            if report.is_gsb {
                writeln!(out, "GSB at {} ({} compositions checked)", bounds(&cfg), report.checked).map_err(io)?;
                Ok(())
            } else {
                writeln!(
                    out,
                    "not a GSB at {}: {} of {} compositions do not reduce to 0",
                    bounds(&cfg),
                    report.failures.len(),
                    report.checked
                )
                .map_err(io)?;
                for f in &report.failures {
                    print_failure(out, &p.ctx, f).map_err(io)?;
                }
                Err(Failed::Verdict)
            }
        }
        Command::Complete { file, o } => {
            let p = load(file)?;
            let crels = crate::complete::complete_commutative(&p.crels)?;
            let lifted = Presentation {
                ctx: p.ctx.clone(),
                crels: crels.clone(),
                rels: p.rels.clone(),
            };
            let report = shirshov_complete(&p.ctx, &lifted.lifted(), &cfg)?;
            let implied: Vec<Polynomial> = Presentation {
                ctx: p.ctx.clone(),
                crels: crels.clone(),
                rels: Vec::new(),
            }
            .lifted();
            let result = Presentation {
                ctx: p.ctx.clone(),
                crels,
                rels: report.basis.iter().filter(|f| !implied.contains(f)).cloned().collect(),
            }
            .canonicalize()?;
            let status = match report.status {
                CompletionStatus::Complete => "complete",
                CompletionStatus::BoundReached => "bound reached",
            };
            let summary = format!(
                "{status} at {}: {} rules, {} added, {} pairs processed",
                bounds(&cfg),
                report.basis.len(),
                report.rules_added,
                report.pairs_processed
            );
            let mut notes = vec![summary];
            for m in &report.discarded_over_bound {
                notes.push(format!("  discarded leading monomial {}", monomial(&p.ctx, m)));
            }
            match o {
                Some(path) => {
                    save(path, &result)?;
                    for n in &notes {
                        writeln!(out, "{n}").map_err(io)?;
                    }
                }
                None => {
                    out.write_all(serialize(&result).as_bytes()).map_err(io)?;
                    for n in &notes {
                        writeln!(err, "{n}").map_err(io)?;
                    }
                }
            }
            match report.status {
                CompletionStatus::Complete => Ok(()),
                CompletionStatus::BoundReached => Err(Failed::Verdict),
            }
        }
        Command::Nf { file, expr } => {
            let p = load(file)?;
            let rules = working_set(&p)?;
            let f = parse_polynomial(&p.ctx, expr).map_err(|e| Failed::Usage(format!("--expr: {e}")))?;
            writeln!(out, "{}", polynomial(&p.ctx, &normal_form(&f, &rules))).map_err(io)?;
            Ok(())
        }
        Command::Irr { file } => {
            let p = load(file)?;
            let rules = working_set(&p)?;
            let irr = irr_members(&p.ctx, &rules, cli.deg);
            writeln!(out, "{} irreducible monomials of degree <= {}", irr.len(), cli.deg).map_err(io)?;
            for m in irr.iter().rev() {
                writeln!(out, "{}", monomial(&p.ctx, m)).map_err(io)?;
            }
            Ok(())
        }
        Command::Verify { file } => {
            let p = load(file)?;
            let rules = working_set(&p)?;
            let r = check_cd_equivalence(&p.ctx, &rules, cli.deg, cfg.shape_bound, 0)?;
            let yes = |b: bool| if b { "yes" } else { "no" };
            writeln!(out, "window: degree <= {}, shape-bound {}", r.degree_bound, r.shape_bound).map_err(io)?;
            writeln!(out, "compositions trivial: {}", yes(r.gsb)).map_err(io)?;
            writeln!(out, "leading monomials of the ideal reducible: {}", yes(r.leading_reducible)).map_err(io)?;
            if let Some(w) = &r.leading_witness {
                writeln!(out, "  witness: {}", polynomial(&p.ctx, w)).map_err(io)?;
            }
            writeln!(
                out,
                "rank {} + irreducible {} = {} against {} monomials: {}",
                r.rank,
                r.irreducible,
                r.rank + r.irreducible,
                r.total,
                yes(r.dimension_identity())
            )
            .map_err(io)?;
            if !r.window_exact {
                writeln!(out, "note: some rule has a term above its leading degree; the window may be inexact")
                    .map_err(io)?;
            }
            if !r.consistent() {
                writeln!(err, "inconsistent verdicts at this window").map_err(io)?;
            }
            if r.gsb && r.leading_reducible && r.dimension_identity() {
                Ok(())
            } else {
                Err(Failed::Verdict)
            }
        }
        Command::Embed { file, o } => {
            let p = load(file)?;
            let e = build_embedding(&p, &cfg)?;
            let target = e.target.canonicalize()?;
            match o {
                Some(path) => save(path, &target)?,
                None => out.write_all(serialize(&target).as_bytes()).map_err(io)?,
            }
            let log: &mut dyn Write = if o.is_some() { out } else { err };
            writeln!(
                log,
                "embedding x_i -> a(b^i), b^i right-normed, over the {} declared x-generators",
                e.image.len()
            )
            .map_err(io)?;
            let sizes: Vec<String> = [Family::F1, Family::F2, Family::F3, Family::F4, Family::F5]
                .iter()
                .map(|&f| format!("|{f}| = {}", e.family_size(f)))
                .collect();
            writeln!(log, "{}", sizes.join(", ")).map_err(io)?;
            let comps = check_embedding_compositions(&e, &cfg)?;
            writeln!(log, "compositions at {}:", bounds(&cfg)).map_err(io)?;
            for t in &comps.families {
                writeln!(
                    log,
                    "  {}∧{} {}: {} checked, {} nontrivial",
                    t.first,
                    t.second,
                    t.kind,
                    t.checked,
                    t.failures.len()
                )
                .map_err(io)?;
            }
            if !comps.passed {
                writeln!(log, "target relations are not a GSB at {}", bounds(&cfg)).map_err(io)?;
                return Err(Failed::Verdict);
            }
            if !is_gsb(&e.source.ctx, &e.source_basis, &cfg)?.is_gsb {
                writeln!(log, "source relations are not a GSB at {}", bounds(&cfg)).map_err(io)?;
                return Err(Failed::Verdict);
            }
            let inj = injectivity_unchecked(&e, &e.rules(), cli.deg);
            writeln!(
                log,
                "injectivity at degree <= {}: {} images, nonzero {}, pairwise distinct {}",
                cli.deg,
                inj.images.len(),
                inj.all_nonzero,
                inj.pairwise_distinct
            )
            .map_err(io)?;
            if inj.passed() {
                Ok(())
            } else {
                Err(Failed::Verdict)
            }
        }
    }
}
