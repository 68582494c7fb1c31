//! `relbunch`: parse, annotate, substitute, check and generate bunched
//! natural deduction derivations from the command line.
//!
//! Exit codes: 0 success (valid, witness found), 1 invalid or no witness,
//! 2 usage, parse or file error.

use std::fs;
use std::io::{self, Read};
use std::path::{Path as FsPath, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use relbunch::acceptance;
use relbunch::annotate::{annotations_from, sharing_report, ShareMode};
use relbunch::deriv::{apply_depth_to_tree, apply_rseq_to_tree, check_with, parse_tree, render_tree, CheckOptions, System};
use relbunch::exec::Exec;
use relbunch::harness::{gen_derivation, GenConfig};
use relbunch::seqred::{red, RSeq, Seq};
use relbunch::subst::{DepthSubstitution, RseqSubstitution, Substitution};
use relbunch::syntax::{parse_bunch, parse_consecution, parse_formula, Consecution, Node};
use relbunch::translate::{cf, tau_bunch};

#[derive(Parser)]
#[command(name = "relbunch", version, about = "Bunched natural deduction for the relevant logics B and R")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a formula, bunch, consecution or derivation and print it back
    Parse {
        #[arg(long, value_enum, default_value_t = Kind::Auto)]
        kind: Kind,
        /// Text to parse, `@FILE` to read a file, or `-` for stdin
        #[arg(default_value = "-")]
        input: String,
    },
    /// Print every node of a bunch with its depth or sequence
    Annotate {
        #[arg(long, value_enum)]
        mode: AnnMode,
        bunch: String,
    },
    /// Reduce a sequence over l r L P n (`e` is empty)
    Reduce { seq: String },
    /// Apply a substitution file to a term, or to a derivation with --deriv
    Subst {
        #[arg(long, value_enum)]
        mode: AnnMode,
        /// Starting depth (depth mode) or reduced sequence (rseq mode)
        #[arg(long, allow_hyphen_values = true)]
        at: String,
        #[arg(long)]
        sub: PathBuf,
        /// Derivation file to transform instead of a term
        #[arg(long, conflicts_with = "term")]
        deriv: Option<PathBuf>,
        /// A bunch, formula or consecution
        #[arg(required_unless_present = "deriv")]
        term: Option<String>,
    },
    /// Check a derivation file
    Check {
        #[arg(long, default_value = "B")]
        system: System,
        /// Also accept structural rules read from conclusion to premise
        #[arg(long)]
        structural_bidirectional: bool,
        /// In R, drop B's negation introduction (keep only the R variant)
        #[arg(long)]
        r_without_negi: bool,
        file: PathBuf,
    },
    /// Find a variable shared by the two sides of a consecution
    Share {
        #[arg(long, value_enum)]
        mode: ShareArg,
        consecution: String,
    },
    /// Characteristic formula or fusion-free translation of a bunch
    Translate {
        #[arg(value_enum)]
        function: Translation,
        bunch: String,
    },
    /// Write random valid derivations to a directory
    Gen {
        #[arg(long, default_value_t = 10)]
        count: u64,
        /// Maximum number of rule nodes per derivation
        #[arg(long, default_value_t = 8)]
        steps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "B")]
        system: System,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the acceptance suite and print a pass/fail table
    Selftest {
        /// Disable the thread pool
        #[arg(long)]
        sequential: bool,
        /// Run only these criteria
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Auto,
    Formula,
    Bunch,
    Consecution,
    Deriv,
}

#[derive(Clone, Copy, ValueEnum)]
enum AnnMode {
    Depth,
    Rseq,
}

#[derive(Clone, Copy, ValueEnum)]
enum ShareArg {
    Plain,
    Depth,
    Rseq,
}

#[derive(Clone, Copy, ValueEnum)]
enum Translation {
    Cf,
    Tau,
}

fn read_file(path: &FsPath) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn read_input(input: &str) -> Result<String> {
    if input == "-" {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text).context("cannot read stdin")?;
        Ok(text)
    } else if let Some(path) = input.strip_prefix('@') {
        read_file(FsPath::new(path))
    } else {
        Ok(input.to_string())
    }
}

fn looks_like_tree(text: &str) -> bool {
    let t = text.trim_start();
    t.starts_with(";;") || ["(rule", "(id", "(leaf"].iter().any(|p| t.starts_with(p))
}

fn parse_cmd(kind: Kind, input: &str) -> Result<String> {
    let text = read_input(input)?;
    let kind = match kind {
        Kind::Auto if looks_like_tree(&text) => Kind::Deriv,
        Kind::Auto if text.contains("|-") => Kind::Consecution,
        Kind::Auto => Kind::Bunch,
        k => k,
    };
    let text = text.trim();
    Ok(match kind {
        Kind::Formula => parse_formula(text)?.to_string(),
        Kind::Bunch | Kind::Auto => parse_bunch(text)?.to_string(),
        Kind::Consecution => parse_consecution(text)?.to_string(),
        Kind::Deriv => render_tree(&parse_tree(text)?),
    })
}

fn annotate_cmd(mode: AnnMode, text: &str) -> Result<String> {
    let b = parse_bunch(text)?;
    let lines: Vec<String> = match mode {
        AnnMode::Depth => annotations_from(Node::Bunch(&b), 0i64)
            .into_iter()
            .map(|e| format!("{} {} {}", e.path, e.node, e.annotation))
            .collect(),
        AnnMode::Rseq => annotations_from(Node::Bunch(&b), RSeq::empty())
            .into_iter()
            .map(|e| format!("{} {} {}", e.path, e.node, e.annotation))
            .collect(),
    };
    Ok(lines.join("\n"))
}

fn subst_term<A: relbunch::annotate::Annotation>(s: &impl Substitution<A>, at: &A, text: &str) -> Result<String> {
    if text.contains("|-") {
        let c = parse_consecution(text)?;
        Ok(Consecution::new(s.apply_bunch(at, &c.antecedent), s.apply_formula(at, &c.succedent)).to_string())
    } else {
        Ok(s.apply_bunch(at, &parse_bunch(text)?).to_string())
    }
}

fn subst_cmd(mode: AnnMode, at: &str, sub: &FsPath, deriv: Option<&FsPath>, term: Option<&str>) -> Result<String> {
    let sub_text = read_file(sub)?;
    let tree = deriv.map(|p| read_file(p).and_then(|t| parse_tree(&t).map_err(|e| anyhow!("{}: {e}", p.display()))));
    let tree = tree.transpose()?;
    match mode {
        AnnMode::Depth => {
            let n: i64 = at.parse().with_context(|| format!("--at {at:?} is not an integer"))?;
            let d = DepthSubstitution::parse(&sub_text).with_context(|| format!("in {}", sub.display()))?;
            match (&tree, term) {
                (Some(t), _) => Ok(render_tree(&apply_depth_to_tree(&d, n, t).map_err(Unsupported)?)),
                (None, Some(text)) => subst_term(&d, &n, text),
                (None, None) => bail!("nothing to substitute"),
            }
        }
        AnnMode::Rseq => {
            let x: RSeq = at.parse().with_context(|| format!("--at {at:?} is not a reduced sequence"))?;
            let s = RseqSubstitution::parse(&sub_text).with_context(|| format!("in {}", sub.display()))?;
            match (&tree, term) {
                (Some(t), _) => Ok(render_tree(&apply_rseq_to_tree(&s, &x, t).map_err(Unsupported)?)),
                (None, Some(text)) => subst_term(&s, &x, text),
                (None, None) => bail!("nothing to substitute"),
            }
        }
    }
}

/// A derivation the action is undefined on; reported with exit code 1.
#[derive(Debug)]
struct Unsupported(relbunch::deriv::DerivError);

impl std::fmt::Display for Unsupported {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

impl std::error::Error for Unsupported {}

fn run(cli: Cli) -> Result<ExitCode> {
    let ok = ExitCode::SUCCESS;
    let no = ExitCode::from(1);
    match cli.command {
        Command::Parse { kind, input } => println!("{}", parse_cmd(kind, &input)?),
        Command::Annotate { mode, bunch } => println!("{}", annotate_cmd(mode, &bunch)?),
        Command::Reduce { seq } => {
            let s: Seq = seq.parse()?;
            println!("{}", red(&s));
        }
        Command::Subst {
            mode,
            at,
            sub,
            deriv,
            term,
        } => println!("{}", subst_cmd(mode, &at, &sub, deriv.as_deref(), term.as_deref())?),
        Command::Check {
            system,
            structural_bidirectional,
            r_without_negi,
            file,
        } => {
            let text = read_file(&file)?;
            let tree = parse_tree(&text).map_err(|e| anyhow!("{}: {e}", file.display()))?;
            let opts = CheckOptions {
                structural_bidirectional,
                r_without_negi,
            };
            let report = check_with(&tree, system, &opts);
            print!("{report}");
            return Ok(if report.valid { ok } else { no });
        }
        Command::Share { mode, consecution } => {
            let c = parse_consecution(&consecution)?;
            let mode = match mode {
                ShareArg::Plain => ShareMode::Plain,
                ShareArg::Depth => ShareMode::Depth,
                ShareArg::Rseq => ShareMode::Rseq,
            };
            return Ok(match sharing_report(&c.antecedent, &c.succedent, mode) {
                Some(w) => {
                    println!("{w}");
                    ok
                }
                None => {
                    println!("no shared variable");
                    no
                }
            });
        }
        Command::Translate { function, bunch } => {
            let b = parse_bunch(&bunch)?;
            let out = match function {
                Translation::Cf => cf(&b),
                Translation::Tau => tau_bunch(&b),
            };
            println!("{out}");
        }
        Command::Gen {
            count,
            steps,
            seed,
            system,
            out,
        } => {
            if steps == 0 {
                bail!("--steps must be positive");
            }
            fs::create_dir_all(&out).with_context(|| format!("cannot create {}", out.display()))?;
            let base = GenConfig {
                max_rule_nodes: steps,
                system,
                ..GenConfig::default()
            };
            for i in 0..count {
                let s = seed.wrapping_add(i);
                let path = out.join(format!("deriv_{s:06}.deriv"));
                let text = format!(";; seed {s}, system {system}\n{}\n", render_tree(&gen_derivation(&base.with_seed(s))));
                fs::write(&path, text).with_context(|| format!("cannot write {}", path.display()))?;
                println!("{}", path.display());
            }
        }
        Command::Selftest { sequential, only } => {
            let exec = if sequential { Exec::Sequential } else { Exec::Parallel };
            let ids: Vec<u8> = if only.is_empty() {
                acceptance::CRITERIA.iter().map(|(id, _)| *id).collect()
            } else {
                only
            };
            let mut failed = 0;
            for id in ids {
                let o = acceptance::run(id, exec);
                failed += usize::from(!o.passed);
                println!("{o}");
            }
            return Ok(if failed == 0 { ok } else { no });
        }
    }
    Ok(ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<Unsupported>().is_some() {
                ExitCode::from(1)
            } else {
                ExitCode::from(2)
            }
        }
    }
}
