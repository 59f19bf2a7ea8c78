//! Front end for the `wordhyp` binary: structure files and the `build`,
//! `member`, `verify` and `dump` commands.

pub mod error;
pub mod format;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use wordhyp_core::hyperbolic::{alt_combing, mon_free_product, one_extend, sgp_free_product, table_lookup, MonoidMode};
use wordhyp_core::oracle::verify_structure;
use wordhyp_core::symbol::parse_word_in;
use wordhyp_core::{HypStructure, Kind, Symbol};

pub use error::CliError;
pub use format::{OracleTree, StructureFile};

use format::{AutomatonDoc, GrammarDoc, KindDoc};

#[derive(Debug, Parser)]
#[command(name = "wordhyp", version, about = "Build and check word-hyperbolic structures")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a construction on structures from one or more files.
    Build {
        /// Input structure files; their sections are merged.
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
        #[arg(long, value_enum)]
        construction: Construction,
        /// Operand structures, in order.
        #[arg(long = "structure", required = true)]
        structures: Vec<String>,
        /// Stabiliser map for `extend`.
        #[arg(long)]
        stabiliser: Option<String>,
        /// Drop ε from the alternating combing (`alt` only).
        #[arg(long)]
        plus: bool,
        /// Name of the result inside the output file.
        #[arg(long, default_value = "result")]
        name: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Decide whether `u · v = w` according to a structure's table.
    Member {
        file: PathBuf,
        #[arg(long)]
        structure: Option<String>,
        u: String,
        v: String,
        w: String,
    },
    /// Compare a structure's table against an oracle up to a length bound.
    Verify {
        file: PathBuf,
        #[arg(long)]
        structure: Option<String>,
        #[arg(long)]
        oracle: String,
        #[arg(long, default_value_t = 8)]
        bound: usize,
    },
    /// Print part of a structure.
    Dump {
        file: PathBuf,
        #[arg(long)]
        structure: Option<String>,
        #[arg(long, value_enum)]
        what: DumpWhat,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Construction {
    Alt,
    Extend,
    SgpFp,
    #[value(name = "mon-fp-1unique")]
    MonFp1Unique,
    MonFpStar,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DumpWhat {
    Combing,
    Table,
    GrammarStats,
}

/// Result of a command that ran to completion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Success,
    VerificationFailed,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Success => 0,
            Outcome::VerificationFailed => 1,
        }
    }
}

pub fn read_file(path: &Path) -> Result<StructureFile, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    StructureFile::parse(&text).map_err(|e| match e {
        CliError::Format(m) => CliError::Format(format!("{}: {m}", path.display())),
        other => other,
    })
}

fn write_file(path: &Path, file: &StructureFile) -> Result<(), CliError> {
    fs::write(path, file.to_json() + "\n").map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

struct Operand {
    structure: HypStructure,
    oracle: Option<OracleTree>,
}

fn operand(file: &StructureFile, name: &str) -> Result<Operand, CliError> {
    let structure = file.structure(name)?;
    let oracle = match &file.structures[name].oracle {
        Some(o) => Some(file.oracle_tree(o)?),
        None => None,
    };
    Ok(Operand { structure, oracle })
}

/// Tags every letter of an operand with its factor index.
fn tag(op: Operand, i: u8) -> Operand {
    let rename = move |s: Symbol| if s.is_marker() { s } else { s.in_factor(i) };
    Operand {
        structure: op.structure.rename(rename),
        oracle: op.oracle.map(|t| t.rename(&|n: &str| format!("{n}@{i}"))),
    }
}

/// Two operands with disjoint alphabets, renamed if they overlap.
fn disjoint(a: Operand, b: Operand, log: &mut impl Write) -> (Operand, Operand) {
    if a.structure.alphabet().is_disjoint(b.structure.alphabet()) {
        return (a, b);
    }
    let _ = writeln!(log, "note: operand alphabets overlap; letters renamed to name@1 and name@2");
    (tag(a, 1), tag(b, 2))
}

fn pick<'a>(file: &'a StructureFile, given: &'a Option<String>) -> Result<&'a str, CliError> {
    match given {
        Some(n) => Ok(n),
        None => file.default_structure(),
    }
}

pub fn run(cli: Cli, out: &mut impl Write, log: &mut impl Write) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Build {
            inputs,
            construction,
            structures,
            stabiliser,
            plus,
            name,
            out: path,
        } => {
            let mut file = StructureFile::default();
            for p in &inputs {
                file.merge(read_file(p)?)?;
            }
            let result = build(&file, construction, &structures, stabiliser.as_deref(), plus, &name, log)?;
            write_file(&path, &result)?;
            let _ = writeln!(out, "wrote {} to {}", name, path.display());
            Ok(Outcome::Success)
        }
        Command::Member { file, structure, u, v, w } => {
            let file = read_file(&file)?;
            let h = file.structure(pick(&file, &structure)?)?;
            let word = |t: &str| parse_word_in(t, h.alphabet());
            let verdict = table_lookup(&h, &word(&u)?, &word(&v)?, &word(&w)?)?;
            let _ = writeln!(out, "{}", if verdict { "MEMBER" } else { "NOT-MEMBER" });
            Ok(Outcome::Success)
        }
        Command::Verify {
            file,
            structure,
            oracle,
            bound,
        } => {
            let file = read_file(&file)?;
            let h = file.structure(pick(&file, &structure)?)?;
            if !file.oracles.contains_key(&oracle) {
                return Err(CliError::Usage(format!("unknown oracle {oracle:?}")));
            }
            let report = verify_structure(&h, &file.oracle(&oracle)?, bound)?;
            let _ = write!(out, "{report}");
            if report.spurious.is_empty() && report.missing.is_empty() {
                let _ = writeln!(out, "OK");
                Ok(Outcome::Success)
            } else {
                let _ = writeln!(out, "FAILED");
                Ok(Outcome::VerificationFailed)
            }
        }
        Command::Dump { file, structure, what } => {
            let file = read_file(&file)?;
            let h = file.structure(pick(&file, &structure)?)?;
            match what {
                DumpWhat::Combing => {
                    let doc = AutomatonDoc::from_nfa(h.combing());
                    let _ = writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("serializable"));
                }
                DumpWhat::Table => {
                    let _ = write!(out, "{}", h.table().to_text());
                }
                DumpWhat::GrammarStats => {
                    let before = h.table().stats();
                    let after = h.table().trim().stats();
                    let _ = writeln!(out, "untrimmed: {} nonterminals, {} productions", before.nonterminals, before.productions);
                    let _ = writeln!(out, "trimmed: {} nonterminals, {} productions", after.nonterminals, after.productions);
                }
            }
            Ok(Outcome::Success)
        }
    }
}

/// Runs `construction` and returns a file holding only its result.
pub fn build(
    file: &StructureFile,
    construction: Construction,
    operands: &[String],
    stabiliser: Option<&str>,
    plus: bool,
    name: &str,
    log: &mut impl Write,
) -> Result<StructureFile, CliError> {
    let arity = if construction == Construction::Extend { 1 } else { 2 };
    if operands.len() != arity {
        return Err(CliError::Usage(format!(
            "{construction:?} takes {arity} structure(s), got {}",
            operands.len()
        )));
    }
    let mut result = StructureFile::default();
    if construction == Construction::Extend {
        let op = operand(file, &operands[0])?;
        let stab_name = stabiliser.ok_or_else(|| CliError::Usage("extend needs --stabiliser".into()))?;
        let ext = one_extend(&op.structure, &file.stabiliser(stab_name)?)?;
        result.insert_structure(name, &ext.structure, op.oracle.as_ref());
        result
            .grammars
            .insert(format!("{name}.equalities"), GrammarDoc::from_grammar(&ext.equalities));
        return Ok(result);
    }

    let (a, b) = disjoint(operand(file, &operands[0])?, operand(file, &operands[1])?, log);
    let product_oracle = |kind: Kind| match (&a.oracle, &b.oracle) {
        (Some(x), Some(y)) => Some(OracleTree::Product(KindDoc::from(kind), Box::new(x.clone()), Box::new(y.clone()))),
        _ => None,
    };
    let h = match construction {
        Construction::Alt => {
            let combing = alt_combing(a.structure.combing(), b.structure.combing(), plus)?;
            result.automata.insert(name.to_string(), AutomatonDoc::from_nfa(&combing));
            return Ok(result);
        }
        Construction::SgpFp => sgp_free_product(&a.structure, &b.structure)?,
        Construction::MonFp1Unique => mon_free_product(&a.structure, &b.structure, MonoidMode::OneUnique)?,
        Construction::MonFpStar => mon_free_product(&a.structure, &b.structure, MonoidMode::Star)?,
        Construction::Extend => unreachable!(),
    };
    result.insert_structure(name, &h, product_oracle(h.kind()).as_ref());
    Ok(result)
}
