use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use treeshift::decide::{self, SoficInput, Verdict};
use treeshift::error::{Budget, Error};
use treeshift::format::{parse_document, write_document, Document};
use treeshift::fta::{subset_fta, EmptinessMethod, SubsetMode};
use treeshift::moore::MooreColoring;
use treeshift::pattern::Pattern;
use treeshift::rabin::{Membership, RabinAutomaton};
use treeshift::sft::Scope;
use treeshift::Alphabet;

/// Decision procedures for tree shifts: sofic presentations, finite-tree
/// automata, shifts of finite type and cellular automata.
#[derive(Parser)]
#[command(name = "treeshift", version)]
struct Cli {
    /// Cap on the number of states of constructed automata
    #[arg(long, global = true, value_name = "MAX-STATES")]
    budget: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ScopeArg {
    Local,
    Global,
}

#[derive(Subcommand)]
enum Command {
    /// Remove states that start no bundle (prints a rabin document)
    Essentialize { automaton: PathBuf },
    /// Report determinism, co-determinism and co-completeness
    Classify { automaton: PathBuf },
    /// Co-determinize by the subset construction (prints a rabin document)
    Codet { automaton: PathBuf },
    /// Join two presentations: the intersection of their shifts
    Join { left: PathBuf, right: PathBuf },
    /// Complement: of a rabin document, the finite-tree automaton for the
    /// missing patterns; of an fta document, its language complement
    Complement { automaton: PathBuf },
    /// Emptiness of a presented shift (rabin) or pattern language (fta)
    Empty { automaton: PathBuf },
    /// Whether a presentation accepts every configuration
    Full { automaton: PathBuf },
    /// Whether a pattern is accepted (rabin or fta document)
    Accepts { automaton: PathBuf, pattern: PathBuf },
    /// Whether the configuration of a moore document lies in the shift
    Member { automaton: PathBuf, coloring: PathBuf },
    /// Admissible blocks of a given size, one term per line
    Blocks {
        sft: PathBuf,
        size: usize,
        #[arg(long, value_enum, default_value_t = ScopeArg::Global)]
        scope: ScopeArg,
    },
    /// Canonical Rabin presentation of a shift of finite type
    Present { sft: PathBuf },
    /// Present a sofic shift as a cellular-automaton image of an SFT
    /// (prints an sft document, a blank line, and a ca document)
    Cover { automaton: PathBuf },
    /// Composite of two cellular automata (outer first)
    Compose { outer: PathBuf, inner: PathBuf },
    /// Rabin presentation of the image of an SFT under a cellular automaton
    Image { ca: PathBuf, sft: PathBuf },
    /// Equality of two sofic shifts; each shift is a rabin document, an sft
    /// document, or an sft document followed by a ca document
    Equal { shifts: Vec<PathBuf> },
    /// Containment of the first sofic shift in the second
    Subset { shifts: Vec<PathBuf> },
    /// Surjectivity of a cellular automaton between two sofic shifts
    Surjective { ca: PathBuf, shifts: Vec<PathBuf> },
    /// A minimal accepted pattern of a presentation or finite-tree automaton
    Sample { automaton: PathBuf },
}

struct CliError {
    code: u8,
    message: String,
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) => 3,
            Error::BudgetExceeded { .. } => 5,
            _ => 4,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> CliError {
    CliError {
        code: 2,
        message: message.into(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let budget = cli
        .budget
        .map(Budget::with_max_states)
        .unwrap_or_default();
    match run(cli.command, &budget) {
        Ok(output) => {
            print!("{output}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

fn read_doc(path: &Path) -> Result<Document, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    parse_document(&text).map_err(|e| CliError {
        code: 3,
        message: format!("{}: {e}", path.display()),
    })
}

fn read_rabin(path: &Path) -> Result<RabinAutomaton, CliError> {
    match read_doc(path)? {
        Document::Rabin(a) => Ok(a),
        d => Err(usage(format!(
            "{}: expected a rabin document, found {}",
            path.display(),
            d.kind()
        ))),
    }
}

fn read_shift_inputs(paths: &[PathBuf]) -> Result<Vec<SoficInput>, CliError> {
    let mut docs = Vec::new();
    for p in paths {
        docs.push((p.clone(), read_doc(p)?));
    }
    let mut out = Vec::new();
    let mut iter = docs.into_iter().peekable();
    while let Some((path, doc)) = iter.next() {
        match doc {
            Document::Rabin(a) => out.push(SoficInput::Automaton(a)),
            Document::Sft(x) => {
                if matches!(iter.peek(), Some((_, Document::Ca(_)))) {
                    let Some((_, Document::Ca(t))) = iter.next() else {
                        unreachable!()
                    };
                    out.push(SoficInput::SftImage(x, t));
                } else {
                    out.push(SoficInput::Sft(x));
                }
            }
            d => {
                return Err(usage(format!(
                    "{}: a {} document does not describe a shift",
                    path.display(),
                    d.kind()
                )))
            }
        }
    }
    Ok(out)
}

fn two_shifts(paths: &[PathBuf]) -> Result<(SoficInput, SoficInput), CliError> {
    let mut inputs = read_shift_inputs(paths)?;
    if inputs.len() != 2 {
        return Err(usage(format!(
            "expected two shift inputs, found {}",
            inputs.len()
        )));
    }
    let second = inputs.pop().unwrap();
    let first = inputs.pop().unwrap();
    Ok((first, second))
}

fn remap_pattern(p: &Pattern, from: &Alphabet, to: &Alphabet) -> Result<Pattern, Error> {
    let emb = from.embedding(to).ok_or_else(|| {
        Error::AlphabetMismatch("pattern alphabet is not part of the automaton's".into())
    })?;
    Ok(p.map_letters(|l| emb[l.0]))
}

fn remap_moore(
    m: &MooreColoring,
    from: &Alphabet,
    to: &Alphabet,
) -> Result<MooreColoring, Error> {
    let emb = from.embedding(to).ok_or_else(|| {
        Error::AlphabetMismatch("coloring alphabet is not part of the automaton's".into())
    })?;
    let outputs = (0..m.state_count()).map(|q| emb[m.output(q).0]).collect();
    m.with_outputs(outputs)
}

fn render_verdict(v: &Verdict) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}", v.answer);
    if let Some(w) = &v.witness {
        let _ = writeln!(out, "witness: {}", w.to_term(&v.alphabet));
    }
    out
}

fn run(command: Command, budget: &Budget) -> Result<String, CliError> {
    match command {
        Command::Essentialize { automaton } => {
            let a = read_rabin(&automaton)?;
            Ok(write_document(&Document::Rabin(a.essentialize())))
        }
        Command::Classify { automaton } => {
            let c = read_rabin(&automaton)?.classify();
            Ok(format!(
                "deterministic {}\ncodeterministic {}\ncocomplete {}\n",
                c.deterministic, c.codeterministic, c.cocomplete
            ))
        }
        Command::Codet { automaton } => {
            let a = read_rabin(&automaton)?.codeterminize(budget)?;
            Ok(write_document(&Document::Rabin(a)))
        }
        Command::Join { left, right } => {
            let joined = read_rabin(&left)?.join(&read_rabin(&right)?)?;
            Ok(write_document(&Document::Rabin(joined)))
        }
        Command::Complement { automaton } => match read_doc(&automaton)? {
            Document::Rabin(a) => {
                let g = subset_fta(&a, SubsetMode::Complement, budget)?;
                Ok(write_document(&Document::Fta(g)))
            }
            Document::Fta(g) => Ok(write_document(&Document::Fta(g.complement(budget)?))),
            d => Err(usage(format!(
                "{}: cannot complement a {} document",
                automaton.display(),
                d.kind()
            ))),
        },
        Command::Empty { automaton } => match read_doc(&automaton)? {
            Document::Rabin(a) => Ok(format!("{}\n", a.is_empty_shift())),
            Document::Fta(g) => {
                let empty = g.is_empty(EmptinessMethod::Fixpoint, budget)?;
                let mut out = format!("{empty}\n");
                if !empty {
                    if let Some(w) = g.sample_accepted(budget)? {
                        let _ = writeln!(out, "witness: {}", w.to_term(g.base().alphabet()));
                    }
                }
                Ok(out)
            }
            d => Err(usage(format!(
                "{}: emptiness applies to rabin or fta documents, found {}",
                automaton.display(),
                d.kind()
            ))),
        },
        Command::Full { automaton } => {
            let a = read_rabin(&automaton)?;
            Ok(render_verdict(&decide::is_full(&a, budget)?))
        }
        Command::Accepts { automaton, pattern } => {
            let Document::Pattern { alphabet, pattern } = read_doc(&pattern)? else {
                return Err(usage(format!(
                    "{}: expected a pattern document",
                    pattern.display()
                )));
            };
            match read_doc(&automaton)? {
                Document::Rabin(a) => {
                    let p = remap_pattern(&pattern, &alphabet, a.alphabet())?;
                    Ok(format!("{}\n", a.accepts_pattern(&p)?.is_some()))
                }
                Document::Fta(g) => {
                    let p = remap_pattern(&pattern, &alphabet, g.base().alphabet())?;
                    Ok(format!("{}\n", g.accepts(&p)?.is_some()))
                }
                d => Err(usage(format!(
                    "{}: acceptance applies to rabin or fta documents, found {}",
                    automaton.display(),
                    d.kind()
                ))),
            }
        }
        Command::Member { automaton, coloring } => {
            let a = read_rabin(&automaton)?;
            let Document::Moore { alphabet, coloring } = read_doc(&coloring)? else {
                return Err(usage(format!(
                    "{}: expected a moore document",
                    coloring.display()
                )));
            };
            let m = remap_moore(&coloring, &alphabet, a.alphabet())?;
            match a.member_moore(&m)? {
                Membership::Member => Ok("true\n".to_string()),
                Membership::RejectedAtDepth(d) => {
                    let truncation = m.expand_delta(d)?;
                    Ok(format!(
                        "false\nwitness: {}\n",
                        truncation.to_term(a.alphabet())
                    ))
                }
            }
        }
        Command::Blocks { sft, size, scope } => {
            let Document::Sft(x) = read_doc(&sft)? else {
                return Err(usage(format!("{}: expected an sft document", sft.display())));
            };
            let scope = match scope {
                ScopeArg::Local => Scope::Local,
                ScopeArg::Global => Scope::Global,
            };
            let blocks = x.admissible_blocks(size, scope, budget)?;
            let mut out = String::new();
            for b in blocks {
                let _ = writeln!(out, "{}", b.to_term(x.alphabet()));
            }
            Ok(out)
        }
        Command::Present { sft } => {
            let Document::Sft(x) = read_doc(&sft)? else {
                return Err(usage(format!("{}: expected an sft document", sft.display())));
            };
            Ok(write_document(&Document::Rabin(
                x.canonical_presentation(budget)?,
            )))
        }
        Command::Cover { automaton } => {
            let a = read_rabin(&automaton)?;
            let (cover, label_map) = treeshift::ca::sft_cover(&a, budget)?;
            Ok(format!(
                "{}\n{}",
                write_document(&Document::Sft(cover)),
                write_document(&Document::Ca(label_map))
            ))
        }
        Command::Compose { outer, inner } => {
            let Document::Ca(outer) = read_doc(&outer)? else {
                return Err(usage(format!("{}: expected a ca document", outer.display())));
            };
            let Document::Ca(inner) = read_doc(&inner)? else {
                return Err(usage(format!("{}: expected a ca document", inner.display())));
            };
            Ok(write_document(&Document::Ca(outer.compose(&inner, budget)?)))
        }
        Command::Image { ca, sft } => {
            let Document::Ca(tau) = read_doc(&ca)? else {
                return Err(usage(format!("{}: expected a ca document", ca.display())));
            };
            let Document::Sft(x) = read_doc(&sft)? else {
                return Err(usage(format!("{}: expected an sft document", sft.display())));
            };
            Ok(write_document(&Document::Rabin(
                tau.image_automaton(&x, budget)?,
            )))
        }
        Command::Equal { shifts } => {
            let (x, y) = two_shifts(&shifts)?;
            Ok(render_verdict(&decide::equal_sofic(&x, &y, budget)?))
        }
        Command::Subset { shifts } => {
            let (x, y) = two_shifts(&shifts)?;
            Ok(render_verdict(&decide::contained_sofic(&x, &y, budget)?))
        }
        Command::Surjective { ca, shifts } => {
            let Document::Ca(tau) = read_doc(&ca)? else {
                return Err(usage(format!("{}: expected a ca document", ca.display())));
            };
            let (x, y) = two_shifts(&shifts)?;
            Ok(render_verdict(&decide::surjective(&tau, &x, &y, budget)?))
        }
        Command::Sample { automaton } => {
            let g = match read_doc(&automaton)? {
                Document::Rabin(a) => subset_fta(&a, SubsetMode::Language, budget)?,
                Document::Fta(g) => g,
                d => {
                    return Err(usage(format!(
                        "{}: sampling applies to rabin or fta documents, found {}",
                        automaton.display(),
                        d.kind()
                    )))
                }
            };
            match g.sample_accepted(budget)? {
                Some(p) => Ok(format!("{}\n", p.to_term(g.base().alphabet()))),
                None => Ok("none\n".to_string()),
            }
        }
    }
}
