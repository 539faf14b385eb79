//! The line-oriented document formats of the command-line tool. A document
//! is UTF-8 text with LF line endings; `#` starts a comment, blank lines
//! are ignored, and the first meaningful line is the kind tag. Emission is
//! canonical, so every document re-parses to a semantically identical
//! object and identical objects serialize to identical bytes.
//!
//! ```text
//! rabin                    fta (rabin fields plus)   sft
//! sigma <k>                initial <id>...           sigma <k>
//! alphabet <tok>...        final <id>                alphabet <tok>...
//! states <id>...                                     memory <n>
//! bundle <s> <a> <s>...                              forbid <term>
//!
//! ca                       pattern                   moore
//! sigma <k>                sigma <k>                 sigma <k>
//! alphabet-in <tok>...     alphabet <tok>...         alphabet <tok>...
//! alphabet-out <tok>...    term <term>               states <id>...
//! memory <n>                                         start <id>
//! rule <term> <letter>                               step <id> <dir> <id>
//!                                                    out <id> <letter>
//! ```

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::alphabet::{Alphabet, Arity, Letter};
use crate::ca::CellularAutomaton;
use crate::error::Error;
use crate::fta::FiniteTreeAutomaton;
use crate::moore::MooreColoring;
use crate::pattern::{block_from_rank, Pattern};
use crate::rabin::{RabinAutomaton, StateId, TransitionBundle};
use crate::sft::SftDescription;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Document {
    Rabin(RabinAutomaton),
    Fta(FiniteTreeAutomaton),
    Sft(SftDescription),
    Ca(CellularAutomaton),
    Pattern { alphabet: Alphabet, pattern: Pattern },
    Moore { alphabet: Alphabet, coloring: MooreColoring },
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Rabin(_) => "rabin",
            Document::Fta(_) => "fta",
            Document::Sft(_) => "sft",
            Document::Ca(_) => "ca",
            Document::Pattern { .. } => "pattern",
            Document::Moore { .. } => "moore",
        }
    }
}

/// One meaningful line: a keyword and the remaining tokens.
struct Line {
    number: usize,
    keyword: String,
    rest: Vec<String>,
    /// everything after the keyword, joined; used for term payloads
    tail: String,
}

fn meaningful_lines(text: &str) -> Vec<Line> {
    let mut out = Vec::new();
    for (number, raw) in text.lines().enumerate() {
        let stripped = match raw.find('#') {
            Some(i) => &raw[..i],
            None => raw,
        };
        let mut tokens = stripped.split_whitespace();
        let Some(keyword) = tokens.next() else { continue };
        let rest: Vec<String> = tokens.map(str::to_string).collect();
        let tail = stripped
            .trim_start()
            .strip_prefix(keyword)
            .unwrap_or("")
            .trim()
            .to_string();
        out.push(Line {
            number: number + 1,
            keyword: keyword.to_string(),
            rest,
            tail,
        });
    }
    out
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse(format!("line {line}: {}", msg.into()))
}

/// Field collector enforcing single occurrence of scalar fields.
struct Fields<'a> {
    lines: &'a [Line],
}

impl<'a> Fields<'a> {
    fn single(&self, keyword: &str) -> Result<&'a Line, Error> {
        let mut found = None;
        for l in self.lines {
            if l.keyword == keyword {
                if found.is_some() {
                    return Err(parse_err(l.number, format!("duplicate {keyword} line")));
                }
                found = Some(l);
            }
        }
        found.ok_or_else(|| Error::Parse(format!("missing {keyword} line")))
    }

    fn repeated(&self, keyword: &str) -> impl Iterator<Item = &'a Line> + '_ {
        let keyword = keyword.to_string();
        self.lines.iter().filter(move |l| l.keyword == keyword)
    }

    fn check_keywords(&self, allowed: &[&str]) -> Result<(), Error> {
        for l in self.lines {
            if !allowed.contains(&l.keyword.as_str()) {
                return Err(parse_err(l.number, format!("unknown field {:?}", l.keyword)));
            }
        }
        Ok(())
    }
}

fn parse_usize(line: &Line, what: &str) -> Result<usize, Error> {
    if line.rest.len() != 1 {
        return Err(parse_err(line.number, format!("{what} takes one value")));
    }
    line.rest[0]
        .parse()
        .map_err(|_| parse_err(line.number, format!("{what} must be a number")))
}

fn parse_sigma(fields: &Fields) -> Result<Arity, Error> {
    let line = fields.single("sigma")?;
    let k = parse_usize(line, "sigma")?;
    Arity::new(k).map_err(|e| parse_err(line.number, e.to_string()))
}

fn parse_alphabet(fields: &Fields, keyword: &str) -> Result<Alphabet, Error> {
    let line = fields.single(keyword)?;
    Alphabet::new(line.rest.clone()).map_err(|e| parse_err(line.number, e.to_string()))
}

fn letter_of(line: &Line, token: &str, alphabet: &Alphabet) -> Result<Letter, Error> {
    alphabet
        .index_of(token)
        .ok_or_else(|| parse_err(line.number, format!("unknown letter {token:?}")))
}

fn state_of(line: &Line, token: &str, states: &[String]) -> Result<StateId, Error> {
    states
        .iter()
        .position(|s| s == token)
        .map(StateId)
        .ok_or_else(|| parse_err(line.number, format!("unknown state {token:?}")))
}

pub fn parse_document(text: &str) -> Result<Document, Error> {
    let lines = meaningful_lines(text);
    let Some((kind, body)) = lines.split_first() else {
        return Err(Error::Parse("empty document".into()));
    };
    if !kind.rest.is_empty() {
        return Err(parse_err(kind.number, "the kind tag stands alone"));
    }
    let fields = Fields { lines: body };
    match kind.keyword.as_str() {
        "rabin" => Ok(Document::Rabin(parse_rabin_fields(&fields, &[])?)),
        "fta" => {
            let base = parse_rabin_fields(&fields, &["initial", "final"])?;
            let initial_line = fields.single("initial")?;
            let mut initials = BTreeSet::new();
            for tok in &initial_line.rest {
                initials.insert(state_of(initial_line, tok, base.state_names())?);
            }
            let final_line = fields.single("final")?;
            if final_line.rest.len() != 1 {
                return Err(parse_err(final_line.number, "final takes one state"));
            }
            let final_state = state_of(final_line, &final_line.rest[0], base.state_names())?;
            FiniteTreeAutomaton::new(base, initials, final_state)
                .map(Document::Fta)
                .map_err(|e| Error::Parse(e.to_string()))
        }
        "sft" => {
            fields.check_keywords(&["sigma", "alphabet", "memory", "forbid"])?;
            let arity = parse_sigma(&fields)?;
            let alphabet = parse_alphabet(&fields, "alphabet")?;
            let memory = parse_usize(fields.single("memory")?, "memory")?;
            let mut forbidden = Vec::new();
            for line in fields.repeated("forbid") {
                let p = Pattern::parse_term(&line.tail, &alphabet, arity)
                    .map_err(|e| parse_err(line.number, e.to_string()))?;
                forbidden.push(p);
            }
            SftDescription::new(alphabet, arity, memory, forbidden)
                .map(Document::Sft)
                .map_err(|e| Error::Parse(e.to_string()))
        }
        "ca" => {
            fields.check_keywords(&["sigma", "alphabet-in", "alphabet-out", "memory", "rule"])?;
            let arity = parse_sigma(&fields)?;
            let input = parse_alphabet(&fields, "alphabet-in")?;
            let output = parse_alphabet(&fields, "alphabet-out")?;
            let memory = parse_usize(fields.single("memory")?, "memory")?;
            let count = crate::pattern::block_count(arity, input.len(), memory)
                .filter(|&c| c <= usize::MAX as u128)
                .ok_or_else(|| Error::Parse("rule table too large".into()))?
                as usize;
            let mut table: Vec<Option<Letter>> = vec![None; count];
            for line in fields.repeated("rule") {
                let Some((term_text, letter_tok)) = line.tail.rsplit_once(char::is_whitespace)
                else {
                    return Err(parse_err(line.number, "rule takes a term and a letter"));
                };
                let block = Pattern::parse_term(term_text.trim(), &input, arity)
                    .map_err(|e| parse_err(line.number, e.to_string()))?;
                if block.block_size() != Some(memory) {
                    return Err(parse_err(
                        line.number,
                        format!("rule term must be a block of size {memory}"),
                    ));
                }
                let letter = letter_of(line, letter_tok, &output)?;
                let rank = crate::pattern::block_rank(&block, input.len()) as usize;
                if table[rank].is_some() {
                    return Err(parse_err(line.number, "duplicate rule entry"));
                }
                table[rank] = Some(letter);
            }
            let table: Vec<Letter> = table
                .into_iter()
                .collect::<Option<_>>()
                .ok_or_else(|| Error::Parse("rule must be total on all blocks".into()))?;
            CellularAutomaton::new(input, output, arity, memory, table)
                .map(Document::Ca)
                .map_err(|e| Error::Parse(e.to_string()))
        }
        "pattern" => {
            fields.check_keywords(&["sigma", "alphabet", "term"])?;
            let arity = parse_sigma(&fields)?;
            let alphabet = parse_alphabet(&fields, "alphabet")?;
            let line = fields.single("term")?;
            let pattern = Pattern::parse_term(&line.tail, &alphabet, arity)
                .map_err(|e| parse_err(line.number, e.to_string()))?;
            Ok(Document::Pattern { alphabet, pattern })
        }
        "moore" => {
            fields.check_keywords(&["sigma", "alphabet", "states", "start", "step", "out"])?;
            let arity = parse_sigma(&fields)?;
            let alphabet = parse_alphabet(&fields, "alphabet")?;
            let states: Vec<String> = fields.single("states")?.rest.clone();
            let start_line = fields.single("start")?;
            if start_line.rest.len() != 1 {
                return Err(parse_err(start_line.number, "start takes one state"));
            }
            let start = state_of(start_line, &start_line.rest[0], &states)?.0;
            let mut step: Vec<Vec<Option<usize>>> =
                vec![vec![None; arity.get()]; states.len()];
            for line in fields.repeated("step") {
                if line.rest.len() != 3 {
                    return Err(parse_err(line.number, "step takes state, direction, state"));
                }
                let from = state_of(line, &line.rest[0], &states)?.0;
                let dir: usize = line.rest[1]
                    .parse()
                    .ok()
                    .filter(|&d| d < arity.get())
                    .ok_or_else(|| parse_err(line.number, "bad direction"))?;
                let to = state_of(line, &line.rest[2], &states)?.0;
                if step[from][dir].is_some() {
                    return Err(parse_err(line.number, "duplicate step entry"));
                }
                step[from][dir] = Some(to);
            }
            let step: Vec<Vec<usize>> = step
                .into_iter()
                .map(|row| row.into_iter().collect::<Option<_>>())
                .collect::<Option<_>>()
                .ok_or_else(|| Error::Parse("step must be total".into()))?;
            let mut output: Vec<Option<Letter>> = vec![None; states.len()];
            for line in fields.repeated("out") {
                if line.rest.len() != 2 {
                    return Err(parse_err(line.number, "out takes state and letter"));
                }
                let state = state_of(line, &line.rest[0], &states)?.0;
                let letter = letter_of(line, &line.rest[1], &alphabet)?;
                if output[state].is_some() {
                    return Err(parse_err(line.number, "duplicate out entry"));
                }
                output[state] = Some(letter);
            }
            let output: Vec<Letter> = output
                .into_iter()
                .collect::<Option<_>>()
                .ok_or_else(|| Error::Parse("out must be total".into()))?;
            let coloring = MooreColoring::new(arity, states, start, step, output)
                .map_err(|e| Error::Parse(e.to_string()))?;
            Ok(Document::Moore { alphabet, coloring })
        }
        other => Err(parse_err(kind.number, format!("unknown document kind {other:?}"))),
    }
}

fn parse_rabin_fields(fields: &Fields, extra: &[&str]) -> Result<RabinAutomaton, Error> {
    let mut allowed = vec!["sigma", "alphabet", "states", "bundle"];
    allowed.extend_from_slice(extra);
    fields.check_keywords(&allowed)?;
    let arity = parse_sigma(fields)?;
    let alphabet = parse_alphabet(fields, "alphabet")?;
    let states: Vec<String> = fields.single("states")?.rest.clone();
    let mut bundles = Vec::new();
    for line in fields.repeated("bundle") {
        if line.rest.len() != 2 + arity.get() {
            return Err(parse_err(
                line.number,
                format!("bundle takes a state, a letter and {} states", arity.get()),
            ));
        }
        let initial = state_of(line, &line.rest[0], &states)?;
        let label = letter_of(line, &line.rest[1], &alphabet)?;
        let terminals = line.rest[2..]
            .iter()
            .map(|t| state_of(line, t, &states))
            .collect::<Result<_, _>>()?;
        bundles.push(TransitionBundle::new(initial, label, terminals));
    }
    RabinAutomaton::new(arity, alphabet, states, bundles).map_err(|e| Error::Parse(e.to_string()))
}

pub fn write_document(doc: &Document) -> String {
    let mut out = String::new();
    match doc {
        Document::Rabin(a) => write_rabin(&mut out, a),
        Document::Fta(g) => {
            write_rabin_with_kind(&mut out, g.base(), "fta");
            out.push_str("initial");
            for s in g.initials() {
                let _ = write!(out, " {}", g.base().state_name(*s));
            }
            out.push('\n');
            let _ = writeln!(out, "final {}", g.base().state_name(g.final_state()));
        }
        Document::Sft(x) => {
            let _ = writeln!(out, "sft");
            let _ = writeln!(out, "sigma {}", x.arity());
            let _ = writeln!(out, "alphabet {}", x.alphabet().tokens().join(" "));
            let _ = writeln!(out, "memory {}", x.memory());
            for p in x.forbidden() {
                let _ = writeln!(out, "forbid {}", p.to_term(x.alphabet()));
            }
        }
        Document::Ca(ca) => {
            let _ = writeln!(out, "ca");
            let _ = writeln!(out, "sigma {}", ca.arity());
            let _ = writeln!(out, "alphabet-in {}", ca.input_alphabet().tokens().join(" "));
            let _ = writeln!(out, "alphabet-out {}", ca.output_alphabet().tokens().join(" "));
            let _ = writeln!(out, "memory {}", ca.memory());
            for (rank, letter) in ca.table().iter().enumerate() {
                let block = block_from_rank(
                    ca.arity(),
                    ca.input_alphabet().len(),
                    ca.memory(),
                    rank as u128,
                );
                let _ = writeln!(
                    out,
                    "rule {} {}",
                    block.to_term(ca.input_alphabet()),
                    ca.output_alphabet().token(*letter)
                );
            }
        }
        Document::Pattern { alphabet, pattern } => {
            let _ = writeln!(out, "pattern");
            let _ = writeln!(out, "sigma {}", pattern.arity());
            let _ = writeln!(out, "alphabet {}", alphabet.tokens().join(" "));
            let _ = writeln!(out, "term {}", pattern.to_term(alphabet));
        }
        Document::Moore { alphabet, coloring } => {
            let _ = writeln!(out, "moore");
            let _ = writeln!(out, "sigma {}", coloring.arity());
            let _ = writeln!(out, "alphabet {}", alphabet.tokens().join(" "));
            let _ = writeln!(out, "states {}", coloring.state_names().join(" "));
            let _ = writeln!(out, "start {}", coloring.state_names()[coloring.start()]);
            for q in 0..coloring.state_count() {
                for d in coloring.arity().directions() {
                    let _ = writeln!(
                        out,
                        "step {} {} {}",
                        coloring.state_names()[q],
                        d,
                        coloring.state_names()[coloring.step(q, d)]
                    );
                }
            }
            for q in 0..coloring.state_count() {
                let _ = writeln!(
                    out,
                    "out {} {}",
                    coloring.state_names()[q],
                    alphabet.token(coloring.output(q))
                );
            }
        }
    }
    out
}

fn write_rabin(out: &mut String, a: &RabinAutomaton) {
    write_rabin_with_kind(out, a, "rabin");
}

fn write_rabin_with_kind(out: &mut String, a: &RabinAutomaton, kind: &str) {
    let _ = writeln!(out, "{kind}");
    let _ = writeln!(out, "sigma {}", a.arity());
    let _ = writeln!(out, "alphabet {}", a.alphabet().tokens().join(" "));
    out.push_str("states");
    for s in a.state_names() {
        let _ = write!(out, " {s}");
    }
    out.push('\n');
    for b in a.bundles() {
        let _ = write!(
            out,
            "bundle {} {}",
            a.state_name(b.initial),
            a.alphabet().token(b.label)
        );
        for t in &b.terminals {
            let _ = write!(out, " {}", a.state_name(*t));
        }
        out.push('\n');
    }
}
