//! Cellular automata on tree shifts. A cellular automaton is given by a
//! memory depth `n` and a total local rule from blocks of size `n` to
//! output letters; applying it to a configuration relabels every vertex by
//! the rule value of the shifted restriction below it. The rule is stored
//! as an explicit table indexed by the canonical rank of the size-`n`
//! block, which keeps padding and composition exact.
//!
//! The image-automaton construction turns a cellular automaton on a shift
//! of finite type into an unrestricted Rabin automaton presenting the image
//! shift, and `sft_cover` goes the other way: it presents a sofic shift as
//! the image of a shift of finite type over the automaton's own bundles.

use std::collections::BTreeMap;

use crate::alphabet::{Alphabet, Arity, Letter};
use crate::error::{Budget, Error};
use crate::moore::MooreColoring;
use crate::pattern::{block_count, block_from_rank, block_rank, Pattern};
use crate::rabin::{RabinAutomaton, StateId, TransitionBundle};
use crate::sft::{consistent_tuples, Scope, SftDescription};
use crate::tree::{delta_words, FullTree, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellularAutomaton {
    input: Alphabet,
    output: Alphabet,
    arity: Arity,
    memory: usize,
    /// `table[block_rank(p)]` is the output letter of the size-`memory`
    /// block `p` over the input alphabet.
    table: Vec<Letter>,
}

impl CellularAutomaton {
    pub fn new(
        input: Alphabet,
        output: Alphabet,
        arity: Arity,
        memory: usize,
        table: Vec<Letter>,
    ) -> Result<Self, Error> {
        if memory < 1 {
            return Err(Error::invalid("cellular automaton", "memory must be at least 1"));
        }
        let expected = block_count(arity, input.len(), memory)
            .filter(|&c| c <= usize::MAX as u128)
            .ok_or_else(|| Error::invalid("cellular automaton", "rule table too large"))?;
        if table.len() as u128 != expected {
            return Err(Error::invalid(
                "cellular automaton",
                format!(
                    "rule must be total: expected {expected} entries, got {}",
                    table.len()
                ),
            ));
        }
        if table.iter().any(|l| !output.contains(*l)) {
            return Err(Error::invalid(
                "cellular automaton",
                "rule output outside the output alphabet",
            ));
        }
        Ok(CellularAutomaton {
            input,
            output,
            arity,
            memory,
            table,
        })
    }

    /// Builds the table by evaluating `rule` on every block of size
    /// `memory`, in canonical order.
    pub fn from_fn(
        input: Alphabet,
        output: Alphabet,
        arity: Arity,
        memory: usize,
        budget: &Budget,
        rule: impl Fn(&Pattern) -> Letter,
    ) -> Result<Self, Error> {
        let count = block_count(arity, input.len(), memory).ok_or(Error::BudgetExceeded {
            what: "rule table",
            needed: u128::MAX,
            limit: budget.max_patterns as u128,
        })?;
        budget.check_patterns("rule table", count)?;
        let table = (0..count)
            .map(|r| rule(&block_from_rank(arity, input.len(), memory, r)))
            .collect();
        CellularAutomaton::new(input, output, arity, memory, table)
    }

    /// The identity cellular automaton: memory 1, every letter to itself.
    pub fn identity(alphabet: Alphabet, arity: Arity) -> Self {
        let table = alphabet.letters().collect();
        CellularAutomaton {
            input: alphabet.clone(),
            output: alphabet,
            arity,
            memory: 1,
            table,
        }
    }

    /// The constant map onto a single letter of the output alphabet.
    pub fn constant(input: Alphabet, output: Alphabet, letter: Letter, arity: Arity) -> Self {
        let table = vec![letter; input.len()];
        CellularAutomaton {
            input,
            output,
            arity,
            memory: 1,
            table,
        }
    }

    pub fn input_alphabet(&self) -> &Alphabet {
        &self.input
    }

    pub fn output_alphabet(&self) -> &Alphabet {
        &self.output
    }

    pub fn arity(&self) -> Arity {
        self.arity
    }

    pub fn memory(&self) -> usize {
        self.memory
    }

    pub fn table(&self) -> &[Letter] {
        &self.table
    }

    /// Whether this is extensionally the identity: alphabets equal and every
    /// block maps to its root letter.
    pub fn is_identity(&self) -> bool {
        self.input == self.output
            && self
                .table
                .iter()
                .enumerate()
                .all(|(r, &l)| {
                    block_from_rank(self.arity, self.input.len(), self.memory, r as u128)
                        .root_label()
                        == l
                })
    }

    /// Rule value of a block with support exactly `Δmemory`.
    pub fn rule(&self, block: &Pattern) -> Result<Letter, Error> {
        if block.arity() != self.arity {
            return Err(Error::ArityMismatch {
                left: self.arity.get(),
                right: block.arity().get(),
            });
        }
        if block.block_size() != Some(self.memory) {
            return Err(Error::invalid(
                "rule application",
                format!("expected a block of size {}", self.memory),
            ));
        }
        if block.max_letter().0 >= self.input.len() {
            return Err(Error::AlphabetMismatch(
                "block uses a letter outside the input alphabet".into(),
            ));
        }
        Ok(self.table[block_rank(block, self.input.len()) as usize])
    }

    /// Applies the automaton to a block of size `m + memory − 1`, producing
    /// the block of size `m` whose letter at `w` is the rule value of the
    /// shifted restriction at `w`.
    pub fn apply_to_pattern(&self, p: &Pattern) -> Result<Pattern, Error> {
        let size = p.block_size().ok_or_else(|| {
            Error::invalid("application", "cellular automata apply to blocks")
        })?;
        if size < self.memory {
            return Err(Error::invalid(
                "application",
                format!("block of size {size} is too small for memory {}", self.memory),
            ));
        }
        let out_size = size - self.memory + 1;
        let mut labels = BTreeMap::new();
        for w in delta_words(self.arity, out_size) {
            let local = p.subtree_shift(&w)?.restrict_delta(self.memory)?;
            labels.insert(w, self.rule(&local)?);
        }
        Ok(Pattern::from_parts(self.arity, labels))
    }

    /// The same map with the larger memory `n`: the padded rule ignores the
    /// extra layers.
    pub fn pad_memory(&self, n: usize, budget: &Budget) -> Result<CellularAutomaton, Error> {
        if n < self.memory {
            return Err(Error::invalid(
                "padding",
                format!("cannot shrink memory {} to {n}", self.memory),
            ));
        }
        if n == self.memory {
            return Ok(self.clone());
        }
        CellularAutomaton::from_fn(
            self.input.clone(),
            self.output.clone(),
            self.arity,
            n,
            budget,
            |p| {
                self.rule(&p.restrict_delta(self.memory).expect("padded block is larger"))
                    .expect("restriction is a valid block")
            },
        )
    }

    /// The composite `self ∘ inner`, with memory depth
    /// `memory(self) + memory(inner) − 1`.
    pub fn compose(
        &self,
        inner: &CellularAutomaton,
        budget: &Budget,
    ) -> Result<CellularAutomaton, Error> {
        if self.arity != inner.arity {
            return Err(Error::ArityMismatch {
                left: self.arity.get(),
                right: inner.arity.get(),
            });
        }
        if inner.output != self.input {
            return Err(Error::AlphabetMismatch(
                "inner output alphabet differs from outer input alphabet".into(),
            ));
        }
        let memory = self.memory + inner.memory - 1;
        let count =
            block_count(self.arity, inner.input.len(), memory).ok_or(Error::BudgetExceeded {
                what: "composition table",
                needed: u128::MAX,
                limit: budget.max_patterns as u128,
            })?;
        budget.check_patterns("composition table", count)?;
        let table = (0..count)
            .map(|r| {
                let block = block_from_rank(self.arity, inner.input.len(), memory, r);
                let mid = inner.apply_to_pattern(&block)?;
                self.rule(&mid)
            })
            .collect::<Result<Vec<Letter>, Error>>()?;
        CellularAutomaton::new(
            inner.input.clone(),
            self.output.clone(),
            self.arity,
            memory,
            table,
        )
    }

    /// Image of a finitely-described configuration: same machine, outputs
    /// replaced by the rule value of the depth-`memory` expansion below each
    /// machine state.
    pub fn apply_to_moore(&self, m: &MooreColoring) -> Result<MooreColoring, Error> {
        if m.arity() != self.arity {
            return Err(Error::ArityMismatch {
                left: self.arity.get(),
                right: m.arity().get(),
            });
        }
        if m.max_letter().0 >= self.input.len() {
            return Err(Error::AlphabetMismatch(
                "coloring uses a letter outside the input alphabet".into(),
            ));
        }
        let tree = FullTree::delta(self.arity, self.memory)?;
        let mut outputs = Vec::with_capacity(m.state_count());
        for q in 0..m.state_count() {
            let local = m.expand_from(q, &tree)?;
            outputs.push(self.rule(&local)?);
        }
        m.with_outputs(outputs)
    }

    /// The unrestricted Rabin automaton presenting the image `τ(X)` of a
    /// shift of finite type. States are the globally admissible blocks of
    /// size `n−1`, where `n` is large enough for the memory of the automaton
    /// and of `X`; a bundle glues a block to an overlap-consistent tuple of
    /// children blocks and is labeled by the rule value of their union.
    pub fn image_automaton(
        &self,
        x: &SftDescription,
        budget: &Budget,
    ) -> Result<RabinAutomaton, Error> {
        if x.arity() != self.arity {
            return Err(Error::ArityMismatch {
                left: self.arity.get(),
                right: x.arity().get(),
            });
        }
        if x.alphabet() != &self.input {
            return Err(Error::AlphabetMismatch(
                "the shift's alphabet differs from the input alphabet".into(),
            ));
        }
        let n = self.memory.max(x.memory() + 1).max(2);
        let padded = self.pad_memory(n, budget)?;
        let x = x.normalize_to(n - 1, budget)?;
        let m = n - 1;
        let states = x.admissible_blocks(m, Scope::Global, budget)?;
        budget.check_states("image automaton", states.len() as u128)?;
        let names: Vec<String> = states.iter().map(|p| p.to_term(x.alphabet())).collect();
        let mut bundles = Vec::new();
        for (i, p) in states.iter().enumerate() {
            for tuple in consistent_tuples(p, &states, m, self.arity)? {
                let combined = glue(p, &tuple, &states, self.arity);
                let label = padded.rule(&combined)?;
                bundles.push(TransitionBundle::new(StateId(i), label, tuple));
            }
        }
        RabinAutomaton::new(self.arity, self.output.clone(), names, bundles)
    }
}

/// The block of size `m+1` agreeing with `p` on `Δm` and with the `σ`-th
/// tuple component below direction `σ`.
fn glue(p: &Pattern, tuple: &[StateId], states: &[Pattern], arity: Arity) -> Pattern {
    let mut labels: BTreeMap<Word, Letter> = BTreeMap::new();
    labels.insert(Word::root(), p.root_label());
    for (d, s) in tuple.iter().enumerate() {
        let prefix = Word::root().child(d as u8);
        for (w, l) in states[s.0].labels() {
            labels.insert(prefix.concat(w), l);
        }
    }
    Pattern::from_parts(arity, labels)
}

/// Presents a sofic shift as a cellular-automaton image of a shift of
/// finite type: the cover shift lives over the automaton's bundles, its
/// memory-2 forbidden blocks rule out inconsistent parent/child bundles,
/// and the covering map reads off each bundle's label.
pub fn sft_cover(
    a: &RabinAutomaton,
    budget: &Budget,
) -> Result<(SftDescription, CellularAutomaton), Error> {
    if !a.is_essential() {
        return Err(Error::NotEssential);
    }
    if a.state_count() == 0 {
        return Err(Error::invalid("sft cover", "the empty shift has no cover"));
    }
    let bundle_tokens: Vec<String> = (0..a.bundles().len()).map(|i| format!("b{i}")).collect();
    let cover_alphabet = Alphabet::new(bundle_tokens)?;
    let count = block_count(a.arity(), a.bundles().len(), 2).ok_or(Error::BudgetExceeded {
        what: "cover forbidden blocks",
        needed: u128::MAX,
        limit: budget.max_patterns as u128,
    })?;
    budget.check_patterns("cover forbidden blocks", count)?;
    let mut forbidden = Vec::new();
    for r in 0..count {
        let block = block_from_rank(a.arity(), a.bundles().len(), 2, r);
        let root = &a.bundles()[block.root_label().0];
        let consistent = a.arity().directions().all(|d| {
            let child = &a.bundles()[block.label(&Word::root().child(d)).unwrap().0];
            child.initial == root.terminal(d)
        });
        if !consistent {
            forbidden.push(block);
        }
    }
    let cover = SftDescription::new(cover_alphabet.clone(), a.arity(), 2, forbidden)?;
    let label_map = CellularAutomaton::new(
        cover_alphabet,
        a.alphabet().clone(),
        a.arity(),
        1,
        a.bundles().iter().map(|b| b.label).collect(),
    )?;
    Ok((cover, label_map))
}
