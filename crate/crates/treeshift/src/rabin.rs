//! Unrestricted Rabin automata. An automaton is a finite ordered set of
//! states together with transition bundles `(initial; label; k terminal
//! states)`. A configuration of the tree is accepted when states can be
//! assigned to all vertices so that every vertex, its label and its
//! children's states form a bundle; the accepted configurations form the
//! sofic tree shift presented by the automaton.
//!
//! Pattern acceptance works bottom-up over per-vertex feasible-state sets.
//! For a vertex with only some children present, the sub-bundle relaxation
//! applies: a bundle only has to match the child states that exist, and a
//! leaf merely needs some bundle starting at its state with the right label.
//! Witnesses are extracted by choosing the lexicographically smallest state
//! and then the smallest bundle, so all outputs are reproducible.

use std::collections::{BTreeMap, BTreeSet};

use crate::alphabet::{Alphabet, Arity, Letter};
use crate::error::{Budget, Error};
use crate::moore::MooreColoring;
use crate::pattern::Pattern;
use crate::tree::{delta_words, Word};

/// Index of a state in the automaton's declared state order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StateId(pub usize);

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TransitionBundle {
    pub initial: StateId,
    pub label: Letter,
    pub terminals: Vec<StateId>,
}

impl TransitionBundle {
    pub fn new(initial: StateId, label: Letter, terminals: Vec<StateId>) -> Self {
        TransitionBundle {
            initial,
            label,
            terminals,
        }
    }

    pub fn terminal(&self, direction: u8) -> StateId {
        self.terminals[direction as usize]
    }
}

/// A state assignment witnessing pattern acceptance. For a full-tree-pattern
/// on `T` the domain is `T⁺`; for a general subtree pattern it is `T`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunAssignment {
    states: BTreeMap<Word, StateId>,
}

impl RunAssignment {
    pub fn new(states: BTreeMap<Word, StateId>) -> Self {
        RunAssignment { states }
    }

    pub fn get(&self, w: &Word) -> Option<StateId> {
        self.states.get(w).copied()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Word, StateId)> + '_ {
        self.states.iter().map(|(w, &s)| (w, s))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Classification {
    pub deterministic: bool,
    pub codeterministic: bool,
    pub cocomplete: bool,
}

/// Result of testing a finitely-described configuration for membership.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Membership {
    Member,
    /// Not a member; the truncation of the configuration to `Δdepth` is
    /// already rejected.
    RejectedAtDepth(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RabinAutomaton {
    arity: Arity,
    alphabet: Alphabet,
    states: Vec<String>,
    bundles: Vec<TransitionBundle>,
}

impl RabinAutomaton {
    /// Builds an automaton. Bundles are sorted and de-duplicated; the given
    /// state order is kept and used for all tie-breaking.
    pub fn new(
        arity: Arity,
        alphabet: Alphabet,
        states: Vec<String>,
        mut bundles: Vec<TransitionBundle>,
    ) -> Result<Self, Error> {
        for (i, s) in states.iter().enumerate() {
            if s.is_empty() || s.chars().any(|c| c.is_whitespace() || c == '#') {
                return Err(Error::invalid(
                    "automaton",
                    format!("state name {s:?} is empty or contains reserved characters"),
                ));
            }
            if states[..i].contains(s) {
                return Err(Error::invalid("automaton", format!("duplicate state {s:?}")));
            }
        }
        for b in &bundles {
            if b.initial.0 >= states.len() || b.terminals.iter().any(|t| t.0 >= states.len()) {
                return Err(Error::invalid("automaton", "bundle references a missing state"));
            }
            if !alphabet.contains(b.label) {
                return Err(Error::invalid("automaton", "bundle label outside the alphabet"));
            }
            if b.terminals.len() != arity.get() {
                return Err(Error::invalid(
                    "automaton",
                    format!(
                        "bundle must have exactly {} terminal states, got {}",
                        arity.get(),
                        b.terminals.len()
                    ),
                ));
            }
        }
        bundles.sort();
        bundles.dedup();
        Ok(RabinAutomaton {
            arity,
            alphabet,
            states,
            bundles,
        })
    }

    /// The automaton with no states, presenting the empty shift.
    pub fn empty(arity: Arity, alphabet: Alphabet) -> Self {
        RabinAutomaton {
            arity,
            alphabet,
            states: Vec::new(),
            bundles: Vec::new(),
        }
    }

    /// One state with a bundle loop per letter: presents the full shift.
    pub fn full_shift(arity: Arity, alphabet: Alphabet) -> Self {
        let k = arity.get();
        let bundles = alphabet
            .letters()
            .map(|l| TransitionBundle::new(StateId(0), l, vec![StateId(0); k]))
            .collect();
        RabinAutomaton {
            arity,
            alphabet,
            states: vec!["u".to_string()],
            bundles,
        }
    }

    pub fn arity(&self) -> Arity {
        self.arity
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn state_names(&self) -> &[String] {
        &self.states
    }

    pub fn state_name(&self, s: StateId) -> &str {
        &self.states[s.0]
    }

    pub fn state_index(&self, name: &str) -> Option<StateId> {
        self.states.iter().position(|n| n == name).map(StateId)
    }

    pub fn bundles(&self) -> &[TransitionBundle] {
        &self.bundles
    }

    /// Re-expresses the automaton over `target`, which must contain every
    /// token of the current alphabet.
    pub fn with_alphabet(&self, target: &Alphabet) -> Result<RabinAutomaton, Error> {
        let emb = self.alphabet.embedding(target).ok_or_else(|| {
            Error::AlphabetMismatch("target alphabet does not contain all tokens".into())
        })?;
        let bundles = self
            .bundles
            .iter()
            .map(|b| TransitionBundle::new(b.initial, emb[b.label.0], b.terminals.clone()))
            .collect();
        let mut out = RabinAutomaton {
            arity: self.arity,
            alphabet: target.clone(),
            states: self.states.clone(),
            bundles,
        };
        out.bundles.sort();
        Ok(out)
    }

    /// Whether every state is the initial state of at least one bundle.
    pub fn is_essential(&self) -> bool {
        let mut has_out = vec![false; self.states.len()];
        for b in &self.bundles {
            has_out[b.initial.0] = true;
        }
        has_out.into_iter().all(|x| x)
    }

    /// Greatest essential sub-automaton: recursively removes states that
    /// start no bundle, together with the bundles touching them. Presents
    /// the same shift; possibly empty.
    pub fn essentialize(&self) -> RabinAutomaton {
        let n = self.states.len();
        let mut alive = vec![true; n];
        loop {
            let mut changed = false;
            for s in 0..n {
                if !alive[s] {
                    continue;
                }
                let sustained = self.bundles.iter().any(|b| {
                    b.initial.0 == s
                        && alive[b.initial.0]
                        && b.terminals.iter().all(|t| alive[t.0])
                });
                if !sustained {
                    alive[s] = false;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        let mut remap = vec![None; n];
        let mut states = Vec::new();
        for s in 0..n {
            if alive[s] {
                remap[s] = Some(StateId(states.len()));
                states.push(self.states[s].clone());
            }
        }
        let bundles = self
            .bundles
            .iter()
            .filter(|b| alive[b.initial.0] && b.terminals.iter().all(|t| alive[t.0]))
            .map(|b| {
                TransitionBundle::new(
                    remap[b.initial.0].unwrap(),
                    b.label,
                    b.terminals.iter().map(|t| remap[t.0].unwrap()).collect(),
                )
            })
            .collect();
        RabinAutomaton {
            arity: self.arity,
            alphabet: self.alphabet.clone(),
            states,
            bundles,
        }
    }

    /// True iff the presented shift contains no configuration.
    pub fn is_empty_shift(&self) -> bool {
        self.essentialize().state_count() == 0
    }

    pub fn classify(&self) -> Classification {
        let mut from_pairs = BTreeSet::new();
        let mut deterministic = true;
        for b in &self.bundles {
            if !from_pairs.insert((b.initial, b.label)) {
                deterministic = false;
                break;
            }
        }
        let mut into_pairs = BTreeSet::new();
        let mut codeterministic = true;
        for b in &self.bundles {
            if !into_pairs.insert((b.terminals.clone(), b.label)) {
                codeterministic = false;
            }
        }
        let covered: BTreeSet<(&[StateId], Letter)> = self
            .bundles
            .iter()
            .map(|b| (b.terminals.as_slice(), b.label))
            .collect();
        let mut tuple_count: u128 = 1;
        for _ in 0..self.arity.get() {
            tuple_count = tuple_count.saturating_mul(self.states.len() as u128);
        }
        let needed = tuple_count.saturating_mul(self.alphabet.len() as u128);
        let cocomplete = covered.len() as u128 == needed;
        Classification {
            deterministic,
            codeterministic,
            cocomplete,
        }
    }

    pub(crate) fn check_pattern_compat(&self, p: &Pattern) -> Result<(), Error> {
        if p.arity() != self.arity {
            return Err(Error::ArityMismatch {
                left: self.arity.get(),
                right: p.arity().get(),
            });
        }
        if p.max_letter().0 >= self.alphabet.len() {
            return Err(Error::AlphabetMismatch(
                "pattern uses a letter outside the automaton's alphabet".into(),
            ));
        }
        Ok(())
    }

    /// Sub-bundle acceptance of a pattern on a subtree. Requires an
    /// essential automaton; acceptance semantics presume essentiality, and
    /// silently normalizing would hide user errors. On success returns the
    /// lexicographically least witness (over `T⁺` when the pattern is a
    /// full-tree-pattern, over `T` otherwise).
    pub fn accepts_pattern(&self, p: &Pattern) -> Result<Option<RunAssignment>, Error> {
        self.check_pattern_compat(p)?;
        if !self.is_essential() {
            return Err(Error::NotEssential);
        }
        Ok(self.accepts_pattern_raw(p))
    }

    pub(crate) fn accepts_pattern_raw(&self, p: &Pattern) -> Option<RunAssignment> {
        let n = self.states.len();
        if n == 0 {
            return None;
        }
        // children before parents: pre-order reversed sorts by depth within
        // each branch, which is all the bottom-up pass needs
        let mut words: Vec<Word> = p.labels().map(|(w, _)| w.clone()).collect();
        words.sort_by_key(|w| std::cmp::Reverse(w.len()));
        let mut feas: BTreeMap<Word, Vec<bool>> = BTreeMap::new();
        for w in &words {
            let label = p.label(w).unwrap();
            let present = p.children_present(w);
            let mut mask = vec![false; n];
            for b in &self.bundles {
                if b.label != label || mask[b.initial.0] {
                    continue;
                }
                if present
                    .iter()
                    .all(|&d| feas[&w.child(d)][b.terminal(d).0])
                {
                    mask[b.initial.0] = true;
                }
            }
            feas.insert(w.clone(), mask);
        }
        let root_mask = &feas[&Word::root()];
        let root_state = StateId(root_mask.iter().position(|&x| x)?);
        let full = p.is_full_tree();
        let mut run = BTreeMap::new();
        let mut stack = vec![(Word::root(), root_state)];
        while let Some((w, s)) = stack.pop() {
            run.insert(w.clone(), s);
            let label = p.label(&w).unwrap();
            let present = p.children_present(&w);
            let bundle = self
                .bundles
                .iter()
                .find(|b| {
                    b.initial == s
                        && b.label == label
                        && present.iter().all(|&d| feas[&w.child(d)][b.terminal(d).0])
                })
                .expect("a feasible state always has a matching bundle");
            for d in self.arity.directions() {
                let child = w.child(d);
                if p.contains(&child) {
                    stack.push((child, bundle.terminal(d)));
                } else if full {
                    run.insert(child, bundle.terminal(d));
                }
            }
        }
        Some(RunAssignment::new(run))
    }

    /// Checks that `run` witnesses acceptance of `p`: at every support
    /// vertex some bundle starts at the assigned state, carries the
    /// pattern's label and agrees with the assignment wherever it is
    /// defined on the children.
    pub fn is_witness(&self, p: &Pattern, run: &RunAssignment) -> bool {
        for (w, _) in p.labels() {
            let Some(s) = run.get(w) else { return false };
            if s.0 >= self.states.len() {
                return false;
            }
            let label = p.label(w).unwrap();
            let ok = self.bundles.iter().any(|b| {
                b.initial == s
                    && b.label == label
                    && self
                        .arity
                        .directions()
                        .all(|d| match run.get(&w.child(d)) {
                            Some(t) => b.terminal(d) == t,
                            None => !p.contains(&w.child(d)),
                        })
            });
            if !ok {
                return false;
            }
        }
        true
    }

    /// Extends an accepted pattern to a full-tree-pattern on `Δd` that is
    /// still accepted, choosing at each frontier state the lexicographically
    /// smallest outgoing bundle.
    pub fn extend_accepted(
        &self,
        p: &Pattern,
        run: &RunAssignment,
        d: usize,
    ) -> Result<Pattern, Error> {
        self.check_pattern_compat(p)?;
        if !self.is_essential() {
            return Err(Error::NotEssential);
        }
        if d < p.height() {
            return Err(Error::invalid(
                "extension",
                format!("depth {d} is smaller than the pattern height {}", p.height()),
            ));
        }
        if !self.is_witness(p, run) {
            return Err(Error::NotAWitness);
        }
        let mut labels: BTreeMap<Word, Letter> = p.labels().map(|(w, l)| (w.clone(), l)).collect();
        let mut states: BTreeMap<Word, StateId> =
            run.entries().map(|(w, s)| (w.clone(), s)).collect();
        let mut words: Vec<Word> = delta_words(self.arity, d).into_iter().collect();
        words.sort_by_key(Word::len);
        for w in words {
            let s = states[&w];
            let bundle = if let Some(label) = labels.get(&w).copied() {
                self.bundles
                    .iter()
                    .find(|b| {
                        b.initial == s
                            && b.label == label
                            && self.arity.directions().all(|dir| {
                                match states.get(&w.child(dir)) {
                                    Some(&t) => b.terminal(dir) == t,
                                    None => true,
                                }
                            })
                    })
                    .expect("witness validity guarantees a matching bundle")
            } else {
                let b = self
                    .bundles
                    .iter()
                    .find(|b| b.initial == s)
                    .expect("essential automaton has an outgoing bundle");
                labels.insert(w.clone(), b.label);
                b
            };
            for dir in self.arity.directions() {
                states.entry(w.child(dir)).or_insert(bundle.terminal(dir));
            }
        }
        labels.retain(|w, _| w.len() < d);
        Ok(Pattern::from_parts(self.arity, labels))
    }

    /// Product automaton: presents the intersection of the two shifts.
    /// Alphabets are unioned when they differ; the arities must agree.
    /// Co-determinism and co-completeness of both inputs are preserved.
    pub fn join(&self, other: &RabinAutomaton) -> Result<RabinAutomaton, Error> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch {
                left: self.arity.get(),
                right: other.arity.get(),
            });
        }
        let alphabet = self.alphabet.union(&other.alphabet);
        let left = self.with_alphabet(&alphabet)?;
        let right = other.with_alphabet(&alphabet)?;
        let n2 = right.states.len();
        let pair = |a: StateId, b: StateId| StateId(a.0 * n2 + b.0);
        let mut states = Vec::new();
        for a in &left.states {
            for b in &right.states {
                states.push(format!("({a},{b})"));
            }
        }
        let mut bundles = Vec::new();
        for b1 in &left.bundles {
            for b2 in &right.bundles {
                if b1.label != b2.label {
                    continue;
                }
                let terminals = b1
                    .terminals
                    .iter()
                    .zip(&b2.terminals)
                    .map(|(&t1, &t2)| pair(t1, t2))
                    .collect();
                bundles.push(TransitionBundle::new(
                    pair(b1.initial, b2.initial),
                    b1.label,
                    terminals,
                ));
            }
        }
        bundles.sort();
        bundles.dedup();
        Ok(RabinAutomaton {
            arity: self.arity,
            alphabet,
            states,
            bundles,
        })
    }

    /// Subset construction: a co-deterministic automaton presenting the same
    /// shift. States are the nonempty subsets of the state set reachable
    /// within the bundle graph, discovered from a work list seeded with the
    /// full subset, and the result is essentialized.
    pub fn codeterminize(&self, budget: &Budget) -> Result<RabinAutomaton, Error> {
        if !self.is_essential() {
            return Err(Error::NotEssential);
        }
        let n = self.states.len();
        if n == 0 {
            return Ok(self.clone());
        }
        if n > 127 {
            return Err(Error::invalid(
                "subset construction",
                "more than 127 states are not supported",
            ));
        }
        let subsets = self.subset_closure(false, budget)?;
        let index: BTreeMap<u128, usize> =
            subsets.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let states: Vec<String> = subsets.iter().map(|&m| self.subset_name(m)).collect();
        let mut bundles = Vec::new();
        for letter in self.alphabet.letters() {
            for tuple in tuples(&subsets, self.arity.get()) {
                let pre = self.subset_pre(letter, &tuple);
                if pre != 0 {
                    bundles.push(TransitionBundle::new(
                        StateId(index[&pre]),
                        letter,
                        tuple.iter().map(|m| StateId(index[m])).collect(),
                    ));
                }
            }
        }
        bundles.sort();
        let out = RabinAutomaton {
            arity: self.arity,
            alphabet: self.alphabet.clone(),
            states,
            bundles,
        };
        Ok(out.essentialize())
    }

    /// The subsets of the state set reachable within the subset bundle
    /// graph: the closure of the full subset (and, when `include_empty`,
    /// the empty subset) under taking pre-images of label/terminal-tuple
    /// pairs over already discovered subsets. These are exactly the
    /// subsets a canonical run can assign, so restricting the subset
    /// automaton to them preserves the recognized patterns while staying
    /// far below the full lattice in practice.
    pub(crate) fn subset_closure(
        &self,
        include_empty: bool,
        budget: &Budget,
    ) -> Result<Vec<u128>, Error> {
        let n = self.states.len();
        let full: u128 = if n == 0 { 0 } else { (1u128 << n) - 1 };
        let mut discovered: BTreeSet<u128> = BTreeSet::new();
        discovered.insert(full);
        if include_empty {
            discovered.insert(0);
        }
        loop {
            let snapshot: Vec<u128> = discovered.iter().copied().collect();
            let before = discovered.len();
            for letter in self.alphabet.letters() {
                for tuple in tuples(&snapshot, self.arity.get()) {
                    let pre = self.subset_pre(letter, &tuple);
                    if pre != 0 || include_empty {
                        discovered.insert(pre);
                    }
                }
            }
            budget.check_states("subset construction", discovered.len() as u128)?;
            if discovered.len() == before {
                break;
            }
        }
        Ok(discovered.into_iter().collect())
    }

    /// `{s : some bundle (s; letter; (s_σ)) has s_σ ∈ tuple_σ for all σ}`.
    pub(crate) fn subset_pre(&self, letter: Letter, tuple: &[u128]) -> u128 {
        let mut pre: u128 = 0;
        for b in &self.bundles {
            if b.label != letter {
                continue;
            }
            if b.terminals
                .iter()
                .zip(tuple)
                .all(|(t, mask)| mask & (1u128 << t.0) != 0)
            {
                pre |= 1u128 << b.initial.0;
            }
        }
        pre
    }

    pub(crate) fn subset_name(&self, mask: u128) -> String {
        let members: Vec<&str> = (0..self.states.len())
            .filter(|&s| mask & (1u128 << s) != 0)
            .map(|s| self.states[s].as_str())
            .collect();
        format!("{{{}}}", members.join(","))
    }

    /// Whether the configuration described by the Moore coloring belongs to
    /// the presented shift, via the greatest relation `R` on (machine state,
    /// automaton state) pairs such that every pair in `R` extends one level
    /// down through some bundle. On failure reports the truncation depth at
    /// which the configuration is already rejected.
    pub fn member_moore(&self, m: &MooreColoring) -> Result<Membership, Error> {
        if m.arity() != self.arity {
            return Err(Error::ArityMismatch {
                left: self.arity.get(),
                right: m.arity().get(),
            });
        }
        if m.max_letter().0 >= self.alphabet.len() {
            return Err(Error::AlphabetMismatch(
                "coloring uses a letter outside the automaton's alphabet".into(),
            ));
        }
        if !self.is_essential() {
            return Err(Error::NotEssential);
        }
        let n = self.states.len();
        if n == 0 {
            return Ok(Membership::RejectedAtDepth(1));
        }
        let q_count = m.state_count();
        let mut relation = vec![vec![true; n]; q_count];
        let mut rounds = 0usize;
        loop {
            if !relation[m.start()].iter().any(|&x| x) {
                return Ok(Membership::RejectedAtDepth(rounds));
            }
            let mut next = vec![vec![false; n]; q_count];
            for q in 0..q_count {
                let label = m.output(q);
                for b in &self.bundles {
                    if b.label != label || next[q][b.initial.0] {
                        continue;
                    }
                    if !relation[q][b.initial.0] {
                        continue;
                    }
                    let ok = self
                        .arity
                        .directions()
                        .all(|d| relation[m.step(q, d)][b.terminal(d).0]);
                    if ok {
                        next[q][b.initial.0] = true;
                    }
                }
            }
            if next == relation {
                return Ok(Membership::Member);
            }
            relation = next;
            rounds += 1;
        }
    }
}

/// All `k`-tuples over `items`, in lexicographic order.
pub(crate) fn tuples<T: Copy>(items: &[T], k: usize) -> Vec<Vec<T>> {
    if items.is_empty() {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut index = vec![0usize; k];
    loop {
        out.push(index.iter().map(|&i| items[i]).collect());
        let mut pos = k;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            index[pos] += 1;
            if index[pos] < items.len() {
                break;
            }
            index[pos] = 0;
        }
        if index.iter().all(|&i| i == 0) {
            return out;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{mono_automaton, parse_pattern, u_automaton};
    use crate::tree::FullTree;

    fn k2() -> Arity {
        Arity::new(2).unwrap()
    }

    fn alpha() -> Alphabet {
        Alphabet::new(["0", "1"]).unwrap()
    }

    #[test]
    fn essentialize_removes_dead_chain() {
        // b starts no bundle, so b dies, then a
        let a = RabinAutomaton::new(
            k2(),
            alpha(),
            vec!["a".into(), "b".into()],
            vec![TransitionBundle::new(
                StateId(0),
                Letter(0),
                vec![StateId(1), StateId(1)],
            )],
        )
        .unwrap();
        let e = a.essentialize();
        assert_eq!(e.state_count(), 0);
        assert!(a.is_empty_shift());
    }

    #[test]
    fn essentialize_keeps_monochromatic() {
        let m = mono_automaton();
        assert_eq!(m.essentialize(), m);
        assert!(!m.is_empty_shift());
    }

    #[test]
    fn essentialize_keeps_loop() {
        let a = RabinAutomaton::new(
            k2(),
            alpha(),
            vec!["u".into()],
            vec![TransitionBundle::new(
                StateId(0),
                Letter(0),
                vec![StateId(0), StateId(0)],
            )],
        )
        .unwrap();
        assert_eq!(a.essentialize(), a);
        assert!(!a.is_empty_shift());
    }

    #[test]
    fn classify_monochromatic() {
        let c = mono_automaton().classify();
        assert!(!c.deterministic);
        assert!(c.codeterministic);
        assert!(!c.cocomplete);
    }

    #[test]
    fn classify_full_shift() {
        let c = u_automaton().classify();
        assert!(c.deterministic);
        assert!(c.codeterministic);
        assert!(c.cocomplete);
    }

    #[test]
    fn acceptance_examples() {
        let m = mono_automaton();
        assert!(m.accepts_pattern(&parse_pattern("0(1,1)")).unwrap().is_some());
        assert!(m.accepts_pattern(&parse_pattern("0(0,1)")).unwrap().is_none());
        let u = u_automaton();
        for term in ["0", "1", "0(0,1)", "1(0(1,1),0)"] {
            assert!(u.accepts_pattern(&parse_pattern(term)).unwrap().is_some());
        }
    }

    #[test]
    fn acceptance_requires_essential() {
        let a = RabinAutomaton::new(
            k2(),
            alpha(),
            vec!["a".into(), "b".into()],
            vec![TransitionBundle::new(
                StateId(0),
                Letter(0),
                vec![StateId(1), StateId(1)],
            )],
        )
        .unwrap();
        assert_eq!(
            a.accepts_pattern(&parse_pattern("0")),
            Err(Error::NotEssential)
        );
    }

    #[test]
    fn acceptance_on_general_subtrees_uses_sub_bundles() {
        // support {ε, 0}: only the left child is present
        let m = mono_automaton();
        let mut labels = BTreeMap::new();
        labels.insert(Word::root(), Letter(0));
        labels.insert(Word::from_directions(vec![0]), Letter(1));
        let p = Pattern::new(k2(), labels).unwrap();
        let run = m.accepts_pattern(&p).unwrap().unwrap();
        assert!(m.is_witness(&p, &run));
        // domain is T for a non-full pattern
        assert_eq!(run.get(&Word::from_directions(vec![1])), None);
    }

    #[test]
    fn witness_agrees_with_acceptance() {
        let m = mono_automaton();
        let p = parse_pattern("0(1(1,1),1(0,0))");
        let run = m.accepts_pattern(&p).unwrap().unwrap();
        assert!(m.is_witness(&p, &run));
        // full-tree witnesses extend to T⁺
        for w in p.support().frontier() {
            assert!(run.get(&w).is_some());
        }
    }

    #[test]
    fn extension_examples() {
        let m = mono_automaton();
        let p = parse_pattern("0");
        let run = m.accepts_pattern(&p).unwrap().unwrap();
        let q = m.extend_accepted(&p, &run, 2).unwrap();
        assert_eq!(q.to_term(&alpha()), "0(0,0)");

        let u = u_automaton();
        let p = parse_pattern("1");
        let run = u.accepts_pattern(&p).unwrap().unwrap();
        let q = u.extend_accepted(&p, &run, 2).unwrap();
        assert_eq!(q.to_term(&alpha()), "1(0,0)");

        // no extension needed when the pattern already fills the depth
        let p = parse_pattern("0(1,1)");
        let run = m.accepts_pattern(&p).unwrap().unwrap();
        assert_eq!(m.extend_accepted(&p, &run, 2).unwrap(), p);
    }

    #[test]
    fn extension_results_stay_accepted() {
        let m = mono_automaton();
        for term in ["0", "1", "0(1,1)"] {
            let p = parse_pattern(term);
            let run = m.accepts_pattern(&p).unwrap().unwrap();
            for d in p.height()..=4 {
                let q = m.extend_accepted(&p, &run, d).unwrap();
                assert_eq!(q.block_size(), Some(d));
                assert_eq!(q.restrict(&p.support()).unwrap(), p);
                assert!(m.accepts_pattern(&q).unwrap().is_some());
            }
        }
    }

    #[test]
    fn extension_rejects_bad_witness() {
        let m = mono_automaton();
        let p = parse_pattern("0");
        let mut states = BTreeMap::new();
        states.insert(Word::root(), StateId(1)); // state s1 is labeled 1
        let bad = RunAssignment::new(states);
        assert_eq!(m.extend_accepted(&p, &bad, 2), Err(Error::NotAWitness));
    }

    #[test]
    fn join_examples() {
        let m = mono_automaton();
        let u = u_automaton();
        let mu = m.join(&u).unwrap();
        let uu = u.join(&u).unwrap();
        assert_eq!(uu.state_count(), 1);
        let mm = m.join(&m).unwrap();
        let budget = Budget::default();
        for p in crate::pattern::enumerate_full_patterns(k2(), 2, 3, &budget).unwrap() {
            let want = m.accepts_pattern(&p).unwrap().is_some();
            assert_eq!(
                mu.essentialize().accepts_pattern(&p).unwrap().is_some(),
                want
            );
            assert_eq!(
                mm.essentialize().accepts_pattern(&p).unwrap().is_some(),
                want
            );
        }
    }

    #[test]
    fn join_is_intersection_at_pattern_level() {
        // two SFT-ish automata with overlapping shifts
        let m = mono_automaton();
        let u = u_automaton();
        let pairs = [(m.clone(), u.clone()), (u.clone(), m.clone()), (m.clone(), m.clone())];
        let budget = Budget::default();
        for (a1, a2) in pairs {
            let j = a1.join(&a2).unwrap().essentialize();
            for p in crate::pattern::enumerate_full_patterns(k2(), 2, 3, &budget).unwrap() {
                let want = a1.accepts_pattern(&p).unwrap().is_some()
                    && a2.accepts_pattern(&p).unwrap().is_some();
                assert_eq!(j.accepts_pattern(&p).unwrap().is_some(), want);
            }
        }
    }

    #[test]
    fn codeterminize_monochromatic() {
        let m = mono_automaton();
        let c = m.codeterminize(&Budget::default()).unwrap();
        assert!(c.classify().codeterministic);
        // the bundle labeled 1 into ({s0},{s0}) starts at {s1}
        let s0 = c.state_index("{s0}").unwrap();
        let s1 = c.state_index("{s1}").unwrap();
        assert!(c
            .bundles()
            .iter()
            .any(|b| b.initial == s1 && b.label == Letter(1) && b.terminals == vec![s0, s0]));
        // same depth-three pattern set: 16 patterns
        let budget = Budget::default();
        let accepted: Vec<_> = crate::pattern::enumerate_blocks(k2(), 2, 3, &budget)
            .unwrap()
            .into_iter()
            .filter(|p| c.accepts_pattern(p).unwrap().is_some())
            .collect();
        assert_eq!(accepted.len(), 16);
        for p in crate::pattern::enumerate_full_patterns(k2(), 2, 3, &budget).unwrap() {
            assert_eq!(
                c.accepts_pattern(&p).unwrap().is_some(),
                m.accepts_pattern(&p).unwrap().is_some()
            );
        }
    }

    #[test]
    fn codeterminize_full_shift_is_isomorphic() {
        let u = u_automaton();
        let c = u.codeterminize(&Budget::default()).unwrap();
        assert_eq!(c.state_count(), 1);
        assert_eq!(c.bundles().len(), 2);
        assert!(c.classify().codeterministic);
    }

    #[test]
    fn member_moore_examples() {
        let m = mono_automaton();
        let constant = MooreColoring::constant(k2(), Letter(0));
        assert_eq!(m.member_moore(&constant).unwrap(), Membership::Member);
        assert_eq!(
            m.member_moore(&crate::fixtures::depth_parity()).unwrap(),
            Membership::Member
        );
        let dir = crate::fixtures::direction_coloring();
        let Membership::RejectedAtDepth(d) = m.member_moore(&dir).unwrap() else {
            panic!("direction coloring must be rejected");
        };
        // the truncation at the witness depth is rejected
        let truncation = dir.expand_delta(d).unwrap();
        assert!(m.accepts_pattern(&truncation).unwrap().is_none());
    }

    #[test]
    fn member_implies_truncations_accepted() {
        let m = mono_automaton();
        for coloring in [
            MooreColoring::constant(k2(), Letter(0)),
            MooreColoring::constant(k2(), Letter(1)),
            crate::fixtures::depth_parity(),
        ] {
            assert_eq!(m.member_moore(&coloring).unwrap(), Membership::Member);
            for d in 1..=4 {
                let p = coloring.expand_delta(d).unwrap();
                assert!(m.accepts_pattern(&p).unwrap().is_some());
            }
        }
    }

    /// Brute-force oracle: enumerate every map α : T⁺ → S and check the full
    /// bundle condition at each support vertex.
    fn oracle_accepts(a: &RabinAutomaton, p: &Pattern) -> bool {
        let support = p.support();
        let plus = support.plus();
        let vertices: Vec<Word> = plus.vertices().cloned().collect();
        let n = a.state_count();
        if n == 0 {
            return false;
        }
        let mut assignment = vec![0usize; vertices.len()];
        loop {
            let at = |w: &Word| {
                StateId(assignment[vertices.iter().position(|v| v == w).unwrap()])
            };
            let ok = p.labels().all(|(w, label)| {
                a.bundles().iter().any(|b| {
                    b.initial == at(w)
                        && b.label == label
                        && a.arity().directions().all(|d| b.terminal(d) == at(&w.child(d)))
                })
            });
            if ok {
                return true;
            }
            let mut pos = vertices.len();
            loop {
                if pos == 0 {
                    return false;
                }
                pos -= 1;
                assignment[pos] += 1;
                if assignment[pos] < n {
                    break;
                }
                assignment[pos] = 0;
            }
        }
    }

    #[test]
    fn acceptance_agrees_with_run_enumeration_oracle() {
        let budget = Budget::default();
        let automata = vec![mono_automaton(), u_automaton()];
        for a in &automata {
            for p in crate::pattern::enumerate_full_patterns(k2(), 2, 3, &budget).unwrap() {
                assert_eq!(
                    a.accepts_pattern(&p).unwrap().is_some(),
                    oracle_accepts(a, &p),
                    "disagreement on {}",
                    p.to_term(&alpha())
                );
            }
        }
    }

    #[test]
    fn moore_expansion_accepted_when_member() {
        let m = mono_automaton();
        let parity = crate::fixtures::depth_parity();
        assert_eq!(m.member_moore(&parity).unwrap(), Membership::Member);
        let t = FullTree::delta(k2(), 4).unwrap();
        assert!(m
            .accepts_pattern(&parity.expand(&t).unwrap())
            .unwrap()
            .is_some());
    }
}
