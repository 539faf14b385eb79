//! Finite-tree automata: an unrestricted Rabin automaton together with a set
//! of initial states and a final state. A full-tree-pattern on `T` is
//! accepted when a run `α : T⁺ → S` satisfies the bundle condition at every
//! vertex of `T`, starts in an initial state, and assigns the final state to
//! the whole frontier `T⁺ ∖ T`.
//!
//! The subset finite-tree automaton recognizes the full-tree-patterns of a
//! sofic shift (language mode) or their complement (complement mode), and
//! complementation plus an emptiness test give the decision procedures of
//! the `decide` module.

use std::collections::{BTreeMap, BTreeSet};

use crate::alphabet::Letter;
use crate::error::{Budget, Error};
use crate::pattern::{enumerate_full_patterns, Pattern};
use crate::rabin::{tuples, RabinAutomaton, RunAssignment, StateId, TransitionBundle};
use crate::tree::Word;

/// Which language the subset finite-tree automaton recognizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubsetMode {
    /// The full-tree-patterns of the presented shift.
    Language,
    /// Their complement within all full-tree-patterns.
    Complement,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EmptinessMethod {
    /// Least fixpoint over productive states; polynomial in the automaton.
    Fixpoint,
    /// The height-bounded enumeration: a nonempty language contains a
    /// pattern of height at most the number of states. Exponential; kept as
    /// an independent oracle.
    Naive,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteTreeAutomaton {
    base: RabinAutomaton,
    initials: BTreeSet<StateId>,
    final_state: StateId,
}

impl FiniteTreeAutomaton {
    pub fn new(
        base: RabinAutomaton,
        initials: BTreeSet<StateId>,
        final_state: StateId,
    ) -> Result<Self, Error> {
        let n = base.state_count();
        if final_state.0 >= n {
            return Err(Error::invalid("finite-tree automaton", "final state out of range"));
        }
        if initials.iter().any(|s| s.0 >= n) {
            return Err(Error::invalid(
                "finite-tree automaton",
                "initial state out of range",
            ));
        }
        Ok(FiniteTreeAutomaton {
            base,
            initials,
            final_state,
        })
    }

    pub fn base(&self) -> &RabinAutomaton {
        &self.base
    }

    pub fn initials(&self) -> &BTreeSet<StateId> {
        &self.initials
    }

    pub fn final_state(&self) -> StateId {
        self.final_state
    }

    /// Relaxed essentiality: every non-final state starts some bundle. The
    /// subset constructions may leave inert lattice states violating this;
    /// such states can only ever appear on the frontier and never change the
    /// recognized language.
    pub fn is_relaxed_essential(&self) -> bool {
        let mut has_out = vec![false; self.base.state_count()];
        for b in self.base.bundles() {
            has_out[b.initial.0] = true;
        }
        has_out
            .iter()
            .enumerate()
            .all(|(s, &x)| x || s == self.final_state.0)
    }

    /// Acceptance of a full-tree-pattern, computed bottom-up from the
    /// frontier `{F}`. Returns the least witness on success.
    pub fn accepts(&self, p: &Pattern) -> Result<Option<RunAssignment>, Error> {
        self.base.check_pattern_compat(p)?;
        if !p.is_full_tree() {
            return Err(Error::invalid(
                "acceptance",
                "finite-tree automata accept full-tree-patterns only",
            ));
        }
        let n = self.base.state_count();
        let f = self.final_state;
        let mut words: Vec<Word> = p.labels().map(|(w, _)| w.clone()).collect();
        words.sort_by_key(|w| std::cmp::Reverse(w.len()));
        let mut feas: BTreeMap<Word, Vec<bool>> = BTreeMap::new();
        for w in &words {
            let label = p.label(w).unwrap();
            let leaf = p.children_present(w).is_empty();
            let mut mask = vec![false; n];
            for b in self.base.bundles() {
                if b.label != label || mask[b.initial.0] {
                    continue;
                }
                let ok = if leaf {
                    b.terminals.iter().all(|&t| t == f)
                } else {
                    self.base
                        .arity()
                        .directions()
                        .all(|d| feas[&w.child(d)][b.terminal(d).0])
                };
                if ok {
                    mask[b.initial.0] = true;
                }
            }
            feas.insert(w.clone(), mask);
        }
        let root_mask = &feas[&Word::root()];
        let Some(root) = self
            .initials
            .iter()
            .find(|s| root_mask[s.0])
            .copied()
        else {
            return Ok(None);
        };
        let mut run = BTreeMap::new();
        let mut stack = vec![(Word::root(), root)];
        while let Some((w, s)) = stack.pop() {
            run.insert(w.clone(), s);
            let label = p.label(&w).unwrap();
            let leaf = p.children_present(&w).is_empty();
            let bundle = self
                .base
                .bundles()
                .iter()
                .find(|b| {
                    b.initial == s
                        && b.label == label
                        && if leaf {
                            b.terminals.iter().all(|&t| t == f)
                        } else {
                            self.base
                                .arity()
                                .directions()
                                .all(|d| feas[&w.child(d)][b.terminal(d).0])
                        }
                })
                .expect("a feasible state always has a matching bundle");
            for d in self.base.arity().directions() {
                let child = w.child(d);
                if p.contains(&child) {
                    stack.push((child, bundle.terminal(d)));
                } else {
                    run.insert(child, f);
                }
            }
        }
        Ok(Some(RunAssignment::new(run)))
    }

    /// Round at which each state becomes productive: `ranks[s] = Some(h)`
    /// iff `h` is the least height of a full-tree-pattern with a run rooted
    /// at `s` and frontier `F`. A vertex is either a leaf, needing a bundle
    /// whose terminals are all `F`, or internal, needing a bundle whose
    /// terminals are all productive.
    fn productive_ranks(&self) -> Vec<Option<usize>> {
        let n = self.base.state_count();
        let f = self.final_state;
        let mut rank: Vec<Option<usize>> = vec![None; n];
        let mut round = 0usize;
        loop {
            round += 1;
            let mut changed = false;
            for b in self.base.bundles() {
                if rank[b.initial.0].is_some() {
                    continue;
                }
                let as_leaf = b.terminals.iter().all(|&t| t == f);
                let as_internal = b
                    .terminals
                    .iter()
                    .all(|t| matches!(rank[t.0], Some(r) if r < round));
                if as_leaf || as_internal {
                    rank[b.initial.0] = Some(round);
                    changed = true;
                }
            }
            if !changed {
                return rank;
            }
        }
    }

    /// Whether the recognized set of full-tree-patterns is empty.
    pub fn is_empty(&self, method: EmptinessMethod, budget: &Budget) -> Result<bool, Error> {
        match method {
            EmptinessMethod::Fixpoint => {
                let ranks = self.productive_ranks();
                Ok(!self.initials.iter().any(|s| ranks[s.0].is_some()))
            }
            EmptinessMethod::Naive => {
                let h = self.base.state_count();
                let patterns = enumerate_full_patterns(
                    self.base.arity(),
                    self.base.alphabet().len(),
                    h,
                    budget,
                )?;
                for p in patterns {
                    if self.accepts(&p)?.is_some() {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
        }
    }

    /// An accepted pattern of minimal height, ties broken by the canonical
    /// order; `None` when the language is empty.
    pub fn sample_accepted(&self, budget: &Budget) -> Result<Option<Pattern>, Error> {
        let ranks = self.productive_ranks();
        let Some(h) = self
            .initials
            .iter()
            .filter_map(|s| ranks[s.0])
            .min()
        else {
            return Ok(None);
        };
        let patterns =
            enumerate_full_patterns(self.base.arity(), self.base.alphabet().len(), h, budget)?;
        for p in patterns {
            if self.accepts(&p)?.is_some() {
                return Ok(Some(p));
            }
        }
        unreachable!("a productive initial state guarantees a pattern of its rank height")
    }

    /// Complement within all full-tree-patterns. The automaton is first made
    /// co-complete by adding a sink state with one bundle per uncovered
    /// (label, terminal tuple); the initial set is then complemented and the
    /// final state kept. Requires co-determinism, which together with
    /// co-completeness makes the run of every pattern unique.
    pub fn complement(&self, budget: &Budget) -> Result<FiniteTreeAutomaton, Error> {
        if !self.base.classify().codeterministic {
            return Err(Error::NotCodeterministic);
        }
        let n = self.base.state_count();
        let k = self.base.arity().get();
        let sink = StateId(n);
        let mut states = self.base.state_names().to_vec();
        let mut sink_name = "sink".to_string();
        while states.contains(&sink_name) {
            sink_name.push('_');
        }
        states.push(sink_name);

        let tuple_count = ((n + 1) as u128)
            .checked_pow(k as u32)
            .and_then(|t| t.checked_mul(self.base.alphabet().len() as u128))
            .ok_or(Error::BudgetExceeded {
                what: "co-completion",
                needed: u128::MAX,
                limit: budget.max_patterns as u128,
            })?;
        budget.check_patterns("co-completion", tuple_count)?;

        let covered: BTreeSet<(&[StateId], Letter)> = self
            .base
            .bundles()
            .iter()
            .map(|b| (b.terminals.as_slice(), b.label))
            .collect();
        let mut bundles = self.base.bundles().to_vec();
        let all_states: Vec<StateId> = (0..=n).map(StateId).collect();
        for letter in self.base.alphabet().letters() {
            for tuple in tuples(&all_states, k) {
                if !covered.contains(&(tuple.as_slice(), letter)) {
                    bundles.push(TransitionBundle::new(sink, letter, tuple));
                }
            }
        }
        let base = RabinAutomaton::new(
            self.base.arity(),
            self.base.alphabet().clone(),
            states,
            bundles,
        )?;
        let initials = (0..=n)
            .map(StateId)
            .filter(|s| !self.initials.contains(s))
            .collect();
        FiniteTreeAutomaton::new(base, initials, self.final_state)
    }
}

/// The subset finite-tree automaton of an essential unrestricted Rabin
/// automaton. States are the subsets of the state set reachable within the
/// subset bundle graph; the bundle for a label and a terminal tuple starts
/// at the set of states with a matching bundle into the tuple, and the
/// final state is the full subset.
///
/// In language mode only nonempty subsets occur, every state is initial,
/// and the result is co-deterministic with `T(result) = T(Sh_A)`. In
/// complement mode the empty subset joins the lattice as the single
/// initial state; the result is co-deterministic and co-complete, so every
/// pattern has exactly one run, and the recognized language is the
/// complement `T(A^{Σ*}) ∖ T(Sh_A)`.
pub fn subset_fta(
    a: &RabinAutomaton,
    mode: SubsetMode,
    budget: &Budget,
) -> Result<FiniteTreeAutomaton, Error> {
    if !a.is_essential() {
        return Err(Error::NotEssential);
    }
    let n = a.state_count();
    if n > 127 {
        return Err(Error::invalid(
            "subset construction",
            "more than 127 states are not supported",
        ));
    }
    if mode == SubsetMode::Language && n == 0 {
        // the empty shift has no patterns: a lone final state accepts nothing
        let base = RabinAutomaton::new(
            a.arity(),
            a.alphabet().clone(),
            vec!["{}".to_string()],
            Vec::new(),
        )?;
        return FiniteTreeAutomaton::new(base, BTreeSet::new(), StateId(0));
    }
    let full: u128 = if n == 0 { 0 } else { (1u128 << n) - 1 };
    let masks = a.subset_closure(mode == SubsetMode::Complement, budget)?;
    let tuple_count = (masks.len() as u128)
        .checked_pow(a.arity().get() as u32)
        .and_then(|t| t.checked_mul(a.alphabet().len() as u128))
        .ok_or(Error::BudgetExceeded {
            what: "subset construction",
            needed: u128::MAX,
            limit: budget.max_patterns as u128,
        })?;
    budget.check_patterns("subset construction", tuple_count)?;

    let index: BTreeMap<u128, usize> = masks.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let states: Vec<String> = masks.iter().map(|&m| a.subset_name(m)).collect();
    let mut bundles = Vec::new();
    for letter in a.alphabet().letters() {
        for tuple in tuples(&masks, a.arity().get()) {
            let pre = a.subset_pre(letter, &tuple);
            if pre == 0 && mode == SubsetMode::Language {
                continue;
            }
            bundles.push(TransitionBundle::new(
                StateId(index[&pre]),
                letter,
                tuple.iter().map(|m| StateId(index[m])).collect(),
            ));
        }
    }
    let base = RabinAutomaton::new(a.arity(), a.alphabet().clone(), states, bundles)?;
    let final_state = StateId(index[&full]);
    let initials: BTreeSet<StateId> = match mode {
        SubsetMode::Language => (0..masks.len()).map(StateId).collect(),
        SubsetMode::Complement => [StateId(index[&0])].into_iter().collect(),
    };
    FiniteTreeAutomaton::new(base, initials, final_state)
}
