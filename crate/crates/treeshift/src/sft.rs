//! Shifts of finite type: a finite alphabet, an arity, a memory `n` and a
//! finite set of forbidden blocks of size `n`. A configuration belongs to
//! the shift when no shifted restriction of it equals a forbidden block.
//!
//! Two notions of admissibility are kept apart. A block is *locally*
//! admissible when no forbidden block occurs inside it; it is *globally*
//! admissible when it is the restriction of an actual configuration of the
//! shift. Since every position of the rooted tree lies below the root,
//! global admissibility is exactly downward completability, which a
//! greatest-fixpoint pass over locally admissible blocks computes.

use std::collections::BTreeMap;

use crate::alphabet::{Alphabet, Arity};
use crate::error::{Budget, Error};
use crate::pattern::{enumerate_blocks, Pattern};
use crate::rabin::{RabinAutomaton, StateId, TransitionBundle};
use crate::tree::Word;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scope {
    Local,
    Global,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SftDescription {
    alphabet: Alphabet,
    arity: Arity,
    memory: usize,
    forbidden: Vec<Pattern>,
}

impl SftDescription {
    /// Builds a shift of finite type. Every forbidden block must have
    /// support exactly `Δmemory`; duplicates are dropped and the set is kept
    /// in canonical order.
    pub fn new(
        alphabet: Alphabet,
        arity: Arity,
        memory: usize,
        mut forbidden: Vec<Pattern>,
    ) -> Result<Self, Error> {
        if memory < 1 {
            return Err(Error::invalid("sft", "memory must be at least 1"));
        }
        for p in &forbidden {
            if p.arity() != arity {
                return Err(Error::ArityMismatch {
                    left: arity.get(),
                    right: p.arity().get(),
                });
            }
            if p.block_size() != Some(memory) {
                return Err(Error::invalid(
                    "sft",
                    format!("forbidden blocks must all have support Δ{memory}"),
                ));
            }
            if p.max_letter().0 >= alphabet.len() {
                return Err(Error::AlphabetMismatch(
                    "forbidden block uses a letter outside the alphabet".into(),
                ));
            }
        }
        forbidden.sort();
        forbidden.dedup();
        Ok(SftDescription {
            alphabet,
            arity,
            memory,
            forbidden,
        })
    }

    /// The full shift: memory 1, nothing forbidden.
    pub fn full_shift(alphabet: Alphabet, arity: Arity) -> Self {
        SftDescription {
            alphabet,
            arity,
            memory: 1,
            forbidden: Vec::new(),
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn arity(&self) -> Arity {
        self.arity
    }

    pub fn memory(&self) -> usize {
        self.memory
    }

    pub fn forbidden(&self) -> &[Pattern] {
        &self.forbidden
    }

    /// The same shift described with memory `n ≥ memory`.
    pub fn normalize_to(&self, n: usize, budget: &Budget) -> Result<SftDescription, Error> {
        if n == self.memory {
            return Ok(self.clone());
        }
        let forbidden = normalize_memory(
            &self.forbidden,
            self.arity,
            self.alphabet.len(),
            n,
            budget,
        )?;
        Ok(SftDescription {
            alphabet: self.alphabet.clone(),
            arity: self.arity,
            memory: n,
            forbidden,
        })
    }

    fn is_locally_admissible(&self, p: &Pattern) -> bool {
        let size = p.block_size().expect("candidates are blocks");
        if size < self.memory {
            return true;
        }
        let forbidden: &[Pattern] = &self.forbidden;
        p.labels().all(|(w, _)| {
            if w.len() > size - self.memory {
                return true;
            }
            let shifted = p
                .subtree_shift(w)
                .and_then(|q| q.restrict_delta(self.memory))
                .expect("positions fit inside the block");
            forbidden.binary_search(&shifted).is_err()
        })
    }

    /// Blocks of size `n`, either locally admissible (no forbidden block
    /// occurs at a position that fits inside `Δn`) or globally admissible
    /// (restrictions of actual configurations), in canonical order. Global
    /// blocks are computed by keeping the locally admissible blocks of size
    /// `max(n, memory)` that survive the downward-completability fixpoint
    /// and projecting to `Δn`.
    pub fn admissible_blocks(
        &self,
        n: usize,
        scope: Scope,
        budget: &Budget,
    ) -> Result<Vec<Pattern>, Error> {
        if n < 1 {
            return Err(Error::invalid("admissible blocks", "size must be at least 1"));
        }
        match scope {
            Scope::Local => {
                let candidates = enumerate_blocks(self.arity, self.alphabet.len(), n, budget)?;
                Ok(candidates
                    .into_iter()
                    .filter(|p| self.is_locally_admissible(p))
                    .collect())
            }
            Scope::Global => {
                let m = n.max(self.memory);
                let survivors = self.completable_blocks(m, budget)?;
                let mut out: Vec<Pattern> = survivors
                    .into_iter()
                    .map(|p| p.restrict_delta(n))
                    .collect::<Result<_, _>>()?;
                out.sort();
                out.dedup();
                Ok(out)
            }
        }
    }

    /// Locally admissible blocks of size `m ≥ memory` that extend downward
    /// forever: the greatest family in which every child restriction of a
    /// member extends to another member.
    fn completable_blocks(&self, m: usize, budget: &Budget) -> Result<Vec<Pattern>, Error> {
        debug_assert!(m >= self.memory);
        let blocks: Vec<Pattern> = self
            .admissible_blocks(m, Scope::Local, budget)?;
        let mut alive = vec![true; blocks.len()];
        if m == 1 {
            // any nonempty family sustains itself: children may repeat any member
            if blocks.is_empty() {
                return Ok(Vec::new());
            }
            return Ok(blocks);
        }
        let restriction_of = |p: &Pattern| p.restrict_delta(m - 1).expect("m ≥ 2");
        let keys: Vec<Pattern> = blocks.iter().map(&restriction_of).collect();
        loop {
            let mut alive_restrictions: BTreeMap<&Pattern, usize> = BTreeMap::new();
            for (i, key) in keys.iter().enumerate() {
                if alive[i] {
                    *alive_restrictions.entry(key).or_insert(0) += 1;
                }
            }
            let mut changed = false;
            for (i, p) in blocks.iter().enumerate() {
                if !alive[i] {
                    continue;
                }
                let sustained = self.arity.directions().all(|d| {
                    let child = p
                        .subtree_shift(&Word::root().child(d))
                        .and_then(|q| q.restrict_delta(m - 1))
                        .expect("children of a size-m block have size m-1");
                    alive_restrictions.contains_key(&child)
                });
                if !sustained {
                    alive[i] = false;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        Ok(blocks
            .into_iter()
            .zip(alive)
            .filter_map(|(p, a)| a.then_some(p))
            .collect())
    }

    /// The canonical Rabin presentation: states are the globally admissible
    /// blocks of size `memory`, and a bundle connects a block to a tuple of
    /// blocks whose restrictions overlap consistently; the bundle label is
    /// the root letter. Presents exactly this shift and is essential by
    /// construction; the empty shift yields the empty automaton.
    pub fn canonical_presentation(&self, budget: &Budget) -> Result<RabinAutomaton, Error> {
        let m = self.memory;
        let states = self.admissible_blocks(m, Scope::Global, budget)?;
        budget.check_states("canonical presentation", states.len() as u128)?;
        let names: Vec<String> = states.iter().map(|p| p.to_term(&self.alphabet)).collect();
        let mut bundles = Vec::new();
        for (i, p) in states.iter().enumerate() {
            for tuple in consistent_tuples(p, &states, m, self.arity)? {
                bundles.push(TransitionBundle::new(
                    StateId(i),
                    p.root_label(),
                    tuple,
                ));
            }
        }
        RabinAutomaton::new(self.arity, self.alphabet.clone(), names, bundles)
    }

    /// True iff the shift contains no configuration.
    pub fn is_empty(&self, budget: &Budget) -> Result<bool, Error> {
        Ok(self.canonical_presentation(budget)?.state_count() == 0)
    }
}

/// Tuples `(p_σ)` of states whose `Δ(m-1)` restrictions agree with the
/// shifted restrictions of `p`, as required for a de Bruijn style bundle.
pub(crate) fn consistent_tuples(
    p: &Pattern,
    states: &[Pattern],
    m: usize,
    arity: Arity,
) -> Result<Vec<Vec<StateId>>, Error> {
    let k = arity.get();
    let mut choices: Vec<Vec<StateId>> = Vec::with_capacity(k);
    for d in arity.directions() {
        let need = if m >= 2 {
            Some(
                p.subtree_shift(&Word::root().child(d))
                    .and_then(|q| q.restrict_delta(m - 1))?,
            )
        } else {
            None
        };
        let matching: Vec<StateId> = states
            .iter()
            .enumerate()
            .filter(|(_, q)| match &need {
                Some(need) => q.restrict_delta(m - 1).as_ref() == Ok(need),
                None => true,
            })
            .map(|(i, _)| StateId(i))
            .collect();
        choices.push(matching);
    }
    if choices.iter().any(|c| c.is_empty()) {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut idx = vec![0usize; k];
    loop {
        out.push(idx.iter().zip(&choices).map(|(&i, c)| c[i]).collect());
        let mut pos = k;
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < choices[pos].len() {
                break;
            }
            idx[pos] = 0;
        }
        if idx.iter().all(|&i| i == 0) {
            return Ok(out);
        }
    }
}

/// Replaces each forbidden block by all of its extensions to size `n`,
/// describing the same shift with the larger memory.
pub fn normalize_memory(
    forbidden: &[Pattern],
    arity: Arity,
    letters: usize,
    n: usize,
    budget: &Budget,
) -> Result<Vec<Pattern>, Error> {
    let mut sizes = Vec::new();
    for p in forbidden {
        let size = p.block_size().ok_or_else(|| {
            Error::invalid("memory normalization", "inputs must be blocks")
        })?;
        if size > n {
            return Err(Error::invalid(
                "memory normalization",
                format!("target size {n} is smaller than an input block of size {size}"),
            ));
        }
        sizes.push(size);
    }
    if forbidden.is_empty() {
        return Ok(Vec::new());
    }
    let candidates = enumerate_blocks(arity, letters, n, budget)?;
    let mut out = Vec::new();
    for q in candidates {
        let hit = forbidden
            .iter()
            .zip(&sizes)
            .any(|(p, &size)| q.restrict_delta(size).as_ref() == Ok(p));
        if hit {
            out.push(q);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{alpha01, dead_end_sft, k2, mono_automaton, mono_sft, parse_pattern};
    use crate::pattern::enumerate_full_patterns;

    #[test]
    fn normalize_single_vertex_block() {
        let budget = Budget::default();
        let normalized =
            normalize_memory(&[parse_pattern("0")], k2(), 2, 2, &budget).unwrap();
        let terms: Vec<String> = normalized.iter().map(|p| p.to_term(&alpha01())).collect();
        assert_eq!(terms, ["0(0,0)", "0(0,1)", "0(1,0)", "0(1,1)"]);
        // already at the target size: unchanged
        let same = normalize_memory(&normalized, k2(), 2, 2, &budget).unwrap();
        assert_eq!(same, normalized);
        // empty set stays empty
        assert!(normalize_memory(&[], k2(), 2, 5, &budget).unwrap().is_empty());
        // shrinking is rejected
        assert!(normalize_memory(&[parse_pattern("0(0,0)")], k2(), 2, 1, &budget).is_err());
    }

    #[test]
    fn normalization_preserves_the_shift() {
        let budget = Budget::default();
        let x = mono_sft();
        let y = x.normalize_to(3, &budget).unwrap();
        for d in 1..=3 {
            assert_eq!(
                x.admissible_blocks(d, Scope::Global, &budget).unwrap(),
                y.admissible_blocks(d, Scope::Global, &budget).unwrap()
            );
        }
    }

    #[test]
    fn monochromatic_block_counts() {
        let budget = Budget::default();
        let x = mono_sft();
        assert_eq!(x.admissible_blocks(2, Scope::Local, &budget).unwrap().len(), 4);
        assert_eq!(x.admissible_blocks(2, Scope::Global, &budget).unwrap().len(), 4);
        assert_eq!(x.admissible_blocks(3, Scope::Local, &budget).unwrap().len(), 16);
        assert_eq!(x.admissible_blocks(3, Scope::Global, &budget).unwrap().len(), 16);
    }

    #[test]
    fn forbidding_every_block_empties_the_shift() {
        let budget = Budget::default();
        let all = crate::pattern::enumerate_blocks(k2(), 2, 2, &budget).unwrap();
        let x = SftDescription::new(alpha01(), k2(), 2, all).unwrap();
        assert!(x.admissible_blocks(2, Scope::Global, &budget).unwrap().is_empty());
        assert!(x.is_empty(&budget).unwrap());
    }

    #[test]
    fn dead_end_children_are_pruned_globally() {
        let budget = Budget::default();
        let x = dead_end_sft();
        let local = x.admissible_blocks(2, Scope::Local, &budget).unwrap();
        assert!(local.contains(&parse_pattern("0(1,1)")));
        let global = x.admissible_blocks(2, Scope::Global, &budget).unwrap();
        assert_eq!(global, vec![parse_pattern("0(0,0)")]);
        assert!(!x.is_empty(&budget).unwrap());
    }

    #[test]
    fn global_is_contained_in_local_and_consistent_across_depths() {
        let budget = Budget::default();
        for x in [mono_sft(), dead_end_sft(), SftDescription::full_shift(alpha01(), k2())] {
            for n in 1..=3 {
                let local = x.admissible_blocks(n, Scope::Local, &budget).unwrap();
                let global = x.admissible_blocks(n, Scope::Global, &budget).unwrap();
                assert!(global.iter().all(|p| local.contains(p)));
            }
            for n in 1..=2 {
                let here = x.admissible_blocks(n, Scope::Global, &budget).unwrap();
                let deeper = x.admissible_blocks(n + 1, Scope::Global, &budget).unwrap();
                // every deeper block restricts into the set
                for p in &deeper {
                    assert!(here.contains(&p.restrict_delta(n).unwrap()));
                }
                // every block extends at least once
                for p in &here {
                    assert!(deeper
                        .iter()
                        .any(|q| q.restrict_delta(n).as_ref() == Ok(p)));
                }
            }
        }
    }

    #[test]
    fn canonical_presentation_of_monochromatic() {
        let budget = Budget::default();
        let a = mono_sft().canonical_presentation(&budget).unwrap();
        assert_eq!(a.state_count(), 4);
        assert!(a.is_essential());
        // accepts exactly the monochromatic patterns
        let m = mono_automaton();
        for p in enumerate_full_patterns(k2(), 2, 3, &budget).unwrap() {
            assert_eq!(
                a.accepts_pattern(&p).unwrap().is_some(),
                m.accepts_pattern(&p).unwrap().is_some(),
                "{}",
                p.to_term(&alpha01())
            );
        }
    }

    #[test]
    fn canonical_presentation_of_full_shift() {
        let budget = Budget::default();
        let x = SftDescription::full_shift(alpha01(), k2());
        let a = x.canonical_presentation(&budget).unwrap();
        assert_eq!(a.state_count(), 2);
        for p in enumerate_full_patterns(k2(), 2, 3, &budget).unwrap() {
            assert!(a.accepts_pattern(&p).unwrap().is_some());
        }
    }

    #[test]
    fn canonical_presentation_of_dead_end() {
        let budget = Budget::default();
        let a = dead_end_sft().canonical_presentation(&budget).unwrap();
        assert_eq!(a.state_count(), 1);
        assert!(a.accepts_pattern(&parse_pattern("0(0,0)")).unwrap().is_some());
        assert!(a.accepts_pattern(&parse_pattern("0(1,1)")).unwrap().is_none());
    }

    #[test]
    fn presentation_accepts_exactly_the_global_blocks() {
        let budget = Budget::default();
        for x in [mono_sft(), dead_end_sft()] {
            let a = x.canonical_presentation(&budget).unwrap();
            for d in 1..=3 {
                let globals = x.admissible_blocks(d, Scope::Global, &budget).unwrap();
                let accepted: Vec<Pattern> =
                    crate::pattern::enumerate_blocks(k2(), 2, d, &budget)
                        .unwrap()
                        .into_iter()
                        .filter(|p| a.accepts_pattern(p).unwrap().is_some())
                        .collect();
                assert_eq!(accepted, globals);
            }
        }
    }

    #[test]
    fn monochromatic_emptiness() {
        let budget = Budget::default();
        assert!(!mono_sft().is_empty(&budget).unwrap());
        let all = crate::pattern::enumerate_blocks(k2(), 2, 1, &budget).unwrap();
        let x = SftDescription::new(alpha01(), k2(), 1, all).unwrap();
        assert!(x.is_empty(&budget).unwrap());
    }
}
