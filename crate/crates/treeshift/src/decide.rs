//! Top-level decision procedures: fullness, equality and containment of
//! sofic tree shifts, and surjectivity of cellular automata between them.
//!
//! Every negative answer carries a witness full-tree-pattern that separates
//! the two languages (or lies outside the image), so callers can re-check
//! verdicts directly with the acceptance primitives.
//!
//! The equality test complements both presentations with the subset
//! finite-tree automaton, joins the complements and tests emptiness of the
//! two difference languages; the initial pairs of the join pick out the
//! patterns of one shift the other misses.

use std::collections::BTreeSet;

use crate::alphabet::Alphabet;
use crate::ca::{sft_cover, CellularAutomaton};
use crate::error::{Budget, Error};
use crate::fta::{subset_fta, EmptinessMethod, FiniteTreeAutomaton, SubsetMode};
use crate::pattern::Pattern;
use crate::rabin::{RabinAutomaton, StateId};
use crate::sft::SftDescription;

/// A sofic tree shift given either by a presentation, by a shift of finite
/// type (meaning the shift itself), or by a shift of finite type together
/// with a cellular automaton (meaning the image shift).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SoficInput {
    Automaton(RabinAutomaton),
    Sft(SftDescription),
    SftImage(SftDescription, CellularAutomaton),
}

impl SoficInput {
    pub fn arity(&self) -> crate::alphabet::Arity {
        match self {
            SoficInput::Automaton(a) => a.arity(),
            SoficInput::Sft(x) => x.arity(),
            SoficInput::SftImage(_, t) => t.arity(),
        }
    }

    /// The alphabet the described shift lives over.
    pub fn alphabet(&self) -> &Alphabet {
        match self {
            SoficInput::Automaton(a) => a.alphabet(),
            SoficInput::Sft(x) => x.alphabet(),
            SoficInput::SftImage(_, t) => t.output_alphabet(),
        }
    }

    /// An essential presentation of the described shift.
    pub fn to_presentation(&self, budget: &Budget) -> Result<RabinAutomaton, Error> {
        match self {
            SoficInput::Automaton(a) => Ok(a.essentialize()),
            SoficInput::Sft(x) => x.canonical_presentation(budget),
            SoficInput::SftImage(z, t) => t.image_automaton(z, budget),
        }
    }

    /// Syntactic full-shift detection for the fast surjectivity path.
    fn is_trivially_full(&self) -> bool {
        match self {
            SoficInput::Sft(x) => x.forbidden().is_empty(),
            SoficInput::SftImage(z, t) => z.forbidden().is_empty() && t.is_identity(),
            SoficInput::Automaton(a) => {
                a.state_count() == 1
                    && a.bundles().len() == a.alphabet().len()
                    && a.alphabet().letters().all(|l| {
                        a.bundles().iter().any(|b| {
                            b.initial == StateId(0)
                                && b.label == l
                                && b.terminals.iter().all(|&t| t == StateId(0))
                        })
                    })
            }
        }
    }
}

/// Outcome of a decision procedure. When the answer is negative for
/// fullness, equality, containment or surjectivity, `witness` holds a
/// separating full-tree-pattern over `alphabet`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub answer: bool,
    pub witness: Option<Pattern>,
    pub alphabet: Alphabet,
}

/// Whether the presented shift is the full shift: its complement language
/// must be empty, and a minimal missed pattern is reported otherwise.
pub fn is_full(a: &RabinAutomaton, budget: &Budget) -> Result<Verdict, Error> {
    let complement = subset_fta(a, SubsetMode::Complement, budget)?;
    let empty = complement.is_empty(EmptinessMethod::Fixpoint, budget)?;
    let witness = if empty {
        None
    } else {
        complement.sample_accepted(budget)?
    };
    Ok(Verdict {
        answer: empty,
        witness,
        alphabet: a.alphabet().clone(),
    })
}

/// The two difference languages of a pair of presentations over a common
/// alphabet, as finite-tree automata on the join of the complement subset
/// automata: initial pairs (non-initial, initial) pick out the patterns of
/// the first shift missing from the second, and symmetrically.
fn difference_ftas(
    a1: &RabinAutomaton,
    a2: &RabinAutomaton,
    budget: &Budget,
) -> Result<(FiniteTreeAutomaton, FiniteTreeAutomaton), Error> {
    let c1 = subset_fta(a1, SubsetMode::Complement, budget)?;
    let c2 = subset_fta(a2, SubsetMode::Complement, budget)?;
    let n1 = c1.base().state_count();
    let n2 = c2.base().state_count();
    budget.check_states("equality product", (n1 as u128).saturating_mul(n2 as u128))?;
    let product = c1.base().join(c2.base())?;
    let pair = |s1: StateId, s2: StateId| StateId(s1.0 * n2 + s2.0);
    let i1 = *c1.initials().iter().next().expect("complement mode has one initial");
    let i2 = *c2.initials().iter().next().expect("complement mode has one initial");
    let f = pair(c1.final_state(), c2.final_state());
    let in_first_only: BTreeSet<StateId> = (0..n1)
        .map(StateId)
        .filter(|&s| s != i1)
        .map(|s| pair(s, i2))
        .collect();
    let in_second_only: BTreeSet<StateId> = (0..n2)
        .map(StateId)
        .filter(|&s| s != i2)
        .map(|s| pair(i1, s))
        .collect();
    let g1 = FiniteTreeAutomaton::new(product.clone(), in_first_only, f)?;
    let g2 = FiniteTreeAutomaton::new(product, in_second_only, f)?;
    Ok((g1, g2))
}

/// Brings two inputs to essential presentations over their common alphabet;
/// errors on arity mismatch.
fn common_presentations(
    x1: &SoficInput,
    x2: &SoficInput,
    budget: &Budget,
) -> Result<(RabinAutomaton, RabinAutomaton, Alphabet), Error> {
    if x1.arity() != x2.arity() {
        return Err(Error::ArityMismatch {
            left: x1.arity().get(),
            right: x2.arity().get(),
        });
    }
    let alphabet = x1.alphabet().union(x2.alphabet());
    let a1 = x1.to_presentation(budget)?.with_alphabet(&alphabet)?;
    let a2 = x2.to_presentation(budget)?.with_alphabet(&alphabet)?;
    Ok((a1, a2, alphabet))
}

/// Whether the two inputs describe the same sofic shift. On inequality the
/// witness belongs to exactly one of the two languages.
pub fn equal_sofic(x1: &SoficInput, x2: &SoficInput, budget: &Budget) -> Result<Verdict, Error> {
    let (a1, a2, alphabet) = common_presentations(x1, x2, budget)?;
    let (g1, g2) = difference_ftas(&a1, &a2, budget)?;
    for g in [&g1, &g2] {
        if !g.is_empty(EmptinessMethod::Fixpoint, budget)? {
            return Ok(Verdict {
                answer: false,
                witness: g.sample_accepted(budget)?,
                alphabet,
            });
        }
    }
    Ok(Verdict {
        answer: true,
        witness: None,
        alphabet,
    })
}

/// Whether the first shift is contained in the second; the witness is a
/// pattern of the first missing from the second.
pub fn contained_sofic(
    x1: &SoficInput,
    x2: &SoficInput,
    budget: &Budget,
) -> Result<Verdict, Error> {
    let (a1, a2, alphabet) = common_presentations(x1, x2, budget)?;
    let (g1, _) = difference_ftas(&a1, &a2, budget)?;
    if g1.is_empty(EmptinessMethod::Fixpoint, budget)? {
        Ok(Verdict {
            answer: true,
            witness: None,
            alphabet,
        })
    } else {
        Ok(Verdict {
            answer: false,
            witness: g1.sample_accepted(budget)?,
            alphabet,
        })
    }
}

/// Whether the cellular automaton maps the shift described by `x` onto the
/// shift described by `y`. The image is presented by the image automaton of
/// the composite of `tau` with a covering map of `x`, and then compared
/// with `y`; a witness is a pattern of one side the other misses, with the
/// `y` side sampled first so failed verdicts usually exhibit a pattern of
/// `y` without preimage.
pub fn surjective(
    tau: &CellularAutomaton,
    x: &SoficInput,
    y: &SoficInput,
    budget: &Budget,
) -> Result<Verdict, Error> {
    if tau.arity() != x.arity() || x.arity() != y.arity() {
        return Err(Error::ArityMismatch {
            left: tau.arity().get(),
            right: x.arity().get().max(y.arity().get()),
        });
    }
    if tau.input_alphabet() != x.alphabet() {
        return Err(Error::AlphabetMismatch(
            "the automaton's input alphabet differs from the domain's".into(),
        ));
    }
    // both sides syntactically full: surjectivity is fullness of the image
    if x.is_trivially_full() && y.is_trivially_full() {
        let full = SftDescription::full_shift(tau.input_alphabet().clone(), tau.arity());
        let image = tau.image_automaton(&full, budget)?;
        return is_full(&image, budget);
    }
    let (cover, composite) = match x {
        SoficInput::Automaton(a) => {
            let essential = a.essentialize();
            if essential.state_count() == 0 {
                // empty domain: the image is empty too
                let empty = RabinAutomaton::empty(tau.arity(), tau.output_alphabet().clone());
                return equal_sofic(y, &SoficInput::Automaton(empty), budget);
            }
            let (cover, label_map) = sft_cover(&essential, budget)?;
            let composite = tau.compose(&label_map, budget)?;
            (cover, composite)
        }
        SoficInput::Sft(z) => (z.clone(), tau.clone()),
        SoficInput::SftImage(z, inner) => (z.clone(), tau.compose(inner, budget)?),
    };
    let image = composite.image_automaton(&cover, budget)?;
    equal_sofic(y, &SoficInput::Automaton(image), budget)
}
