//! Labeled finite subtrees. A pattern maps every vertex of its support to a
//! letter. Patterns whose support is a full subtree are the unit of
//! acceptance for automata; blocks are the special case where the support is
//! `Δn`.
//!
//! Full-tree-patterns have a canonical term syntax,
//!
//! ```text
//! term := letter | letter '(' term (',' term)* ')'
//! ```
//!
//! with exactly `k` subterms whenever parentheses are present. Letters are
//! alphabet tokens matched longest-first and whitespace between tokens is
//! ignored. All tie-breaking over patterns uses the lexicographic order of
//! this serialization under the alphabet's declared letter order, which
//! [`Pattern::cmp`] implements structurally: smaller root letter first, a
//! leaf before an internal vertex, then children left to right.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::alphabet::{Alphabet, Arity, Letter};
use crate::error::{Budget, Error};
use crate::tree::{delta_len, delta_words, Subtree, Word};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Pattern {
    arity: Arity,
    labels: BTreeMap<Word, Letter>,
}

impl Pattern {
    /// Builds a pattern from explicit labels. The keys must form a subtree:
    /// nonempty, prefix-closed, directions below the arity.
    pub fn new(arity: Arity, labels: BTreeMap<Word, Letter>) -> Result<Self, Error> {
        if !labels.contains_key(&Word::root()) {
            return Err(Error::invalid("pattern", "support must contain the root"));
        }
        let k = arity.get();
        for w in labels.keys() {
            if w.directions().iter().any(|&d| (d as usize) >= k) {
                return Err(Error::invalid(
                    "pattern",
                    format!("vertex {w} uses a direction outside 0..{k}"),
                ));
            }
            if let Some(p) = w.parent() {
                if !labels.contains_key(&p) {
                    return Err(Error::invalid(
                        "pattern",
                        format!("vertex {w} present but its parent is not"),
                    ));
                }
            }
        }
        Ok(Pattern { arity, labels })
    }

    pub fn single(arity: Arity, letter: Letter) -> Self {
        let mut labels = BTreeMap::new();
        labels.insert(Word::root(), letter);
        Pattern { arity, labels }
    }

    /// Internal constructor that skips validation; callers guarantee the
    /// subtree invariants.
    pub(crate) fn from_parts(arity: Arity, labels: BTreeMap<Word, Letter>) -> Self {
        debug_assert!(labels.contains_key(&Word::root()));
        Pattern { arity, labels }
    }

    pub fn arity(&self) -> Arity {
        self.arity
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn label(&self, w: &Word) -> Option<Letter> {
        self.labels.get(w).copied()
    }

    pub fn root_label(&self) -> Letter {
        self.labels[&Word::root()]
    }

    /// Label map in pre-order.
    pub fn labels(&self) -> impl Iterator<Item = (&Word, Letter)> + '_ {
        self.labels.iter().map(|(w, &l)| (w, l))
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.labels.contains_key(w)
    }

    pub fn support(&self) -> Subtree {
        Subtree::new(self.arity, self.labels.keys().cloned().collect())
            .expect("pattern support is a subtree by construction")
    }

    pub fn children_present(&self, w: &Word) -> Vec<u8> {
        self.arity
            .directions()
            .filter(|&d| self.labels.contains_key(&w.child(d)))
            .collect()
    }

    pub fn height(&self) -> usize {
        1 + self.labels.keys().map(Word::len).max().unwrap_or(0)
    }

    pub fn max_letter(&self) -> Letter {
        self.labels.values().copied().max().unwrap()
    }

    /// Whether every vertex has 0 or `k` children, i.e. the support is a
    /// full subtree and the pattern is a full-tree-pattern.
    pub fn is_full_tree(&self) -> bool {
        self.labels.keys().all(|w| {
            let n = self.children_present(w).len();
            n == 0 || n == self.arity.get()
        })
    }

    /// Whether the support is exactly `Δn`; returns the size `n`.
    pub fn block_size(&self) -> Option<usize> {
        let h = self.height();
        if delta_len(self.arity, h) == Some(self.labels.len()) && self.is_full_tree() {
            Some(h)
        } else {
            None
        }
    }

    /// The same support with every letter replaced through `map`.
    pub fn map_letters(&self, map: impl Fn(Letter) -> Letter) -> Pattern {
        Pattern {
            arity: self.arity,
            labels: self.labels.iter().map(|(w, &l)| (w.clone(), map(l))).collect(),
        }
    }

    /// The shifted pattern `p^w` with support `{u : wu ∈ supp(p)}`.
    pub fn subtree_shift(&self, w: &Word) -> Result<Pattern, Error> {
        if !self.labels.contains_key(w) {
            return Err(Error::invalid(
                "shift",
                format!("vertex {w} is not in the support"),
            ));
        }
        let labels = self
            .labels
            .iter()
            .filter_map(|(v, &l)| v.strip_prefix(w).map(|u| (u, l)))
            .collect();
        Ok(Pattern {
            arity: self.arity,
            labels,
        })
    }

    /// Restriction to `Δn`. Requires the support to contain all of `Δn`.
    pub fn restrict_delta(&self, n: usize) -> Result<Pattern, Error> {
        let mut labels = BTreeMap::new();
        for w in delta_words(self.arity, n) {
            match self.labels.get(&w) {
                Some(&l) => {
                    labels.insert(w, l);
                }
                None => {
                    return Err(Error::invalid(
                        "restriction",
                        format!("support does not cover Δ{n}"),
                    ))
                }
            }
        }
        Ok(Pattern {
            arity: self.arity,
            labels,
        })
    }

    /// Restriction to an arbitrary subtree contained in the support.
    pub fn restrict(&self, support: &Subtree) -> Result<Pattern, Error> {
        let mut labels = BTreeMap::new();
        for w in support.vertices() {
            match self.labels.get(w) {
                Some(&l) => {
                    labels.insert(w.clone(), l);
                }
                None => {
                    return Err(Error::invalid(
                        "restriction",
                        format!("vertex {w} missing from the support"),
                    ))
                }
            }
        }
        Ok(Pattern {
            arity: self.arity,
            labels,
        })
    }

    /// Canonical term serialization. Only defined for full-tree-patterns;
    /// every letter must belong to `alphabet`.
    pub fn to_term(&self, alphabet: &Alphabet) -> String {
        let mut out = String::new();
        self.write_term(alphabet, &Word::root(), &mut out);
        out
    }

    fn write_term(&self, alphabet: &Alphabet, w: &Word, out: &mut String) {
        let letter = self.labels[w];
        assert!(alphabet.contains(letter), "letter outside the alphabet");
        out.push_str(alphabet.token(letter));
        let children = self.children_present(w);
        if children.is_empty() {
            return;
        }
        assert_eq!(
            children.len(),
            self.arity.get(),
            "term syntax requires a full-tree-pattern"
        );
        out.push('(');
        for (i, d) in children.into_iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            self.write_term(alphabet, &w.child(d), out);
        }
        out.push(')');
    }

    /// Parses the canonical term syntax into a full-tree-pattern.
    pub fn parse_term(text: &str, alphabet: &Alphabet, arity: Arity) -> Result<Pattern, Error> {
        let mut parser = TermParser {
            text,
            pos: 0,
            alphabet,
            arity,
        };
        let mut labels = BTreeMap::new();
        parser.parse_into(&Word::root(), &mut labels)?;
        parser.skip_ws();
        if parser.pos != parser.text.len() {
            return Err(Error::Parse(format!(
                "trailing input after term at byte {}",
                parser.pos
            )));
        }
        Ok(Pattern {
            arity,
            labels,
        })
    }
}

/// Canonical order: lexicographic on the serialized term under the declared
/// letter order. Comparing patterns over different alphabets is meaningless;
/// letters compare by index.
impl Ord for Pattern {
    fn cmp(&self, other: &Self) -> Ordering {
        cmp_at(self, other, &Word::root())
    }
}

impl PartialOrd for Pattern {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn cmp_at(a: &Pattern, b: &Pattern, w: &Word) -> Ordering {
    let la = a.labels[w];
    let lb = b.labels[w];
    if la != lb {
        return la.cmp(&lb);
    }
    let ca = a.children_present(w);
    let cb = b.children_present(w);
    match (ca.is_empty(), cb.is_empty()) {
        (true, true) => Ordering::Equal,
        (true, false) => Ordering::Less,
        (false, true) => Ordering::Greater,
        (false, false) => {
            for d in ca {
                let ord = cmp_at(a, b, &w.child(d));
                if ord != Ordering::Equal {
                    return ord;
                }
            }
            Ordering::Equal
        }
    }
}

struct TermParser<'a> {
    text: &'a str,
    pos: usize,
    alphabet: &'a Alphabet,
    arity: Arity,
}

impl<'a> TermParser<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.text[self.pos..].chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn expect(&mut self, c: char) -> Result<(), Error> {
        self.skip_ws();
        if self.text[self.pos..].starts_with(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            Err(Error::Parse(format!(
                "expected {c:?} at byte {} of term",
                self.pos
            )))
        }
    }

    fn letter(&mut self) -> Result<Letter, Error> {
        self.skip_ws();
        let rest = &self.text[self.pos..];
        // longest-first token match
        let mut best: Option<(usize, Letter)> = None;
        for l in self.alphabet.letters() {
            let tok = self.alphabet.token(l);
            if rest.starts_with(tok) {
                if best.map_or(true, |(len, _)| tok.len() > len) {
                    best = Some((tok.len(), l));
                }
            }
        }
        match best {
            Some((len, l)) => {
                self.pos += len;
                Ok(l)
            }
            None => Err(Error::Parse(format!(
                "expected a letter at byte {} of term",
                self.pos
            ))),
        }
    }

    fn parse_into(&mut self, w: &Word, labels: &mut BTreeMap<Word, Letter>) -> Result<(), Error> {
        let letter = self.letter()?;
        labels.insert(w.clone(), letter);
        self.skip_ws();
        if self.text[self.pos..].starts_with('(') {
            self.pos += 1;
            for d in 0..self.arity.get() {
                if d > 0 {
                    self.expect(',')?;
                }
                self.parse_into(&w.child(d as u8), labels)?;
            }
            self.expect(')')?;
        }
        Ok(())
    }
}

/// All blocks of size `n` over `letters` letters, in canonical order.
pub fn enumerate_blocks(
    arity: Arity,
    letters: usize,
    n: usize,
    budget: &Budget,
) -> Result<Vec<Pattern>, Error> {
    let count = block_count(arity, letters, n).ok_or(Error::BudgetExceeded {
        what: "block enumeration",
        needed: u128::MAX,
        limit: budget.max_patterns as u128,
    })?;
    budget.check_patterns("block enumeration", count)?;
    let words: Vec<Word> = delta_words(arity, n).into_iter().collect();
    let mut out = Vec::with_capacity(count as usize);
    for rank in 0..count {
        out.push(block_unrank(arity, letters, &words, rank));
    }
    Ok(out)
}

/// Number of blocks of size `n`: `letters^|Δn|`, or `None` on overflow.
pub fn block_count(arity: Arity, letters: usize, n: usize) -> Option<u128> {
    let m = delta_len(arity, n)?;
    let mut count: u128 = 1;
    for _ in 0..m {
        count = count.checked_mul(letters as u128)?;
    }
    Some(count)
}

/// The index of a block in the canonical enumeration of its size: the
/// pre-order letter sequence read as a base-`letters` numeral.
pub fn block_rank(block: &Pattern, letters: usize) -> u128 {
    let mut rank: u128 = 0;
    for (_, l) in block.labels() {
        debug_assert!(l.0 < letters);
        rank = rank * letters as u128 + l.0 as u128;
    }
    rank
}

fn block_unrank(arity: Arity, letters: usize, words: &[Word], mut rank: u128) -> Pattern {
    let mut digits = vec![0usize; words.len()];
    for slot in digits.iter_mut().rev() {
        *slot = (rank % letters as u128) as usize;
        rank /= letters as u128;
    }
    let labels = words
        .iter()
        .cloned()
        .zip(digits.into_iter().map(Letter))
        .collect();
    Pattern::from_parts(arity, labels)
}

/// Rebuilds a block of size `n` from its canonical index.
pub fn block_from_rank(arity: Arity, letters: usize, n: usize, rank: u128) -> Pattern {
    let words: Vec<Word> = delta_words(arity, n).into_iter().collect();
    block_unrank(arity, letters, &words, rank)
}

/// All full-tree-patterns of height at most `max_height` over `letters`
/// letters, in canonical order.
pub fn enumerate_full_patterns(
    arity: Arity,
    letters: usize,
    max_height: usize,
    budget: &Budget,
) -> Result<Vec<Pattern>, Error> {
    let count = full_pattern_count(arity, letters, max_height).ok_or(Error::BudgetExceeded {
        what: "pattern enumeration",
        needed: u128::MAX,
        limit: budget.max_patterns as u128,
    })?;
    budget.check_patterns("pattern enumeration", count)?;
    Ok(full_patterns(arity, letters, max_height))
}

/// Number of full-tree-patterns of height `≤ h`, or `None` on overflow.
pub fn full_pattern_count(arity: Arity, letters: usize, h: usize) -> Option<u128> {
    if h == 0 {
        return Some(0);
    }
    let inner = full_pattern_count(arity, letters, h - 1)?;
    let mut tuples: u128 = 1;
    for _ in 0..arity.get() {
        tuples = tuples.checked_mul(inner)?;
    }
    (letters as u128).checked_mul(tuples.checked_add(1)?)
}

fn full_patterns(arity: Arity, letters: usize, h: usize) -> Vec<Pattern> {
    if h == 0 {
        return Vec::new();
    }
    let inner = full_patterns(arity, letters, h - 1);
    let k = arity.get();
    let mut out = Vec::new();
    for l in (0..letters).map(Letter) {
        out.push(Pattern::single(arity, l));
        if inner.is_empty() {
            continue;
        }
        // children tuples in lexicographic order over the canonical order
        let mut index = vec![0usize; k];
        loop {
            let mut labels = BTreeMap::new();
            labels.insert(Word::root(), l);
            for (d, &i) in index.iter().enumerate() {
                let prefix = Word::root().child(d as u8);
                for (w, child_letter) in inner[i].labels() {
                    labels.insert(prefix.concat(w), child_letter);
                }
            }
            out.push(Pattern::from_parts(arity, labels));
            let mut pos = k;
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                index[pos] += 1;
                if index[pos] < inner.len() {
                    break;
                }
                index[pos] = 0;
            }
            if index.iter().all(|&i| i == 0) {
                break;
            }
        }
    }
    out
}
