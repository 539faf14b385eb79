//! Words over the direction set and finite subtrees of the regular rooted
//! tree. A word is a vertex of the tree; the empty word is the root. The
//! derived `Ord` on words (lexicographic on direction sequences) coincides
//! with depth-first pre-order of the tree, which the rest of the crate
//! relies on for canonical iteration.

use std::collections::BTreeSet;
use std::fmt;

use crate::alphabet::Arity;
use crate::error::Error;

/// A vertex of the `k`-regular rooted tree: a finite sequence of directions.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn root() -> Self {
        Word(Vec::new())
    }

    pub fn from_directions(directions: impl Into<Vec<u8>>) -> Self {
        Word(directions.into())
    }

    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn directions(&self) -> &[u8] {
        &self.0
    }

    pub fn child(&self, direction: u8) -> Word {
        let mut v = self.0.clone();
        v.push(direction);
        Word(v)
    }

    pub fn parent(&self) -> Option<Word> {
        if self.0.is_empty() {
            None
        } else {
            Some(Word(self.0[..self.0.len() - 1].to_vec()))
        }
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// The suffix `u` such that `self = prefix·u`, if `prefix` is a prefix.
    pub fn strip_prefix(&self, prefix: &Word) -> Option<Word> {
        self.0
            .strip_prefix(prefix.0.as_slice())
            .map(|rest| Word(rest.to_vec()))
    }
}

impl fmt::Display for Word {
    /// Direction-digit string; the root is written `e`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "e");
        }
        for d in &self.0 {
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

/// A finite subtree of the regular rooted tree: a nonempty, prefix-closed
/// set of words containing the root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subtree {
    arity: Arity,
    vertices: BTreeSet<Word>,
}

impl Subtree {
    pub fn new(arity: Arity, vertices: BTreeSet<Word>) -> Result<Self, Error> {
        if !vertices.contains(&Word::root()) {
            return Err(Error::invalid("subtree", "must contain the root"));
        }
        let k = arity.get();
        for w in &vertices {
            if w.directions().iter().any(|&d| (d as usize) >= k) {
                return Err(Error::invalid(
                    "subtree",
                    format!("vertex {w} uses a direction outside 0..{k}"),
                ));
            }
            if let Some(p) = w.parent() {
                if !vertices.contains(&p) {
                    return Err(Error::invalid(
                        "subtree",
                        format!("vertex {w} present but its parent is not"),
                    ));
                }
            }
        }
        Ok(Subtree { arity, vertices })
    }

    pub fn arity(&self) -> Arity {
        self.arity
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.vertices.contains(w)
    }

    /// Vertices in pre-order.
    pub fn vertices(&self) -> impl Iterator<Item = &Word> + '_ {
        self.vertices.iter()
    }

    /// Directions `σ` such that `wσ` is a vertex.
    pub fn children_present(&self, w: &Word) -> Vec<u8> {
        self.arity
            .directions()
            .filter(|&d| self.vertices.contains(&w.child(d)))
            .collect()
    }

    pub fn is_leaf(&self, w: &Word) -> bool {
        self.arity
            .directions()
            .all(|d| !self.vertices.contains(&w.child(d)))
    }

    /// Least `n` with `self ⊆ Δn`, i.e. one plus the maximal vertex depth.
    pub fn height(&self) -> usize {
        1 + self.vertices.iter().map(Word::len).max().unwrap_or(0)
    }

    /// Whether every vertex has either no children or all `k` of them.
    pub fn is_full(&self) -> bool {
        self.vertices.iter().all(|w| {
            let n = self.children_present(w).len();
            n == 0 || n == self.arity.get()
        })
    }

    /// `T⁺ = T ∪ {wσ : w ∈ T, σ ∈ Σ}`. The result is always full.
    pub fn plus(&self) -> FullTree {
        let mut vertices = self.vertices.clone();
        for w in &self.vertices {
            for d in self.arity.directions() {
                vertices.insert(w.child(d));
            }
        }
        FullTree(Subtree {
            arity: self.arity,
            vertices,
        })
    }

    /// The words of `T⁺ ∖ T` in pre-order.
    pub fn frontier(&self) -> Vec<Word> {
        let plus = self.plus();
        plus.vertices()
            .filter(|w| !self.contains(w))
            .cloned()
            .collect()
    }
}

/// A finite full subtree: every vertex has 0 or `k` children.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FullTree(Subtree);

impl FullTree {
    pub fn new(subtree: Subtree) -> Result<Self, Error> {
        if !subtree.is_full() {
            return Err(Error::invalid(
                "full tree",
                "some vertex has a number of children strictly between 0 and k",
            ));
        }
        Ok(FullTree(subtree))
    }

    /// `Δn`: all words of length `< n`. Requires `n ≥ 1`.
    pub fn delta(arity: Arity, n: usize) -> Result<Self, Error> {
        if n == 0 {
            return Err(Error::invalid("delta", "n must be at least 1"));
        }
        Ok(FullTree(Subtree {
            arity,
            vertices: delta_words(arity, n),
        }))
    }

    pub fn as_subtree(&self) -> &Subtree {
        &self.0
    }

    pub fn into_subtree(self) -> Subtree {
        self.0
    }
}

impl std::ops::Deref for FullTree {
    type Target = Subtree;

    fn deref(&self) -> &Subtree {
        &self.0
    }
}

/// The vertex set of `Δn` in pre-order.
pub fn delta_words(arity: Arity, n: usize) -> BTreeSet<Word> {
    let mut out = BTreeSet::new();
    let mut level = vec![Word::root()];
    for depth in 0..n {
        let mut next = Vec::new();
        for w in level {
            if depth + 1 < n {
                for d in arity.directions() {
                    next.push(w.child(d));
                }
            }
            out.insert(w);
        }
        level = next;
    }
    out
}

/// Number of vertices of `Δn`, or `None` on overflow.
pub fn delta_len(arity: Arity, n: usize) -> Option<usize> {
    let k = arity.get();
    let mut total: usize = 0;
    let mut layer: usize = 1;
    for _ in 0..n {
        total = total.checked_add(layer)?;
        layer = layer.checked_mul(k)?;
    }
    Some(total)
}
