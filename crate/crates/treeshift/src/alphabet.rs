use std::fmt;

use crate::error::Error;

/// Index of a letter within an [`Alphabet`]. Patterns, automata and rule
/// tables store letters as indices; the owning object knows which alphabet
/// they refer to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(pub usize);

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Number of children of every vertex of the tree. Directions are
/// identified with `0..k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Arity(usize);

impl Arity {
    pub const MAX: usize = 255;

    pub fn new(k: usize) -> Result<Self, Error> {
        if k < 1 || k > Self::MAX {
            return Err(Error::invalid(
                "arity",
                format!("must be between 1 and {}, got {k}", Self::MAX),
            ));
        }
        Ok(Arity(k))
    }

    pub fn get(&self) -> usize {
        self.0
    }

    /// Directions `0..k` in ascending order.
    pub fn directions(&self) -> impl Iterator<Item = u8> + '_ {
        (0..self.0).map(|d| d as u8)
    }
}

impl fmt::Display for Arity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Ordered finite sequence of distinct symbol tokens. The declared order is
/// fixed and used for all tie-breaking throughout the crate.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Alphabet {
    tokens: Vec<String>,
}

impl Alphabet {
    /// Builds an alphabet from tokens. Tokens must be nonempty, pairwise
    /// distinct, and free of whitespace and of the characters `(`, `)`,
    /// `,`, `#` reserved by the term syntax and the document formats.
    pub fn new<S: Into<String>>(tokens: impl IntoIterator<Item = S>) -> Result<Self, Error> {
        let tokens: Vec<String> = tokens.into_iter().map(Into::into).collect();
        if tokens.is_empty() {
            return Err(Error::invalid("alphabet", "must contain at least one letter"));
        }
        for t in &tokens {
            if t.is_empty() {
                return Err(Error::invalid("alphabet", "empty token"));
            }
            if t.chars()
                .any(|c| c.is_whitespace() || matches!(c, '(' | ')' | ',' | '#'))
            {
                return Err(Error::invalid(
                    "alphabet",
                    format!("token {t:?} contains a reserved character"),
                ));
            }
        }
        for (i, t) in tokens.iter().enumerate() {
            if tokens[..i].contains(t) {
                return Err(Error::invalid("alphabet", format!("duplicate token {t:?}")));
            }
        }
        Ok(Alphabet { tokens })
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..self.tokens.len()).map(Letter)
    }

    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }

    pub fn token(&self, letter: Letter) -> &str {
        &self.tokens[letter.0]
    }

    pub fn contains(&self, letter: Letter) -> bool {
        letter.0 < self.tokens.len()
    }

    pub fn index_of(&self, token: &str) -> Option<Letter> {
        self.tokens.iter().position(|t| t == token).map(Letter)
    }

    /// Union in the sense of Remark-style alphabet extension: keeps `self`'s
    /// tokens in their declared order, then appends the tokens of `other`
    /// that are new, in `other`'s order.
    pub fn union(&self, other: &Alphabet) -> Alphabet {
        let mut tokens = self.tokens.clone();
        for t in &other.tokens {
            if !tokens.contains(t) {
                tokens.push(t.clone());
            }
        }
        Alphabet { tokens }
    }

    /// Letter-wise embedding of `self` into `target`, or `None` if some
    /// token of `self` is missing from `target`.
    pub fn embedding(&self, target: &Alphabet) -> Option<Vec<Letter>> {
        self.tokens.iter().map(|t| target.index_of(t)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicates_and_reserved() {
        assert!(Alphabet::new(["0", "0"]).is_err());
        assert!(Alphabet::new(["a b"]).is_err());
        assert!(Alphabet::new(["x,"]).is_err());
        assert!(Alphabet::new(Vec::<String>::new()).is_err());
    }

    #[test]
    fn union_keeps_declared_order() {
        let a = Alphabet::new(["0", "1"]).unwrap();
        let b = Alphabet::new(["2", "1"]).unwrap();
        let u = a.union(&b);
        assert_eq!(u.tokens(), &["0", "1", "2"]);
        assert_eq!(a.embedding(&u).unwrap(), vec![Letter(0), Letter(1)]);
        assert_eq!(b.embedding(&u).unwrap(), vec![Letter(2), Letter(1)]);
    }

    #[test]
    fn longest_token_lookup_is_exact() {
        let a = Alphabet::new(["ab", "a"]).unwrap();
        assert_eq!(a.index_of("a"), Some(Letter(1)));
        assert_eq!(a.index_of("ab"), Some(Letter(0)));
        assert_eq!(a.index_of("b"), None);
    }
}
