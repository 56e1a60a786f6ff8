//! Words over a finite alphabet.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Index of a symbol in its [`Alphabet`].
pub type Symbol = usize;

/// An ordered, duplicate-free, nonempty list of symbol names.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    names: Vec<String>,
    compact: bool,
}

impl Alphabet {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::Config("alphabet must not be empty".into()));
        }
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() || n == "ε" || n.chars().any(|c| c.is_whitespace() || ",.{}[]():".contains(c)) {
                return Err(Error::Config(format!("invalid symbol name `{n}`")));
            }
            if names[..i].contains(n) {
                return Err(Error::Config(format!("duplicate symbol `{n}`")));
            }
        }
        let compact = names.iter().all(|n| n.chars().count() == 1);
        Ok(Alphabet { names, compact })
    }

    /// One symbol per character, e.g. `Alphabet::from_chars("abc")`.
    pub fn from_chars(chars: &str) -> Result<Self> {
        Alphabet::new(chars.chars().map(String::from))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, sym: Symbol) -> &str {
        &self.names[sym]
    }

    pub fn symbols(&self) -> std::ops::Range<Symbol> {
        0..self.names.len()
    }

    pub fn index_of(&self, name: &str) -> Option<Symbol> {
        self.names.iter().position(|n| n == name)
    }

    /// Parses `ε` or the empty string as the empty word. Single-character
    /// alphabets read one symbol per character, others expect dot separators.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let text = text.trim();
        if text.is_empty() || text == "ε" {
            return Ok(Word::epsilon());
        }
        let lookup = |s: &str| self.index_of(s).ok_or_else(|| Error::UnknownSymbol(s.to_string()));
        let syms = if self.compact {
            text.chars().map(|c| lookup(&c.to_string())).collect::<Result<Vec<_>>>()?
        } else {
            text.split('.').map(lookup).collect::<Result<Vec<_>>>()?
        };
        Ok(Word(syms))
    }

    pub fn show(&self, w: &Word) -> String {
        if w.is_empty() {
            return "ε".to_string();
        }
        let parts: Vec<&str> = w.0.iter().map(|&s| self.name(s)).collect();
        if self.compact {
            parts.concat()
        } else {
            parts.join(".")
        }
    }

    pub fn check(&self, w: &Word) -> Result<()> {
        match w.0.iter().find(|&&s| s >= self.len()) {
            Some(s) => Err(Error::UnknownSymbol(format!("#{s}"))),
            None => Ok(()),
        }
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.names.join(","))
    }
}

/// A finite sequence of symbol indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Symbol>);

impl Word {
    pub fn epsilon() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn push(&self, a: Symbol) -> Word {
        let mut v = self.0.clone();
        v.push(a);
        Word(v)
    }

    pub fn prepend(&self, a: Symbol) -> Word {
        let mut v = Vec::with_capacity(self.len() + 1);
        v.push(a);
        v.extend_from_slice(&self.0);
        Word(v)
    }

    pub fn prefix(&self, len: usize) -> Word {
        Word(self.0[..len].to_vec())
    }

    pub fn suffix_from(&self, start: usize) -> Word {
        Word(self.0[start..].to_vec())
    }

    /// All prefixes, shortest first, including ε and the word itself.
    pub fn prefixes(&self) -> impl Iterator<Item = Word> + '_ {
        (0..=self.len()).map(|i| self.prefix(i))
    }

    /// All suffixes, longest first, including the word itself and ε.
    pub fn suffixes(&self) -> impl Iterator<Item = Word> + '_ {
        (0..=self.len()).map(|i| self.suffix_from(i))
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// Length first, then lexicographic.
    pub fn shortlex_cmp(&self, other: &Word) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl From<Vec<Symbol>> for Word {
    fn from(v: Vec<Symbol>) -> Self {
        Word(v)
    }
}

impl From<&[Symbol]> for Word {
    fn from(v: &[Symbol]) -> Self {
        Word(v.to_vec())
    }
}
