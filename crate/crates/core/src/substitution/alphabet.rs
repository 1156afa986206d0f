use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// Letter ordinal within an [`Alphabet`].
pub type Letter = u8;

/// Ordered finite list of distinct symbols. Symbols may be multi-character
/// strings; everything downstream works with ordinals.
#[derive(Clone, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<String>,
    index: HashMap<String, Letter>,
}

impl Alphabet {
    pub fn new<I, S>(symbols: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if symbols.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        if symbols.len() > 256 {
            return Err(Error::AlphabetTooLarge(symbols.len()));
        }
        let mut index = HashMap::with_capacity(symbols.len());
        for (i, s) in symbols.iter().enumerate() {
            if s.is_empty() {
                return Err(Error::UnknownLetter(String::new()));
            }
            if index.insert(s.clone(), i as Letter).is_some() {
                return Err(Error::DuplicateLetter(s.clone()));
            }
        }
        Ok(Alphabet { symbols, index })
    }

    /// Alphabet of single characters, e.g. `Alphabet::from_chars("abc")`.
    pub fn from_chars(chars: &str) -> Result<Self> {
        Alphabet::new(chars.chars().map(String::from))
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbol(&self, letter: Letter) -> &str {
        &self.symbols[letter as usize]
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn letter(&self, symbol: &str) -> Result<Letter> {
        self.index
            .get(symbol)
            .copied()
            .ok_or_else(|| Error::UnknownLetter(symbol.to_string()))
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        (0..self.symbols.len()).map(|i| i as Letter)
    }

    pub fn single_chars(&self) -> bool {
        self.symbols.iter().all(|s| s.chars().count() == 1)
    }

    /// Splits a rule string into letters by longest-prefix matching.
    pub fn tokenize(&self, word: &str) -> Result<Vec<Letter>> {
        let mut out = Vec::new();
        let mut rest = word;
        while !rest.is_empty() {
            let best = self
                .symbols
                .iter()
                .enumerate()
                .filter(|(_, s)| rest.starts_with(s.as_str()))
                .max_by_key(|(_, s)| s.len());
            match best {
                Some((i, s)) => {
                    out.push(i as Letter);
                    rest = &rest[s.len()..];
                }
                None => {
                    let c = rest.chars().next().unwrap_or_default();
                    return Err(Error::UnknownLetter(c.to_string()));
                }
            }
        }
        Ok(out)
    }

    /// Renders a word, concatenating single-character symbols and
    /// space-separating otherwise.
    pub fn render(&self, word: &[Letter]) -> String {
        let sep = if self.single_chars() { "" } else { " " };
        word.iter()
            .map(|&l| self.symbol(l))
            .collect::<Vec<_>>()
            .join(sep)
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.symbols).finish()
    }
}
