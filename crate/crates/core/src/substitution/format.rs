//! JSON input format:
//!
//! ```json
//! {"alphabet":["a","b"],"length":2,"rules":{"a":"ab","b":"aa"},"seed":["a","a"]}
//! ```
//!
//! Rule images are either strings (split by longest matching symbol) or
//! arrays of symbols. `seed` is optional and lists `[left, right]`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{Alphabet, Seed, Substitution};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RuleImage {
    Text(String),
    Letters(Vec<String>),
}

/// Substitution as written by the user, before interning and validation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawSubstitution {
    pub alphabet: Vec<String>,
    pub length: usize,
    pub rules: BTreeMap<String, RuleImage>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<[String; 2]>,
}

impl RawSubstitution {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("raw substitution serializes")
    }
}

/// Interns and validates a raw substitution. The returned error names the
/// first violated invariant.
pub fn validate(raw: &RawSubstitution) -> Result<Substitution> {
    let alphabet = Alphabet::new(raw.alphabet.iter().cloned())?;
    for key in raw.rules.keys() {
        alphabet.letter(key)?;
    }
    let mut rules = Vec::with_capacity(alphabet.len());
    for symbol in alphabet.symbols() {
        let image = raw
            .rules
            .get(symbol)
            .ok_or_else(|| Error::MissingRule(symbol.clone()))?;
        let word = match image {
            RuleImage::Text(s) => alphabet.tokenize(s)?,
            RuleImage::Letters(v) => v
                .iter()
                .map(|s| alphabet.letter(s))
                .collect::<Result<Vec<_>>>()?,
        };
        rules.push(word);
    }
    let seed = match &raw.seed {
        Some([l, r]) => Some(Seed {
            left: alphabet.letter(l)?,
            right: alphabet.letter(r)?,
        }),
        None => None,
    };
    Substitution::new(alphabet, raw.length, rules, seed)
}

impl Substitution {
    pub fn from_json(text: &str) -> Result<Self> {
        validate(&RawSubstitution::from_json(text)?)
    }

    pub fn to_raw(&self) -> RawSubstitution {
        let alphabet = self.alphabet();
        let single = alphabet.single_chars();
        let rules = alphabet
            .letters()
            .map(|a| {
                let word = self.rule(a);
                let image = if single {
                    RuleImage::Text(alphabet.render(word))
                } else {
                    RuleImage::Letters(
                        word.iter()
                            .map(|&b| alphabet.symbol(b).to_string())
                            .collect(),
                    )
                };
                (alphabet.symbol(a).to_string(), image)
            })
            .collect();
        RawSubstitution {
            alphabet: alphabet.symbols().to_vec(),
            length: self.length(),
            rules,
            seed: self.seed().map(|s| {
                [
                    alphabet.symbol(s.left).to_string(),
                    alphabet.symbol(s.right).to_string(),
                ]
            }),
        }
    }

    pub fn to_json(&self) -> String {
        self.to_raw().to_json()
    }
}
