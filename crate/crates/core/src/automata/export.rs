//! DOT, JSON and plain-table renderings of a [`Dfao`].
//!
//! JSON layout:
//!
//! ```json
//! {"states":["a","b"],"ell":2,"delta":{"a":{"0":"a","1":"b"},"b":{"0":"a","1":"a"}},
//!  "initial":{"nonneg":"a","neg":"a"},
//!  "outputs":{"nonneg":{"a":"a","b":"b"},"neg":{"a":"a","b":"b"}},
//!  "reading":"direct"}
//! ```

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{Dfao, DfaoParts, Reading, Sign, State};
use crate::error::{Error, Result};
use crate::substitution::Alphabet;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Initial {
    pub nonneg: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub neg: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Outputs {
    pub nonneg: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub neg: Option<BTreeMap<String, String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DfaoJson {
    pub states: Vec<String>,
    pub ell: usize,
    pub delta: BTreeMap<String, BTreeMap<String, String>>,
    pub initial: Initial,
    pub outputs: Outputs,
    pub reading: Reading,
    /// Output alphabet in order; when absent, the output letters in order of
    /// first appearance.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alphabet: Option<Vec<String>>,
}

impl Dfao {
    pub fn to_json_value(&self) -> DfaoJson {
        let name = |s: State| self.names[s].clone();
        let outs = |o: &[u8]| -> BTreeMap<String, String> {
            (0..self.len())
                .map(|s| (name(s), self.outputs.symbol(o[s]).to_string()))
                .collect()
        };
        DfaoJson {
            states: self.bfs_order().into_iter().map(name).collect(),
            ell: self.ell,
            delta: (0..self.len())
                .map(|s| {
                    let row = (0..self.ell)
                        .map(|d| (d.to_string(), name(self.delta[s][d])))
                        .collect();
                    (name(s), row)
                })
                .collect(),
            initial: Initial {
                nonneg: name(self.initial_nonneg),
                neg: self.initial_neg.map(name),
            },
            outputs: Outputs {
                nonneg: outs(&self.output_nonneg),
                neg: self.output_neg.as_deref().map(outs),
            },
            reading: self.reading,
            alphabet: Some(self.outputs.symbols().to_vec()),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("machine serializes")
    }

    pub fn from_json(text: &str) -> Result<Dfao> {
        Dfao::from_json_value(&serde_json::from_str(text)?)
    }

    pub fn from_json_value(j: &DfaoJson) -> Result<Dfao> {
        let invalid = |msg: String| Error::InvalidAutomaton(msg);
        let index: HashMap<&str, State> = j
            .states
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_str(), i))
            .collect();
        let state = |s: &str| -> Result<State> {
            index
                .get(s)
                .copied()
                .ok_or_else(|| invalid(format!("unknown state {s:?}")))
        };
        let symbols = match &j.alphabet {
            Some(a) => a.clone(),
            None => {
                let mut seen: Vec<String> = Vec::new();
                for out in std::iter::once(&j.outputs.nonneg).chain(j.outputs.neg.as_ref()) {
                    for s in &j.states {
                        if let Some(b) = out.get(s) {
                            if !seen.contains(b) {
                                seen.push(b.clone());
                            }
                        }
                    }
                }
                seen
            }
        };
        let outputs = Alphabet::new(symbols)?;
        let mut delta = Vec::with_capacity(j.states.len());
        for s in &j.states {
            let row = j
                .delta
                .get(s)
                .ok_or_else(|| invalid(format!("no transitions for {s:?}")))?;
            let mut targets = Vec::with_capacity(j.ell);
            for d in 0..j.ell {
                let t = row
                    .get(&d.to_string())
                    .ok_or_else(|| invalid(format!("no transition from {s:?} on {d}")))?;
                targets.push(state(t)?);
            }
            if row.len() != j.ell {
                return Err(invalid(format!("extra transitions from {s:?}")));
            }
            delta.push(targets);
        }
        let output_map = |m: &BTreeMap<String, String>| -> Result<Vec<u8>> {
            j.states
                .iter()
                .map(|s| {
                    let b = m
                        .get(s)
                        .ok_or_else(|| invalid(format!("no output for {s:?}")))?;
                    outputs.letter(b)
                })
                .collect()
        };
        Dfao::new(DfaoParts {
            ell: j.ell,
            delta,
            initial_nonneg: state(&j.initial.nonneg)?,
            initial_neg: j.initial.neg.as_deref().map(state).transpose()?,
            output_nonneg: output_map(&j.outputs.nonneg)?,
            output_neg: j.outputs.neg.as_ref().map(output_map).transpose()?,
            reading: j.reading,
            names: j.states.clone(),
            outputs: outputs.clone(),
        })
    }

    /// Graphviz rendering. States appear in BFS order; parallel edges are
    /// merged with comma-joined digit labels; initial states get arrows
    /// labelled ℕ₀ and −ℕ.
    pub fn to_dot(&self) -> String {
        let order = self.bfs_order();
        let mut rank = vec![usize::MAX; self.len()];
        for (i, &s) in order.iter().enumerate() {
            rank[s] = i;
        }
        let mut all: Vec<State> = order.clone();
        all.extend((0..self.len()).filter(|&s| rank[s] == usize::MAX));
        let id = |s: State| format!("q{s}");

        let mut out = String::new();
        let _ = writeln!(out, "digraph dfao {{");
        let _ = writeln!(out, "  rankdir=LR;");
        let _ = writeln!(out, "  node [shape=circle];");
        for &s in &all {
            let _ = writeln!(
                out,
                "  {} [label=\"{}\", xlabel=\"{}\"];",
                id(s),
                escape(&self.names[s]),
                escape(&self.output_label(s))
            );
        }
        let _ = writeln!(out, "  init_nonneg [shape=point];");
        let _ = writeln!(out, "  init_nonneg -> {} [label=\"ℕ₀\"];", id(self.initial_nonneg));
        if let Some(s) = self.initial_neg {
            let _ = writeln!(out, "  init_neg [shape=point];");
            let _ = writeln!(out, "  init_neg -> {} [label=\"−ℕ\"];", id(s));
        }
        for &s in &all {
            for (t, digits) in self.grouped_edges(s) {
                let _ = writeln!(out, "  {} -> {} [label=\"{}\"];", id(s), id(t), join(&digits));
            }
        }
        out.push_str("}\n");
        out
    }

    /// One row per state: marker, name, target per digit, outputs.
    pub fn to_table(&self) -> String {
        let mut all = self.bfs_order();
        let rest: Vec<State> = (0..self.len()).filter(|s| !all.contains(s)).collect();
        all.extend(rest);
        let mut rows: Vec<Vec<String>> = Vec::new();
        let mut header = vec![String::new(), "state".to_string()];
        header.extend((0..self.ell).map(|d| d.to_string()));
        header.push("out+".into());
        if self.is_two_sided() {
            header.push("out-".into());
        }
        rows.push(header);
        for &s in &all {
            let mut marker = String::new();
            if s == self.initial_nonneg {
                marker.push('+');
            }
            if self.initial_neg == Some(s) {
                marker.push('-');
            }
            let mut row = vec![marker, self.names[s].clone()];
            row.extend(self.delta[s].iter().map(|&t| self.names[t].clone()));
            row.push(self.outputs.symbol(self.output_nonneg[s]).to_string());
            if let Some(o) = &self.output_neg {
                row.push(self.outputs.symbol(o[s]).to_string());
            }
            rows.push(row);
        }
        let widths: Vec<usize> = (0..rows[0].len())
            .map(|c| rows.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
            .collect();
        let mut out = format!("reading: {}, ell = {}, states = {}\n", self.reading, self.ell, self.len());
        for row in rows {
            let cells: Vec<String> = row
                .iter()
                .zip(&widths)
                .map(|(cell, &w)| format!("{cell}{}", " ".repeat(w - cell.chars().count())))
                .collect();
            out.push_str(cells.join("  ").trim_end());
            out.push('\n');
        }
        out
    }

    fn output_label(&self, s: State) -> String {
        let pos = self.outputs.symbol(self.output_nonneg[s]);
        match self.output(Sign::Neg, s) {
            Some(neg) => format!("{pos}|{}", self.outputs.symbol(neg)),
            None => pos.to_string(),
        }
    }

    /// Outgoing edges of `s` grouped by target, in order of smallest digit.
    pub fn grouped_edges(&self, s: State) -> Vec<(State, Vec<usize>)> {
        let mut groups: Vec<(State, Vec<usize>)> = Vec::new();
        for (d, &t) in self.delta[s].iter().enumerate() {
            match groups.iter_mut().find(|(u, _)| *u == t) {
                Some((_, ds)) => ds.push(d),
                None => groups.push((t, vec![d])),
            }
        }
        groups
    }
}

fn join(digits: &[usize]) -> String {
    digits
        .iter()
        .map(|d| d.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}
