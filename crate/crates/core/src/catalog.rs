//! Worked substitutions used throughout the docs and tests.

use crate::substitution::Substitution;

/// Period-doubling a→ab, b→aa with seed a·a (a seed of θ²).
pub fn period_doubling() -> Substitution {
    Substitution::from_json(
        r#"{"alphabet":["a","b"],"length":2,"rules":{"a":"ab","b":"aa"},"seed":["a","a"]}"#,
    )
    .expect("valid")
}

/// a→acb, b→baa, c→bba with seed b·a (a seed of θ²).
pub fn bigdiag() -> Substitution {
    Substitution::from_json(
        r#"{"alphabet":["a","b","c"],"length":3,"rules":{"a":"acb","b":"baa","c":"bba"},"seed":["b","a"]}"#,
    )
    .expect("valid")
}

/// Thue–Morse a→ab, b→ba, unseeded. Bijective, column number 2.
pub fn thue_morse() -> Substitution {
    Substitution::from_json(r#"{"alphabet":["a","b"],"length":2,"rules":{"a":"ab","b":"ba"}}"#)
        .expect("valid")
}

/// Length-3 substitution whose letters alternate between {a,c} and {b,d},
/// so the first letter only returns at even positions: height 2.
pub fn height_two() -> Substitution {
    Substitution::from_json(
        r#"{"alphabet":["a","b","c","d"],"length":3,"rules":{"a":"abc","b":"bcd","c":"cda","d":"dab"},"seed":["a","a"]}"#,
    )
    .expect("valid")
}
