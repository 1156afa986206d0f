//! Base-ℓ expansions of integers.
//!
//! Non-negative integers use the usual expansion without leading zeros; zero
//! is the empty string. A negative integer has a left-infinite expansion
//! `…(ℓ-1)(ℓ-1) n_j … n_0`; its canonical form keeps exactly one `ℓ-1`
//! marker in front of the block `n_j … n_0`, where `n_j ≠ ℓ-1` (the block
//! may be empty, as for -1).

use std::fmt;

use crate::error::{Error, Result};

/// A digit word, most significant digit first. For negative strings the
/// first digit is the `ℓ-1` marker.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DigitString {
    base: usize,
    negative: bool,
    digits: Vec<usize>,
}

impl DigitString {
    /// Builds a digit string; padded (non-canonical) forms are allowed.
    pub fn new(base: usize, negative: bool, digits: Vec<usize>) -> Result<Self> {
        check_base(base)?;
        if let Some(&d) = digits.iter().find(|&&d| d >= base) {
            return Err(Error::NonCanonical(format!("digit {d} not below base {base}")));
        }
        if negative && digits.first() != Some(&(base - 1)) {
            return Err(Error::NonCanonical(
                "negative string must start with the ℓ-1 marker".into(),
            ));
        }
        Ok(DigitString {
            base,
            negative,
            digits,
        })
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn is_negative(&self) -> bool {
        self.negative
    }

    /// The full word, most significant first (marker included).
    pub fn digits(&self) -> &[usize] {
        &self.digits
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    /// Digits after the marker for negative strings; all digits otherwise.
    pub fn block(&self) -> &[usize] {
        if self.negative {
            &self.digits[1..]
        } else {
            &self.digits
        }
    }

    pub fn is_canonical(&self) -> bool {
        if self.negative {
            self.digits.get(1).is_none_or(|&d| d != self.base - 1)
        } else {
            self.digits.first().is_none_or(|&d| d != 0)
        }
    }

    /// Left-pads with 0 (non-negative) or ℓ-1 (negative) to total length `k`.
    pub fn pad(&self, k: usize) -> DigitString {
        let fill = if self.negative { self.base - 1 } else { 0 };
        let extra = k.saturating_sub(self.digits.len());
        let mut digits = vec![fill; extra];
        digits.extend_from_slice(&self.digits);
        DigitString {
            digits,
            ..self.clone()
        }
    }

    /// The integer this string denotes. A negative word w of length L
    /// denotes value(w) - ℓ^L, so padded forms give the same value.
    pub fn to_int(&self) -> Result<i64> {
        let mut value: i128 = 0;
        let mut scale: i128 = 1;
        for &d in self.digits.iter().rev() {
            value = value
                .checked_add(d as i128 * scale)
                .ok_or_else(|| overflow(self))?;
            scale = scale
                .checked_mul(self.base as i128)
                .ok_or_else(|| overflow(self))?;
        }
        if self.negative {
            value -= scale;
        }
        i64::try_from(value).map_err(|_| overflow(self))
    }
}

fn overflow(ds: &DigitString) -> Error {
    Error::Overflow {
        requested: ds.len() as u128,
        budget: 63,
    }
}

fn check_base(base: usize) -> Result<()> {
    if base < 2 {
        return Err(Error::BadBase(base as u64));
    }
    Ok(())
}

/// Canonical base-`base` expansion of `n`.
pub fn to_digits(n: i64, base: usize) -> Result<DigitString> {
    check_base(base)?;
    let negative = n < 0;
    let stop = if negative { -1 } else { 0 };
    let b = base as i64;
    let mut lsb_first = Vec::new();
    let mut m = n;
    while m != stop {
        lsb_first.push(m.rem_euclid(b) as usize);
        m = m.div_euclid(b);
    }
    if negative {
        lsb_first.push(base - 1);
    }
    lsb_first.reverse();
    Ok(DigitString {
        base,
        negative,
        digits: lsb_first,
    })
}

pub fn to_int(ds: &DigitString) -> Result<i64> {
    ds.to_int()
}

/// |n|_ℓ: length of the canonical expansion for n ≥ 0, length of the block
/// after the marker for n < 0 (so |-1|_ℓ = 0).
pub fn digit_length(n: i64, base: usize) -> usize {
    let b = base as i64;
    let stop = if n < 0 { -1 } else { 0 };
    let mut m = n;
    let mut len = 0;
    while m != stop {
        m = m.div_euclid(b);
        len += 1;
    }
    len
}

/// The `k` least significant ℓ-adic digits of `n`, least significant first.
/// Negative numbers continue with ℓ-1 digits.
pub fn low_digits(n: i64, base: usize, k: usize) -> Vec<usize> {
    let b = base as i64;
    let mut m = n;
    (0..k)
        .map(|_| {
            let d = m.rem_euclid(b) as usize;
            m = m.div_euclid(b);
            d
        })
        .collect()
}

impl fmt::Display for DigitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |ds: &[usize]| -> String {
            if self.base <= 10 {
                ds.iter().map(|d| d.to_string()).collect()
            } else {
                ds.iter()
                    .map(|d| d.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            }
        };
        if self.negative {
            write!(f, "~{}·{}", self.base - 1, join(self.block()))
        } else if self.digits.is_empty() {
            write!(f, "ε")
        } else {
            write!(f, "{}", join(&self.digits))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        let three = to_digits(3, 2).unwrap();
        assert_eq!(three.digits(), &[1, 1]);
        assert!(!three.is_negative());
        assert_eq!(three.to_int().unwrap(), 3);

        let minus_one = to_digits(-1, 4).unwrap();
        assert_eq!(minus_one.digits(), &[3]);
        assert!(minus_one.is_negative());
        assert!(minus_one.block().is_empty());
        assert_eq!(minus_one.to_int().unwrap(), -1);

        // -5 + 8 = 3 = 011₂, so -5 = …11·011.
        let minus_five = to_digits(-5, 2).unwrap();
        assert_eq!(minus_five.digits(), &[1, 0, 1, 1]);
        assert_eq!(minus_five.block(), &[0, 1, 1]);
        assert_eq!(minus_five.to_int().unwrap(), -5);
        assert_eq!(minus_five.to_string(), "~1·011");

        assert!(to_digits(0, 7).unwrap().is_empty());
        assert!(matches!(to_digits(5, 1), Err(Error::BadBase(1))));
    }

    #[test]
    fn padding() {
        assert_eq!(to_digits(3, 2).unwrap().pad(4).digits(), &[0, 0, 1, 1]);
        assert_eq!(to_digits(-1, 4).unwrap().pad(3).digits(), &[3, 3, 3]);
        assert_eq!(to_digits(0, 2).unwrap().pad(2).digits(), &[0, 0]);
        let padded = to_digits(-5, 2).unwrap().pad(7);
        assert!(!padded.is_canonical());
        assert_eq!(padded.to_int().unwrap(), -5);
    }

    #[test]
    fn malformed_strings() {
        assert!(matches!(
            DigitString::new(2, true, vec![0, 1]),
            Err(Error::NonCanonical(_))
        ));
        assert!(matches!(
            DigitString::new(3, false, vec![3]),
            Err(Error::NonCanonical(_))
        ));
        let ok = DigitString::new(4, true, vec![3, 2]).unwrap();
        assert_eq!(ok.to_int().unwrap(), 2 - 4);
    }

    #[test]
    fn digit_lengths() {
        assert_eq!(digit_length(0, 4), 0);
        assert_eq!(digit_length(7, 4), 2);
        assert_eq!(digit_length(16, 4), 3);
        assert_eq!(digit_length(-1, 4), 0);
        assert_eq!(digit_length(-5, 2), 3);
        assert_eq!(low_digits(-1, 4, 3), vec![3, 3, 3]);
        assert_eq!(low_digits(7, 4, 3), vec![3, 1, 0]);
    }

    #[test]
    fn round_trip_dense_range() {
        for base in [2, 3, 4, 9] {
            for n in -100_000..=100_000 {
                let ds = to_digits(n, base).unwrap();
                assert!(ds.is_canonical(), "{n} base {base}");
                assert_eq!(ds.to_int().unwrap(), n);
            }
        }
    }

    #[test]
    fn nonneg_length_is_monotone() {
        let mut prev = 0;
        for n in 0..5000 {
            let len = to_digits(n, 3).unwrap().len();
            assert!(len >= prev);
            assert_eq!(len, digit_length(n, 3));
            prev = len;
        }
    }

    proptest! {
        #[test]
        fn successor_compatible(n in -1_000_000_000i64..1_000_000_000, base in 2usize..17) {
            let a = to_digits(n, base).unwrap().to_int().unwrap();
            let b = to_digits(n + 1, base).unwrap().to_int().unwrap();
            prop_assert_eq!(a + 1, b);
        }

        #[test]
        fn padding_preserves_value(n in -1_000_000i64..1_000_000, base in 2usize..11, extra in 0usize..6) {
            let ds = to_digits(n, base).unwrap();
            prop_assert_eq!(ds.pad(ds.len() + extra).to_int().unwrap(), n);
        }
    }
}
