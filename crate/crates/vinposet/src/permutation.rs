//! Permutations in one-line notation and the elementary constructions the
//! pattern posets are built from: standardization, entry removal, direct sums.

use std::fmt;
use std::str::FromStr;

use crate::Error;

/// Default length cap enforced by the constructors. Everything here is
/// factorial in the permutation length, so large values are never useful.
pub const MAX_LEN: usize = 20;

/// A permutation of `{1, 2, ..., n}` in one-line notation, `n >= 1`.
///
/// Values are immutable after construction and compare structurally, so
/// permutations can be used as map keys and shared freely between threads.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[allow(clippy::len_without_is_empty)] // length 1 is the minimum
pub struct Permutation {
    values: Vec<u8>,
}

impl Permutation {
    /// Builds a permutation from one-line notation, e.g. `[5, 3, 1, 4, 2]`.
    pub fn new(values: impl Into<Vec<u8>>) -> Result<Self, Error> {
        Self::with_max_len(values, MAX_LEN)
    }

    /// Like [`Permutation::new`] with an explicit length cap (at most 255).
    pub fn with_max_len(values: impl Into<Vec<u8>>, max_len: usize) -> Result<Self, Error> {
        let values = values.into();
        let n = values.len();
        if n == 0 {
            return Err(Error::EmptySequence);
        }
        if n > max_len.min(u8::MAX as usize) {
            return Err(Error::LengthLimitExceeded { len: n, max: max_len });
        }
        let mut seen = vec![false; n];
        for &v in &values {
            let ok = (1..=n as u8).contains(&v) && !seen[v as usize - 1];
            if !ok {
                return Err(Error::NotAPermutation(n));
            }
            seen[v as usize - 1] = true;
        }
        Ok(Permutation { values })
    }

    /// The identity permutation `12...n`.
    pub fn identity(n: usize) -> Result<Self, Error> {
        Self::new((1..=n as u8).collect::<Vec<_>>())
    }

    /// The decreasing permutation `n(n-1)...1`.
    pub fn decreasing(n: usize) -> Result<Self, Error> {
        Self::new((1..=n as u8).rev().collect::<Vec<_>>())
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    /// One-line values, 0-indexed slice.
    pub fn values(&self) -> &[u8] {
        &self.values
    }

    /// The entry at 1-indexed position `pos`.
    pub fn entry(&self, pos: usize) -> Result<u8, Error> {
        if pos == 0 || pos > self.len() {
            return Err(Error::PositionOutOfRange { pos, len: self.len() });
        }
        Ok(self.values[pos - 1])
    }

    /// Deletes the entry at 1-indexed `pos` and standardizes the remainder.
    pub fn remove_entry(&self, pos: usize) -> Result<Self, Error> {
        if self.len() == 1 {
            return Err(Error::RemoveFromSingleton);
        }
        if pos == 0 || pos > self.len() {
            return Err(Error::PositionOutOfRange { pos, len: self.len() });
        }
        let removed = self.values[pos - 1];
        let values = self
            .values
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != pos - 1)
            .map(|(_, &v)| if v > removed { v - 1 } else { v })
            .collect::<Vec<_>>();
        Ok(Permutation { values })
    }

    /// True iff the permutation is `12...n` or `n(n-1)...1`.
    pub fn is_monotone(&self) -> bool {
        self.values.windows(2).all(|w| w[0] < w[1]) || self.values.windows(2).all(|w| w[0] > w[1])
    }

    /// `self` followed by `other` with all of `other`'s values shifted above
    /// `self`'s. Fails only when the result would exceed [`MAX_LEN`].
    pub fn direct_sum(&self, other: &Self) -> Result<Self, Error> {
        let n = self.len();
        let mut values = self.values.clone();
        values.extend(other.values.iter().map(|&v| v + n as u8));
        Permutation::new(values)
    }

    /// All permutations of length `n` in lexicographic one-line order.
    pub fn all_of_length(n: usize) -> Vec<Self> {
        assert!((1..=MAX_LEN).contains(&n), "length out of range");
        let mut current: Vec<u8> = (1..=n as u8).collect();
        let mut out = Vec::new();
        loop {
            out.push(Permutation { values: current.clone() });
            if !next_lexicographic(&mut current) {
                return out;
            }
        }
    }
}

/// Replaces a sequence of distinct values by their ranks, yielding the unique
/// order-isomorphic permutation.
pub fn standardize(seq: &[i64]) -> Result<Permutation, Error> {
    if seq.is_empty() {
        return Err(Error::EmptySequence);
    }
    if seq.len() > MAX_LEN {
        return Err(Error::LengthLimitExceeded { len: seq.len(), max: MAX_LEN });
    }
    let mut sorted: Vec<i64> = seq.to_vec();
    sorted.sort_unstable();
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::DuplicateEntry(w[0]));
    }
    let values = seq
        .iter()
        .map(|v| (sorted.binary_search(v).unwrap() + 1) as u8)
        .collect();
    Ok(Permutation { values })
}

/// True iff the two sequences standardize to the same permutation.
pub fn order_isomorphic(s1: &[i64], s2: &[i64]) -> Result<bool, Error> {
    Ok(standardize(s1)? == standardize(s2)?)
}

// Classic in-place successor; returns false after the last (descending) word.
fn next_lexicographic(values: &mut [u8]) -> bool {
    let n = values.len();
    let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| values[i] < values[i + 1]) else {
        return false;
    };
    let j = (i + 1..n).rev().find(|&j| values[j] > values[i]).unwrap();
    values.swap(i, j);
    values[i + 1..].reverse();
    true
}

impl fmt::Display for Permutation {
    /// Compact digit form (`53142`) when `n <= 9`, comma form otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len() <= 9 {
            for v in &self.values {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Accepts both text forms: compact digits (`53142`, only for `n <= 9`)
    /// and comma-separated (`5,3,1,4,2`).
    fn from_str(s: &str) -> Result<Self, Error> {
        let parse_err = |reason: &str| Error::ParsePermutation {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let values: Vec<u8> = if s.contains(',') {
            s.split(',')
                .map(|part| part.trim().parse::<u8>())
                .collect::<Result<_, _>>()
                .map_err(|_| parse_err("each comma-separated entry must be an integer in 1..=255"))?
        } else {
            if s.is_empty() {
                return Err(parse_err("empty input"));
            }
            if s.chars().count() > 9 {
                return Err(parse_err("compact digit form only covers lengths up to 9; use commas"));
            }
            s.chars()
                .map(|c| c.to_digit(10).map(|d| d as u8).ok_or(()))
                .collect::<Result<_, _>>()
                .map_err(|_| parse_err("compact form must be digits only"))?
        };
        Permutation::new(values).map_err(|e| parse_err(&e.to_string()))
    }
}
