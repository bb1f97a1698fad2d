//! Permutations in one-line notation, reduced forms, reversal, and the
//! factorization into indecomposable components.
//!
//! Values are 1-based throughout: a permutation of length `n` is a
//! rearrangement of `1..=n`.

use std::fmt;
use std::str::FromStr;

use crate::error::PermError;

/// A bijection on `{1..n}` written in one-line notation, `n >= 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    values: Vec<u32>,
}

/// A sequence of distinct positive integers, such as a factor cut out of a
/// permutation. Words are compared with permutations through [`reduce`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    values: Vec<u32>,
}

impl Permutation {
    /// Checks that `values` is a rearrangement of `1..=n`.
    pub fn new(values: Vec<u32>) -> Result<Self, PermError> {
        let n = values.len();
        if n == 0 {
            return Err(PermError::Empty);
        }
        let mut seen = vec![false; n + 1];
        for &v in &values {
            if v == 0 || v as usize > n {
                return Err(PermError::OutOfRange { value: v, n });
            }
            if seen[v as usize] {
                return Err(PermError::Duplicate(v));
            }
            seen[v as usize] = true;
        }
        Ok(Permutation { values })
    }

    pub(crate) fn from_vec_unchecked(values: Vec<u32>) -> Self {
        debug_assert!(Permutation::new(values.clone()).is_ok());
        Permutation { values }
    }

    /// The identity permutation `1 2 .. n`.
    pub fn identity(n: usize) -> Self {
        assert!(n >= 1, "permutations have length at least 1");
        Permutation {
            values: (1..=n as u32).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    /// Always false; kept for clippy's `len_without_is_empty`.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    /// Value at 1-based position `i`.
    pub fn at(&self, i: usize) -> u32 {
        self.values[i - 1]
    }

    pub fn as_word(&self) -> Word {
        Word {
            values: self.values.clone(),
        }
    }

    pub(crate) fn values_mut(&mut self) -> &mut [u32] {
        &mut self.values
    }
}

impl Word {
    /// Checks that all values are distinct and positive.
    pub fn new(values: Vec<u32>) -> Result<Self, PermError> {
        if values.is_empty() {
            return Err(PermError::Empty);
        }
        let mut sorted = values.clone();
        sorted.sort_unstable();
        if sorted[0] == 0 {
            return Err(PermError::OutOfRange {
                value: 0,
                n: values.len(),
            });
        }
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(PermError::Duplicate(w[0]));
        }
        Ok(Word { values })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }
}

impl From<Permutation> for Word {
    fn from(p: Permutation) -> Self {
        Word { values: p.values }
    }
}

fn write_values(f: &mut fmt::Formatter<'_>, values: &[u32]) -> fmt::Result {
    for (i, v) in values.iter().enumerate() {
        if i > 0 {
            f.write_str(" ")?;
        }
        write!(f, "{v}")?;
    }
    Ok(())
}

/// Canonical serialization: decimal values separated by single spaces.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_values(f, &self.values)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_values(f, &self.values)
    }
}

impl Word {
    /// Digits run together when every value is a single digit, otherwise
    /// space separated. Used for the parenthesized factor listing.
    pub fn compact(&self) -> String {
        if self.values.iter().all(|&v| v <= 9) {
            self.values.iter().map(|v| v.to_string()).collect()
        } else {
            self.to_string()
        }
    }
}

impl FromStr for Permutation {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_permutation(s)
    }
}

/// Parses whitespace- or comma-separated decimal values. A single token made
/// only of digits is read one digit per value when it has at most 9 digits,
/// so `"213"` and `"2 1 3"` are the same permutation.
pub fn parse_permutation(text: &str) -> Result<Permutation, PermError> {
    let tokens: Vec<&str> = text
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .collect();
    let values = match tokens.as_slice() {
        [] => return Err(PermError::Empty),
        [single] if single.len() > 1 && single.bytes().all(|b| b.is_ascii_digit()) => {
            if single.len() > 9 {
                return Err(PermError::AmbiguousDigits(single.len()));
            }
            single.bytes().map(|b| u32::from(b - b'0')).collect()
        }
        _ => tokens
            .iter()
            .map(|t| t.parse::<u32>().map_err(|_| PermError::BadToken(t.to_string())))
            .collect::<Result<Vec<_>, _>>()?,
    };
    Permutation::new(values)
}

/// Replaces the i-th smallest value of `w` by `i`.
pub fn reduce(w: &Word) -> Permutation {
    let mut order: Vec<usize> = (0..w.len()).collect();
    order.sort_unstable_by_key(|&i| w.values[i]);
    let mut values = vec![0u32; w.len()];
    for (rank, &i) in order.iter().enumerate() {
        values[i] = rank as u32 + 1;
    }
    Permutation::from_vec_unchecked(values)
}

/// `a_n a_{n-1} .. a_1`.
pub fn reverse(p: &Permutation) -> Permutation {
    let mut values = p.values.clone();
    values.reverse();
    Permutation { values }
}

/// True iff no proper prefix of the reduced word is a permutation of
/// `{1..k}`.
pub fn is_indecomposable(w: &Word) -> bool {
    let r = reduce(w);
    let n = r.len();
    let mut max = 0;
    for (i, &v) in r.values[..n - 1].iter().enumerate() {
        max = max.max(v as usize);
        if max == i + 1 {
            return false;
        }
    }
    true
}

/// Greedy factorization into indecomposable components.
///
/// A prefix of a permutation is closed (a permutation of `{1..k}`) exactly
/// when its running maximum equals its length, so one scan finds every cut.
pub fn comps(p: &Permutation) -> Vec<Word> {
    let mut factors = Vec::new();
    let mut start = 0;
    let mut max = 0;
    for (i, &v) in p.values.iter().enumerate() {
        max = max.max(v as usize);
        if max == i + 1 {
            factors.push(Word {
                values: p.values[start..=i].to_vec(),
            });
            start = i + 1;
        }
    }
    factors
}

/// The maximum-length indecomposable suffix, found from the right: the
/// shortest suffix holding the top values `{n-k+1..n}`.
pub fn last_comp(p: &Permutation) -> Word {
    let n = p.len();
    let mut min = usize::MAX;
    for k in 1..=n {
        min = min.min(p.values[n - k] as usize);
        if min == n - k + 1 {
            return Word {
                values: p.values[n - k..].to_vec(),
            };
        }
    }
    unreachable!("the whole permutation is always a closed suffix")
}
