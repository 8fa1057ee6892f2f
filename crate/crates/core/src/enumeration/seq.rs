//! Integer sequences of the class `S(n, k)`.
//!
//! A sequence `x_0 x_1 ... x_{n-1}` belongs to `S(n, k)` when
//! - `x_0 = 0`,
//! - `x_i <= max(x_0..x_{i-1}) + 1`,
//! - `x_i < max(x_0..x_{i-1})` implies `x_i < x_{i-1}`,
//!
//! and it has exactly `n - k` left-to-right maxima, where `x_0` counts as one.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::diagram::ParseError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeqError {
    #[error("empty sequence")]
    Empty,
    #[error("x_0 must be 0, found {0}")]
    FirstNotZero(usize),
    #[error("x_{index} = {value} exceeds the prefix maximum {max} by more than one")]
    AboveBound { index: usize, value: usize, max: usize },
    #[error("x_{index} = {value} is below the prefix maximum {max} but not below the previous value {prev}")]
    NotDescending { index: usize, value: usize, max: usize, prev: usize },
}

/// Checks the three membership conditions, reporting the first violated one.
pub fn check_s(x: &[usize]) -> Result<(), SeqError> {
    let (&first, rest) = x.split_first().ok_or(SeqError::Empty)?;
    if first != 0 {
        return Err(SeqError::FirstNotZero(first));
    }
    let mut max = 0;
    let mut prev = 0;
    for (offset, &value) in rest.iter().enumerate() {
        let index = offset + 1;
        if value > max + 1 {
            return Err(SeqError::AboveBound { index, value, max });
        }
        if value < max && value >= prev {
            return Err(SeqError::NotDescending { index, value, max, prev });
        }
        max = max.max(value);
        prev = value;
    }
    Ok(())
}

pub fn is_valid_s(x: &[usize]) -> bool {
    check_s(x).is_ok()
}

/// Number of left-to-right maxima, counting the first element.
pub fn lr_maxima(x: &[usize]) -> usize {
    let Some((&first, rest)) = x.split_first() else {
        return 0;
    };
    let mut max = first;
    1 + rest
        .iter()
        .filter(|&&v| {
            let record = v > max;
            max = max.max(v);
            record
        })
        .count()
}

/// A validated member of some `S(n, k)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SeqS(Vec<usize>);

impl SeqS {
    pub fn new(values: Vec<usize>) -> Result<Self, SeqError> {
        check_s(&values)?;
        Ok(Self(values))
    }

    pub(crate) fn new_unchecked(values: Vec<usize>) -> Self {
        debug_assert!(is_valid_s(&values));
        Self(values)
    }

    pub fn values(&self) -> &[usize] {
        &self.0
    }

    pub fn into_values(self) -> Vec<usize> {
        self.0
    }

    /// Sequence length `n`.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn lr_maxima(&self) -> usize {
        lr_maxima(&self.0)
    }

    /// The `k` with `self` in `S(n, k)`.
    pub fn k(&self) -> usize {
        self.len() - self.lr_maxima()
    }

    pub fn max_value(&self) -> usize {
        self.0.iter().copied().max().unwrap_or(0)
    }
}

impl fmt::Display for SeqS {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Parses `0,1,1,2` or, when no comma is present, a compact digit string
/// such as `0112` with one value per digit. Whitespace is ignored.
pub fn parse_values(text: &str) -> Result<Vec<usize>, ParseError> {
    let compact: Vec<(usize, char)> = text.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(ParseError::new(0, "expected a sequence"));
    }
    if !compact.iter().any(|&(_, c)| c == ',') {
        return compact
            .iter()
            .map(|&(pos, c)| {
                c.to_digit(10)
                    .map(|d| d as usize)
                    .ok_or_else(|| ParseError::new(pos, format!("unexpected '{c}' in sequence")))
            })
            .collect();
    }
    let mut cur = crate::diagram::Cursor::new(text);
    let mut values = vec![cur.number()?];
    while cur.eat(',') {
        values.push(cur.number()?);
    }
    if let Some((pos, c)) = cur.peek() {
        return Err(ParseError::new(pos, format!("unexpected '{c}' in sequence")));
    }
    Ok(values)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeqParseError {
    #[error(transparent)]
    Syntax(#[from] ParseError),
    #[error(transparent)]
    Invalid(#[from] SeqError),
}

impl FromStr for SeqS {
    type Err = SeqParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(Self::new(parse_values(s)?)?)
    }
}
