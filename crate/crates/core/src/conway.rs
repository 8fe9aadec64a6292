//! Conway words `C(c1, c2, ..., cn)` for 2-bridge knots and links.
//!
//! Odd positions are horizontal twist regions, even positions vertical ones.
//! Only strictly positive entries are accepted; every family studied here has
//! positive entries, and rejecting zeros keeps the standard diagram reduced.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::PlanarDiagram;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("empty Conway word")]
    EmptyWord,
    #[error("entry {value} at position {position} is not positive")]
    NonPositiveEntry { position: usize, value: i64 },
    #[error("malformed Conway word: {0}")]
    MalformedSyntax(String),
}

/// A validated Conway word: a non-empty sequence of positive twist counts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct ConwayWord(Vec<u32>);

impl ConwayWord {
    pub fn new(entries: Vec<u32>) -> Result<Self, ParseError> {
        if entries.is_empty() {
            return Err(ParseError::EmptyWord);
        }
        if let Some(position) = entries.iter().position(|&c| c == 0) {
            return Err(ParseError::NonPositiveEntry { position: position + 1, value: 0 });
        }
        Ok(ConwayWord(entries))
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    /// Number of twist regions `n`.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Entry `c_i` with the 1-based index used throughout the crate.
    pub fn get(&self, i: usize) -> u32 {
        self.0[i - 1]
    }

    pub fn crossing_count(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Sum of the horizontal (odd-position) entries.
    pub fn horizontal_sum(&self) -> u32 {
        self.0.iter().step_by(2).sum()
    }

    /// Sum of the vertical (even-position) entries.
    pub fn vertical_sum(&self) -> u32 {
        self.0.iter().skip(1).step_by(2).sum()
    }

    /// Continued fraction `c_n + 1/(c_{n-1} + 1/(... + 1/c_1))` in lowest
    /// terms, returned as `(alpha, beta)`.
    ///
    /// `alpha` is the determinant of the link. For every word except `[1]`
    /// the result satisfies `alpha > beta >= 1`.
    pub fn fraction(&self) -> (u64, u64) {
        let (num, den) = continued_fraction(self.0.iter().map(|&c| i64::from(c)));
        (num.unsigned_abs(), den.unsigned_abs())
    }

    /// Classifies the word by tracing the strands of its standard diagram.
    pub fn classify(&self) -> LinkClass {
        PlanarDiagram::from_word(self).link_class()
    }

    pub fn reversed(&self) -> ConwayWord {
        ConwayWord(self.0.iter().rev().copied().collect())
    }
}

/// Numerator and denominator of `s_n + 1/(s_{n-1} + 1/(... + 1/s_1))` for
/// arbitrary integer entries, computed with unimodular 2x2 products so that
/// zero entries are handled (the result is always in lowest terms).
pub fn continued_fraction(entries: impl IntoIterator<Item = i64>) -> (i64, i64) {
    let mut it = entries.into_iter();
    let first = it.next().unwrap_or(0);
    let (mut num, mut den) = (first, 1i64);
    for c in it {
        (num, den) = (c * num + den, num);
    }
    (num, den)
}

impl TryFrom<Vec<u32>> for ConwayWord {
    type Error = ParseError;
    fn try_from(v: Vec<u32>) -> Result<Self, Self::Error> {
        ConwayWord::new(v)
    }
}

impl From<ConwayWord> for Vec<u32> {
    fn from(w: ConwayWord) -> Self {
        w.0
    }
}

impl fmt::Display for ConwayWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("C(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

impl FromStr for ConwayWord {
    type Err = ParseError;

    /// Accepts `C(a,b,...)` or a bare list separated by commas and/or
    /// whitespace.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let trimmed = text.trim();
        let body = if let Some(rest) = trimmed.strip_prefix(['C', 'c']) {
            let rest = rest.trim_start();
            rest.strip_prefix('(')
                .and_then(|r| r.trim_end().strip_suffix(')'))
                .ok_or_else(|| ParseError::MalformedSyntax(format!("expected C(...), got {text:?}")))?
        } else {
            trimmed
        };
        if body.contains(['(', ')']) {
            return Err(ParseError::MalformedSyntax(format!("unbalanced parentheses in {text:?}")));
        }
        let mut entries = Vec::new();
        for (i, tok) in body
            .split(|ch: char| ch == ',' || ch.is_whitespace())
            .enumerate()
            .filter(|(_, t)| !t.is_empty())
        {
            let value: i64 = tok
                .parse()
                .map_err(|_| ParseError::MalformedSyntax(format!("not an integer: {tok:?}")))?;
            if value <= 0 {
                return Err(ParseError::NonPositiveEntry { position: i + 1, value });
            }
            let value = u32::try_from(value)
                .map_err(|_| ParseError::MalformedSyntax(format!("entry too large: {tok}")))?;
            entries.push(value);
        }
        // a stray separator like "3,,4" would produce an empty token; reject it
        if body.split(',').skip(1).any(|t| t.trim().is_empty()) || body.trim().ends_with(',') {
            return Err(ParseError::MalformedSyntax(format!("empty entry in {text:?}")));
        }
        ConwayWord::new(entries)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LinkKind {
    Knot,
    TwoComponentLink,
}

/// Knot or two-component link, with properness and linking number for links.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkClass {
    pub kind: LinkKind,
    /// Only present for links: every component has even total linking number.
    pub proper: Option<bool>,
    /// Signed linking number under the diagram's default orientation.
    pub linking_number: Option<i64>,
}

impl LinkClass {
    pub fn knot() -> Self {
        LinkClass { kind: LinkKind::Knot, proper: None, linking_number: None }
    }

    pub fn link(linking_number: i64) -> Self {
        LinkClass {
            kind: LinkKind::TwoComponentLink,
            proper: Some(linking_number % 2 == 0),
            linking_number: Some(linking_number),
        }
    }

    pub fn is_knot(&self) -> bool {
        self.kind == LinkKind::Knot
    }

    /// Knots and proper links: the inputs for which region crossing change
    /// is an unknotting operation.
    pub fn admits_region_unknotting(&self) -> bool {
        self.proper.unwrap_or(true)
    }
}
