use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Name of a region.
///
/// Standard 2-bridge diagrams carry two chains of regions: the horizontal
/// chain `R1, R2, ...` running left to right between the horizontal twist
/// regions, and the vertical chain `R'0, R'1, ...` running top to bottom
/// between the vertical ones, where `R'0` is the unbounded region above the
/// diagram. The tangle-local form `R[i,k]` is the `k`-th region of the
/// `i`-th twist region and resolves to a chain label. Diagrams read from a
/// PD code only have generic labels `F1, F2, ...`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum RegionLabel {
    Horizontal(u32),
    Vertical(u32),
    Local { tangle: u32, k: u32 },
    Face(u32),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse region label {0:?}")]
pub struct LabelParseError(pub String);

impl fmt::Display for RegionLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            RegionLabel::Horizontal(j) => write!(f, "R{j}"),
            RegionLabel::Vertical(j) => write!(f, "R'{j}"),
            RegionLabel::Local { tangle, k } => write!(f, "R[{tangle},{k}]"),
            RegionLabel::Face(j) => write!(f, "F{j}"),
        }
    }
}

impl FromStr for RegionLabel {
    type Err = LabelParseError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let err = || LabelParseError(text.to_string());
        let s = text.trim();
        let num = |t: &str| t.trim().trim_start_matches('_').parse::<u32>().map_err(|_| err());
        if let Some(rest) = s.strip_prefix('F') {
            return num(rest).map(RegionLabel::Face);
        }
        let rest = s.strip_prefix('R').ok_or_else(err)?;
        if let Some(inner) = rest.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            let (i, k) = inner.split_once(',').ok_or_else(err)?;
            return Ok(RegionLabel::Local { tangle: num(i)?, k: num(k)? });
        }
        if let Some(v) = rest.strip_prefix('\'') {
            return num(v).map(RegionLabel::Vertical);
        }
        num(rest).map(RegionLabel::Horizontal)
    }
}

impl From<RegionLabel> for String {
    fn from(l: RegionLabel) -> String {
        l.to_string()
    }
}

impl TryFrom<String> for RegionLabel {
    type Error = LabelParseError;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips() {
        for l in [
            RegionLabel::Horizontal(3),
            RegionLabel::Vertical(0),
            RegionLabel::Vertical(11),
            RegionLabel::Local { tangle: 4, k: 2 },
            RegionLabel::Face(7),
        ] {
            assert_eq!(l.to_string().parse::<RegionLabel>().unwrap(), l);
        }
    }

    #[test]
    fn lenient_forms() {
        assert_eq!("R_3".parse::<RegionLabel>().unwrap(), RegionLabel::Horizontal(3));
        assert_eq!("R'_3".parse::<RegionLabel>().unwrap(), RegionLabel::Vertical(3));
        assert_eq!("R[2, 5]".parse::<RegionLabel>().unwrap(), RegionLabel::Local { tangle: 2, k: 5 });
        assert!("Q3".parse::<RegionLabel>().is_err());
        assert!("R[2]".parse::<RegionLabel>().is_err());
    }
}
