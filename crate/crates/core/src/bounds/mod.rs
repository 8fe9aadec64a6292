//! Closed-form values and upper bounds for the region unknotting number,
//! each with the region selection that realizes it.
//!
//! Every bound comes from the same move: a region crossing change at a
//! bigon inside a twist region flips two of its crossings and lowers its
//! signed twist count by four, and a change at the end region of a twist
//! region flips one of its crossings together with a whole neighbouring
//! twist region. Bigons are taken at tangle positions `3, 7, 11, ...` so that
//! no two chosen regions share a crossing.

mod lset;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::conway::{ConwayWord, ParseError};
use crate::diagram::{PlanarDiagram, RegionLabel, RegionSelection};
use crate::oracle;

pub use lset::{l_set, LSet};

/// Which closed form produced a bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundFamily {
    /// `C(m,n)`, exact.
    TwoTangle,
    /// `C(m,2,n)`.
    MiddleTwo,
    /// `C(m,p,n)` with `m` or `n` even.
    EvenEnd,
    /// `C(m,p,n)` with `p` even.
    EvenMiddle,
    /// `C(m,p,n)` with `p` odd.
    OddMiddle,
    /// Any word, skipping the vertical twist regions of the L-set.
    General,
    /// Every horizontal entry even.
    EvenHorizontal,
    /// Every vertical entry even and an even number of entries.
    EvenVertical,
}

impl BoundFamily {
    pub const ALL: [BoundFamily; 8] = [
        BoundFamily::TwoTangle,
        BoundFamily::MiddleTwo,
        BoundFamily::EvenEnd,
        BoundFamily::EvenMiddle,
        BoundFamily::OddMiddle,
        BoundFamily::General,
        BoundFamily::EvenHorizontal,
        BoundFamily::EvenVertical,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BoundFamily::TwoTangle => "two-tangle",
            BoundFamily::MiddleTwo => "middle-two",
            BoundFamily::EvenEnd => "even-end",
            BoundFamily::EvenMiddle => "even-middle",
            BoundFamily::OddMiddle => "odd-middle",
            BoundFamily::General => "general",
            BoundFamily::EvenHorizontal => "even-horizontal",
            BoundFamily::EvenVertical => "even-vertical",
        }
    }
}

impl fmt::Display for BoundFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown bound family {0:?}")]
pub struct UnknownFamily(pub String);

impl FromStr for BoundFamily {
    type Err = UnknownFamily;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BoundFamily::ALL
            .into_iter()
            .find(|f| f.name() == s.trim())
            .ok_or_else(|| UnknownFamily(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundKind {
    Exact,
    Upper,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub family: BoundFamily,
    pub kind: BoundKind,
    pub value: u32,
    pub certificate: RegionSelection,
    pub note: String,
}

impl BoundReport {
    fn new(family: BoundFamily, kind: BoundKind, certificate: Vec<RegionLabel>, note: impl Into<String>) -> Self {
        let certificate = RegionSelection::from_labels(certificate);
        BoundReport { family, kind, value: certificate.len() as u32, certificate, note: note.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundError {
    #[error(transparent)]
    InvalidWord(#[from] ParseError),
    #[error("{0} is an improper link; no region selection unknots it")]
    ImproperInput(ConwayWord),
    #[error("{word} is not in the {family} family")]
    FamilyMismatch { family: BoundFamily, word: ConwayWord },
    #[error("no certificate of the claimed size found for {word} in the {family} family")]
    NoCertificate { family: BoundFamily, word: ConwayWord },
}

fn proper_word(entries: Vec<u32>) -> Result<ConwayWord, BoundError> {
    let w = ConwayWord::new(entries)?;
    if !w.classify().admits_region_unknotting() {
        return Err(BoundError::ImproperInput(w));
    }
    Ok(w)
}

/// Chain label of region `k` of twist region `i` (both 1-based).
fn local(w: &[u32], i: usize, k: u32) -> RegionLabel {
    let before: u32 = (1..i).filter(|l| l % 2 == i % 2).map(|l| w[l - 1]).sum();
    if i % 2 == 1 {
        RegionLabel::Horizontal(before + k)
    } else {
        RegionLabel::Vertical(before + k)
    }
}

/// `start, start + 4, ...`, `count` terms.
fn every_fourth(start: u32, count: i64) -> impl Iterator<Item = u32> {
    (0..count.max(0) as u32).map(move |t| start + 4 * t)
}

/// `floor((x + 2) / 4)` for possibly negative `x`.
fn quarter(x: i64) -> i64 {
    (x + 2).div_euclid(4)
}

/// Tangle positions that cancel a twist region of `c` crossings down to
/// `0` (even `c`) or `±1` (odd `c`) with `floor((c+2)/4)` changes. When
/// `c ≡ 2 (mod 4)` the last change is the end region at position `1`, which
/// also flips every crossing of the neighbouring twist region.
fn cancel_twists(c: u32) -> Vec<u32> {
    let c = i64::from(c);
    match c % 4 {
        0 => every_fourth(3, c / 4).collect(),
        2 => every_fourth(3, (c - 2) / 4).chain([1]).collect(),
        _ => every_fourth(3, quarter(c)).collect(),
    }
}

/// `C(m,n)`: exact region unknotting number with the reducing selection.
pub fn ur_cmn(m: u32, n: u32) -> Result<BoundReport, BoundError> {
    let w = proper_word(vec![m, n])?;
    let e = w.entries();
    let (note, labels): (&str, Vec<RegionLabel>) = match (m % 2 == 0, n % 2 == 0) {
        (true, true) => {
            let i = if n <= m { 2 } else { 1 };
            ("both even: cancel the smaller twist region", cancel_twists(e[i - 1]).into_iter().map(|k| local(e, i, k)).collect())
        }
        (true, false) => ("m even: cancel t_m", cancel_twists(m).into_iter().map(|k| local(e, 1, k)).collect()),
        (false, true) => ("n even: cancel t'_n", cancel_twists(n).into_iter().map(|k| local(e, 2, k)).collect()),
        (false, false) => (
            "both odd: bring each twist region down to one crossing",
            cancel_twists(n)
                .into_iter()
                .map(|k| local(e, 2, k))
                .chain(cancel_twists(m).into_iter().map(|k| local(e, 1, k)))
                .collect(),
        ),
    };
    Ok(BoundReport::new(BoundFamily::TwoTangle, BoundKind::Exact, labels, note))
}

/// `C(m,2,n)`: the middle region `R'1` turns it into a `(2, m-n)` torus
/// diagram, which the bigons of the longer horizontal twist region finish.
/// Exact (value `1`) when `|m - n| <= 1`.
pub fn bound_m2n(m: u32, n: u32) -> Result<BoundReport, BoundError> {
    let w = proper_word(vec![m, 2, n])?;
    let diff = i64::from(m.abs_diff(n));
    let bigon_tangle = if m >= n { 1 } else { 3 };
    let labels: Vec<RegionLabel> = std::iter::once(RegionLabel::Vertical(1))
        .chain(every_fourth(3, quarter(diff)).map(|k| local(w.entries(), bigon_tangle, k)))
        .collect();
    let kind = if diff <= 1 { BoundKind::Exact } else { BoundKind::Upper };
    Ok(BoundReport::new(BoundFamily::MiddleTwo, kind, labels, "middle region plus bigons in the longer end"))
}

fn even_end_chain(m: u32, n: u32) -> Vec<RegionLabel> {
    let total = i64::from(m + n);
    let g = every_fourth(3, quarter(total));
    if m % 2 == 0 {
        g.map(RegionLabel::Horizontal).collect()
    } else {
        g.map(|g| RegionLabel::Horizontal(m + n + 2 - g)).collect()
    }
}

fn vertical_chain(count: i64) -> impl Iterator<Item = RegionLabel> {
    every_fourth(3, count).map(RegionLabel::Vertical)
}

/// Every applicable bound for `C(m,p,n)`.
pub fn bound_mpn(m: u32, p: u32, n: u32) -> Result<Vec<BoundReport>, BoundError> {
    let w = proper_word(vec![m, p, n])?;
    let e = w.entries();
    let mut out = Vec::new();
    let some_even = m % 2 == 0 || n % 2 == 0;
    if some_even {
        out.push(BoundReport::new(
            BoundFamily::EvenEnd,
            BoundKind::Upper,
            even_end_chain(m, n),
            "bigons along the horizontal chain",
        ));
    }
    if p % 4 == 2 {
        let diff = i64::from(m.abs_diff(n));
        let bigon_tangle = if m >= n { 1 } else { 3 };
        let labels = vertical_chain(quarter(i64::from(p)))
            .chain(every_fourth(3, quarter(diff)).map(|k| local(e, bigon_tangle, k)))
            .collect();
        out.push(BoundReport::new(
            BoundFamily::EvenMiddle,
            BoundKind::Upper,
            labels,
            "p = 2 mod 4: cancel t'_p, then the torus remainder",
        ));
    } else if p % 4 == 0 {
        let labels = if some_even {
            even_end_chain(m, n)
        } else {
            let h = i64::from(m + n);
            every_fourth(3, quarter(h))
                .map(RegionLabel::Horizontal)
                .chain(every_fourth(3, i64::from(p) / 4).map(RegionLabel::Vertical))
                .collect()
        };
        out.push(BoundReport::new(BoundFamily::EvenMiddle, BoundKind::Upper, labels, "p = 0 mod 4"));
    } else if let Some(r) = odd_middle(e) {
        out.push(r);
    }
    Ok(out)
}

/// `C(m,p,n)` with `p` odd and at least one odd end `k`.
fn odd_middle(e: &[u32]) -> Option<BoundReport> {
    let (m, p, n) = (e[0], e[1], e[2]);
    let k_is_m = match (m % 2 == 1, n % 2 == 1) {
        (true, true) => m < n,
        (true, false) => true,
        (false, true) => false,
        (false, false) => return None,
    };
    let (k, tangle) = if k_is_m { (m, 1) } else { (n, 3) };
    let own: Vec<RegionLabel> = every_fourth(3, quarter(i64::from(k))).map(|x| local(e, tangle, x)).collect();
    let p = i64::from(p);
    let mut labels = own;
    let note = if (p + i64::from(k)) % 4 == 0 {
        labels.extend(vertical_chain(quarter(p)));
        "p + k = 0 mod 4"
    } else {
        let count = if p % 4 == 3 { p / 4 } else { quarter(p) };
        labels.extend(vertical_chain(count));
        labels.push(if k_is_m { RegionLabel::Vertical(e[1] + 1) } else { RegionLabel::Vertical(1) });
        "p + k = 2 mod 4: finish with the end region of t'_p"
    };
    Some(BoundReport::new(BoundFamily::OddMiddle, BoundKind::Upper, labels, note))
}

/// The general bound `floor((sum of c_i over i outside L + 2) / 4)`.
///
/// The literal selection cancels each twist region outside `L` against the
/// residue carried in from the left. When that selection fails to unknot,
/// the selection of the same size is searched for among the regions of the
/// twist regions outside `L`, then among all regions.
pub fn bound_general(w: &ConwayWord) -> Result<BoundReport, BoundError> {
    if !w.classify().admits_region_unknotting() {
        return Err(BoundError::ImproperInput(w.clone()));
    }
    let l = l_set(w);
    let e = w.entries();
    let value = quarter(i64::from(l.outside_sum(w))) as usize;
    let mut labels = Vec::new();
    for j in (1..=w.len()).filter(|j| !l.contains(*j)) {
        let c = i64::from(w.get(j));
        let k = i64::from(l.residue(j));
        if c + k < 2 {
            continue;
        }
        let start = (3 - k) as u32;
        labels.extend(every_fourth(start, quarter(c + k)).map(|x| local(e, j, x)));
    }
    let d = PlanarDiagram::from_word(w);
    let literal = RegionSelection::from_labels(labels);
    if literal.len() == value && unknots(&d, &literal) {
        return Ok(BoundReport {
            family: BoundFamily::General,
            kind: BoundKind::Upper,
            value: value as u32,
            certificate: literal,
            note: "twist cancellation outside L".into(),
        });
    }
    let mut pool: Vec<RegionLabel> = Vec::new();
    for j in (1..=w.len()).filter(|j| !l.contains(*j)) {
        for k in 1..=w.get(j) + 1 {
            let label = local(e, j, k);
            if d.face_of(&label).is_some() && !pool.iter().any(|x| d.face_of(x) == d.face_of(&label)) {
                pool.push(label);
            }
        }
    }
    let all: Vec<RegionLabel> = (0..d.face_count()).map(|f| d.label_of(f)).collect();
    for (candidates, note) in [(pool, "searched inside the twist regions outside L"), (all, "searched over all regions")] {
        if let Some(sel) = first_unknotting_subset(&d, &candidates, value) {
            return Ok(BoundReport {
                family: BoundFamily::General,
                kind: BoundKind::Upper,
                value: value as u32,
                certificate: sel,
                note: note.into(),
            });
        }
    }
    Err(BoundError::NoCertificate { family: BoundFamily::General, word: w.clone() })
}

/// Subsets beyond this many are not enumerated by the fallback search.
const FALLBACK_LIMIT: u128 = 2_000_000;

fn binomial(n: usize, k: usize) -> u128 {
    let k = k.min(n.saturating_sub(k));
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i as u128 + 1))
}

fn first_unknotting_subset(d: &PlanarDiagram, candidates: &[RegionLabel], size: usize) -> Option<RegionSelection> {
    if size > candidates.len() || binomial(candidates.len(), size) > FALLBACK_LIMIT {
        return None;
    }
    let mut idx: Vec<usize> = (0..size).collect();
    loop {
        let sel = RegionSelection::from_labels(idx.iter().map(|&i| candidates[i]));
        if unknots(d, &sel) {
            return Some(sel);
        }
        // next combination in lexicographic order
        let mut i = size;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if idx[i] < candidates.len() - size + i {
                break;
            }
            if i == 0 {
                return None;
            }
        }
        idx[i] += 1;
        for t in i + 1..size {
            idx[t] = idx[t - 1] + 1;
        }
    }
}

fn unknots(d: &PlanarDiagram, sel: &RegionSelection) -> bool {
    match d.region_crossing_change(sel) {
        Ok(changed) => oracle::twist_trivial(&changed).unwrap_or(false),
        Err(_) => false,
    }
}

/// Bounds for the two parity families; `FamilyMismatch` when the word is in
/// neither.
pub fn bound_parity_families(w: &ConwayWord) -> Result<Vec<BoundReport>, BoundError> {
    if !w.classify().admits_region_unknotting() {
        return Err(BoundError::ImproperInput(w.clone()));
    }
    let mut out = Vec::new();
    let n = w.len();
    if (1..=n).step_by(2).all(|i| w.get(i) % 2 == 0) {
        let h = i64::from(w.horizontal_sum());
        let labels = every_fourth(3, quarter(h)).map(RegionLabel::Horizontal).collect();
        out.push(BoundReport::new(
            BoundFamily::EvenHorizontal,
            BoundKind::Upper,
            labels,
            "bigons along the horizontal chain",
        ));
    }
    if n % 2 == 0 && (2..=n).step_by(2).all(|i| w.get(i) % 2 == 0) {
        let v = i64::from(w.vertical_sum());
        let chain = BoundReport::new(
            BoundFamily::EvenVertical,
            BoundKind::Upper,
            vertical_chain(quarter(v)).collect(),
            "bigons along the vertical chain",
        );
        let pick = match bound_general(w) {
            Ok(g) if g.value < chain.value => BoundReport {
                family: BoundFamily::EvenVertical,
                note: "the general selection is smaller".into(),
                ..g
            },
            _ => chain,
        };
        out.push(pick);
    }
    if out.is_empty() {
        return Err(BoundError::FamilyMismatch { family: BoundFamily::EvenHorizontal, word: w.clone() });
    }
    Ok(out)
}

/// Every bound that applies to `w`, in family order.
pub fn all_bounds(w: &ConwayWord) -> Result<Vec<BoundReport>, BoundError> {
    if !w.classify().admits_region_unknotting() {
        return Err(BoundError::ImproperInput(w.clone()));
    }
    let e = w.entries();
    let mut out = Vec::new();
    match *e {
        [m, n] => out.push(ur_cmn(m, n)?),
        [m, p, n] => {
            if p == 2 {
                out.push(bound_m2n(m, n)?);
            }
            out.extend(bound_mpn(m, p, n)?);
        }
        _ => {}
    }
    if let Ok(g) = bound_general(w) {
        out.push(g);
    }
    if let Ok(reports) = bound_parity_families(w) {
        out.extend(reports);
    }
    out.sort_by_key(|r| r.family);
    Ok(out)
}

/// The smallest applicable bound, preferring exact values on ties.
pub fn best_bound(w: &ConwayWord) -> Result<BoundReport, BoundError> {
    all_bounds(w)?
        .into_iter()
        .min_by_key(|r| (r.value, r.kind != BoundKind::Exact, r.certificate.len()))
        .ok_or_else(|| BoundError::NoCertificate { family: BoundFamily::General, word: w.clone() })
}

/// Whether the certificate of `report` unknots the standard diagram of `w`
/// and has as many regions as the bound claims.
pub fn certificate_holds(w: &ConwayWord, report: &BoundReport) -> bool {
    let d = PlanarDiagram::from_word(w);
    report.certificate.distinct_regions(&d).ok() == Some(report.value as usize) && unknots(&d, &report.certificate)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(v: &[u32]) -> ConwayWord {
        ConwayWord::new(v.to_vec()).unwrap()
    }

    fn labels(r: &BoundReport) -> Vec<String> {
        r.certificate.to_label_strings()
    }

    #[test]
    fn two_tangle_values() {
        assert_eq!(ur_cmn(4, 4).unwrap().value, 1);
        assert_eq!(ur_cmn(2, 3).unwrap().value, 1);
        assert_eq!(ur_cmn(3, 5).unwrap().value, 2);
        assert_eq!(ur_cmn(3, 5).unwrap().kind, BoundKind::Exact);
        assert!(matches!(ur_cmn(3, 3), Err(BoundError::ImproperInput(_))));
    }

    #[test]
    fn two_tangle_certificates() {
        assert_eq!(labels(&ur_cmn(7, 5).unwrap()), ["R'3", "R3", "R7"]);
        assert_eq!(labels(&ur_cmn(6, 9).unwrap()), ["R3", "R1"]);
        assert_eq!(labels(&ur_cmn(8, 4).unwrap()), ["R'3"]);
    }

    #[test]
    fn middle_two() {
        let r = bound_m2n(3, 3).unwrap();
        assert_eq!((r.value, r.kind), (1, BoundKind::Exact));
        assert_eq!((bound_m2n(3, 4).unwrap().value, bound_m2n(3, 4).unwrap().kind), (1, BoundKind::Exact));
        assert_eq!((bound_m2n(2, 6).unwrap().value, bound_m2n(2, 6).unwrap().kind), (2, BoundKind::Upper));
    }

    #[test]
    fn three_tangle_examples() {
        let r = bound_mpn(8, 5, 3).unwrap();
        let even_end = r.iter().find(|b| b.family == BoundFamily::EvenEnd).unwrap();
        assert_eq!(labels(even_end), ["R3", "R7", "R11"]);
        let odd = r.iter().find(|b| b.family == BoundFamily::OddMiddle).unwrap();
        assert_eq!(labels(odd), ["R11", "R'3"]);
        let r = bound_mpn(3, 4, 5).unwrap();
        assert_eq!(r.iter().find(|b| b.family == BoundFamily::EvenMiddle).unwrap().value, 3);
        for p in 1..=8 {
            assert_eq!(best_bound(&word(&[2, p, 3])).unwrap().value, 1);
        }
    }

    #[test]
    fn general_examples() {
        assert_eq!(bound_general(&word(&[3])).unwrap().value, 1);
        assert_eq!(bound_general(&word(&[2, 3, 4, 2, 6])).unwrap().value, 3);
        assert_eq!(bound_general(&word(&[6, 5])).unwrap().value, 2);
    }

    #[test]
    fn parity_family_examples() {
        let r = bound_parity_families(&word(&[2, 3, 4, 2, 6])).unwrap();
        assert_eq!(labels(&r[0]), ["R3", "R7", "R11"]);
        assert!(matches!(bound_parity_families(&word(&[3, 2, 4])), Err(BoundError::FamilyMismatch { .. })));
        assert_eq!(best_bound(&word(&[2, 3, 2, 4])).unwrap().value, 1);
    }

    #[test]
    fn best_bound_prefers_exact() {
        let r = best_bound(&word(&[4, 4])).unwrap();
        assert_eq!((r.family, r.kind, r.value), (BoundFamily::TwoTangle, BoundKind::Exact, 1));
        assert_eq!(best_bound(&word(&[8, 5, 3])).unwrap().value, 2);
    }

    #[test]
    fn family_names_round_trip() {
        for f in BoundFamily::ALL {
            assert_eq!(f.name().parse::<BoundFamily>().unwrap(), f);
        }
    }

    #[test]
    fn certificates_unknot_small_words() {
        let mut words = vec![vec![]];
        let mut failures = Vec::new();
        for _ in 0..4 {
            words = words
                .into_iter()
                .flat_map(|w: Vec<u32>| {
                    (1..=5u32).map(move |c| {
                        let mut v = w.clone();
                        v.push(c);
                        v
                    })
                })
                .collect();
            for v in &words {
                let w = word(v);
                if w.crossing_count() > 12 {
                    continue;
                }
                let Ok(reports) = all_bounds(&w) else { continue };
                for r in reports {
                    if !certificate_holds(&w, &r) {
                        failures.push((w.to_string(), r.family, labels(&r)));
                    }
                }
            }
        }
        assert!(failures.is_empty(), "{failures:?}");
    }
}
