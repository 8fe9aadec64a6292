//! Arf invariants from trivializing region selections, and closed forms for
//! `C(m,n)` and `C(m,p,n)`.
//!
//! Every crossing carries two signs. `a(c)` records how the white regions
//! sit against the over-strand: it is `-1` when the white corners follow
//! the over-strand's directions counterclockwise. `w(c)` is the usual
//! writhe sign. A region gets the weight
//!
//! - white: `A(R) = ½ Σ (a(c) - w(c))`
//! - black: `A(R) = -½ Σ (a(c) + w(c))`
//!
//! summed over its boundary crossings. If changing the regions `R_1..R_k`
//! one after another makes the diagram trivial, and each `A(R_i)` is read
//! off the diagram as it stands just before `R_i` is changed, the total is
//! even and its residue mod 4 is twice the Arf invariant.
//!
//! Reading every weight off the original diagram instead ([`region_sum`])
//! only works when no two selected regions share a crossing. On the
//! trefoil `C(3)`, changing `R1` alone, `R2` alone, or both gives the
//! unknot, and the plain sums are 2, 2 and 4.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::conway::ConwayWord;
use crate::diagram::{Color, DiagramError, FaceId, Orientation, PlanarDiagram, RegionSelection};
use crate::oracle::{self, OracleError};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossingWeights {
    pub a: Vec<i8>,
    pub w: Vec<i8>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArfError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("the selection does not make the diagram trivial")]
    NotTrivializing,
    #[error("region weights sum to the odd number {0}")]
    OddSum(i64),
    #[error("{0} is an improper link and has no Arf invariant")]
    ImproperInput(String),
    #[error("{0} is not a knot")]
    NotAKnotWord(ConwayWord),
}

pub fn weights(d: &PlanarDiagram) -> CrossingWeights {
    let a = d
        .crossings()
        .iter()
        .map(|c| {
            // corner k sits between slots k and k+1; the over-strand occupies
            // the even slots when over_even
            let corner = if c.over_even { 0 } else { 1 };
            if d.color_of(c.corner_face[corner]) == Color::White { -1 } else { 1 }
        })
        .collect();
    CrossingWeights { a, w: d.crossing_signs() }
}

pub fn a_of_region(d: &PlanarDiagram, face: FaceId) -> i64 {
    let cw = weights(d);
    a_with(d, &cw, face)
}

fn a_with(d: &PlanarDiagram, cw: &CrossingWeights, face: FaceId) -> i64 {
    let (mut diff, mut sum) = (0i64, 0i64);
    for c in d.face(face).boundary_crossings() {
        diff += i64::from(cw.a[c] - cw.w[c]);
        sum += i64::from(cw.a[c] + cw.w[c]);
    }
    match d.color_of(face) {
        Color::White => diff / 2,
        Color::Black => -sum / 2,
    }
}

/// `Σ A(R)` over the selected regions, every weight taken from `d` itself.
pub fn region_sum(d: &PlanarDiagram, selection: &RegionSelection) -> Result<i64, ArfError> {
    let cw = weights(d);
    Ok(selection.faces(d)?.into_iter().map(|f| a_with(d, &cw, f)).sum())
}

/// `Σ A(R_i)` with each region weighed after the earlier ones have been
/// changed. Switching a crossing negates both `a(c)` and `w(c)`. The
/// residue mod 4 does not depend on the order.
pub fn ordered_region_sum(d: &PlanarDiagram, faces: &[FaceId]) -> i64 {
    let mut cw = weights(d);
    let mut total = 0;
    for &f in faces {
        total += a_with(d, &cw, f);
        for c in d.face_effect(f).iter_ones() {
            cw.a[c] = -cw.a[c];
            cw.w[c] = -cw.w[c];
        }
    }
    total
}

/// [`ordered_region_sum`] in the selection's own order.
pub fn selection_sum(d: &PlanarDiagram, selection: &RegionSelection) -> Result<i64, ArfError> {
    Ok(ordered_region_sum(d, &selection.faces(d)?))
}

fn arf_from_sum(sum: i64) -> Result<u8, ArfError> {
    match sum.rem_euclid(4) {
        0 => Ok(0),
        2 => Ok(1),
        _ => Err(ArfError::OddSum(sum)),
    }
}

/// Arf invariant of a knot or proper link from a selection that unknots it.
pub fn arf_via_regions(d: &PlanarDiagram, selection: &RegionSelection) -> Result<u8, ArfError> {
    if !d.is_proper() {
        return Err(ArfError::ImproperInput(format!("diagram with {} crossings", d.crossing_count())));
    }
    let changed = d.region_crossing_change(selection)?;
    if !oracle::is_trivial(&changed)? {
        return Err(ArfError::NotTrivializing);
    }
    arf_from_sum(selection_sum(d, selection)?)
}

/// `Arf(L) + Arf(L')` mod 2, where `L'` is `d` changed at the white region
/// `face`; `None` for black regions.
pub fn arf_change_at_region(d: &PlanarDiagram, face: FaceId) -> Option<u8> {
    if d.color_of(face) != Color::White {
        return None;
    }
    arf_from_sum(a_of_region(d, face)).ok()
}

/// `C(m,n)` closed form. Knots need no orientation; links take the variant.
pub fn arf_formula_cmn(m: u32, n: u32, orientation: Orientation) -> Result<u8, ArfError> {
    let w = ConwayWord::new(vec![m, n]).map_err(|e| ArfError::ImproperInput(e.to_string()))?;
    let quarter = |x: u32| (x + 2) / 4;
    let sum = match (m % 2, n % 2) {
        (1, 1) => {
            if (m + n) % 4 != 0 {
                return Err(ArfError::ImproperInput(w.to_string()));
            }
            match orientation {
                Orientation::A => 2 * quarter(m),
                Orientation::B => 2 * quarter(n),
            }
        }
        (0, 0) => {
            if n % 4 == 0 {
                0
            } else {
                m
            }
        }
        _ => {
            // the even entry goes second
            let (m, n) = if n % 2 == 0 { (m, n) } else { (n, m) };
            if n % 4 == 0 {
                n / 2
            } else {
                m + n / 2
            }
        }
    };
    arf_from_sum(i64::from(sum))
}

/// `C(m,p,n)` closed form for knots.
pub fn arf_formula_cmpn(m: u32, p: u32, n: u32) -> Result<u8, ArfError> {
    let w = ConwayWord::new(vec![m, p, n]).map_err(|e| ArfError::ImproperInput(e.to_string()))?;
    if !w.classify().is_knot() {
        return Err(ArfError::NotAKnotWord(w));
    }
    // the even end goes first
    let (m, n) = if m % 2 == 1 && n % 2 == 0 { (n, m) } else { (m, n) };
    let sum = if m % 2 == 0 {
        let base = if p % 2 == 0 { 2 * ((m + n + 2) / 4) } else { m / 2 };
        if m % 4 == 0 {
            base
        } else {
            p + base
        }
    } else if (p + n) % 4 == 0 {
        2 * ((p + 2) / 4)
    } else {
        m + 1 + 2 * (p / 4)
    };
    arf_from_sum(i64::from(sum))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ArfProvenance {
    Formula,
    RegionSum,
    DeterminantOracle,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArfValue {
    pub value: u8,
    pub provenance: ArfProvenance,
    /// Present for links, whose Arf invariant depends on orientation.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub orientation: Option<Orientation>,
}

/// Every Arf value that applies to `w` under `orientation`: the closed form
/// when `w` is in a covered family, the region sum over `selection`, and the
/// determinant rule for knots.
pub fn arf_values(w: &ConwayWord, orientation: Orientation, selection: &RegionSelection) -> Vec<ArfValue> {
    let class = w.classify();
    let link_orientation = (!class.is_knot()).then_some(orientation);
    let mut out = Vec::new();
    let formula = match *w.entries() {
        [m, n] => arf_formula_cmn(m, n, orientation).ok(),
        [m, p, n] if class.is_knot() => arf_formula_cmpn(m, p, n).ok(),
        _ => None,
    };
    if let Some(value) = formula {
        out.push(ArfValue { value, provenance: ArfProvenance::Formula, orientation: link_orientation });
    }
    let d = PlanarDiagram::from_word_oriented(w, orientation);
    if let Ok(value) = arf_via_regions(&d, selection) {
        out.push(ArfValue { value, provenance: ArfProvenance::RegionSum, orientation: link_orientation });
    }
    if class.is_knot() {
        if let Ok(value) = oracle::arf_oracle(&d) {
            out.push(ArfValue { value, provenance: ArfProvenance::DeterminantOracle, orientation: None });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::ur_cmn;
    use crate::diagram::{StrandDirection, TwistKind};
    use crate::search::{exact_ur, SearchOptions};
    use proptest::prelude::*;

    fn word(v: &[u32]) -> ConwayWord {
        ConwayWord::new(v.to_vec()).unwrap()
    }

    #[test]
    fn standard_diagrams_have_a_minus_one() {
        for v in [vec![3], vec![2, 3], vec![4, 1, 3], vec![2, 3, 4, 2, 6], vec![1, 1, 1, 1]] {
            let d = PlanarDiagram::from_word(&word(&v));
            assert!(weights(&d).a.iter().all(|&a| a == -1), "{v:?}");
        }
    }

    #[test]
    fn writhe_signs_follow_strand_directions() {
        for v in [vec![2, 3], vec![4, 4], vec![7, 5], vec![3, 2, 5], vec![2, 3, 4, 2, 6]] {
            for o in [Orientation::A, Orientation::B] {
                let d = PlanarDiagram::from_word_oriented(&word(&v), o);
                let cw = weights(&d);
                for (c, x) in d.crossings().iter().enumerate() {
                    let t = x.twist.unwrap();
                    let dir = d.tangle_direction(t.tangle).unwrap();
                    let expected = match (t.kind, dir) {
                        (TwistKind::Horizontal, StrandDirection::Parallel) => -1,
                        (TwistKind::Horizontal, StrandDirection::Opposite) => 1,
                        (TwistKind::Vertical, StrandDirection::Parallel) => 1,
                        (TwistKind::Vertical, StrandDirection::Opposite) => -1,
                    };
                    assert_eq!(cw.w[c], expected, "{v:?} {o:?} crossing {c}");
                }
            }
        }
    }

    #[test]
    fn weight_examples() {
        // the even entry second
        let d = PlanarDiagram::from_word(&word(&[3, 2]));
        assert!(weights(&d).w.iter().all(|&w| w == 1));
        let d = PlanarDiagram::from_word(&word(&[4, 4]));
        let cw = weights(&d);
        assert_eq!(&cw.w[..4], &[1; 4]);
        assert_eq!(&cw.w[4..], &[-1; 4]);
        let d = PlanarDiagram::from_word(&word(&[7, 5]));
        assert!(weights(&d).w.iter().all(|&w| w == -1));
    }

    #[test]
    fn region_weights() {
        // a = -1, w = +1: white regions weigh minus their boundary length
        let d = PlanarDiagram::from_word(&word(&[3, 2]));
        for f in 0..d.face_count() {
            let len = d.face(f).corners.len() as i64;
            let expected = if d.color_of(f) == Color::White { -len } else { 0 };
            assert_eq!(a_of_region(&d, f), expected);
        }
        let d = PlanarDiagram::from_word(&word(&[7, 5]));
        for f in 0..d.face_count() {
            let len = d.face(f).corners.len() as i64;
            let expected = if d.color_of(f) == Color::White { 0 } else { len };
            assert_eq!(a_of_region(&d, f), expected);
        }
    }

    #[test]
    fn region_arf_examples() {
        assert_eq!(arf_via_regions(&PlanarDiagram::unknot(1), &RegionSelection::empty()), Ok(0));
        let d = PlanarDiagram::from_word(&word(&[2, 2]));
        assert_eq!(arf_via_regions(&d, &ur_cmn(2, 2).unwrap().certificate), Ok(1));
        assert_eq!(arf_via_regions(&d, &RegionSelection::empty()), Err(ArfError::NotTrivializing));
    }

    #[test]
    fn orientation_changes_link_arf() {
        let cert = ur_cmn(7, 5).unwrap().certificate;
        let a = PlanarDiagram::from_word_oriented(&word(&[7, 5]), Orientation::A);
        let b = PlanarDiagram::from_word_oriented(&word(&[7, 5]), Orientation::B);
        assert_eq!(arf_via_regions(&a, &cert), Ok(0));
        assert_eq!(arf_via_regions(&b, &cert), Ok(1));
        assert_eq!(arf_formula_cmn(7, 5, Orientation::A), Ok(0));
        assert_eq!(arf_formula_cmn(7, 5, Orientation::B), Ok(1));
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(arf_formula_cmn(4, 4, Orientation::A), Ok(0));
        assert_eq!(arf_formula_cmn(2, 2, Orientation::A), Ok(1));
        assert_eq!(arf_formula_cmn(3, 2, Orientation::A), Ok(0));
        assert_eq!(arf_formula_cmpn(3, 3, 3), Ok(0));
        assert_eq!(arf_formula_cmpn(2, 1, 3), Ok(1));
        assert_eq!(arf_formula_cmpn(2, 2, 3), Ok(0));
        assert!(matches!(arf_formula_cmpn(3, 2, 3), Err(ArfError::NotAKnotWord(_))));
        assert!(matches!(arf_formula_cmn(3, 3, Orientation::A), Err(ArfError::ImproperInput(_))));
    }

    #[test]
    fn region_sum_matches_determinant_on_knots() {
        for total in 1..=9u32 {
            for m in 1..total {
                for v in [vec![m, total - m], vec![total]] {
                    let w = word(&v);
                    if !w.classify().is_knot() {
                        continue;
                    }
                    let d = PlanarDiagram::from_word(&w);
                    let r = exact_ur(&d, SearchOptions::default()).unwrap();
                    assert_eq!(arf_via_regions(&d, &r.certificate).unwrap(), oracle::arf_oracle(&d).unwrap(), "{w}");
                }
            }
        }
    }

    #[test]
    fn knot_arf_ignores_orientation() {
        let w = word(&[3, 1, 4, 2]);
        let d = PlanarDiagram::from_word(&w);
        let r = exact_ur(&d, SearchOptions::default()).unwrap();
        assert_eq!(arf_via_regions(&d, &r.certificate), arf_via_regions(&d.reversed(), &r.certificate));
    }

    #[test]
    fn plain_sum_breaks_on_shared_crossings() {
        let d = PlanarDiagram::from_word(&word(&[3]));
        let both = RegionSelection::from_labels(["R1", "R2"].map(|s| s.parse().unwrap()));
        assert!(oracle::is_trivial(&d.region_crossing_change(&both).unwrap()).unwrap());
        assert_eq!(region_sum(&d, &both).unwrap(), 4);
        assert_eq!(selection_sum(&d, &both).unwrap(), 2);
        assert_eq!(arf_via_regions(&d, &both), Ok(1));
    }

    #[test]
    fn every_small_selection_agrees_with_determinant() {
        for v in [vec![3], vec![5], vec![3, 2], vec![2, 1, 3], vec![4, 3], vec![2, 1, 1, 2]] {
            let d = PlanarDiagram::from_word(&word(&v));
            let want = oracle::arf_oracle(&d).unwrap();
            for faces in crate::search::all_trivializing(&d, 3).unwrap() {
                let sel = RegionSelection::from_faces(&d, faces.iter().copied());
                assert_eq!(arf_via_regions(&d, &sel).unwrap(), want, "{v:?} {:?}", sel.to_label_strings());
            }
        }
    }

    proptest! {
        #[test]
        fn ordered_sum_ignores_order(v in prop::collection::vec(1u32..5, 1..4), picks in prop::collection::vec(0usize..64, 1..5)) {
            let d = PlanarDiagram::from_word(&word(&v));
            let faces: Vec<FaceId> = picks.iter().map(|p| p % d.face_count()).collect();
            let mut rev = faces.clone();
            rev.reverse();
            prop_assert_eq!(ordered_region_sum(&d, &faces).rem_euclid(4), ordered_region_sum(&d, &rev).rem_euclid(4));
        }

        #[test]
        fn single_white_region_relation(v in prop::collection::vec(1u32..5, 1..4), pick in 0usize..64) {
            let w = word(&v);
            prop_assume!(w.classify().is_knot());
            let d = PlanarDiagram::from_word(&w);
            let whites: Vec<FaceId> = (0..d.face_count()).filter(|&f| d.color_of(f) == Color::White).collect();
            let f = whites[pick % whites.len()];
            let changed = d.switch_crossings(&d.face_effect(f));
            let lhs = (oracle::arf_oracle(&d).unwrap() + oracle::arf_oracle(&changed).unwrap()) % 2;
            prop_assert_eq!(Some(lhs), arf_change_at_region(&d, f));
        }
    }
}
