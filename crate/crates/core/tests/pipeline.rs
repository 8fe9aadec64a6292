//! Word in, certificate and Arf invariant out.

use twobridge::arf::{arf_formula_cmn, arf_values, arf_via_regions, ArfProvenance};
use twobridge::bounds::{best_bound, BoundFamily, BoundKind};
use twobridge::diagram::{gauss_code, pd_code};
use twobridge::oracle;
use twobridge::search::{exact_ur, exact_ur_word, Exactness, SearchOptions};
use twobridge::{ConwayWord, Orientation, PlanarDiagram};

fn word(s: &str) -> ConwayWord {
    s.parse().unwrap()
}

#[test]
fn figure_eight_end_to_end() {
    let w = word("C(2,2)");
    assert!(w.classify().is_knot());
    assert_eq!(w.fraction(), (5, 2));
    let b = best_bound(&w).unwrap();
    assert_eq!((b.family, b.kind, b.value), (BoundFamily::TwoTangle, BoundKind::Exact, 1));
    let d = PlanarDiagram::from_word(&w);
    assert_eq!(arf_via_regions(&d, &b.certificate), Ok(1));
    assert_eq!(oracle::arf_oracle(&d), Ok(1));
    assert_eq!(arf_formula_cmn(2, 2, Orientation::A), Ok(1));
}

#[test]
fn pd_input_matches_word_input() {
    let d = PlanarDiagram::from_word(&word("C(3,2)"));
    let again = PlanarDiagram::from_pd(&pd_code(&d)).unwrap();
    assert_eq!(again.crossing_count(), 5);
    assert_eq!(oracle::jones(&again).unwrap(), oracle::jones(&d).unwrap());
    let a = exact_ur(&d, SearchOptions::default()).unwrap().value;
    let b = exact_ur(&again, SearchOptions::default()).unwrap().value;
    assert_eq!(a, b);
    assert!(!gauss_code(&d).is_empty());
}

#[test]
fn arf_values_agree_for_knots() {
    for s in ["C(3)", "C(4,3)", "C(2,1,3)", "C(3,3,3)", "C(2,1,1,2)"] {
        let w = word(s);
        let r = exact_ur_word(&w, SearchOptions::default()).unwrap();
        let values = arf_values(&w, Orientation::A, &r.result.certificate);
        assert!(values.iter().any(|v| v.provenance == ArfProvenance::DeterminantOracle), "{s}");
        let first = values[0].value;
        assert!(values.iter().all(|v| v.value == first), "{s}: {values:?}");
    }
}

#[test]
fn long_words_are_upper_bounds_only() {
    let r = exact_ur_word(&word("C(2,3,4)"), SearchOptions::default()).unwrap();
    assert_eq!(r.exactness, Exactness::UpperBound);
    let r = exact_ur_word(&word("C(4,4)"), SearchOptions::default()).unwrap();
    assert_eq!(r.exactness, Exactness::Exact);
}
