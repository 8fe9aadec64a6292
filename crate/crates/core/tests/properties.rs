//! Invariants over random Conway words, checked through the public API.

use proptest::prelude::*;
use twobridge::bounds::{all_bounds, best_bound, certificate_holds};
use twobridge::diagram::pd_code;
use twobridge::oracle::{self, JonesPoly};
use twobridge::search::{exact_ur, exact_ur_word, SearchOptions, SearchStatus};
use twobridge::{ConwayWord, PlanarDiagram, RegionSelection};

fn words(max_len: usize, max_entry: u32) -> impl Strategy<Value = ConwayWord> {
    prop::collection::vec(1..=max_entry, 1..=max_len).prop_map(|v| ConwayWord::new(v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn euler_characteristic(w in words(6, 6)) {
        let d = PlanarDiagram::from_word(&w);
        prop_assert_eq!(d.face_count(), d.crossing_count() + 2);
        prop_assert_eq!(d.crossing_count() as u32, w.crossing_count());
    }

    #[test]
    fn region_change_is_an_involution(w in words(5, 5), picks in prop::collection::vec(0usize..64, 0..5)) {
        let d = PlanarDiagram::from_word(&w);
        let sel = RegionSelection::from_faces(&d, picks.iter().map(|p| p % d.face_count()));
        let twice = d.region_crossing_change(&sel).unwrap().region_crossing_change(&sel).unwrap();
        prop_assert_eq!(pd_code(&twice), pd_code(&d));
    }

    #[test]
    fn effects_add_over_gf2(w in words(5, 5), a in 0usize..64, b in 0usize..64) {
        let d = PlanarDiagram::from_word(&w);
        let (fa, fb) = (a % d.face_count(), b % d.face_count());
        prop_assume!(fa != fb);
        let sa = RegionSelection::from_faces(&d, [fa]);
        let sb = RegionSelection::from_faces(&d, [fb]);
        let both = RegionSelection::from_faces(&d, [fa, fb]);
        let sum = sa.effect(&d).unwrap() ^ sb.effect(&d).unwrap();
        prop_assert_eq!(both.effect(&d).unwrap(), sum);
    }

    #[test]
    fn determinant_matches_fraction(w in words(5, 5)) {
        prop_assert_eq!(oracle::determinant_of_word(&w).unwrap(), w.fraction().0);
    }

    #[test]
    fn bound_certificates_hold(w in words(4, 5)) {
        prop_assume!(w.classify().admits_region_unknotting());
        for r in all_bounds(&w).unwrap() {
            prop_assert!(certificate_holds(&w, &r), "{} {}", w, r.family);
        }
    }

    #[test]
    fn search_never_beats_itself(w in words(4, 4)) {
        prop_assume!(w.classify().admits_region_unknotting());
        let exact = exact_ur_word(&w, SearchOptions::default()).unwrap().result;
        prop_assert_eq!(exact.status, SearchStatus::Found);
        let v = exact.value.unwrap();
        if let Ok(b) = best_bound(&w) {
            prop_assert!(v <= b.value, "{} search {} bound {}", w, v, b.value);
        }
        let d = PlanarDiagram::from_word(&w);
        let changed = d.region_crossing_change(&exact.certificate).unwrap();
        prop_assert_eq!(oracle::jones(&changed).unwrap(), JonesPoly::unlink(d.component_count()));
    }

    #[test]
    fn mirror_keeps_search_value(w in words(4, 4)) {
        prop_assume!(w.classify().admits_region_unknotting());
        let d = PlanarDiagram::from_word(&w);
        let a = exact_ur(&d, SearchOptions::default()).unwrap().value;
        let b = exact_ur(&d.mirror(), SearchOptions::default()).unwrap().value;
        prop_assert_eq!(a, b);
    }
}

#[test]
fn improper_links_are_rejected_everywhere() {
    for v in [vec![3, 3], vec![1, 1], vec![5, 1], vec![2, 2, 4]] {
        let w = ConwayWord::new(v).unwrap();
        assert!(!w.classify().admits_region_unknotting(), "{w}");
        assert!(all_bounds(&w).is_err());
        let r = exact_ur_word(&w, SearchOptions::default()).unwrap().result;
        assert_eq!((r.status, r.explored), (SearchStatus::Infeasible, 0));
    }
}
