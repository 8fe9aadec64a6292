use bitvec::prelude::*;
use serde::{Deserialize, Serialize};

use super::{DiagramError, FaceId, PlanarDiagram, RegionLabel};

/// A set of regions to change simultaneously.
///
/// Labels keep their insertion order so certificates print the way they were
/// generated. The effect on a diagram is the GF(2) sum of the boundary
/// incidences of the selected regions.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RegionSelection {
    labels: Vec<RegionLabel>,
}

impl RegionSelection {
    pub fn empty() -> Self {
        RegionSelection::default()
    }

    /// Builds a selection, dropping repeated labels.
    pub fn from_labels(labels: impl IntoIterator<Item = RegionLabel>) -> Self {
        let mut out = RegionSelection::empty();
        for l in labels {
            out.insert(l);
        }
        out
    }

    pub fn from_faces(diagram: &PlanarDiagram, faces: impl IntoIterator<Item = FaceId>) -> Self {
        Self::from_labels(faces.into_iter().map(|f| diagram.label_of(f)))
    }

    pub fn insert(&mut self, label: RegionLabel) {
        if !self.labels.contains(&label) {
            self.labels.push(label);
        }
    }

    pub fn labels(&self) -> &[RegionLabel] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Resolves every label to a region of `diagram`.
    pub fn faces(&self, diagram: &PlanarDiagram) -> Result<Vec<FaceId>, DiagramError> {
        self.labels
            .iter()
            .map(|l| diagram.face_of(l).ok_or(DiagramError::UnknownRegionLabel(*l)))
            .collect()
    }

    /// Number of distinct regions named (aliases of one region count once).
    pub fn distinct_regions(&self, diagram: &PlanarDiagram) -> Result<usize, DiagramError> {
        let mut faces = self.faces(diagram)?;
        faces.sort_unstable();
        faces.dedup();
        Ok(faces.len())
    }

    /// Crossings switched by changing all selected regions at once.
    pub fn effect(&self, diagram: &PlanarDiagram) -> Result<BitVec, DiagramError> {
        let mut v = bitvec![0; diagram.crossing_count()];
        for f in self.faces(diagram)? {
            v ^= diagram.face_effect(f);
        }
        Ok(v)
    }

    /// Regions in exactly one of the two selections.
    pub fn symmetric_difference(&self, other: &RegionSelection) -> RegionSelection {
        let mut out: Vec<RegionLabel> = self.labels.iter().filter(|l| !other.labels.contains(l)).copied().collect();
        out.extend(other.labels.iter().filter(|l| !self.labels.contains(l)));
        RegionSelection { labels: out }
    }

    pub fn to_label_strings(&self) -> Vec<String> {
        self.labels.iter().map(ToString::to_string).collect()
    }
}

impl FromIterator<RegionLabel> for RegionSelection {
    fn from_iter<T: IntoIterator<Item = RegionLabel>>(iter: T) -> Self {
        RegionSelection::from_labels(iter)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ConwayWord;
    use proptest::prelude::*;

    fn diagram() -> PlanarDiagram {
        PlanarDiagram::from_word(&ConwayWord::new(vec![2, 3, 4, 2, 6]).unwrap())
    }

    #[test]
    fn empty_selection_has_zero_effect() {
        let d = diagram();
        assert!(RegionSelection::empty().effect(&d).unwrap().not_any());
        assert_eq!(d.region_crossing_change(&RegionSelection::empty()).unwrap(), d);
    }

    proptest! {
        #[test]
        fn effect_is_linear(a in prop::collection::btree_set(0usize..19, 0..6), b in prop::collection::btree_set(0usize..19, 0..6)) {
            let d = diagram();
            let sa = RegionSelection::from_faces(&d, a.iter().copied());
            let sb = RegionSelection::from_faces(&d, b.iter().copied());
            let sum = sa.symmetric_difference(&sb);
            let lhs = sum.effect(&d).unwrap();
            let rhs = sa.effect(&d).unwrap() ^ sb.effect(&d).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn region_change_is_an_involution(a in prop::collection::btree_set(0usize..19, 0..6)) {
            let d = diagram();
            let s = RegionSelection::from_faces(&d, a.iter().copied());
            let twice = d.region_crossing_change(&s).unwrap().region_crossing_change(&s).unwrap();
            prop_assert_eq!(twice, d);
        }
    }
}
