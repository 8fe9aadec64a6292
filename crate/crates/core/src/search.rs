//! Exact diagrammatic region unknotting number by breadth-first search.
//!
//! A selection of regions acts on the diagram only through its effect
//! vector, the GF(2) sum of the crossings on each region's boundary. The
//! least number of regions producing a given effect vector is its distance
//! from zero in the graph whose steps add one region's effect, so the search
//! walks that graph level by level and tests each newly reached vector once.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::conway::ConwayWord;
use crate::diagram::{FaceId, PlanarDiagram, RegionSelection};
use crate::oracle::{self, MAX_ORACLE_CROSSINGS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchStatus {
    Found,
    /// No selection of any size unknots the diagram.
    Infeasible,
    /// Nothing found up to the size limit, and larger selections remain.
    LimitExceeded,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchResult {
    pub status: SearchStatus,
    /// Least number of regions, when found.
    pub value: Option<u32>,
    pub certificate: RegionSelection,
    /// Distinct effect vectors tested.
    pub explored: u64,
}

impl SearchResult {
    fn infeasible(explored: u64) -> Self {
        SearchResult { status: SearchStatus::Infeasible, value: None, certificate: RegionSelection::empty(), explored }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("diagram has {0} crossings; exhaustive search is limited to {MAX_ORACLE_CROSSINGS}")]
    TooManyCrossings(usize),
}

/// How a candidate diagram is tested for triviality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TrivialityTest {
    /// Signed twist counts for diagrams built from a word, Jones otherwise.
    #[default]
    Auto,
    Jones,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Largest selection tried; `None` means half the regions, rounded up.
    pub max_size: Option<usize>,
    /// Report improper links as infeasible without searching.
    pub improper_shortcut: bool,
    /// Merge selections with equal effect vectors.
    pub dedup: bool,
    pub test: TrivialityTest,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { max_size: None, improper_shortcut: true, dedup: true, test: TrivialityTest::Auto }
    }
}

impl SearchOptions {
    pub fn with_max_size(max_size: usize) -> Self {
        SearchOptions { max_size: Some(max_size), ..Self::default() }
    }
}

/// A selection and its complement have the same effect, so half the regions
/// always suffice.
pub fn default_max_size(d: &PlanarDiagram) -> usize {
    d.face_count().div_ceil(2)
}

fn effect_mask(d: &PlanarDiagram, face: FaceId) -> u64 {
    d.face_effect(face).iter_ones().fold(0u64, |m, c| m | 1 << c)
}

fn switched(d: &PlanarDiagram, mask: u64) -> PlanarDiagram {
    let mut bits = bitvec::bitvec![0; d.crossing_count()];
    for c in 0..d.crossing_count() {
        bits.set(c, mask >> c & 1 == 1);
    }
    d.switch_crossings(&bits)
}

fn trivial_after(d: &PlanarDiagram, mask: u64, test: TrivialityTest) -> bool {
    let changed = switched(d, mask);
    if test == TrivialityTest::Auto {
        if let Some(t) = oracle::twist_trivial(&changed) {
            return t;
        }
    }
    oracle::is_trivial(&changed).expect("crossing count checked before the search")
}

/// Least number of regions whose simultaneous crossing change turns `d`
/// into a diagram of the unknot or unlink.
pub fn exact_ur(d: &PlanarDiagram, options: SearchOptions) -> Result<SearchResult, SearchError> {
    let n = d.crossing_count();
    if n > MAX_ORACLE_CROSSINGS {
        return Err(SearchError::TooManyCrossings(n));
    }
    if options.improper_shortcut && !d.is_proper() {
        return Ok(SearchResult::infeasible(0));
    }
    let max_size = options.max_size.unwrap_or_else(|| default_max_size(d));
    let masks: Vec<u64> = (0..d.face_count()).map(|f| effect_mask(d, f)).collect();
    let found = |faces: Vec<FaceId>, explored: u64| SearchResult {
        status: SearchStatus::Found,
        value: Some(faces.len() as u32),
        certificate: RegionSelection::from_faces(d, faces),
        explored,
    };
    if trivial_after(d, 0, options.test) {
        return Ok(found(Vec::new(), 1));
    }
    if !options.dedup {
        return Ok(search_without_dedup(d, &masks, max_size, options.test));
    }

    // effect vector -> (parent vector, face added)
    let mut parent: HashMap<u64, (u64, FaceId)> = HashMap::from([(0, (0, usize::MAX))]);
    let mut frontier: Vec<u64> = vec![0];
    let mut explored = 1u64;
    let path = |parent: &HashMap<u64, (u64, FaceId)>, mut v: u64| {
        let mut faces = Vec::new();
        while v != 0 {
            let (p, f) = parent[&v];
            faces.push(f);
            v = p;
        }
        faces.sort_unstable();
        faces
    };
    for _size in 1..=max_size {
        let mut next = Vec::new();
        for &v in &frontier {
            for (f, &m) in masks.iter().enumerate() {
                let w = v ^ m;
                if let std::collections::hash_map::Entry::Vacant(e) = parent.entry(w) {
                    e.insert((v, f));
                    next.push(w);
                }
            }
        }
        if next.is_empty() {
            return Ok(SearchResult::infeasible(explored));
        }
        explored += next.len() as u64;
        if let Some(&hit) = next.par_iter().find_first(|&&w| trivial_after(d, w, options.test)) {
            return Ok(found(path(&parent, hit), explored));
        }
        frontier = next;
    }
    // the whole span may already have been reached
    let exhausted = frontier.iter().all(|&v| masks.iter().all(|&m| parent.contains_key(&(v ^ m))));
    Ok(if exhausted {
        SearchResult::infeasible(explored)
    } else {
        SearchResult { status: SearchStatus::LimitExceeded, value: None, certificate: RegionSelection::empty(), explored }
    })
}

/// Plain enumeration of region subsets by size, for cross-checking.
fn search_without_dedup(d: &PlanarDiagram, masks: &[u64], max_size: usize, test: TrivialityTest) -> SearchResult {
    let f = masks.len();
    let mut explored = 1u64;
    for size in 1..=max_size.min(f) {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            explored += 1;
            let mask = idx.iter().fold(0u64, |acc, &i| acc ^ masks[i]);
            if trivial_after(d, mask, test) {
                return SearchResult {
                    status: SearchStatus::Found,
                    value: Some(size as u32),
                    certificate: RegionSelection::from_faces(d, idx.iter().copied()),
                    explored,
                };
            }
            let Some(i) = (0..size).rev().find(|&i| idx[i] < f - size + i) else { break };
            idx[i] += 1;
            for t in i + 1..size {
                idx[t] = idx[t - 1] + 1;
            }
        }
    }
    let status = if max_size >= f { SearchStatus::Infeasible } else { SearchStatus::LimitExceeded };
    SearchResult { status, value: None, certificate: RegionSelection::empty(), explored }
}

/// Whether a search value on the standard diagram is the region unknotting
/// number of the knot itself or only an upper bound for it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Exactness {
    /// The standard diagram is the only minimal diagram, or the value is at
    /// most one (which no diagram of a nontrivial knot can beat).
    Exact,
    /// Other minimal diagrams, reached by flypes, were not searched.
    UpperBound,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordSearch {
    #[serde(flatten)]
    pub result: SearchResult,
    pub exactness: Exactness,
}

/// Search on the standard diagram of `w`.
pub fn exact_ur_word(w: &ConwayWord, options: SearchOptions) -> Result<WordSearch, SearchError> {
    let result = exact_ur(&PlanarDiagram::from_word(w), options)?;
    let exactness = if w.len() <= 2 || result.value.is_some_and(|v| v <= 1) {
        Exactness::Exact
    } else {
        Exactness::UpperBound
    };
    Ok(WordSearch { result, exactness })
}

/// Every selection of at most `max_size` distinct regions that unknots `d`,
/// as face lists. Exponential; meant for small diagrams.
pub fn all_trivializing(d: &PlanarDiagram, max_size: usize) -> Result<Vec<Vec<FaceId>>, SearchError> {
    let n = d.crossing_count();
    if n > MAX_ORACLE_CROSSINGS {
        return Err(SearchError::TooManyCrossings(n));
    }
    let masks: Vec<u64> = (0..d.face_count()).map(|f| effect_mask(d, f)).collect();
    let mut verdict: HashMap<u64, bool> = HashMap::new();
    let mut out = Vec::new();
    let f = masks.len();
    for size in 0..=max_size.min(f) {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let mask = idx.iter().fold(0u64, |acc, &i| acc ^ masks[i]);
            let ok = *verdict.entry(mask).or_insert_with(|| trivial_after(d, mask, TrivialityTest::Auto));
            if ok {
                out.push(idx.clone());
            }
            let Some(i) = (0..size).rev().find(|&i| idx[i] < f - size + i) else { break };
            idx[i] += 1;
            for t in i + 1..size {
                idx[t] = idx[t - 1] + 1;
            }
        }
    }
    Ok(out)
}
