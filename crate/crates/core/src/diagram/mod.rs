//! Planar diagrams: the standard alternating diagram of a Conway word, its
//! regions, checkerboard coloring, orientation, and region crossing change.
//!
//! Every crossing has four slots numbered counterclockwise `0 = NE`,
//! `1 = NW`, `2 = SW`, `3 = SE`. The strands pass straight through, pairing
//! slot `s` with `s + 2`. Corner `k` of a crossing is the angle between slot
//! `k` and slot `k + 1`, so corner `0` faces north, `1` west, `2` south and
//! `3` east. A region is a class of corners glued along edges.

mod export;
mod label;
mod selection;

use bitvec::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::conway::{ConwayWord, LinkClass};

pub use export::{gauss_code, pd_code, svg, SvgOptions};
pub use label::{LabelParseError, RegionLabel};
pub use selection::RegionSelection;

pub type CrossingId = usize;
pub type FaceId = usize;

/// One end of an edge: a crossing and one of its four slots.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Port {
    pub crossing: CrossingId,
    pub slot: u8,
}

impl Port {
    fn new(crossing: CrossingId, slot: u8) -> Self {
        Port { crossing, slot }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TwistKind {
    Horizontal,
    Vertical,
}

/// Where a crossing sits in the standard diagram of a word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TwistPosition {
    /// 1-based index of the twist region in the word.
    pub tangle: u32,
    /// 1-based position inside the twist region.
    pub index: u32,
    pub kind: TwistKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StrandDirection {
    Parallel,
    Opposite,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Color {
    White,
    Black,
}

/// Orientation of the second component of a 2-component link.
///
/// `A` orients the second component so that the lowest-numbered crossing
/// between the two components is negative; `B` reverses it. The first
/// component always runs from crossing 0 entering through its SW slot.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Orientation {
    #[default]
    A,
    B,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("unknown region label {0}")]
    UnknownRegionLabel(RegionLabel),
    #[error("malformed PD code: {0}")]
    MalformedPd(String),
    #[error("diagram is not a connected planar diagram: {0}")]
    NotPlanar(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Crossing {
    /// `next[s]` is the far end of the edge leaving slot `s`.
    pub next: [Port; 4],
    /// Whether the over-strand runs through slots 0 and 2.
    pub over_even: bool,
    pub twist: Option<TwistPosition>,
    /// Region at each corner.
    pub corner_face: [FaceId; 4],
    /// Entry slot of the strand through the even pair and through the odd pair.
    pub entry: [u8; 2],
    /// Component of the strand through the even pair and through the odd pair.
    pub component: [usize; 2],
}

impl Crossing {
    pub fn over_entry(&self) -> u8 {
        if self.over_even { self.entry[0] } else { self.entry[1] }
    }

    pub fn under_entry(&self) -> u8 {
        if self.over_even { self.entry[1] } else { self.entry[0] }
    }

    /// Right-handed crossings are `+1`.
    pub fn sign(&self) -> i8 {
        if self.over_entry() == (self.under_entry() + 3) % 4 { 1 } else { -1 }
    }

    pub fn is_over_slot(&self, slot: u8) -> bool {
        (slot % 2 == 0) == self.over_even
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Face {
    pub id: FaceId,
    pub label: RegionLabel,
    /// Corners `(crossing, corner)` of this region; a crossing appears once
    /// per incidence.
    pub corners: Vec<(CrossingId, u8)>,
    pub color: Color,
}

impl Face {
    pub fn boundary_crossings(&self) -> impl Iterator<Item = CrossingId> + '_ {
        self.corners.iter().map(|&(c, _)| c)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct ChainInfo {
    entries: Vec<u32>,
    horizontal: u32,
    vertical: u32,
}

impl ChainInfo {
    fn odd_length(&self) -> bool {
        self.entries.len() % 2 == 1
    }

    /// Chain label of the `k`-th region of tangle `i`.
    fn local(&self, tangle: u32, k: u32) -> Option<RegionLabel> {
        let i = tangle as usize;
        if i == 0 || i > self.entries.len() || k == 0 || k > self.entries[i - 1] + 1 {
            return None;
        }
        let before: u32 = (1..i).filter(|l| l % 2 == i % 2).map(|l| self.entries[l - 1]).sum();
        Some(if i % 2 == 1 {
            RegionLabel::Horizontal(before + k)
        } else {
            RegionLabel::Vertical(before + k)
        })
    }

    /// Canonical chain label, folding the closure identifications.
    fn canonical(&self, label: RegionLabel) -> Option<RegionLabel> {
        match label {
            RegionLabel::Horizontal(j) => {
                if j == 0 || j > self.horizontal + 1 {
                    None
                } else if j == self.horizontal + 1 && self.odd_length() {
                    Some(RegionLabel::Horizontal(1))
                } else {
                    Some(label)
                }
            }
            RegionLabel::Vertical(j) => {
                if j > self.vertical + 1 {
                    None
                } else if j == 0 && !self.odd_length() {
                    Some(RegionLabel::Vertical(self.vertical + 1))
                } else {
                    Some(label)
                }
            }
            RegionLabel::Local { tangle, k } => self.local(tangle, k).and_then(|l| self.canonical(l)),
            RegionLabel::Face(_) => None,
        }
    }

    fn top_label(&self) -> RegionLabel {
        if self.odd_length() {
            RegionLabel::Vertical(0)
        } else {
            RegionLabel::Vertical(self.vertical + 1)
        }
    }
}

/// A link diagram on the sphere with one distinguished (unbounded) region.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanarDiagram {
    crossings: Vec<Crossing>,
    faces: Vec<Face>,
    components: Vec<Vec<Port>>,
    free_loops: usize,
    unbounded: FaceId,
    chain: Option<ChainInfo>,
    orientation: Orientation,
}

struct Wiring {
    next: Vec<[Option<Port>; 4]>,
}

impl Wiring {
    fn add(&mut self, count: usize) -> usize {
        let base = self.next.len();
        self.next.extend(std::iter::repeat_n([None; 4], count));
        base
    }

    fn connect(&mut self, a: Port, b: Port) {
        debug_assert!(self.next[a.crossing][a.slot as usize].is_none());
        debug_assert!(self.next[b.crossing][b.slot as usize].is_none());
        self.next[a.crossing][a.slot as usize] = Some(b);
        self.next[b.crossing][b.slot as usize] = Some(a);
    }
}

#[derive(Clone, Copy)]
struct Ports {
    nw: Port,
    ne: Port,
    sw: Port,
    se: Port,
}

impl PlanarDiagram {
    /// Standard alternating diagram with the default orientation.
    pub fn from_word(word: &ConwayWord) -> Self {
        Self::from_word_oriented(word, Orientation::A)
    }

    pub fn from_word_oriented(word: &ConwayWord, orientation: Orientation) -> Self {
        let mut wiring = Wiring { next: Vec::new() };
        let mut twist = Vec::new();
        let mut ports: Option<Ports> = None;
        for (pos, &c) in word.entries().iter().enumerate() {
            let tangle = pos as u32 + 1;
            let c = c as usize;
            let base = wiring.add(c);
            let horizontal = tangle % 2 == 1;
            for t in 0..c {
                twist.push(TwistPosition {
                    tangle,
                    index: t as u32 + 1,
                    kind: if horizontal { TwistKind::Horizontal } else { TwistKind::Vertical },
                });
            }
            let first = base;
            let last = base + c - 1;
            if horizontal {
                for t in first..last {
                    wiring.connect(Port::new(t, 0), Port::new(t + 1, 1));
                    wiring.connect(Port::new(t, 3), Port::new(t + 1, 2));
                }
                let (nw, sw) = match ports {
                    Some(p) => {
                        wiring.connect(p.ne, Port::new(first, 1));
                        wiring.connect(p.se, Port::new(first, 2));
                        (p.nw, p.sw)
                    }
                    None => (Port::new(first, 1), Port::new(first, 2)),
                };
                ports = Some(Ports { nw, sw, ne: Port::new(last, 0), se: Port::new(last, 3) });
            } else {
                for t in first..last {
                    wiring.connect(Port::new(t, 2), Port::new(t + 1, 1));
                    wiring.connect(Port::new(t, 3), Port::new(t + 1, 0));
                }
                let p = ports.expect("vertical twist regions never come first");
                wiring.connect(p.sw, Port::new(first, 1));
                wiring.connect(p.se, Port::new(first, 0));
                ports = Some(Ports { nw: p.nw, ne: p.ne, sw: Port::new(last, 2), se: Port::new(last, 3) });
            }
        }
        let p = ports.expect("words are non-empty");
        if word.len() % 2 == 1 {
            wiring.connect(p.nw, p.ne);
            wiring.connect(p.sw, p.se);
        } else {
            wiring.connect(p.nw, p.sw);
            wiring.connect(p.ne, p.se);
        }
        let next: Vec<[Port; 4]> = wiring
            .next
            .into_iter()
            .map(|slots| slots.map(|s| s.expect("every slot is wired")))
            .collect();
        let chain = ChainInfo {
            entries: word.entries().to_vec(),
            horizontal: word.horizontal_sum(),
            vertical: word.vertical_sum(),
        };
        let over_even = vec![true; next.len()];
        let mut d = Self::assemble(next, over_even, twist.into_iter().map(Some).collect(), Some(chain), 0);
        d.orient_standard(orientation);
        d
    }

    /// A crossingless diagram of `loops` disjoint circles.
    pub fn unknot(loops: usize) -> Self {
        assert!(loops >= 1, "a diagram needs at least one component");
        let faces = (0..=loops)
            .map(|i| Face {
                id: i,
                label: RegionLabel::Face(i as u32 + 1),
                corners: Vec::new(),
                color: if i == 0 { Color::White } else { Color::Black },
            })
            .collect();
        PlanarDiagram {
            crossings: Vec::new(),
            faces,
            components: Vec::new(),
            free_loops: loops,
            unbounded: 0,
            chain: None,
            orientation: Orientation::A,
        }
    }

    /// Reads a PD code `X[i,j,k,l] X[...]`, each crossing listed
    /// counterclockwise from the incoming under-strand. Orientation follows
    /// the edge numbering. Faces get generic labels `F1, F2, ...` and the
    /// region with the most corners is taken as unbounded.
    pub fn from_pd(text: &str) -> Result<Self, DiagramError> {
        let tuples = export::parse_pd(text)?;
        if tuples.is_empty() {
            return Ok(Self::unknot(1));
        }
        let mut ends: std::collections::BTreeMap<u32, Vec<Port>> = Default::default();
        for (c, t) in tuples.iter().enumerate() {
            for (s, &e) in t.iter().enumerate() {
                ends.entry(e).or_default().push(Port::new(c, s as u8));
            }
        }
        let mut next = vec![[Port::new(0, 0); 4]; tuples.len()];
        for (e, list) in &ends {
            if list.len() != 2 {
                return Err(DiagramError::MalformedPd(format!("edge {e} occurs {} times", list.len())));
            }
            next[list[0].crossing][list[0].slot as usize] = list[1];
            next[list[1].crossing][list[1].slot as usize] = list[0];
        }
        // slot 0 is the incoming under-strand, so the under pair is even
        let over_even = vec![false; tuples.len()];
        let mut d = Self::assemble(next, over_even, vec![None; tuples.len()], None, 0);
        if d.faces.len() != tuples.len() + 2 {
            return Err(DiagramError::NotPlanar(format!(
                "{} crossings but {} regions",
                tuples.len(),
                d.faces.len()
            )));
        }
        d.orient_from_pd(&tuples, &ends)?;
        let unbounded = (0..d.faces.len()).max_by_key(|&f| (d.faces[f].corners.len(), std::cmp::Reverse(f))).unwrap_or(0);
        d.set_unbounded(unbounded);
        Ok(d)
    }

    fn assemble(
        next: Vec<[Port; 4]>,
        over_even: Vec<bool>,
        twist: Vec<Option<TwistPosition>>,
        chain: Option<ChainInfo>,
        free_loops: usize,
    ) -> Self {
        let n = next.len();
        let mut uf = UnionFind::new(4 * n);
        for (c, slots) in next.iter().enumerate() {
            for k in 0..4u8 {
                let out = slots[((k + 1) % 4) as usize];
                uf.union(4 * c + k as usize, 4 * out.crossing + out.slot as usize);
            }
        }
        let mut face_of_root = vec![usize::MAX; 4 * n];
        let mut faces: Vec<Face> = Vec::new();
        let mut corner_face = vec![[0usize; 4]; n];
        for (c, cf) in corner_face.iter_mut().enumerate() {
            for k in 0..4u8 {
                let r = uf.find(4 * c + k as usize);
                if face_of_root[r] == usize::MAX {
                    face_of_root[r] = faces.len();
                    faces.push(Face {
                        id: faces.len(),
                        label: RegionLabel::Face(faces.len() as u32 + 1),
                        corners: Vec::new(),
                        color: Color::White,
                    });
                }
                let f = face_of_root[r];
                faces[f].corners.push((c, k));
                cf[k as usize] = f;
            }
        }
        let crossings = next
            .into_iter()
            .zip(over_even)
            .zip(twist)
            .zip(corner_face)
            .map(|(((next, over_even), twist), corner_face)| Crossing {
                next,
                over_even,
                twist,
                corner_face,
                entry: [0, 1],
                component: [0, 0],
            })
            .collect();
        let mut d = PlanarDiagram {
            crossings,
            faces,
            components: Vec::new(),
            free_loops,
            unbounded: 0,
            chain,
            orientation: Orientation::A,
        };
        if d.chain.is_some() {
            d.label_standard_faces();
        }
        d
    }

    /// Assigns chain labels by the corner rule and checks that every region
    /// receives exactly one canonical label.
    fn label_standard_faces(&mut self) {
        let chain = self.chain.clone().expect("standard diagram");
        let entries = &chain.entries;
        let mut assigned: Vec<Option<RegionLabel>> = vec![None; self.faces.len()];
        let mut hp = 0u32;
        let mut vp = 0u32;
        let mut id = 0usize;
        for (pos, &c) in entries.iter().enumerate() {
            let horizontal = pos % 2 == 0;
            for t in 1..=c {
                let corners = if horizontal {
                    [
                        chain.top_label(),
                        RegionLabel::Horizontal(hp + t),
                        RegionLabel::Vertical(vp + 1),
                        RegionLabel::Horizontal(hp + t + 1),
                    ]
                } else {
                    [
                        RegionLabel::Vertical(vp + t),
                        RegionLabel::Horizontal(1),
                        RegionLabel::Vertical(vp + t + 1),
                        RegionLabel::Horizontal(hp + 1),
                    ]
                };
                for (k, l) in corners.into_iter().enumerate() {
                    let l = chain.canonical(l).expect("corner labels are in range");
                    let f = self.crossings[id].corner_face[k];
                    match assigned[f] {
                        None => assigned[f] = Some(l),
                        Some(prev) => assert_eq!(prev, l, "inconsistent region labels at crossing {id}"),
                    }
                }
                id += 1;
            }
            if horizontal {
                hp += c;
            } else {
                vp += c;
            }
        }
        let mut seen = std::collections::BTreeSet::new();
        for (f, l) in assigned.into_iter().enumerate() {
            let l = l.expect("every region has a corner");
            assert!(seen.insert(l), "label {l} names two regions");
            self.faces[f].label = l;
        }
        let top = self.face_of(&chain.top_label()).expect("top region exists");
        self.set_unbounded(top);
    }

    fn set_unbounded(&mut self, face: FaceId) {
        self.unbounded = face;
        let colors = self.two_color(face);
        for (f, c) in colors.into_iter().enumerate() {
            self.faces[f].color = c;
        }
    }

    fn two_color(&self, white: FaceId) -> Vec<Color> {
        let nf = self.faces.len();
        let mut adj = vec![Vec::new(); nf];
        for c in &self.crossings {
            for k in 0..4 {
                let a = c.corner_face[k];
                let b = c.corner_face[(k + 1) % 4];
                adj[a].push(b);
                adj[b].push(a);
            }
        }
        let mut color: Vec<Option<Color>> = vec![None; nf];
        let mut queue = std::collections::VecDeque::from([white]);
        color[white] = Some(Color::White);
        while let Some(f) = queue.pop_front() {
            let other = match color[f] {
                Some(Color::White) => Color::Black,
                _ => Color::White,
            };
            for &g in &adj[f] {
                match color[g] {
                    None => {
                        color[g] = Some(other);
                        queue.push_back(g);
                    }
                    Some(existing) => debug_assert_eq!(existing, other, "face graph is not bipartite"),
                }
            }
        }
        color.into_iter().map(|c| c.unwrap_or(Color::White)).collect()
    }

    /// Traces the strand entering `start`, returning the ports entered.
    fn trace(&self, start: Port) -> Vec<Port> {
        let mut path = Vec::new();
        let mut at = start;
        loop {
            path.push(at);
            let exit = (at.slot + 2) % 4;
            at = self.crossings[at.crossing].next[exit as usize];
            if at == start {
                return path;
            }
        }
    }

    fn install_components(&mut self, components: Vec<Vec<Port>>) {
        for (ci, comp) in components.iter().enumerate() {
            for p in comp {
                let c = &mut self.crossings[p.crossing];
                let pair = (p.slot % 2) as usize;
                c.entry[pair] = p.slot;
                c.component[pair] = ci;
            }
        }
        self.components = components;
    }

    fn all_components_from(&self, first: Port) -> Vec<Vec<Port>> {
        let mut covered = vec![[false; 2]; self.crossings.len()];
        let mut comps = Vec::new();
        let mut start = Some(first);
        while let Some(s) = start {
            let path = self.trace(s);
            for p in &path {
                covered[p.crossing][(p.slot % 2) as usize] = true;
            }
            comps.push(path);
            start = covered
                .iter()
                .enumerate()
                .find_map(|(c, cov)| (0..2).find(|&pair| !cov[pair]).map(|pair| Port::new(c, pair as u8)));
        }
        comps
    }

    fn orient_standard(&mut self, orientation: Orientation) {
        self.orientation = orientation;
        let comps = self.all_components_from(Port::new(0, 2));
        self.install_components(comps);
        if self.components.len() < 2 {
            return;
        }
        let first_mixed = (0..self.crossings.len()).find(|&c| {
            let x = &self.crossings[c];
            x.component[0] != x.component[1]
        });
        if let Some(c) = first_mixed {
            let wants_negative = orientation == Orientation::A;
            let is_negative = self.crossings[c].sign() < 0;
            if wants_negative != is_negative {
                self.reverse_component(1);
            }
        }
    }

    fn orient_from_pd(
        &mut self,
        tuples: &[[u32; 4]],
        ends: &std::collections::BTreeMap<u32, Vec<Port>>,
    ) -> Result<(), DiagramError> {
        // Edges are numbered consecutively along each component, so the
        // over-strand of X[i,j,k,l] runs l -> j when j = l + 1 or when the
        // numbering wraps from l back to j.
        let _ = ends;
        let mut covered = vec![[false; 2]; tuples.len()];
        let mut comps = Vec::new();
        for c in 0..tuples.len() {
            for pair in 0..2u8 {
                if covered[c][pair as usize] {
                    continue;
                }
                let start = if pair == 0 {
                    Port::new(c, 0)
                } else {
                    let (j, l) = (tuples[c][1], tuples[c][3]);
                    let l_to_j = j == l + 1 || l > j + 1;
                    if l_to_j { Port::new(c, 3) } else { Port::new(c, 1) }
                };
                let path = self.trace(start);
                for p in &path {
                    covered[p.crossing][(p.slot % 2) as usize] = true;
                }
                comps.push(path);
            }
        }
        // check consistency of the under-strands: every under entry must be slot 0
        for comp in &comps {
            for p in comp {
                if p.slot == 2 {
                    return Err(DiagramError::MalformedPd(format!(
                        "crossing {} is traversed against its under-strand",
                        p.crossing + 1
                    )));
                }
            }
        }
        self.install_components(comps);
        Ok(())
    }

    fn reverse_component(&mut self, ci: usize) {
        let comp = &self.components[ci];
        // the reversed strand enters each crossing through the old exit slot
        let mut reversed: Vec<Port> = comp.iter().rev().map(|p| Port::new(p.crossing, (p.slot + 2) % 4)).collect();
        reversed.rotate_right(1);
        let mut comps = self.components.clone();
        comps[ci] = reversed;
        self.install_components(comps);
    }

    /// Same diagram with the given link orientation variant.
    pub fn with_orientation(&self, orientation: Orientation) -> Self {
        let mut d = self.clone();
        if d.chain.is_some() {
            d.orient_standard(orientation);
        } else if d.components.len() >= 2 && orientation != d.orientation {
            d.reverse_component(1);
            d.orientation = orientation;
        }
        d
    }

    /// Reverses every component (knot orientation reversal).
    pub fn reversed(&self) -> Self {
        let mut d = self.clone();
        for ci in 0..d.components.len() {
            d.reverse_component(ci);
        }
        d
    }

    /// Mirror image: every crossing switched.
    pub fn mirror(&self) -> Self {
        let mut d = self.clone();
        for c in &mut d.crossings {
            c.over_even = !c.over_even;
        }
        d
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, id: FaceId) -> &Face {
        &self.faces[id]
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn unbounded_face(&self) -> FaceId {
        self.unbounded
    }

    pub fn free_loops(&self) -> usize {
        self.free_loops
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    /// The word this diagram was built from, if any.
    pub fn word_entries(&self) -> Option<&[u32]> {
        self.chain.as_ref().map(|c| c.entries.as_slice())
    }

    /// Strand paths: for each component, the ports it enters in order.
    pub fn components(&self) -> &[Vec<Port>] {
        &self.components
    }

    pub fn component_count(&self) -> usize {
        self.components.len() + self.free_loops
    }

    /// Resolves any accepted label (chain, tangle-local or generic) to a region.
    pub fn face_of(&self, label: &RegionLabel) -> Option<FaceId> {
        if let RegionLabel::Face(j) = *label {
            return (j >= 1 && (j as usize) <= self.faces.len()).then(|| j as usize - 1);
        }
        let canonical = self.chain.as_ref()?.canonical(*label)?;
        self.faces.iter().position(|f| f.label == canonical)
    }

    /// Label of the `k`-th region of twist region `tangle`.
    pub fn local_label(&self, tangle: u32, k: u32) -> Option<RegionLabel> {
        self.chain.as_ref()?.local(tangle, k)
    }

    pub fn label_of(&self, face: FaceId) -> RegionLabel {
        self.faces[face].label
    }

    pub fn color_of(&self, face: FaceId) -> Color {
        self.faces[face].color
    }

    pub fn crossing_signs(&self) -> Vec<i8> {
        self.crossings.iter().map(Crossing::sign).collect()
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| i64::from(c.sign())).sum()
    }

    /// Linking number between components 0 and 1 (`None` for knots).
    pub fn linking_number(&self) -> Option<i64> {
        if self.component_count() != 2 {
            return None;
        }
        let twice: i64 = self
            .crossings
            .iter()
            .filter(|c| c.component[0] != c.component[1])
            .map(|c| i64::from(c.sign()))
            .sum();
        Some(twice / 2)
    }

    /// Whether every component has even total linking number with the rest.
    pub fn is_proper(&self) -> bool {
        let k = self.components.len();
        let mut total = vec![0i64; k];
        for c in &self.crossings {
            let (a, b) = (c.component[0], c.component[1]);
            if a != b {
                total[a] += i64::from(c.sign());
                total[b] += i64::from(c.sign());
            }
        }
        // each crossing counts twice toward lk, so the total is 2 * lk
        total.iter().all(|t| (t / 2) % 2 == 0)
    }

    pub fn link_class(&self) -> LinkClass {
        match self.component_count() {
            1 => LinkClass::knot(),
            _ => LinkClass::link(self.linking_number().unwrap_or(0)),
        }
    }

    /// Whether the two strands of a twist region run the same way.
    pub fn tangle_direction(&self, tangle: u32) -> Option<StrandDirection> {
        let c = self.crossings.iter().find(|c| c.twist.is_some_and(|t| t.tangle == tangle))?;
        let kind = c.twist?.kind;
        // horizontal: west slots are 1, 2; vertical: north slots are 0, 1
        let first_side = |s: u8| match kind {
            TwistKind::Horizontal => s == 1 || s == 2,
            TwistKind::Vertical => s == 0 || s == 1,
        };
        Some(if first_side(c.entry[0]) == first_side(c.entry[1]) {
            StrandDirection::Parallel
        } else {
            StrandDirection::Opposite
        })
    }

    /// Signed count per twist region: `+1` for each crossing in its standard
    /// state, `-1` for each switched one.
    pub fn twist_sums(&self) -> Option<Vec<i64>> {
        let chain = self.chain.as_ref()?;
        let mut sums = vec![0i64; chain.entries.len()];
        for c in &self.crossings {
            let t = c.twist?;
            sums[t.tangle as usize - 1] += if c.over_even { 1 } else { -1 };
        }
        Some(sums)
    }

    /// Crossings switched by a region crossing change at `face`.
    pub fn face_effect(&self, face: FaceId) -> BitVec {
        let mut v = bitvec![0; self.crossings.len()];
        for &(c, _) in &self.faces[face].corners {
            let cur = v[c];
            v.set(c, !cur);
        }
        v
    }

    /// Switches the crossings marked in `effect`.
    pub fn switch_crossings(&self, effect: &BitSlice) -> Self {
        let mut d = self.clone();
        for c in effect.iter_ones() {
            d.crossings[c].over_even = !d.crossings[c].over_even;
        }
        d
    }

    pub fn region_crossing_change(&self, selection: &RegionSelection) -> Result<Self, DiagramError> {
        Ok(self.switch_crossings(&selection.effect(self)?))
    }

    /// No region meets a crossing at two corners, so no crossing can be
    /// undone by a twist.
    pub fn is_reduced(&self) -> bool {
        self.faces.iter().all(|f| {
            let mut seen: Vec<CrossingId> = f.boundary_crossings().collect();
            let len = seen.len();
            seen.sort_unstable();
            seen.dedup();
            seen.len() == len
        })
    }

    /// Along every strand, over- and under-passes alternate.
    pub fn is_alternating(&self) -> bool {
        self.components.iter().all(|comp| {
            let passes: Vec<bool> = comp.iter().map(|p| self.crossings[p.crossing].is_over_slot(p.slot)).collect();
            passes.len() < 2 || (0..passes.len()).all(|i| passes[i] != passes[(i + 1) % passes.len()])
        })
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}
