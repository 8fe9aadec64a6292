//! Kauffman bracket by a frontier sweep.
//!
//! Crossings are absorbed one at a time. The state is the way the edges on
//! the boundary of the absorbed part are paired up by arcs of the partial
//! smoothing, and each state carries the polynomial of all partial
//! smoothings that produce it. Closed loops are multiplied out as they
//! appear, so the work is linear in the crossing count for diagrams with a
//! narrow frontier such as 4-plats.

use std::collections::{BTreeMap, HashMap, VecDeque};

use crate::diagram::PlanarDiagram;
use crate::poly::LaurentPoly;

/// `-A^2 - A^-2`, the value of a closed loop.
pub fn loop_value() -> LaurentPoly {
    LaurentPoly::from_terms([(2, -1), (-2, -1)])
}

/// Pairs of slots joined by the A-smoothing of a crossing whose under-strand
/// occupies slot `u`. The A-regions are the ones swept by turning the
/// over-strand counterclockwise.
pub fn a_smoothing(u: u8) -> [(u8, u8); 2] {
    [(u % 4, (u + 1) % 4), ((u + 2) % 4, (u + 3) % 4)]
}

pub fn b_smoothing(u: u8) -> [(u8, u8); 2] {
    a_smoothing(u + 1)
}

fn absorb_order(d: &PlanarDiagram) -> Vec<usize> {
    let n = d.crossing_count();
    if d.word_entries().is_some() {
        return (0..n).collect();
    }
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(c) = queue.pop_front() {
            order.push(c);
            for p in d.crossings()[c].next {
                if !seen[p.crossing] {
                    seen[p.crossing] = true;
                    queue.push_back(p.crossing);
                }
            }
        }
    }
    order
}

type Pairing = Vec<(u32, u32)>;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Node {
    Slot(u8),
    Edge(u32),
}

/// Unnormalized bracket: the sum over states of `A^(a-b) * delta^loops`.
pub(crate) fn state_sum(d: &PlanarDiagram) -> LaurentPoly {
    let n = d.crossing_count();
    // edge ids keyed by the lexicographically smaller port
    let mut edge_id = vec![[0u32; 4]; n];
    let mut count = 0u32;
    for c in 0..n {
        for s in 0..4u8 {
            let p = d.crossings()[c].next[s as usize];
            if (p.crossing, p.slot) >= (c, s) {
                edge_id[c][s as usize] = count;
                edge_id[p.crossing][p.slot as usize] = count;
                count += 1;
            }
        }
    }
    let delta = loop_value();
    let mut absorbed = vec![false; n];
    let mut states: HashMap<Pairing, LaurentPoly> = HashMap::from([(Vec::new(), LaurentPoly::one())]);
    for c in absorb_order(d) {
        let x = &d.crossings()[c];
        let u = if x.over_even { 1 } else { 0 };
        let mut next_states: HashMap<Pairing, LaurentPoly> = HashMap::new();
        for (pairing, poly) in &states {
            for (pairs, weight) in [(a_smoothing(u), 1), (b_smoothing(u), -1)] {
                let (new_pairing, loops) = absorb(c, x.next.map(|p| (p.crossing, p.slot)), &edge_id[c], &absorbed, pairing, pairs);
                let mut term = poly.shift(weight);
                for _ in 0..loops {
                    term = &term * &delta;
                }
                let slot = next_states.entry(new_pairing).or_default();
                *slot = &*slot + &term;
            }
        }
        absorbed[c] = true;
        states = next_states;
    }
    let mut total = LaurentPoly::zero();
    for (pairing, poly) in states {
        debug_assert!(pairing.is_empty(), "frontier left open");
        total = &total + &poly;
    }
    total
}

fn absorb(
    c: usize,
    far: [(usize, u8); 4],
    edges: &[u32; 4],
    absorbed: &[bool],
    pairing: &Pairing,
    smoothing: [(u8, u8); 2],
) -> (Pairing, usize) {
    let mut links: Vec<(Node, Node)> = Vec::with_capacity(pairing.len() + 6);
    let mut open: Vec<Node> = Vec::new();
    for &(a, b) in pairing {
        links.push((Node::Edge(a), Node::Edge(b)));
    }
    for (a, b) in smoothing {
        links.push((Node::Slot(a), Node::Slot(b)));
    }
    let mut touched: Vec<u32> = Vec::new();
    for s in 0..4u8 {
        let (fc, fs) = far[s as usize];
        if fc == c {
            if s < fs {
                links.push((Node::Slot(s), Node::Slot(fs)));
            }
        } else if absorbed[fc] {
            links.push((Node::Slot(s), Node::Edge(edges[s as usize])));
            touched.push(edges[s as usize]);
        } else {
            open.push(Node::Slot(s));
        }
    }
    for &(a, b) in pairing {
        for e in [a, b] {
            if !touched.contains(&e) {
                open.push(Node::Edge(e));
            }
        }
    }
    let neighbors = |v: Node| links.iter().filter_map(move |&(a, b)| if a == v { Some(b) } else if b == v { Some(a) } else { None });
    let mut visited: BTreeMap<Node, bool> = BTreeMap::new();
    let edge_of = |v: Node| match v {
        Node::Edge(e) => e,
        Node::Slot(s) => edges[s as usize],
    };
    let mut out: Pairing = Vec::new();
    for &start in &open {
        if visited.contains_key(&start) {
            continue;
        }
        visited.insert(start, true);
        let mut prev = start;
        let mut cur = neighbors(start).next().expect("open ends have one neighbor");
        loop {
            visited.insert(cur, true);
            if open.contains(&cur) {
                break;
            }
            let next = neighbors(cur).find(|&w| w != prev).expect("interior nodes have two neighbors");
            prev = cur;
            cur = next;
        }
        let (a, b) = (edge_of(start), edge_of(cur));
        out.push((a.min(b), a.max(b)));
    }
    // whatever remains unvisited lies on closed loops
    let mut loops = 0;
    let all_nodes: Vec<Node> = links.iter().flat_map(|&(a, b)| [a, b]).collect();
    for &v in &all_nodes {
        if visited.contains_key(&v) {
            continue;
        }
        loops += 1;
        let mut stack = vec![v];
        while let Some(w) = stack.pop() {
            if visited.insert(w, true).is_some() {
                continue;
            }
            stack.extend(neighbors(w));
        }
    }
    out.sort_unstable();
    (out, loops)
}
