//! PD code, Gauss code and SVG output.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::{DiagramError, PlanarDiagram, Port, RegionSelection, TwistKind};

/// Edge labels `1..=2n` numbered consecutively along each component, keyed
/// by `(crossing, slot)`.
fn edge_labels(d: &PlanarDiagram) -> BTreeMap<(usize, u8), u32> {
    let mut labels = BTreeMap::new();
    let mut next_label = 1u32;
    for comp in d.components() {
        let len = comp.len();
        for t in 0..len {
            let here = comp[t];
            let there = comp[(t + 1) % len];
            labels.insert((here.crossing, (here.slot + 2) % 4), next_label);
            labels.insert((there.crossing, there.slot), next_label);
            next_label += 1;
        }
    }
    labels
}

/// One `X[a,b,c,d]` line per crossing, listed counterclockwise from the
/// incoming under-strand.
pub fn pd_code(d: &PlanarDiagram) -> String {
    let labels = edge_labels(d);
    let mut out = String::new();
    for (id, c) in d.crossings().iter().enumerate() {
        let u = c.under_entry();
        let tuple: Vec<String> = (0..4).map(|k| labels[&(id, (u + k) % 4)].to_string()).collect();
        let _ = writeln!(out, "X[{}]", tuple.join(","));
    }
    for _ in 0..d.free_loops() {
        out.push_str("Loop[]\n");
    }
    out
}

/// One line per component: crossing numbers (1-based) in traversal order,
/// positive for an over-pass and negative for an under-pass.
pub fn gauss_code(d: &PlanarDiagram) -> String {
    let mut out = String::new();
    for comp in d.components() {
        let line: Vec<String> = comp
            .iter()
            .map(|p| {
                let n = p.crossing as i64 + 1;
                let v = if d.crossings()[p.crossing].is_over_slot(p.slot) { n } else { -n };
                v.to_string()
            })
            .collect();
        let _ = writeln!(out, "{}", line.join(" "));
    }
    for _ in 0..d.free_loops() {
        out.push('\n');
    }
    out
}

pub(super) fn parse_pd(text: &str) -> Result<Vec<[u32; 4]>, DiagramError> {
    let mut out = Vec::new();
    let mut rest = text;
    while let Some(start) = rest.find("X[") {
        let after = &rest[start + 2..];
        let end = after.find(']').ok_or_else(|| DiagramError::MalformedPd("unclosed X[".into()))?;
        let nums: Result<Vec<u32>, _> = after[..end].split(',').map(|t| t.trim().parse::<u32>()).collect();
        let nums = nums.map_err(|_| DiagramError::MalformedPd(format!("bad tuple X[{}]", &after[..end])))?;
        let tuple: [u32; 4] = nums
            .try_into()
            .map_err(|_| DiagramError::MalformedPd(format!("X[{}] does not have four entries", &after[..end])))?;
        out.push(tuple);
        rest = &after[end + 1..];
    }
    let leftover: String = rest.chars().filter(|c| !c.is_whitespace() && !",]PD[".contains(*c)).collect();
    if out.is_empty() && !leftover.is_empty() {
        return Err(DiagramError::MalformedPd(format!("no crossings in {text:?}")));
    }
    Ok(out)
}

#[derive(Debug, Clone, Default)]
pub struct SvgOptions {
    pub highlight: Option<RegionSelection>,
    pub title: Option<String>,
    pub show_labels: bool,
}

const UNIT: f64 = 48.0;
const ARM: f64 = 0.32;

fn slot_dir(slot: u8) -> (f64, f64) {
    match slot % 4 {
        0 => (1.0, -1.0),
        1 => (-1.0, -1.0),
        2 => (-1.0, 1.0),
        _ => (1.0, 1.0),
    }
}

fn corner_dir(corner: u8) -> (f64, f64) {
    match corner % 4 {
        0 => (0.0, -1.0),
        1 => (-1.0, 0.0),
        2 => (0.0, 1.0),
        _ => (1.0, 0.0),
    }
}

/// Crossing centers in grid units. Standard diagrams grow to the right for
/// horizontal twist regions and downward for vertical ones; other diagrams
/// are placed on a circle.
fn layout(d: &PlanarDiagram) -> Vec<(f64, f64)> {
    let n = d.crossing_count();
    let standard = d.crossings().iter().all(|c| c.twist.is_some());
    if !standard || n == 0 {
        let r = (n as f64).max(3.0) * 0.6;
        return (0..n)
            .map(|i| {
                let a = std::f64::consts::TAU * i as f64 / n.max(1) as f64;
                (r * a.cos(), r * a.sin())
            })
            .collect();
    }
    let mut pos = vec![(0.0, 0.0); n];
    // bounding box of the tangle built so far
    let (mut x0, mut y0, mut x1, mut y1) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    let mut ne_y = 0.0;
    let mut se_y = 0.0;
    let mut sw_x = 0.0;
    let mut se_x = 0.0;
    let mut first = true;
    let mut i = 0;
    while i < n {
        let t = d.crossings()[i].twist.expect("standard");
        let mut j = i;
        while j < n && d.crossings()[j].twist.map(|x| x.tangle) == Some(t.tangle) {
            j += 1;
        }
        let count = (j - i) as f64;
        match t.kind {
            TwistKind::Horizontal => {
                let yc = if first { 0.0 } else { (ne_y + se_y) / 2.0 };
                let start = if first { 0.0 } else { x1 + 1.2 };
                for (k, p) in pos[i..j].iter_mut().enumerate() {
                    *p = (start + k as f64, yc);
                }
                let end = start + count - 1.0;
                if first {
                    (x0, y0, x1, y1) = (0.0, -0.5, end + 0.5, 0.5);
                    sw_x = 0.0;
                } else {
                    x1 = end + 0.5;
                    y0 = y0.min(yc - 0.5);
                    y1 = y1.max(yc + 0.5);
                }
                ne_y = yc;
                se_y = yc;
                se_x = end;
            }
            TwistKind::Vertical => {
                let xc = (sw_x + se_x) / 2.0;
                let start = y1 + 1.2;
                for (k, p) in pos[i..j].iter_mut().enumerate() {
                    *p = (xc, start + k as f64);
                }
                let end = start + count - 1.0;
                y1 = end + 0.5;
                x0 = x0.min(xc - 0.5);
                x1 = x1.max(xc + 0.5);
                sw_x = xc;
                se_x = xc;
                se_y = end;
            }
        }
        first = false;
        i = j;
    }
    let _ = (x0, y0);
    pos
}

fn fmt_pt(p: (f64, f64)) -> String {
    format!("{:.1},{:.1}", p.0, p.1)
}

/// SVG drawing with region labels and optional highlighted regions.
pub fn svg(d: &PlanarDiagram, options: &SvgOptions) -> String {
    let grid = layout(d);
    let to_px = |p: (f64, f64)| (p.0 * UNIT, p.1 * UNIT);
    let slot_point = |c: usize, s: u8| {
        let (dx, dy) = slot_dir(s);
        let (x, y) = grid[c];
        to_px((x + dx * ARM, y + dy * ARM))
    };
    let corner_point = |c: usize, k: u8| {
        let (dx, dy) = corner_dir(k);
        let (x, y) = grid[c];
        to_px((x + dx * 0.45, y + dy * 0.45))
    };

    let mut body = String::new();
    let mut xs: Vec<f64> = vec![0.0];
    let mut ys: Vec<f64> = vec![0.0];
    for &(x, y) in &grid {
        xs.push(x * UNIT);
        ys.push(y * UNIT);
    }

    let highlighted: Vec<usize> = options
        .highlight
        .as_ref()
        .and_then(|s| s.faces(d).ok())
        .unwrap_or_default();

    // shaded regions go underneath the strands
    for &f in &highlighted {
        let label = escape(&d.label_of(f).to_string());
        for &(c, k) in &d.face(f).corners {
            let (x, y) = corner_point(c, k);
            let _ = writeln!(
                body,
                r##"<circle class="highlight" data-region="{label}" cx="{x:.1}" cy="{y:.1}" r="{:.1}" fill="#f4b942" fill-opacity="0.55"/>"##,
                UNIT * 0.3
            );
        }
    }

    // edges, each drawn once from the lower (crossing, slot) end
    for (c, x) in d.crossings().iter().enumerate() {
        for s in 0..4u8 {
            let other: Port = x.next[s as usize];
            if (other.crossing, other.slot) < (c, s) {
                continue;
            }
            let a = slot_point(c, s);
            let b = slot_point(other.crossing, other.slot);
            let dist = ((a.0 - b.0).powi(2) + (a.1 - b.1).powi(2)).sqrt();
            let reach = (dist / 2.5).max(UNIT * 0.5);
            let (adx, ady) = slot_dir(s);
            let (bdx, bdy) = slot_dir(other.slot);
            let ca = (a.0 + adx * reach, a.1 + ady * reach);
            let cb = (b.0 + bdx * reach, b.1 + bdy * reach);
            for p in [ca, cb] {
                xs.push(p.0);
                ys.push(p.1);
            }
            let _ = writeln!(
                body,
                r##"<path d="M {} C {} {} {}" fill="none" stroke="#222" stroke-width="2.5"/>"##,
                fmt_pt(a),
                fmt_pt(ca),
                fmt_pt(cb),
                fmt_pt(b)
            );
        }
    }

    // crossings: the over-strand is continuous, the under-strand has a gap
    for (c, x) in d.crossings().iter().enumerate() {
        let center = to_px(grid[c]);
        let over = if x.over_even { [0u8, 2] } else { [1, 3] };
        let under = if x.over_even { [1u8, 3] } else { [0, 2] };
        let _ = writeln!(
            body,
            r##"<path class="crossing" data-crossing="{c}" d="M {} L {}" stroke="#222" stroke-width="2.5"/>"##,
            fmt_pt(slot_point(c, over[0])),
            fmt_pt(slot_point(c, over[1]))
        );
        for s in under {
            let p = slot_point(c, s);
            let gap = (center.0 + (p.0 - center.0) * 0.45, center.1 + (p.1 - center.1) * 0.45);
            let _ = writeln!(body, r##"<path d="M {} L {}" stroke="#222" stroke-width="2.5"/>"##, fmt_pt(p), fmt_pt(gap));
        }
    }

    if options.show_labels {
        for face in d.faces() {
            let is_marked = highlighted.contains(&face.id);
            let weight = if is_marked { "bold" } else { "normal" };
            let text = escape(&face.label.to_string());
            let pos = if face.id == d.unbounded_face() || face.corners.is_empty() {
                let minx = xs.iter().cloned().fold(f64::INFINITY, f64::min);
                let miny = ys.iter().cloned().fold(f64::INFINITY, f64::min);
                (minx - UNIT * 0.2, miny - UNIT * 0.2)
            } else {
                let pts: Vec<(f64, f64)> = face.corners.iter().map(|&(c, k)| corner_point(c, k)).collect();
                let cx = pts.iter().map(|p| p.0).sum::<f64>() / pts.len() as f64;
                let cy = pts.iter().map(|p| p.1).sum::<f64>() / pts.len() as f64;
                pts.into_iter()
                    .min_by(|a, b| {
                        let da = (a.0 - cx).powi(2) + (a.1 - cy).powi(2);
                        let db = (b.0 - cx).powi(2) + (b.1 - cy).powi(2);
                        da.total_cmp(&db)
                    })
                    .unwrap_or((cx, cy))
            };
            let _ = writeln!(
                body,
                r##"<text x="{:.1}" y="{:.1}" font-family="sans-serif" font-size="11" font-weight="{weight}" text-anchor="middle" dominant-baseline="middle" fill="#3355aa">{text}</text>"##,
                pos.0, pos.1
            );
        }
    }

    let pad = UNIT;
    let minx = xs.iter().cloned().fold(f64::INFINITY, f64::min) - pad;
    let miny = ys.iter().cloned().fold(f64::INFINITY, f64::min) - pad;
    let maxx = xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max) + pad;
    let maxy = ys.iter().cloned().fold(f64::NEG_INFINITY, f64::max) + pad;
    let (w, h) = (maxx - minx, maxy - miny);

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w:.0}" height="{h:.0}" viewBox="{minx:.1} {miny:.1} {w:.1} {h:.1}">"#
    );
    if let Some(title) = &options.title {
        let _ = writeln!(out, "<title>{}</title>", escape(title));
    }
    let _ = writeln!(out, r#"<rect x="{minx:.1}" y="{miny:.1}" width="{w:.1}" height="{h:.1}" fill="white"/>"#);
    if d.crossing_count() == 0 {
        for i in 0..d.free_loops() {
            let _ = writeln!(
                out,
                r##"<circle cx="{:.1}" cy="0" r="{:.1}" fill="none" stroke="#222" stroke-width="2.5"/>"##,
                i as f64 * UNIT * 1.2,
                UNIT * 0.5
            );
        }
    }
    out.push_str(&body);
    out.push_str("</svg>\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;").replace('\'', "&apos;")
}
