use std::fmt::Write as _;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use twobridge::arf::{arf_values, ArfProvenance, ArfValue};
use twobridge::bounds::{all_bounds, best_bound, BoundReport};
use twobridge::search::{exact_ur_word, SearchError, SearchOptions, SearchStatus, WordSearch};
use twobridge::{ConwayWord, LinkClass, LinkKind, Orientation, RegionSelection};

pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub word: ConwayWord,
    pub notation: String,
    pub crossings: u32,
    pub classification: LinkClass,
    /// `[p, q]` of the 2-bridge fraction `p/q`.
    pub fraction: [u64; 2],
    pub bounds: Vec<BoundReport>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub best_bound: Option<BoundReport>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub exact: Option<WordSearch>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub arf: Option<Vec<ArfValue>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub timings_ms: Option<Timings>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub bounds: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub exact: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub arf: Option<f64>,
}

pub struct InfoOptions {
    pub exact: bool,
    pub arf: bool,
    pub orientation: Orientation,
    pub max_size: Option<usize>,
    pub timings: bool,
}

fn ms(since: Instant) -> f64 {
    since.elapsed().as_secs_f64() * 1e3
}

pub fn build(w: &ConwayWord, opts: &InfoOptions) -> Result<Report, SearchError> {
    let classification = w.classify();
    let (p, q) = w.fraction();
    let mut timings = Timings::default();

    let t = Instant::now();
    let bounds = all_bounds(w).unwrap_or_default();
    let best = best_bound(w).ok();
    timings.bounds = ms(t);

    let exact = if opts.exact {
        let t = Instant::now();
        let options = SearchOptions { max_size: opts.max_size, ..SearchOptions::default() };
        let r = exact_ur_word(w, options)?;
        timings.exact = Some(ms(t));
        Some(r)
    } else {
        None
    };

    let arf = if opts.arf && classification.admits_region_unknotting() {
        let t = Instant::now();
        // prefer the search certificate, it is never larger than the bound's
        let selection = exact
            .as_ref()
            .filter(|e| e.result.status == SearchStatus::Found)
            .map(|e| e.result.certificate.clone())
            .or_else(|| best.as_ref().map(|b| b.certificate.clone()))
            .unwrap_or_else(RegionSelection::empty);
        let values = arf_values(w, opts.orientation, &selection);
        timings.arf = Some(ms(t));
        Some(values)
    } else {
        None
    };

    Ok(Report {
        schema: SCHEMA,
        word: w.clone(),
        notation: w.to_string(),
        crossings: w.crossing_count(),
        classification,
        fraction: [p, q],
        bounds,
        best_bound: best,
        exact,
        arf,
        timings_ms: opts.timings.then_some(timings),
    })
}

fn labels(sel: &RegionSelection) -> String {
    let l = sel.to_label_strings();
    if l.is_empty() {
        "(none)".into()
    } else {
        l.join(", ")
    }
}

pub fn render_text(r: &Report) -> String {
    let mut out = String::new();
    let class = &r.classification;
    let kind = match (class.kind, class.proper) {
        (LinkKind::Knot, _) => "knot".to_string(),
        (LinkKind::TwoComponentLink, Some(true)) => format!("proper 2-component link, lk {}", class.linking_number.unwrap_or(0)),
        (LinkKind::TwoComponentLink, _) => format!("improper 2-component link, lk {}", class.linking_number.unwrap_or(0)),
    };
    let _ = writeln!(out, "word        {}", r.notation);
    let _ = writeln!(out, "crossings   {}", r.crossings);
    let _ = writeln!(out, "class       {kind}");
    let _ = writeln!(out, "fraction    {}/{}", r.fraction[0], r.fraction[1]);
    if r.bounds.is_empty() {
        let _ = writeln!(out, "bounds      none (region changes cannot unknot an improper link)");
    } else {
        let _ = writeln!(out, "bounds");
        for b in &r.bounds {
            let kind = if b.kind == twobridge::bounds::BoundKind::Exact { "=" } else { "<=" };
            let _ = writeln!(out, "  {:<16}{kind:<2} {:<3} {}", b.family.name(), b.value, labels(&b.certificate));
        }
    }
    if let Some(b) = &r.best_bound {
        let _ = writeln!(out, "best bound  {} ({})", b.value, b.family.name());
    }
    if let Some(e) = &r.exact {
        let res = &e.result;
        match res.value {
            Some(v) => {
                let _ = writeln!(
                    out,
                    "search      {v} ({:?}, {} selections) {}",
                    e.exactness,
                    res.explored,
                    labels(&res.certificate)
                );
            }
            None => {
                let _ = writeln!(out, "search      {:?} after {} selections", res.status, res.explored);
            }
        }
    }
    if let Some(values) = &r.arf {
        for a in values {
            let orient = a.orientation.map(|o| format!(" [{o:?}]")).unwrap_or_default();
            let via = match a.provenance {
                ArfProvenance::Formula => "closed form",
                ArfProvenance::RegionSum => "region sum",
                ArfProvenance::DeterminantOracle => "determinant",
            };
            let _ = writeln!(out, "arf         {} via {via}{orient}", a.value);
        }
    }
    out
}
