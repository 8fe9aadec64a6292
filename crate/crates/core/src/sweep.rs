//! Parameter sweeps that check the closed forms against search and the
//! invariant oracles. Each suite returns every counterexample it meets.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arf::{arf_formula_cmn, arf_formula_cmpn, ordered_region_sum, region_sum};
use crate::bounds::{all_bounds, best_bound, bound_general, ur_cmn, BoundError};
use crate::conway::ConwayWord;
use crate::diagram::{Orientation, PlanarDiagram, RegionSelection};
use crate::oracle::{self, MAX_ORACLE_CROSSINGS};
use crate::search::{all_trivializing, exact_ur_word, SearchOptions, SearchStatus};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    CmnExact,
    Certificates,
    ArfKnots,
    ArfWelldef,
    Table1,
    Euler,
}

impl Suite {
    pub const ALL: [Suite; 6] =
        [Suite::CmnExact, Suite::Certificates, Suite::ArfKnots, Suite::ArfWelldef, Suite::Table1, Suite::Euler];

    pub fn name(self) -> &'static str {
        match self {
            Suite::CmnExact => "cmn-exact",
            Suite::Certificates => "certificates",
            Suite::ArfKnots => "arf-knots",
            Suite::ArfWelldef => "arf-welldef",
            Suite::Table1 => "table1",
            Suite::Euler => "euler",
        }
    }

    /// `(max_crossings, param_max)` used when none is given.
    pub fn default_budget(self) -> Budget {
        let max_crossings = match self {
            Suite::CmnExact => 12,
            Suite::Certificates => 16,
            Suite::ArfKnots => 14,
            Suite::ArfWelldef => 10,
            Suite::Table1 => MAX_ORACLE_CROSSINGS as u32,
            Suite::Euler => 20,
        };
        Budget { max_crossings, param_max: 4 }
    }

    fn crossing_limit(self) -> u32 {
        match self {
            Suite::Euler => 22,
            _ => MAX_ORACLE_CROSSINGS as u32,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown suite {0:?}")]
pub struct UnknownSuite(pub String);

impl FromStr for Suite {
    type Err = UnknownSuite;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| UnknownSuite(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub max_crossings: u32,
    /// Largest free parameter for the table sweep.
    pub param_max: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SweepError {
    #[error("suite {suite} accepts at most {limit} crossings; {requested} requested")]
    OverBudget { suite: Suite, limit: u32, requested: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checked: u64,
    pub failures: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Every word with the given crossing count, as compositions in
/// lexicographic order.
pub fn compositions(total: u32) -> Vec<Vec<u32>> {
    if total == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 1..=total {
        for mut rest in compositions(total - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Every word with at most `max_crossings` crossings.
pub fn words_up_to(max_crossings: u32) -> Vec<ConwayWord> {
    (1..=max_crossings)
        .flat_map(compositions)
        .map(|v| ConwayWord::new(v).expect("compositions are positive"))
        .collect()
}

pub fn run(suite: Suite, budget: Budget) -> Result<SuiteReport, SweepError> {
    let limit = suite.crossing_limit();
    let requested = if suite == Suite::Table1 { table1_max_crossings(budget.param_max) } else { budget.max_crossings };
    if requested > limit {
        return Err(SweepError::OverBudget { suite, limit, requested });
    }
    let (checked, mut failures) = match suite {
        Suite::CmnExact => cmn_exact(budget.max_crossings),
        Suite::Certificates => certificates(budget.max_crossings),
        Suite::ArfKnots => arf_knots(budget.max_crossings),
        Suite::ArfWelldef => arf_welldef(budget.max_crossings, SumRule::Ordered),
        Suite::Table1 => table1(budget.param_max),
        Suite::Euler => euler(budget.max_crossings),
    };
    failures.sort();
    Ok(SuiteReport { suite, checked, failures })
}

fn collect<T: Sync>(items: &[T], check: impl Fn(&T) -> Vec<String> + Sync) -> (u64, Vec<String>) {
    let failures = items.par_iter().flat_map_iter(&check).collect();
    (items.len() as u64, failures)
}

fn cmn_exact(max_crossings: u32) -> (u64, Vec<String>) {
    let pairs: Vec<(u32, u32)> =
        (1..=8).flat_map(|m| (1..=8).map(move |n| (m, n))).filter(|&(m, n)| m + n <= max_crossings).collect();
    collect(&pairs, |&(m, n)| {
        let w = ConwayWord::new(vec![m, n]).expect("positive");
        let search = exact_ur_word(&w, SearchOptions::default()).expect("within budget").result;
        match ur_cmn(m, n) {
            Ok(r) if search.value == Some(r.value) => vec![],
            Ok(r) => vec![format!("{w}: closed form {} but search {:?}", r.value, search.value)],
            Err(BoundError::ImproperInput(_)) if search.status == SearchStatus::Infeasible => vec![],
            Err(e) => vec![format!("{w}: {e}, search {:?}", search.status)],
        }
    })
}

fn certificates(max_crossings: u32) -> (u64, Vec<String>) {
    let words = words_up_to(max_crossings);
    collect(&words, |w| {
        if !w.classify().admits_region_unknotting() {
            return vec![];
        }
        let mut out = Vec::new();
        if let Err(e) = bound_general(w) {
            out.push(format!("{w}: general: {e}"));
        }
        let d = PlanarDiagram::from_word(w);
        for r in all_bounds(w).unwrap_or_default() {
            let distinct = r.certificate.distinct_regions(&d).unwrap_or(usize::MAX);
            let jones = d
                .region_crossing_change(&r.certificate)
                .ok()
                .and_then(|c| oracle::jones(&c).ok())
                .is_some_and(|j| j == oracle::JonesPoly::unlink(d.component_count()));
            if distinct != r.value as usize || !jones {
                out.push(format!(
                    "{w}: {} value {} certificate [{}] regions {distinct} trivial {jones}",
                    r.family,
                    r.value,
                    r.certificate.to_label_strings().join(", ")
                ));
            }
        }
        out
    })
}

fn arf_knots(max_crossings: u32) -> (u64, Vec<String>) {
    let mut words: Vec<ConwayWord> = Vec::new();
    for total in 2..=max_crossings {
        for v in compositions(total).into_iter().filter(|v| v.len() == 2 || v.len() == 3) {
            let w = ConwayWord::new(v).expect("positive");
            if w.classify().is_knot() {
                words.push(w);
            }
        }
    }
    collect(&words, |w| {
        let d = PlanarDiagram::from_word(w);
        let truth = oracle::arf_oracle(&d).expect("knot within budget");
        let formula = match *w.entries() {
            [m, n] => arf_formula_cmn(m, n, Orientation::A),
            [m, p, n] => arf_formula_cmpn(m, p, n),
            _ => unreachable!(),
        };
        match formula {
            Ok(v) if v == truth => vec![],
            Ok(v) => vec![format!("{w}: closed form {v}, determinant {} gives {truth}", oracle::determinant(&d).unwrap_or(0))],
            Err(e) => vec![format!("{w}: {e}")],
        }
    })
}

/// Largest selection size examined by the well-definedness sweep.
pub const WELLDEF_MAX_SIZE: usize = 4;

/// How region weights are added up in the well-definedness check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SumRule {
    /// Each region weighed after the earlier ones were changed; what the
    /// library uses.
    Ordered,
    /// Every weight read off the unchanged diagram.
    Plain,
}

/// The well-definedness check under the plain sum. Expected to fail: it is
/// kept to measure how far the plain reading is off.
pub fn arf_welldef_plain(budget: Budget) -> Result<SuiteReport, SweepError> {
    let limit = Suite::ArfWelldef.crossing_limit();
    if budget.max_crossings > limit {
        return Err(SweepError::OverBudget { suite: Suite::ArfWelldef, limit, requested: budget.max_crossings });
    }
    let (checked, mut failures) = arf_welldef(budget.max_crossings, SumRule::Plain);
    failures.sort();
    Ok(SuiteReport { suite: Suite::ArfWelldef, checked, failures })
}

fn arf_welldef(max_crossings: u32, rule: SumRule) -> (u64, Vec<String>) {
    let mut cases: Vec<(ConwayWord, Orientation)> = Vec::new();
    for w in words_up_to(max_crossings) {
        let class = w.classify();
        if !class.admits_region_unknotting() {
            continue;
        }
        cases.push((w.clone(), Orientation::A));
        if !class.is_knot() {
            cases.push((w, Orientation::B));
        }
    }
    collect(&cases, |(w, o)| {
        let d = PlanarDiagram::from_word_oriented(w, *o);
        if !d.is_reduced() {
            // the rule needs a reduced diagram; only C(1) is caught here
            return Vec::new();
        }
        let selections = all_trivializing(&d, WELLDEF_MAX_SIZE).expect("within budget");
        let mut residue: Option<(i64, Vec<usize>)> = None;
        let mut out = Vec::new();
        for faces in selections {
            let sel = RegionSelection::from_faces(&d, faces.iter().copied());
            let sum = match rule {
                SumRule::Ordered => ordered_region_sum(&d, &faces),
                SumRule::Plain => region_sum(&d, &sel).expect("labels come from the diagram"),
            };
            if sum % 2 != 0 {
                out.push(format!("{w} ({o:?}): odd sum {sum} for [{}]", sel.to_label_strings().join(", ")));
                continue;
            }
            match &residue {
                None => residue = Some((sum.rem_euclid(4), faces)),
                Some((r, first)) if *r != sum.rem_euclid(4) => {
                    let first = RegionSelection::from_faces(&d, first.iter().copied());
                    out.push(format!(
                        "{w} ({o:?}): [{}] and [{}] disagree mod 4",
                        first.to_label_strings().join(", "),
                        sel.to_label_strings().join(", ")
                    ));
                }
                Some(_) => {}
            }
        }
        out
    })
}

/// Expected value of a table row.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowClaim {
    Exactly(u32),
    AtMost(u32),
}

/// One table row: fixed entries, and `None` for free parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub pattern: Vec<Option<u32>>,
    pub claim: RowClaim,
}

impl TableRow {
    fn new(pattern: &[u32], claim: RowClaim) -> Self {
        // 0 marks a free parameter
        TableRow { pattern: pattern.iter().map(|&c| (c != 0).then_some(c)).collect(), claim }
    }

    pub fn display(&self) -> String {
        let parts: Vec<String> = self
            .pattern
            .iter()
            .enumerate()
            .map(|(i, c)| c.map_or_else(|| format!("c{}", i + 1), |c| c.to_string()))
            .collect();
        format!("C({})", parts.join(","))
    }

    /// All instances with free parameters in `1..=param_max`.
    pub fn instances(&self, param_max: u32) -> Vec<ConwayWord> {
        let mut words: Vec<Vec<u32>> = vec![Vec::new()];
        for slot in &self.pattern {
            let choices: Vec<u32> = match slot {
                Some(c) => vec![*c],
                None => (1..=param_max).collect(),
            };
            words = words
                .into_iter()
                .flat_map(|w| {
                    choices.iter().map(move |&c| {
                        let mut v = w.clone();
                        v.push(c);
                        v
                    })
                })
                .collect();
        }
        words.into_iter().map(|v| ConwayWord::new(v).expect("positive")).collect()
    }
}

/// The table of region unknotting numbers for families with even entries.
pub fn table_rows() -> Vec<TableRow> {
    use RowClaim::*;
    let rows: [(&[u32], RowClaim); 22] = [
        (&[2, 0, 2, 0], Exactly(1)),
        (&[0, 2, 0, 2], Exactly(1)),
        (&[6, 0, 2], AtMost(2)),
        (&[4, 0, 2, 0, 2], AtMost(2)),
        (&[4, 0, 4], AtMost(2)),
        (&[2, 0, 4, 0, 2], AtMost(2)),
        (&[2, 0, 6], AtMost(2)),
        (&[2, 0, 2, 0, 4], AtMost(2)),
        (&[4, 0, 2], AtMost(2)),
        (&[2, 0, 2, 0, 2], AtMost(2)),
        (&[2, 0, 4], AtMost(2)),
        (&[4, 0, 2, 0, 2, 0], AtMost(2)),
        (&[6, 0, 2, 0], AtMost(2)),
        (&[2, 0, 4, 0, 2, 0], AtMost(2)),
        (&[4, 0, 4, 0], AtMost(2)),
        (&[2, 0, 2, 0, 4, 0], AtMost(2)),
        (&[2, 0, 6, 0], AtMost(2)),
        (&[2, 0, 2, 0, 2, 0], AtMost(2)),
        (&[4, 0, 2, 0], AtMost(2)),
        (&[2, 0, 2, 0, 2, 0, 2], AtMost(2)),
        (&[2, 0, 4, 0], AtMost(2)),
        (&[2, 0, 2, 0, 2, 0, 2, 0], AtMost(2)),
    ];
    rows.iter().map(|(p, c)| TableRow::new(p, *c)).collect()
}

fn table1_max_crossings(param_max: u32) -> u32 {
    table_rows()
        .iter()
        .map(|r| r.pattern.iter().map(|c| c.unwrap_or(param_max)).sum::<u32>())
        .max()
        .unwrap_or(0)
}

fn table1(param_max: u32) -> (u64, Vec<String>) {
    let cases: Vec<(TableRow, ConwayWord)> = table_rows()
        .into_iter()
        .flat_map(|row| row.instances(param_max).into_iter().map(move |w| (row.clone(), w)))
        .filter(|(_, w)| w.classify().admits_region_unknotting())
        .collect();
    collect(&cases, |(row, w)| {
        let search = match exact_ur_word(w, SearchOptions::with_max_size(3)) {
            Ok(s) => s.result,
            Err(e) => return vec![format!("{} as {w}: {e}", row.display())],
        };
        match row.claim {
            RowClaim::Exactly(v) if search.value == Some(v) => vec![],
            RowClaim::Exactly(v) => vec![format!("{} as {w}: claimed {v}, search {:?}", row.display(), search.value)],
            RowClaim::AtMost(v) => {
                let bound = best_bound(w).map(|b| b.value);
                let ok_bound = bound.as_ref().is_ok_and(|&b| b <= v);
                let ok_search = search.value.is_some_and(|s| s <= v);
                if ok_bound && ok_search {
                    vec![]
                } else {
                    vec![format!("{} as {w}: claimed <= {v}, best bound {bound:?}, search {:?}", row.display(), search.value)]
                }
            }
        }
    })
}

fn euler(max_crossings: u32) -> (u64, Vec<String>) {
    let words = words_up_to(max_crossings);
    collect(&words, |w| {
        let d = PlanarDiagram::from_word(w);
        if d.face_count() == d.crossing_count() + 2 {
            vec![]
        } else {
            vec![format!("{w}: {} regions for {} crossings", d.face_count(), d.crossing_count())]
        }
    })
}
