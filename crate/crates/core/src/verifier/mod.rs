//! Checks candidate sets against the definition of a distinguished set and
//! runs the property suites.

mod predicates;
mod suites;

use std::collections::HashMap;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::chevalley::{AlgebraElement, StructureTable};
use crate::distsets::{ih_sum, h_diff, y_elem, CandidateSet, Label, LabeledElement, Stage};
use crate::exact::{real_rank_of_span, GaussianRational, SparseVector};
use crate::involution::RealForm;

pub use predicates::{
    expected_singles, iop_class_predicate, matched_pair_predicate, RClass,
};
pub use suites::{run_all_suites, run_property_suite, SuiteContext, SUITE_NAMES};

const MAX_FAILURE_WITNESSES: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ClosureOutcome {
    Zero,
    Multiple { k: usize, lambda: GaussianRational },
    Fail { bracket: AlgebraElement },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosureEntry {
    pub i: usize,
    pub j: usize,
    #[serde(flatten)]
    pub outcome: ClosureOutcome,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub i: usize,
    pub j: usize,
    pub lambda: GaussianRational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenerationEntry {
    pub k: usize,
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PairCounts {
    pub zero: u64,
    pub proportional: u64,
    pub failed: u64,
    pub non_real: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosureFailure {
    pub i: usize,
    pub j: usize,
    pub left: String,
    pub right: String,
    pub bracket: AlgebraElement,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub algebra: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub form: Option<String>,
    pub stage: Stage,
    pub size: usize,
    pub labels: Vec<String>,
    pub target_rank: usize,
    pub spanning_rank: usize,
    pub verdict: bool,
    pub all_real: bool,
    pub counts: PairCounts,
    pub closure_failures: Vec<ClosureFailure>,
    pub generation_failures: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closure_table: Option<Vec<ClosureEntry>>,
    pub generation_table: Vec<GenerationEntry>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl VerificationReport {
    /// Drops the per-pair table.
    pub fn summarized(mut self) -> Self {
        self.closure_table = None;
        self
    }

    pub fn with_form(mut self, form: impl Into<String>) -> Self {
        self.form = Some(form.into());
        self
    }

    pub fn first_failure(&self) -> Option<&ClosureFailure> {
        self.closure_failures.first()
    }
}

/// Members grouped by their complex projective key, with `member = scale·key`.
struct ComplexIndex {
    map: HashMap<SparseVector, Vec<(usize, GaussianRational)>>,
}

impl ComplexIndex {
    fn new(set: &CandidateSet) -> Self {
        let mut map: HashMap<SparseVector, Vec<(usize, GaussianRational)>> = HashMap::new();
        for (k, e) in set.elements().iter().enumerate() {
            let (key, scale) = e.element.projective_key().expect("members are nonzero");
            map.entry(key).or_default().push((k, scale));
        }
        ComplexIndex { map }
    }

    /// All `(k, λ)` with `v = λ·X_k`.
    fn matches(&self, v: &AlgebraElement) -> Vec<(usize, GaussianRational)> {
        let Some((key, scale)) = v.projective_key() else {
            return Vec::new();
        };
        self.map
            .get(&key)
            .map(|ms| ms.iter().map(|(k, s)| (*k, scale.checked_div(s).expect("nonzero scale"))).collect())
            .unwrap_or_default()
    }
}

enum PairResult {
    Zero,
    Matches(Vec<(usize, GaussianRational)>),
    Fail(AlgebraElement),
}

/// Runs both directions of the definition and the spanning test.
/// `target_rank` is the real dimension the set has to span.
pub fn check_distinguished(table: &StructureTable, set: &CandidateSet, target_rank: usize) -> VerificationReport {
    let start = Instant::now();
    let n = set.len();
    let index = ComplexIndex::new(set);
    let elems = set.elements();

    let rows: Vec<Vec<PairResult>> = elems
        .par_iter()
        .map(|a| {
            elems
                .iter()
                .map(|b| {
                    let v = table.bracket(&a.element, &b.element);
                    if v.is_zero() {
                        return PairResult::Zero;
                    }
                    let m = index.matches(&v);
                    if m.is_empty() {
                        PairResult::Fail(v)
                    } else {
                        PairResult::Matches(m)
                    }
                })
                .collect()
        })
        .collect();

    let mut counts = PairCounts::default();
    let mut table_out = Vec::with_capacity(n * n);
    let mut failures = Vec::new();
    let mut first_real: Vec<Option<Witness>> = vec![None; n];
    let mut first_any: Vec<Option<Witness>> = vec![None; n];
    for (i, row) in rows.into_iter().enumerate() {
        for (j, r) in row.into_iter().enumerate() {
            let outcome = match r {
                PairResult::Zero => {
                    counts.zero += 1;
                    ClosureOutcome::Zero
                }
                PairResult::Fail(v) => {
                    counts.failed += 1;
                    if failures.len() < MAX_FAILURE_WITNESSES {
                        failures.push(ClosureFailure {
                            i,
                            j,
                            left: elems[i].label.to_string(),
                            right: elems[j].label.to_string(),
                            bracket: v.clone(),
                        });
                    }
                    ClosureOutcome::Fail { bracket: v }
                }
                PairResult::Matches(ms) => {
                    counts.proportional += 1;
                    for (k, l) in &ms {
                        if l.is_real() && first_real[*k].is_none() {
                            first_real[*k] = Some(Witness { i, j, lambda: l.clone() });
                        }
                        if first_any[*k].is_none() {
                            first_any[*k] = Some(Witness { i, j, lambda: l.clone() });
                        }
                    }
                    let (k, lambda) = ms.iter().find(|(_, l)| l.is_real()).unwrap_or(&ms[0]).clone();
                    if !lambda.is_real() {
                        counts.non_real += 1;
                    }
                    ClosureOutcome::Multiple { k, lambda }
                }
            };
            table_out.push(ClosureEntry { i, j, outcome });
        }
    }

    let generation_table: Vec<GenerationEntry> = (0..n)
        .map(|k| GenerationEntry { k, witness: first_real[k].take().or_else(|| first_any[k].take()) })
        .collect();
    let generation_failures: Vec<usize> =
        generation_table.iter().filter(|g| g.witness.is_none()).map(|g| g.k).collect();
    let gen_real = generation_table.iter().all(|g| g.witness.as_ref().is_none_or(|w| w.lambda.is_real()));
    let spanning_rank = real_rank_of_span(set.vectors()).expect("elements share the algebra dimension");
    let all_real = counts.non_real == 0 && gen_real;
    let verdict = counts.failed == 0 && generation_failures.is_empty() && all_real && spanning_rank == target_rank;

    VerificationReport {
        algebra: table.root_system().cartan_type().to_string(),
        form: None,
        stage: set.stage(),
        size: n,
        labels: elems.iter().map(|e| e.label.to_string()).collect(),
        target_rank,
        spanning_rank,
        verdict,
        all_real,
        counts,
        closure_failures: failures,
        generation_failures,
        closure_table: Some(table_out),
        generation_table,
        elapsed: start.elapsed(),
    }
}

/// Projective mutual containment.
pub fn check_equivalence(s: &CandidateSet, t: &CandidateSet) -> bool {
    s.equivalent(t)
}

/// True iff every recorded scalar is real.
pub fn check_realness(report: &VerificationReport) -> bool {
    let closure_ok = match &report.closure_table {
        Some(t) => t.iter().all(|e| match &e.outcome {
            ClosureOutcome::Multiple { lambda, .. } => lambda.is_real(),
            _ => true,
        }),
        None => report.counts.non_real == 0,
    };
    closure_ok && report.generation_table.iter().all(|g| g.witness.as_ref().is_none_or(|w| w.lambda.is_real()))
}

fn fixture(name: String, v: AlgebraElement) -> LabeledElement {
    LabeledElement::new(Label::Fixture(name), v)
}

/// `{H_α, X_α, X_{−α}}`, distinguished for the split real form.
pub fn split_chevalley_set(table: &StructureTable) -> CandidateSet {
    let rs = table.root_system();
    let mut s = CandidateSet::new(Stage::Custom);
    for a in rs.roots() {
        s.insert(fixture(format!("H({a})"), table.coroot_element(a)));
    }
    for a in rs.roots() {
        s.insert(fixture(format!("X({a})"), table.x(a)));
    }
    s
}

/// `S ∪ iS` for the Chevalley set `S`; spans `g` as a real space of
/// dimension `2·dim g`.
pub fn complex_algebra_set(table: &StructureTable) -> CandidateSet {
    let base = split_chevalley_set(table);
    let mut s = base.clone();
    for e in base.elements() {
        s.insert(fixture(format!("i{}", e.label), e.element.mul_i()));
    }
    s
}

/// `S_0` with each `Z_α` replaced by `X_α`, which does not lie in the real form.
pub fn non_real_fixture(rf: &RealForm) -> CandidateSet {
    let mut s = CandidateSet::new(Stage::Custom);
    for a in rf.root_system().roots() {
        s.insert(LabeledElement::new(Label::Hdiff(a), h_diff(rf, a)));
        s.insert(LabeledElement::new(Label::IHsum(a), ih_sum(rf, a)));
        s.insert(LabeledElement::new(Label::Y(a), y_elem(rf, a)));
        s.insert(fixture(format!("X({a})"), rf.table.x(a)));
    }
    s
}

#[cfg(test)]
mod tests;
