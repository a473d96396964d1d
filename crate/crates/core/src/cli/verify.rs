//! Per-antichain consistency checks and sweep summaries.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::dimensions::hilbert_scheme_dimension;
use crate::grid_poset::{self, Antichain};
use crate::monomial_ideals::{
    antichain_of_ideal, hilbert_table, ideal_intersection, ideal_of_antichain, ideal_sum, is_borel_fixed_radical,
    lift_cut_ideals, linear_ideal, HilbertTable,
};
use crate::tangent_combinatorics::{tangent_dimension_formula, FineWeight};
use crate::tangent_oracle::{tangent_dimension_oracle, tangent_hom_space, weight_decomposition};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    FormulaVsOracle,
    MultiplicityFree,
    CuttingAdditivity,
    IntersectionIdentity,
    ExactSequence,
    BorelRoundTrip,
    RecursionVsOracle,
}

impl Check {
    pub const ALL: [Check; 7] = [
        Check::FormulaVsOracle,
        Check::MultiplicityFree,
        Check::CuttingAdditivity,
        Check::IntersectionIdentity,
        Check::ExactSequence,
        Check::BorelRoundTrip,
        Check::RecursionVsOracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::FormulaVsOracle => "formula_vs_oracle",
            Check::MultiplicityFree => "multiplicity_free",
            Check::CuttingAdditivity => "cutting_additivity",
            Check::IntersectionIdentity => "intersection_identity",
            Check::ExactSequence => "exact_sequence",
            Check::BorelRoundTrip => "borel_round_trip",
            Check::RecursionVsOracle => "recursion_vs_oracle",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub check: Check,
    /// `None` on success, otherwise what went wrong.
    pub failure: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub antichain: Antichain,
    pub check: Check,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CheckCount {
    pub checked: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifySummary {
    pub grids: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub cases: usize,
    /// The sampled antichains in draw order; only present for random runs.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sampled: Option<Vec<Antichain>>,
    pub checks: BTreeMap<Check, CheckCount>,
    pub counterexamples: Vec<Counterexample>,
    pub consistent: bool,
}

fn outcome(check: Check, ok: bool, detail: impl FnOnce() -> String) -> CheckOutcome {
    CheckOutcome { check, failure: (!ok).then(detail) }
}

fn table_mismatch(lhs: &HilbertTable, rhs: &HilbertTable) -> Option<String> {
    for (d1, (l, r)) in lhs.rows.iter().zip(&rhs.rows).enumerate() {
        if let Some(d2) = (0..l.len()).find(|&d2| l[d2] != r[d2]) {
            return Some(format!("bidegree ({d1},{d2}): {} vs {}", l[d2], r[d2]));
        }
    }
    None
}

/// Runs every applicable check on one antichain. Checks tied to the cut are
/// skipped when the cutting threshold is 0 or `A` is empty. The exact
/// sequence is compared on `[0, D1] x [0, D2]`, by default `[0, m] x [0, n]`.
pub fn check_case(antichain: &Antichain, hilbert_box: Option<(usize, usize)>) -> Vec<CheckOutcome> {
    let shape = antichain.shape();
    let (d1, d2) = hilbert_box.unwrap_or((shape.m(), shape.n()));
    let formula = tangent_dimension_formula(antichain);
    let basis = tangent_hom_space(antichain);
    let oracle = basis.dimension();
    let (recursion, trace) = hilbert_scheme_dimension(antichain);
    let ideal = ideal_of_antichain(antichain);
    let mut out = Vec::new();

    out.push(outcome(Check::FormulaVsOracle, formula.total == oracle, || {
        format!("formula {} vs oracle {oracle}", formula.total)
    }));

    let multiplicity = match weight_decomposition(&basis) {
        Err(e) => Some(e.to_string()),
        Ok(dims) => {
            let oracle_weights: BTreeSet<FineWeight> = dims.keys().cloned().collect();
            let formula_weights: BTreeSet<FineWeight> = formula.weights(antichain).into_iter().collect();
            if let Some((w, d)) = dims.iter().find(|&(_, &d)| d != 1) {
                Some(format!("weight {w} has multiplicity {d}"))
            } else if let Some(w) = oracle_weights.symmetric_difference(&formula_weights).next() {
                let side = if oracle_weights.contains(w) { "oracle" } else { "formula" };
                Some(format!("weight {w} only in the {side} decomposition"))
            } else {
                None
            }
        }
    };
    out.push(CheckOutcome { check: Check::MultiplicityFree, failure: multiplicity });

    if let Ok(cut) = grid_poset::cut(antichain) {
        let (aq, bq) = cut.cut_point;
        let left = tangent_dimension_oracle(&cut.left_antichain);
        let right = tangent_dimension_oracle(&cut.right_antichain);
        let offset = aq * (shape.m() - aq) + bq * (shape.n() - bq);
        out.push(outcome(Check::CuttingAdditivity, oracle == left + right + offset, || {
            format!("oracle {oracle} vs {left} + {right} + {offset}")
        }));

        let (j1, j2) = lift_cut_ideals(antichain).expect("cut exists");
        let meet = ideal_intersection(&j1, &j2).expect("same ring");
        let join = ideal_sum(&j1, &j2).expect("same ring");
        let linear = linear_ideal(shape, aq, bq);
        let failure = if meet != ideal {
            Some(format!("J_1 meet J_2 = {meet}, expected {ideal}"))
        } else if join != linear {
            Some(format!("J_1 + J_2 = {join}, expected {linear}"))
        } else {
            None
        };
        out.push(CheckOutcome { check: Check::IntersectionIdentity, failure });

        // 0 -> S/(J_1 meet J_2) -> S/J_1 + S/J_2 -> S/(J_1 + J_2) -> 0
        let mut lhs = hilbert_table(&ideal, d1, d2);
        let mut rhs = hilbert_table(&j1, d1, d2);
        let h2 = hilbert_table(&j2, d1, d2);
        let h12 = hilbert_table(&join, d1, d2);
        for a in 0..=d1 {
            for b in 0..=d2 {
                lhs.rows[a][b] += h12.rows[a][b];
                rhs.rows[a][b] += h2.rows[a][b];
            }
        }
        let mismatch = table_mismatch(&lhs, &rhs);
        out.push(CheckOutcome { check: Check::ExactSequence, failure: mismatch });
    }

    let round_trip = if !is_borel_fixed_radical(&ideal) {
        Some(format!("{ideal} fails the exchange test"))
    } else {
        match antichain_of_ideal(&ideal) {
            Ok(back) if &back == antichain => None,
            Ok(back) => Some(format!("round trip gave {back}")),
            Err(e) => Some(e.to_string()),
        }
    };
    out.push(CheckOutcome { check: Check::BorelRoundTrip, failure: round_trip });

    out.push(outcome(Check::RecursionVsOracle, recursion == oracle && trace.is_consistent(), || {
        format!("recursion {recursion} vs oracle {oracle} (trace consistent: {})", trace.is_consistent())
    }));
    out
}

/// Checks every case, in parallel on the current rayon pool, and merges the
/// results in case order.
pub fn summarize(cases: &[Antichain], hilbert_box: Option<(usize, usize)>, grids: Vec<String>) -> VerifySummary {
    let results: Vec<Vec<CheckOutcome>> = cases.par_iter().map(|a| check_case(a, hilbert_box)).collect();
    let mut checks: BTreeMap<Check, CheckCount> = Check::ALL.iter().map(|&c| (c, CheckCount::default())).collect();
    let mut counterexamples = Vec::new();
    for (antichain, outcomes) in cases.iter().zip(results) {
        for o in outcomes {
            let count = checks.entry(o.check).or_default();
            count.checked += 1;
            if let Some(detail) = o.failure {
                count.failed += 1;
                counterexamples.push(Counterexample { antichain: antichain.clone(), check: o.check, detail });
            }
        }
    }
    counterexamples.sort_by(|a, b| (&a.antichain, a.check).cmp(&(&b.antichain, b.check)));
    counterexamples.dedup();
    VerifySummary {
        grids,
        seed: None,
        cases: cases.len(),
        sampled: None,
        checks,
        consistent: counterexamples.is_empty(),
        counterexamples,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid_poset::{enumerate_antichains, GridShape};

    #[test]
    fn every_check_passes_on_small_grids() {
        for m in 1..=3 {
            for n in 1..=3 {
                for a in enumerate_antichains(GridShape::new(m, n).unwrap()) {
                    for o in check_case(&a, None) {
                        assert_eq!(o.failure, None, "{a}: {}", o.check);
                    }
                }
            }
        }
    }

    #[test]
    fn cut_checks_only_when_threshold_is_positive() {
        let shape = GridShape::new(2, 2).unwrap();
        let single = Antichain::new(shape, vec![(1, 1)]).unwrap();
        let checks: Vec<Check> = check_case(&single, None).iter().map(|o| o.check).collect();
        assert_eq!(
            checks,
            vec![Check::FormulaVsOracle, Check::MultiplicityFree, Check::BorelRoundTrip, Check::RecursionVsOracle]
        );
        let cut = Antichain::new(shape, vec![(2, 1)]).unwrap();
        assert_eq!(check_case(&cut, None).len(), 7);
    }

    #[test]
    fn sweep_of_one_by_one() {
        let cases: Vec<Antichain> = enumerate_antichains(GridShape::new(1, 1).unwrap()).collect();
        let s = summarize(&cases, None, vec!["1x1".into()]);
        assert_eq!(s.cases, 2);
        assert!(s.consistent);
        assert_eq!(s.checks[&Check::FormulaVsOracle], CheckCount { checked: 2, failed: 0 });
        let json = serde_json::to_value(&s).unwrap();
        assert_eq!(json["checks"]["borel_round_trip"]["checked"], 2);
        assert!(json.get("sampled").is_none());
    }
}
