//! Bounded-denominator search for rational solutions, exact zero tests,
//! nondegeneracy classification and the empirical checks built on them.

mod classify;
mod evaluate;
mod harness;

pub use classify::{classify, SolutionRecord, Status, DEFAULT_SUBSET_CAP};
pub use evaluate::{evaluate_at, EvalMode, Evaluation, Group, TermGrouping, TermValue, ZeroMode};
pub use harness::{
    distance_report, empirical_denominator, finiteness_monitor, grid_cardinality, search_box,
    translate_check, CosetReport, DistanceRow, EmpiricalCert, FinitenessReport, FinitenessRow,
    SearchSpec, TranslateVerdict, DEFAULT_MAX_POINTS, FINITENESS_NOTE,
};

#[cfg(test)]
mod tests;
