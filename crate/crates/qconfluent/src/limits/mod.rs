//! Limits between families (a generator sent to 0 or ∞) and continuum
//! limits q → 1 to Kummer and Hermite–Weber differential equations.

mod continuum;
mod degeneration;
mod taylor;

pub use continuum::{
    hermite_formal_series, hermite_limit_report, kummer_limit_study, kummer_limit_study_c21,
    kummer_limit_study_c21_signed, kummer_limit_study_signed, kummer_one_f1, ode_residual, ConvergenceRow,
    ConvergenceTable, HermiteReport, HermiteRow, HermiteVariant, KummerSetup, LimitODE,
};
pub use degeneration::{
    degeneration_check, degeneration_check_with, source_params, DegenerationArrow, DegenerationOutcome,
};
pub use taylor::{taylor_operator_check, TaylorReport, TaylorSetup};
