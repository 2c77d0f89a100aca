//! Numerical toolkit for oscillation and zero-interlacing of solutions of
//! -(p y')' + q y = 0 when the leading coefficient p changes sign or is
//! infinite on subintervals. The model stores 1/p, so p = infinity is just
//! 1/p = 0; problems reduce to three-term recurrences when 1/p and q are
//! supported on alternating blocks.

// `!(x > 0.0)` style guards are deliberate: they catch NaN along with the
// out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod explore;
pub mod integrate;
pub mod problem;
pub mod quad;
pub mod recurrence;
pub mod theorems;
pub mod zeros;

pub use error::{Error, Result};
pub use integrate::{
    closed_form_lemma2, conjugate_test, integrate, wronskian, InitialCondition, Trajectory,
};
pub use problem::{FunctionSpec, ProblemSpec, Segment, TurningPoint, Wave};
pub use recurrence::{atkinson_reduce, step, PolygonSolution, Recurrence};
pub use theorems::{
    reciprocal, verify_c21, verify_c22, verify_th0, verify_th00, verify_th2, verify_th3,
    VerifierReport,
};
pub use zeros::{
    classify_th0, interlace_check, locate_zeros, SspReport, Trichotomy, Verdict, ZeroEvent,
    ZeroKind, ZeroSet, ZeroTols,
};
