//! Polynomial vector fields: word basis functions, Lie brackets, truncated
//! word series, flows of the unperturbed fields and normal forms.
//!
//! Every identity here is checked on exact polynomial coefficients, so
//! agreement is limited only by floating-point rounding.

mod equivariance;
mod field;
mod normal;
mod poly;
mod series;
mod spec;

pub use equivariance::{equivariance_check, EquivarianceReport};
pub use field::Field;
pub use normal::{normal_form, NormalForm};
pub use poly::{MultiPoly, PolyMap};
pub use series::{collapse, dsw_bracket_series, eval_series, f2_f3_reference, lie_bracket, word_basis, WordBasis};
pub use spec::{EigenReport, GKind, ProblemSpec, HYPOTHESIS_TOL};
