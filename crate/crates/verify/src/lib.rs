//! Verification engine for presentations of graded rings of modular forms.
//!
//! Generators are evaluated to q-expansions at a Sturm-bound precision, and
//! each claim is reduced to exact linear algebra over `Q(zeta_L)`:
//!
//! - span: rank of the weight-`k` monomials equals the dimension table
//! - relation: each relation evaluates to the zero series
//! - kernel: the relation ideal fills the evaluation kernel degree by degree
//! - hilbert: the claimed Hilbert series expands to the dimension table
//! - identity, integrality: single-form statements from the catalog
//!
//! [`quotient_dims`] counts the quotient of a polynomial ring by an ideal
//! directly, independent of any q-expansion.

mod batch;
mod checks;
mod engine;
mod ideal;
mod monomials;
mod report;

pub use batch::{all_tasks, case_tasks, check_tasks, full_report, identity_tasks, is_config_error, run_task, Task, INTEGRAL_FORMS};
pub use checks::{
    kernel_step, span_rank, vanishing_prec, verify_hilbert, verify_identity, verify_integrality, verify_kernel,
    verify_relations, verify_span, KernelStep, Options, DEFAULT_GUARD, DEFAULT_HORIZON, INTEGRALITY_PREC,
};
pub use engine::{coeff_vector, GenEval};
pub use ideal::{ideal_dim, lemma5_relations, lemma6_relations, quotient_dims};
pub use monomials::{monomial_counts, weighted_monomials};
pub use report::{weight_json, CheckKind, Report, Status};
