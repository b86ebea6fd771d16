//! Generalized Heron polynomials: the `t`/`u` substitutions, resultant
//! pipelines and the algebraic checks around them.

pub mod fg;
pub mod forms;
pub mod alpha7;
pub mod checks;
pub mod pipelines;
pub mod tu;
pub mod witness;
