//! Order-2 forward-mode jets and the expression trees they evaluate.

mod field;
mod jet2;
pub mod sexpr;

pub use field::{sum, JetCache, Node, ScalarField};
pub use jet2::{seed_point, Jet2, GUARD_BAND};
