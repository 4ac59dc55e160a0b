//! Finite fields GF(p^k) and cyclotomic numbers.

pub mod cyclotomic;
pub mod field;
pub(crate) mod poly;

pub use cyclotomic::{cyclotomic_poly, euler_phi, CycloAccumulator, Cyclotomic, CONDUCTOR_CAP};
pub use field::{arith, embedding, make_field, ArithOp, Embedding, Field, FieldElem, FieldSpec};
