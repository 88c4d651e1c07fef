//! Universal, quantum and multiparameter Schubert polynomials with exact
//! identity verification.

pub mod check;
pub mod combinat;
pub mod error;
pub mod harness;
pub mod poly;
pub mod quantum;
pub mod residue;
pub mod schubert;
pub mod schur;
pub mod universal;

pub use check::Check;
pub use combinat::{Composition, Partition, Permutation};
pub use error::{Error, Result};
pub use poly::{det, Family, Monomial, Poly, Var};
