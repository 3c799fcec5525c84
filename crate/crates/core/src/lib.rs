//! Exact symbolic engine for the generalized quantum Euclidean group O_q(b_{m,n}),
//! its dual U_q(b_{m,n}) and their Heisenberg double D_q(b_{m,n}).

pub mod error;
pub mod expr;
pub mod hopf;
pub mod ideals;
pub mod linalg;
pub mod morphisms;
pub mod random;
pub mod report;
pub mod presets;
pub mod qfield;
pub mod rewrite;
pub mod smodules;
pub mod verify;

pub use error::{Error, Result};
pub use presets::{AlgebraParams, SOrder};
pub use qfield::{qpow, QScalar};
pub use rewrite::{Element, Letter, Monomial, Presentation, Strategy};
