//! Dense tensor norms and products.
//!
//! Contraction products, elementwise norms, certified bounds on the tensor
//! spectral and nuclear norms, cubic and quintic tensor powers and the
//! log-scaled Gelfand-limit iteration.

pub mod error;
pub mod fixtures;
pub mod gelfand;
pub mod io;
pub mod linalg;
pub mod nucnorm;
pub mod power;
pub mod random;
pub mod specnorm;
pub mod tensor;

pub use error::{Error, Result};
pub use tensor::{contract_product, inner, outer, ContractionPlan, ElementwiseNorm, Tensor};
