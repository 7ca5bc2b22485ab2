//! Exact arithmetic for relative Brauer groups of genus-one curves `Z³ = f(X, Y)`
//! attached to binary cubic forms, over `ℚ` and `ℚ(ω)`.

pub mod error;
pub mod field;
pub mod brauer;
pub mod clifford;
pub mod elliptic;
pub mod forms;
pub mod numeric;

pub use error::{Error, Result};
pub use field::Field;
