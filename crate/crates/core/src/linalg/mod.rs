//! Exact matrices with rank and permanent kernels.

pub mod echelon;
pub mod matrix;
pub mod permanent;
pub mod rank;

pub use echelon::{IntegerEchelon, ModularEchelon};
pub use matrix::ExactMatrix;
pub use permanent::{permanent, PermanentMethod};
pub use rank::{determinant, random_prime, rank_exact, rank_field, rank_mod_p};
