//! Symbolic computation in the mod-2 free algebra on generators `Q^i` and its
//! quotients: the Steenrod algebra, the excess quotient and the Dyer-Lashof
//! algebra.

pub mod cli;
pub mod duality;
pub mod error;
pub mod expr;
pub mod f2;
pub mod freealg;
pub mod limit;
pub mod nishida;
pub mod par;
pub mod quotients;
pub mod seq;
pub mod verify;

pub use error::{Error, Result};
pub use freealg::{Element, TensorElement};
pub use par::Exec;
pub use quotients::AlgebraId;
pub use seq::{Excess, Sequence};
