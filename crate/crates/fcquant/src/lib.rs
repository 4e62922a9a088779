//! Exact differential algebra over `F_p` on charts of curves: differential
//! operators and their p-curvature, projective connections and dormant
//! opers, the char-p Weyl star product, and the canonical construction of
//! Frobenius-constant quantizations on the punctured (co)tangent line
//! bundle.
//!
//! Start with the runnable examples (`cargo run -p fcquant --example <name>`):
//!
//! - `weyl_star` — the normal-ordered star product, commutators, the center
//! - `pcurvature` — p-curvature of matrix connections by p-fold composition
//! - `dormant_search` — enumerating dormant projective connections
//! - `classify_p1` — the unique projective connection on the projective line
//! - `symmetric_power` — order-2 to order-n projective connections
//! - `quantize_roundtrip` — chart quantization, gluing, and coefficient
//!   extraction recovering the input connection
//! - `glue_cocycle` — horizontal SL2/Sp4 cocycle gluing checks
//! - `mu2_descent` — descending to the punctured cotangent chart
//!
//! The same functionality is scriptable through the `fcquant` binary; see
//! the README for the subcommand list.

pub mod cli;
pub mod diffop;
pub mod error;
pub mod ffalg;

pub use error::{Error, Result};
