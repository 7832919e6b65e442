//! Executable models of Stone-space dynamics under the dyadic group.
//!
//! The crate is `no_std` (it needs `alloc`) and is organised bottom-up:
//!
//! * [`finset`]: finite subsets of the positive integers and the dyadic group
//!   `⊕Z₂` acting on them by symmetric difference.
//! * [`space`]: a decidable feasible pair `(T, O)` with an admissible set `R`,
//!   and the points `f_k` of the big Cantor space.
//! * [`clopen`]: symbolic clopen sets with exact pointwise membership, images
//!   under the generators, splitting and witness search.
//! * [`reparam`]: lazily built piecewise translations, the swap construction,
//!   the commuting involution tower and the induced `Z`-action.
//! * [`groupoid`]: the convolution algebra of the orbit relation restricted
//!   to a finite window, together with the normalizer decomposition.
//! * [`fermion`]: the `e`/`u` matrix tower, Boolean saturation and the
//!   finite-dimensional approximation audits.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod audit;
pub mod clopen;
pub mod error;
pub mod fermion;
pub mod finset;
pub mod groupoid;
pub mod linalg;
pub mod reparam;
pub mod scalar;
pub mod space;

pub use error::{Error, Result};
pub use finset::{dyadic_act, enum_finset, symdiff, DyadicElem, FinSet};
