//! Reparametrization of the orbit by piecewise translations.

pub mod piecewise;
pub mod swap;
pub mod tower;
pub mod zaction;

pub use piecewise::{
    apply_piecewise, compose, odometer, odometer_inverse, Located, Piece, PieceId, PieceSource,
    PiecewiseMap, DEFAULT_SCAN_CAP,
};
pub use swap::{build_swap, swap_counterexample};
pub use tower::{
    alpha_elem, audit_tower, build_tower, default_neighborhoods, dyadic_action, orbit_of_origin,
    orbit_point, InvolutionTower,
};
pub use zaction::{audit_zaction, build_zaction, ZActionMap};
