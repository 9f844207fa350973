//! Graded commutative algebra over prime fields, and the arithmetic of
//! projective varieties of almost minimal degree.
//!
//! The crate is organised bottom-up:
//!
//! * [`polyring`]: polynomials over F_p and term orders,
//! * [`groebner`]: Gröbner bases of ideals and submodules, elimination,
//!   quotients, saturation and syzygies,
//! * [`resolve`]: free resolutions, Betti tables, Hilbert series and
//!   deficiency modules,
//! * [`varieties`]: scrolls, cones, the Veronese surface, projections from
//!   points and the containing-scroll construction,
//! * [`amdcheck`]: classification reports and the closed-form checks,
//! * [`fixtures`]: the named example varieties with their expected data.

pub mod amdcheck;
pub mod error;
pub mod fixtures;
pub mod groebner;
pub mod linalg;
pub mod polyring;
pub mod resolve;
pub mod varieties;

pub use error::{Error, Result};
