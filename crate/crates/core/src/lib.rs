//! Exact tools for the `d_s` metric on `Z^n`: error balls, codes, lattice
//! packings and tilings, and nonexistence criteria for perfect codes.

pub mod ball;
pub mod bounds;
pub mod caps;
pub mod error;
pub mod lattice;
pub mod metric;
pub mod qp;
pub mod search;
pub mod vector;
pub mod weights;

pub use ball::{ball_volume, enumerate_ball, BallParams};
pub use caps::Caps;
pub use error::{Error, Result};
pub use lattice::{Lattice, Verdict, VerificationResult};
pub use metric::{ds_distance, Code};
pub use vector::IntVector;
