//! Points of the adic closed unit disc: classification, evaluation,
//! rational subsets, specialization, and comparison with the tilted disc.

mod point;
mod subset;
mod tiltcheck;
mod value;

pub use point::{in_z_1_over_p, AdicPoint, PointType};
pub use subset::RationalSubset;
pub use tiltcheck::{tilt_point_check, TiltCheck, TiltPoint};
pub use value::{AdicValue, Rank2Value, Sign};

#[cfg(test)]
mod tests;
