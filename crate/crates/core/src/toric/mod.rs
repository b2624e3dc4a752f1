//! Cones, fans, torus-invariant divisors and their (fractional) sections,
//! and the transfer of hypersurfaces in `P^n` to the tilt.

mod cone;
mod fan;
mod linalg;
mod sections;
mod transfer;

pub use cone::{dual_cone, Cone};
pub use fan::{Fan, FanJson};
pub use linalg::IVec;
pub use sections::{frobenius_section, sections, DivisorJson, TWeilDivisor};
pub use transfer::{frobenius_pullback, hypersurface_transfer, intersection_degree, projective_sample, Transfer};
