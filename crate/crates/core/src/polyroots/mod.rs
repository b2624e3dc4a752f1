//! Newton polygons, Hensel lifting, root finding in characteristic `p`, the
//! polynomial transfer `K♭ -> K` and mixed-characteristic root refinement.

mod mixed;
mod newton;
mod poly;
mod roots;
mod transfer;

pub use mixed::{mixed_root_refine, mixed_root_refine_with, MixedRoot, Stage};
pub use newton::{newton_polygon, NewtonPolygon, Segment};
pub use poly::{AnyPoly, Polynomial};
pub use roots::{charp_root, hensel_root, CharpRoot};
pub use transfer::{fw_transfer, stabilization_agreement, twisted_power_sums};

