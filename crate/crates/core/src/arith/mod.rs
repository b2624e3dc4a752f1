//! Precision-tracked arithmetic in `K°` and its tilt `K♭°`.

mod bridge;
mod config;
mod digits;
mod element;
mod serial;
mod text;
mod tilt;
mod untilt;
mod valexp;

pub use bridge::{lift_mod_uniformizer, pth_root_mod, reduce_mod_uniformizer};
pub use config::{is_prime, FieldConfig};
pub use element::{AnyElement, Element, Kind};
pub use serial::{ElementJson, ExpJson, TermJson};
pub use text::{parse_element_text, ParsedText};
pub use tilt::TiltElement;
pub use untilt::UntiltElement;
pub use valexp::ValExp;

