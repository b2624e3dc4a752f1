//! The sharp map `K♭° -> K°`, Teichmüller lifts, Witt vectors and `θ`.

mod sharp;
mod witt;

pub use sharp::{plan as sharp_plan, sharp, sharp_const, SharpPlan};
pub use witt::{theta, WittVector, MAX_WITT_LENGTH};
