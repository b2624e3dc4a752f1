//! Elements of `K<T_0^{1/p^inf}, ..., T_n^{1/p^inf}>` and its tilt, and the
//! approximation of untilted elements by sharps of tilted ones.

mod approx;
mod decompose;
mod element;
mod verify;

pub use approx::{approximate, Approximation};
pub use decompose::{decompose, recombine, reduce_tate, sharp_element, sharp_tate};
pub use element::{divides, grlex, AnyTate, Exps, HomogeneousElement, TateElement, TateJson, TateTermJson};
pub use verify::{
    contract_sample, eval_classical, point_label, sample_coordinates, verify_contract, ContractPoint, ContractReport,
    PointReport, Val, Verdict,
};

#[cfg(test)]
mod tests;
