//! Heights, local Weil functions and their global sums on `ℙⁿ(ℚ)`.
//!
//! Weil functions use the sum norm at ∞ so that every local value is ≥ 0.

mod integral;
mod point;
mod weil;

pub use integral::{check_integral_set, IntegralityReport, PlaceMaximum};
pub use point::{PlaceSet, ProjPoint};
pub use weil::{
    counting, counting_by_places, decompose, height_by_places, height_proj, height_rational,
    height_subscheme, local_weil_table, log_coeff_norm, proximity, weil_at_representative,
    weil_hypersurface, weil_subscheme, HeightDecomposition, LocalWeil, SubschemeSpec,
};
