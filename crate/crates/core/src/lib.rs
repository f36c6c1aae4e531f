//! Phase-only adjustment of a sensor array's response level at one direction.
//!
//! Starting from a weight vector `w_pre`, [`adjust`] changes only the entry
//! phases so that the normalized power response at `θc` equals a prescribed
//! level exactly. The constraint is recast as closing a polygon of fixed edge
//! lengths in the complex plane ([`polygon`]); admissible directions of each
//! edge form arcs on the circle ([`arcs`]) and are chosen to stay close to a
//! reference weight that already meets the level.
//!
//! All math is generic over [`Scalar`] (`f64` and `f32`). The `*64` / `*32`
//! aliases below name the common instantiations.

// `!(x > 0)` is used on purpose to reject NaN along with non-positive values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod adjust;
pub mod arcs;
pub mod array;
pub mod error;
pub mod polygon;
pub mod scalar;

pub use adjust::{
    adjust, adjust_with, choose_psi, compose_h, compose_rotation_problem, psi_is_feasible,
    reference_weight, select_phase, sort_edges, triangle_adjust, triangle_adjust_with,
    AdjustOptions, AdjustmentReport, AdjustmentSpec, Rotation, RotationProblem, SortPermutation,
};
pub use arcs::{chordal_distance, circular_distance, PhaseArc, PhaseArcSet};
pub use array::{
    build_preassigned_weight, degree_grid, hermitian_inner, power_response, sample_pattern,
    steering_vector, Angle, ArrayGeometry, PowerLevel, WeightVector,
};
pub use error::{Error, Result};
pub use polygon::{
    advance_chain, best_split_index, closing_phase, final_two_edges, is_polygon_feasible,
    lemma1_gap, sequential_construct, step_feasible_modulus_interval, step_phase_arcs,
    triangle_construct, ChainState, EdgeList, TriangleSolution,
};
pub use scalar::Scalar;

pub use num_complex::Complex;

pub type ArrayGeometry64 = ArrayGeometry<f64>;
pub type WeightVector64 = WeightVector<f64>;
pub type Angle64 = Angle<f64>;
pub type PowerLevel64 = PowerLevel<f64>;
pub type EdgeList64 = EdgeList<f64>;
pub type PhaseArcSet64 = PhaseArcSet<f64>;
pub type AdjustmentSpec64 = AdjustmentSpec<f64>;
pub type AdjustmentReport64 = AdjustmentReport<f64>;

pub type ArrayGeometry32 = ArrayGeometry<f32>;
pub type WeightVector32 = WeightVector<f32>;
pub type Angle32 = Angle<f32>;
pub type PowerLevel32 = PowerLevel<f32>;
pub type EdgeList32 = EdgeList<f32>;
pub type AdjustmentSpec32 = AdjustmentSpec<f32>;
