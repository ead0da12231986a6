//! Explicit isomorphisms of metabolic forms and words in the group of
//! lagrangian-preserving automorphisms.

pub mod fundmet;
pub mod metabolic;
pub mod ru;

pub use fundmet::{stabilize, stable_lagrangian_iso, StableIso};
pub use metabolic::{
    diagonal_lagrangians, double_to_hyperbolic, is_hyperbolic_with_witness, metabolic_basis, neg_isomorphism,
    DiagonalLagrangians, MetabolicBasis,
};
pub use ru::{all_plane_flips, plane_flip, ru_wall_witness, wall_target, RUGenerator, RUWord};
