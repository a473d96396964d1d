//! Combinatorics and tangent-space computations for bigraded
//! Cartwright-Sturmfels Hilbert schemes of `k[x_1..x_m, y_1..y_n]`.
//!
//! Points of interest are the radical Borel-fixed ideals `J_A` attached to
//! antichains `A` of the grid `[1, m] x [1, n]`. The crate computes the
//! tangent space at `J_A` in two independent ways (a closed-form weight
//! count and exact linear algebra), the dimension of the Hilbert scheme via
//! the cutting recursion, and everything needed to cross-check them.

pub mod cli;
pub mod dimensions;
pub mod grid_poset;
pub mod monomial_ideals;
pub mod tangent_combinatorics;
pub mod tangent_oracle;

pub use dimensions::{cs_recognize, hilbert_scheme_dimension, linear_part_offset, DimensionTrace};
pub use grid_poset::{cut, cutting_threshold, enumerate_antichains, order_ideal, Antichain, GridShape};
pub use monomial_ideals::{hilbert_table, ideal_of_antichain, HilbertTable, SquareFreeIdeal};
pub use tangent_combinatorics::{tangent_dimension_formula, TangentReport};
pub use tangent_oracle::{tangent_dimension_oracle, tangent_hom_space};
