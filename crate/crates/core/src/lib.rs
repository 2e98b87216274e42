//! Topological-order criteria for graph states.
//!
//! Bitstring machinery over GF(2) ([`gf2`]), graph families ([`graphs`]),
//! the Z/Z⊥/W/C set analysis and distance search ([`analysis`]), symplectic
//! stabilizer algebra including the 3D toric graph code ([`stabilizer`]),
//! and a dense state-vector oracle ([`oracle`]) used to cross-check them.

pub mod analysis;
pub mod checks;
pub mod error;
pub mod gf2;
pub mod graphs;
pub mod oracle;
pub mod scalar;
pub mod stabilizer;

pub use analysis::{
    classical_min_distance, d_max, family_scan, graph_basis_inner_analytic, ldpc_embed, power_law_fit, sigma,
    verify_codewords, CSetResult, Caps, ClassicalCode, DmaxResult, DmaxStrategy, SetQuery,
};
pub use error::{Error, Result};
pub use gf2::{BitString, EchelonBasis, Gf2Matrix};
pub use graphs::{gen_family, line_graph, odd_degree_vertices, s_vector, FamilySpec, Graph};
pub use oracle::{brute_force_qecc_check, build_graph_state, graph_basis_state, pauli_matrix_element, StateVector};
pub use scalar::Scalar;
pub use stabilizer::{
    gen_3d_code, graph_stabilizers, normalizer_min_weight, verify_3d_code, PauliOperator, StabilizerGroup,
};

pub type StateVector64 = StateVector<f64>;
pub type StateVector32 = StateVector<f32>;
pub type PowerFit64 = analysis::PowerFit<f64>;
pub type PowerFit32 = analysis::PowerFit<f32>;
