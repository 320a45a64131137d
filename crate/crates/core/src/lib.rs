//! Exact decision procedures for Lie simplicity of `[L, L]` where `L` is the
//! Leavitt path algebra of a finite directed graph.
//!
//! Coefficients live in a prime field chosen at runtime through
//! [`FieldSpec`]; the generic layer works over any [`PrimeField`].

pub mod analysis;
pub mod cohn;
pub mod error;
pub mod field;
pub mod graph;
pub mod lie;
pub mod linalg;

pub use analysis::{
    cycle_vertices, find_cycle_without_exit, is_purely_infinite_simple, is_simple_lpa,
    is_trivial_lpa, reachability, Cycle, ReachabilityClosure, SimplicityReport, Witness,
};
pub use cohn::{
    lemma_commutator_witness, verify_witness, CohnAlgebra, CohnElement, CohnTerm,
    CommutatorIdentity, PathWord, WitnessCheck,
};
pub use error::{CohnError, FieldError, GraphError, LinalgError, VerdictError};
pub use field::{FieldSpec, FieldVector, Fp, Gf, PrimeField, Rational, Rationals, Scalar};
pub use graph::{
    family, parse_graph, serialize_graph, EdgeId, Family, Graph, GraphBuilder, VertexId,
};
pub use lie::{
    kp_consistency, leavitt_closed_form, lie_simplicity, lie_simplicity_via_k0,
    matrix_lie_simplicity, vertex_combination_in_commutator, KpReport, LieVerdict, Reason, Route,
    Status,
};
pub use linalg::{IntMatrix, K0Presentation, PointedIso};

/// Cohn algebra over ℚ.
pub type RationalCohn<'g> = CohnAlgebra<'g, Rationals>;
/// Cohn algebra over GF(p).
pub type ModularCohn<'g> = CohnAlgebra<'g, Gf>;
/// Element of the Cohn algebra over ℚ.
pub type RationalCohnElement = CohnElement<Rational>;
/// Element of the Cohn algebra over GF(p).
pub type ModularCohnElement = CohnElement<Fp>;
