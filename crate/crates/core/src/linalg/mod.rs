//! Exact linear algebra over ℤ, ℚ and GF(p).

mod intmat;
mod k0;
mod snf;
mod span;

pub use intmat::IntMatrix;
pub use k0::{
    class_order, cokernel, cokernel_with_class, is_p_divisible, pointed_isomorphism, ElementOrder,
    K0Presentation, PointedIso, DEFAULT_MAX_GROUP_ORDER,
};
pub use snf::{smith_normal_form, SmithDecomposition};
pub use span::{
    non_membership_certificate, rank, solve_columns, span_membership, span_membership_in,
    NonMembership,
};
