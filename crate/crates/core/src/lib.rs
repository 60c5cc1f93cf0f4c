//! Exact symmetric Hermite interpolation.
//!
//! Given a multiset of nodes `A` of size `d` and a symmetric polynomial `h`
//! in `n <= d` variables, the symmetric Hermite interpolant `r_A(h)` is the
//! unique symmetric polynomial of degree `<= d - n` in each variable matching
//! `h` on the Hermite conditions of `A`. This crate computes it by several
//! independent routes:
//!
//! * the normal form of `h` modulo an explicit triangular Gröbner basis
//!   ([`normal_form::hermite_normal_form`]),
//! * the expansion on the determinantal Hermite basis with derivative
//!   coordinates ([`interpolation::HermiteBasis`]),
//! * the normal form of `v_n h` modulo `f(x_1), ..., f(x_n)` divided by `v_n`,
//! * the closed Lagrange sum for distinct nodes and the Schur expansion for a
//!   single repeated node.
//!
//! All arithmetic is exact over the rationals; symbolic nodes are parameter
//! variables, so interpolants can be computed generically.
//!
//! ```
//! use symherm::{hermite_interpolant, Method, NodeMultiset, Polynomial, VariableSet};
//!
//! let vars = VariableSet::standard(2, &[] as &[&str]).unwrap();
//! let nodes = NodeMultiset::parse("0, 1, 2").unwrap();
//! let h = Polynomial::parse("x1^2 + x2^2", &vars).unwrap();
//! let r = hermite_interpolant(&h, &nodes, Method::NormalForm).unwrap();
//! assert_eq!(r, Polynomial::parse("-2 + 3*x1 + 3*x2 - x1*x2", &vars).unwrap());
//! ```

pub mod corpus;
pub mod error;
pub mod interpolation;
pub mod matrix;
pub mod nodes;
pub mod normal_form;
pub mod parse;
pub mod poly;
pub mod symmetric;
pub mod vandermonde;

pub use error::{Error, Result};
pub use interpolation::{
    basis_element, coordinates, derivative_evaluate, epsilon_sign, hermite_interpolant, lagrange_interpolant,
    taylor_interpolant, BasisElement, Coordinate, CoordinateVector, HermiteBasis, Method, Sign,
};
pub use matrix::{determinant, PolyMatrix};
pub use nodes::{
    build_f, build_f_family, build_g, enumerate_subsets, ColumnLabel, ColumnSubset, FamilyKind, IdealFamily,
    NodeMultiset, NodePolynomial, NodeValue,
};
pub use normal_form::{f_normal_form, hermite_normal_form, reduce, ReductionResult};
pub use parse::render;
pub use poly::{binomial, ratio, scalar, ArithOp, Monomial, Polynomial, Scalar, VariableSet};
pub use symmetric::{
    complete_homogeneous, complete_homogeneous_in, elementary_symmetric, schur_polynomial, vandermonde_of,
    vandermonde_poly, SchurIndex,
};
pub use vandermonde::{assemble_vdm, attach_variable_columns, delete_columns, vdm_block, vdm_det_formula};
