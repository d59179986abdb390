//! A small computer-algebra engine for the three-point identities, plus
//! randomized identity testing for the n-point vanishing determinant.

mod builtin;
mod poly;
mod prove;
mod rational;
mod sz;

pub use builtin::{
    check_builtin, check_identity, compose, Budget, BuiltinIdentity, ComposedSum, Relations,
    SymbolicTriple,
};
pub use poly::{poly_det, Monomial, SparsePolynomial, Var};
pub use prove::{prove, ProofMode, ProofTarget, ProveOptions, Verdict};
pub use rational::RationalExpression;
pub use sz::{
    builtin_program, expression_program, perturbed_vanishing_program, sz_check, vanishing_program,
    zero_program, SzReport, MAX_RESAMPLES, MERSENNE_61,
};
