//! Entrywise (Hadamard) powers on rank-constrained positive semidefinite
//! cones: which powers preserve Loewner positivity, monotonicity, convexity,
//! and super/sub-additivity, with both the exact classification and the
//! numerical machinery to cross-examine it.
//!
//! The crate splits into:
//!
//! * [`linalg`] — dense symmetric matrices, a cyclic Jacobi eigensolver, PSD
//!   and Loewner-order tests, Hadamard products, numeric rank;
//! * [`powers`] — the plain/even/odd/blend power families and their formal
//!   derivatives;
//! * [`constructions`] — deterministic generators for every explicit
//!   counterexample family, each carrying a recomputable certificate;
//! * [`analysis`] — Dirichlet polynomials, the two-sided power Vandermonde,
//!   witness vectors, integral identities, quadrature, and linear solves;
//! * [`classifier`] — the exact classification sets and critical exponents;
//! * [`verifier`] — seeded samplers, property checkers with violation
//!   certificates, α scans, and empirical critical-exponent bisection.
//!
//! Every operation is a pure function on immutable values and safe to call
//! concurrently; randomized checks are keyed by (seed, index) so results do
//! not depend on evaluation order.

pub mod analysis;
pub mod classifier;
pub mod constructions;
pub mod error;
pub mod linalg;
pub mod powers;
pub mod verifier;

pub use classifier::{
    bhatia_elsner_min_n, critical_exponent, power_set, Cone, EntryDomain, LoewnerProperty,
    Membership, PowerSet,
};
pub use error::{Error, Result};
pub use linalg::{
    eigen_sym, gram, is_psd, loewner_geq, numeric_rank, EigenDecomposition, PsdVerdict,
    SymmetricMatrix, Vector, DEFAULT_TOL,
};
pub use powers::{DerivativeResult, PowerFamily, PowerMap};
pub use verifier::{
    check_property, empirical_critical_exponent, sample_psd, scan_alpha, Agreement,
    CertificateSource, CounterRng, ScanEntry, Verdict, ViolationCertificate,
};
