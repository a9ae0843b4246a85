//! Exact arithmetic on telescopic sequences of naturals and the free
//! numerical semigroups they generate.
//!
//! * [`seqcore`]: sequences, gcd profiles, slicing, permutations.
//! * [`oracle`]: brute-force membership, gaps, Apéry sets, minimality.
//! * [`telescopic`]: the telescopic test, z-decomposition, closed forms.
//! * [`transforms`]: the ρ / τ / π calculus and morph programs.
//! * [`minimize`]: reduction to a minimal telescopic sequence.
//! * [`construct`]: building telescopic sequences from `(d, c, z)` data.
//! * [`verify`]: closed-form versus oracle cross-checks, single or batched.

pub mod construct;
pub mod error;
pub mod exec;
pub mod minimize;
pub mod num;
pub mod oracle;
pub mod poly;
pub mod sample;
pub mod seqcore;
pub mod telescopic;
pub mod transforms;
pub mod verify;

pub use error::{Error, Result};
pub use exec::Execution;
pub use num::{Integer, Natural};
pub use poly::IntPolynomial;
pub use seqcore::{GcdProfile, Permutation, Sequence};
pub use telescopic::{Representation, Telescopic, ZDecomposition};
