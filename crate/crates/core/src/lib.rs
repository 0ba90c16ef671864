//! Finite-dimensional quantization of symplectic torus automorphisms.
//!
//! The crate builds the unitary `U_{g,N}` quantizing a cat map `g` at
//! Planck constant `1/N`, evaluates the fixed-point trace formula, checks
//! the theta-function picture numerically and measures spectral and
//! ergodicity statistics.
//!
//! ```
//! use catmap::{quantize, Conventions, IntegerSymplecticMatrix};
//!
//! let conv = Conventions::default();
//! let q = quantize(&IntegerSymplecticMatrix::cat(), 8, &conv).unwrap();
//! assert!(q.unitarity_residual <= 1e-10);
//! assert!(q.egorov_residual <= 1e-10);
//! ```

pub mod cli;
pub mod conventions;
pub mod error;
pub mod heisenberg;
pub mod metaplectic;
pub mod operator;
pub mod report;
pub mod spectral;
pub mod symplectic;
pub mod theta;
pub mod trace;

pub use conventions::{Conventions, ShearPhase};
pub use error::{Error, Result};
pub use heisenberg::{heisenberg_multiply, splitting_phase, weyl_operator, HeisenbergElement, WeylOperator};
pub use metaplectic::{quantize, quantize_s, quantize_t, quantize_with, Construction, QuantizedMap};
pub use operator::{CMatrix, UnitaryOperator};
pub use spectral::{eig_unitary, ErgodicityReport, SpectralReport};
pub use symplectic::{
    arithmetic_period, coset_representatives, lifted_period, generator_decomposition, is_integer_symplectic, theta_group_member,
    CosetSystem, IntMatrix, IntegerSymplecticMatrix,
};
pub use trace::{gauss_sum, trace_compare, trace_theorem_e, TraceReport};
