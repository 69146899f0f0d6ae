//! Exact construction and symbolic certification of hypercomplex Appell
//! polynomial sequences with values in the Clifford algebra Cl(0,n).
//!
//! A sequence is built as `φ(x) = exp(H x_0) D_c ξ(x̲)`, where `H` is the
//! creation matrix, `D_c` a diagonal of coefficients chosen so that every
//! `φ_k` is monogenic, and `ξ(x̲) = (1, x̲, .., x̲^m)`. Classical families
//! (Bernoulli, Euler, Frobenius–Euler, Hermite) follow by applying a transfer
//! matrix `f(H)`. The [`verify`] module certifies `∂̄ φ_k = 0` and
//! `∂ φ_k = k φ_{k-1}` by exact symbolic differentiation.
//!
//! ```
//! use hyperappell::{appell, verify, Rational};
//!
//! let coeffs = appell::canonical_coeffs(2, 4, Rational::one()).unwrap();
//! assert_eq!(coeffs.get(3).to_string(), "3/8");
//! let seq = appell::build_phi(&coeffs, 4).unwrap();
//! assert!(verify::verify_sequence(&seq).all_passed());
//! ```

pub mod appell;
pub mod clifford;
mod error;
pub mod json;
pub mod matrix;
pub mod num;
pub mod poly;
pub mod verify;

pub use appell::{AppellPoly, AppellSequence, CoeffSequence, Family};
pub use clifford::{Blade, Multivector, Paravector};
pub use error::{Error, Result};
pub use matrix::TriMatrix;
pub use num::Rational;
pub use poly::CliffordPoly;
