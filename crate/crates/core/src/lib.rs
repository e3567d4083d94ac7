//! Exact decisions on reversibility and strong reversibility for elements of
//! SL(n, ℂ) given by Jordan data over the Gaussian rationals ℚ(i), with
//! constructive, verified witnesses.
//!
//! ```
//! use slrev::{is_strongly_reversible, involutive_witness, JordanSpec, GaussianRational};
//!
//! let one = GaussianRational::from_integer(1);
//! let spec = JordanSpec::from_pairs(&[(one.clone(), 2), (one, 2)]).unwrap();
//! assert!(is_strongly_reversible(&spec).strongly_reversible);
//! let w = involutive_witness(&spec).unwrap();
//! assert!(w.is_involution && w.reverses && w.determinant == GaussianRational::from_integer(1));
//! ```

pub mod canonical;
pub mod error;
pub mod matrix;
pub mod partition;
pub mod reversal;
pub mod scalar;
pub mod verify;

pub use canonical::{jordan_matrix, weyr_of, JordanBlock, JordanSpec, WeyrForm, WeyrStructure};
pub use error::{ArithmeticError, CanonicalError, MatrixError, ParseError, ReversalError, SpecError};
pub use matrix::{ExactMatrix, Matrix, PermutationMap};
pub use partition::Partition;
pub use reversal::{
    det_sign_of_involutive_reverser, involutive_witness, is_strongly_reversible, pair_blocks, sl_reverser_witness,
    DetSignPrediction, ReversibilityReport, StrongReversibilityReport, WitnessBundle,
};
pub use scalar::{parse_scalar, Field, GaussianRational};
pub use verify::{check_witness, VerificationReport};
