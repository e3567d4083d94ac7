//! Exact witness checks, spec generators, independent oracles, and the
//! suites that tie classifiers to constructions.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::MatrixError;
use crate::matrix::ExactMatrix;
use crate::scalar::{Field, GaussianRational};

pub mod generator;
pub mod oracles;
pub mod suite;

pub use generator::{GeneratorMode, SpecGenerator};
pub use suite::{
    cross_path_check, det_lemma_check, duality_check, exhaustive_theorem_check, exhaustive_theorem_check_with,
    mutant_classifier, omega_law_check, run_selftest, semisimple_cross_check, semisimple_cross_check_with,
    weyr_det_argument_check, FailureRecord, SelftestReport, Summary,
};

/// First entry at which a check failed.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Residual {
    pub check: String,
    pub row: usize,
    pub col: usize,
}

impl fmt::Display for Residual {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails first at entry ({}, {})", self.check, self.row + 1, self.col + 1)
    }
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct VerificationReport {
    /// `gAg⁻¹ = A⁻¹` (checked as `gA = A⁻¹g` with `det g ≠ 0`).
    pub reverses: bool,
    pub involution: bool,
    pub determinant: GaussianRational,
    pub in_special: bool,
    pub residuals: Vec<Residual>,
}

impl VerificationReport {
    pub fn all_pass(&self) -> bool {
        self.reverses && self.involution && self.in_special
    }
}

/// Caches `A⁻¹` so many candidate reversers of one `A` can be checked.
#[derive(Clone, Debug)]
pub struct WitnessChecker {
    a: ExactMatrix,
    a_inv: ExactMatrix,
}

impl WitnessChecker {
    pub fn new(a: &ExactMatrix) -> Result<Self, MatrixError> {
        if !a.is_square() {
            return Err(MatrixError::NotSquare { op: "check_witness", rows: a.rows(), cols: a.cols() });
        }
        Ok(WitnessChecker { a: a.clone(), a_inv: a.inverse()? })
    }

    pub fn a(&self) -> &ExactMatrix {
        &self.a
    }

    pub fn check(&self, g: &ExactMatrix) -> Result<VerificationReport, MatrixError> {
        if g.shape() != self.a.shape() {
            return Err(MatrixError::DimensionMismatch { op: "check_witness", left: self.a.shape(), right: g.shape() });
        }
        let mut residuals = Vec::new();
        let determinant = g.det()?;
        let ga = g.mul(&self.a)?;
        let a_inv_g = self.a_inv.mul(g)?;
        let mismatch = ga.first_difference(&a_inv_g);
        if let Some((row, col)) = mismatch {
            residuals.push(Residual { check: "gA = A⁻¹g".into(), row, col });
        }
        if determinant.is_zero() {
            residuals.push(Residual { check: "g invertible".into(), row: 0, col: 0 });
        }
        let square = g.mul(g)?;
        let identity = ExactMatrix::identity(g.rows());
        let involution_mismatch = square.first_difference(&identity);
        if let Some((row, col)) = involution_mismatch {
            residuals.push(Residual { check: "g² = I".into(), row, col });
        }
        Ok(VerificationReport {
            reverses: mismatch.is_none() && !determinant.is_zero(),
            involution: involution_mismatch.is_none(),
            in_special: determinant.is_one(),
            determinant,
            residuals,
        })
    }
}

pub fn check_witness(a: &ExactMatrix, g: &ExactMatrix) -> Result<VerificationReport, MatrixError> {
    WitnessChecker::new(a)?.check(g)
}
