//! Reversibility and strong reversibility of Jordan data, the Ω reversers,
//! and witness construction.

pub mod classify;
pub mod omega;
pub mod witness;

pub use classify::{
    det_sign_of_involutive_reverser, is_strongly_reversible, pair_blocks, theorem_verdict, BlockPair, Classifier,
    DetSignPrediction, IndexedBlock, ReversibilityReport, Sign, StrongReversibilityReport,
};
pub use omega::{
    base_reverser_pair, base_reverser_single, inflate, omega_closed, omega_general, omega_general_recurrence,
    omega_inverse_law_check, omega_recurrence, omega_weyr, pair_reverser, scalar_params, toeplitz,
};
pub use witness::{
    assemble_reverser, centralizer_sample, involutive_witness, reverser_sample, sl_reverser_witness, weyr_reverser,
    ReverserChoice, WitnessBundle,
};
