//! Strong-reversibility verdicts for special classes of Jordan data, written
//! directly from the per-case lemmas. They share no code with the general
//! classifier beyond the spec type.

use crate::canonical::JordanSpec;
use crate::scalar::{Field, GaussianRational};

fn one() -> GaussianRational {
    GaussianRational::one()
}

/// Every non-±1 block `(λ, r)` occurs as often as `(λ⁻¹, r)`.
fn balanced(spec: &JordanSpec) -> bool {
    let blocks = spec.blocks();
    blocks.iter().filter(|b| !b.eigenvalue.is_plus_minus_one()).all(|b| {
        let inverse = b.eigenvalue.inv().expect("spec eigenvalues are nonzero");
        let here = blocks.iter().filter(|c| c.size == b.size && c.eigenvalue == b.eigenvalue).count();
        let there = blocks.iter().filter(|c| c.size == b.size && c.eigenvalue == inverse).count();
        here == there
    })
}

/// Diagonalizable: strongly reversible iff reversible and either ±1 is an
/// eigenvalue or `n ≢ 2 (mod 4)`.
pub fn semisimple_verdict(spec: &JordanSpec) -> Option<bool> {
    if !spec.blocks().iter().all(|b| b.size == 1) {
        return None;
    }
    let has_pm_one = spec.blocks().iter().any(|b| b.eigenvalue.is_plus_minus_one());
    Some(balanced(spec) && (has_pm_one || spec.n() % 4 != 2))
}

/// Single eigenvalue μ = ±1: strongly reversible iff some block is odd or the
/// number of blocks of size ≡ 2 (mod 4) is even.
fn single_sign_verdict(spec: &JordanSpec, mu: &GaussianRational) -> Option<bool> {
    if !spec.blocks().iter().all(|b| &b.eigenvalue == mu) {
        return None;
    }
    let odd = spec.blocks().iter().any(|b| b.size % 2 == 1);
    let twos = spec.blocks().iter().filter(|b| b.size % 4 == 2).count();
    Some(odd || twos % 2 == 0)
}

pub fn unipotent_verdict(spec: &JordanSpec) -> Option<bool> {
    single_sign_verdict(spec, &one())
}

pub fn minus_one_verdict(spec: &JordanSpec) -> Option<bool> {
    single_sign_verdict(spec, &-one())
}

/// `J(λ, r) ⊕ J(λ⁻¹, r)` with λ ≠ ±1: strongly reversible iff `r` is even.
pub fn single_pair_verdict(spec: &JordanSpec) -> Option<bool> {
    match spec.blocks() {
        [a, b] if !a.eigenvalue.is_plus_minus_one()
            && a.size == b.size
            && Some(&b.eigenvalue) == a.eigenvalue.inv().ok().as_ref() =>
        {
            Some(a.size % 2 == 0)
        }
        _ => None,
    }
}

type Oracle = fn(&JordanSpec) -> Option<bool>;

/// Every oracle whose domain contains `spec`, with its verdict.
pub fn lemma_verdicts(spec: &JordanSpec) -> Vec<(&'static str, bool)> {
    let oracles: [(&'static str, Oracle); 4] = [
        ("semisimple", semisimple_verdict),
        ("unipotent", unipotent_verdict),
        ("eigenvalue -1", minus_one_verdict),
        ("single pair", single_pair_verdict),
    ];
    oracles.iter().filter_map(|(name, f)| f(spec).map(|v| (*name, v))).collect()
}
