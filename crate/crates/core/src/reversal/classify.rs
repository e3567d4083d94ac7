use std::fmt;

use serde::Serialize;

use crate::canonical::{JordanBlock, JordanSpec};
use crate::error::ReversalError;
use crate::partition::Partition;
use crate::scalar::{Field, GaussianRational};

/// A block together with its position in the spec's block list.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct IndexedBlock {
    pub index: usize,
    pub block: JordanBlock,
}

/// `J(λ, r)` matched with `J(λ⁻¹, r)`; `first` precedes `second` in the spec.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct BlockPair {
    pub first: IndexedBlock,
    pub second: IndexedBlock,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ReversibilityReport {
    pub reversible: bool,
    pub pairs: Vec<BlockPair>,
    pub singletons: Vec<IndexedBlock>,
    pub unmatched: Vec<IndexedBlock>,
    /// The last unmatched block in spec order.
    pub failure_witness: Option<JordanBlock>,
}

/// Matches each `J(λ, r)` with λ ≠ ±1 to an unused `J(λ⁻¹, r)`, scanning in
/// spec order. ±1 blocks are singletons.
pub fn pair_blocks(spec: &JordanSpec) -> ReversibilityReport {
    let mut pairs = Vec::new();
    let mut singletons = Vec::new();
    let mut pending: Vec<IndexedBlock> = Vec::new();
    for (index, block) in spec.blocks().iter().enumerate() {
        let here = IndexedBlock { index, block: block.clone() };
        if block.eigenvalue.is_plus_minus_one() {
            singletons.push(here);
            continue;
        }
        let inverse = block.eigenvalue.inv().expect("spec eigenvalues are nonzero");
        let partner = pending
            .iter()
            .position(|p| p.block.size == block.size && p.block.eigenvalue == inverse);
        match partner {
            Some(k) => {
                let first = pending.remove(k);
                pairs.push(BlockPair { first, second: here });
            }
            None => pending.push(here),
        }
    }
    let failure_witness = pending.last().map(|p| p.block.clone());
    ReversibilityReport { reversible: pending.is_empty(), pairs, singletons, unmatched: pending, failure_witness }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct StrongReversibilityReport {
    pub reversible: bool,
    pub strongly_reversible: bool,
    /// Algebraic multiplicities of +1 and -1.
    pub p: usize,
    pub q: usize,
    /// Jordan structures of +1 and -1.
    pub dp: Partition,
    pub dq: Partition,
    /// Some ±1 Jordan block has odd size.
    pub condition1: bool,
    /// `e2_weight(dp) + e2_weight(dq) + (n - p - q)/2`.
    pub condition2_value: usize,
    pub condition2: bool,
}

pub fn is_strongly_reversible(spec: &JordanSpec) -> StrongReversibilityReport {
    let reversible = pair_blocks(spec).reversible;
    let dp = spec.jordan_structure(&GaussianRational::one());
    let dq = spec.jordan_structure(&-GaussianRational::one());
    let (p, q) = (dp.total(), dq.total());
    let (sp, sq) = (dp.derive_sets(), dq.derive_sets());
    let condition1 = !sp.o_set.is_empty() || !sq.o_set.is_empty();
    let condition2_value = sp.e2_weight + sq.e2_weight + (spec.n() - p - q) / 2;
    let condition2 = condition2_value.is_multiple_of(2);
    StrongReversibilityReport {
        reversible,
        strongly_reversible: reversible && (condition1 || condition2),
        p,
        q,
        dp,
        dq,
        condition1,
        condition2_value,
        condition2,
    }
}

/// Shape of a strong-reversibility decision, so alternative classifiers can be
/// plugged into the verification suite.
pub type Classifier = fn(&JordanSpec) -> bool;

pub fn theorem_verdict(spec: &JordanSpec) -> bool {
    is_strongly_reversible(spec).strongly_reversible
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_parity(odd: bool) -> Sign {
        if odd {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn to_scalar(self) -> GaussianRational {
        match self {
            Sign::Plus => GaussianRational::one(),
            Sign::Minus => -GaussianRational::one(),
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

/// Determinant shared by all involutive reversers of a reversible spec.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum DetSignPrediction {
    Forced(Sign),
    /// Both signs occur.
    Free,
}

impl fmt::Display for DetSignPrediction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DetSignPrediction::Forced(s) => write!(f, "{s}"),
            DetSignPrediction::Free => f.write_str("free (±1)"),
        }
    }
}

pub fn det_sign_of_involutive_reverser(spec: &JordanSpec) -> Result<DetSignPrediction, ReversalError> {
    let pairing = pair_blocks(spec);
    if let Some(block) = pairing.failure_witness {
        return Err(ReversalError::NotReversible(Box::new(block)));
    }
    let report = is_strongly_reversible(spec);
    if report.condition1 {
        return Ok(DetSignPrediction::Free);
    }
    Ok(DetSignPrediction::Forced(Sign::from_parity(report.condition2_value % 2 == 1)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> GaussianRational {
        GaussianRational::from_integer(n)
    }

    fn half() -> GaussianRational {
        GaussianRational::from_ratio(1, 2)
    }

    fn spec(pairs: &[(GaussianRational, usize)]) -> JordanSpec {
        JordanSpec::from_pairs(pairs).unwrap()
    }

    #[test]
    fn pairing_examples() {
        let r = pair_blocks(&spec(&[(q(2), 2), (half(), 2)]));
        assert!(r.reversible);
        assert_eq!(r.pairs.len(), 1);

        let r = pair_blocks(&spec(&[(q(2), 2), (half(), 3)]));
        assert!(!r.reversible);
        assert_eq!(r.failure_witness, Some(JordanBlock::new(q(2), 2)));
        assert_eq!(r.unmatched.len(), 2);

        let r = pair_blocks(&spec(&[(q(-1), 3), (q(1), 1)]));
        assert!(r.reversible);
        assert_eq!(r.singletons.len(), 2);
        assert!(r.pairs.is_empty());

        let i = GaussianRational::i();
        let r = pair_blocks(&spec(&[(i.clone(), 1), (-i.clone(), 1), (i.clone(), 1)]));
        assert!(!r.reversible);
        assert_eq!(r.pairs.len(), 1);
    }

    #[test]
    fn theorem_examples() {
        let r = is_strongly_reversible(&spec(&[(q(1), 2), (q(1), 2), (q(1), 2)]));
        assert!(r.reversible && !r.strongly_reversible);
        assert_eq!(r.condition2_value, 3);
        assert_eq!((r.p, r.q), (6, 0));

        let r = is_strongly_reversible(&spec(&[(q(1), 4), (q(1), 4), (q(1), 2)]));
        assert!(!r.strongly_reversible);
        assert_eq!(r.condition2_value, 1);

        let r = is_strongly_reversible(&spec(&[(q(1), 2), (q(1), 2)]));
        assert!(r.strongly_reversible);
        assert_eq!(r.condition2_value, 2);

        let r = is_strongly_reversible(&spec(&[(q(2), 1), (half(), 1)]));
        assert!(r.reversible && !r.strongly_reversible);
        assert_eq!(r.condition2_value, 1);

        let r = is_strongly_reversible(&spec(&[(q(-1), 3)]));
        assert!(r.condition1 && r.strongly_reversible);

        let r = is_strongly_reversible(&spec(&[(q(2), 2), (half(), 3)]));
        assert!(!r.reversible && !r.strongly_reversible);
    }

    #[test]
    fn det_sign_examples() {
        let forced_minus = DetSignPrediction::Forced(Sign::Minus);
        assert_eq!(det_sign_of_involutive_reverser(&spec(&[(q(1), 2), (q(1), 2), (q(1), 2)])).unwrap(), forced_minus);
        assert_eq!(det_sign_of_involutive_reverser(&spec(&[(q(2), 1), (half(), 1)])).unwrap(), forced_minus);
        assert_eq!(det_sign_of_involutive_reverser(&spec(&[(q(1), 3)])).unwrap(), DetSignPrediction::Free);
        assert_eq!(
            det_sign_of_involutive_reverser(&spec(&[(q(1), 4)])).unwrap(),
            DetSignPrediction::Forced(Sign::Plus)
        );
        assert!(matches!(
            det_sign_of_involutive_reverser(&spec(&[(q(3), 1)])),
            Err(ReversalError::NotReversible(_))
        ));
        assert_eq!(forced_minus.to_string(), "-1");
    }
}
