//! Integer partitions, their conjugates, and the part-size sets that drive the
//! strong-reversibility conditions.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::SpecError;

/// A weakly decreasing sequence of positive parts. The empty partition (of 0)
/// is allowed; it describes an eigenvalue that does not occur.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Parts must already be weakly decreasing and positive.
    pub fn new(parts: Vec<usize>) -> Result<Self, SpecError> {
        if parts.contains(&0) {
            return Err(SpecError::Partition { parts, reason: "parts must be positive".into() });
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(SpecError::Partition { parts, reason: "parts must be weakly decreasing".into() });
        }
        Ok(Partition { parts })
    }

    /// Sorts the parts first. Zero parts are still rejected.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Result<Self, SpecError> {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(parts)
    }

    /// From the `[d₁^t₁, …, d_s^t_s]` view. Sizes may come in any order but
    /// must be distinct with positive multiplicity.
    pub fn from_multiplicities(pairs: &[(usize, usize)]) -> Result<Self, SpecError> {
        let mut sizes: Vec<usize> = pairs.iter().map(|p| p.0).collect();
        sizes.sort_unstable();
        if sizes.windows(2).any(|w| w[0] == w[1]) || pairs.iter().any(|p| p.1 == 0) {
            let parts = pairs.iter().map(|p| p.0).collect();
            return Err(SpecError::Partition { parts, reason: "sizes must be distinct with positive multiplicity".into() });
        }
        let parts = pairs.iter().flat_map(|&(d, t)| std::iter::repeat_n(d, t)).collect();
        Partition::from_unsorted(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn largest(&self) -> usize {
        self.parts.first().copied().unwrap_or(0)
    }

    /// `(dᵢ, tᵢ)` with `d₁ > d₂ > … > d_s`.
    pub fn multiplicities(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &d in &self.parts {
            match out.last_mut() {
                Some((last, t)) if *last == d => *t += 1,
                _ => out.push((d, 1)),
            }
        }
        out
    }

    /// The conjugate partition, from the multiplicity view: with running
    /// totals `Tₖ = t₁ + … + tₖ` the result is
    /// `[T_s^{d_s}, T_{s-1}^{d_{s-1} - d_s}, …, T₁^{d₁ - d₂}]`.
    pub fn conjugate(&self) -> Partition {
        let mult = self.multiplicities();
        let mut totals = Vec::with_capacity(mult.len());
        let mut running = 0;
        for &(_, t) in &mult {
            running += t;
            totals.push(running);
        }
        let mut parts = Vec::with_capacity(self.largest());
        for k in (0..mult.len()).rev() {
            let next = if k + 1 < mult.len() { mult[k + 1].0 } else { 0 };
            let repeat = mult[k].0 - next;
            parts.extend(std::iter::repeat_n(totals[k], repeat));
        }
        Partition { parts }
    }

    /// The conjugate by transposing the Young diagram: part `j` counts the
    /// rows of length at least `j`.
    pub fn transpose_diagram(&self) -> Partition {
        let parts = (1..=self.largest())
            .map(|j| self.parts.iter().filter(|&&n| n >= j).count())
            .collect();
        Partition { parts }
    }

    pub fn derive_sets(&self) -> PartitionSets {
        let mult = self.multiplicities();
        let n_set: BTreeSet<usize> = mult.iter().map(|m| m.0).collect();
        let e_set: BTreeSet<usize> = n_set.iter().copied().filter(|d| d % 2 == 0).collect();
        let o_set = n_set.difference(&e_set).copied().collect();
        let e2_set: BTreeSet<usize> = e_set.iter().copied().filter(|d| d % 4 == 2).collect();
        let e2_weight = mult.iter().filter(|m| e2_set.contains(&m.0)).map(|m| m.1).sum();
        PartitionSets { n_set, e_set, o_set, e2_set, e2_weight }
    }

    /// Left-justified box rows, one per part.
    pub fn young_ascii(&self) -> String {
        self.parts
            .iter()
            .map(|&n| "□".repeat(n))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.parts.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let parts = Vec::<usize>::deserialize(deserializer)?;
        Partition::new(parts).map_err(serde::de::Error::custom)
    }
}

/// Part-size sets of a partition: all sizes, even sizes, odd sizes, and even
/// sizes ≡ 2 (mod 4). `e2_weight` counts parts in `e2_set` with multiplicity.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct PartitionSets {
    pub n_set: BTreeSet<usize>,
    pub e_set: BTreeSet<usize>,
    pub o_set: BTreeSet<usize>,
    pub e2_set: BTreeSet<usize>,
    pub e2_weight: usize,
}

/// Exact binomial coefficient; zero when `k` is outside `0..=n`.
pub fn binomial(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}
