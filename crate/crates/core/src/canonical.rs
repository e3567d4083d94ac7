//! Jordan and Weyr canonical forms, the permutation that carries one to the
//! other, and the block pattern of matrices commuting with a basic Weyr matrix.

use std::cmp::Ordering;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{CanonicalError, MatrixError, SpecError};
use crate::matrix::{direct_sum, permute_similarity, ExactMatrix, PermutationMap};
use crate::partition::Partition;
use crate::scalar::{Field, GaussianRational};

/// Retry budget for drawing an invertible centralizer element.
pub const SAMPLE_ATTEMPTS: usize = 64;

/// Free entries of sampled matrices are `a + bi` with `|a|, |b| ≤ ENTRY_BOUND`.
pub const ENTRY_BOUND: i64 = 3;

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct JordanBlock {
    pub eigenvalue: GaussianRational,
    pub size: usize,
}

impl JordanBlock {
    pub fn new(eigenvalue: GaussianRational, size: usize) -> Self {
        JordanBlock { eigenvalue, size }
    }
}

/// Eigenvalue ascending, then size descending.
impl Ord for JordanBlock {
    fn cmp(&self, other: &Self) -> Ordering {
        self.eigenvalue
            .cmp(&other.eigenvalue)
            .then_with(|| other.size.cmp(&self.size))
    }
}

impl PartialOrd for JordanBlock {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for JordanBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "J({}, {})", self.eigenvalue, self.size)
    }
}

/// Jordan data of an invertible matrix, kept in canonical order so that
/// similar matrices have equal specs.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(try_from = "RawSpec")]
pub struct JordanSpec {
    blocks: Vec<JordanBlock>,
}

#[derive(Deserialize)]
struct RawSpec {
    blocks: Vec<JordanBlock>,
}

impl TryFrom<RawSpec> for JordanSpec {
    type Error = SpecError;

    fn try_from(raw: RawSpec) -> Result<Self, SpecError> {
        JordanSpec::new(raw.blocks)
    }
}

impl JordanSpec {
    pub fn new(mut blocks: Vec<JordanBlock>) -> Result<Self, SpecError> {
        if blocks.is_empty() {
            return Err(SpecError::Empty);
        }
        for (index, b) in blocks.iter().enumerate() {
            if b.eigenvalue.is_zero() {
                return Err(SpecError::ZeroEigenvalue { index });
            }
            if b.size == 0 {
                return Err(SpecError::ZeroSize { index });
            }
        }
        blocks.sort();
        Ok(JordanSpec { blocks })
    }

    /// Convenience for tests and examples: `(eigenvalue, size)` pairs.
    pub fn from_pairs(pairs: &[(GaussianRational, usize)]) -> Result<Self, SpecError> {
        JordanSpec::new(pairs.iter().map(|(l, s)| JordanBlock::new(l.clone(), *s)).collect())
    }

    pub fn blocks(&self) -> &[JordanBlock] {
        &self.blocks
    }

    pub fn n(&self) -> usize {
        self.blocks.iter().map(|b| b.size).sum()
    }

    /// Distinct eigenvalues with their Jordan structures, in spec order.
    pub fn eigenvalue_groups(&self) -> Vec<(GaussianRational, Partition)> {
        let mut out: Vec<(GaussianRational, Vec<usize>)> = Vec::new();
        for b in &self.blocks {
            match out.last_mut() {
                Some((l, sizes)) if *l == b.eigenvalue => sizes.push(b.size),
                _ => out.push((b.eigenvalue.clone(), vec![b.size])),
            }
        }
        out.into_iter()
            .map(|(l, sizes)| (l, Partition::new(sizes).expect("canonical order keeps sizes decreasing")))
            .collect()
    }

    /// Jordan structure of `λ`; empty when `λ` is not an eigenvalue.
    pub fn jordan_structure(&self, lambda: &GaussianRational) -> Partition {
        let sizes = self.blocks.iter().filter(|b| &b.eigenvalue == lambda).map(|b| b.size).collect();
        Partition::new(sizes).expect("canonical order keeps sizes decreasing")
    }

    pub fn is_semisimple(&self) -> bool {
        self.blocks.iter().all(|b| b.size == 1)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("spec serialization cannot fail")
    }
}

impl fmt::Display for JordanSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks: Vec<String> = self.blocks.iter().map(|b| format!("({},{})", b.eigenvalue, b.size)).collect();
        write!(f, "[{}]", blocks.join(","))
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct WeyrStructure {
    pub eigenvalue: GaussianRational,
    pub sizes: Partition,
}

impl WeyrStructure {
    pub fn new(eigenvalue: GaussianRational, sizes: Partition) -> Self {
        WeyrStructure { eigenvalue, sizes }
    }

    pub fn n(&self) -> usize {
        self.sizes.total()
    }

    /// Starting row of each diagonal block.
    pub fn offsets(&self) -> Vec<usize> {
        let mut acc = 0;
        self.sizes
            .parts()
            .iter()
            .map(|&s| {
                let o = acc;
                acc += s;
                o
            })
            .collect()
    }
}

pub fn jordan_block(lambda: &GaussianRational, m: usize) -> ExactMatrix {
    ExactMatrix::from_fn(m, m, |i, j| {
        if i == j {
            lambda.clone()
        } else if j == i + 1 {
            GaussianRational::one()
        } else {
            GaussianRational::zero()
        }
    })
}

pub fn jordan_matrix(spec: &JordanSpec) -> ExactMatrix {
    let blocks: Vec<ExactMatrix> = spec.blocks().iter().map(|b| jordan_block(&b.eigenvalue, b.size)).collect();
    direct_sum(&blocks).expect("square blocks always sum")
}

pub fn basic_weyr_matrix(w: &WeyrStructure) -> ExactMatrix {
    let sizes = w.sizes.parts();
    let offsets = w.offsets();
    let n = w.n();
    let mut data = vec![vec![GaussianRational::zero(); n]; n];
    for (k, &s) in sizes.iter().enumerate() {
        for d in 0..s {
            data[offsets[k] + d][offsets[k] + d] = w.eigenvalue.clone();
        }
        if k + 1 < sizes.len() {
            for d in 0..sizes[k + 1] {
                data[offsets[k] + d][offsets[k + 1] + d] = GaussianRational::one();
            }
        }
    }
    ExactMatrix::from_rows(data).expect("rows have equal length")
}

/// `𝒥_λ(I_k, m)`: an `m × m` grid of `k × k` blocks with `λI` on the diagonal
/// and `I` on the superdiagonal.
pub fn homogeneous_weyr(lambda: &GaussianRational, k: usize, m: usize) -> ExactMatrix {
    ExactMatrix::from_fn(k * m, k * m, |i, j| {
        let (bi, ri) = (i / k, i % k);
        let (bj, rj) = (j / k, j % k);
        if ri != rj {
            GaussianRational::zero()
        } else if bi == bj {
            lambda.clone()
        } else if bj == bi + 1 {
            GaussianRational::one()
        } else {
            GaussianRational::zero()
        }
    })
}

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct WeyrForm {
    pub matrix: ExactMatrix,
    pub structures: Vec<WeyrStructure>,
    /// Sends a Jordan basis index to its Weyr basis index.
    pub permutation: PermutationMap,
}

/// Duality permutation for one eigenvalue. Cells of the Young diagram of
/// `jordan` are numbered row-major in the Jordan basis and column-major in
/// the Weyr basis.
pub fn duality_permutation(jordan: &Partition) -> PermutationMap {
    let parts = jordan.parts();
    let weyr = jordan.conjugate();
    let mut col_start = Vec::with_capacity(weyr.len());
    let mut acc = 0;
    for &m in weyr.parts() {
        col_start.push(acc);
        acc += m;
    }
    let mut images = Vec::with_capacity(jordan.total());
    for (b, &len) in parts.iter().enumerate() {
        images.extend(col_start[..len].iter().map(|c| c + b));
    }
    PermutationMap::new(images).expect("Young diagram cells biject")
}

pub fn weyr_of(spec: &JordanSpec) -> Result<WeyrForm, CanonicalError> {
    let mut structures = Vec::new();
    let mut weyr_blocks = Vec::new();
    let mut images = Vec::with_capacity(spec.n());
    for (lambda, jordan) in spec.eigenvalue_groups() {
        let base = images.len();
        let local = duality_permutation(&jordan);
        images.extend(local.images().iter().map(|&k| base + k));
        let w = WeyrStructure::new(lambda, jordan.conjugate());
        weyr_blocks.push(basic_weyr_matrix(&w));
        structures.push(w);
    }
    let permutation = PermutationMap::new(images)?;
    let matrix = direct_sum(&weyr_blocks)?;
    let image = permute_similarity(&permutation, &jordan_matrix(spec))?;
    if image != matrix {
        return Err(CanonicalError::DualityMismatch(image.first_difference(&matrix)));
    }
    Ok(WeyrForm { matrix, structures, permutation })
}

/// True iff `k` has the block pattern of the centralizer of the basic Weyr
/// matrix with structure `w`: block upper triangular, and for `i ≤ j < r`
/// each `K_{i,j}` starts with `K_{i+1,j+1}` stacked on a zero block.
pub fn centralizer_pattern_check(w: &WeyrStructure, k: &ExactMatrix) -> Result<bool, MatrixError> {
    let n = w.n();
    if k.shape() != (n, n) {
        return Err(MatrixError::DimensionMismatch { op: "centralizer_pattern_check", left: (n, n), right: k.shape() });
    }
    let sizes = w.sizes.parts();
    let offsets = w.offsets();
    let r = sizes.len();
    // Entry (a, b) of block K_{i,j}.
    let at = |i: usize, j: usize, a: usize, b: usize| k.get(offsets[i] + a, offsets[j] + b);
    for i in 0..r {
        for j in 0..i {
            if (0..sizes[i]).any(|a| (0..sizes[j]).any(|b| !at(i, j, a, b).is_zero())) {
                return Ok(false);
            }
        }
    }
    for i in 0..r.saturating_sub(1) {
        for j in i..r - 1 {
            for b in 0..sizes[j + 1] {
                for a in 0..sizes[i] {
                    let ok = if a < sizes[i + 1] {
                        at(i, j, a, b) == at(i + 1, j + 1, a, b)
                    } else {
                        at(i, j, a, b).is_zero()
                    };
                    if !ok {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

fn random_entry(rng: &mut ChaCha8Rng) -> GaussianRational {
    let a = rng.gen_range(-ENTRY_BOUND..=ENTRY_BOUND);
    let b = rng.gen_range(-ENTRY_BOUND..=ENTRY_BOUND);
    GaussianRational::from_parts(a, 1, b, 1)
}

fn pattern_fill(w: &WeyrStructure, rng: &mut ChaCha8Rng) -> ExactMatrix {
    let sizes = w.sizes.parts();
    let offsets = w.offsets();
    let n = w.n();
    let r = sizes.len();
    let mut data = vec![vec![GaussianRational::zero(); n]; n];
    // Block columns right to left, so K_{i+1,j+1} exists when K_{i,j} needs it.
    for j in (0..r).rev() {
        for i in (0..=j).rev() {
            for c in 0..sizes[j] {
                for rr in 0..sizes[i] {
                    let inherited = j + 1 < r && c < sizes[j + 1];
                    let value = if !inherited {
                        random_entry(rng)
                    } else if rr < sizes[i + 1] {
                        data[offsets[i + 1] + rr][offsets[j + 1] + c].clone()
                    } else {
                        GaussianRational::zero()
                    };
                    data[offsets[i] + rr][offsets[j] + c] = value;
                }
            }
        }
    }
    ExactMatrix::from_rows(data).expect("rows have equal length")
}

/// An invertible matrix commuting with `basic_weyr_matrix(w)`, deterministic
/// in `seed`.
pub fn sample_centralizer(w: &WeyrStructure, seed: u64) -> Result<ExactMatrix, CanonicalError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..SAMPLE_ATTEMPTS {
        let k = pattern_fill(w, &mut rng);
        if !k.det()?.is_zero() {
            return Ok(k);
        }
    }
    Err(CanonicalError::SamplingExhausted(SAMPLE_ATTEMPTS))
}
