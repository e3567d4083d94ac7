use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::canonical::{JordanBlock, JordanSpec};
use crate::error::SpecError;
use crate::partition::Partition;
use crate::scalar::{Field, GaussianRational};

pub const MAX_POOL: usize = 8;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GeneratorMode {
    /// Every multiset of (eigenvalue, size) with total size in `1..=max_n`.
    Exhaustive,
    Random { seed: u64, count: usize },
}

#[derive(Clone, PartialEq, Debug)]
pub struct SpecGenerator {
    max_n: usize,
    pool: Vec<GaussianRational>,
    mode: GeneratorMode,
    max_block: usize,
}

/// `{1, -1, 2, 1/2, i, -i}`.
pub fn default_pool() -> Vec<GaussianRational> {
    let i = GaussianRational::i();
    vec![
        GaussianRational::from_integer(1),
        GaussianRational::from_integer(-1),
        GaussianRational::from_integer(2),
        GaussianRational::from_ratio(1, 2),
        i.clone(),
        -i,
    ]
}

impl SpecGenerator {
    pub fn new(max_n: usize, pool: Vec<GaussianRational>, mode: GeneratorMode) -> Result<Self, SpecError> {
        if max_n == 0 {
            return Err(SpecError::Pool("max_n must be positive".into()));
        }
        if pool.is_empty() || pool.len() > MAX_POOL {
            return Err(SpecError::Pool(format!("pool needs 1 to {MAX_POOL} eigenvalues, got {}", pool.len())));
        }
        for (k, l) in pool.iter().enumerate() {
            if l.is_zero() {
                return Err(SpecError::Pool("0 is not an eigenvalue of an invertible matrix".into()));
            }
            if pool[..k].contains(l) {
                return Err(SpecError::Pool(format!("{l} appears twice")));
            }
            let inv = l.inv().expect("checked nonzero");
            if !pool.contains(&inv) {
                return Err(SpecError::Pool(format!("not closed under inversion: {l} present, {inv} missing")));
            }
        }
        Ok(SpecGenerator { max_n, pool, mode, max_block: max_n })
    }

    pub fn exhaustive(max_n: usize, pool: Vec<GaussianRational>) -> Result<Self, SpecError> {
        SpecGenerator::new(max_n, pool, GeneratorMode::Exhaustive)
    }

    /// Caps individual block sizes; `1` restricts to semisimple specs.
    pub fn with_max_block(mut self, max_block: usize) -> Self {
        self.max_block = max_block.max(1);
        self
    }

    pub fn max_n(&self) -> usize {
        self.max_n
    }

    pub fn pool(&self) -> &[GaussianRational] {
        &self.pool
    }

    pub fn specs(&self) -> Vec<JordanSpec> {
        match self.mode {
            GeneratorMode::Exhaustive => self.enumerate(),
            GeneratorMode::Random { seed, count } => self.random(seed, count),
        }
    }

    fn items(&self) -> Vec<JordanBlock> {
        let top = self.max_block.min(self.max_n);
        self.pool
            .iter()
            .flat_map(|l| (1..=top).map(move |s| JordanBlock::new(l.clone(), s)))
            .collect()
    }

    fn enumerate(&self) -> Vec<JordanSpec> {
        fn walk(items: &[JordanBlock], start: usize, budget: usize, current: &mut Vec<JordanBlock>, out: &mut Vec<JordanSpec>) {
            for k in start..items.len() {
                if items[k].size > budget {
                    continue;
                }
                current.push(items[k].clone());
                out.push(JordanSpec::new(current.clone()).expect("pool eigenvalues are nonzero"));
                walk(items, k, budget - items[k].size, current, out);
                current.pop();
            }
        }
        let mut out = Vec::new();
        walk(&self.items(), 0, self.max_n, &mut Vec::new(), &mut out);
        out
    }

    fn random(&self, seed: u64, count: usize) -> Vec<JordanSpec> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..count)
            .map(|_| {
                let mut remaining = rng.gen_range(1..=self.max_n);
                let mut blocks = Vec::new();
                while remaining > 0 {
                    let size = rng.gen_range(1..=remaining.min(self.max_block));
                    let l = self.pool[rng.gen_range(0..self.pool.len())].clone();
                    blocks.push(JordanBlock::new(l, size));
                    remaining -= size;
                }
                JordanSpec::new(blocks).expect("pool eigenvalues are nonzero")
            })
            .collect()
    }
}

/// A nonzero `a/b + (c/d)i` with small numerators and denominators.
pub fn random_scalar(rng: &mut ChaCha8Rng) -> GaussianRational {
    loop {
        let z = GaussianRational::from_parts(
            rng.gen_range(-5..=5),
            rng.gen_range(1..=4),
            rng.gen_range(-5..=5),
            rng.gen_range(1..=4),
        );
        if !z.is_zero() {
            return z;
        }
    }
}

/// A random partition of a random total in `1..=max_total`.
pub fn random_partition(rng: &mut ChaCha8Rng, max_total: usize) -> Partition {
    let mut remaining = rng.gen_range(1..=max_total);
    let mut parts = Vec::new();
    while remaining > 0 {
        let p = rng.gen_range(1..=remaining);
        parts.push(p);
        remaining -= p;
    }
    Partition::from_unsorted(parts).expect("parts are positive")
}
