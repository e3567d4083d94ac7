use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::canonical::{
    basic_weyr_matrix, centralizer_pattern_check, homogeneous_weyr, jordan_block, jordan_matrix, sample_centralizer,
    weyr_of, JordanSpec, WeyrStructure,
};
use crate::error::ReversalError;
use crate::matrix::{direct_sum, permute_similarity, ExactMatrix};
use crate::partition::Partition;
use crate::reversal::{
    assemble_reverser, base_reverser_pair, centralizer_sample, det_sign_of_involutive_reverser, involutive_witness,
    is_strongly_reversible, omega_closed, omega_general, omega_inverse_law_check, omega_recurrence, omega_weyr,
    pair_blocks, scalar_params, theorem_verdict, Classifier, DetSignPrediction, ReverserChoice, ReversibilityReport,
    Sign,
};
use crate::scalar::{Field, GaussianRational};
use crate::verify::generator::{default_pool, random_partition, random_scalar, GeneratorMode, SpecGenerator};
use crate::verify::oracles::{lemma_verdicts, semisimple_verdict};
use crate::verify::{check_witness, WitnessChecker};

/// Sign patterns tried per spec before falling back to a fixed-seed sample.
pub const PATTERN_CAP: usize = 256;
/// Centralizer conjugates of the standard reverser tried per spec.
pub const CONJUGATES: u64 = 3;

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct FailureRecord {
    pub check: String,
    pub spec: Option<JordanSpec>,
    pub detail: String,
}

/// Counts from one suite. Merging adds counts and concatenates failures.
#[derive(Clone, PartialEq, Debug, Default, Serialize)]
pub struct Summary {
    pub cases: usize,
    pub checks: usize,
    pub strongly_reversible: usize,
    pub reversible_only: usize,
    pub not_reversible: usize,
    pub failures: Vec<FailureRecord>,
}

impl Summary {
    pub fn merge(mut self, other: Summary) -> Summary {
        self.cases += other.cases;
        self.checks += other.checks;
        self.strongly_reversible += other.strongly_reversible;
        self.reversible_only += other.reversible_only;
        self.not_reversible += other.not_reversible;
        self.failures.extend(other.failures);
        self
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn fail(&mut self, check: &str, spec: Option<&JordanSpec>, detail: impl Into<String>) {
        self.failures.push(FailureRecord { check: check.into(), spec: spec.cloned(), detail: detail.into() });
    }

    /// Records `ok` as one check, failing with `detail` when false.
    fn expect(&mut self, ok: bool, check: &str, spec: Option<&JordanSpec>, detail: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.fail(check, spec, detail());
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("summary serialization cannot fail")
    }
}

/// Runs `f` on every item and merges the summaries in item order.
fn over<T, F>(items: &[T], f: F) -> Summary
where
    T: Sync,
    F: Fn(&T) -> Summary + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        items.par_iter().map(f).reduce(Summary::default, Summary::merge)
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).fold(Summary::default(), Summary::merge)
    }
}

fn pair_options() -> [(GaussianRational, GaussianRational); 4] {
    let one = GaussianRational::one();
    let i = GaussianRational::i();
    [(one.clone(), one.clone()), (-one.clone(), -one), (i.clone(), -i.clone()), (-i.clone(), i)]
}

fn decode_pattern(mut index: usize, pairing: &ReversibilityReport) -> ReverserChoice {
    let one = GaussianRational::one();
    let options = pair_options();
    let singletons = pairing
        .singletons
        .iter()
        .map(|_| {
            let bit = index % 2;
            index /= 2;
            if bit == 0 {
                one.clone()
            } else {
                -one.clone()
            }
        })
        .collect();
    let pairs = pairing
        .pairs
        .iter()
        .map(|_| {
            let digit = index % 4;
            index /= 4;
            options[digit].clone()
        })
        .collect();
    ReverserChoice { singletons, pairs }
}

/// The involutive reversers the obstruction test checks: block reversers for
/// every sign pattern (`x₁ = ±1` on singletons, `(x₁, y₁)` with `x₁y₁ = 1` from
/// `{±1, ±i}` on pairs), and conjugates of the all-ones pattern by random
/// centralizer elements.
pub fn harness_reversers(
    spec: &JordanSpec,
    pairing: &ReversibilityReport,
) -> Result<Vec<(String, ExactMatrix)>, ReversalError> {
    let digits = pairing.singletons.len() as u32 + 2 * pairing.pairs.len() as u32;
    let total = 1usize.checked_shl(digits).filter(|&t| t <= PATTERN_CAP);
    let indices: Vec<usize> = match total {
        Some(t) => (0..t).collect(),
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(spec.n() as u64);
            let mut picks = vec![0];
            picks.extend((1..PATTERN_CAP).map(|_| rng.gen_range(0..usize::MAX >> 1)));
            picks
        }
    };
    let mut out = Vec::with_capacity(indices.len() + CONJUGATES as usize);
    for index in indices {
        let choice = decode_pattern(index, pairing);
        out.push((format!("sign pattern {index}"), assemble_reverser(spec, pairing, &choice)?));
    }
    let base = out[0].1.clone();
    for seed in 0..CONJUGATES {
        let s = centralizer_sample(spec, seed)?;
        let h = s.mul(&base)?.mul(&s.inverse()?)?;
        out.push((format!("centralizer conjugate {seed}"), h));
    }
    Ok(out)
}

fn theorem_case(spec: &JordanSpec, classifier: Classifier) -> Summary {
    let mut s = Summary { cases: 1, ..Summary::default() };
    let pairing = pair_blocks(spec);
    let verdict = classifier(spec);
    if !pairing.reversible {
        s.not_reversible += 1;
        s.expect(!verdict, "classifier", Some(spec), || "non-reversible spec classified strongly reversible".into());
        return s;
    }
    if verdict {
        s.strongly_reversible += 1;
        match involutive_witness(spec) {
            Ok(b) => {
                let ok = check_witness(&b.a, &b.g).map(|r| r.all_pass()).unwrap_or(false);
                s.expect(ok && b.reverses && b.is_involution && b.determinant.is_one(), "witness", Some(spec), || {
                    "witness does not re-verify".into()
                });
            }
            Err(e) => s.fail("witness", Some(spec), e.to_string()),
        }
        return s;
    }
    s.reversible_only += 1;
    match det_sign_of_involutive_reverser(spec) {
        Ok(DetSignPrediction::Forced(Sign::Minus)) => s.checks += 1,
        other => s.fail("det prediction", Some(spec), format!("expected Forced(-1), got {other:?}")),
    }
    let candidates = match harness_reversers(spec, &pairing) {
        Ok(c) => c,
        Err(e) => {
            s.fail("harness", Some(spec), e.to_string());
            return s;
        }
    };
    let checker = match WitnessChecker::new(&jordan_matrix(spec)) {
        Ok(c) => c,
        Err(e) => {
            s.fail("harness", Some(spec), e.to_string());
            return s;
        }
    };
    let minus_one = -GaussianRational::one();
    for (label, g) in candidates {
        match checker.check(&g) {
            Ok(r) => {
                s.expect(r.reverses && r.involution, "harness", Some(spec), || {
                    format!("{label} is not an involutive reverser")
                });
                s.expect(r.determinant == minus_one, "obstruction", Some(spec), || {
                    format!("{label} has determinant {}", r.determinant)
                });
            }
            Err(e) => s.fail("harness", Some(spec), e.to_string()),
        }
    }
    s
}

/// For every generated spec: a strongly reversible verdict must come with a
/// verified involutive witness; a reversible spec judged not strongly
/// reversible must have predicted sign Forced(-1), and every harness reverser
/// must have determinant -1.
pub fn exhaustive_theorem_check_with(generator: &SpecGenerator, classifier: Classifier) -> Summary {
    over(&generator.specs(), |spec| theorem_case(spec, classifier))
}

pub fn exhaustive_theorem_check(generator: &SpecGenerator) -> Summary {
    exhaustive_theorem_check_with(generator, theorem_verdict)
}

/// Flips the parity test of condition (2). It exists so the suite can prove
/// that it notices a wrong classifier.
pub fn mutant_classifier(spec: &JordanSpec) -> bool {
    let r = is_strongly_reversible(spec);
    r.reversible && (r.condition1 || !r.condition2)
}

pub fn semisimple_cross_check_with(generator: &SpecGenerator, classifier: Classifier) -> Summary {
    over(&generator.specs(), |spec| {
        let mut s = Summary::default();
        if let Some(expected) = semisimple_verdict(spec) {
            s.cases = 1;
            if expected {
                s.strongly_reversible += 1;
            } else if pair_blocks(spec).reversible {
                s.reversible_only += 1;
            } else {
                s.not_reversible += 1;
            }
            let got = classifier(spec);
            s.expect(got == expected, "semisimple", Some(spec), || format!("lemma says {expected}, classifier {got}"));
        }
        s
    })
}

pub fn semisimple_cross_check(generator: &SpecGenerator) -> Summary {
    semisimple_cross_check_with(generator, theorem_verdict)
}

/// Compares `classifier` with every per-case lemma oracle that applies.
pub fn cross_path_check(generator: &SpecGenerator, classifier: Classifier) -> Summary {
    over(&generator.specs(), |spec| {
        let mut s = Summary::default();
        let verdicts = lemma_verdicts(spec);
        if verdicts.is_empty() {
            return s;
        }
        s.cases = 1;
        let got = classifier(spec);
        for (name, expected) in verdicts {
            s.expect(got == expected, name, Some(spec), || format!("lemma says {expected}, classifier {got}"));
        }
        s
    })
}

fn random_invertible(rng: &mut ChaCha8Rng, k: usize) -> ExactMatrix {
    loop {
        let t = ExactMatrix::from_fn(k, k, |_, _| {
            GaussianRational::from_parts(rng.gen_range(-3..=3), 1, rng.gen_range(-3..=3), 1)
        });
        if !t.det().expect("square").is_zero() {
            return t;
        }
    }
}

/// `A = ⊕ᵏ J(1, 2m)` in Weyr form is `𝒥(I_k, 2m)`. Each trial draws an
/// involution `D = T·diag(±1)·T⁻¹`, forms `h = S·(D ⊕ … ⊕ D)·Ω_W·S⁻¹` for a
/// random centralizer element `S`, and checks `h² = I`, `hAh⁻¹ = A⁻¹` and
/// `det h = (-1)^{mk}` in both the Weyr and the Jordan basis.
pub fn weyr_det_argument_check(k: usize, m: usize, trials: usize, seed: u64) -> Summary {
    let mut s = Summary::default();
    let one = GaussianRational::one();
    let spec = JordanSpec::new(vec![crate::canonical::JordanBlock::new(one.clone(), 2 * m); k]).expect("valid");
    let form = match weyr_of(&spec) {
        Ok(f) => f,
        Err(e) => {
            s.fail("weyr", Some(&spec), e.to_string());
            return s;
        }
    };
    s.expect(form.matrix == homogeneous_weyr(&one, k, 2 * m), "weyr", Some(&spec), || {
        "Weyr form differs from the homogeneous Weyr matrix".into()
    });
    let structure = form.structures[0].clone();
    let omega = omega_weyr(&one, &structure.sizes).expect("λ = 1");
    let weyr_checker = WitnessChecker::new(&form.matrix).expect("invertible");
    let jordan_checker = WitnessChecker::new(&jordan_matrix(&spec)).expect("invertible");
    let expected = GaussianRational::sign_power((m * k) as i64);
    let back = form.permutation.inverse();
    let trial_ids: Vec<usize> = (0..trials).collect();
    let trial = |&t: &usize| {
        let mut s = Summary { cases: 1, ..Summary::default() };
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(t as u64));
        let tm = random_invertible(&mut rng, k);
        let signs: Vec<GaussianRational> =
            (0..k).map(|_| if rng.gen_bool(0.5) { one.clone() } else { -one.clone() }).collect();
        let d = tm
            .mul(&ExactMatrix::diagonal(&signs))
            .and_then(|x| x.mul(&tm.inverse()?))
            .expect("square");
        let spread = direct_sum(&vec![d; 2 * m]).expect("square");
        let centralizer = match sample_centralizer(&structure, rng.gen()) {
            Ok(c) => c,
            Err(e) => {
                s.fail("centralizer", Some(&spec), e.to_string());
                return s;
            }
        };
        let h = centralizer
            .mul(&spread)
            .and_then(|x| x.mul(&omega))
            .and_then(|x| x.mul(&centralizer.inverse()?))
            .expect("square");
        let pulled = permute_similarity(&back, &h).expect("matching size");
        for (basis, checker, g) in [("Weyr", &weyr_checker, &h), ("Jordan", &jordan_checker, &pulled)] {
            let r = checker.check(g).expect("matching size");
            s.expect(r.reverses && r.involution, "weyr det", Some(&spec), || {
                format!("trial {t}: {basis}-basis sample is not an involutive reverser")
            });
            s.expect(r.determinant == expected, "weyr det", Some(&spec), || {
                format!("trial {t}: det {} in the {basis} basis, expected {expected}", r.determinant)
            });
        }
        s
    };
    s.merge(over(&trial_ids, trial))
}

/// Ω laws for `n ≤ max_n`: closed form equals recurrence, `Ω(λ,n)⁻¹ = Ω(λ⁻¹,n)`,
/// `Ω(λ,n)·J(λ⁻¹,n) = J(λ,n)⁻¹·Ω(λ,n)`, and `Ω(±1,n)² = I`. Uses `per_n` random λ
/// for each `n`.
pub fn omega_law_check(max_n: usize, per_n: usize, seed: u64) -> Summary {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut s = Summary::default();
    for n in 1..=max_n {
        let lambdas: Vec<GaussianRational> = (0..per_n).map(|_| random_scalar(&mut rng)).collect();
        for l in &lambdas {
            s.cases += 1;
            let closed = omega_closed(l, n).expect("nonzero");
            let rec = omega_recurrence(l, n).expect("nonzero");
            s.expect(closed == rec, "closed = recurrence", None, || format!("λ = {l}, n = {n}"));
            let inverse = omega_inverse_law_check(l, n).unwrap_or(false);
            s.expect(inverse, "inverse law", None, || format!("λ = {l}, n = {n}"));
            let lhs = closed.mul(&jordan_block(&l.inv().expect("nonzero"), n)).expect("square");
            let rhs = jordan_block(l, n).inverse().and_then(|j| j.mul(&closed)).expect("invertible");
            s.expect(lhs == rhs, "reversal law", None, || format!("λ = {l}, n = {n}"));
        }
        for mu in [GaussianRational::one(), -GaussianRational::one()] {
            s.cases += 1;
            let o = omega_closed(&mu, n).expect("nonzero");
            let square = o.mul(&o).expect("square");
            s.expect(square.is_identity(), "involution law", None, || format!("μ = {mu}, n = {n}"));
        }
    }
    s
}

/// Determinants of involutive reversers of single ±1 blocks over `x₁ = ±1`
/// (`+1` when `n ≡ 0`, `-1` when `n ≡ 2 (mod 4)`, both signs for odd `n`), and
/// `(-1)^n` for pair reversers.
pub fn det_lemma_check(max_single: usize, max_pair: usize, seed: u64) -> Summary {
    let mut s = Summary::default();
    let one = GaussianRational::one();
    for n in 1..=max_single {
        for mu in [one.clone(), -one.clone()] {
            s.cases += 1;
            let a = jordan_block(&mu, n);
            let checker = WitnessChecker::new(&a).expect("invertible");
            let mut dets = Vec::new();
            for x1 in [one.clone(), -one.clone()] {
                let g = omega_general(&mu, &scalar_params(&x1, n), n).expect("valid parameters");
                let r = checker.check(&g).expect("matching size");
                s.expect(r.reverses && r.involution, "single block", None, || {
                    format!("x₁ = {x1}, μ = {mu}, n = {n}: not an involutive reverser")
                });
                dets.push(r.determinant);
            }
            let ok = match n % 4 {
                0 => dets.iter().all(|d| d.is_one()),
                2 => dets.iter().all(|d| *d == -one.clone()),
                _ => dets.contains(&one) && dets.contains(&-one.clone()),
            };
            s.expect(ok, "single block det", None, || format!("μ = {mu}, n = {n}: determinants {dets:?}"));
            let rule = GaussianRational::sign_power((n * (n - 1) / 2) as i64);
            if n % 2 == 1 {
                let g = omega_general(&mu, &scalar_params(&rule, n), n).expect("valid parameters");
                let det = g.det().expect("square");
                s.expect(det.is_one(), "odd x₁ rule", None, || format!("μ = {mu}, n = {n}: det {det}"));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for n in 1..=max_pair {
        let mut lambdas = vec![GaussianRational::from_integer(2), GaussianRational::i()];
        while lambdas.len() < 4 {
            let l = random_scalar(&mut rng);
            if !l.is_plus_minus_one() {
                lambdas.push(l);
            }
        }
        for l in lambdas {
            s.cases += 1;
            let g = base_reverser_pair(&l, n).expect("λ ≠ 0, ±1");
            let det = g.det().expect("square");
            let expected = GaussianRational::sign_power(n as i64);
            s.expect(det == expected, "pair det", None, || format!("λ = {l}, n = {n}: det {det}"));
            let square = g.mul(&g).expect("square");
            s.expect(square.is_identity(), "pair involution", None, || format!("λ = {l}, n = {n}"));
        }
    }
    s
}

/// Conjugate partitions, the duality permutation, and centralizer samples on
/// random data.
pub fn duality_check(partitions: usize, specs: usize, centralizers: usize, seed: u64) -> Summary {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut s = Summary::default();
    for _ in 0..partitions {
        s.cases += 1;
        let p = random_partition(&mut rng, 24);
        let c = p.conjugate();
        s.expect(c.conjugate() == p, "conjugate involution", None, || format!("{p}"));
        s.expect(c == p.transpose_diagram(), "conjugate paths", None, || format!("{p}"));
        s.expect(c.total() == p.total(), "conjugate total", None, || format!("{p}"));
    }
    let generator = SpecGenerator::new(10, default_pool(), GeneratorMode::Random { seed: rng.gen(), count: specs })
        .expect("default pool is valid");
    for spec in generator.specs() {
        s.cases += 1;
        match weyr_of(&spec) {
            Ok(form) => {
                let image = permute_similarity(&form.permutation, &jordan_matrix(&spec)).expect("matching size");
                s.expect(image == form.matrix, "duality permutation", Some(&spec), || "mismatch".into());
                let structures_ok = form
                    .structures
                    .iter()
                    .all(|w| w.sizes == spec.jordan_structure(&w.eigenvalue).conjugate());
                s.expect(structures_ok, "Weyr structure", Some(&spec), || "not the conjugate partition".into());
            }
            Err(e) => s.fail("weyr_of", Some(&spec), e.to_string()),
        }
    }
    for _ in 0..centralizers {
        s.cases += 1;
        let sizes: Partition = random_partition(&mut rng, 10);
        let w = WeyrStructure::new(random_scalar(&mut rng), sizes);
        match sample_centralizer(&w, rng.gen()) {
            Ok(k) => {
                let wm = basic_weyr_matrix(&w);
                let commutes = k.mul(&wm).expect("square") == wm.mul(&k).expect("square");
                s.expect(commutes, "centralizer commutes", None, || format!("structure {}", w.sizes));
                let pattern = centralizer_pattern_check(&w, &k).unwrap_or(false);
                s.expect(pattern, "centralizer pattern", None, || format!("structure {}", w.sizes));
            }
            Err(e) => s.fail("centralizer", None, e.to_string()),
        }
    }
    s
}

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct SelftestSection {
    pub name: String,
    pub summary: Summary,
}

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct SelftestReport {
    pub max_n: usize,
    pub seed: u64,
    pub sections: Vec<SelftestSection>,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.sections.iter().all(|s| s.summary.passed())
    }
}

/// Every suite at size `max_n`, judging strong reversibility with `classifier`.
pub fn run_selftest(max_n: usize, seed: u64, classifier: Classifier) -> SelftestReport {
    let max_n = max_n.max(1);
    let pool = default_pool();
    let exhaustive = SpecGenerator::exhaustive(max_n, pool.clone()).expect("default pool is valid");
    let semisimple = exhaustive.clone().with_max_block(1);
    let one = GaussianRational::one();
    let cross = [vec![one.clone()], vec![-one.clone()], pool]
        .into_iter()
        .map(|p| cross_path_check(&SpecGenerator::exhaustive(max_n, p).expect("valid pool"), classifier))
        .fold(Summary::default(), Summary::merge);
    let mut weyr = Summary::default();
    for k in 1..=max_n {
        for m in 1..=max_n {
            if 2 * k * m <= max_n.max(2) {
                weyr = weyr.merge(weyr_det_argument_check(k, m, 10, seed));
            }
        }
    }
    let sections = vec![
        ("exhaustive theorem", exhaustive_theorem_check_with(&exhaustive, classifier)),
        ("semisimple", semisimple_cross_check_with(&semisimple, classifier)),
        ("cross path", cross),
        ("weyr determinant", weyr),
        ("omega laws", omega_law_check(max_n, 5, seed)),
        ("determinant lemmas", det_lemma_check(max_n, max_n, seed)),
        ("duality", duality_check(50, 50, 50, seed)),
    ];
    SelftestReport {
        max_n,
        seed,
        sections: sections.into_iter().map(|(name, summary)| SelftestSection { name: name.into(), summary }).collect(),
    }
}
