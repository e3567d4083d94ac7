use serde::Serialize;

use crate::canonical::{jordan_matrix, sample_centralizer, weyr_of, JordanSpec, WeyrForm};
use crate::error::ReversalError;
use crate::matrix::{direct_sum, permute_similarity, ExactMatrix};
use crate::reversal::classify::{
    det_sign_of_involutive_reverser, is_strongly_reversible, pair_blocks, ReversibilityReport,
};
use crate::reversal::omega::{omega_closed, omega_weyr};
use crate::scalar::{Field, GaussianRational};
use crate::verify::{VerificationReport, WitnessChecker};

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct WitnessBundle {
    /// The Jordan matrix of the spec.
    pub a: ExactMatrix,
    pub g: ExactMatrix,
    pub is_involution: bool,
    pub determinant: GaussianRational,
    pub reverses: bool,
    pub transcript: Vec<String>,
}

impl WitnessBundle {
    fn from_report(a: ExactMatrix, g: ExactMatrix, report: &VerificationReport, transcript: Vec<String>) -> Self {
        WitnessBundle {
            a,
            g,
            is_involution: report.involution,
            determinant: report.determinant.clone(),
            reverses: report.reverses,
            transcript,
        }
    }
}

/// Scalars for a block-diagonal reverser: `x₁` for each ±1 singleton (the
/// block gets `x₁·Ω(μ, d)`), and `(x₁, y₁)` for each pair (the pair gets
/// `[[0, x₁Ω(λ,r)], [y₁Ω(λ⁻¹,r), 0]]`). Order follows the pairing report.
#[derive(Clone, PartialEq, Debug)]
pub struct ReverserChoice {
    pub singletons: Vec<GaussianRational>,
    pub pairs: Vec<(GaussianRational, GaussianRational)>,
}

fn half_det_sign(d: usize) -> GaussianRational {
    GaussianRational::sign_power((d * d.saturating_sub(1) / 2) as i64)
}

impl ReverserChoice {
    /// `x₁ = 1` on even singletons, `x₁ = (-1)^{d(d-1)/2}` on odd ones (so odd
    /// blocks contribute det +1), and `x₁ = y₁ = 1` on pairs.
    pub fn standard(pairing: &ReversibilityReport) -> Self {
        let singletons = pairing
            .singletons
            .iter()
            .map(|s| {
                let d = s.block.size;
                if d % 2 == 1 {
                    half_det_sign(d)
                } else {
                    GaussianRational::one()
                }
            })
            .collect();
        let pairs = pairing.pairs.iter().map(|_| (GaussianRational::one(), GaussianRational::one())).collect();
        ReverserChoice { singletons, pairs }
    }

    /// Closed-form determinant of the assembled reverser.
    pub fn determinant(&self, pairing: &ReversibilityReport) -> Result<GaussianRational, ReversalError> {
        let mut det = GaussianRational::one();
        for (s, x) in pairing.singletons.iter().zip(&self.singletons) {
            let d = s.block.size;
            det = det * x.pow(d as i64)? * half_det_sign(d);
        }
        for (p, (x, y)) in pairing.pairs.iter().zip(&self.pairs) {
            let r = p.first.block.size as i64;
            det = det * GaussianRational::sign_power(r) * x.mul_ref(y).pow(r)?;
        }
        Ok(det)
    }
}

fn block_offsets(spec: &JordanSpec) -> Vec<usize> {
    let mut acc = 0;
    spec.blocks()
        .iter()
        .map(|b| {
            let o = acc;
            acc += b.size;
            o
        })
        .collect()
}

fn place(data: &mut [Vec<GaussianRational>], row0: usize, col0: usize, block: &ExactMatrix) {
    for i in 0..block.rows() {
        for j in 0..block.cols() {
            data[row0 + i][col0 + j] = block.get(i, j).clone();
        }
    }
}

/// Block reverser of the Jordan matrix of `spec` for the given scalars.
pub fn assemble_reverser(
    spec: &JordanSpec,
    pairing: &ReversibilityReport,
    choice: &ReverserChoice,
) -> Result<ExactMatrix, ReversalError> {
    if let Some(block) = &pairing.failure_witness {
        return Err(ReversalError::NotReversible(Box::new(block.clone())));
    }
    if choice.singletons.len() != pairing.singletons.len() || choice.pairs.len() != pairing.pairs.len() {
        return Err(ReversalError::InvalidParameter("reverser choice does not match the pairing".into()));
    }
    let offsets = block_offsets(spec);
    let n = spec.n();
    let mut data = vec![vec![GaussianRational::zero(); n]; n];
    for (s, x) in pairing.singletons.iter().zip(&choice.singletons) {
        let o = offsets[s.index];
        place(&mut data, o, o, &omega_closed(&s.block.eigenvalue, s.block.size)?.scale(x));
    }
    for (p, (x, y)) in pairing.pairs.iter().zip(&choice.pairs) {
        let (a, b) = (offsets[p.first.index], offsets[p.second.index]);
        let (lambda, r) = (&p.first.block.eigenvalue, p.first.block.size);
        place(&mut data, a, b, &omega_closed(lambda, r)?.scale(x));
        place(&mut data, b, a, &omega_closed(&lambda.inv()?, r)?.scale(y));
    }
    Ok(ExactMatrix::from_rows(data).expect("square by construction"))
}

fn describe(spec: &JordanSpec, pairing: &ReversibilityReport, choice: &ReverserChoice) -> Vec<String> {
    let offsets = block_offsets(spec);
    let mut notes = Vec::new();
    for (s, x) in pairing.singletons.iter().zip(&choice.singletons) {
        let (mu, d) = (&s.block.eigenvalue, s.block.size);
        let det = x.pow(d as i64).expect("x₁ is nonzero") * half_det_sign(d);
        notes.push(format!("{} at row {}: ({x})·Ω({mu}, {d}), det {det}", s.block, offsets[s.index]));
    }
    for (p, (x, y)) in pairing.pairs.iter().zip(&choice.pairs) {
        let (lambda, r) = (&p.first.block.eigenvalue, p.first.block.size);
        let inv = lambda.inv().expect("spec eigenvalues are nonzero");
        let det = GaussianRational::sign_power(r as i64) * x.mul_ref(y).pow(r as i64).expect("nonzero");
        notes.push(format!(
            "{} ⊕ {} at rows {}/{}: [[0, ({x})·Ω({lambda}, {r})], [({y})·Ω({inv}, {r}), 0]], det {det}",
            p.first.block, p.second.block, offsets[p.first.index], offsets[p.second.index]
        ));
    }
    notes
}

fn require_reversible(spec: &JordanSpec) -> Result<ReversibilityReport, ReversalError> {
    let pairing = pair_blocks(spec);
    match &pairing.failure_witness {
        Some(block) => Err(ReversalError::NotReversible(Box::new(block.clone()))),
        None => Ok(pairing),
    }
}

fn verified(
    spec: &JordanSpec,
    g: ExactMatrix,
    mut transcript: Vec<String>,
    need_involution: bool,
) -> Result<WitnessBundle, ReversalError> {
    let a = jordan_matrix(spec);
    let report = WitnessChecker::new(&a)?.check(&g)?;
    if !(report.reverses && report.in_special && (report.involution || !need_involution)) {
        transcript.extend(report.residuals.iter().map(ToString::to_string));
        transcript.push(format!("determinant {}", report.determinant));
        return Err(ReversalError::VerificationFailed(transcript));
    }
    Ok(WitnessBundle::from_report(a, g, &report, transcript))
}

/// An involution `g` with `det g = 1` and `gAg⁻¹ = A⁻¹` for the Jordan matrix
/// `A` of `spec`, verified before it is returned.
pub fn involutive_witness(spec: &JordanSpec) -> Result<WitnessBundle, ReversalError> {
    let pairing = require_reversible(spec)?;
    if !is_strongly_reversible(spec).strongly_reversible {
        return Err(ReversalError::NotStronglyReversible(det_sign_of_involutive_reverser(spec)?));
    }
    let mut choice = ReverserChoice::standard(&pairing);
    let mut flip_note = None;
    if !choice.determinant(&pairing)?.is_one() {
        let odd = pairing.singletons.iter().position(|s| s.block.size % 2 == 1);
        if let Some(k) = odd {
            choice.singletons[k] = -choice.singletons[k].clone();
            flip_note = Some(format!("x₁ negated on {} to make det +1", pairing.singletons[k].block));
        }
    }
    let mut transcript = describe(spec, &pairing, &choice);
    transcript.extend(flip_note);
    let g = assemble_reverser(spec, &pairing, &choice)?;
    verified(spec, g, transcript, true)
}

/// A reverser in SL(n), not necessarily an involution. Strongly reversible
/// specs get the involutive witness.
pub fn sl_reverser_witness(spec: &JordanSpec) -> Result<WitnessBundle, ReversalError> {
    let pairing = require_reversible(spec)?;
    if is_strongly_reversible(spec).strongly_reversible {
        return involutive_witness(spec);
    }
    let mut choice = ReverserChoice::standard(&pairing);
    let mut note = None;
    if !choice.determinant(&pairing)?.is_one() {
        let sizes: Vec<usize> = pairing.singletons.iter().map(|s| s.block.size).collect();
        if let Some(k) = sizes.iter().position(|d| d % 2 == 1) {
            choice.singletons[k] = -choice.singletons[k].clone();
            note = Some(format!("x₁ negated on {}", pairing.singletons[k].block));
        } else if let Some(k) = sizes.iter().position(|d| d % 4 == 2) {
            choice.singletons[k] = -GaussianRational::i();
            note = Some(format!("x₁ = -i on {}, so this block squares to -I", pairing.singletons[k].block));
        } else if let Some(k) = pairing.pairs.iter().position(|p| p.first.block.size % 2 == 1) {
            choice.pairs[k].1 = -GaussianRational::one();
            note = Some(format!("lower half negated on the pair at {}", pairing.pairs[k].first.block));
        }
    }
    let mut transcript = describe(spec, &pairing, &choice);
    transcript.extend(note);
    let g = assemble_reverser(spec, &pairing, &choice)?;
    verified(spec, g, transcript, false)
}

/// Weyr form of `spec` with a fixed reverser of it: on the group of eigenvalue
/// ν with Weyr structure s, `Ω_W(ν, s)` is placed in the rows of ν and the
/// columns of ν⁻¹.
pub fn weyr_reverser(spec: &JordanSpec) -> Result<(WeyrForm, ExactMatrix), ReversalError> {
    require_reversible(spec)?;
    let form = weyr_of(spec)?;
    let mut offsets = Vec::with_capacity(form.structures.len());
    let mut acc = 0;
    for w in &form.structures {
        offsets.push(acc);
        acc += w.n();
    }
    let n = acc;
    let mut data = vec![vec![GaussianRational::zero(); n]; n];
    for (k, w) in form.structures.iter().enumerate() {
        let inverse = w.eigenvalue.inv()?;
        let partner = form
            .structures
            .iter()
            .position(|v| v.eigenvalue == inverse && v.sizes == w.sizes)
            .ok_or_else(|| ReversalError::InvalidParameter(format!("no Weyr partner for eigenvalue {}", w.eigenvalue)))?;
        place(&mut data, offsets[k], offsets[partner], &omega_weyr(&w.eigenvalue, &w.sizes)?);
    }
    let r = ExactMatrix::from_rows(data).expect("square by construction");
    Ok((form, r))
}

/// A random invertible matrix commuting with the Jordan matrix of `spec`,
/// sampled in the Weyr basis and pulled back.
pub fn centralizer_sample(spec: &JordanSpec, seed: u64) -> Result<ExactMatrix, ReversalError> {
    let form = weyr_of(spec)?;
    centralizer_in_weyr(&form, seed).and_then(|k| Ok(permute_similarity(&form.permutation.inverse(), &k)?))
}

fn centralizer_in_weyr(form: &WeyrForm, seed: u64) -> Result<ExactMatrix, ReversalError> {
    let blocks = form
        .structures
        .iter()
        .enumerate()
        .map(|(k, w)| sample_centralizer(w, seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(k as u64)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(direct_sum(&blocks)?)
}

/// A random element of the reverser coset of the Jordan matrix of `spec`.
pub fn reverser_sample(spec: &JordanSpec, seed: u64) -> Result<ExactMatrix, ReversalError> {
    let (form, fixed) = weyr_reverser(spec)?;
    let k = centralizer_in_weyr(&form, seed)?;
    let r = permute_similarity(&form.permutation.inverse(), &k.mul(&fixed)?)?;
    let report = WitnessChecker::new(&jordan_matrix(spec))?.check(&r)?;
    if !report.reverses {
        return Err(ReversalError::VerificationFailed(report.residuals.iter().map(ToString::to_string).collect()));
    }
    Ok(r)
}
