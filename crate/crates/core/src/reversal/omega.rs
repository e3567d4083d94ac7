//! The Ω family of reversers, Toeplitz parameters, and the base reversers for
//! single ±1 blocks and λ/λ⁻¹ pairs.

use crate::error::ReversalError;
use crate::matrix::{ExactMatrix, Matrix};
use crate::partition::{binomial, Partition};
use crate::scalar::{Field, GaussianRational};

fn nonzero(lambda: &GaussianRational) -> Result<(), ReversalError> {
    if lambda.is_zero() {
        return Err(ReversalError::InvalidParameter("λ must be nonzero".into()));
    }
    Ok(())
}

/// Ω(λ, n) from its entry formula (1-based):
/// `x_{i,i} = (-1)^{n-i} λ^{-2(n-i)}`,
/// `x_{i,j} = (-1)^{n-i} C(n-i-1, j-i) λ^{-2n+i+j}` for `i < j < n`,
/// and last column `e_n`.
pub fn omega_closed(lambda: &GaussianRational, n: usize) -> Result<ExactMatrix, ReversalError> {
    nonzero(lambda)?;
    let inv = lambda.inv()?;
    let ni = n as i64;
    Ok(Matrix::from_fn(n, n, |r, c| {
        let (i, j) = (r as i64 + 1, c as i64 + 1);
        if j < i || (j == ni && i != ni) {
            GaussianRational::zero()
        } else if i == ni {
            GaussianRational::one()
        } else {
            let sign = GaussianRational::sign_power(ni - i);
            let coeff = GaussianRational::from_bigint(binomial((ni - i - 1).max(0) as u64, j - i));
            let coeff = if i == j { GaussianRational::one() } else { coeff };
            let power = inv.pow(2 * ni - i - j).expect("inverse is nonzero");
            sign * coeff * power
        }
    }))
}

/// Fills rows bottom-up from `last_column` (1-based entry `i` of the column is
/// `g_{i,n}`) using `x_{i,j} = -λ⁻² x_{i+1,j+1} - λ⁻¹ x_{i+1,j}`.
fn recurrence_fill(lambda: &GaussianRational, last_column: &[GaussianRational]) -> Result<ExactMatrix, ReversalError> {
    nonzero(lambda)?;
    let n = last_column.len();
    let inv = lambda.inv()?;
    let inv2 = inv.mul_ref(&inv);
    let mut x = vec![vec![GaussianRational::zero(); n]; n];
    for (i, v) in last_column.iter().enumerate() {
        x[i][n - 1] = v.clone();
    }
    for i in (0..n.saturating_sub(1)).rev() {
        for j in i..n - 1 {
            let diag = inv2.mul_ref(&x[i + 1][j + 1]);
            let below = inv.mul_ref(&x[i + 1][j]);
            x[i][j] = -(diag + below);
        }
    }
    Ok(ExactMatrix::from_rows(x).expect("square by construction"))
}

/// Ω(λ, n) from the defining recurrence and boundary conditions.
pub fn omega_recurrence(lambda: &GaussianRational, n: usize) -> Result<ExactMatrix, ReversalError> {
    let mut last = vec![GaussianRational::zero(); n];
    if n > 0 {
        last[n - 1] = GaussianRational::one();
    }
    recurrence_fill(lambda, &last)
}

pub fn omega_inverse_law_check(lambda: &GaussianRational, n: usize) -> Result<bool, ReversalError> {
    let forward = omega_closed(lambda, n)?;
    let backward = omega_closed(&lambda.inv()?, n)?;
    Ok(forward.mul(&backward)?.is_identity())
}

/// Upper triangular Toeplitz matrix with `(i, j)` entry `x_{j-i+1}`.
pub fn toeplitz(x: &[GaussianRational]) -> ExactMatrix {
    let n = x.len();
    Matrix::from_fn(n, n, |i, j| if j >= i { x[j - i].clone() } else { GaussianRational::zero() })
}

fn check_params(lambda: &GaussianRational, x: &[GaussianRational], n: usize) -> Result<(), ReversalError> {
    nonzero(lambda)?;
    if x.len() != n {
        return Err(ReversalError::InvalidParameter(format!("expected {n} Toeplitz parameters, got {}", x.len())));
    }
    if x.first().is_none_or(Field::is_zero) {
        return Err(ReversalError::InvalidParameter("x₁ must be nonzero".into()));
    }
    Ok(())
}

/// Ω(λ, x, n) = Toep(x)·Ω(λ, n).
pub fn omega_general(lambda: &GaussianRational, x: &[GaussianRational], n: usize) -> Result<ExactMatrix, ReversalError> {
    check_params(lambda, x, n)?;
    Ok(toeplitz(x).mul(&omega_closed(lambda, n)?)?)
}

/// Ω(λ, x, n) from its last column `g_{i,n} = x_{n-i+1}` and the recurrence.
pub fn omega_general_recurrence(
    lambda: &GaussianRational,
    x: &[GaussianRational],
    n: usize,
) -> Result<ExactMatrix, ReversalError> {
    check_params(lambda, x, n)?;
    let last: Vec<GaussianRational> = x.iter().rev().cloned().collect();
    recurrence_fill(lambda, &last)
}

/// `(x₁, 0, …, 0)` of length `n`.
pub fn scalar_params(x1: &GaussianRational, n: usize) -> Vec<GaussianRational> {
    let mut x = vec![GaussianRational::zero(); n];
    if n > 0 {
        x[0] = x1.clone();
    }
    x
}

/// Ω(μ, n) for μ = ±1: an involution reversing J(μ, n).
pub fn base_reverser_single(mu: &GaussianRational, n: usize) -> Result<ExactMatrix, ReversalError> {
    if !mu.is_plus_minus_one() {
        return Err(ReversalError::InvalidParameter(format!("single-block reverser needs μ = ±1, got {mu}")));
    }
    omega_closed(mu, n)
}

/// `[[0, x₁Ω(λ,n)], [y₁Ω(λ⁻¹,n), 0]]`, reversing J(λ, n) ⊕ J(λ⁻¹, n). It is an
/// involution exactly when `x₁y₁ = 1`.
pub fn pair_reverser(
    lambda: &GaussianRational,
    x1: &GaussianRational,
    y1: &GaussianRational,
    n: usize,
) -> Result<ExactMatrix, ReversalError> {
    let upper = omega_closed(lambda, n)?.scale(x1);
    let lower = omega_closed(&lambda.inv()?, n)?.scale(y1);
    Ok(ExactMatrix::zeros(2 * n, 2 * n).with_block(0, n, &upper)?.with_block(n, 0, &lower)?)
}

/// The antidiagonal involution `[[0, Ω(λ,n)], [Ω(λ,n)⁻¹, 0]]`.
pub fn base_reverser_pair(lambda: &GaussianRational, n: usize) -> Result<ExactMatrix, ReversalError> {
    if lambda.is_zero() || lambda.is_plus_minus_one() {
        return Err(ReversalError::InvalidParameter(format!("pair reverser needs λ ∉ {{0, 1, -1}}, got {lambda}")));
    }
    let one = GaussianRational::one();
    pair_reverser(lambda, &one, &one, n)
}

/// Replaces entry `c_{ij}` of an upper triangular `r × r` matrix by
/// `c_{ij}·I_{n_i × n_j}`, where `sizes = (n₁ ≥ … ≥ n_r)`. For weakly decreasing
/// sizes this is multiplicative on upper triangular matrices.
pub fn inflate(c: &ExactMatrix, sizes: &Partition) -> ExactMatrix {
    let parts = sizes.parts();
    assert_eq!(c.shape(), (parts.len(), parts.len()), "one block per part");
    let mut starts = Vec::with_capacity(parts.len());
    let mut owner = Vec::with_capacity(sizes.total());
    for (b, &s) in parts.iter().enumerate() {
        starts.push(owner.len());
        owner.extend(std::iter::repeat_n(b, s));
    }
    let n = owner.len();
    Matrix::from_fn(n, n, |i, j| {
        let (bi, bj) = (owner[i], owner[j]);
        if i - starts[bi] == j - starts[bj] {
            c.get(bi, bj).clone()
        } else {
            GaussianRational::zero()
        }
    })
}

/// Ω(λ, r) inflated to Weyr structure `sizes` (with `r` parts). It reverses the
/// basic Weyr pair in the same way Ω(λ, r) reverses Jordan blocks:
/// `Ω_W(λ)·W(λ⁻¹) = W(λ)⁻¹·Ω_W(λ)`.
pub fn omega_weyr(lambda: &GaussianRational, sizes: &Partition) -> Result<ExactMatrix, ReversalError> {
    Ok(inflate(&omega_closed(lambda, sizes.len())?, sizes))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::{basic_weyr_matrix, jordan_block, WeyrStructure};

    fn q(n: i64) -> GaussianRational {
        GaussianRational::from_integer(n)
    }

    fn lambdas() -> Vec<GaussianRational> {
        vec![
            q(1),
            q(-1),
            q(2),
            GaussianRational::from_ratio(1, 2),
            GaussianRational::i(),
            GaussianRational::from_parts(2, 3, -1, 1),
        ]
    }

    #[test]
    fn omega_4_matches_display() {
        let l = GaussianRational::from_parts(3, 2, 1, 5);
        let p = |k: i64| l.pow(k).unwrap();
        let z = GaussianRational::zero;
        let expected = ExactMatrix::from_rows(vec![
            vec![-p(-6), -(q(2) * p(-5)), -p(-4), z()],
            vec![z(), p(-4), p(-3), z()],
            vec![z(), z(), -p(-2), z()],
            vec![z(), z(), z(), q(1)],
        ])
        .unwrap();
        assert_eq!(omega_closed(&l, 4).unwrap(), expected);
        assert_eq!(omega_recurrence(&l, 4).unwrap(), expected);
    }

    #[test]
    fn omega_1_5_row_and_diagonal() {
        let o = omega_closed(&q(1), 5).unwrap();
        assert_eq!(o.row(0), &[q(1), q(3), q(3), q(1), q(0)]);
        let diag: Vec<_> = (0..5).map(|i| o.get(i, i).clone()).collect();
        assert_eq!(diag, vec![q(1), q(-1), q(1), q(-1), q(1)]);
    }

    #[test]
    fn small_cases() {
        assert_eq!(omega_closed(&q(7), 1).unwrap(), ExactMatrix::identity(1));
        let expected = ExactMatrix::diagonal(&[q(-1), q(1)]);
        assert_eq!(omega_recurrence(&q(1), 2).unwrap(), expected);
        assert_eq!(base_reverser_single(&q(1), 2).unwrap(), expected);
        assert!(omega_closed(&q(0), 3).is_err());
        assert!(base_reverser_single(&q(2), 3).is_err());
        assert!(base_reverser_pair(&q(-1), 3).is_err());
    }

    #[test]
    fn closed_equals_recurrence() {
        for l in lambdas() {
            for n in 1..=9 {
                assert_eq!(omega_closed(&l, n).unwrap(), omega_recurrence(&l, n).unwrap(), "λ={l} n={n}");
            }
        }
    }

    #[test]
    fn reversal_inverse_and_involution_laws() {
        for l in lambdas() {
            for n in 1..=7 {
                let o = omega_closed(&l, n).unwrap();
                let lhs = o.mul(&jordan_block(&l.inv().unwrap(), n)).unwrap();
                let rhs = jordan_block(&l, n).inverse().unwrap().mul(&o).unwrap();
                assert_eq!(lhs, rhs);
                assert!(omega_inverse_law_check(&l, n).unwrap());
                if l.is_plus_minus_one() {
                    assert!(o.mul(&o).unwrap().is_identity());
                }
            }
        }
        assert!(omega_inverse_law_check(&q(2), 6).unwrap());
        assert!(omega_inverse_law_check(&GaussianRational::i(), 5).unwrap());
    }

    #[test]
    fn toeplitz_shapes() {
        let x = scalar_params(&q(3), 4);
        assert_eq!(toeplitz(&x), ExactMatrix::identity(4).scale(&q(3)));
        let x = vec![q(1), q(2), q(-1), q(4)];
        let t = toeplitz(&x);
        let j = jordan_block(&q(5), 4);
        assert_eq!(t.mul(&j).unwrap(), j.mul(&t).unwrap());
    }

    #[test]
    fn general_omega_paths_agree() {
        let x = vec![q(2), GaussianRational::i(), q(-1), GaussianRational::from_ratio(1, 3), q(5)];
        for l in lambdas() {
            let g = omega_general(&l, &x, 5).unwrap();
            assert_eq!(g, omega_general_recurrence(&l, &x, 5).unwrap());
            for i in 0..5 {
                assert_eq!(g.get(i, 4), &x[4 - i]);
                let expected = x[0].clone()
                    * GaussianRational::sign_power(4 - i as i64)
                    * l.pow(-2 * (4 - i as i64)).unwrap();
                assert_eq!(g.get(i, i), &expected);
            }
            let lhs = g.mul(&jordan_block(&l.inv().unwrap(), 5)).unwrap();
            let rhs = jordan_block(&l, 5).inverse().unwrap().mul(&g).unwrap();
            assert_eq!(lhs, rhs);
        }
        assert_eq!(omega_general(&q(3), &scalar_params(&q(1), 4), 4).unwrap(), omega_closed(&q(3), 4).unwrap());
        assert!(omega_general(&q(3), &scalar_params(&q(0), 4), 4).is_err());
        assert!(omega_general(&q(3), &[q(1)], 4).is_err());
    }

    #[test]
    fn pair_reverser_properties() {
        let g = base_reverser_pair(&q(2), 1).unwrap();
        assert_eq!(g, ExactMatrix::from_rows(vec![vec![q(0), q(1)], vec![q(1), q(0)]]).unwrap());
        for l in [q(2), GaussianRational::i(), GaussianRational::from_parts(1, 2, 1, 1)] {
            for n in 1..=5 {
                let g = base_reverser_pair(&l, n).unwrap();
                assert!(g.mul(&g).unwrap().is_identity());
                assert_eq!(g.det().unwrap(), GaussianRational::sign_power(n as i64));
                let a = crate::matrix::direct_sum(&[jordan_block(&l, n), jordan_block(&l.inv().unwrap(), n)]).unwrap();
                assert_eq!(g.mul(&a).unwrap(), a.inverse().unwrap().mul(&g).unwrap());
            }
        }
    }

    #[test]
    fn inflation_is_multiplicative_and_reverses_weyr() {
        let sizes = Partition::new(vec![3, 3, 2, 1]).unwrap();
        let a = toeplitz(&[q(1), q(2), q(-1), q(3)]);
        let b = omega_closed(&q(2), 4).unwrap();
        assert_eq!(inflate(&a.mul(&b).unwrap(), &sizes), inflate(&a, &sizes).mul(&inflate(&b, &sizes)).unwrap());

        let l = GaussianRational::from_ratio(-1, 3);
        let w = basic_weyr_matrix(&WeyrStructure::new(l.clone(), sizes.clone()));
        let w_inv_l = basic_weyr_matrix(&WeyrStructure::new(l.inv().unwrap(), sizes.clone()));
        assert_eq!(inflate(&jordan_block(&l, 4), &sizes), w);
        let o = omega_weyr(&l, &sizes).unwrap();
        assert_eq!(o.mul(&w_inv_l).unwrap(), w.inverse().unwrap().mul(&o).unwrap());
    }
}
