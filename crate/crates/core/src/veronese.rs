//! The irreducible representation of SL(2) on binary forms of degree `n-1`,
//! the Veronese flag curve, and eigenvalue length functions.
//!
//! A binary form of degree `d` is a coefficient vector of length `d+1`;
//! index `k` holds the coefficient of `X^{d-k} Y^k`.

use crate::error::{Error, Result};
use crate::flag::{Flag, VecN};
use crate::matrix::Matrix;
use crate::pants::{Mat2, ProjPoint};
use crate::scalar::Field;

fn check_n(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidDimension(n));
    }
    Ok(())
}

fn form_mul<F: Field>(f: &[F], g: &[F]) -> Vec<F> {
    let mut out = vec![F::zero(); f.len() + g.len() - 1];
    for (i, a) in f.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in g.iter().enumerate() {
            out[i + j] = out[i + j].clone() + a.clone() * b.clone();
        }
    }
    out
}

fn form_pow<F: Field>(f: &[F], e: usize) -> Vec<F> {
    (0..e).fold(vec![F::one()], |acc, _| form_mul(&acc, f))
}

/// Coefficients of `(xX + yY)^e · (zX + wY)^k`.
fn product_of_powers<F: Field>(l1: [&F; 2], e: usize, l2: [&F; 2], k: usize) -> Vec<F> {
    let f = [l1[0].clone(), l1[1].clone()];
    let g = [l2[0].clone(), l2[1].clone()];
    form_mul(&form_pow(&f, e), &form_pow(&g, k))
}

/// `ι_n(M)`: the action of `M = [[a, b], [c, d]]` on degree-`(n-1)` forms by
/// substituting `X ↦ aX + cY`, `Y ↦ bX + dY`. Column `j` (from 0) holds
/// `(aX + cY)^{n-1-j} (bX + dY)^j`.
pub fn sym_power<F: Field>(m: &Mat2<F>, n: usize) -> Result<Matrix<F>> {
    check_n(n)?;
    let columns: Vec<Vec<F>> =
        (0..n).map(|j| product_of_powers([&m.a, &m.c], n - 1 - j, [&m.b, &m.d], j)).collect();
    Matrix::from_columns(&columns)
}

/// `ξ(x)` for `x = [u : v]`: the `i`-th vector (from 1) is
/// `(uX + vY)^{n-i} · w^{i-1}` with `w = X`, or `w = Y` when `x = ∞`.
/// The first `i` vectors span the forms divisible by `(uX + vY)^{n-i}`.
pub fn flag_curve<F: Field>(x: &ProjPoint<F>, n: usize) -> Result<Flag<F>> {
    check_n(n)?;
    let (one, zero) = (F::one(), F::zero());
    let w = if x.is_infinity() { [&zero, &one] } else { [&one, &zero] };
    let basis: Vec<VecN<F>> = (1..=n).map(|i| product_of_powers([x.u(), x.v()], n - i, w, i - 1)).collect();
    Flag::new(basis)
}

/// Eigenvalues of `ι_n(M)` in decreasing order of absolute value:
/// `μ^{n-1-k} μ'^k` where `μ` is the expanding eigenvalue of `M`.
pub fn eigenvalues<F: Field>(m: &Mat2<F>, n: usize) -> Result<Vec<F>> {
    check_n(n)?;
    let fp = m.fixed_points()?;
    (0..n)
        .map(|k| Ok(fp.expanding.powi((n - 1 - k) as i64)? * fp.contracting.powi(k as i64)?))
        .collect()
}

/// Consecutive eigenvalue ratios `λ_k / λ_{k+1}`, `k = 1..n-1`. All equal `μ/μ'`,
/// which is `λ²` for a determinant-one lift with spectral radius `λ`.
pub fn eigen_ratios<F: Field>(m: &Mat2<F>, n: usize) -> Result<Vec<F>> {
    check_n(n)?;
    let fp = m.fixed_points()?;
    let ratio = fp.expanding.checked_div(&fp.contracting)?.abs();
    Ok(vec![ratio; n - 1])
}

/// Length functions `l_k = log(λ_k / λ_{k+1})`.
pub fn length_functions<F: Field>(m: &Mat2<F>, n: usize) -> Result<Vec<f64>> {
    eigen_ratios(m, n)?.iter().map(Field::ln).collect()
}

/// The flag spanned by eigenvectors of `ι_n(M)` in decreasing order of `|λ|`.
pub fn stable_flag<F: Field>(m: &Mat2<F>, n: usize) -> Result<Flag<F>> {
    let big = sym_power(m, n)?;
    let basis = eigenvalues(m, n)?
        .into_iter()
        .map(|lambda| {
            let shifted = Matrix::from_fn(n, n, |i, j| {
                let v = big.get(i, j).clone();
                if i == j {
                    v - lambda.clone()
                } else {
                    v
                }
            });
            let mut kernel = shifted.kernel();
            if kernel.len() != 1 {
                return Err(Error::DegenerateFlags);
            }
            Ok(kernel.remove(0))
        })
        .collect::<Result<Vec<_>>>()?;
    Flag::new(basis)
}
