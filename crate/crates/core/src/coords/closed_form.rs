//! Closed forms for the Fuchsian invariants of the pants lamination.
//!
//! Every wedge factor is a small binomial determinant, evaluated with the same
//! determinant kernel as the generic path but built without any flags. The
//! matrices are written out entry by entry so they can be compared against
//! the formulas line by line.

use num_bigint::BigInt;

use super::{binom_ext, check_p, check_triple, InvariantValue};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::pants::PantsParams;
use crate::scalar::Field;

fn c<F: Field>(m: usize, p: i64) -> F {
    F::from_bigint(&binom_ext(m as i64, p))
}

fn sign<F: Field>(e: usize) -> F {
    if e.is_multiple_of(2) {
        F::one()
    } else {
        -F::one()
    }
}

fn det<F: Field>(size: usize, entry: impl FnMut(usize, usize) -> F) -> F {
    if size == 0 {
        return F::one();
    }
    F::determinant(&Matrix::from_fn(size, size, entry))
}

/// `-(Y(p)/Y'(p)) * (Y'(p-1)/Y(p-1))`.
fn double_ratio_from<F: Field>(y: impl Fn(usize) -> Result<F>, y2: impl Fn(usize) -> Result<F>, p: usize) -> Result<F> {
    let num = y(p)? * y2(p - 1)?;
    let den = y2(p)? * y(p - 1)?;
    Ok(-num.checked_div(&den).map_err(|_| Error::DegenerateFlags)?)
}

/// `X(p+1,q,r-1)/X(p-1,q,r+1) * X(p,q-1,r+1)/X(p,q+1,r-1) * X(p-1,q+1,r)/X(p+1,q-1,r)`.
fn triple_ratio_from<F: Field>(x: impl Fn(usize, usize, usize) -> F, p: usize, q: usize, r: usize) -> Result<F> {
    let num = x(p + 1, q, r - 1) * x(p, q - 1, r + 1) * x(p - 1, q + 1, r);
    let den = x(p - 1, q, r + 1) * x(p, q + 1, r - 1) * x(p + 1, q - 1, r);
    num.checked_div(&den).map_err(|_| Error::DegenerateFlags)
}

/// `σ_p(h_AB)`: `Y(p) = C(n-1,p) (βγ)^{n-p-1}`, `Y'(p) = (-1)^{n-p-1} C(n-1,p)`.
pub fn sigma_hab<F: Field>(n: usize, params: &PantsParams<F>, p: usize) -> Result<InvariantValue<F>> {
    check_p(n, p)?;
    let bg = params.beta_gamma();
    let y = |i: usize| Ok(c::<F>(n - 1, i as i64) * bg.powi((n - i - 1) as i64)?);
    let y2 = |i: usize| Ok(sign::<F>(n - i - 1) * c::<F>(n - 1, i as i64));
    Ok(InvariantValue::new(double_ratio_from(y, y2, p)?))
}

/// `σ_p(h_BC)` with `x = β/(β+γ)`.
///
/// For `p < n-1`, `Y(p) = (-1)^{(n-p)p} det M` where `M` is `(n-p)×(n-p)` with
/// `M[i][j] = C(p+1, i-j)` for `j < n-p-1` and last column `C(n-1, i) x^{n-1-i}`;
/// `Y(n-1) = (-1)^{n-1} x^{n-1}`. `Y'(p) = (-1)^{np+n+1} det [C(p+1, 1+i-j)]` of
/// size `n-p-1`, and `Y'(n-1) = (-1)^{n-1}`.
pub fn sigma_hbc<F: Field>(n: usize, params: &PantsParams<F>, p: usize) -> Result<InvariantValue<F>> {
    check_p(n, p)?;
    let beta = params.beta().clone();
    let x = beta.checked_div(&(beta.clone() + params.gamma().clone()))?;
    let y = |p: usize| -> Result<F> {
        if p == n - 1 {
            return Ok(sign::<F>(n - 1) * x.powi((n - 1) as i64)?);
        }
        let m = n - p;
        let d = det(m, |i, j| {
            if j + 1 < m {
                c(p + 1, i as i64 - j as i64)
            } else {
                c::<F>(n - 1, i as i64) * x.powi((n - 1 - i) as i64).expect("non-negative exponent")
            }
        });
        Ok(sign::<F>((n - p) * p) * d)
    };
    let y2 = |p: usize| -> Result<F> {
        if p == n - 1 {
            return Ok(sign(n - 1));
        }
        let d = det(n - p - 1, |i, j| c(p + 1, 1 + i as i64 - j as i64));
        Ok(sign::<F>(n * p + n + 1) * d)
    };
    Ok(InvariantValue::new(double_ratio_from(y, y2, p)?))
}

/// `σ_p(h_CA)` with `x = α²βγ + 1`.
///
/// For `p > 0`, `Y(p) = (-1)^{np} det M` with `M` of size `(p+1)×(p+1)`,
/// `M[i][j] = C(n-p, n-p-1+i-j)` for `j < p` and last column
/// `C(n-1, n-p-1+i) x^{p-i}`; `Y'(p)` is `(-1)^{np}` times the leading `p×p`
/// block. `Y(0) = Y'(0) = 1`.
pub fn sigma_hca<F: Field>(n: usize, params: &PantsParams<F>, p: usize) -> Result<InvariantValue<F>> {
    check_p(n, p)?;
    let x = params.alpha().clone() * params.alpha().clone() * params.beta_gamma() + F::one();
    let block = |p: usize, i: usize, j: usize| c::<F>(n - p, (n - p - 1 + i) as i64 - j as i64);
    let y = |p: usize| -> Result<F> {
        if p == 0 {
            return Ok(F::one());
        }
        let d = det(p + 1, |i, j| {
            if j < p {
                block(p, i, j)
            } else {
                // p - i ≥ 0 on every row
                c::<F>(n - 1, (n - p - 1 + i) as i64) * x.powi((p - i) as i64).expect("non-negative exponent")
            }
        });
        Ok(sign::<F>(n * p) * d)
    };
    let y2 = |p: usize| -> Result<F> {
        if p == 0 {
            return Ok(F::one());
        }
        Ok(sign::<F>(n * p) * det(p, |i, j| block(p, i, j)))
    };
    Ok(InvariantValue::new(double_ratio_from(y, y2, p)?))
}

/// `X_{T_0}(p, q, r)`: the `q×q` determinant of `C(p+r, p-j+i)`; `1` when `q = 0`.
pub fn x_t0<F: Field>(p: usize, q: usize, r: usize) -> F {
    det(q, |i, j| c(p + r, p as i64 - j as i64 + i as i64))
}

/// `X_{T_1}(p, q, r)`: `(-1)^{q(r+1)}` times the `r×r` determinant with entries
/// `C(p+q, p-j+i) (-βγ)^{q+j-i}`; `(-1)^q` when `r = 0`.
pub fn x_t1<F: Field>(p: usize, q: usize, r: usize, beta_gamma: &F) -> F {
    if r == 0 {
        return sign(q);
    }
    let d = det(r, |i, j| {
        let b = binom_ext((p + q) as i64, p as i64 - j as i64 + i as i64);
        if b == BigInt::from(0) {
            return F::zero();
        }
        // the binomial vanishes unless q + j - i ≥ 0
        let e = (q + j) as i64 - i as i64;
        F::from_bigint(&b) * (-beta_gamma.clone()).powi(e).expect("non-negative exponent")
    });
    sign::<F>(q * (r + 1)) * d
}

pub fn tau_t0<F: Field>(n: usize, p: usize, q: usize, r: usize) -> Result<InvariantValue<F>> {
    check_triple(n, p, q, r)?;
    Ok(InvariantValue::new(triple_ratio_from(x_t0::<F>, p, q, r)?))
}

/// Individual `X_{T_1}` factors carry signs; only the assembled ratio must be positive.
pub fn tau_t1<F: Field>(n: usize, params: &PantsParams<F>, p: usize, q: usize, r: usize) -> Result<InvariantValue<F>> {
    check_triple(n, p, q, r)?;
    let bg = params.beta_gamma();
    let value = triple_ratio_from(|a, b, c| x_t1(a, b, c, &bg), p, q, r)?;
    if !value.is_positive() {
        return Err(Error::PositivityViolation);
    }
    Ok(InvariantValue::new(value))
}
