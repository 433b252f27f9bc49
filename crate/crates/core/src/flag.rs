//! Flags in `F^n` and their projective invariants.
//!
//! A [`Flag`] is stored as an ordered basis `(v_1, ..., v_n)`; its `i`-th
//! subspace is the span of the first `i` vectors. Wedge products of `n`
//! vectors are identified with scalars through the determinant in the fixed
//! coordinate basis, so `X^{n-1} ∧ X^{n-2}Y ∧ ... ∧ Y^{n-1}` is `1`.
//!
//! The triple ratio `T_pqr(E, F, G)` is
//!
//! ```text
//!   X(p+1,q,r-1)   X(p,q-1,r+1)   X(p-1,q+1,r)
//!   ------------ * ------------ * ------------      X(a,b,c) = e^(a) ∧ f^(b) ∧ g^(c)
//!   X(p-1,q,r+1)   X(p,q+1,r-1)   X(p+1,q-1,r)
//! ```
//!
//! and the double ratio is `D_p = -(Y(p)/Y'(p)) * (Y'(p-1)/Y(p-1))` with
//! `Y(i) = e^(i) ∧ f^(n-i-1) ∧ g^(1)` and `Y'` the same with `g'`. A zero
//! index drops the corresponding factor. Each flag contributes equally to
//! numerator and denominator, so both invariants ignore how the basis vectors
//! of a flag are scaled.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Field;

/// Coordinates of a vector relative to the monomial basis `X^{n-1}, X^{n-2}Y, ..., Y^{n-1}`.
pub type VecN<F> = Vec<F>;

#[derive(Debug, Clone, PartialEq)]
pub struct Flag<F> {
    basis: Vec<VecN<F>>,
}

impl<F: Field> Flag<F> {
    /// Builds a flag from `n` linearly independent vectors of length `n`.
    pub fn new(basis: Vec<VecN<F>>) -> Result<Self> {
        let n = basis.len();
        if n == 0 {
            return Err(Error::InvalidDimension(0));
        }
        if wedge_det(&basis)?.is_zero() {
            return Err(Error::DegenerateFlags);
        }
        Ok(Flag { basis })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[VecN<F>] {
        &self.basis
    }

    /// Spanning vectors of the `i`-dimensional subspace `F^(i)`.
    pub fn prefix(&self, i: usize) -> &[VecN<F>] {
        &self.basis[..i]
    }

    /// The flag `M·F`.
    pub fn transform(&self, m: &Matrix<F>) -> Result<Self> {
        let basis = self.basis.iter().map(|v| m.mul_vec(v)).collect::<Result<Vec<_>>>()?;
        Flag::new(basis)
    }

    /// Rescales the `i`-th basis vector. Does not change any subspace.
    pub fn scale_vector(&self, i: usize, c: &F) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::DegenerateFlags);
        }
        let mut basis = self.basis.clone();
        for x in &mut basis[i] {
            *x = x.clone() * c.clone();
        }
        Ok(Flag { basis })
    }

    /// True iff both flags have the same subspace in every dimension.
    pub fn same_subspaces(&self, other: &Flag<F>) -> bool {
        if self.dim() != other.dim() {
            return false;
        }
        (1..self.dim()).all(|i| {
            let cols: Vec<&VecN<F>> = self.prefix(i).iter().chain(other.prefix(i)).collect();
            Matrix::from_columns(&cols).map(|m| m.rank() == i).unwrap_or(false)
        })
    }
}

/// `v_1 ∧ ... ∧ v_n` as the determinant of the matrix with columns `v_j`.
pub fn wedge_det<F: Field, V: AsRef<[F]>>(vectors: &[V]) -> Result<F> {
    let n = vectors.len();
    if let Some(bad) = vectors.iter().find(|v| v.as_ref().len() != n) {
        return Err(Error::DimensionMismatch { expected: n, got: bad.as_ref().len() });
    }
    Matrix::from_columns(vectors)?.det()
}

/// Wedge of the leading `k_i` basis vectors of each flag, in order.
pub fn wedge_prefixes<F: Field>(parts: &[(&Flag<F>, usize)]) -> Result<F> {
    let vectors: Vec<&VecN<F>> = parts.iter().flat_map(|(flag, k)| flag.prefix(*k)).collect();
    wedge_det(&vectors)
}

fn common_dim<F: Field>(flags: &[&Flag<F>]) -> Result<usize> {
    let n = flags[0].dim();
    match flags.iter().find(|f| f.dim() != n) {
        Some(bad) => Err(Error::DimensionMismatch { expected: n, got: bad.dim() }),
        None => Ok(n),
    }
}

fn compositions(total: usize, parts: usize, prefix: &mut Vec<usize>, out: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    if parts == 1 {
        prefix.push(total);
        let keep_going = out(prefix);
        prefix.pop();
        return keep_going;
    }
    for first in 0..=total {
        prefix.push(first);
        let keep_going = compositions(total - first, parts - 1, prefix, out);
        prefix.pop();
        if !keep_going {
            return false;
        }
    }
    true
}

/// Full genericity sweep: for every `n_1 + ... + n_k = n` with `n_i ≥ 0`, the
/// concatenated leading vectors must be linearly independent.
pub fn is_generic<F: Field>(flags: &[&Flag<F>]) -> Result<bool> {
    if flags.is_empty() {
        return Err(Error::InvalidDimension(0));
    }
    let n = common_dim(flags)?;
    let mut generic = true;
    let mut failure = None;
    compositions(n, flags.len(), &mut Vec::new(), &mut |sizes| {
        let parts: Vec<(&Flag<F>, usize)> = flags.iter().copied().zip(sizes.iter().copied()).collect();
        match wedge_prefixes(&parts) {
            Ok(d) if d.is_zero() => {
                generic = false;
                false
            }
            Ok(_) => true,
            Err(e) => {
                failure = Some(e);
                false
            }
        }
    });
    match failure {
        Some(e) => Err(e),
        None => Ok(generic),
    }
}

/// Triple ratio `T_pqr(E, F, G)` for `p, q, r ≥ 1`, `p + q + r = n`.
pub fn triple_ratio<F: Field>(e: &Flag<F>, f: &Flag<F>, g: &Flag<F>, p: usize, q: usize, r: usize) -> Result<F> {
    let n = common_dim(&[e, f, g])?;
    if p == 0 || q == 0 || r == 0 || p + q + r != n {
        return Err(Error::InvalidTriple { p: p as i64, q: q as i64, r: r as i64, n });
    }
    let x = |a: usize, b: usize, c: usize| wedge_prefixes(&[(e, a), (f, b), (g, c)]);
    let num = [x(p + 1, q, r - 1)?, x(p, q - 1, r + 1)?, x(p - 1, q + 1, r)?];
    let den = [x(p - 1, q, r + 1)?, x(p, q + 1, r - 1)?, x(p + 1, q - 1, r)?];
    let mut out = F::one();
    for (a, b) in num.into_iter().zip(den) {
        out = out * a.checked_div(&b).map_err(|_| Error::DegenerateFlags)?;
    }
    Ok(out)
}

/// Double ratio `D_p(E, F, G, G')` for `1 ≤ p ≤ n-1`.
pub fn double_ratio<F: Field>(e: &Flag<F>, f: &Flag<F>, g: &Flag<F>, g2: &Flag<F>, p: usize) -> Result<F> {
    let n = common_dim(&[e, f, g, g2])?;
    if p == 0 || p >= n {
        return Err(Error::IndexOutOfRange { p: p as i64, n });
    }
    let y = |i: usize, last: &Flag<F>| wedge_prefixes(&[(e, i), (f, n - i - 1), (last, 1)]);
    let ratio_p = y(p, g)?.checked_div(&y(p, g2)?).map_err(|_| Error::DegenerateFlags)?;
    let ratio_prev = y(p - 1, g2)?.checked_div(&y(p - 1, g)?).map_err(|_| Error::DegenerateFlags)?;
    Ok(-(ratio_p * ratio_prev))
}
