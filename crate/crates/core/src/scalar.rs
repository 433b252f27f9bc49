//! Scalar backends.
//!
//! Every invariant in this crate is computed over a [`Field`]: either exact
//! arbitrary-precision rationals ([`Rational`]) or IEEE doubles (`f64`). The
//! algebra is written once, generically, and instantiated per backend.
//! [`Scalar`] is the dynamically tagged value used at I/O boundaries, where the
//! backend is only known at runtime.
//!
//! Invariants are stored exponentiated (a triple ratio rather than its log),
//! so exact mode can test identities with `==`. Logarithms are taken only for
//! presentation via [`Field::ln`].

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// Exact backend: a normalized fraction of arbitrary-precision integers.
pub type Rational = BigRational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Backend {
    Exact,
    Float,
}

impl Backend {
    pub fn name(self) -> &'static str {
        match self {
            Backend::Exact => "exact",
            Backend::Float => "float",
        }
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A scalar field the invariants can be evaluated over.
pub trait Field:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + PartialOrd
    + Send
    + Sync
    + 'static
    + Num
    + Signed
    + FromPrimitive
{
    const BACKEND: Backend;

    fn from_bigint(v: &BigInt) -> Self;

    fn to_f64(&self) -> f64;

    /// Zero test used by rank and kernel computations. Exact for rationals;
    /// a small absolute threshold for floats.
    fn negligible(&self) -> bool;

    /// Square root, when it exists in the backend. Rationals only have one when
    /// numerator and denominator are both perfect squares.
    fn sqrt(&self) -> Option<Self>;

    fn determinant(m: &Matrix<Self>) -> Self;

    fn into_scalar(self) -> Scalar;

    fn int(v: i64) -> Self {
        <Self as FromPrimitive>::from_i64(v).expect("every backend represents i64")
    }

    fn checked_div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.clone() / rhs.clone())
    }

    fn recip(&self) -> Result<Self> {
        Self::one().checked_div(self)
    }

    /// Integer power; negative exponents require a nonzero base.
    fn powi(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.recip()? } else { self.clone() };
        let mut out = Self::one();
        for _ in 0..e.unsigned_abs() {
            out = out * base.clone();
        }
        Ok(out)
    }

    /// Natural log as a double; only for presentation of exponentiated invariants.
    fn ln(&self) -> Result<f64>;
}

impl Field for Rational {
    const BACKEND: Backend = Backend::Exact;

    fn from_bigint(v: &BigInt) -> Self {
        Rational::from_integer(v.clone())
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn negligible(&self) -> bool {
        self.is_zero()
    }

    fn sqrt(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let n = self.numer().sqrt();
        let d = self.denom().sqrt();
        if &(&n * &n) == self.numer() && &(&d * &d) == self.denom() {
            Some(Rational::new(n, d))
        } else {
            None
        }
    }

    fn determinant(m: &Matrix<Self>) -> Self {
        rational_det(m)
    }

    fn into_scalar(self) -> Scalar {
        Scalar::Exact(self)
    }

    fn ln(&self) -> Result<f64> {
        if !self.is_positive() {
            return Err(Error::LogOfNonPositive);
        }
        Ok(ln_bigint(self.numer()) - ln_bigint(self.denom()))
    }
}

impl Field for f64 {
    const BACKEND: Backend = Backend::Float;

    fn from_bigint(v: &BigInt) -> Self {
        ToPrimitive::to_f64(v).unwrap_or(f64::NAN)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn negligible(&self) -> bool {
        self.abs() < 1e-9
    }

    fn sqrt(&self) -> Option<Self> {
        (*self >= 0.0).then(|| f64::sqrt(*self))
    }

    fn determinant(m: &Matrix<Self>) -> Self {
        float_det(m)
    }

    fn into_scalar(self) -> Scalar {
        Scalar::Float(self)
    }

    fn ln(&self) -> Result<f64> {
        if *self <= 0.0 || self.is_nan() {
            return Err(Error::LogOfNonPositive);
        }
        Ok(f64::ln(*self))
    }
}

// ln of a big integer without overflowing f64 for huge magnitudes.
fn ln_bigint(v: &BigInt) -> f64 {
    let bits = v.bits();
    if bits <= 1000 {
        return ToPrimitive::to_f64(v).expect("fits in f64").ln();
    }
    let shift = bits - 64;
    let top: BigInt = v >> shift;
    ToPrimitive::to_f64(&top).expect("64-bit prefix").ln() + shift as f64 * std::f64::consts::LN_2
}

/// Fraction-free determinant: clear denominators column by column, run Bareiss
/// elimination over the integers, then divide the column scalings back out.
fn rational_det(m: &Matrix<Rational>) -> Rational {
    let n = m.rows();
    if n == 0 {
        return Rational::one();
    }
    let mut scale = BigInt::one();
    let mut a: Vec<Vec<BigInt>> = vec![Vec::with_capacity(n); n];
    for j in 0..n {
        let lcm = (0..n).fold(BigInt::one(), |acc, i| acc.lcm(m.get(i, j).denom()));
        for (i, row) in a.iter_mut().enumerate() {
            let x = m.get(i, j);
            row.push(x.numer() * (&lcm / x.denom()));
        }
        scale *= lcm;
    }
    Rational::new(bareiss(a), scale)
}

/// Bareiss determinant of an integer matrix. Every division is exact.
pub(crate) fn bareiss(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

/// Gaussian elimination with partial pivoting.
fn float_det(m: &Matrix<f64>) -> f64 {
    let n = m.rows();
    let mut a: Vec<Vec<f64>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    let mut det = 1.0;
    for k in 0..n {
        let piv = (k..n)
            .max_by(|&x, &y| a[x][k].abs().total_cmp(&a[y][k].abs()))
            .expect("nonempty range");
        if a[piv][k] == 0.0 {
            return 0.0;
        }
        if piv != k {
            a.swap(piv, k);
            det = -det;
        }
        det *= a[k][k];
        let (top, rest) = a.split_at_mut(k + 1);
        let pivot = &top[k];
        for row in rest {
            let f = row[k] / pivot[k];
            for (x, p) in row[k..].iter_mut().zip(&pivot[k..]) {
                *x -= f * p;
            }
        }
    }
    det
}

/// Parse an exact rational in `p/q` form (`q` optional) or as a finite decimal
/// such as `-1.25`. The typographic minus sign U+2212 is accepted as well.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim().replace('\u{2212}', "-");
    if let Some((int, frac)) = t.split_once('.') {
        if t.contains('/') || frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::Parse(s.to_string()));
        }
        let digits = BigInt::from_str(&format!("{int}{frac}")).map_err(|_| Error::Parse(s.to_string()))?;
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        return Ok(Rational::new(digits, scale));
    }
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (t.as_str(), "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| Error::Parse(s.to_string()))?;
    let den = BigInt::from_str(den).map_err(|_| Error::Parse(s.to_string()))?;
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(Rational::new(num, den))
}

/// Decimal rendering with 17 significant digits, enough to round-trip a double.
pub fn format_float(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x:?}");
    }
    let mag = x.abs().log10().floor() as i64;
    let prec = (16 - mag).clamp(0, 40) as usize;
    format!("{x:.prec$}")
}

/// A backend-tagged scalar, for values whose backend is chosen at runtime.
#[derive(Debug, Clone, PartialEq)]
pub enum Scalar {
    Exact(Rational),
    Float(f64),
}

impl Scalar {
    pub fn backend(&self) -> Backend {
        match self {
            Scalar::Exact(_) => Backend::Exact,
            Scalar::Float(_) => Backend::Float,
        }
    }

    pub fn exact(num: i64, den: i64) -> Result<Scalar> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar::Exact(Rational::new(num.into(), den.into())))
    }

    pub fn parse_exact(s: &str) -> Result<Scalar> {
        parse_rational(s).map(Scalar::Exact)
    }

    fn zip<T>(
        &self,
        rhs: &Scalar,
        exact: impl FnOnce(&Rational, &Rational) -> Result<T>,
        float: impl FnOnce(f64, f64) -> Result<T>,
    ) -> Result<T> {
        match (self, rhs) {
            (Scalar::Exact(a), Scalar::Exact(b)) => exact(a, b),
            (Scalar::Float(a), Scalar::Float(b)) => float(*a, *b),
            _ => Err(Error::MixedBackends(self.backend().name(), rhs.backend().name())),
        }
    }

    pub fn add(&self, rhs: &Scalar) -> Result<Scalar> {
        self.zip(rhs, |a, b| Ok(Scalar::Exact(a + b)), |a, b| Ok(Scalar::Float(a + b)))
    }

    pub fn sub(&self, rhs: &Scalar) -> Result<Scalar> {
        self.zip(rhs, |a, b| Ok(Scalar::Exact(a - b)), |a, b| Ok(Scalar::Float(a - b)))
    }

    pub fn mul(&self, rhs: &Scalar) -> Result<Scalar> {
        self.zip(rhs, |a, b| Ok(Scalar::Exact(a * b)), |a, b| Ok(Scalar::Float(a * b)))
    }

    pub fn div(&self, rhs: &Scalar) -> Result<Scalar> {
        self.zip(
            rhs,
            |a, b| a.checked_div(b).map(Scalar::Exact),
            |a, b| Field::checked_div(&a, &b).map(Scalar::Float),
        )
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Exact(a) => Scalar::Exact(-a),
            Scalar::Float(a) => Scalar::Float(-a),
        }
    }

    pub fn compare(&self, rhs: &Scalar) -> Result<Ordering> {
        self.zip(
            rhs,
            |a, b| Ok(a.cmp(b)),
            |a, b| a.partial_cmp(&b).ok_or(Error::Parse("NaN".into())),
        )
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(a) => a.is_zero(),
            Scalar::Float(a) => *a == 0.0,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Exact(a) => Field::to_f64(a),
            Scalar::Float(a) => *a,
        }
    }

    /// Natural log as a double. Errors on non-positive input.
    pub fn log_to_float(&self) -> Result<f64> {
        match self {
            Scalar::Exact(a) => a.ln(),
            Scalar::Float(a) => Field::ln(a),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            // num-rational already omits a unit denominator.
            Scalar::Exact(a) => write!(f, "{a}"),
            Scalar::Float(a) => f.write_str(&format_float(*a)),
        }
    }
}
