//! Fuchsian representations of the pair of pants.
//!
//! The fundamental group is `<a, b, c | abc = 1>`. For boundary lengths
//! `(l_A, l_B, l_C)` the representation is normalized so that the attracting
//! fixed points of `a`, `b`, `c` are `∞`, `0`, `1`:
//!
//! ```text
//!   a = [ α   αβγ + 1/α ]      b = [ γ            0  ]      c = (ab)^-1
//!       [ 0   1/α       ]          [ -1/β - 1/γ   1/γ ]
//! ```
//!
//! with `α = e^{l_A/2}`, `β = e^{(l_C - l_A)/2}`, `γ = e^{-l_B/2}`.

pub mod lamination;

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Field;

/// A point `[u : v]` of the projective line; `∞ = [1 : 0]`, finite `r = [r : 1]`.
#[derive(Debug, Clone)]
pub struct ProjPoint<F> {
    u: F,
    v: F,
}

impl<F: Field> ProjPoint<F> {
    pub fn new(u: F, v: F) -> Result<Self> {
        if u.is_zero() && v.is_zero() {
            return Err(Error::DegenerateFlags);
        }
        Ok(ProjPoint { u, v })
    }

    pub fn infinity() -> Self {
        ProjPoint { u: F::one(), v: F::zero() }
    }

    pub fn finite(r: F) -> Self {
        ProjPoint { u: r, v: F::one() }
    }

    pub fn u(&self) -> &F {
        &self.u
    }

    pub fn v(&self) -> &F {
        &self.v
    }

    pub fn is_infinity(&self) -> bool {
        self.v.is_zero()
    }

    /// The affine coordinate `u / v`, or `None` at infinity.
    pub fn affine(&self) -> Option<F> {
        self.u.checked_div(&self.v).ok()
    }
}

impl<F: Field> PartialEq for ProjPoint<F> {
    fn eq(&self, other: &Self) -> bool {
        self.u.clone() * other.v.clone() == other.u.clone() * self.v.clone()
    }
}

impl<F: Field> fmt::Display for ProjPoint<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.affine() {
            Some(r) => write!(f, "{r}"),
            None => f.write_str("∞"),
        }
    }
}

/// A 2×2 matrix `[[a, b], [c, d]]`, used as a lift of an element of PSL(2).
#[derive(Debug, Clone, PartialEq)]
pub struct Mat2<F> {
    pub a: F,
    pub b: F,
    pub c: F,
    pub d: F,
}

/// Fixed points of a hyperbolic Möbius map, with the eigenvalue attached to each.
#[derive(Debug, Clone)]
pub struct FixedPoints<F> {
    pub attracting: ProjPoint<F>,
    pub repelling: ProjPoint<F>,
    /// Eigenvalue of the attracting eigenvector; `|expanding| > 1`.
    pub expanding: F,
    pub contracting: F,
}

impl<F: Field> PartialEq for FixedPoints<F> {
    fn eq(&self, other: &Self) -> bool {
        self.attracting == other.attracting
            && self.repelling == other.repelling
            && self.expanding == other.expanding
            && self.contracting == other.contracting
    }
}

impl<F: Field> Mat2<F> {
    pub fn new(a: F, b: F, c: F, d: F) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn identity() -> Self {
        Mat2::new(F::one(), F::zero(), F::zero(), F::one())
    }

    pub fn det(&self) -> F {
        self.a.clone() * self.d.clone() - self.b.clone() * self.c.clone()
    }

    pub fn trace(&self) -> F {
        self.a.clone() + self.d.clone()
    }

    pub fn mul(&self, o: &Mat2<F>) -> Mat2<F> {
        let (a, b, c, d) = (&self.a, &self.b, &self.c, &self.d);
        Mat2::new(
            a.clone() * o.a.clone() + b.clone() * o.c.clone(),
            a.clone() * o.b.clone() + b.clone() * o.d.clone(),
            c.clone() * o.a.clone() + d.clone() * o.c.clone(),
            c.clone() * o.b.clone() + d.clone() * o.d.clone(),
        )
    }

    pub fn inverse(&self) -> Result<Mat2<F>> {
        let det = self.det();
        let s = |x: F| x.checked_div(&det);
        Ok(Mat2::new(s(self.d.clone())?, s(-self.b.clone())?, s(-self.c.clone())?, s(self.a.clone())?))
    }

    /// Möbius action `[u : v] ↦ [a u + b v : c u + d v]`.
    pub fn apply(&self, x: &ProjPoint<F>) -> ProjPoint<F> {
        ProjPoint {
            u: self.a.clone() * x.u.clone() + self.b.clone() * x.v.clone(),
            v: self.c.clone() * x.u.clone() + self.d.clone() * x.v.clone(),
        }
    }

    pub fn is_hyperbolic(&self) -> bool {
        let t = self.trace();
        t.clone() * t > F::int(4)
    }

    /// Attracting and repelling fixed points. A fixed point `[u : v]` is an
    /// eigenvector with eigenvalue `μ`; the derivative of the Möbius map there
    /// is `1/μ²`, so the attracting point carries `|μ| > 1`.
    pub fn fixed_points(&self) -> Result<FixedPoints<F>> {
        if !self.is_hyperbolic() {
            return Err(Error::NotHyperbolic);
        }
        let t = self.trace();
        let two = F::int(2);
        let disc = t.clone() * t.clone() - F::int(4) * self.det();
        let s = disc.sqrt().ok_or(Error::IrrationalFixedPoints)?;
        let mu1 = (t.clone() + s.clone()) / two.clone();
        let mu2 = (t - s) / two;
        let (expanding, contracting) = if mu1.abs() > mu2.abs() { (mu1, mu2) } else { (mu2, mu1) };
        Ok(FixedPoints {
            attracting: self.eigenvector(&expanding),
            repelling: self.eigenvector(&contracting),
            expanding,
            contracting,
        })
    }

    fn eigenvector(&self, mu: &F) -> ProjPoint<F> {
        if !self.b.is_zero() {
            ProjPoint { u: self.b.clone(), v: mu.clone() - self.a.clone() }
        } else if !self.c.is_zero() {
            ProjPoint { u: mu.clone() - self.d.clone(), v: self.c.clone() }
        } else if *mu == self.a {
            ProjPoint::infinity()
        } else {
            ProjPoint::finite(F::zero())
        }
    }
}

/// Hyperbolic lengths of the three boundary components.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PantsLengths {
    pub l_a: f64,
    pub l_b: f64,
    pub l_c: f64,
}

impl PantsLengths {
    pub fn new(l_a: f64, l_b: f64, l_c: f64) -> Result<Self> {
        for (name, l) in [("l_A", l_a), ("l_B", l_b), ("l_C", l_c)] {
            if !(l.is_finite() && l > 0.0) {
                return Err(Error::InvalidLengths(format!("{name} = {l} must be positive")));
            }
        }
        Ok(PantsLengths { l_a, l_b, l_c })
    }
}

/// One named inequality of the parameter domain and whether it holds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DomainCheck {
    pub name: &'static str,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DomainReport {
    pub checks: Vec<DomainCheck>,
}

impl DomainReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> Vec<&'static str> {
        self.checks.iter().filter(|c| !c.pass).map(|c| c.name).collect()
    }
}

/// Evaluates the fixed-point ordering inequalities and their simplified forms
/// for arbitrary `(α, β, γ)`. Any inequality that would divide by zero fails.
pub fn check_domain<F: Field>(alpha: &F, beta: &F, gamma: &F) -> DomainReport {
    let (a, b, g) = (alpha.clone(), beta.clone(), gamma.clone());
    let one = F::one();
    let zero = F::zero();
    let lt = |x: Result<F>, y: &F| x.map(|x| x < *y).unwrap_or(false);
    let gt = |x: Result<F>, y: &F| x.map(|x| x > *y).unwrap_or(false);
    let inv = |x: &F| x.recip();

    // (α²βγ + 1) / (1 - α²)
    let fix_a = (a.clone() * a.clone() * b.clone() * g.clone() + one.clone())
        .checked_div(&(one.clone() - a.clone() * a.clone()));
    // (γ - 1/γ) / (-1/β - 1/γ)
    let fix_b = inv(&g).and_then(|gi| {
        let bi = inv(&b)?;
        (g.clone() - gi.clone()).checked_div(&(-bi - gi))
    });
    // (αβ + 1/(αγ)) / (1/(αγ) + 1/(αβ))
    let fix_c = (|| {
        let ag = inv(&(a.clone() * g.clone()))?;
        let ab = inv(&(a.clone() * b.clone()))?;
        (a.clone() * b.clone() + ag.clone()).checked_div(&(ag + ab))
    })();
    let ineq4 = (|| {
        let (bi, gi) = (inv(&b)?, inv(&g)?);
        Ok::<_, Error>(bi.clone() + gi > zero && bi + g.clone() > zero)
    })()
    .unwrap_or(false);
    let ineq5 = inv(&b).map(|bi| a.clone() * a.clone() * b.clone() > bi).unwrap_or(false);

    let checks = vec![
        DomainCheck { name: "(1) repelling fixed point of a is negative", pass: lt(fix_a, &zero) },
        DomainCheck {
            name: "(2) repelling fixed point of b lies in (0, 1)",
            pass: fix_b.map(|x| x > zero && x < one).unwrap_or(false),
        },
        DomainCheck { name: "(3) repelling fixed point of c exceeds 1", pass: gt(fix_c, &one) },
        DomainCheck { name: "(4) 1/beta + 1/gamma > 0 and 1/beta + gamma > 0", pass: ineq4 },
        DomainCheck { name: "(5) alpha^2 beta > 1/beta", pass: ineq5 },
        DomainCheck { name: "(6) alpha > 1", pass: a > one },
        DomainCheck { name: "beta > 0", pass: b > zero },
        DomainCheck { name: "0 < gamma < 1", pass: g > zero && g < one },
    ];
    DomainReport { checks }
}

/// Validated `(α, β, γ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PantsParams<F> {
    alpha: F,
    beta: F,
    gamma: F,
}

impl<F: Field> PantsParams<F> {
    pub fn new(alpha: F, beta: F, gamma: F) -> Result<Self> {
        let report = check_domain(&alpha, &beta, &gamma);
        if !report.all_pass() {
            return Err(Error::InvalidParams(report.failures().join("; ")));
        }
        Ok(PantsParams { alpha, beta, gamma })
    }

    pub fn alpha(&self) -> &F {
        &self.alpha
    }

    pub fn beta(&self) -> &F {
        &self.beta
    }

    pub fn gamma(&self) -> &F {
        &self.gamma
    }

    pub fn check_domain(&self) -> DomainReport {
        check_domain(&self.alpha, &self.beta, &self.gamma)
    }

    /// `βγ`, which reappears in every lift built from `a^{-1}`.
    pub fn beta_gamma(&self) -> F {
        self.beta.clone() * self.gamma.clone()
    }
}

pub fn params_from_lengths(lengths: &PantsLengths) -> Result<PantsParams<f64>> {
    let l = PantsLengths::new(lengths.l_a, lengths.l_b, lengths.l_c)?;
    PantsParams::new((l.l_a / 2.0).exp(), ((l.l_c - l.l_a) / 2.0).exp(), (-l.l_b / 2.0).exp())
}

pub fn lengths_from_params<F: Field>(params: &PantsParams<F>) -> Result<PantsLengths> {
    let l_a = 2.0 * params.alpha.ln()?;
    let l_b = -2.0 * params.gamma.ln()?;
    let l_c = 2.0 * (params.alpha.clone() * params.beta.clone()).ln()?;
    PantsLengths::new(l_a, l_b, l_c)
}

/// Fixed points of `a`, `b`, `c` read off from the parametrization, as
/// `(attracting, repelling)` pairs: `a` fixes `∞` and `(α²βγ + 1)/(1 - α²)`,
/// `b` fixes `0` and `(γ - 1/γ)/(-1/β - 1/γ)`, `c` fixes `1` and
/// `(αβ + 1/(αγ))/(1/(αγ) + 1/(αβ))`.
pub fn predicted_fixed_points<F: Field>(params: &PantsParams<F>) -> Result<[(ProjPoint<F>, ProjPoint<F>); 3]> {
    let (a, b, g) = (params.alpha.clone(), params.beta.clone(), params.gamma.clone());
    let one = F::one();
    let fix_a = (a.clone() * a.clone() * b.clone() * g.clone() + one.clone()).checked_div(&(one.clone() - a.clone() * a.clone()))?;
    let (bi, gi) = (b.recip()?, g.recip()?);
    let fix_b = (g.clone() - gi.clone()).checked_div(&(-bi - gi))?;
    let ag = (a.clone() * g).recip()?;
    let ab = (a.clone() * b.clone()).recip()?;
    let fix_c = (a * b + ag.clone()).checked_div(&(ag + ab))?;
    Ok([
        (ProjPoint::infinity(), ProjPoint::finite(fix_a)),
        (ProjPoint::finite(F::zero()), ProjPoint::finite(fix_b)),
        (ProjPoint::finite(one), ProjPoint::finite(fix_c)),
    ])
}

/// Images of the three boundary generators.
#[derive(Debug, Clone, PartialEq)]
pub struct PantsRep<F> {
    pub a: Mat2<F>,
    pub b: Mat2<F>,
    pub c: Mat2<F>,
}

pub fn build_rep<F: Field>(params: &PantsParams<F>) -> Result<PantsRep<F>> {
    let (al, be, ga) = (params.alpha.clone(), params.beta.clone(), params.gamma.clone());
    let al_inv = al.recip()?;
    let ga_inv = ga.recip()?;
    let a = Mat2::new(al.clone(), al * be.clone() * ga.clone() + al_inv.clone(), F::zero(), al_inv);
    let b = Mat2::new(ga, F::zero(), -be.recip()? - ga_inv.clone(), ga_inv);
    let c = a.mul(&b).inverse()?;
    Ok(PantsRep { a, b, c })
}

impl<F: Field> PantsRep<F> {
    pub fn product(&self) -> Mat2<F> {
        self.a.mul(&self.b).mul(&self.c)
    }
}
