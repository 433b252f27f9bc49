//! Triangle and shearing invariants of Fuchsian representations along the
//! pants lamination, the coordinate vector they form, and the boundary length
//! identities they satisfy.

pub mod closed_form;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::binomial;

use crate::error::{Error, Result};
use crate::flag::{double_ratio, triple_ratio, Flag};
use crate::pants::lamination::{
    boundary_incidence, leaf_quadruple, triangle_vertices, Boundary, Direction, Leaf, Triangle,
};
use crate::pants::{build_rep, PantsParams, ProjPoint};
use crate::scalar::Field;
use crate::veronese::{eigen_ratios, flag_curve};

/// `m!/(p!(m-p)!)` for `0 ≤ p ≤ m`, and `0` for any other `p`.
pub fn binom_ext(m: i64, p: i64) -> BigInt {
    if m < 0 || p < 0 || p > m {
        return BigInt::from(0);
    }
    binomial(BigInt::from(m), BigInt::from(p))
}

pub(crate) fn check_p(n: usize, p: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidDimension(n));
    }
    if p == 0 || p >= n {
        return Err(Error::IndexOutOfRange { p: p as i64, n });
    }
    Ok(())
}

pub(crate) fn check_triple(n: usize, p: usize, q: usize, r: usize) -> Result<()> {
    if p == 0 || q == 0 || r == 0 || p + q + r != n {
        return Err(Error::InvalidTriple { p: p as i64, q: q as i64, r: r as i64, n });
    }
    Ok(())
}

/// An exponentiated invariant together with its logarithm, when defined.
#[derive(Debug, Clone, PartialEq)]
pub struct InvariantValue<F> {
    pub exp_value: F,
    pub log_value: Option<f64>,
}

impl<F: Field> InvariantValue<F> {
    pub fn new(exp_value: F) -> Self {
        let log_value = exp_value.ln().ok();
        InvariantValue { exp_value, log_value }
    }
}

pub type TauIndex = (usize, usize, usize);

/// All `(p, q, r)` with `p, q, r ≥ 1` and `p + q + r = n`, in lexicographic order.
pub fn tau_indices(n: usize) -> Vec<TauIndex> {
    let mut out = Vec::new();
    for p in 1..n {
        for q in 1..n - p {
            if n - p - q >= 1 {
                out.push((p, q, n - p - q));
            }
        }
    }
    out
}

/// `3(n-1)` shearing entries plus `(n-1)(n-2)` triangle entries.
pub fn expected_entry_count(n: usize) -> usize {
    n * n - 1
}

/// The image of a Fuchsian point under the coordinate map.
#[derive(Debug, Clone, PartialEq)]
pub struct CoordinateVector<F> {
    pub n: usize,
    pub sigma: BTreeMap<(Leaf, usize), InvariantValue<F>>,
    pub tau: BTreeMap<(Triangle, TauIndex), InvariantValue<F>>,
}

impl<F: Field> CoordinateVector<F> {
    pub fn entry_count(&self) -> usize {
        self.sigma.len() + self.tau.len()
    }

    pub fn sigma(&self, leaf: Leaf, p: usize) -> Result<&InvariantValue<F>> {
        self.sigma.get(&(leaf, p)).ok_or_else(|| Error::MissingEntry(format!("sigma {leaf} p={p}")))
    }

    pub fn tau(&self, triangle: Triangle, pqr: TauIndex) -> Result<&InvariantValue<F>> {
        let (p, q, r) = pqr;
        self.tau.get(&(triangle, pqr)).ok_or_else(|| Error::MissingEntry(format!("tau {triangle} ({p},{q},{r})")))
    }

    /// Entries in output order: shearing (h_AB, h_BC, h_CA; p ascending), then
    /// triangle (T0, T1; (p,q,r) lexicographic). Names look like `sigma_hAB_p1`
    /// and `tau_T0_p1q1r1`.
    pub fn named_entries(&self) -> Vec<(String, &InvariantValue<F>)> {
        let mut out = Vec::with_capacity(self.entry_count());
        for leaf in Leaf::ALL {
            for p in 1..self.n {
                if let Some(v) = self.sigma.get(&(leaf, p)) {
                    out.push((format!("sigma_{}_p{p}", leaf.short()), v));
                }
            }
        }
        for tri in Triangle::ALL {
            for (p, q, r) in tau_indices(self.n) {
                if let Some(v) = self.tau.get(&(tri, (p, q, r))) {
                    out.push((format!("tau_{}_p{p}q{q}r{r}", tri.name()), v));
                }
            }
        }
        out
    }
}

fn curve_flags<F: Field>(points: &[ProjPoint<F>], n: usize) -> Result<Vec<Flag<F>>> {
    points.iter().map(|x| flag_curve(x, n)).collect()
}

/// `T_pqr(ξ(x), ξ(y), ξ(z))` with `(x, y, z)` the triangle's vertices read
/// clockwise starting from `vertex`.
pub fn triangle_invariant_at<F: Field>(
    n: usize,
    params: &PantsParams<F>,
    triangle: Triangle,
    vertex: usize,
    pqr: TauIndex,
) -> Result<InvariantValue<F>> {
    let (p, q, r) = pqr;
    check_triple(n, p, q, r)?;
    let mut vertices = triangle_vertices(triangle, params).to_vec();
    vertices.rotate_left(vertex % 3);
    let f = curve_flags(&vertices, n)?;
    Ok(InvariantValue::new(triple_ratio(&f[0], &f[1], &f[2], p, q, r)?))
}

/// Triangle invariant at the vertex `∞` from wedge determinants of flags.
pub fn triangle_invariant_generic<F: Field>(
    n: usize,
    params: &PantsParams<F>,
    triangle: Triangle,
    pqr: TauIndex,
) -> Result<InvariantValue<F>> {
    triangle_invariant_at(n, params, triangle, 0, pqr)
}

/// Shearing invariant from the double ratio of the leaf's quadruple of flags.
pub fn shearing_invariant_generic<F: Field>(
    n: usize,
    params: &PantsParams<F>,
    leaf: Leaf,
    p: usize,
) -> Result<InvariantValue<F>> {
    check_p(n, p)?;
    let quad = leaf_quadruple(leaf, params)?;
    let f = curve_flags(&quad.points().map(Clone::clone), n)?;
    Ok(InvariantValue::new(double_ratio(&f[0], &f[1], &f[2], &f[3], p)?))
}

pub fn cf_sigma<F: Field>(n: usize, params: &PantsParams<F>, leaf: Leaf, p: usize) -> Result<InvariantValue<F>> {
    match leaf {
        Leaf::HAb => closed_form::sigma_hab(n, params, p),
        Leaf::HBc => closed_form::sigma_hbc(n, params, p),
        Leaf::HCa => closed_form::sigma_hca(n, params, p),
    }
}

pub fn cf_tau<F: Field>(n: usize, params: &PantsParams<F>, triangle: Triangle, pqr: TauIndex) -> Result<InvariantValue<F>> {
    let (p, q, r) = pqr;
    match triangle {
        Triangle::T0 => closed_form::tau_t0(n, p, q, r),
        Triangle::T1 => closed_form::tau_t1(n, params, p, q, r),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Generic,
    ClosedForm,
}

pub fn assemble_phi<F: Field>(n: usize, params: &PantsParams<F>, method: Method) -> Result<CoordinateVector<F>> {
    if n < 2 {
        return Err(Error::InvalidDimension(n));
    }
    let mut sigma = BTreeMap::new();
    for leaf in Leaf::ALL {
        for p in 1..n {
            let v = match method {
                Method::Generic => shearing_invariant_generic(n, params, leaf, p)?,
                Method::ClosedForm => cf_sigma(n, params, leaf, p)?,
            };
            sigma.insert((leaf, p), v);
        }
    }
    let mut tau = BTreeMap::new();
    for tri in Triangle::ALL {
        for pqr in tau_indices(n) {
            let v = match method {
                Method::Generic => triangle_invariant_generic(n, params, tri, pqr)?,
                Method::ClosedForm => cf_tau(n, params, tri, pqr)?,
            };
            tau.insert((tri, pqr), v);
        }
    }
    Ok(CoordinateVector { n, sigma, tau })
}

/// `τ_pqr(T, v_k)` recovered from the entries stored at `v_0` by rotating indices:
/// the vertex after `v_0` sees `τ_rpq(v_0)`, the one after that `τ_qrp(v_0)`.
fn tau_at_vertex<F: Field>(coords: &CoordinateVector<F>, triangle: Triangle, vertex: usize, pqr: TauIndex) -> Result<F> {
    let (p, q, r) = pqr;
    let rotated = match vertex % 3 {
        0 => (p, q, r),
        1 => (r, p, q),
        _ => (q, r, p),
    };
    Ok(coords.tau(triangle, rotated)?.exp_value.clone())
}

/// Exponentiated `R_p` for a boundary curve: the product of the shearing terms of
/// the two leaves spiraling onto it (`σ_p` toward, `σ_{n-p}` away) and the
/// triangle terms `τ_pqr` with `q + r = n - p` at the triangle vertices on it.
pub fn boundary_sum_r<F: Field>(coords: &CoordinateVector<F>, boundary: Boundary, p: usize) -> Result<InvariantValue<F>> {
    let n = coords.n;
    check_p(n, p)?;
    let inc = boundary_incidence(boundary);
    let mut out = F::one();
    for (leaf, dir) in inc.leaves {
        let index = match dir {
            Direction::Toward => p,
            Direction::Away => n - p,
        };
        out = out * coords.sigma(leaf, index)?.exp_value.clone();
    }
    for (tri, vertex) in inc.vertices {
        for q in 1..n - p {
            out = out * tau_at_vertex(coords, tri, vertex, (p, q, n - p - q))?;
        }
    }
    Ok(InvariantValue::new(out))
}

/// `R_p` with coordinates assembled from the closed forms.
pub fn boundary_sum_r_for<F: Field>(
    n: usize,
    params: &PantsParams<F>,
    boundary: Boundary,
    p: usize,
) -> Result<InvariantValue<F>> {
    boundary_sum_r(&assemble_phi(n, params, Method::ClosedForm)?, boundary, p)
}

/// `λ_p / λ_{p+1}` for the image of a boundary generator under `ι_n`.
pub fn eigen_length_ratio<F: Field>(n: usize, params: &PantsParams<F>, boundary: Boundary, p: usize) -> Result<F> {
    check_p(n, p)?;
    let rep = build_rep(params)?;
    Ok(eigen_ratios(boundary.generator(&rep), n)?.swap_remove(p - 1))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolytopeReport {
    pub checks: Vec<Check>,
}

impl PolytopeReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Positivity of every entry, length positivity `R_p > 1` for every boundary and
/// `p`, and the entry count `n² - 1`.
pub fn polytope_check<F: Field>(coords: &CoordinateVector<F>) -> PolytopeReport {
    let n = coords.n;
    let positive = coords.sigma.values().chain(coords.tau.values()).all(|v| v.exp_value.is_positive());
    let length_positive = Boundary::ALL.iter().all(|&b| {
        (1..n).all(|p| boundary_sum_r(coords, b, p).map(|r| r.exp_value > F::one()).unwrap_or(false))
    });
    let count = coords.entry_count() == expected_entry_count(n);
    let check = |name: &str, pass| Check { name: name.to_string(), pass };
    PolytopeReport {
        checks: vec![check("positivity", positive), check("length_positivity", length_positive), check("entry_count", count)],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn sample() -> PantsParams<Rational> {
        PantsParams::new(q(2, 1), q(1, 1), q(1, 2)).unwrap()
    }

    fn others() -> Vec<PantsParams<Rational>> {
        vec![
            sample(),
            PantsParams::new(q(7, 3), q(5, 11), q(2, 9)).unwrap(),
            PantsParams::new(q(11, 10), q(13, 2), q(8, 9)).unwrap(),
            PantsParams::new(q(3, 2), q(4, 5), q(1, 7)).unwrap(),
        ]
    }

    #[test]
    fn binomials() {
        assert_eq!(binom_ext(4, 2), BigInt::from(6));
        assert_eq!(binom_ext(3, -1), BigInt::from(0));
        assert_eq!(binom_ext(2, 3), BigInt::from(0));
        assert_eq!(binom_ext(0, 0), BigInt::from(1));
    }

    #[test]
    fn sample_triangle_invariants() {
        let p = sample();
        let one = q(1, 1);
        assert_eq!(triangle_invariant_generic(3, &p, Triangle::T0, (1, 1, 1)).unwrap().exp_value, one);
        assert_eq!(triangle_invariant_generic(4, &p, Triangle::T0, (1, 1, 2)).unwrap().exp_value, one);
        assert_eq!(triangle_invariant_generic(3, &p, Triangle::T1, (1, 1, 1)).unwrap().exp_value, one);
        assert_eq!(triangle_invariant_generic(3, &p, Triangle::T0, (1, 1, 1)).unwrap().log_value, Some(0.0));
    }

    #[test]
    fn t0_wedge_factors() {
        let x = |a, b, c| closed_form::x_t0::<Rational>(a, b, c);
        assert_eq!(x(2, 1, 1), q(3, 1));
        assert_eq!(x(1, 2, 1), q(3, 1));
        assert_eq!(x(2, 2, 0), q(1, 1));
        assert_eq!(x(1, 1, 2), q(3, 1));
        assert_eq!(x(3, 0, 1), q(1, 1));
        // same factors from the flags, up to the sign fixed by the basis order
        let f: Vec<_> = [ProjPoint::infinity(), ProjPoint::finite(q(1, 1)), ProjPoint::finite(q(0, 1))]
            .iter()
            .map(|x| flag_curve(x, 4).unwrap())
            .collect();
        let wedge = |a, b, c| crate::flag::wedge_prefixes(&[(&f[0], a), (&f[1], b), (&f[2], c)]).unwrap();
        assert_eq!(wedge(2, 1, 1), q(3, 1));
        assert_eq!(wedge(1, 2, 1), q(-3, 1));
    }

    #[test]
    fn t1_factor_sign() {
        assert_eq!(closed_form::x_t1(1, 1, 1, &q(1, 2)), q(-1, 1));
        assert_eq!(closed_form::x_t1(2, 3, 0, &q(1, 2)), q(-1, 1));
        assert_eq!(cf_tau(3, &sample(), Triangle::T1, (1, 1, 1)).unwrap().exp_value, q(1, 1));
    }

    #[test]
    fn tau_index_validation() {
        assert!(matches!(closed_form::tau_t0::<Rational>(3, 0, 1, 2), Err(Error::InvalidTriple { .. })));
        assert!(triangle_invariant_generic(4, &sample(), Triangle::T0, (1, 1, 1)).is_err());
    }

    #[test]
    fn sample_shears() {
        let p = sample();
        for leaf in Leaf::ALL {
            assert_eq!(shearing_invariant_generic(2, &p, leaf, 1).unwrap().exp_value, q(2, 1));
            assert_eq!(cf_sigma(2, &p, leaf, 1).unwrap().exp_value, q(2, 1));
        }
        assert_eq!(closed_form::sigma_hab(5, &p, 3).unwrap().exp_value, q(2, 1));
        assert!(closed_form::sigma_hbc(4, &p, 4).is_err());
        assert!(closed_form::sigma_hca(4, &p, 0).is_err());
        let log = shearing_invariant_generic(2, &p, Leaf::HAb, 1).unwrap().log_value.unwrap();
        assert!((log - 2f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn closed_forms_match_generic() {
        for params in others() {
            for n in 2..=6 {
                let g = assemble_phi(n, &params, Method::Generic).unwrap();
                let c = assemble_phi(n, &params, Method::ClosedForm).unwrap();
                assert_eq!(g, c, "n = {n}");
            }
        }
    }

    #[test]
    fn fuchsian_values() {
        for params in others() {
            let bg = params.beta_gamma();
            let expected = [
                (Leaf::HAb, Field::recip(&bg).unwrap()),
                (Leaf::HBc, params.beta().clone() / params.gamma().clone()),
                (Leaf::HCa, params.alpha().clone() * params.alpha().clone() * bg.clone()),
            ];
            for n in 2..=6 {
                let c = assemble_phi(n, &params, Method::ClosedForm).unwrap();
                for (leaf, value) in &expected {
                    for p in 1..n {
                        assert_eq!(&c.sigma(*leaf, p).unwrap().exp_value, value);
                    }
                }
                assert!(c.tau.values().all(|v| v.exp_value == q(1, 1)));
            }
        }
    }

    #[test]
    fn sample_assembly() {
        let c2 = assemble_phi(2, &sample(), Method::Generic).unwrap();
        assert_eq!(c2.entry_count(), 3);
        assert!(c2.sigma.values().all(|v| v.exp_value == q(2, 1)));
        let c3 = assemble_phi(3, &sample(), Method::Generic).unwrap();
        assert_eq!(c3.entry_count(), 8);
        assert_eq!(c3.tau.len(), 2);
        let names: Vec<String> = c3.named_entries().into_iter().map(|(n, _)| n).collect();
        assert_eq!(names[0], "sigma_hAB_p1");
        assert_eq!(names[5], "sigma_hCA_p2");
        assert_eq!(names[6], "tau_T0_p1q1r1");
        assert_eq!(names[7], "tau_T1_p1q1r1");
    }

    #[test]
    fn counts() {
        for n in 2..=10 {
            assert_eq!(tau_indices(n).len(), (n - 1) * (n - 2) / 2);
            assert_eq!(3 * (n - 1) + 2 * tau_indices(n).len(), expected_entry_count(n));
        }
    }

    #[test]
    fn boundary_sums_at_sample() {
        let p = sample();
        assert_eq!(boundary_sum_r_for(2, &p, Boundary::A, 1).unwrap().exp_value, q(4, 1));
        for pp in 1..3 {
            assert_eq!(boundary_sum_r_for(3, &p, Boundary::B, pp).unwrap().exp_value, q(4, 1));
        }
    }

    #[test]
    fn boundary_sums_match_eigenvalues() {
        for params in others() {
            for n in 2..=6 {
                let coords = assemble_phi(n, &params, Method::ClosedForm).unwrap();
                for b in Boundary::ALL {
                    for p in 1..n {
                        let r = boundary_sum_r(&coords, b, p).unwrap().exp_value;
                        assert_eq!(r, eigen_length_ratio(n, &params, b, p).unwrap(), "{b} n={n} p={p}");
                        assert!(r > q(1, 1));
                    }
                }
            }
        }
    }

    #[test]
    fn rotated_vertices_match_rotated_indices() {
        for params in others() {
            for n in 3..=6 {
                for tri in Triangle::ALL {
                    for (p, qq, r) in tau_indices(n) {
                        let at = |v, t| triangle_invariant_at(n, &params, tri, v, t).unwrap().exp_value;
                        assert_eq!(at(0, (p, qq, r)), at(1, (qq, r, p)));
                        assert_eq!(at(0, (p, qq, r)), at(2, (r, p, qq)));
                    }
                }
            }
        }
    }

    #[test]
    fn polytope_report() {
        let coords = assemble_phi(3, &sample(), Method::ClosedForm).unwrap();
        assert!(polytope_check(&coords).all_pass());

        let mut flat = coords.clone();
        for v in flat.sigma.values_mut() {
            *v = InvariantValue::new(q(1, 1));
        }
        let report = polytope_check(&flat);
        assert!(!report.checks.iter().find(|c| c.name == "length_positivity").unwrap().pass);

        let mut missing = coords.clone();
        missing.tau.remove(&(Triangle::T1, (1, 1, 1)));
        let report = polytope_check(&missing);
        assert!(!report.checks.iter().find(|c| c.name == "entry_count").unwrap().pass);
    }
}
