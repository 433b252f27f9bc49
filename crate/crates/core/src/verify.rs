//! Randomized self-check of every identity the coordinates rely on.
//!
//! Each sample draws rational pants parameters from a seeded generator and runs
//! all checks exactly for every `n` in `2..=max_n`. Runs are deterministic for
//! a given configuration.

use std::fmt;

use crate::coords::{
    assemble_phi, boundary_sum_r, eigen_length_ratio, polytope_check, tau_indices, triangle_invariant_at,
    CoordinateVector, Method,
};
use crate::error::{Error, Result};
use crate::flag::{is_generic, triple_ratio, Flag};
use crate::pants::lamination::{leaf_quadruple, triangle_vertices, Boundary, Leaf, Triangle};
use crate::pants::{build_rep, predicted_fixed_points, Mat2, PantsParams, ProjPoint};
use crate::sampling::{random_generic_flags, random_params, random_point, rng, SeededRng};
use crate::scalar::Rational;
use crate::veronese::{flag_curve, stable_flag, sym_power};

/// Check categories in report order.
pub const CATEGORIES: [&str; 12] = [
    "domain inequalities",
    "group relation",
    "fixed-point formulas",
    "equivariance",
    "stable flag",
    "genericity",
    "triple ratio symmetry",
    "rotation relation",
    "triangle constancy",
    "closed form vs generic",
    "length identity",
    "positivity",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyConfig {
    pub samples: usize,
    pub seed: u64,
    pub max_n: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub check: &'static str,
    pub n: usize,
    pub params: [String; 3],
    pub index: String,
    pub left: String,
    pub right: String,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, g] = &self.params;
        write!(
            f,
            "{} failed at n = {}, (alpha, beta, gamma) = ({a}, {b}, {g}), {}: {} vs {}",
            self.check, self.n, self.index, self.left, self.right
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CategoryResult {
    pub name: &'static str,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub config: VerifyConfig,
    pub categories: Vec<CategoryResult>,
    pub first_failure: Option<Counterexample>,
}

impl VerifyReport {
    pub fn all_pass(&self) -> bool {
        self.categories.iter().all(|c| c.failed == 0)
    }
}

struct Tally<'a> {
    params: &'a PantsParams<Rational>,
    n: usize,
    categories: &'a mut Vec<CategoryResult>,
    first_failure: &'a mut Option<Counterexample>,
}

impl Tally<'_> {
    fn record(&mut self, check: &'static str, index: impl FnOnce() -> String, outcome: Result<(bool, String, String)>) {
        let (ok, left, right) = match outcome {
            Ok(v) => v,
            Err(e) => (false, format!("error: {e}"), String::new()),
        };
        let cat = self.categories.iter_mut().find(|c| c.name == check).expect("known category");
        if ok {
            cat.passed += 1;
            return;
        }
        cat.failed += 1;
        if self.first_failure.is_none() {
            *self.first_failure = Some(Counterexample {
                check,
                n: self.n,
                params: [self.params.alpha(), self.params.beta(), self.params.gamma()].map(|x| x.to_string()),
                index: index(),
                left,
                right,
            });
        }
    }

    fn equal<T: PartialEq + fmt::Display>(&mut self, check: &'static str, index: impl FnOnce() -> String, values: Result<(T, T)>) {
        self.record(check, index, values.map(|(l, r)| (l == r, l.to_string(), r.to_string())));
    }

    fn holds(&mut self, check: &'static str, index: impl FnOnce() -> String, value: Result<bool>) {
        self.record(check, index, value.map(|ok| (ok, ok.to_string(), "true".to_string())));
    }
}

pub fn run_verify(config: &VerifyConfig) -> Result<VerifyReport> {
    if config.max_n < 2 {
        return Err(Error::InvalidDimension(config.max_n));
    }
    let mut categories: Vec<CategoryResult> =
        CATEGORIES.iter().map(|&name| CategoryResult { name, passed: 0, failed: 0 }).collect();
    let mut first_failure = None;
    let mut rng = rng(config.seed);
    for _ in 0..config.samples {
        let params = random_params(&mut rng);
        for n in 2..=config.max_n {
            let mut tally = Tally { params: &params, n, categories: &mut categories, first_failure: &mut first_failure };
            check_sample(&mut tally, &params, n, &mut rng);
        }
    }
    Ok(VerifyReport { config: config.clone(), categories, first_failure })
}

fn generators(params: &PantsParams<Rational>) -> Result<[(Boundary, Mat2<Rational>); 3]> {
    let rep = build_rep(params)?;
    Ok([(Boundary::A, rep.a), (Boundary::B, rep.b), (Boundary::C, rep.c)])
}

fn flags_at(points: &[ProjPoint<Rational>], n: usize) -> Result<Vec<Flag<Rational>>> {
    points.iter().map(|x| flag_curve(x, n)).collect()
}

fn check_sample(t: &mut Tally<'_>, params: &PantsParams<Rational>, n: usize, rng: &mut SeededRng) {
    // Parameter-level checks do not depend on n; run them once per sample.
    if n == 2 {
        let report = params.check_domain();
        t.record(
            "domain inequalities",
            String::new,
            Ok((report.all_pass(), report.failures().join("; "), String::new())),
        );
        t.equal(
            "group relation",
            || "abc".into(),
            build_rep(params).map(|rep| (format!("{:?}", rep.product()), format!("{:?}", Mat2::<Rational>::identity()))),
        );
        let fixed = (|| {
            let gens = generators(params)?;
            let predicted = predicted_fixed_points(params)?;
            let mut out = Vec::new();
            for ((b, m), (att, rep)) in gens.iter().zip(predicted) {
                let fp = m.fixed_points()?;
                out.push((b.name(), fp.attracting == att && fp.repelling == rep, format!("{} {}", fp.attracting, fp.repelling), format!("{att} {rep}")));
            }
            Ok(out)
        })();
        match fixed {
            Ok(rows) => {
                for (name, ok, l, r) in rows {
                    t.record("fixed-point formulas", || name.to_string(), Ok((ok, l, r)));
                }
            }
            Err(e) => t.record("fixed-point formulas", String::new, Err(e)),
        }
    }

    match generators(params) {
        Ok(gens) => {
            for (b, m) in &gens {
                let x = random_point(rng);
                let moved = (|| {
                    let lhs = flag_curve(&x, n)?.transform(&sym_power(m, n)?)?;
                    Ok(lhs.same_subspaces(&flag_curve(&m.apply(&x), n)?))
                })();
                t.holds("equivariance", || format!("{b} at {x}"), moved);
                let stable = (|| Ok(stable_flag(m, n)?.same_subspaces(&flag_curve(&m.fixed_points()?.attracting, n)?)))();
                t.holds("stable flag", || b.to_string(), stable);
            }
        }
        Err(e) => t.record("equivariance", String::new, Err(e)),
    }

    for tri in Triangle::ALL {
        let generic = flags_at(&triangle_vertices(tri, params), n).and_then(|f| is_generic(&f.iter().collect::<Vec<_>>()));
        t.holds("genericity", || tri.to_string(), generic);
    }
    for leaf in Leaf::ALL {
        let generic = leaf_quadruple(leaf, params)
            .and_then(|q| flags_at(&q.points().map(Clone::clone), n))
            .and_then(|f| is_generic(&f.iter().collect::<Vec<_>>()));
        t.holds("genericity", || leaf.to_string(), generic);
    }

    if n >= 3 {
        let flags = random_generic_flags(rng, n, 3);
        let (e, f, g) = (&flags[0], &flags[1], &flags[2]);
        for (p, q, r) in tau_indices(n) {
            let idx = || format!("random flags ({p},{q},{r})");
            t.equal("triple ratio symmetry", idx, (|| Ok((triple_ratio(e, f, g, p, q, r)?, triple_ratio(f, g, e, q, r, p)?)))());
            t.equal(
                "triple ratio symmetry",
                idx,
                (|| Ok((triple_ratio(e, f, g, p, q, r)? * triple_ratio(f, e, g, q, p, r)?, Rational::from_integer(1.into()))))(),
            );
            t.equal("rotation relation", idx, (|| Ok((triple_ratio(e, f, g, p, q, r)?, triple_ratio(g, e, f, r, p, q)?)))());
            for tri in Triangle::ALL {
                let idx = || format!("{tri} ({p},{q},{r})");
                let at = |v, pqr| triangle_invariant_at(n, params, tri, v, pqr).map(|x| x.exp_value);
                t.equal("rotation relation", idx, (|| Ok((at(0, (p, q, r))?, at(1, (q, r, p))?)))());
                t.equal("rotation relation", idx, (|| Ok((at(0, (p, q, r))?, at(2, (r, p, q))?)))());
            }
            let constancy = (|| {
                Ok((
                    triangle_invariant_at(n, params, Triangle::T0, 0, (p, q, r))?.exp_value,
                    triangle_invariant_at(n, params, Triangle::T1, 0, (p, q, r))?.exp_value,
                ))
            })();
            t.equal("triangle constancy", || format!("({p},{q},{r})"), constancy);
        }
    }

    let generic = assemble_phi(n, params, Method::Generic);
    let closed = assemble_phi(n, params, Method::ClosedForm);
    match (generic, closed) {
        (Ok(g), Ok(c)) => {
            compare_entries(t, &g, &c);
            for b in Boundary::ALL {
                for p in 1..n {
                    let pair = (|| Ok((boundary_sum_r(&c, b, p)?.exp_value, eigen_length_ratio(n, params, b, p)?)))();
                    t.equal("length identity", || format!("{b} p={p}"), pair);
                }
            }
            let report = polytope_check(&c);
            for check in report.checks {
                t.record("positivity", || check.name.clone(), Ok((check.pass, check.pass.to_string(), "true".into())));
            }
        }
        (Err(e), _) | (_, Err(e)) => t.record("closed form vs generic", String::new, Err(e)),
    }
}

fn compare_entries(t: &mut Tally<'_>, generic: &CoordinateVector<Rational>, closed: &CoordinateVector<Rational>) {
    let g = generic.named_entries();
    let c = closed.named_entries();
    if g.len() != c.len() {
        t.record("closed form vs generic", || "entry count".into(), Ok((false, g.len().to_string(), c.len().to_string())));
        return;
    }
    for ((name, gv), (_, cv)) in g.into_iter().zip(c) {
        t.equal("closed form vs generic", || name.clone(), Ok((gv.exp_value.clone(), cv.exp_value.clone())));
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.config;
        writeln!(f, "verify: samples = {}, seed = {}, max n = {}", c.samples, c.seed, c.max_n)?;
        for cat in &self.categories {
            let status = if cat.failed == 0 { "PASS" } else { "FAIL" };
            writeln!(f, "{status} {:<24} passed {:>6}  failed {:>6}", cat.name, cat.passed, cat.failed)?;
        }
        if let Some(cx) = &self.first_failure {
            writeln!(f, "first counterexample: {cx}")?;
        }
        Ok(())
    }
}
