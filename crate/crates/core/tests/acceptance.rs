//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each, and
//! exits non-zero if any fails.

use std::process::ExitCode;
use std::time::Instant;

use hitchin_pants::coords::{
    assemble_phi, boundary_sum_r, eigen_length_ratio, expected_entry_count, tau_indices, triangle_invariant_at,
    Method,
};
use hitchin_pants::flag::{triple_ratio, Flag};
use hitchin_pants::pants::lamination::{Boundary, Leaf, Triangle};
use hitchin_pants::pants::{
    build_rep, params_from_lengths, predicted_fixed_points, Mat2, PantsLengths, PantsParams,
};
use hitchin_pants::sampling::{random_generic_flags, random_params, random_point, rng};
use hitchin_pants::veronese::{flag_curve, stable_flag, sym_power};
use hitchin_pants::Rational;
use num_traits::{Signed, Zero};

type Outcome = Result<String, String>;

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn sample() -> PantsParams<Rational> {
    PantsParams::new(q(2, 1), q(1, 1), q(1, 2)).unwrap()
}

fn seeded_params(seed: u64, count: usize) -> Vec<PantsParams<Rational>> {
    let mut r = rng(seed);
    (0..count).map(|_| random_params(&mut r)).collect()
}

/// Five evenly spaced values in `[0.5, 3.0]`.
fn grid_axis() -> [f64; 5] {
    [0.5, 1.125, 1.75, 2.375, 3.0]
}

fn length_grid() -> Vec<PantsLengths> {
    let mut out = Vec::new();
    for la in grid_axis() {
        for lb in grid_axis() {
            for lc in grid_axis() {
                out.push(PantsLengths::new(la, lb, lc).unwrap());
            }
        }
    }
    out
}

type Criterion = fn() -> Outcome;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        // Written as a negation so that NaN fails the check.
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn criterion_1() -> Outcome {
    let mut compared = 0;
    for (i, params) in seeded_params(101, 25).iter().enumerate() {
        for n in 2..=7 {
            let g = assemble_phi(n, params, Method::Generic).map_err(|e| e.to_string())?;
            let c = assemble_phi(n, params, Method::ClosedForm).map_err(|e| e.to_string())?;
            let (ge, ce) = (g.named_entries(), c.named_entries());
            ensure!(ge.len() == ce.len(), "entry count differs at sample {i}, n = {n}");
            for ((name, a), (_, b)) in ge.iter().zip(&ce) {
                ensure!(a.exp_value == b.exp_value, "sample {i}, n = {n}, {name}: {} vs {}", a.exp_value, b.exp_value);
                compared += 1;
            }
        }
    }
    Ok(format!("{compared} exact comparisons, n = 2..7, 25 samples"))
}

fn criterion_2() -> Outcome {
    let mut worst: f64 = 0.0;
    for l in length_grid() {
        let params = params_from_lengths(&l).map_err(|e| e.to_string())?;
        let expected = [
            (Leaf::HAb, (l.l_a + l.l_b - l.l_c) / 2.0),
            (Leaf::HBc, (l.l_b + l.l_c - l.l_a) / 2.0),
            (Leaf::HCa, (l.l_c + l.l_a - l.l_b) / 2.0),
        ];
        for method in [Method::Generic, Method::ClosedForm] {
            let coords = assemble_phi(2, &params, method).map_err(|e| e.to_string())?;
            for (leaf, want) in expected {
                let got = coords.sigma(leaf, 1).map_err(|e| e.to_string())?.log_value.ok_or("missing log")?;
                let err = (got - want).abs();
                worst = worst.max(err);
                ensure!(err < 1e-10, "{leaf} at {l:?} ({method:?}): {got} vs {want}");
            }
        }
    }
    let ln4 = 4f64.ln();
    let params = params_from_lengths(&PantsLengths::new(ln4, ln4, ln4).unwrap()).map_err(|e| e.to_string())?;
    let coords = assemble_phi(2, &params, Method::Generic).map_err(|e| e.to_string())?;
    for leaf in Leaf::ALL {
        let got = coords.sigma(leaf, 1).map_err(|e| e.to_string())?.log_value.ok_or("missing log")?;
        ensure!((got - 2f64.ln()).abs() < 1e-10, "{leaf} at (2 ln 2)^3: {got}");
    }
    Ok(format!("125 grid points, max error {worst:.1e}"))
}

fn criterion_3() -> Outcome {
    let one = q(1, 1);
    let mut count = 0;
    for params in seeded_params(303, 25) {
        for n in 3..=7 {
            for method in [Method::Generic, Method::ClosedForm] {
                let coords = assemble_phi(n, &params, method).map_err(|e| e.to_string())?;
                for ((tri, pqr), v) in &coords.tau {
                    ensure!(v.exp_value == one, "{tri} {pqr:?} n = {n}: {}", v.exp_value);
                    ensure!(v.log_value == Some(0.0), "{tri} {pqr:?} n = {n}: log {:?}", v.log_value);
                    count += 1;
                }
            }
        }
    }
    Ok(format!("{count} triangle invariants equal 1"))
}

fn criterion_4() -> Outcome {
    let mut count = 0;
    let mut params = seeded_params(404, 25);
    params.push(sample());
    for p in &params {
        for n in 2..=7 {
            let coords = assemble_phi(n, p, Method::Generic).map_err(|e| e.to_string())?;
            for b in Boundary::ALL {
                for k in 1..n {
                    let r = boundary_sum_r(&coords, b, k).map_err(|e| e.to_string())?.exp_value;
                    let l = eigen_length_ratio(n, p, b, k).map_err(|e| e.to_string())?;
                    ensure!(r == l, "{b} n = {n} p = {k}: R = {r}, eigenvalue ratio = {l}");
                    count += 1;
                }
            }
        }
    }
    for n in 2..=7 {
        let coords = assemble_phi(n, &sample(), Method::ClosedForm).map_err(|e| e.to_string())?;
        for b in Boundary::ALL {
            for k in 1..n {
                let r = boundary_sum_r(&coords, b, k).map_err(|e| e.to_string())?.exp_value;
                ensure!(r == q(4, 1), "sample point {b} n = {n} p = {k}: {r}");
            }
        }
    }
    Ok(format!("{count} exact identities"))
}

fn criterion_5() -> Outcome {
    let mut count = 0;
    for params in seeded_params(505, 100) {
        for n in 2..=6 {
            let coords = assemble_phi(n, &params, Method::ClosedForm).map_err(|e| e.to_string())?;
            for (name, v) in coords.named_entries() {
                ensure!(v.exp_value.is_positive(), "{name} n = {n}: {}", v.exp_value);
                count += 1;
            }
            for b in Boundary::ALL {
                for k in 1..n {
                    let r = boundary_sum_r(&coords, b, k).map_err(|e| e.to_string())?.exp_value;
                    ensure!(r > q(1, 1), "R_{k}({b}) n = {n}: {r}");
                    count += 1;
                }
            }
        }
    }
    Ok(format!("{count} strict inequalities, 100 samples"))
}

fn generators(p: &PantsParams<Rational>) -> Vec<(Boundary, Mat2<Rational>)> {
    let rep = build_rep(p).unwrap();
    vec![(Boundary::A, rep.a), (Boundary::B, rep.b), (Boundary::C, rep.c)]
}

fn prop_3_3(e: &Flag<Rational>, f: &Flag<Rational>, g: &Flag<Rational>, n: usize) -> Result<usize, String> {
    let mut count = 0;
    for (p, qq, r) in tau_indices(n) {
        let t = triple_ratio(e, f, g, p, qq, r).map_err(|e| e.to_string())?;
        let cyc = triple_ratio(f, g, e, qq, r, p).map_err(|e| e.to_string())?;
        let swap = triple_ratio(f, e, g, qq, p, r).map_err(|e| e.to_string())?;
        ensure!(t == cyc, "cyclic ({p},{qq},{r}): {t} vs {cyc}");
        ensure!(t.clone() * swap.clone() == q(1, 1), "swap ({p},{qq},{r}): {t} * {swap} != 1");
        count += 2;
    }
    Ok(count)
}

fn criterion_6() -> Outcome {
    let mut r = rng(606);
    let mut count = 0;
    for i in 0..50 {
        let n = 3 + i % 4;
        let flags = random_generic_flags(&mut r, n, 3);
        count += prop_3_3(&flags[0], &flags[1], &flags[2], n).map_err(|e| format!("random tuple {i}: {e}"))?;
        // the same flags moved by a random unimodular symmetric power
        let m = loop {
            let (x, y, z) = (random_point(&mut r), random_point(&mut r), random_point(&mut r));
            if let (Some(a), Some(b), Some(c)) = (x.affine(), y.affine(), z.affine()) {
                if !a.is_zero() {
                    let d = (q(1, 1) + b.clone() * c.clone()) / a.clone();
                    break Mat2::new(a, b, c, d);
                }
            }
        };
        let big = sym_power(&m, n).map_err(|e| e.to_string())?;
        let moved: Vec<_> = flags.iter().map(|f| f.transform(&big).unwrap()).collect();
        count += prop_3_3(&moved[0], &moved[1], &moved[2], n)?;
        for x in [random_point(&mut r), random_point(&mut r)] {
            let lhs = flag_curve(&x, n).unwrap().transform(&big).unwrap();
            ensure!(lhs.same_subspaces(&flag_curve(&m.apply(&x), n).unwrap()), "equivariance, random matrix, n = {n}");
            count += 1;
        }
    }
    for params in seeded_params(607, 10).into_iter().chain([sample()]) {
        for n in 2..=6 {
            for (b, m) in generators(&params) {
                let attracting = m.fixed_points().map_err(|e| e.to_string())?.attracting;
                let stable = stable_flag(&m, n).map_err(|e| e.to_string())?;
                ensure!(stable.same_subspaces(&flag_curve(&attracting, n).unwrap()), "stable flag {b}, n = {n}");
                let x = random_point(&mut r);
                let lhs = flag_curve(&x, n).unwrap().transform(&sym_power(&m, n).unwrap()).unwrap();
                ensure!(lhs.same_subspaces(&flag_curve(&m.apply(&x), n).unwrap()), "equivariance {b} at {x}, n = {n}");
                count += 2;
            }
            for tri in Triangle::ALL {
                for (p, qq, rr) in tau_indices(n) {
                    let at = |v, t| triangle_invariant_at(n, &params, tri, v, t).map(|x| x.exp_value);
                    let base = at(0, (p, qq, rr)).map_err(|e| e.to_string())?;
                    ensure!(base == at(1, (qq, rr, p)).map_err(|e| e.to_string())?, "rotation {tri} ({p},{qq},{rr})");
                    ensure!(base == at(2, (rr, p, qq)).map_err(|e| e.to_string())?, "rotation {tri} ({p},{qq},{rr})");
                    count += 2;
                }
            }
        }
    }
    Ok(format!("{count} exact relations"))
}

fn criterion_7() -> Outcome {
    for n in 2..=10 {
        let coords = assemble_phi(n, &sample(), Method::ClosedForm).map_err(|e| e.to_string())?;
        ensure!(coords.entry_count() == n * n - 1, "n = {n}: {} entries", coords.entry_count());
        ensure!(expected_entry_count(n) == n * n - 1, "n = {n}: formula");
    }
    Ok("n^2 - 1 entries for n = 2..10".into())
}

fn criterion_8() -> Outcome {
    for params in seeded_params(808, 25).into_iter().chain([sample()]) {
        let rep = build_rep(&params).map_err(|e| e.to_string())?;
        ensure!(rep.product() == Mat2::identity(), "abc != 1 at {params:?}");
        let predicted = predicted_fixed_points(&params).map_err(|e| e.to_string())?;
        for ((_, m), (att, rpl)) in generators(&params).into_iter().zip(predicted) {
            let fp = m.fixed_points().map_err(|e| e.to_string())?;
            ensure!(fp.attracting == att && fp.repelling == rpl, "fixed points differ at {params:?}");
        }
    }
    let mut worst: f64 = 0.0;
    for l in length_grid() {
        let params = params_from_lengths(&l).map_err(|e| e.to_string())?;
        let rep = build_rep(&params).map_err(|e| e.to_string())?;
        let err = (rep.c.trace().abs() - 2.0 * (l.l_c / 2.0).cosh()).abs();
        worst = worst.max(err);
        ensure!(err < 1e-10, "|tr c| at {l:?}: error {err}");
    }
    Ok(format!("abc = 1 and fixed points exact; trace error {worst:.1e}"))
}

fn main() -> ExitCode {
    let criteria: [(&str, Criterion); 8] = [
        ("1 closed forms equal generic invariants", criterion_1),
        ("2 n = 2 classical shears", criterion_2),
        ("3 triangle invariants vanish", criterion_3),
        ("4 boundary length identity", criterion_4),
        ("5 positivity and length positivity", criterion_5),
        ("6 structural relations", criterion_6),
        ("7 coordinate count", criterion_7),
        ("8 pants group consistency", criterion_8),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {name}: {detail} ({secs:.2}s)"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {name}: {detail} ({secs:.2}s)");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 8 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
