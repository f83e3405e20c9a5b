//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails. Reference values are computed here, independently of
//! the library code paths they check, wherever a closed form exists.

use std::f64::consts::{E, TAU};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{ensure, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use weaksol::cli::{cmd_verify, RunConfig};
use weaksol::field::{validate_schedule, CoefficientSchedule, SingularPotential};
use weaksol::quadrature::{
    b_integral, b_split, default_dominating, phi_l1_norm, w12_seminorm_sq, ExcisionPolicy,
};
use weaksol::singular_set::{CompactSetSpec, Point2};
use weaksol::solution::{FrehseSolution, ProbeFrame};
use weaksol::verify::{
    default_battery, default_solution, lemma1_pointwise_check, reference_polyline, wn_convergence,
    weak_residual, zeta_norms,
};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Result<Outcome> {
    Ok(Outcome { pass, detail })
}

/// Uniform point of B(0, r) at least `gap` away from every point of `avoid`.
fn sample(rng: &mut ChaCha8Rng, r: f64, avoid: &[Point2], gap: f64) -> Point2 {
    loop {
        let x = Point2::new(rng.gen_range(-r..r), rng.gen_range(-r..r));
        if x.norm() < r && avoid.iter().all(|p| p.dist(x) >= gap) {
            return x;
        }
    }
}

/// f = sum a_i log(1/|x - p_i|) summed directly.
fn f_direct(pot: &SingularPotential, n: usize, x: Point2) -> f64 {
    pot.coefficients()[..n]
        .iter()
        .zip(pot.points())
        .map(|(a, p)| -a * (x - *p).norm().ln())
        .sum()
}

/// log-log slope of errors against steps, least squares.
fn slope(h: &[f64], e: &[f64]) -> f64 {
    let xs: Vec<f64> = h.iter().map(|v| v.ln()).collect();
    let ys: Vec<f64> = e.iter().map(|v| v.ln()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let num: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let den: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    num / den
}

fn cantor_solution() -> Result<FrehseSolution> {
    let spec = CompactSetSpec::CantorDust {
        center: Point2::ORIGIN,
        width: 0.03,
        depth: 3,
    };
    let pot = SingularPotential::from_spec(&spec, 64, CoefficientSchedule::geometric(0.25)?, 0.05)?;
    Ok(FrehseSolution::new(pot, 64)?)
}

fn unit_circle() -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut worst: f64 = 0.0;
    let mut oracle_gap: f64 = 0.0;
    for sol in [default_solution()?, cantor_solution()?] {
        let n = sol.terms();
        for _ in 0..10_000 {
            let x = sample(&mut rng, sol.radius(), sol.points(), 1e-8);
            let u = sol.eval_u(x)?;
            worst = worst.max((u[0].hypot(u[1]) - 1.0).abs());
            let l = f_direct(sol.potential(), n, x).ln();
            oracle_gap = oracle_gap.max((u[0] - l.sin()).abs().max((u[1] - l.cos()).abs()));
        }
    }
    outcome(
        worst <= 1e-12 && oracle_gap <= 1e-12,
        format!("max ||u| - 1| = {worst:.2e}, max gap to direct sin/cos log f = {oracle_gap:.2e} (tol 1e-12)"),
    )
}

fn gradient_identity() -> Result<Outcome> {
    let sol = default_solution()?;
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut worst: f64 = 0.0;
    for _ in 0..10_000 {
        let x = sample(&mut rng, sol.radius(), sol.points(), 1e-8);
        let g = sol.eval_grad_u(x)?;
        let frob: f64 = g.iter().flatten().map(|v| v * v).sum();
        let gs = sol.grad_norm_sq(x)?;
        worst = worst.max((frob - gs).abs() / gs);
    }
    let hs = [1e-4, 1e-5, 1e-6];
    let mut errs = [0.0f64; 3];
    for _ in 0..20 {
        let x = sample(&mut rng, 0.9 * sol.radius(), sol.points(), 1e-2);
        let g = sol.eval_grad_u(x)?;
        for (k, &h) in hs.iter().enumerate() {
            for (axis, e) in [Point2::new(h, 0.0), Point2::new(0.0, h)].into_iter().enumerate() {
                let (up, dn) = (sol.eval_u(x + e)?, sol.eval_u(x - e)?);
                for c in 0..2 {
                    let d = (up[c] - dn[c]) / (2.0 * h);
                    errs[k] = errs[k].max((d - g[c][axis]).abs());
                }
            }
        }
    }
    let order = slope(&hs, &errs);
    outcome(
        worst <= 1e-12 && order >= 1.9,
        format!("max rel Frobenius gap = {worst:.2e} (tol 1e-12), central-difference order = {order:.3} (>= 1.9)"),
    )
}

fn classical_pde() -> Result<Outcome> {
    let sol = default_solution()?;
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    // with |u| = 1 the right-hand side reduces to
    // F = (-|grad u|^2 (u1 + u2), |grad u|^2 (u1 - u2))
    let oracle_f = |x: Point2| -> Result<[f64; 2]> {
        let u = sol.eval_u(x)?;
        let g = sol.grad_norm_sq(x)?;
        Ok([-g * (u[0] + u[1]), g * (u[0] - u[1])])
    };
    let mut worst: f64 = 0.0;
    let mut f_gap: f64 = 0.0;
    for _ in 0..1_000 {
        let x = sample(&mut rng, 0.999 * sol.radius(), sol.points(), 1e-2);
        let res = sol.classical_residual(x)?;
        let g = sol.grad_norm_sq(x)?;
        worst = worst.max(res[0].abs().max(res[1].abs()) / (1.0 + g));
        let f = sol.eval_F(x)?;
        let o = oracle_f(x)?;
        f_gap = f_gap.max(((f.f1 - o[0]).abs().max((f.f2 - o[1]).abs())) / (1.0 + g));
    }
    let hs = [1e-3, 5e-4, 2.5e-4];
    let mut errs = [0.0f64; 3];
    for _ in 0..20 {
        let x = sample(&mut rng, 0.9 * sol.radius(), sol.points(), 2e-2);
        let o = oracle_f(x)?;
        for (k, &h) in hs.iter().enumerate() {
            let c = sol.eval_u(x)?;
            let mut lap = [0.0; 2];
            for e in [Point2::new(h, 0.0), Point2::new(-h, 0.0), Point2::new(0.0, h), Point2::new(0.0, -h)] {
                let v = sol.eval_u(x + e)?;
                for j in 0..2 {
                    lap[j] += v[j] - c[j];
                }
            }
            let e = ((lap[0] / (h * h) - o[0]).abs()).max((lap[1] / (h * h) - o[1]).abs());
            errs[k] = errs[k].max(e);
        }
    }
    let order = slope(&hs, &errs);
    outcome(
        worst <= 1e-8 && f_gap <= 1e-12 && order >= 1.9,
        format!(
            "max residual/(1+|grad u|^2) = {worst:.2e} (tol 1e-8), F gap to reduced form = {f_gap:.2e}, 5-point order = {order:.3} (>= 1.9)"
        ),
    )
}

fn seminorm_oracle() -> Result<Outcome> {
    let policy = ExcisionPolicy::default();
    let mut parts = Vec::new();
    let mut pass = true;
    for radius in [1.0 / E, (-2f64).exp()] {
        let truth = TAU / (1.0 / radius).ln();
        let q = w12_seminorm_sq(&FrehseSolution::frehse(radius)?, &policy)?;
        let rel = (q.value - truth).abs() / truth;
        pass &= rel <= 1e-3;
        parts.push(format!("R = {radius:.4}: {:.6} vs {truth:.6} (rel {rel:.1e})", q.value));
    }
    outcome(pass, format!("{} (tol 1e-3)", parts.join(", ")))
}

fn weak_identity() -> Result<Outcome> {
    let sol = default_solution()?;
    let policy = ExcisionPolicy::default();
    let battery = default_battery(&sol);
    let centered = battery.iter().any(|(_, b)| sol.points().contains(&b.center) && b.amplitude > 0.0);
    ensure!(battery.len() >= 10, "battery has only {} bumps", battery.len());
    let mut worst_margin: f64 = 0.0;
    let mut worst_id = String::new();
    for (id, phi) in &battery {
        let r = weak_residual(&sol, phi, id, &policy)?;
        let resid = r.residual[0].abs().max(r.residual[1].abs());
        let allowed = 1e-3 * r.normalizer + 3.0 * r.error_estimate;
        let margin = if allowed > 0.0 { resid / allowed } else if resid == 0.0 { 0.0 } else { f64::INFINITY };
        if margin >= worst_margin {
            worst_margin = margin;
            worst_id = id.clone();
        }
    }
    outcome(
        centered && worst_margin <= 1.0,
        format!(
            "{} bumps (centered on a singular point: {centered}), worst residual / allowance = {worst_margin:.3} at {worst_id}",
            battery.len()
        ),
    )
}

fn cutoff_decay() -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    for k in 0..=30u32 {
        let truth = TAU * (-(k as f64)).exp() * (1.0 - (-1f64).exp());
        let z = zeta_norms(k);
        worst = worst.max((z.grad_l2_sq_numeric - truth).abs() / truth);
    }
    outcome(worst <= 1e-10, format!("max rel gap over k = 0..30 = {worst:.2e} (tol 1e-10)"))
}

fn domination() -> Result<Outcome> {
    let sol = default_solution()?;
    let pot = sol.potential();
    let dom = default_dominating(pot);
    // beta = 1/4, q = 6: C = 1/(1 - (1/4)^(1/4)), lambda = log(1/r), C~ = C lambda^(-5/6)
    let c = 1.0 / (1.0 - 0.25f64.powf(0.25));
    let lambda = (1.0 / sol.radius()).ln();
    let c_tilde = c * lambda.powf(-5.0 / 6.0);
    ensure!((dom.c_tilde - c_tilde).abs() <= 1e-12 * c_tilde, "C~ = {} expected {c_tilde}", dom.c_tilde);
    let lib = lemma1_pointwise_check(&sol, &dom, 10_000, 17)?;
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let mut violations = 0;
    for _ in 0..10_000 {
        let x = sample(&mut rng, sol.radius(), sol.points(), 1e-8);
        let phi: f64 = pot
            .coefficients()
            .iter()
            .zip(pot.points())
            .map(|(a, p)| {
                let rho = x.dist(*p);
                c_tilde * a.powf(1.0 / 3.0) / (rho * rho * (1.0 / rho).ln().powf(7.0 / 6.0))
            })
            .sum();
        if sol.grad_norm_sq(x)? > phi {
            violations += 1;
        }
    }
    let policy = ExcisionPolicy::default();
    let phi_l1 = phi_l1_norm(pot, &dom, sol.terms(), &policy)?;
    let semi = w12_seminorm_sq(&sol, &policy)?;
    outcome(
        lib.violations == 0 && violations == 0 && phi_l1.value.is_finite() && phi_l1.value >= semi.value,
        format!(
            "violations {} / {violations} of 1e4 (library / direct Phi), max ratio {:.3}, int Phi = {:.4} >= int |grad u|^2 = {:.4}",
            lib.violations, lib.max_ratio, phi_l1.value, semi.value
        ),
    )
}

fn b_boundedness() -> Result<Outcome> {
    let pot = reference_polyline()?;
    let policy = ExcisionPolicy::default();
    let mut b = Vec::new();
    let mut split_gap: f64 = 0.0;
    for i in 1..=64 {
        let direct = b_integral(&pot, i, 6.0, &policy)?.value;
        let p = pot.points()[i - 1];
        let split = b_split(&pot, i, 6.0, 1e-3f64.min(0.5 * (pot.radius() - p.norm())))?.total();
        split_gap = split_gap.max((direct - split).abs() / split);
        b.push(direct);
    }
    // b_1 sits at the center: 2 pi q log^(-1/q)(1/r)
    let centered = TAU * 6.0 * (1.0 / pot.radius()).ln().powf(-1.0 / 6.0);
    let centered_gap = (b[0] - centered).abs() / centered;
    let ratio = b.iter().copied().fold(0.0, f64::max) / b.iter().copied().fold(f64::INFINITY, f64::min);
    outcome(
        ratio <= 3.0 && split_gap <= 1e-3 && centered_gap <= 1e-3,
        format!("max/min = {ratio:.4} (<= 3), max rel gap to split = {split_gap:.1e}, b_1 vs closed form {centered_gap:.1e} (tol 1e-3)"),
    )
}

fn convergence() -> Result<Outcome> {
    let pot = reference_polyline()?;
    let policy = ExcisionPolicy::default();
    let sup_b = (1..=64)
        .map(|i| b_integral(&pot, i, 6.0, &policy).map(|r| r.value))
        .collect::<weaksol::error::Result<Vec<f64>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    let sol = FrehseSolution::new(pot.clone(), 64)?;
    let rows = wn_convergence(&sol, &[4, 8, 16, 32], sup_b, &policy)?;
    let dom = default_dominating(&pot);
    let q13 = 0.25f64.powf(1.0 / 3.0);
    let mut pass = true;
    let mut parts = Vec::new();
    for (j, row) in rows.iter().enumerate() {
        // sum_{i > N} a_i^(1/3) = q^(N/3) / (1 - q^(1/3))
        let bound = dom.c_tilde * sup_b * q13.powi(row.n1 as i32) / (1.0 - q13);
        pass &= row.value <= bound;
        if j > 0 {
            pass &= rows[j - 1].value / row.value >= 2.0;
        }
        parts.push(format!("N={}: {:.2e} (bound {:.2e})", row.n1, row.value, bound));
    }
    outcome(pass && rows.len() == 3, parts.join(", "))
}

fn essential_discontinuity() -> Result<Outcome> {
    let sol = default_solution()?;
    let pot = sol.potential();
    let mut worst: f64 = 1.0;
    let mut oracle_gap: f64 = 0.0;
    for i in 1..=4 {
        let a = pot.coefficients()[i - 1];
        let p = pot.points()[i - 1];
        // f = a_i e^t + sum_{j != i} a_j log(1/|p_i - p_j|) + O(rho)
        let rest: f64 = (0..4)
            .filter(|&j| j != i - 1)
            .map(|j| -pot.coefficients()[j] * p.dist(pot.points()[j]).ln())
            .sum();
        for lo in [10.0, 40.0] {
            let r = sol.oscillation_report(i, lo, lo + TAU, 1000)?;
            worst = worst.min(r.max_u1).min(-r.min_u1);
            for s in 0..8 {
                let t = lo + TAU * s as f64 / 8.0;
                let u = sol.radial_probe(ProbeFrame { index: i, t, theta: 0.0 })?.u;
                let expected = (a * t.exp() + rest).ln().sin();
                oracle_gap = oracle_gap.max((u[0] - expected).abs());
            }
        }
    }
    let c = Point2::new(-0.025, 0.025);
    let d = sol.points().iter().map(|p| p.dist(c)).fold(f64::INFINITY, f64::min);
    let spread = |s: f64| sol.local_oscillation(c, s * d, 4, 16).map(|r| r.spread());
    let spreads = [spread(0.5)?, spread(0.05)?, spread(0.005)?];
    let shrinking = spreads.windows(2).all(|w| w[1] < 0.2 * w[0]);
    outcome(
        worst >= 0.999 && oracle_gap <= 1e-9 && shrinking,
        format!(
            "min over points/windows of extremes = {worst:.7} (>= 0.999), probe vs leading-order oracle {oracle_gap:.1e}, smooth-point spreads {:.1e} -> {:.1e} -> {:.1e}",
            spreads[0], spreads[1], spreads[2]
        ),
    )
}

fn schedule_closed_forms() -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    for q in [0.1f64, 0.25, 0.5, 0.9] {
        let rep = validate_schedule(&CoefficientSchedule::geometric(q)?)?;
        for (e, closed) in [(0.5, rep.c_half), (1.0 / 3.0, rep.c_third), (0.25, rep.c_beta)] {
            // partial sums in increasing-magnitude order until the terms vanish
            let r = q.powf(e);
            let terms: Vec<f64> = (0..100_000).map(|i| r.powi(i)).take_while(|t| *t > 0.0).collect();
            let direct: f64 = terms.iter().rev().sum();
            worst = worst.max((closed - direct).abs() / direct);
        }
    }
    outcome(worst <= 1e-12, format!("max rel gap = {worst:.2e} (tol 1e-12)"))
}

fn determinism() -> Result<Outcome> {
    let cfg = RunConfig::default();
    let a = tempfile::tempdir()?;
    let b = tempfile::tempdir()?;
    cmd_verify(&cfg, None, a.path())?;
    cmd_verify(&cfg, None, b.path())?;
    let mut names: Vec<_> = std::fs::read_dir(a.path())?
        .map(|e| e.map(|e| e.file_name()))
        .collect::<std::io::Result<_>>()?;
    names.sort();
    let mut differing = Vec::new();
    for n in &names {
        if std::fs::read(a.path().join(n))? != std::fs::read(b.path().join(n))? {
            differing.push(n.to_string_lossy().into_owned());
        }
    }
    let count_b = std::fs::read_dir(b.path())?.count();
    outcome(
        differing.is_empty() && count_b == names.len() && !names.is_empty(),
        format!("{} files compared, differing: {differing:?}", names.len()),
    )
}

type Check = fn() -> Result<Outcome>;

fn main() -> ExitCode {
    let criteria: [(&str, Check); 12] = [
        ("unit circle invariant", unit_circle),
        ("gradient identity", gradient_identity),
        ("classical equation away from the singular set", classical_pde),
        ("seminorm closed form", seminorm_oracle),
        ("weak identity on the bump battery", weak_identity),
        ("cutoff gradient decay", cutoff_decay),
        ("pointwise domination", domination),
        ("b_i boundedness", b_boundedness),
        ("truncation convergence", convergence),
        ("essential discontinuity", essential_discontinuity),
        ("schedule closed forms", schedule_closed_forms),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (pass, detail) = match check() {
            Ok(o) => (o.pass, o.detail),
            Err(e) => (false, format!("error: {e:#}")),
        };
        if !pass {
            failed += 1;
        }
        println!(
            "{} {:>2} {name}: {detail} [{:.2} s]",
            if pass { "PASS" } else { "FAIL" },
            k + 1,
            start.elapsed().as_secs_f64()
        );
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
