//! Weak-form verification: bump test functions, the log-log cutoffs, weak
//! residuals, the truncation convergence table and the full check suite.
//!
//! Sign convention: the solution satisfies Delta u = F classically, so the
//! weak identity tested here is  int grad u . grad phi = int (-F) phi.
//! Reports call the right-hand side `rhs` = int (-F) phi.

use std::f64::consts::{E, PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{validate_schedule, CoefficientSchedule, SingularPotential};
use crate::numeric::{compensated_sum, integrate_1d, observed_order};
use crate::quadrature::{
    b_integral, b_split, default_dominating, dominating_phi, integrate_ball, integrate_log_disk,
    phi_l1_norm, w12_seminorm_sq, DominatingFunction, ExcisionPolicy, Integrand,
};
use crate::singular_set::{CompactSetSpec, Point2};
use crate::solution::{grad_u_difference, FrehseSolution};

/// phi(x) = amplitude * exp(-1/(1 - |x-c|^2/R^2)) inside B(c, R), 0 outside.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BumpTestFunction {
    pub center: Point2,
    pub radius: f64,
    pub amplitude: f64,
}

impl BumpTestFunction {
    pub fn new(center: Point2, radius: f64, amplitude: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite() && center.is_finite() && amplitude.is_finite()) {
            return Err(Error::InvalidTestFunction(format!(
                "bump at ({}, {}) with radius {radius}",
                center.x, center.y
            )));
        }
        Ok(Self {
            center,
            radius,
            amplitude,
        })
    }

    /// Requires the closed support to lie inside B(0, r).
    pub fn check_inside(&self, r: f64) -> Result<()> {
        if self.center.norm() + self.radius >= r {
            return Err(Error::InvalidTestFunction(format!(
                "support of bump at ({}, {}) with radius {} leaves B(0, {r})",
                self.center.x, self.center.y, self.radius
            )));
        }
        Ok(())
    }

    pub fn value(&self, x: Point2) -> f64 {
        let s2 = (x - self.center).norm_sq() / (self.radius * self.radius);
        if s2 >= 1.0 {
            return 0.0;
        }
        self.amplitude * (-1.0 / (1.0 - s2)).exp()
    }

    pub fn grad(&self, x: Point2) -> [f64; 2] {
        let y = x - self.center;
        let r2 = self.radius * self.radius;
        let s2 = y.norm_sq() / r2;
        if s2 >= 1.0 {
            return [0.0, 0.0];
        }
        let d = 1.0 - s2;
        let k = -self.amplitude * (-1.0 / d).exp() * 2.0 / (r2 * d * d);
        [k * y.x, k * y.y]
    }

    /// sup |phi|
    pub fn sup(&self) -> f64 {
        self.amplitude.abs() / E
    }

    /// ||grad phi||_{L^2}^2, which does not depend on the radius in the plane.
    pub fn grad_l2_sq(&self) -> f64 {
        // |grad phi| = A e^{-1/(1-s^2)} 2 s / (R (1-s^2)^2); area element R^2 s ds dtheta
        let g = |s: f64| {
            let d = 1.0 - s * s;
            if d <= 0.0 {
                return 0.0;
            }
            let v = (-1.0 / d).exp() * 2.0 * s / (d * d);
            v * v * s
        };
        let (v, _) = integrate_1d(g, 0.0, 1.0, 1e-13, 0.0);
        self.amplitude * self.amplitude * TAU * v
    }
}

/// zeta_i^k = clamp(log log(1/|x - p_i|) - k, 0, 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CutoffZeta {
    /// 1-based singular point index.
    pub index: usize,
    pub k: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ZetaValue {
    pub value: f64,
    pub gradient: [f64; 2],
}

/// Value of the cutoff at w = log log(1/rho) and rho * grad in direction `dir`.
pub fn zeta_near(k: u32, t: f64, dir: [f64; 2]) -> (f64, [f64; 2]) {
    if t <= 1.0 {
        return (0.0, [0.0, 0.0]);
    }
    let s = t.ln() - k as f64;
    if s <= 0.0 {
        (0.0, [0.0, 0.0])
    } else if s >= 1.0 {
        (1.0, [0.0, 0.0])
    } else {
        (s, [-dir[0] / t, -dir[1] / t])
    }
}

pub fn zeta_eval(p: Point2, zeta: CutoffZeta, x: Point2) -> ZetaValue {
    let y = x - p;
    let rho = y.norm();
    if rho == 0.0 {
        return ZetaValue {
            value: 1.0,
            gradient: [0.0, 0.0],
        };
    }
    let t = (1.0 / rho).ln();
    let dir = [y.x / rho, y.y / rho];
    let (value, g) = zeta_near(zeta.k, t, dir);
    ZetaValue {
        value,
        gradient: [g[0] / rho, g[1] / rho],
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ZetaNorms {
    pub k: u32,
    /// 2 pi (e^-k - e^-(k+1))
    pub grad_l2_sq: f64,
    /// The same integral by quadrature in the log-radial frame.
    pub grad_l2_sq_numeric: f64,
    /// log of the L^2 norm squared
    pub log_l2_sq: f64,
    /// log(pi r_k^2) = log pi - 2 e^k
    pub log_l2_sq_bound: f64,
}

pub fn zeta_norms(k: u32) -> ZetaNorms {
    let kf = k as f64;
    let grad_l2_sq = TAU * ((-kf).exp() - (-kf - 1.0).exp());
    // integrand in w: t * rho^2 |grad zeta|^2 = t * (1/t)^2
    let dir = [1.0, 0.0];
    let g = |w: f64| {
        let t = w.exp();
        let (_, s) = zeta_near(k, t, dir);
        TAU * t * (s[0] * s[0] + s[1] * s[1])
    };
    let (grad_l2_sq_numeric, _) = integrate_1d(g, kf, kf + 1.0, 1e-14, 0.0);
    // int zeta^2 dx = 2 pi e^{-2 t_k} int_0^inf e^{-2 s} zeta(t_k + s)^2 ds, t_k = e^k
    let t_k = kf.exp();
    let z = |s: f64| {
        let v = ((t_k + s).ln() - kf).clamp(0.0, 1.0);
        (-2.0 * s).exp() * v * v
    };
    let kink = t_k * (E - 1.0);
    let j = if kink < 40.0 {
        integrate_1d(z, 0.0, kink, 1e-13, 0.0).0 + integrate_1d(z, kink, 40.0, 1e-13, 0.0).0
    } else {
        integrate_1d(z, 0.0, 40.0, 1e-13, 0.0).0
    };
    ZetaNorms {
        k,
        grad_l2_sq,
        grad_l2_sq_numeric,
        log_l2_sq: TAU.ln() - 2.0 * t_k + j.ln(),
        log_l2_sq_bound: PI.ln() - 2.0 * t_k,
    }
}

/// Whether the supports B(p_i, r_k) are pairwise disjoint, compared in the log
/// domain: 2 r_k < min distance.
pub fn zeta_supports_disjoint(points: &[Point2], k: u32) -> bool {
    let mut d = f64::INFINITY;
    for (i, p) in points.iter().enumerate() {
        for q in &points[i + 1..] {
            d = d.min(p.dist(*q));
        }
    }
    2f64.ln() - (k as f64).exp() < d.ln()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeakResidualReport {
    pub id: String,
    /// int grad u_c . grad phi per component
    pub lhs: [f64; 2],
    /// int (-F_c) phi per component
    pub rhs: [f64; 2],
    pub residual: [f64; 2],
    /// ||grad u||_{L^2(supp phi)} ||grad phi||_{L^2}
    pub normalizer: f64,
    pub relative: f64,
    /// Sum of the quadrature error estimates that enter the residual.
    pub error_estimate: f64,
}

impl WeakResidualReport {
    /// |residual| <= tol * normalizer + 3 * error estimate.
    pub fn passes(&self, tol: f64) -> bool {
        let r = self.residual[0].abs().max(self.residual[1].abs());
        r <= tol * self.normalizer + 3.0 * self.error_estimate
    }
}

struct WeakLhs<'a> {
    sol: &'a FrehseSolution,
    phi: BumpTestFunction,
    c: usize,
}

impl Integrand for WeakLhs<'_> {
    fn eval(&self, x: Point2) -> f64 {
        let gp = self.phi.grad(x);
        if gp == [0.0, 0.0] {
            return 0.0;
        }
        match self.sol.eval_grad_u(x) {
            Ok(g) => g[self.c][0] * gp[0] + g[self.c][1] * gp[1],
            Err(_) => f64::NAN,
        }
    }

    fn supports_near(&self) -> bool {
        true
    }

    fn eval_near(&self, site: usize, t: f64, dir: [f64; 2]) -> f64 {
        let n = self.sol.near(site, t, dir);
        let x = self.sol.points()[site] + Point2::new(n.rho * dir[0], n.rho * dir[1]);
        let gp = self.phi.grad(x);
        let g = n.scaled_grad[self.c];
        n.rho * (g[0] * gp[0] + g[1] * gp[1])
    }
}

struct WeakRhs<'a> {
    sol: &'a FrehseSolution,
    phi: BumpTestFunction,
    c: usize,
}

impl Integrand for WeakRhs<'_> {
    fn eval(&self, x: Point2) -> f64 {
        let p = self.phi.value(x);
        if p == 0.0 {
            return 0.0;
        }
        match self.sol.eval_F(x) {
            Ok(f) => -[f.f1, f.f2][self.c] * p,
            Err(_) => f64::NAN,
        }
    }

    fn supports_near(&self) -> bool {
        true
    }

    fn eval_near(&self, site: usize, t: f64, dir: [f64; 2]) -> f64 {
        let n = self.sol.near(site, t, dir);
        let x = self.sol.points()[site] + Point2::new(n.rho * dir[0], n.rho * dir[1]);
        let f = self.sol.rhs_from(n.u, n.scaled_grad_sq());
        -[f.f1, f.f2][self.c] * self.phi.value(x)
    }
}

struct GradSqIn<'a>(&'a FrehseSolution);

impl Integrand for GradSqIn<'_> {
    fn eval(&self, x: Point2) -> f64 {
        self.0.grad_norm_sq(x).unwrap_or(f64::NAN)
    }

    fn supports_near(&self) -> bool {
        true
    }

    fn eval_near(&self, site: usize, t: f64, dir: [f64; 2]) -> f64 {
        self.0.near(site, t, dir).scaled_grad_sq()
    }
}

/// Checks the weak identity against one bump.
pub fn weak_residual(
    sol: &FrehseSolution,
    phi: &BumpTestFunction,
    id: &str,
    policy: &ExcisionPolicy,
) -> Result<WeakResidualReport> {
    phi.check_inside(sol.radius())?;
    let ball = |g: &dyn Integrand| integrate_ball(g, phi.center, phi.radius, policy, sol.points());
    let mut lhs = [0.0; 2];
    let mut rhs = [0.0; 2];
    let mut err = 0.0;
    for c in 0..2 {
        let l = ball(&WeakLhs { sol, phi: *phi, c })?;
        let r = ball(&WeakRhs { sol, phi: *phi, c })?;
        lhs[c] = l.value;
        rhs[c] = r.value;
        err += l.error_estimate.max(r.error_estimate);
    }
    let grad_sq = ball(&GradSqIn(sol))?;
    let normalizer = grad_sq.value.max(0.0).sqrt() * phi.grad_l2_sq().sqrt();
    let residual = [lhs[0] - rhs[0], lhs[1] - rhs[1]];
    let worst = residual[0].abs().max(residual[1].abs());
    let relative = if worst == 0.0 { 0.0 } else { worst / normalizer };
    Ok(WeakResidualReport {
        id: id.to_string(),
        lhs,
        rhs,
        residual,
        normalizer,
        relative,
        error_estimate: err,
    })
}

/// The deterministic test-function battery for a solution: bumps centered on
/// singular points, bumps straddling pairs of points, bumps in the smooth
/// region, and amplitude variations.
pub fn default_battery(sol: &FrehseSolution) -> Vec<(String, BumpTestFunction)> {
    let r = sol.radius();
    let pts = sol.points();
    let clearance = |c: Point2| pts.iter().map(|p| p.dist(c)).fold(f64::INFINITY, f64::min);
    let mut out = Vec::new();
    let mut push = |id: String, c: Point2, rad: f64, amp: f64| {
        if rad > 1e-4 * r && c.norm() + rad < r {
            out.push((id, BumpTestFunction { center: c, radius: rad, amplitude: amp }));
        }
    };
    for (i, p) in pts.iter().take(4).enumerate() {
        let rad = if i == 0 { r / 4.0 } else { (r / 4.0).min(0.45 * (r - p.norm())) };
        push(format!("centered_p{}", i + 1), *p, rad.min(0.99 * (r - p.norm())), 1.0);
    }
    for (j, p) in pts.iter().enumerate().skip(1).take(3) {
        let c = 0.5 * (*p + pts[0]);
        let rad = (0.75 * p.norm()).min(0.95 * (r - c.norm()));
        push(format!("straddle_p1_p{}", j + 1), c, rad, 1.0);
    }
    let mut candidates: Vec<(f64, Point2)> = Vec::new();
    for &frac in &[0.5, 0.7] {
        for m in 0..8 {
            let c = Point2::polar(frac * r, TAU * (m as f64 + 0.5) / 8.0);
            candidates.push((clearance(c), c));
        }
    }
    candidates.sort_by(|a, b| b.0.total_cmp(&a.0));
    let mut away = 0;
    for (d, c) in candidates {
        let rad = (0.5 * d).min(0.9 * (r - c.norm()));
        if rad > 1e-3 * r && away < 3 {
            push(format!("away_{}", away + 1), c, rad, 1.0);
            away += 1;
        }
    }
    push("centered_p1_amp2.5".into(), pts[0], r / 4.0, 2.5);
    push("centered_p1_wide".into(), pts[0], 0.7 * r, 1.0);
    push("zero_amplitude".into(), pts[0], r / 4.0, 0.0);
    out
}

/// One row of the truncation convergence table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceRow {
    pub n1: usize,
    pub n2: usize,
    /// ||grad(u^{n2} - u^{n1})||^2
    pub value: f64,
    pub error_estimate: f64,
    /// C~ sum_{i > n1} a_i^{1/3} sup b
    pub bound: f64,
}

struct GradDiffSq<'a> {
    potential: &'a SingularPotential,
    n1: usize,
    n2: usize,
}

impl Integrand for GradDiffSq<'_> {
    fn eval(&self, x: Point2) -> f64 {
        if self.potential.points()[..self.n2].contains(&x) {
            return f64::NAN;
        }
        let (f, g) = self.potential.partial(x, 0..self.n1);
        let (d, gd) = self.potential.partial(x, self.n1..self.n2);
        frob_sq(grad_u_difference(f, g, d, gd))
    }

    fn supports_near(&self) -> bool {
        true
    }

    fn eval_near(&self, site: usize, t: f64, dir: [f64; 2]) -> f64 {
        let (f, g) = self.potential.partial_near(site, t, dir, 0..self.n1);
        let (d, gd) = self.potential.partial_near(site, t, dir, self.n1..self.n2);
        frob_sq(grad_u_difference(f, g, d, gd))
    }
}

fn frob_sq(a: [[f64; 2]; 2]) -> f64 {
    a[0][0] * a[0][0] + a[0][1] * a[0][1] + a[1][0] * a[1][0] + a[1][1] * a[1][1]
}

/// ||grad(u^{N_{j+1}} - u^{N_j})||^2 for consecutive entries of `n_list`.
pub fn wn_convergence(
    sol: &FrehseSolution,
    n_list: &[usize],
    sup_b: f64,
    policy: &ExcisionPolicy,
) -> Result<Vec<ConvergenceRow>> {
    if n_list.len() < 2 || n_list.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidArgument("N list must be increasing with at least two entries".into()));
    }
    let potential = sol.potential();
    let dom = default_dominating(potential);
    let e = dom.coefficient_exponent();
    let mut rows = Vec::new();
    for w in n_list.windows(2) {
        let lo = sol.truncated(w[0])?;
        let hi = sol.truncated(w[1])?;
        let r = integrate_ball(
            &GradDiffSq {
                potential,
                n1: lo.terms(),
                n2: hi.terms(),
            },
            Point2::ORIGIN,
            sol.radius(),
            policy,
            hi.points(),
        )?;
        let omitted = if potential.is_complete() {
            compensated_sum(potential.coefficients()[lo.terms()..].iter().map(|a| a.powf(e)))
        } else {
            potential.schedule().power_tail(lo.terms(), e)
        };
        rows.push(ConvergenceRow {
            n1: lo.terms(),
            n2: hi.terms(),
            value: r.value,
            error_estimate: r.error_estimate,
            bound: dom.c_tilde * omitted * sup_b,
        });
    }
    Ok(rows)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DominationCheck {
    pub samples: usize,
    pub violations: usize,
    pub max_ratio: f64,
}

/// Samples a point uniformly from B(0, r) at distance >= `min_dist` from `avoid`.
pub fn sample_ball(rng: &mut ChaCha8Rng, r: f64, avoid: &[Point2], min_dist: f64) -> Point2 {
    loop {
        let x = Point2::new(rng.gen_range(-r..r), rng.gen_range(-r..r));
        if x.norm() < r && avoid.iter().all(|p| p.dist(x) >= min_dist) {
            return x;
        }
    }
}

/// Checks |grad u|^2 <= Phi at uniformly sampled points.
pub fn lemma1_pointwise_check(
    sol: &FrehseSolution,
    params: &DominatingFunction,
    samples: usize,
    seed: u64,
) -> Result<DominationCheck> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut violations = 0;
    let mut max_ratio: f64 = 0.0;
    for _ in 0..samples {
        let x = sample_ball(&mut rng, sol.radius(), sol.points(), 1e-8);
        let g = sol.grad_norm_sq(x)?;
        let phi = dominating_phi(sol.potential(), params, x, sol.terms())?;
        if g > phi {
            violations += 1;
        }
        max_ratio = max_ratio.max(g / phi);
    }
    Ok(DominationCheck {
        samples,
        violations,
        max_ratio,
    })
}

/// The terms of the cutoff splitting of the weak identity at level k.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SplitReport {
    pub k: u32,
    pub component: usize,
    /// int grad u_c . grad(zeta^k phi)
    pub i_k: f64,
    /// int grad u_c . grad(phi (1 - zeta^k))
    pub ii_k: f64,
    /// int grad u_c . phi grad zeta^k
    pub holder_term: f64,
    /// ||phi||_inf ||grad u||_{L^2} ||grad zeta^k||_{L^2}
    pub holder_bound: f64,
    pub error_estimate: f64,
}

struct OuterSplit<'a> {
    sol: &'a FrehseSolution,
    phi: BumpTestFunction,
    c: usize,
    k: u32,
}

impl Integrand for OuterSplit<'_> {
    fn eval(&self, x: Point2) -> f64 {
        let g = match self.sol.eval_grad_u(x) {
            Ok(g) => g[self.c],
            Err(_) => return f64::NAN,
        };
        let mut z = 0.0;
        let mut gz = [0.0, 0.0];
        for (i, p) in self.sol.points().iter().enumerate() {
            let v = zeta_eval(*p, CutoffZeta { index: i + 1, k: self.k }, x);
            z += v.value;
            gz[0] += v.gradient[0];
            gz[1] += v.gradient[1];
        }
        let pv = self.phi.value(x);
        let gp = self.phi.grad(x);
        g[0] * ((1.0 - z) * gp[0] - pv * gz[0]) + g[1] * ((1.0 - z) * gp[1] - pv * gz[1])
    }

    fn supports_near(&self) -> bool {
        true
    }

    fn eval_near(&self, site: usize, t: f64, dir: [f64; 2]) -> f64 {
        let n = self.sol.near(site, t, dir);
        let g = n.scaled_grad[self.c];
        let (z, sz) = zeta_near(self.k, t, dir);
        let x = self.sol.points()[site] + Point2::new(n.rho * dir[0], n.rho * dir[1]);
        let pv = self.phi.value(x);
        let gp = self.phi.grad(x);
        g[0] * ((1.0 - z) * n.rho * gp[0] - pv * sz[0]) + g[1] * ((1.0 - z) * n.rho * gp[1] - pv * sz[1])
    }

    fn breakpoints(&self, _site: usize) -> Vec<f64> {
        vec![self.k as f64, self.k as f64 + 1.0]
    }
}

/// Computes I_k, II_k and the Hölder term for component `c` of the weak
/// identity. The cutoff supports must be disjoint and must not cross the
/// boundary of supp phi.
pub fn split_check(
    sol: &FrehseSolution,
    phi: &BumpTestFunction,
    k: u32,
    c: usize,
    grad_u_l2: f64,
    policy: &ExcisionPolicy,
) -> Result<SplitReport> {
    phi.check_inside(sol.radius())?;
    if !zeta_supports_disjoint(sol.points(), k) {
        return Err(Error::InvalidArgument(format!("cutoff supports overlap at k = {k}")));
    }
    let log_rk = -(k as f64).exp();
    let mut inside = Vec::new();
    for (i, p) in sol.points().iter().enumerate() {
        let gap = p.dist(phi.center) - phi.radius;
        if gap < 0.0 && (-gap).ln() > log_rk {
            inside.push(i);
        } else if gap.abs().ln() <= log_rk {
            return Err(Error::InvalidArgument(format!(
                "cutoff support of p_{} crosses the boundary of supp phi",
                i + 1
            )));
        }
    }
    let kf = k as f64;
    let mut i_k = Vec::new();
    let mut holder = Vec::new();
    let mut err = 0.0;
    for &i in &inside {
        let p = sol.points()[i];
        let full = |t: f64, dir: [f64; 2]| {
            let n = sol.near(i, t, dir);
            let g = n.scaled_grad[c];
            let (z, sz) = zeta_near(k, t, dir);
            let x = p + Point2::new(n.rho * dir[0], n.rho * dir[1]);
            let pv = phi.value(x);
            let gp = phi.grad(x);
            g[0] * (pv * sz[0] + z * n.rho * gp[0]) + g[1] * (pv * sz[1] + z * n.rho * gp[1])
        };
        let r = integrate_log_disk(&full, p, kf, &[kf + 1.0], policy)?;
        i_k.push(r.value);
        err += r.error_estimate;
        let ring = |t: f64, dir: [f64; 2]| {
            let n = sol.near(i, t, dir);
            let g = n.scaled_grad[c];
            let (_, sz) = zeta_near(k, t, dir);
            let x = p + Point2::new(n.rho * dir[0], n.rho * dir[1]);
            phi.value(x) * (g[0] * sz[0] + g[1] * sz[1])
        };
        let h = integrate_log_disk(&ring, p, kf, &[kf + 1.0], policy)?;
        holder.push(h.value);
        err += h.error_estimate;
    }
    let outer = integrate_ball(
        &OuterSplit { sol, phi: *phi, c, k },
        phi.center,
        phi.radius,
        policy,
        sol.points(),
    )?;
    err += outer.error_estimate;
    let zeta_grad = (inside.len() as f64 * zeta_norms(k).grad_l2_sq).sqrt();
    Ok(SplitReport {
        k,
        component: c,
        i_k: compensated_sum(i_k),
        ii_k: outer.value,
        holder_term: compensated_sum(holder),
        holder_bound: phi.sup() * grad_u_l2 * zeta_grad,
        error_estimate: err,
    })
}

/// One line of the suite report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteItem {
    pub id: String,
    pub description: String,
    pub measured: f64,
    pub threshold: f64,
    pub pass: bool,
}

impl SuiteItem {
    fn at_most(id: &str, description: &str, measured: f64, threshold: f64) -> Self {
        Self {
            id: id.into(),
            description: description.into(),
            measured,
            threshold,
            pass: measured <= threshold,
        }
    }

    fn at_least(id: &str, description: &str, measured: f64, threshold: f64) -> Self {
        Self {
            id: id.into(),
            description: description.into(),
            measured,
            threshold,
            pass: measured >= threshold,
        }
    }

    fn failed(id: &str, description: &str, err: &Error) -> Self {
        Self {
            id: id.into(),
            description: format!("{description} [error: {err}]"),
            measured: f64::NAN,
            threshold: f64::NAN,
            pass: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub items: Vec<SuiteItem>,
    pub weak: Vec<WeakResidualReport>,
    pub zeta: Vec<ZetaNorms>,
    pub convergence: Vec<ConvergenceRow>,
    pub splits: Vec<SplitReport>,
    pub b_values: Vec<f64>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.pass)
    }
}

/// Which groups of checks to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, serde::Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SuiteSelection {
    pub identities: bool,
    pub classical: bool,
    pub seminorm: bool,
    pub weak: bool,
    pub zeta: bool,
    pub convergence: bool,
    pub lemma1: bool,
    pub probe: bool,
    pub schedule: bool,
}

impl Default for SuiteSelection {
    fn default() -> Self {
        Self {
            identities: true,
            classical: true,
            seminorm: true,
            weak: true,
            zeta: true,
            convergence: true,
            lemma1: true,
            probe: true,
            schedule: true,
        }
    }
}

/// Inputs of [`run_verification_suite`].
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    pub solution: FrehseSolution,
    pub policy: ExcisionPolicy,
    pub seed: u64,
    pub samples: usize,
    pub classical_samples: usize,
    pub battery: Vec<(String, BumpTestFunction)>,
    pub zeta_max_k: u32,
    pub split_levels: Vec<u32>,
    /// Potential used for the b_i and convergence checks; needs enough points
    /// for `n_list` and `b_count`.
    pub reference: SingularPotential,
    pub n_list: Vec<usize>,
    pub b_count: usize,
    /// Extra set on which the unit-circle invariant is checked.
    pub extra_unit_circle: Option<FrehseSolution>,
    pub selection: SuiteSelection,
}

impl SuiteConfig {
    pub fn new(solution: FrehseSolution) -> Result<Self> {
        let battery = default_battery(&solution);
        let reference = reference_polyline()?;
        let cantor = CompactSetSpec::CantorDust {
            center: Point2::ORIGIN,
            width: 0.03,
            depth: 3,
        };
        let extra = SingularPotential::from_spec(&cantor, 64, CoefficientSchedule::default(), solution.radius())
            .and_then(|p| FrehseSolution::new(p, 64))
            .ok();
        Ok(Self {
            solution,
            policy: ExcisionPolicy::default(),
            seed: 0,
            samples: 10_000,
            classical_samples: 1_000,
            battery,
            zeta_max_k: 30,
            split_levels: vec![2, 3],
            reference,
            n_list: vec![4, 8, 16, 32, 64],
            b_count: 64,
            extra_unit_circle: extra,
            selection: SuiteSelection::default(),
        })
    }
}

/// Polyline from the origin to (0.04, 0) with 64 enumerated points, q = 1/4, r = 0.05.
pub fn reference_polyline() -> Result<SingularPotential> {
    let spec = CompactSetSpec::Polyline {
        vertices: vec![Point2::ORIGIN, Point2::new(0.04, 0.0)],
    };
    SingularPotential::from_spec(&spec, 64, CoefficientSchedule::geometric(0.25)?, 0.05)
}

type Check<'a> = Box<dyn Fn() -> Vec<SuiteItem> + Sync + Send + 'a>;

/// Runs every selected check; failures of individual checks are recorded as
/// failed items.
pub fn run_verification_suite(cfg: &SuiteConfig) -> SuiteReport {
    let sol = &cfg.solution;
    let sel = cfg.selection;
    let weak = std::sync::Mutex::new(Vec::new());
    let zeta = std::sync::Mutex::new(Vec::new());
    let conv = std::sync::Mutex::new(Vec::new());
    let splits = std::sync::Mutex::new(Vec::new());
    let b_vals = std::sync::Mutex::new(Vec::new());
    let mut checks: Vec<Check> = Vec::new();
    if sel.identities {
        checks.push(Box::new(|| identity_items(cfg)));
    }
    if sel.classical {
        checks.push(Box::new(|| classical_items(cfg)));
    }
    if sel.seminorm {
        checks.push(Box::new(|| seminorm_items(cfg)));
    }
    if sel.weak {
        checks.push(Box::new(|| {
            let (items, reports, sp) = weak_items(cfg);
            *weak.lock().unwrap() = reports;
            *splits.lock().unwrap() = sp;
            items
        }));
    }
    if sel.zeta {
        checks.push(Box::new(|| {
            let (items, z) = zeta_items(cfg);
            *zeta.lock().unwrap() = z;
            items
        }));
    }
    if sel.lemma1 || sel.convergence {
        checks.push(Box::new(|| {
            let (items, b, c) = reference_items(cfg);
            *b_vals.lock().unwrap() = b;
            *conv.lock().unwrap() = c;
            items
        }));
    }
    if sel.lemma1 {
        checks.push(Box::new(|| lemma1_items(cfg)));
    }
    if sel.probe {
        checks.push(Box::new(|| probe_items(sol)));
    }
    if sel.schedule {
        checks.push(Box::new(schedule_items));
    }
    let groups = crate::exec::map(&checks, cfg.policy.parallel, |c| c());
    drop(checks);
    SuiteReport {
        items: groups.into_iter().flatten().collect(),
        weak: weak.into_inner().unwrap(),
        zeta: zeta.into_inner().unwrap(),
        convergence: conv.into_inner().unwrap(),
        splits: splits.into_inner().unwrap(),
        b_values: b_vals.into_inner().unwrap(),
    }
}

fn rng(cfg: &SuiteConfig, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(cfg.seed);
    r.set_stream(stream);
    r
}

fn unit_circle_error(sol: &FrehseSolution, rng: &mut ChaCha8Rng, samples: usize) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let x = sample_ball(rng, sol.radius(), sol.points(), 1e-8);
        let u = sol.eval_u(x)?;
        worst = worst.max((u[0] * u[0] + u[1] * u[1] - 1.0).abs());
    }
    Ok(worst)
}

fn identity_items(cfg: &SuiteConfig) -> Vec<SuiteItem> {
    let sol = &cfg.solution;
    let mut items = Vec::new();
    let mut r = rng(cfg, 1);
    items.push(match unit_circle_error(sol, &mut r, cfg.samples) {
        Ok(e) => SuiteItem::at_most("unit_circle", "max | |u|^2 - 1 | at random points", e, 1e-12),
        Err(e) => SuiteItem::failed("unit_circle", "unit circle", &e),
    });
    if let Some(extra) = &cfg.extra_unit_circle {
        items.push(match unit_circle_error(extra, &mut r, cfg.samples) {
            Ok(e) => SuiteItem::at_most("unit_circle_cantor", "max | |u|^2 - 1 | on Cantor dust depth 3", e, 1e-12),
            Err(e) => SuiteItem::failed("unit_circle_cantor", "unit circle on Cantor dust", &e),
        });
    }
    let grad = (|| -> Result<(f64, f64)> {
        let mut worst: f64 = 0.0;
        let mut rhs_excess: f64 = 0.0;
        for _ in 0..cfg.samples {
            let x = sample_ball(&mut r, sol.radius(), sol.points(), 1e-8);
            let g = sol.eval_grad_u(x)?;
            let frob = g[0][0].powi(2) + g[0][1].powi(2) + g[1][0].powi(2) + g[1][1].powi(2);
            let gs = sol.grad_norm_sq(x)?;
            worst = worst.max((frob - gs).abs() / gs);
            let f = sol.eval_F(x)?;
            rhs_excess = rhs_excess.max(f.norm() / (2.0 * gs));
        }
        Ok((worst, rhs_excess))
    })();
    match grad {
        Ok((w, f)) => {
            items.push(SuiteItem::at_most(
                "grad_identity",
                "max relative gap between |grad u|_F^2 and |grad f|^2/f^2",
                w,
                1e-12,
            ));
            items.push(SuiteItem::at_most("rhs_bound", "max |F| / (2 |grad u|^2)", f, 1.0));
        }
        Err(e) => items.push(SuiteItem::failed("grad_identity", "gradient identity", &e)),
    }
    items
}

fn classical_items(cfg: &SuiteConfig) -> Vec<SuiteItem> {
    let sol = &cfg.solution;
    let mut r = rng(cfg, 2);
    let mut items = Vec::new();
    let fd = (|| -> Result<(f64, f64)> {
        let hs = [1e-4, 1e-5, 1e-6];
        let mut errs = [0.0f64; 3];
        let mut rel: f64 = 0.0;
        for _ in 0..20 {
            let x = sample_ball(&mut r, 0.9 * sol.radius(), sol.points(), 1e-2);
            let g = sol.eval_grad_u(x)?;
            for (k, &h) in hs.iter().enumerate() {
                for axis in 0..2 {
                    let e = if axis == 0 { Point2::new(h, 0.0) } else { Point2::new(0.0, h) };
                    let up = sol.eval_u(x + e)?;
                    let dn = sol.eval_u(x - e)?;
                    for c in 0..2 {
                        let d = (up[c] - dn[c]) / (2.0 * h);
                        let err = (d - g[c][axis]).abs();
                        errs[k] = errs[k].max(err);
                        if k == 2 {
                            let scale = g[c][0].hypot(g[c][1]);
                            rel = rel.max(err / scale);
                        }
                    }
                }
            }
        }
        Ok((observed_order(&hs, &errs), rel))
    })();
    match fd {
        Ok((order, rel)) => {
            items.push(SuiteItem::at_least("grad_fd_order", "observed order of central differences of u", order, 1.9));
            items.push(SuiteItem::at_most("grad_fd_match", "relative gap to central differences at h = 1e-6", rel, 1e-6));
        }
        Err(e) => items.push(SuiteItem::failed("grad_fd_order", "finite-difference gradient", &e)),
    }
    let classical = (|| -> Result<f64> {
        let mut worst: f64 = 0.0;
        for _ in 0..cfg.classical_samples {
            let x = sample_ball(&mut r, sol.radius() * 0.999, sol.points(), 1e-2);
            let res = sol.classical_residual(x)?;
            let g = sol.grad_norm_sq(x)?;
            worst = worst.max(res[0].abs().max(res[1].abs()) / (1.0 + g));
        }
        Ok(worst)
    })();
    items.push(match classical {
        Ok(w) => SuiteItem::at_most("classical_residual", "max |Delta u - F| / (1 + |grad u|^2)", w, 1e-8),
        Err(e) => SuiteItem::failed("classical_residual", "classical residual", &e),
    });
    let lap = (|| -> Result<f64> {
        let hs = [1e-3, 5e-4, 2.5e-4];
        let mut errs = [0.0f64; 3];
        for _ in 0..20 {
            let x = sample_ball(&mut r, 0.9 * sol.radius(), sol.points(), 2e-2);
            let f = sol.eval_F(x)?;
            for (k, &h) in hs.iter().enumerate() {
                let l = sol.fd_laplacian(x, h)?;
                errs[k] = errs[k].max((l[0] - f.f1).abs().max((l[1] - f.f2).abs()));
            }
        }
        Ok(observed_order(&hs, &errs))
    })();
    items.push(match lap {
        Ok(o) => SuiteItem::at_least("fd_laplacian_order", "observed order of the 5-point Laplacian minus F", o, 1.9),
        Err(e) => SuiteItem::failed("fd_laplacian_order", "finite-difference Laplacian", &e),
    });
    items
}

fn seminorm_items(cfg: &SuiteConfig) -> Vec<SuiteItem> {
    let mut items = Vec::new();
    for (id, radius, truth) in [
        ("seminorm_1_over_e", 1.0 / E, TAU),
        ("seminorm_e_minus_2", (-2f64).exp(), PI),
    ] {
        let r = FrehseSolution::frehse(radius).and_then(|s| w12_seminorm_sq(&s, &cfg.policy));
        items.push(match r {
            Ok(q) => SuiteItem::at_most(
                id,
                &format!("relative error of int |grad u|^2 against {truth:.6} (single point)"),
                (q.value - truth).abs() / truth,
                1e-3,
            ),
            Err(e) => SuiteItem::failed(id, "seminorm oracle", &e),
        });
    }
    items
}

fn weak_items(cfg: &SuiteConfig) -> (Vec<SuiteItem>, Vec<WeakResidualReport>, Vec<SplitReport>) {
    let sol = &cfg.solution;
    let results = crate::exec::map(&cfg.battery, cfg.policy.parallel, |(id, phi)| {
        weak_residual(sol, phi, id, &cfg.policy)
    });
    let mut items = Vec::new();
    let mut reports = Vec::new();
    for ((id, _), r) in cfg.battery.iter().zip(results) {
        let item_id = format!("weak_{id}");
        match r {
            Ok(rep) => {
                let allowed = 1e-3 + 3.0 * rep.error_estimate / rep.normalizer.max(f64::MIN_POSITIVE);
                let mut item = SuiteItem::at_most(
                    &item_id,
                    "relative weak residual |int grad u.grad phi + int F phi| / (||grad u|| ||grad phi||)",
                    rep.relative,
                    allowed,
                );
                item.pass = rep.passes(1e-3);
                items.push(item);
                reports.push(rep);
            }
            Err(e) => items.push(SuiteItem::failed(&item_id, "weak residual", &e)),
        }
    }
    let mut splits = Vec::new();
    let centered = cfg.battery.iter().find(|(id, _)| id == "centered_p1").map(|b| b.1);
    let lhs = reports.iter().find(|r| r.id == "centered_p1").cloned();
    if let (Some(phi), Some(lhs)) = (centered, lhs) {
        let grad_l2 = w12_seminorm_sq(sol, &cfg.policy).map(|q| q.value.sqrt());
        for &k in &cfg.split_levels {
            for c in 0..2 {
                let id = format!("split_k{k}_c{}", c + 1);
                let r = grad_l2
                    .clone()
                    .and_then(|g| split_check(sol, &phi, k, c, g, &cfg.policy));
                match r {
                    Ok(s) => {
                        let gap = (s.i_k + s.ii_k - lhs.lhs[c]).abs();
                        let allowed = 1e-3 * lhs.normalizer + 3.0 * (s.error_estimate + lhs.error_estimate);
                        let mut item = SuiteItem::at_most(
                            &id,
                            "|I_k + II_k - int grad u_c . grad phi|",
                            gap,
                            allowed,
                        );
                        item.pass = gap <= allowed && s.holder_term.abs() <= s.holder_bound;
                        items.push(item);
                        items.push(SuiteItem::at_most(
                            &format!("holder_k{k}_c{}", c + 1),
                            "|int grad u_c . phi grad zeta^k| / (||phi||_inf ||grad u|| ||grad zeta^k||)",
                            s.holder_term.abs() / s.holder_bound,
                            1.0,
                        ));
                        splits.push(s);
                    }
                    Err(e) => items.push(SuiteItem::failed(&id, "cutoff splitting", &e)),
                }
            }
        }
    }
    (items, reports, splits)
}

fn zeta_items(cfg: &SuiteConfig) -> (Vec<SuiteItem>, Vec<ZetaNorms>) {
    let norms: Vec<ZetaNorms> = (0..=cfg.zeta_max_k).map(zeta_norms).collect();
    let worst = norms
        .iter()
        .map(|z| (z.grad_l2_sq_numeric - z.grad_l2_sq).abs() / z.grad_l2_sq)
        .fold(0.0, f64::max);
    let l2_excess = norms
        .iter()
        .map(|z| z.log_l2_sq - z.log_l2_sq_bound)
        .fold(f64::NEG_INFINITY, f64::max);
    let pts = cfg.solution.points();
    let first_disjoint = (0..=cfg.zeta_max_k).find(|&k| zeta_supports_disjoint(pts, k));
    let mut items = vec![
        SuiteItem::at_most(
            "zeta_grad_decay",
            "max relative gap of ||grad zeta^k||^2 to 2 pi e^-k (1 - 1/e), k <= max",
            worst,
            1e-10,
        ),
        SuiteItem::at_most("zeta_l2_bound", "max of log ||zeta^k||^2 - log(pi r_k^2)", l2_excess, 0.0),
    ];
    items.push(match first_disjoint {
        Some(k) => {
            // direct check at that level: no sample point sees two positive cutoffs
            let mut r = rng(cfg, 3);
            let mut overlaps = 0.0;
            for _ in 0..1000 {
                let p = pts[r.gen_range(0..pts.len())];
                let t = (k as f64).exp() * (1.0 + r.gen::<f64>());
                let x = p + Point2::polar((-t).exp(), r.gen_range(0.0..TAU));
                let positive = pts
                    .iter()
                    .enumerate()
                    .filter(|(i, q)| zeta_eval(**q, CutoffZeta { index: i + 1, k }, x).value > 0.0)
                    .count();
                if positive > 1 {
                    overlaps += 1.0;
                }
            }
            SuiteItem::at_most(
                "zeta_disjoint",
                &format!("sample points in two cutoff supports at k = {k}"),
                overlaps,
                0.0,
            )
        }
        None => SuiteItem::failed(
            "zeta_disjoint",
            "disjoint cutoff supports",
            &Error::InvalidArgument("supports never disjoint".into()),
        ),
    });
    let x = Point2::new(0.3 * cfg.solution.radius(), 0.0) + pts[0];
    let pointwise = zeta_eval(pts[0], CutoffZeta { index: 1, k: 3 }, x).value;
    items.push(SuiteItem::at_most("zeta_pointwise", "zeta_1^3 at a fixed point away from p_1", pointwise, 0.0));
    (items, norms)
}

fn reference_items(cfg: &SuiteConfig) -> (Vec<SuiteItem>, Vec<f64>, Vec<ConvergenceRow>) {
    let pot = &cfg.reference;
    let mut items = Vec::new();
    let count = cfg.b_count.min(pot.len());
    let idx: Vec<usize> = (1..=count).collect();
    let b = crate::exec::map(&idx, cfg.policy.parallel, |&i| {
        let direct = b_integral(pot, i, 6.0, &cfg.policy)?;
        let p = pot.points()[i - 1];
        let r_tilde = (1e-3f64).min(0.5 * (pot.radius() - p.norm()));
        let split = b_split(pot, i, 6.0, r_tilde)?;
        Ok::<_, Error>((direct.value, split.total()))
    });
    let b: Result<Vec<(f64, f64)>> = b.into_iter().collect();
    let b = match b {
        Ok(b) => b,
        Err(e) => {
            items.push(SuiteItem::failed("b_bounded", "b_i integrals", &e));
            return (items, Vec::new(), Vec::new());
        }
    };
    let values: Vec<f64> = b.iter().map(|x| x.0).collect();
    let max = values.iter().copied().fold(0.0, f64::max);
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    let split_gap = b.iter().map(|(d, s)| (d - s).abs() / s).fold(0.0, f64::max);
    items.push(SuiteItem::at_most(
        "b_bounded",
        &format!("max/min of b_i over i <= {count} on the reference polyline"),
        max / min,
        3.0,
    ));
    items.push(SuiteItem::at_most("b_split", "max relative gap of b_i to its I + II split", split_gap, 1e-3));
    let mut rows = Vec::new();
    if cfg.selection.convergence {
        let sol = FrehseSolution::new(pot.clone(), pot.len());
        match sol.and_then(|s| wn_convergence(&s, &cfg.n_list, max, &cfg.policy)) {
            Ok(r) => {
                let ratio = r
                    .windows(2)
                    .map(|w| w[0].value / w[1].value)
                    .fold(f64::INFINITY, f64::min);
                let over = r.iter().map(|row| row.value / row.bound).fold(0.0, f64::max);
                items.push(SuiteItem::at_least("convergence_decay", "min decrease factor per doubling of N", ratio, 2.0));
                items.push(SuiteItem::at_most("convergence_bound", "max tail value / analytic tail bound", over, 1.0));
                rows = r;
            }
            Err(e) => items.push(SuiteItem::failed("convergence_decay", "convergence table", &e)),
        }
    }
    (items, values, rows)
}

fn lemma1_items(cfg: &SuiteConfig) -> Vec<SuiteItem> {
    let sol = &cfg.solution;
    let dom = default_dominating(sol.potential());
    let mut items = Vec::new();
    match lemma1_pointwise_check(sol, &dom, cfg.samples, cfg.seed) {
        Ok(c) => {
            items.push(SuiteItem::at_most(
                "lemma1_pointwise",
                "violations of |grad u|^2 <= Phi at random points",
                c.violations as f64,
                0.0,
            ));
            items.push(SuiteItem::at_most("lemma1_ratio", "max |grad u|^2 / Phi", c.max_ratio, 1.0));
        }
        Err(e) => items.push(SuiteItem::failed("lemma1_pointwise", "pointwise domination", &e)),
    }
    let phi = phi_l1_norm(sol.potential(), &dom, sol.terms(), &cfg.policy);
    let semi = w12_seminorm_sq(sol, &cfg.policy);
    items.push(match (phi, semi) {
        (Ok(p), Ok(s)) => SuiteItem::at_least(
            "phi_dominates_seminorm",
            "int Phi / int |grad u|^2",
            p.value / s.value,
            1.0,
        ),
        (Err(e), _) | (_, Err(e)) => SuiteItem::failed("phi_dominates_seminorm", "integrated domination", &e),
    });
    items
}

fn probe_items(sol: &FrehseSolution) -> Vec<SuiteItem> {
    let mut items = Vec::new();
    let mut worst: f64 = 1.0;
    let mut failure = None;
    for i in 1..=sol.terms().min(4) {
        for lo in [10.0, 40.0] {
            match sol.oscillation_report(i, lo, lo + TAU, 2000) {
                Ok(r) => worst = worst.min(r.max_u1).min(-r.min_u1),
                Err(e) => failure = Some(e),
            }
        }
    }
    items.push(match failure {
        None => SuiteItem::at_least(
            "probe_oscillation",
            "min over points and windows of min(max u1, -min u1)",
            worst,
            0.999,
        ),
        Some(e) => SuiteItem::failed("probe_oscillation", "radial probe oscillation", &e),
    });
    // around a smooth point the oscillation over B(x, s) shrinks with s
    let pts = sol.points();
    let mut best = (0.0, Point2::ORIGIN);
    for m in 0..16 {
        let c = Point2::polar(0.6 * sol.radius(), TAU * m as f64 / 16.0);
        let d = pts.iter().map(|p| p.dist(c)).fold(f64::INFINITY, f64::min);
        if d > best.0 {
            best = (d, c);
        }
    }
    let (d, c) = best;
    let spreads: Result<Vec<f64>> = [0.5, 0.05, 0.005]
        .iter()
        .map(|f| sol.local_oscillation(c, f * d, 4, 16).map(|r| r.spread()))
        .collect();
    items.push(match spreads {
        Ok(s) => SuiteItem::at_most(
            "smooth_point_oscillation",
            "oscillation of u over the smallest ball relative to the largest",
            s[2] / s[0],
            0.05,
        ),
        Err(e) => SuiteItem::failed("smooth_point_oscillation", "smooth point oscillation", &e),
    });
    items
}

/// Closed-form series against direct partial summation for several ratios.
pub fn schedule_items() -> Vec<SuiteItem> {
    let mut worst: f64 = 0.0;
    for q in [0.1, 0.25, 0.5, 0.9] {
        let s = CoefficientSchedule::Geometric { ratio: q };
        let report = match validate_schedule(&s) {
            Ok(r) => r,
            Err(e) => return vec![SuiteItem::failed("schedule_closed_forms", "schedule closed forms", &e)],
        };
        for (e, closed) in [(0.5, report.c_half), (1.0 / 3.0, report.c_third), (0.25, report.c_beta)] {
            let direct = compensated_sum((0..20_000).map(|i| q.powf(e * i as f64)));
            worst = worst.max((closed - direct).abs() / direct);
        }
    }
    vec![SuiteItem::at_most(
        "schedule_closed_forms",
        "max relative gap of closed-form series to partial sums, q in {0.1, 0.25, 0.5, 0.9}",
        worst,
        1e-12,
    )]
}

/// Default four-point configuration: q = 1/4, r = 0.05.
pub fn default_solution() -> Result<FrehseSolution> {
    let spec = default_set();
    let p = SingularPotential::from_spec(&spec, 4, CoefficientSchedule::default(), 0.05)?;
    FrehseSolution::new(p, 4)
}

pub fn default_set() -> CompactSetSpec {
    CompactSetSpec::Finite {
        points: vec![
            Point2::ORIGIN,
            Point2::new(0.02, 0.0),
            Point2::new(0.0, 0.02),
            Point2::new(-0.015, -0.015),
        ],
    }
}
