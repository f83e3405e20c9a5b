//! Integration over a ball of integrands with isolated power-log singularities.
//!
//! The ball is split with a smooth partition of unity: a bump of radius
//! eps_i around each flagged point and the remainder. The remainder is
//! integrated in polar coordinates about the ball center. Each patch is
//! integrated in the coordinates (w, theta) with w = log log(1/rho), where the
//! integrands of interest decay like exp(-gamma * w); the patch is walked
//! shell by shell (each shell shrinks the excision radius from
//! exp(-exp(w)) to exp(-exp(w + dw))) and the remaining leak is extrapolated
//! from the geometric decay of the shell contributions.
//!
//! Integrands may provide their values in the log-radial frame through
//! [`Integrand::eval_near`]; then rho is never formed and shells can go far
//! below floating-point underflow.

use std::f64::consts::{LN_2, PI, TAU};

use serde::{Deserialize, Serialize};

use crate::cubature::{self, CubatureOptions, Rect};
use crate::error::{Error, Result};
use crate::field::SingularPotential;
use crate::numeric::{compensated_sum, integrate_1d, CompensatedSum};
use crate::singular_set::Point2;
use crate::solution::FrehseSolution;

/// Largest shell coordinate w = log log(1/rho) visited with a log-radial form.
pub const NEAR_W_LIMIT: f64 = 160.0;

/// Smallest rho relative to |p| used when a patch falls back to Cartesian
/// evaluation at p + rho * dir.
const FALLBACK_REL_RHO: f64 = 1e-10;

/// Envelope ratio per shell at or above which the leak is considered non-decaying.
const DIVERGENCE_RATIO: f64 = 0.95;

pub trait Integrand: Sync {
    fn eval(&self, x: Point2) -> f64;

    /// Whether [`Integrand::eval_near`] is implemented.
    fn supports_near(&self) -> bool {
        false
    }

    /// rho^2 * g(p + rho * dir) with t = log(1/rho), for the flagged point with
    /// index `site` in the list handed to [`integrate_ball`].
    fn eval_near(&self, _site: usize, _t: f64, _dir: [f64; 2]) -> f64 {
        f64::NAN
    }

    /// Values of w = log log(1/rho) where the integrand has kinks around `site`.
    fn breakpoints(&self, _site: usize) -> Vec<f64> {
        Vec::new()
    }
}

/// Adapts a plain closure; patches use Cartesian evaluation.
pub struct FnIntegrand<F>(pub F);

impl<F: Fn(Point2) -> f64 + Sync> Integrand for FnIntegrand<F> {
    fn eval(&self, x: Point2) -> f64 {
        (self.0)(x)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ExcisionPolicy {
    /// Largest patch radius around a flagged point.
    pub eps0: f64,
    /// Minimum number of shells per patch before the leak may be extrapolated.
    pub levels: usize,
    pub target_rel_err: f64,
    pub abs_tol: f64,
    /// Assumed decay exponent gamma of the leak, exp(-gamma * w); sets the
    /// shell width log(2)/gamma so the model leak halves per shell.
    pub leak_exponent: f64,
    /// Cell budget for each cubature call.
    pub max_cells: usize,
    pub parallel: bool,
}

impl Default for ExcisionPolicy {
    fn default() -> Self {
        Self {
            eps0: 0.01,
            levels: 4,
            target_rel_err: 1e-3,
            abs_tol: 0.0,
            leak_exponent: 1.0,
            max_cells: 20_000,
            parallel: true,
        }
    }
}

impl ExcisionPolicy {
    /// Regression-grade tolerance.
    pub fn refined() -> Self {
        Self {
            target_rel_err: 1e-5,
            ..Self::default()
        }
    }

    pub fn with_leak_exponent(self, leak_exponent: f64) -> Self {
        Self {
            leak_exponent,
            ..self
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidPolicy(m.to_string()));
        if !(self.eps0 > 0.0 && self.eps0.is_finite()) {
            return bad("eps0 must be positive");
        }
        if self.levels < 2 {
            return bad("levels must be at least 2");
        }
        if !(self.target_rel_err > 0.0 && self.target_rel_err < 1.0) {
            return bad("target_rel_err must be in (0, 1)");
        }
        if !(self.abs_tol >= 0.0) {
            return bad("abs_tol must be non-negative");
        }
        if !(self.leak_exponent > 0.0 && self.leak_exponent.is_finite()) {
            return bad("leak_exponent must be positive");
        }
        if self.max_cells < 64 {
            return bad("max_cells must be at least 64");
        }
        Ok(())
    }

    fn shell_width(&self) -> f64 {
        LN_2 / self.leak_exponent
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuadratureResult {
    pub value: f64,
    pub error_estimate: f64,
    pub cells_used: usize,
    /// Deepest excision level reached around each patched point, as
    /// log log(1/eps); the radius itself usually underflows.
    pub excision_levels: Vec<f64>,
}

/// Smooth step: 1 on [0, 1/2], 0 on [1, inf).
fn cutoff(s: f64) -> f64 {
    if s <= 0.5 {
        return 1.0;
    }
    if s >= 1.0 {
        return 0.0;
    }
    let tau = 2.0 * s - 1.0;
    let h = |x: f64| if x > 0.0 { (-1.0 / x).exp() } else { 0.0 };
    let a = h(tau);
    let b = h(1.0 - tau);
    b / (a + b)
}

struct Patch {
    site: usize,
    at: Point2,
    eps: f64,
}

fn patches(center: Point2, radius: f64, sites: &[Point2], eps0: f64) -> Vec<Patch> {
    let mut out = Vec::new();
    for (k, p) in sites.iter().enumerate() {
        let d = p.dist(center);
        if d >= radius {
            continue;
        }
        let sep = sites
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != k)
            .map(|(_, q)| q.dist(*p))
            .fold(f64::INFINITY, f64::min);
        let eps = eps0.min(0.5 * (radius - d)).min(0.5 * sep);
        if eps > 0.0 && eps < 1.0 {
            out.push(Patch { site: k, at: *p, eps });
        }
    }
    out
}

struct PatchResult {
    value: f64,
    error: f64,
    abs: f64,
    cells: usize,
    level: f64,
}

struct Level {
    value: f64,
    abs: f64,
    error: f64,
    cells: usize,
}

/// Integrates `integrand` over B(center, radius), excising and extrapolating
/// around each of `sites` that lies inside the ball.
pub fn integrate_ball<I: Integrand + ?Sized>(
    integrand: &I,
    center: Point2,
    radius: f64,
    policy: &ExcisionPolicy,
    sites: &[Point2],
) -> Result<QuadratureResult> {
    policy.validate()?;
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::InvalidArgument(format!("ball radius {radius}")));
    }
    let patches = patches(center, radius, sites, policy.eps0);
    let weight = |x: Point2| {
        let mut w = 1.0;
        for p in &patches {
            let s = x.dist(p.at) / p.eps;
            if s < 1.0 {
                w -= cutoff(s);
            }
        }
        w
    };
    let polar = |s: f64, th: f64| center + Point2::polar(s, th);
    let outer_fn = |s: f64, th: f64| {
        let x = polar(s, th);
        let w = weight(x);
        if w <= 0.0 {
            0.0
        } else {
            w * integrand.eval(x) * s
        }
    };
    let rect = Rect::new([0.0, 0.0], [radius, TAU]);
    let outer = cubature::integrate(
        &outer_fn,
        &rect.grid(4, 8),
        CubatureOptions {
            rel_tol: 0.25 * policy.target_rel_err,
            abs_tol: policy.abs_tol,
            max_cells: policy.max_cells,
            parallel: policy.parallel,
        },
    )
    .map_err(|b| Error::non_finite(polar(b.0[0], b.0[1])))?;

    let floor = outer.abs / patches.len().max(1) as f64;
    let mut value = CompensatedSum::new();
    value.add(outer.value);
    let mut error = outer.error;
    let mut cells = outer.cells;
    let mut levels = Vec::with_capacity(patches.len());
    for patch in &patches {
        let r = integrate_patch(integrand, patch, policy, floor)?;
        value.add(r.value);
        error += r.error;
        cells += r.cells;
        levels.push(r.level);
        let _ = r.abs;
    }
    Ok(QuadratureResult {
        value: value.value(),
        error_estimate: error,
        cells_used: cells,
        excision_levels: levels,
    })
}

fn integrate_patch<I: Integrand + ?Sized>(
    integrand: &I,
    patch: &Patch,
    policy: &ExcisionPolicy,
    floor: f64,
) -> Result<PatchResult> {
    let near = integrand.supports_near();
    let w_start = (1.0 / patch.eps).ln().ln();
    let w_half = (2.0 / patch.eps).ln().ln();
    let w_limit = if near {
        NEAR_W_LIMIT
    } else {
        let scale = patch.at.norm().max(f64::MIN_POSITIVE.sqrt());
        let t_max = (1.0 / (FALLBACK_REL_RHO * scale)).ln().min(300.0);
        t_max.ln().max(w_half)
    };
    let eval = |w: f64, th: f64| -> f64 {
        let t = w.exp();
        let psi = if w >= w_half { 1.0 } else { cutoff((-t).exp() / patch.eps) };
        if psi == 0.0 {
            return 0.0;
        }
        let dir = [th.cos(), th.sin()];
        let g = if near {
            integrand.eval_near(patch.site, t, dir)
        } else {
            let rho = (-t).exp();
            let x = patch.at + Point2::new(rho * dir[0], rho * dir[1]);
            integrand.eval(x) * rho * rho
        };
        psi * g * t
    };
    let walk = Walk {
        at: patch.at,
        w_start,
        w_half,
        w_limit,
        breaks: integrand.breakpoints(patch.site),
        floor,
    };
    walk.run(&eval, policy)
}

/// Shell-by-shell integration of a (w, theta) integrand around `at`.
struct Walk {
    at: Point2,
    w_start: f64,
    /// End of the partition-of-unity transition; shells start here.
    w_half: f64,
    w_limit: f64,
    breaks: Vec<f64>,
    /// Scale below which contributions count as negligible.
    floor: f64,
}

impl Walk {
    fn run<E>(&self, eval: &E, policy: &ExcisionPolicy) -> Result<PatchResult>
    where
        E: Fn(f64, f64) -> f64 + Sync,
    {
        let (w_start, w_half) = (self.w_start, self.w_half);
        let dw = policy.shell_width();
        // whole shells only, so the shell sequence stays geometric up to the end
        let w_limit = w_half + ((self.w_limit - w_half) / dw).floor().max(0.0) * dw;
        let mut breaks = self.breaks.clone();
        breaks.retain(|b| b.is_finite() && *b > w_start);
        breaks.sort_by(f64::total_cmp);
        let locate = |w: f64, th: f64| {
            let rho = (-w.exp()).exp();
            self.at + Point2::polar(rho, th)
        };
        let level_integral = |a: f64, b: f64, abs_tol: f64| -> Result<Level> {
            let mut cuts = vec![a];
            cuts.extend(breaks.iter().copied().filter(|x| *x > a && *x < b));
            cuts.push(b);
            let mut lv = Level {
                value: 0.0,
                abs: 0.0,
                error: 0.0,
                cells: 0,
            };
            for win in cuts.windows(2) {
                if win[1] <= win[0] {
                    continue;
                }
                let r = cubature::integrate(
                    eval,
                    &Rect::new([win[0], 0.0], [win[1], TAU]).grid(1, 4),
                    CubatureOptions {
                        rel_tol: 0.25 * policy.target_rel_err,
                        abs_tol,
                        max_cells: policy.max_cells,
                        parallel: policy.parallel,
                    },
                )
                .map_err(|bad| Error::non_finite(locate(bad.0[0], bad.0[1])))?;
                lv.value += r.value;
                lv.abs += r.abs;
                lv.error += r.error;
                lv.cells += r.cells;
            }
            Ok(lv)
        };

        let floor = self.floor;
        let shell_tol = |scale: f64| (0.05 * policy.target_rel_err * scale).max(policy.abs_tol);
        let first = level_integral(w_start, w_half.min(w_limit), shell_tol(floor))?;
        let mut sum = CompensatedSum::new();
        sum.add(first.value);
        let mut abs = first.abs;
        let mut error = first.error;
        let mut cells = first.cells;
        let mut shells: Vec<Level> = Vec::new();
        let mut w = w_half;
        let mut converged = false;
        while w < w_limit {
            let b = (w + dw).min(w_limit);
            let lv = level_integral(w, b, shell_tol(floor.max(abs)))?;
            sum.add(lv.value);
            abs += lv.abs;
            error += lv.error;
            cells += lv.cells;
            shells.push(lv);
            w = b;
            if shells.len() >= policy.levels {
                let tol = 0.25 * policy.target_rel_err * floor.max(abs) + policy.abs_tol;
                if tail_bound(&shells) <= tol {
                    converged = true;
                    break;
                }
            }
        }

        let env: Vec<f64> = shells.iter().map(|s| s.abs).collect();
        if !converged && env.len() >= 4 {
            let n = env.len();
            let growing = (n - 3..n).all(|j| env[j - 1] > 0.0 && env[j] >= DIVERGENCE_RATIO * env[j - 1]);
            let significant = env[n - 1] > 0.25 * policy.target_rel_err * floor.max(abs) + policy.abs_tol;
            if growing && significant {
                return Err(Error::NonIntegrable {
                    x: self.at.x,
                    y: self.at.y,
                });
            }
        }
        let (tail, tail_err) = extrapolate(&shells, converged);
        sum.add(tail);
        error += tail_err;
        Ok(PatchResult {
            value: sum.value(),
            error,
            abs,
            cells,
            level: w,
        })
    }
}

/// Integrates over the disk {log log(1/|x - at|) > w_from} an integrand given
/// in the log-radial frame: `f(t, dir)` returns rho^2 g(at + rho dir) with
/// t = log(1/rho). `breaks` are kinks in w.
pub fn integrate_log_disk<F>(
    f: &F,
    at: Point2,
    w_from: f64,
    breaks: &[f64],
    policy: &ExcisionPolicy,
) -> Result<QuadratureResult>
where
    F: Fn(f64, [f64; 2]) -> f64 + Sync,
{
    policy.validate()?;
    let eval = |w: f64, th: f64| {
        let t = w.exp();
        f(t, [th.cos(), th.sin()]) * t
    };
    let walk = Walk {
        at,
        w_start: w_from,
        w_half: w_from,
        w_limit: NEAR_W_LIMIT,
        breaks: breaks.to_vec(),
        floor: 0.0,
    };
    let r = walk.run(&eval, policy)?;
    Ok(QuadratureResult {
        value: r.value,
        error_estimate: r.error,
        cells_used: r.cells,
        excision_levels: vec![r.level],
    })
}

/// Bound on the envelope of the shells not yet visited. Shell widths are
/// chosen so the model envelope halves per shell; the envelope is carried
/// forward from the largest decayed shell so that zero crossings of an
/// oscillating integrand do not fake fast decay.
fn tail_bound(shells: &[Level]) -> f64 {
    let n = shells.len();
    if n < 2 {
        return f64::INFINITY;
    }
    let (a, b) = (shells[n - 2].abs, shells[n - 1].abs);
    if b >= a && b > 0.0 {
        return f64::INFINITY;
    }
    let mut env: f64 = 0.0;
    for (j, s) in shells.iter().enumerate() {
        env = env.max(s.abs * 0.5f64.powi((n - 1 - j) as i32));
    }
    env
}

/// Estimated leak beyond the last shell and its uncertainty.
fn extrapolate(shells: &[Level], converged: bool) -> (f64, f64) {
    let n = shells.len();
    let bound = tail_bound(shells);
    if n >= 3 {
        let (s0, s1, s2) = (shells[n - 3].value, shells[n - 2].value, shells[n - 1].value);
        if s0 != 0.0 && s1 != 0.0 {
            let r1 = s1 / s0;
            let r2 = s2 / s1;
            if r1 > 0.0 && r1 < 1.0 && r2 > 0.0 && r2 < 1.0 && (r1 - r2).abs() <= 0.1 * r2 {
                let tail = s2 * r2 / (1.0 - r2);
                let alt = s2 * r1 / (1.0 - r1);
                let err = (tail - alt).abs().max(1e-3 * tail.abs());
                return (tail, if converged { err.min(bound) } else { err });
            }
        }
    }
    if bound.is_finite() {
        (0.0, bound)
    } else {
        // no decay seen: charge a long geometric tail on the last envelope
        (0.0, shells.last().map_or(0.0, |s| s.abs / (1.0 - DIVERGENCE_RATIO)))
    }
}

/// Integral of |grad u|^2 over B_r.
pub fn w12_seminorm_sq(sol: &FrehseSolution, policy: &ExcisionPolicy) -> Result<QuadratureResult> {
    integrate_ball(
        &GradSq(sol),
        Point2::ORIGIN,
        sol.radius(),
        policy,
        sol.points(),
    )
}

struct GradSq<'a>(&'a FrehseSolution);

impl Integrand for GradSq<'_> {
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

/// Parameters of the Hölder/Young chain that produces the dominating function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DominatingFunction {
    pub beta: f64,
    /// Conjugate exponent q; the weights use 1/p = 1 - 1/q.
    pub holder_q: f64,
    /// C = sum a_i^beta
    pub c: f64,
    /// inf over B_r of log(1/|x|)
    pub lambda: f64,
    /// C * lambda^(-1/p)
    pub c_tilde: f64,
}

impl DominatingFunction {
    /// Exponent 1 - 2 beta - 1/q of the coefficients.
    pub fn coefficient_exponent(&self) -> f64 {
        1.0 - 2.0 * self.beta - 1.0 / self.holder_q
    }

    /// Exponent 1 + 1/q of the logarithm.
    pub fn log_exponent(&self) -> f64 {
        1.0 + 1.0 / self.holder_q
    }
}

/// Constants of the gradient bound for parameters beta and q.
pub fn lemma1_constant(potential: &SingularPotential, beta: f64, holder_q: f64) -> Result<DominatingFunction> {
    if !(beta > 0.0 && beta < 0.5) {
        return Err(Error::InvalidArgument(format!("beta must be in (0, 1/2) (got {beta})")));
    }
    if !(holder_q > 1.0 && holder_q.is_finite()) {
        return Err(Error::InvalidArgument(format!("q must be > 1 (got {holder_q})")));
    }
    let c = potential.schedule().power_sum(beta);
    let lambda = potential.lambda();
    let inv_p = 1.0 - 1.0 / holder_q;
    Ok(DominatingFunction {
        beta,
        holder_q,
        c,
        lambda,
        c_tilde: c * lambda.powf(-inv_p),
    })
}

/// The default parameters beta = 1/4, q = 6.
pub fn default_dominating(potential: &SingularPotential) -> DominatingFunction {
    lemma1_constant(potential, 0.25, 6.0).expect("default parameters are valid")
}

/// Phi(x) = C~ sum_{i <= n} a_i^(1-2beta-1/q) / (|x-p_i|^2 log^(1+1/q)(1/|x-p_i|)).
pub fn dominating_phi(
    potential: &SingularPotential,
    params: &DominatingFunction,
    x: Point2,
    n: usize,
) -> Result<f64> {
    potential.check_domain(x)?;
    let n = potential.terms(n)?;
    let e = params.coefficient_exponent();
    let l = params.log_exponent();
    let mut acc = CompensatedSum::new();
    for (i, (a, p)) in potential.coefficients()[..n].iter().zip(potential.points()).enumerate() {
        let rho2 = (x - *p).norm_sq();
        if rho2 == 0.0 {
            return Err(Error::AtSingularPoint { index: i + 1 });
        }
        let t = -0.5 * rho2.ln();
        acc.add(a.powf(e) / (rho2 * t.powf(l)));
    }
    Ok(params.c_tilde * acc.value())
}

struct BIntegrand {
    at: Point2,
    exponent: f64,
}

impl Integrand for BIntegrand {
    fn eval(&self, x: Point2) -> f64 {
        let rho2 = (x - self.at).norm_sq();
        let t = -0.5 * rho2.ln();
        1.0 / (rho2 * t.powf(self.exponent))
    }

    fn supports_near(&self) -> bool {
        true
    }

    fn eval_near(&self, _site: usize, t: f64, _dir: [f64; 2]) -> f64 {
        t.powf(-self.exponent)
    }
}

/// b_i = integral over B_r of 1/(|x-p_i|^2 log^(1+1/q)(1/|x-p_i|)), `i` 1-based.
pub fn b_integral(
    potential: &SingularPotential,
    i: usize,
    holder_q: f64,
    policy: &ExcisionPolicy,
) -> Result<QuadratureResult> {
    if i == 0 || i > potential.len() {
        return Err(Error::OutOfRange {
            index: i,
            len: potential.len(),
        });
    }
    if !(holder_q > 0.0 && holder_q.is_finite()) {
        return Err(Error::InvalidArgument(format!("q must be positive (got {holder_q})")));
    }
    let at = potential.points()[i - 1];
    let integrand = BIntegrand {
        at,
        exponent: 1.0 + 1.0 / holder_q,
    };
    let policy = policy.with_leak_exponent(1.0 / holder_q);
    integrate_ball(&integrand, Point2::ORIGIN, potential.radius(), &policy, &[at])
}

/// b_i split as I (centered ball of radius r~) + II (the rest), both from
/// the radial antiderivative q * log^(-1/q)(1/rho).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BSplit {
    pub inner: f64,
    pub outer: f64,
    /// pi r^2 / (r~^2 log^(1+1/q)(1/r~)), an upper bound for II.
    pub outer_bound: f64,
}

impl BSplit {
    pub fn total(&self) -> f64 {
        self.inner + self.outer
    }
}

pub fn b_split(potential: &SingularPotential, i: usize, holder_q: f64, r_tilde: f64) -> Result<BSplit> {
    if i == 0 || i > potential.len() {
        return Err(Error::OutOfRange {
            index: i,
            len: potential.len(),
        });
    }
    let p = potential.points()[i - 1];
    let r = potential.radius();
    if !(r_tilde > 0.0 && r_tilde < r - p.norm()) {
        return Err(Error::InvalidArgument(format!(
            "r~ = {r_tilde} must be positive and keep B(p_{i}, r~) inside the domain"
        )));
    }
    let q = holder_q;
    let t_tilde = (1.0 / r_tilde).ln();
    let inner = TAU * q * t_tilde.powf(-1.0 / q);
    let ray = |th: f64| {
        let (s, c) = th.sin_cos();
        let pd = p.x * c + p.y * s;
        let rho_max = -pd + (pd * pd + r * r - p.norm_sq()).sqrt();
        let t_max = (1.0 / rho_max).ln();
        q * (t_max.powf(-1.0 / q) - t_tilde.powf(-1.0 / q))
    };
    let (outer, _) = integrate_1d(ray, 0.0, TAU, 1e-13, 0.0);
    let outer_bound = PI * r * r / (r_tilde * r_tilde * t_tilde.powf(1.0 + 1.0 / q));
    Ok(BSplit {
        inner,
        outer,
        outer_bound,
    })
}

/// The integral of Phi computed term by term.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PhiNorm {
    /// C~ sum_{i <= n} a_i^e b_i
    pub value: f64,
    /// C~ sup b sum_{i > n} a_i^e, a bound for the omitted terms.
    pub tail_bound: f64,
    pub b: Vec<f64>,
    pub error_estimate: f64,
}

pub fn phi_l1_norm(
    potential: &SingularPotential,
    params: &DominatingFunction,
    n: usize,
    policy: &ExcisionPolicy,
) -> Result<PhiNorm> {
    let n = potential.terms(n)?;
    let e = params.coefficient_exponent();
    let mut b = Vec::with_capacity(n);
    let mut err = 0.0;
    let mut terms = Vec::with_capacity(n);
    for i in 1..=n {
        let r = b_integral(potential, i, params.holder_q, policy)?;
        let w = potential.coefficients()[i - 1].powf(e);
        terms.push(w * r.value);
        err += w * r.error_estimate;
        b.push(r.value);
    }
    let sup_b = b.iter().copied().fold(0.0, f64::max);
    let omitted = if potential.is_complete() {
        compensated_sum(potential.coefficients()[n..].iter().map(|a| a.powf(e)))
    } else {
        potential.schedule().power_tail(n, e)
    };
    Ok(PhiNorm {
        value: params.c_tilde * compensated_sum(terms),
        tail_bound: params.c_tilde * sup_b * omitted,
        b,
        error_estimate: params.c_tilde * err,
    })
}
