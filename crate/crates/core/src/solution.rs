//! The solution family u = (sin log f_N, cos log f_N) and the right-hand side F.

use std::f64::consts::{PI, TAU};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{CoefficientSchedule, SingularPotential};
use crate::numeric::compensated_sum;
use crate::singular_set::{CompactSetSpec, Point2};

/// Distance from the singular points below which classical checks refuse to run.
pub const SMOOTH_EXCLUSION: f64 = 1e-2;

/// exp(t) above which the probe never forms rho.
const PROBE_LOG_SWITCH: f64 = 700.0;

/// Deliberate defects used to check that the verifier can fail.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    /// F is returned with the wrong sign.
    FlipRhsSign,
}

impl std::str::FromStr for Fault {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "flip-rhs-sign" => Ok(Fault::FlipRhsSign),
            other => Err(Error::InvalidArgument(format!("unknown fault '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RhsValue {
    pub f1: f64,
    pub f2: f64,
}

impl RhsValue {
    pub fn norm(&self) -> f64 {
        self.f1.hypot(self.f2)
    }
}

/// Point on the log-log radial ray about singular point `index` (1-based):
/// distance rho = exp(-exp(t)) in direction theta.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbeFrame {
    pub index: usize,
    pub t: f64,
    pub theta: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProbeValue {
    pub u: [f64; 2],
    /// a_i * exp(t)
    pub leading: f64,
    /// sum_{j != i} a_j log(1/|p_i - p_j|)
    pub rest: f64,
    /// Bound on |f - leading - rest| at the probed point.
    pub rest_error_bound: f64,
    pub log_f: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OscillationReport {
    pub min_u1: f64,
    pub max_u1: f64,
    pub min_u2: f64,
    pub max_u2: f64,
}

impl OscillationReport {
    pub fn spread(&self) -> f64 {
        (self.max_u1 - self.min_u1).max(self.max_u2 - self.min_u2)
    }

    fn fold(values: impl Iterator<Item = [f64; 2]>) -> Self {
        let mut r = OscillationReport {
            min_u1: f64::INFINITY,
            max_u1: f64::NEG_INFINITY,
            min_u2: f64::INFINITY,
            max_u2: f64::NEG_INFINITY,
        };
        for u in values {
            r.min_u1 = r.min_u1.min(u[0]);
            r.max_u1 = r.max_u1.max(u[0]);
            r.min_u2 = r.min_u2.min(u[1]);
            r.max_u2 = r.max_u2.max(u[1]);
        }
        r
    }
}

/// u and rho * grad u at p_i + rho * dir.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NearSolution {
    pub u: [f64; 2],
    pub scaled_grad: [[f64; 2]; 2],
    pub rho: f64,
}

impl NearSolution {
    /// rho^2 |grad u|^2
    pub fn scaled_grad_sq(&self) -> f64 {
        let g = &self.scaled_grad;
        g[0][0] * g[0][0] + g[0][1] * g[0][1] + g[1][0] * g[1][0] + g[1][1] * g[1][1]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FrehseSolution {
    potential: SingularPotential,
    n: usize,
    fault: Option<Fault>,
}

impl FrehseSolution {
    pub fn new(potential: SingularPotential, n: usize) -> Result<Self> {
        let n = potential.terms(n)?;
        Ok(Self {
            potential,
            n,
            fault: None,
        })
    }

    /// The single-point case f = log(1/|x|) on B(0, radius).
    pub fn frehse(radius: f64) -> Result<Self> {
        let spec = CompactSetSpec::Finite {
            points: vec![Point2::ORIGIN],
        };
        let potential = SingularPotential::from_spec(&spec, 1, CoefficientSchedule::default(), radius)?;
        Self::new(potential, 1)
    }

    pub fn with_fault(mut self, fault: Option<Fault>) -> Self {
        self.fault = fault;
        self
    }

    /// Same potential, different truncation.
    pub fn truncated(&self, n: usize) -> Result<Self> {
        Ok(Self {
            potential: self.potential.clone(),
            n: self.potential.terms(n)?,
            fault: self.fault,
        })
    }

    pub fn potential(&self) -> &SingularPotential {
        &self.potential
    }

    pub fn terms(&self) -> usize {
        self.n
    }

    pub fn radius(&self) -> f64 {
        self.potential.radius()
    }

    pub fn points(&self) -> &[Point2] {
        &self.potential.points()[..self.n]
    }

    fn f(&self, x: Point2) -> Result<f64> {
        Ok(self.potential.eval_f(x, self.n)?.value)
    }

    pub fn eval_u(&self, x: Point2) -> Result<[f64; 2]> {
        let l = self.f(x)?.ln();
        Ok([l.sin(), l.cos()])
    }

    pub fn eval_grad_u(&self, x: Point2) -> Result<[[f64; 2]; 2]> {
        let f = self.f(x)?;
        let g = self.potential.eval_grad_f(x, self.n)?;
        let (s, c) = f.ln().sin_cos();
        Ok([
            [c * g[0] / f, c * g[1] / f],
            [-s * g[0] / f, -s * g[1] / f],
        ])
    }

    /// |grad u|^2 = |grad f|^2 / f^2.
    pub fn grad_norm_sq(&self, x: Point2) -> Result<f64> {
        let f = self.f(x)?;
        let g = self.potential.eval_grad_f(x, self.n)?;
        Ok((g[0] * g[0] + g[1] * g[1]) / (f * f))
    }

    /// General form F(u, grad u) with the 1 + |u|^2 denominator kept.
    pub fn rhs_from(&self, u: [f64; 2], grad_sq: f64) -> RhsValue {
        let denom = 1.0 + u[0] * u[0] + u[1] * u[1];
        let sign = match self.fault {
            Some(Fault::FlipRhsSign) => -1.0,
            None => 1.0,
        };
        RhsValue {
            f1: sign * -2.0 * grad_sq * (u[0] + u[1]) / denom,
            f2: sign * 2.0 * grad_sq * (u[0] - u[1]) / denom,
        }
    }

    #[allow(non_snake_case)]
    pub fn eval_F(&self, x: Point2) -> Result<RhsValue> {
        let u = self.eval_u(x)?;
        let g = self.grad_norm_sq(x)?;
        Ok(self.rhs_from(u, g))
    }

    fn check_smooth(&self, x: Point2, delta: f64) -> Result<()> {
        self.potential.check_domain(x)?;
        let (i, d) = self.potential.nearest(x, self.n);
        if d < delta {
            return Err(Error::TooClose {
                index: i + 1,
                distance: d,
                delta,
            });
        }
        Ok(())
    }

    /// Analytic Laplacian of u from the chain rule.
    pub fn laplacian_u(&self, x: Point2) -> Result<[f64; 2]> {
        let f = self.f(x)?;
        let g = self.potential.eval_grad_f(x, self.n)?;
        let h = self.potential.eval_second_f(x, self.n)?;
        let grad_l_sq = (g[0] * g[0] + g[1] * g[1]) / (f * f);
        let lap_l = (h[0] + h[1]) / f - grad_l_sq;
        let (s, c) = f.ln().sin_cos();
        Ok([c * lap_l - s * grad_l_sq, -s * lap_l - c * grad_l_sq])
    }

    /// Delta u - F at x; zero up to roundoff.
    pub fn classical_residual(&self, x: Point2) -> Result<[f64; 2]> {
        self.check_smooth(x, SMOOTH_EXCLUSION)?;
        let lap = self.laplacian_u(x)?;
        let rhs = self.eval_F(x)?;
        Ok([lap[0] - rhs.f1, lap[1] - rhs.f2])
    }

    /// Five-point finite-difference Laplacian of u.
    pub fn fd_laplacian(&self, x: Point2, h: f64) -> Result<[f64; 2]> {
        if !(h > 0.0) {
            return Err(Error::InvalidArgument("step must be positive".into()));
        }
        for s in stencil(x, h) {
            self.check_smooth(s, SMOOTH_EXCLUSION)?;
        }
        five_point_laplacian(|y| self.eval_u(y), x, h)
    }

    /// u and rho * grad u at p_i + rho * dir, where t = log(1/rho) and `i` is
    /// 0-based. Stays finite when rho underflows.
    pub fn near(&self, i: usize, t: f64, dir: [f64; 2]) -> NearSolution {
        let nf = self.potential.eval_near(i, t, dir, self.n);
        let (s, c) = nf.f.ln().sin_cos();
        let g = nf.scaled_grad;
        NearSolution {
            u: [s, c],
            scaled_grad: [
                [c * g[0] / nf.f, c * g[1] / nf.f],
                [-s * g[0] / nf.f, -s * g[1] / nf.f],
            ],
            rho: nf.rho,
        }
    }

    /// u at distance exp(-exp(t)) from p_i via the leading/rest split.
    pub fn radial_probe(&self, frame: ProbeFrame) -> Result<ProbeValue> {
        let ProbeFrame { index, t, theta } = frame;
        if !(t >= 1.0) {
            return Err(Error::ProbeParameter(t));
        }
        if index == 0 || index > self.n {
            return Err(Error::OutOfRange {
                index,
                len: self.n,
            });
        }
        let i = index - 1;
        let pts = self.points();
        let coeffs = &self.potential.coefficients()[..self.n];
        let log_dist = -t.exp();
        let pi = pts[i];
        let mut rest_terms = Vec::with_capacity(self.n);
        let mut inv_terms = Vec::with_capacity(self.n);
        for (j, (a, p)) in coeffs.iter().zip(pts).enumerate() {
            if j == i {
                continue;
            }
            let d = pi.dist(*p);
            if d.ln() < 10f64.ln() + log_dist {
                return Err(Error::ProbeTooCoarse {
                    index,
                    other: j + 1,
                });
            }
            rest_terms.push(-a * d.ln());
            inv_terms.push(a / d);
        }
        let a_i = coeffs[i];
        let rest = compensated_sum(rest_terms);
        let inv = compensated_sum(inv_terms);
        let rest_error_bound = if inv > 0.0 {
            (log_dist + (10.0 / 9.0 * inv).ln()).exp()
        } else {
            0.0
        };
        let leading = a_i * t.exp();
        let log_f = if t.exp() > PROBE_LOG_SWITCH || rest == 0.0 {
            t + (a_i + (-t).exp() * rest).ln()
        } else {
            // rho is representable: evaluate f directly at the probed point
            let nf = self
                .potential
                .eval_near(i, t.exp(), [theta.cos(), theta.sin()], self.n);
            nf.f.ln()
        };
        let (s, c) = log_f.sin_cos();
        Ok(ProbeValue {
            u: [s, c],
            leading,
            rest,
            rest_error_bound,
            log_f,
        })
    }

    /// Extrema of the probe at theta = 0 over `samples` equispaced t in [t_lo, t_hi].
    pub fn oscillation_report(
        &self,
        index: usize,
        t_lo: f64,
        t_hi: f64,
        samples: usize,
    ) -> Result<OscillationReport> {
        if !(t_hi - t_lo >= TAU) {
            return Err(Error::InvalidArgument(format!(
                "probe window [{t_lo}, {t_hi}] shorter than 2*pi"
            )));
        }
        if samples < 2 {
            return Err(Error::InvalidArgument("need at least two samples".into()));
        }
        let mut values = Vec::with_capacity(samples);
        for k in 0..samples {
            let t = t_lo + (t_hi - t_lo) * k as f64 / (samples - 1) as f64;
            values.push(self.radial_probe(ProbeFrame { index, t, theta: 0.0 })?.u);
        }
        Ok(OscillationReport::fold(values.into_iter()))
    }

    /// Extrema of u over a polar sample of the closed ball B(center, radius).
    pub fn local_oscillation(
        &self,
        center: Point2,
        radius: f64,
        rings: usize,
        per_ring: usize,
    ) -> Result<OscillationReport> {
        let mut values = vec![self.eval_u(center)?];
        for k in 1..=rings {
            let rr = radius * k as f64 / rings as f64;
            for m in 0..per_ring {
                let th = 2.0 * PI * m as f64 / per_ring as f64;
                values.push(self.eval_u(center + Point2::polar(rr, th))?);
            }
        }
        Ok(OscillationReport::fold(values.into_iter()))
    }
}

fn stencil(x: Point2, h: f64) -> [Point2; 5] {
    [
        x,
        x + Point2::new(h, 0.0),
        x - Point2::new(h, 0.0),
        x + Point2::new(0.0, h),
        x - Point2::new(0.0, h),
    ]
}

/// grad(u^hi - u^lo) from f_lo, grad f_lo and the added terms delta = f_hi - f_lo,
/// grad delta, without forming the two gradients separately. Both gradients
/// may carry a common scale factor, which the result then carries too.
pub fn grad_u_difference(f_lo: f64, g_lo: [f64; 2], delta: f64, g_delta: [f64; 2]) -> [[f64; 2]; 2] {
    let f_hi = f_lo + delta;
    let l_lo = f_lo.ln();
    let dl = (delta / f_lo).ln_1p();
    let mid = l_lo + 0.5 * dl;
    let half = (0.5 * dl).sin();
    let (s_hi, c_hi) = (l_lo + dl).sin_cos();
    // d(sin L) = 2 cos(mid) sin(dL/2), d(cos L) = -2 sin(mid) sin(dL/2)
    let d_sin = 2.0 * mid.cos() * half;
    let d_cos = -2.0 * mid.sin() * half;
    let mut out = [[0.0; 2]; 2];
    for k in 0..2 {
        // grad f_hi / f_hi - grad f_lo / f_lo
        let q = (g_delta[k] * f_lo - g_lo[k] * delta) / (f_hi * f_lo);
        let base = g_lo[k] / f_lo;
        out[0][k] = c_hi * q + d_cos * base;
        out[1][k] = -s_hi * q - d_sin * base;
    }
    out
}

/// Five-point Laplacian of a vector-valued map.
pub fn five_point_laplacian<F>(g: F, x: Point2, h: f64) -> Result<[f64; 2]>
where
    F: Fn(Point2) -> Result<[f64; 2]>,
{
    let s = stencil(x, h);
    let v: Vec<[f64; 2]> = s.iter().map(|p| g(*p)).collect::<Result<_>>()?;
    let lap = |c: usize| (v[1][c] + v[2][c] + v[3][c] + v[4][c] - 4.0 * v[0][c]) / (h * h);
    Ok([lap(0), lap(1)])
}
