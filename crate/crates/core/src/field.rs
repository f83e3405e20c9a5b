//! The singular potential f(x) = sum_i a_i log(1/|x - p_i|) and its derivatives.
//!
//! Terms are summed in index order (largest coefficient first) with
//! compensated summation. Every evaluation is against a truncation `n`; the
//! attached tail bound accounts for the omitted terms on the part of the domain
//! that keeps a fixed exclusion distance from the omitted points.

use std::f64::consts::E;
use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{compensated_sum, CompensatedSum};
use crate::singular_set::{enumerate, normalize, CompactSetSpec, DenseEnumeration, Point2};

/// Upper limit for [`SingularPotential::truncation_index`].
pub const TRUNCATION_CAP: usize = 1_000_000;

/// Default exclusion radius around omitted points for tail bounds.
pub const DEFAULT_EXCLUSION: f64 = 1e-3;

/// Exponent of the Cauchy-Schwarz split weight.
pub const BETA: f64 = 0.25;

const CAUCHY_TOL: f64 = 1e-10;

/// Coefficients a_1 = 1 > a_2 > ... > 0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoefficientSchedule {
    /// a_i = ratio^(i-1).
    Geometric { ratio: f64 },
    /// An explicit finite list; terms past the end are zero.
    Explicit { values: Vec<f64> },
}

impl Default for CoefficientSchedule {
    fn default() -> Self {
        CoefficientSchedule::Geometric { ratio: 0.25 }
    }
}

impl CoefficientSchedule {
    pub fn geometric(ratio: f64) -> Result<Self> {
        let s = CoefficientSchedule::Geometric { ratio };
        s.check_shape()?;
        Ok(s)
    }

    fn check_shape(&self) -> Result<()> {
        match self {
            CoefficientSchedule::Geometric { ratio } => {
                if !(ratio.is_finite() && *ratio > 0.0 && *ratio < 1.0) {
                    return Err(Error::RatioOutOfRange(*ratio));
                }
            }
            CoefficientSchedule::Explicit { values } => {
                if values.is_empty() {
                    return Err(Error::InvalidSchedule("empty coefficient list".into()));
                }
                if values[0] != 1.0 {
                    return Err(Error::InvalidSchedule("a_1 must equal 1".into()));
                }
                if values.iter().any(|a| !(a.is_finite() && *a > 0.0)) {
                    return Err(Error::InvalidSchedule("coefficients must be positive".into()));
                }
                if values.windows(2).any(|w| w[1] >= w[0]) {
                    return Err(Error::InvalidSchedule(
                        "coefficients must be strictly decreasing".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    /// a_i for 1-based `i`.
    pub fn coefficient(&self, i: usize) -> f64 {
        debug_assert!(i >= 1);
        match self {
            CoefficientSchedule::Geometric { ratio } => ratio.powi(i as i32 - 1),
            CoefficientSchedule::Explicit { values } => values.get(i - 1).copied().unwrap_or(0.0),
        }
    }

    /// Number of nonzero terms, if finite.
    pub fn length(&self) -> Option<usize> {
        match self {
            CoefficientSchedule::Geometric { .. } => None,
            CoefficientSchedule::Explicit { values } => Some(values.len()),
        }
    }

    /// sum_{i > n} a_i^exponent.
    pub fn power_tail(&self, n: usize, exponent: f64) -> f64 {
        match self {
            CoefficientSchedule::Geometric { ratio } => {
                let r = ratio.powf(exponent);
                r.powi(n as i32) / (1.0 - r)
            }
            CoefficientSchedule::Explicit { values } => {
                compensated_sum(values.iter().skip(n).map(|a| a.powf(exponent)))
            }
        }
    }

    /// sum_{i >= 1} a_i^exponent.
    pub fn power_sum(&self, exponent: f64) -> f64 {
        self.power_tail(0, exponent)
    }

    /// sum_{i > n} a_i.
    pub fn tail_sum(&self, n: usize) -> f64 {
        self.power_tail(n, 1.0)
    }
}

/// The three series that control the gradient estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScheduleReport {
    /// sum a_i^(1/2)
    pub c_half: f64,
    /// sum a_i^(1/3)
    pub c_third: f64,
    /// sum a_i^beta with beta = 1/4
    pub c_beta: f64,
}

/// Checks the schedule and returns the closed-form series sums.
///
/// Explicit lists are read as a prefix of an infinite sequence: the second
/// half of the list must contribute at most 1e-10 to each series.
pub fn validate_schedule(schedule: &CoefficientSchedule) -> Result<ScheduleReport> {
    schedule.check_shape()?;
    if let CoefficientSchedule::Explicit { values } = schedule {
        let half = values.len() / 2;
        for e in [0.5, 1.0 / 3.0, BETA] {
            if schedule.power_tail(half, e) > CAUCHY_TOL {
                return Err(Error::NotSummable);
            }
        }
        let _ = values;
    }
    Ok(ScheduleReport {
        c_half: schedule.power_sum(0.5),
        c_third: schedule.power_sum(1.0 / 3.0),
        c_beta: schedule.power_sum(BETA),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldValue {
    pub value: f64,
    /// Bound on |f - f_N| at the evaluation point.
    pub tail_bound: f64,
    pub terms_used: usize,
}

/// Potential data near singular point p_i in the log-radial frame
/// x = p_i + rho * dir with t = log(1/rho).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NearField {
    pub f: f64,
    /// rho * grad f, finite even when rho underflows.
    pub scaled_grad: [f64; 2],
    pub rho: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SingularPotential {
    enumeration: DenseEnumeration,
    translation: Point2,
    schedule: CoefficientSchedule,
    radius: f64,
    coeffs: Vec<f64>,
    exclusion: f64,
}

impl SingularPotential {
    /// Builds a potential on B(0, radius) from an enumeration whose first point
    /// is the origin. `radius` may equal 1/e (the closed endpoint).
    pub fn new(
        enumeration: DenseEnumeration,
        schedule: CoefficientSchedule,
        radius: f64,
    ) -> Result<Self> {
        if !(radius.is_finite() && radius > 0.0 && radius <= 1.0 / E) {
            return Err(Error::RadiusTooLarge(radius));
        }
        schedule.check_shape()?;
        if enumeration.points.first() != Some(&Point2::ORIGIN) {
            return Err(Error::InvalidSet("enumeration must start at the origin".into()));
        }
        let reach = enumeration.source.reach();
        if reach >= radius {
            return Err(Error::SetOutsideDomain { reach, radius });
        }
        let mut len = enumeration.len();
        if let Some(l) = schedule.length() {
            len = len.min(l);
        }
        let coeffs = (1..=len).map(|i| schedule.coefficient(i)).collect();
        Ok(Self {
            enumeration,
            translation: Point2::ORIGIN,
            schedule,
            radius,
            coeffs,
            exclusion: DEFAULT_EXCLUSION,
        })
    }

    /// Normalizes `spec`, enumerates `n` points and builds the potential.
    pub fn from_spec(
        spec: &CompactSetSpec,
        n: usize,
        schedule: CoefficientSchedule,
        radius: f64,
    ) -> Result<Self> {
        let (normalized, translation) = normalize(spec)?;
        let enumeration = enumerate(&normalized, n)?;
        let mut p = Self::new(enumeration, schedule, radius)?;
        p.translation = translation;
        Ok(p)
    }

    pub fn with_exclusion(mut self, exclusion: f64) -> Self {
        self.exclusion = exclusion;
        self
    }

    pub fn enumeration(&self) -> &DenseEnumeration {
        &self.enumeration
    }

    pub fn points(&self) -> &[Point2] {
        &self.enumeration.points[..self.coeffs.len()]
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn schedule(&self) -> &CoefficientSchedule {
        &self.schedule
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn translation(&self) -> Point2 {
        self.translation
    }

    pub fn exclusion(&self) -> f64 {
        self.exclusion
    }

    /// Number of terms available.
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// True when the available terms are the whole series.
    pub fn is_complete(&self) -> bool {
        self.enumeration.exhaustive
            || self
                .schedule
                .length()
                .is_some_and(|l| l <= self.enumeration.len())
    }

    /// inf over B_r of log(1/|x|).
    pub fn lambda(&self) -> f64 {
        (1.0 / self.radius).ln()
    }

    /// Resolves a requested truncation against the available terms.
    pub fn terms(&self, n: usize) -> Result<usize> {
        if n == 0 {
            return Err(Error::ZeroCount);
        }
        if n <= self.len() {
            Ok(n)
        } else if self.is_complete() {
            Ok(self.len())
        } else {
            Err(Error::OutOfRange {
                index: n,
                len: self.len(),
            })
        }
    }

    pub fn check_domain(&self, x: Point2) -> Result<()> {
        if !x.is_finite() || x.norm() > self.radius * (1.0 + 1e-12) {
            return Err(Error::OutsideDomain {
                x: x.x,
                y: x.y,
                radius: self.radius,
            });
        }
        Ok(())
    }

    /// Index and distance of the nearest of the first `n` points.
    pub fn nearest(&self, x: Point2, n: usize) -> (usize, f64) {
        self.points()[..n]
            .iter()
            .enumerate()
            .map(|(i, p)| (i, p.dist(x)))
            .fold((0, f64::INFINITY), |a, b| if b.1 < a.1 { b } else { a })
    }

    fn check_point(&self, x: Point2, n: usize) -> Result<usize> {
        self.check_domain(x)?;
        let n = self.terms(n)?;
        for (i, p) in self.points()[..n].iter().enumerate() {
            if *p == x {
                return Err(Error::AtSingularPoint { index: i + 1 });
            }
        }
        Ok(n)
    }

    /// f_N(x) with the bound on the omitted terms.
    pub fn eval_f(&self, x: Point2, n: usize) -> Result<FieldValue> {
        let n = self.check_point(x, n)?;
        let value = self.f_unchecked(x, n);
        Ok(FieldValue {
            value,
            tail_bound: self.tail_bound(x, n),
            terms_used: n,
        })
    }

    pub(crate) fn f_unchecked(&self, x: Point2, n: usize) -> f64 {
        let mut acc = CompensatedSum::new();
        for (a, p) in self.coeffs[..n].iter().zip(self.points()) {
            acc.add(-a * (x - *p).norm().ln());
        }
        acc.value()
    }

    fn tail_bound(&self, x: Point2, n: usize) -> f64 {
        let known = &self.points()[n..];
        let d = known.iter().map(|p| p.dist(x)).fold(f64::INFINITY, f64::min);
        let (weight, dist) = if self.is_complete() {
            if known.is_empty() {
                return 0.0;
            }
            (compensated_sum(self.coeffs[n..].iter().copied()), d.max(self.exclusion))
        } else {
            let dist = if known.is_empty() { self.exclusion } else { d.max(self.exclusion) };
            (self.schedule.tail_sum(n), dist)
        };
        weight * (1.0 / dist).ln().max(0.0)
    }

    /// grad f_N(x) = -sum a_i (x - p_i)/|x - p_i|^2.
    pub fn eval_grad_f(&self, x: Point2, n: usize) -> Result<[f64; 2]> {
        let n = self.check_point(x, n)?;
        Ok(self.grad_unchecked(x, n))
    }

    pub(crate) fn grad_unchecked(&self, x: Point2, n: usize) -> [f64; 2] {
        let (mut gx, mut gy) = (CompensatedSum::new(), CompensatedSum::new());
        for (a, p) in self.coeffs[..n].iter().zip(self.points()) {
            let y = x - *p;
            let s = a / y.norm_sq();
            gx.add(-s * y.x);
            gy.add(-s * y.y);
        }
        [gx.value(), gy.value()]
    }

    /// Pure second derivatives (d11 f_N, d22 f_N); their sum is the Laplacian.
    pub fn eval_second_f(&self, x: Point2, n: usize) -> Result<[f64; 2]> {
        let n = self.check_point(x, n)?;
        let (mut dxx, mut dyy) = (CompensatedSum::new(), CompensatedSum::new());
        for (a, p) in self.coeffs[..n].iter().zip(self.points()) {
            let y = x - *p;
            let r2 = y.norm_sq();
            let s = a / (r2 * r2);
            dxx.add(s * (y.x * y.x - y.y * y.y));
            dyy.add(s * (y.y * y.y - y.x * y.x));
        }
        Ok([dxx.value(), dyy.value()])
    }

    /// Evaluates f_N at p_i + rho * dir given t = log(1/rho), without
    /// subtracting nearly equal coordinates. `i` is 0-based and must be < n.
    pub fn eval_near(&self, i: usize, t: f64, dir: [f64; 2], n: usize) -> NearField {
        let (f, scaled_grad) = self.partial_near(i, t, dir, 0..n);
        NearField {
            f,
            scaled_grad,
            rho: (-t).exp(),
        }
    }

    /// Terms `range` (0-based) of f and of grad f at x. `x` must differ from
    /// the points in the range.
    pub fn partial(&self, x: Point2, range: Range<usize>) -> (f64, [f64; 2]) {
        let mut f = CompensatedSum::new();
        let (mut gx, mut gy) = (CompensatedSum::new(), CompensatedSum::new());
        for (a, p) in self.coeffs[range.clone()].iter().zip(&self.points()[range]) {
            let y = x - *p;
            let r2 = y.norm_sq();
            f.add(-0.5 * a * r2.ln());
            gx.add(-a * y.x / r2);
            gy.add(-a * y.y / r2);
        }
        (f.value(), [gx.value(), gy.value()])
    }

    /// Terms `range` of f and of rho * grad f at p_i + rho * dir, t = log(1/rho).
    /// `i` may lie inside or outside the range.
    pub fn partial_near(&self, i: usize, t: f64, dir: [f64; 2], range: Range<usize>) -> (f64, [f64; 2]) {
        let rho = (-t).exp();
        let pi = self.points()[i];
        let mut f = CompensatedSum::new();
        let (mut gx, mut gy) = (CompensatedSum::new(), CompensatedSum::new());
        let start = range.start;
        for (k, (a, p)) in self.coeffs[range.clone()].iter().zip(&self.points()[range]).enumerate() {
            if start + k == i {
                f.add(a * t);
                gx.add(-a * dir[0]);
                gy.add(-a * dir[1]);
            } else {
                let y = (pi - *p) + Point2::new(rho * dir[0], rho * dir[1]);
                let r2 = y.norm_sq();
                f.add(-0.5 * a * r2.ln());
                let s = a * rho / r2;
                gx.add(-s * y.x);
                gy.add(-s * y.y);
            }
        }
        (f.value(), [gx.value(), gy.value()])
    }

    /// Smallest N whose tail bound is <= `tail_target` on the domain kept
    /// `exclusion` away from omitted points.
    pub fn truncation_index(&self, tail_target: f64, exclusion: f64) -> Result<usize> {
        if !(tail_target > 0.0 && exclusion > 0.0) {
            return Err(Error::InvalidArgument(
                "tail target and exclusion must be positive".into(),
            ));
        }
        if self.enumeration.exhaustive {
            return Ok(self.len());
        }
        let factor = (1.0 / exclusion).ln().max(0.0);
        let cap = self.schedule.length().unwrap_or(TRUNCATION_CAP);
        for n in 1..=cap {
            if self.schedule.tail_sum(n) * factor <= tail_target {
                return Ok(n);
            }
        }
        Err(Error::TruncationCap(cap))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single() -> SingularPotential {
        let spec = CompactSetSpec::Finite {
            points: vec![Point2::ORIGIN],
        };
        SingularPotential::from_spec(&spec, 1, CoefficientSchedule::default(), 1.0 / E).unwrap()
    }

    fn two_point(q: f64) -> SingularPotential {
        let spec = CompactSetSpec::Finite {
            points: vec![Point2::ORIGIN, Point2::new(0.1, 0.0)],
        };
        SingularPotential::from_spec(&spec, 2, CoefficientSchedule::geometric(q).unwrap(), 0.3)
            .unwrap()
    }

    #[test]
    fn single_term_values() {
        let p = single();
        let v = p.eval_f(Point2::new((-2f64).exp(), 0.0), 1).unwrap();
        assert!((v.value - 2.0).abs() < 1e-14);
        assert_eq!(v.tail_bound, 0.0);
        let v = p.eval_f(Point2::new(0.9 / E, 0.0), 1).unwrap();
        assert!((v.value - (1.0 - 0.9f64.ln())).abs() < 1e-14);
    }

    #[test]
    fn two_term_equal_distances() {
        let q = 0.25;
        let p = two_point(q);
        let v = p.eval_f(Point2::new(0.05, 0.0), 2).unwrap();
        assert!((v.value - (1.0 + q) * 20f64.ln()).abs() < 1e-13);
    }

    #[test]
    fn single_term_gradient() {
        let p = single();
        let x = Point2::new(0.03, -0.04);
        let g = p.eval_grad_f(x, 1).unwrap();
        assert!((g[0] + x.x / x.norm_sq()).abs() < 1e-12);
        assert!((g[1] + x.y / x.norm_sq()).abs() < 1e-12);
        assert!((g[0].hypot(g[1]) - 1.0 / x.norm()).abs() < 1e-10);
    }

    #[test]
    fn symmetric_gradient_cancels_along_axis() {
        let spec = CompactSetSpec::Finite {
            points: vec![Point2::ORIGIN, Point2::new(0.1, 0.0)],
        };
        let p = SingularPotential::from_spec(
            &spec,
            2,
            CoefficientSchedule::Explicit {
                values: vec![1.0, 1.0 - 1e-15],
            },
            0.3,
        )
        .unwrap();
        let g = p.eval_grad_f(Point2::new(0.05, 0.02), 2).unwrap();
        assert!(g[0].abs() < 1e-12, "{g:?}");
    }

    #[test]
    fn errors_at_singular_point_and_outside() {
        let p = two_point(0.5);
        assert_eq!(
            p.eval_f(Point2::new(0.1, 0.0), 2).unwrap_err(),
            Error::AtSingularPoint { index: 2 }
        );
        assert!(matches!(
            p.eval_f(Point2::new(0.4, 0.0), 2),
            Err(Error::OutsideDomain { .. })
        ));
    }

    #[test]
    fn radius_and_reach_checks() {
        let spec = CompactSetSpec::Finite {
            points: vec![Point2::ORIGIN, Point2::new(0.1, 0.0)],
        };
        assert!(matches!(
            SingularPotential::from_spec(&spec, 2, CoefficientSchedule::default(), 0.5),
            Err(Error::RadiusTooLarge(_))
        ));
        assert!(matches!(
            SingularPotential::from_spec(&spec, 2, CoefficientSchedule::default(), 0.05),
            Err(Error::SetOutsideDomain { .. })
        ));
    }

    #[test]
    fn truncation_index_examples() {
        let spec = CompactSetSpec::Polyline {
            vertices: vec![Point2::ORIGIN, Point2::new(0.02, 0.0)],
        };
        let p = SingularPotential::from_spec(
            &spec,
            4,
            CoefficientSchedule::geometric(0.5).unwrap(),
            0.05,
        )
        .unwrap();
        // oracle: smallest N with 0.5^N / 0.5 * ln(1e3) <= 1e-6
        let oracle = (1..100)
            .find(|&n| 0.5f64.powi(n) / 0.5 * 1e3f64.ln() <= 1e-6)
            .unwrap() as usize;
        assert_eq!(oracle, 24);
        assert_eq!(p.truncation_index(1e-6, 1e-3).unwrap(), oracle);
        assert_eq!(p.truncation_index(1e6, 1e-3).unwrap(), 1);

        let finite = CompactSetSpec::Finite {
            points: vec![Point2::ORIGIN, Point2::new(0.01, 0.0), Point2::new(0.0, 0.01)],
        };
        let p = SingularPotential::from_spec(&finite, 3, CoefficientSchedule::default(), 0.05)
            .unwrap();
        assert_eq!(p.truncation_index(1e-6, 1e-3).unwrap(), 3);
        assert_eq!(p.truncation_index(1e6, 1e-3).unwrap(), 3);
    }

    #[test]
    fn schedule_closed_forms() {
        let r = validate_schedule(&CoefficientSchedule::geometric(0.25).unwrap()).unwrap();
        assert!((r.c_half - 2.0).abs() < 1e-14);
        let r = validate_schedule(&CoefficientSchedule::geometric(0.125).unwrap()).unwrap();
        assert!((r.c_third - 2.0).abs() < 1e-14);
        let r = validate_schedule(&CoefficientSchedule::geometric(0.9).unwrap()).unwrap();
        let direct = compensated_sum((0..4000).map(|i| 0.9f64.powf(0.25 * i as f64)));
        assert!((r.c_beta - direct).abs() <= 1e-12 * direct);
    }

    #[test]
    fn schedule_errors() {
        assert_eq!(
            CoefficientSchedule::geometric(1.0).unwrap_err(),
            Error::RatioOutOfRange(1.0)
        );
        let slow = CoefficientSchedule::Explicit {
            values: (0..20).map(|i| 0.5f64.powi(i)).collect(),
        };
        assert_eq!(validate_schedule(&slow).unwrap_err(), Error::NotSummable);
        let fast = CoefficientSchedule::Explicit {
            values: (0..40).map(|i| 1e-6f64.powi(i)).collect(),
        };
        assert!(validate_schedule(&fast).is_ok());
        let bad = CoefficientSchedule::Explicit {
            values: vec![1.0, 2.0],
        };
        assert!(matches!(validate_schedule(&bad), Err(Error::InvalidSchedule(_))));
    }

    #[test]
    fn near_evaluation_matches_direct() {
        let p = two_point(0.25);
        let dir = [0.6, 0.8];
        let t: f64 = 5.0;
        let rho = (-t).exp();
        let x = Point2::new(0.1 + rho * dir[0], rho * dir[1]);
        let near = p.eval_near(1, t, dir, 2);
        let direct = p.eval_f(x, 2).unwrap().value;
        assert!((near.f - direct).abs() < 1e-12 * direct);
        let g = p.eval_grad_f(x, 2).unwrap();
        assert!((near.scaled_grad[0] - rho * g[0]).abs() < 1e-10);
        assert!((near.scaled_grad[1] - rho * g[1]).abs() < 1e-10);
    }
}
