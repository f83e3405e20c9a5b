//! Adaptive tensor Gauss–Kronrod cubature on rectangles.
//!
//! Each cell is integrated with the 15x15 Kronrod product rule; the embedded
//! Gauss rule along each axis gives a per-direction error indicator, and
//! cells are bisected along the worse direction. Marked cells are refined in
//! batches whose children are evaluated through [`crate::exec::map`], and the
//! cell list keeps a fixed order so sums do not depend on scheduling.

use std::sync::OnceLock;

use crate::numeric::{CompensatedSum, KronrodRule};

fn rule() -> &'static KronrodRule {
    static RULE: OnceLock<KronrodRule> = OnceLock::new();
    RULE.get_or_init(KronrodRule::new)
}

/// Axis-aligned rectangle [a0, b0] x [a1, b1].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rect {
    pub lo: [f64; 2],
    pub hi: [f64; 2],
}

impl Rect {
    pub fn new(lo: [f64; 2], hi: [f64; 2]) -> Self {
        Self { lo, hi }
    }

    /// Splits into an `n0` by `n1` grid, row-major in the first axis.
    pub fn grid(&self, n0: usize, n1: usize) -> Vec<Rect> {
        let mut out = Vec::with_capacity(n0 * n1);
        for i in 0..n0 {
            for j in 0..n1 {
                let a0 = self.lo[0] + (self.hi[0] - self.lo[0]) * i as f64 / n0 as f64;
                let b0 = self.lo[0] + (self.hi[0] - self.lo[0]) * (i + 1) as f64 / n0 as f64;
                let a1 = self.lo[1] + (self.hi[1] - self.lo[1]) * j as f64 / n1 as f64;
                let b1 = self.lo[1] + (self.hi[1] - self.lo[1]) * (j + 1) as f64 / n1 as f64;
                out.push(Rect::new([a0, a1], [b0, b1]));
            }
        }
        out
    }

    fn split(&self, axis: usize) -> [Rect; 2] {
        let mid = 0.5 * (self.lo[axis] + self.hi[axis]);
        let mut left = *self;
        let mut right = *self;
        left.hi[axis] = mid;
        right.lo[axis] = mid;
        [left, right]
    }
}

#[derive(Debug, Clone, Copy)]
struct Cell {
    rect: Rect,
    value: f64,
    abs: f64,
    err: f64,
    axis: usize,
}

/// Location (in rectangle coordinates) of a non-finite integrand value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BadValue(pub [f64; 2]);

fn evaluate<F>(f: &F, rect: Rect) -> Result<Cell, BadValue>
where
    F: Fn(f64, f64) -> f64,
{
    let r = rule();
    let h0 = 0.5 * (rect.hi[0] - rect.lo[0]);
    let h1 = 0.5 * (rect.hi[1] - rect.lo[1]);
    let m0 = 0.5 * (rect.hi[0] + rect.lo[0]);
    let m1 = 0.5 * (rect.hi[1] + rect.lo[1]);
    let mut kk = 0.0;
    let mut gk = 0.0;
    let mut kg = 0.0;
    let mut abs = 0.0;
    for i in 0..15 {
        let s = m0 + h0 * r.nodes[i];
        let (mut row_k, mut row_g, mut row_abs) = (0.0, 0.0, 0.0);
        for j in 0..15 {
            let t = m1 + h1 * r.nodes[j];
            let v = f(s, t);
            if !v.is_finite() {
                return Err(BadValue([s, t]));
            }
            row_k += r.kronrod[j] * v;
            row_g += r.gauss[j] * v;
            row_abs += r.kronrod[j] * v.abs();
        }
        kk += r.kronrod[i] * row_k;
        gk += r.gauss[i] * row_k;
        kg += r.kronrod[i] * row_g;
        abs += r.kronrod[i] * row_abs;
    }
    let area = h0 * h1;
    let e0 = ((kk - gk) * area).abs();
    let e1 = ((kk - kg) * area).abs();
    Ok(Cell {
        rect,
        value: kk * area,
        abs: abs * area,
        err: e0 + e1,
        axis: if e0 >= e1 { 0 } else { 1 },
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CubatureResult {
    pub value: f64,
    /// Integral of |f|, used as the scale for relative tolerances.
    pub abs: f64,
    pub error: f64,
    pub cells: usize,
    /// False when the cell budget ran out before the tolerance was met.
    pub converged: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CubatureOptions {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_cells: usize,
    pub parallel: bool,
}

/// Integrates `f` over the union of `initial` rectangles.
pub fn integrate<F>(f: &F, initial: &[Rect], opts: CubatureOptions) -> Result<CubatureResult, BadValue>
where
    F: Fn(f64, f64) -> f64 + Sync,
{
    let first = crate::exec::map(initial, opts.parallel, |r| evaluate(f, *r));
    let mut cells: Vec<Cell> = first.into_iter().collect::<Result<_, _>>()?;
    loop {
        let value = sum(cells.iter().map(|c| c.value));
        let abs = sum(cells.iter().map(|c| c.abs));
        let err = sum(cells.iter().map(|c| c.err));
        let tol = (opts.rel_tol * abs).max(opts.abs_tol);
        let converged = err <= tol;
        if converged || cells.len() >= opts.max_cells {
            return Ok(CubatureResult {
                value,
                abs,
                error: err,
                cells: cells.len(),
                converged,
            });
        }
        // mark the largest-error cells carrying half of the excess error
        let mut order: Vec<usize> = (0..cells.len()).collect();
        order.sort_by(|&a, &b| cells[b].err.total_cmp(&cells[a].err).then(a.cmp(&b)));
        let budget = (opts.max_cells - cells.len()).max(1);
        let mut marked = Vec::new();
        let mut acc = 0.0;
        for &i in &order {
            if acc >= 0.5 * (err - tol) || marked.len() >= budget {
                break;
            }
            acc += cells[i].err;
            marked.push(i);
        }
        marked.sort_unstable();
        let children: Vec<Rect> = marked
            .iter()
            .flat_map(|&i| cells[i].rect.split(cells[i].axis))
            .collect();
        let evaluated = crate::exec::map(&children, opts.parallel, |r| evaluate(f, *r));
        let evaluated: Vec<Cell> = evaluated.into_iter().collect::<Result<_, _>>()?;
        let mut next = Vec::with_capacity(cells.len() + marked.len());
        let mut m = 0;
        for (i, c) in cells.iter().enumerate() {
            if m < marked.len() && marked[m] == i {
                next.push(evaluated[2 * m]);
                next.push(evaluated[2 * m + 1]);
                m += 1;
            } else {
                next.push(*c);
            }
        }
        cells = next;
    }
}

fn sum(it: impl Iterator<Item = f64>) -> f64 {
    it.collect::<CompensatedSum>().value()
}
