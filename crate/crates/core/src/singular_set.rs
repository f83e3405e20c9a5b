//! Prescribed compact singular sets and their deterministic dense enumerations.
//!
//! A [`CompactSetSpec`] describes the set declaratively. [`enumerate`] walks a
//! fixed breadth-first refinement of the set (polyline midpoints, Cantor-dust
//! corner points, hexagonal lattices in disks) so the first `n` points are
//! reproducible and every prefix of a longer enumeration is itself an
//! enumeration.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Points closer than this are treated as the same singularity.
pub const MERGE_DISTANCE: f64 = 1e-14;

/// Membership tolerance for parametric variants.
pub const MEMBERSHIP_TOL: f64 = 1e-12;

// Guards against generators that only ever revisit existing points.
const MAX_DUPLICATE_RUN: usize = 1 << 20;

const MAX_CANTOR_DEPTH: u32 = 20;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const ORIGIN: Point2 = Point2 { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn norm_sq(self) -> f64 {
        self.x * self.x + self.y * self.y
    }

    pub fn dot(self, other: Point2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    pub fn dist(self, other: Point2) -> f64 {
        (self - other).norm()
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn polar(radius: f64, angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        Self::new(radius * c, radius * s)
    }
}

impl From<[f64; 2]> for Point2 {
    fn from(v: [f64; 2]) -> Self {
        Point2::new(v[0], v[1])
    }
}

impl From<Point2> for [f64; 2] {
    fn from(p: Point2) -> Self {
        [p.x, p.y]
    }
}

impl Add for Point2 {
    type Output = Point2;
    fn add(self, o: Point2) -> Point2 {
        Point2::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point2 {
    type Output = Point2;
    fn sub(self, o: Point2) -> Point2 {
        Point2::new(self.x - o.x, self.y - o.y)
    }
}

impl Neg for Point2 {
    type Output = Point2;
    fn neg(self) -> Point2 {
        Point2::new(-self.x, -self.y)
    }
}

impl Mul<Point2> for f64 {
    type Output = Point2;
    fn mul(self, p: Point2) -> Point2 {
        Point2::new(self * p.x, self * p.y)
    }
}

/// Declarative description of a compact set in the plane.
///
/// `CantorDust` is the depth-`depth` prefractal of the middle-thirds Cantor
/// dust: the union of `4^depth` closed squares of side `width / 3^depth`
/// inside the square of side `width` centred at `center`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum CompactSetSpec {
    Finite { points: Vec<Point2> },
    Polyline { vertices: Vec<Point2> },
    CantorDust { center: Point2, width: f64, depth: u32 },
    Disk { center: Point2, radius: f64 },
    Union { members: Vec<CompactSetSpec> },
}

impl CompactSetSpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            CompactSetSpec::Finite { points } => {
                if points.is_empty() {
                    return Err(Error::EmptySet);
                }
                check_finite(points)
            }
            CompactSetSpec::Polyline { vertices } => {
                if vertices.is_empty() {
                    return Err(Error::EmptySet);
                }
                check_finite(vertices)
            }
            CompactSetSpec::CantorDust {
                center,
                width,
                depth,
            } => {
                check_finite(&[*center])?;
                if !(width.is_finite() && *width > 0.0) {
                    return Err(Error::InvalidSet(format!("cantor width must be > 0 (got {width})")));
                }
                if *depth > MAX_CANTOR_DEPTH {
                    return Err(Error::InvalidSet(format!(
                        "cantor depth {depth} exceeds {MAX_CANTOR_DEPTH}"
                    )));
                }
                Ok(())
            }
            CompactSetSpec::Disk { center, radius } => {
                check_finite(&[*center])?;
                if !(radius.is_finite() && *radius > 0.0) {
                    return Err(Error::InvalidSet(format!("disk radius must be > 0 (got {radius})")));
                }
                Ok(())
            }
            CompactSetSpec::Union { members } => {
                if members.is_empty() {
                    return Err(Error::EmptySet);
                }
                members.iter().try_for_each(|m| m.validate())
            }
        }
    }

    /// The same set shifted by `by`.
    pub fn translated(&self, by: Point2) -> CompactSetSpec {
        let shift = |pts: &[Point2]| pts.iter().map(|p| *p + by).collect::<Vec<_>>();
        match self {
            CompactSetSpec::Finite { points } => CompactSetSpec::Finite {
                points: shift(points),
            },
            CompactSetSpec::Polyline { vertices } => CompactSetSpec::Polyline {
                vertices: shift(vertices),
            },
            CompactSetSpec::CantorDust {
                center,
                width,
                depth,
            } => CompactSetSpec::CantorDust {
                center: *center + by,
                width: *width,
                depth: *depth,
            },
            CompactSetSpec::Disk { center, radius } => CompactSetSpec::Disk {
                center: *center + by,
                radius: *radius,
            },
            CompactSetSpec::Union { members } => CompactSetSpec::Union {
                members: members.iter().map(|m| m.translated(by)).collect(),
            },
        }
    }

    /// The first point of the enumeration order.
    pub fn first_point(&self) -> Result<Point2> {
        self.validate()?;
        self.stream().next().ok_or(Error::EmptySet)
    }

    /// sup over the set of |x|.
    pub fn reach(&self) -> f64 {
        match self {
            CompactSetSpec::Finite { points } => points.iter().map(|p| p.norm()).fold(0.0, f64::max),
            CompactSetSpec::Polyline { vertices } => {
                vertices.iter().map(|p| p.norm()).fold(0.0, f64::max)
            }
            CompactSetSpec::CantorDust { center, width, .. } => {
                // the four outer corners belong to every prefractal level
                let h = 0.5 * width;
                [(-h, -h), (h, -h), (-h, h), (h, h)]
                    .iter()
                    .map(|(dx, dy)| (*center + Point2::new(*dx, *dy)).norm())
                    .fold(0.0, f64::max)
            }
            CompactSetSpec::Disk { center, radius } => center.norm() + radius,
            CompactSetSpec::Union { members } => members.iter().map(|m| m.reach()).fold(0.0, f64::max),
        }
    }

    /// Distance-based membership test.
    pub fn contains(&self, x: Point2, tol: f64) -> bool {
        match self {
            CompactSetSpec::Finite { points } => points.iter().any(|p| p.dist(x) <= tol),
            CompactSetSpec::Polyline { vertices } => {
                if vertices.len() == 1 {
                    return vertices[0].dist(x) <= tol;
                }
                vertices
                    .windows(2)
                    .any(|w| segment_distance(w[0], w[1], x) <= tol)
            }
            CompactSetSpec::CantorDust {
                center,
                width,
                depth,
            } => {
                let origin = *center - Point2::new(0.5 * width, 0.5 * width);
                let side = width / 3f64.powi(*depth as i32);
                cantor_squares(*depth)
                    .iter()
                    .any(|&(i, j)| {
                        let lo = origin + Point2::new(i as f64 * side, j as f64 * side);
                        x.x >= lo.x - tol
                            && x.x <= lo.x + side + tol
                            && x.y >= lo.y - tol
                            && x.y <= lo.y + side + tol
                    })
            }
            CompactSetSpec::Disk { center, radius } => center.dist(x) <= radius + tol,
            CompactSetSpec::Union { members } => members.iter().any(|m| m.contains(x, tol)),
        }
    }

    /// A finite sample of the set used for brute-force density radii.
    ///
    /// Polyline: 4097 equispaced points per segment. Cantor dust: a regular
    /// grid of `(m+1)^2` points in every prefractal square with
    /// `m = max(8, 128 / 2^depth)` rounded to a power of two. Disk: centre plus
    /// 64 radii x 256 angles including the boundary circle.
    pub fn sample(&self) -> Vec<Point2> {
        match self {
            CompactSetSpec::Finite { points } => points.clone(),
            CompactSetSpec::Polyline { vertices } => {
                if vertices.len() == 1 {
                    return vertices.clone();
                }
                let per_segment = 4096;
                let mut out = Vec::with_capacity(vertices.len() * per_segment);
                for w in vertices.windows(2) {
                    for k in 0..=per_segment {
                        let s = k as f64 / per_segment as f64;
                        out.push(w[0] + s * (w[1] - w[0]));
                    }
                }
                out
            }
            CompactSetSpec::CantorDust {
                center,
                width,
                depth,
            } => {
                let origin = *center - Point2::new(0.5 * width, 0.5 * width);
                let scale = 3f64.powi(*depth as i32);
                let side = width / scale;
                let m = (128usize >> (*depth).min(7)).max(8);
                let mut out = Vec::new();
                for (i, j) in cantor_squares(*depth) {
                    for a in 0..=m {
                        for b in 0..=m {
                            out.push(
                                origin
                                    + Point2::new(
                                        (i as f64 + a as f64 / m as f64) * side,
                                        (j as f64 + b as f64 / m as f64) * side,
                                    ),
                            );
                        }
                    }
                }
                out
            }
            CompactSetSpec::Disk { center, radius } => {
                let mut out = vec![*center];
                let (nr, na) = (64, 256);
                for ir in 1..=nr {
                    let rho = radius * ir as f64 / nr as f64;
                    for ia in 0..na {
                        out.push(*center + Point2::polar(rho, 2.0 * PI * ia as f64 / na as f64));
                    }
                }
                out
            }
            CompactSetSpec::Union { members } => members.iter().flat_map(|m| m.sample()).collect(),
        }
    }

    fn stream(&self) -> Box<dyn Iterator<Item = Point2> + '_> {
        match self {
            CompactSetSpec::Finite { points } => Box::new(points.iter().copied()),
            CompactSetSpec::Polyline { vertices } => Box::new(PolylineStream::new(vertices)),
            CompactSetSpec::CantorDust {
                center,
                width,
                depth,
            } => Box::new(CantorStream::new(*center, *width, *depth)),
            CompactSetSpec::Disk { center, radius } => Box::new(DiskStream::new(*center, *radius)),
            CompactSetSpec::Union { members } => Box::new(RoundRobin {
                streams: members.iter().map(|m| m.stream()).collect(),
                next: 0,
                live: vec![true; members.len()],
            }),
        }
    }

    /// True when the enumeration stream of this set is finite.
    pub fn is_finite_set(&self) -> bool {
        match self {
            CompactSetSpec::Finite { .. } => true,
            CompactSetSpec::Polyline { vertices } => {
                vertices.windows(2).all(|w| w[0].dist(w[1]) <= MERGE_DISTANCE)
            }
            CompactSetSpec::Union { members } => members.iter().all(|m| m.is_finite_set()),
            _ => false,
        }
    }
}

fn check_finite(points: &[Point2]) -> Result<()> {
    if points.iter().all(|p| p.is_finite()) {
        Ok(())
    } else {
        Err(Error::InvalidSet("non-finite coordinate".into()))
    }
}

fn segment_distance(a: Point2, b: Point2, x: Point2) -> f64 {
    let d = b - a;
    let len_sq = d.norm_sq();
    if len_sq == 0.0 {
        return a.dist(x);
    }
    let s = ((x - a).dot(d) / len_sq).clamp(0.0, 1.0);
    (a + s * d).dist(x)
}

/// Lower-left lattice indices (in units of the depth-level side) of the
/// prefractal squares, in generation order.
fn cantor_squares(depth: u32) -> Vec<(u64, u64)> {
    let mut squares = vec![(0u64, 0u64)];
    for _ in 0..depth {
        let mut next = Vec::with_capacity(squares.len() * 4);
        for &(i, j) in &squares {
            for (di, dj) in [(0, 0), (2, 0), (0, 2), (2, 2)] {
                next.push((3 * i + di, 3 * j + dj));
            }
        }
        squares = next;
    }
    squares
}

struct PolylineStream<'a> {
    vertices: &'a [Point2],
    level: u32,
    segment: usize,
    numerator: u64,
    vertex: usize,
}

impl<'a> PolylineStream<'a> {
    fn new(vertices: &'a [Point2]) -> Self {
        Self {
            vertices,
            level: 0,
            segment: 0,
            numerator: 1,
            vertex: 0,
        }
    }
}

impl Iterator for PolylineStream<'_> {
    type Item = Point2;

    fn next(&mut self) -> Option<Point2> {
        if self.vertex < self.vertices.len() {
            self.vertex += 1;
            return Some(self.vertices[self.vertex - 1]);
        }
        if self.vertices.len() < 2 || self.level > 60 {
            return None;
        }
        if self.level == 0 {
            self.level = 1;
        }
        let denom = 1u64 << self.level;
        if self.numerator >= denom {
            self.numerator = 1;
            self.segment += 1;
            if self.segment + 1 >= self.vertices.len() {
                self.segment = 0;
                self.level += 1;
            }
            return self.next();
        }
        let (a, b) = (self.vertices[self.segment], self.vertices[self.segment + 1]);
        let s = self.numerator as f64 / denom as f64;
        self.numerator += 2;
        Some(a + s * (b - a))
    }
}

struct CantorStream {
    origin: Point2,
    width: f64,
    depth: u32,
    buffer: std::vec::IntoIter<Point2>,
    generation: u32,
}

impl CantorStream {
    fn new(center: Point2, width: f64, depth: u32) -> Self {
        Self {
            origin: center - Point2::new(0.5 * width, 0.5 * width),
            width,
            depth,
            buffer: Vec::new().into_iter(),
            generation: 0,
        }
    }

    fn fill(&mut self) -> bool {
        let g = self.generation;
        self.generation += 1;
        let mut out = Vec::new();
        if g <= self.depth {
            let scale = 3f64.powi(g as i32);
            for (i, j) in cantor_squares(g) {
                for (ci, cj) in [(0, 0), (1, 0), (0, 1), (1, 1)] {
                    out.push(
                        self.origin
                            + Point2::new(
                                self.width * (i + ci) as f64 / scale,
                                self.width * (j + cj) as f64 / scale,
                            ),
                    );
                }
            }
        } else {
            // dyadic refinement inside each prefractal square
            let m = g - self.depth;
            if m > 40 {
                return false;
            }
            let per = 1u64 << m;
            let scale = 3f64.powi(self.depth as i32);
            for (i, j) in cantor_squares(self.depth) {
                for a in 0..=per {
                    for b in 0..=per {
                        if a % 2 == 0 && b % 2 == 0 {
                            continue;
                        }
                        out.push(
                            self.origin
                                + Point2::new(
                                    self.width * (i as f64 + a as f64 / per as f64) / scale,
                                    self.width * (j as f64 + b as f64 / per as f64) / scale,
                                ),
                        );
                    }
                }
            }
        }
        self.buffer = out.into_iter();
        true
    }
}

impl Iterator for CantorStream {
    type Item = Point2;

    fn next(&mut self) -> Option<Point2> {
        loop {
            if let Some(p) = self.buffer.next() {
                return Some(p);
            }
            if !self.fill() {
                return None;
            }
        }
    }
}

struct DiskStream {
    center: Point2,
    radius: f64,
    level: u32,
    buffer: std::vec::IntoIter<Point2>,
}

impl DiskStream {
    fn new(center: Point2, radius: f64) -> Self {
        Self {
            center,
            radius,
            level: 0,
            buffer: vec![center].into_iter(),
        }
    }

    fn fill(&mut self) -> bool {
        self.level += 1;
        if self.level > 30 {
            return false;
        }
        let spacing = self.radius / (1u64 << self.level) as f64;
        let reach = (1i64 << self.level) * 2 + 2;
        let mut ring = Vec::new();
        for j in -reach..=reach {
            for i in -reach..=reach {
                if i % 2 == 0 && j % 2 == 0 {
                    continue; // present at the previous level
                }
                let off = Point2::new(
                    spacing * (i as f64 + 0.5 * j as f64),
                    spacing * (0.5 * 3f64.sqrt() * j as f64),
                );
                if off.norm() <= self.radius * (1.0 + 1e-12) {
                    ring.push((i * i + i * j + j * j, off.y.atan2(off.x), off));
                }
            }
        }
        ring.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.total_cmp(&b.1)));
        self.buffer = ring
            .into_iter()
            .map(|(_, _, off)| self.center + off)
            .collect::<Vec<_>>()
            .into_iter();
        true
    }
}

impl Iterator for DiskStream {
    type Item = Point2;

    fn next(&mut self) -> Option<Point2> {
        loop {
            if let Some(p) = self.buffer.next() {
                return Some(p);
            }
            if !self.fill() {
                return None;
            }
        }
    }
}

struct RoundRobin<'a> {
    streams: Vec<Box<dyn Iterator<Item = Point2> + 'a>>,
    next: usize,
    live: Vec<bool>,
}

impl Iterator for RoundRobin<'_> {
    type Item = Point2;

    fn next(&mut self) -> Option<Point2> {
        for _ in 0..self.streams.len() {
            let k = self.next;
            self.next = (self.next + 1) % self.streams.len();
            if !self.live[k] {
                continue;
            }
            match self.streams[k].next() {
                Some(p) => return Some(p),
                None => self.live[k] = false,
            }
        }
        None
    }
}

/// Spatial hash used to merge coincident points.
struct MergeGrid {
    cells: HashMap<(i64, i64), Vec<Point2>>,
}

impl MergeGrid {
    const CELL: f64 = 1e-13;

    fn new() -> Self {
        Self {
            cells: HashMap::new(),
        }
    }

    fn key(p: Point2) -> (i64, i64) {
        ((p.x / Self::CELL).floor() as i64, (p.y / Self::CELL).floor() as i64)
    }

    /// Inserts `p` unless an existing point lies within the merge distance.
    fn insert(&mut self, p: Point2) -> bool {
        let (kx, ky) = Self::key(p);
        for dx in -1..=1 {
            for dy in -1..=1 {
                if let Some(v) = self.cells.get(&(kx + dx, ky + dy)) {
                    if v.iter().any(|q| q.dist(p) < MERGE_DISTANCE) {
                        return false;
                    }
                }
            }
        }
        self.cells.entry((kx, ky)).or_default().push(p);
        true
    }
}

/// Translates `spec` so its first enumerated point is the origin.
pub fn normalize(spec: &CompactSetSpec) -> Result<(CompactSetSpec, Point2)> {
    let first = spec.first_point()?;
    let translation = -first;
    if translation == Point2::ORIGIN || translation == Point2::new(-0.0, -0.0) {
        return Ok((spec.clone(), Point2::ORIGIN));
    }
    let moved = spec.translated(translation);
    Ok((moved, translation))
}

#[derive(Debug, Clone, PartialEq)]
pub struct DenseEnumeration {
    pub points: Vec<Point2>,
    pub source: CompactSetSpec,
    /// `density_radii[k-1]` is d(k) = sup over K of the distance to p_1..p_k.
    pub density_radii: Vec<f64>,
    /// The set was exhausted before the requested length was reached.
    pub exhaustive: bool,
}

impl DenseEnumeration {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Smallest pairwise distance among the first `n` points (infinite if n < 2).
    pub fn min_separation(&self, n: usize) -> f64 {
        let pts = &self.points[..n.min(self.points.len())];
        let mut best = f64::INFINITY;
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                best = best.min(pts[i].dist(pts[j]));
            }
        }
        best
    }
}

/// The first `n` points of the deterministic dense enumeration of `spec`.
pub fn enumerate(spec: &CompactSetSpec, n: usize) -> Result<DenseEnumeration> {
    if n == 0 {
        return Err(Error::ZeroCount);
    }
    spec.validate()?;
    let mut grid = MergeGrid::new();
    let mut points = Vec::with_capacity(n.min(1 << 16));
    let mut duplicates = 0usize;
    let mut exhaustive = true;
    for p in spec.stream() {
        if grid.insert(p) {
            points.push(p);
            duplicates = 0;
            if points.len() == n {
                exhaustive = false;
                break;
            }
        } else {
            duplicates += 1;
            if duplicates > MAX_DUPLICATE_RUN {
                break;
            }
        }
    }
    if points.is_empty() {
        return Err(Error::EmptySet);
    }
    // a finite set that fits exactly in n is still fully enumerated
    if !exhaustive && spec.is_finite_set() {
        exhaustive = {
            let mut probe = MergeGrid::new();
            let distinct = spec.stream().filter(|p| probe.insert(*p)).count();
            distinct == points.len()
        };
    }
    let density_radii = density_radii(spec, &points);
    Ok(DenseEnumeration {
        points,
        source: spec.clone(),
        density_radii,
        exhaustive,
    })
}

fn density_radii(spec: &CompactSetSpec, points: &[Point2]) -> Vec<f64> {
    let sample = spec.sample();
    let mut nearest = vec![f64::INFINITY; sample.len()];
    let mut out = Vec::with_capacity(points.len());
    for p in points {
        let mut sup = 0.0f64;
        for (s, d) in sample.iter().zip(nearest.iter_mut()) {
            *d = d.min(s.dist(*p));
            sup = sup.max(*d);
        }
        out.push(sup);
    }
    out
}

/// d(n) for a prefix of the enumeration.
pub fn density_radius(enumeration: &DenseEnumeration, n: usize) -> Result<f64> {
    if n == 0 || n > enumeration.len() {
        return Err(Error::OutOfRange {
            index: n,
            len: enumeration.len(),
        });
    }
    Ok(enumeration.density_radii[n - 1])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[(f64, f64)]) -> Vec<Point2> {
        v.iter().map(|&(x, y)| Point2::new(x, y)).collect()
    }

    #[test]
    fn normalize_single_point() {
        let spec = CompactSetSpec::Finite {
            points: pts(&[(0.1, 0.0)]),
        };
        let (moved, t) = normalize(&spec).unwrap();
        assert_eq!(t, Point2::new(-0.1, 0.0));
        assert_eq!(moved, CompactSetSpec::Finite { points: pts(&[(0.0, 0.0)]) });
    }

    #[test]
    fn normalize_already_normalized() {
        let spec = CompactSetSpec::Finite {
            points: pts(&[(0.0, 0.0), (0.05, 0.0)]),
        };
        let (moved, t) = normalize(&spec).unwrap();
        assert_eq!(t, Point2::ORIGIN);
        assert_eq!(moved, spec);
    }

    #[test]
    fn normalize_polyline_by_first_vertex() {
        let spec = CompactSetSpec::Polyline {
            vertices: pts(&[(0.02, 0.02), (0.1, 0.02)]),
        };
        let (moved, t) = normalize(&spec).unwrap();
        assert_eq!(t, Point2::new(-0.02, -0.02));
        match moved {
            CompactSetSpec::Polyline { vertices } => {
                assert_eq!(vertices[0], Point2::ORIGIN);
                assert!((vertices[1].x - 0.08).abs() < 1e-15);
            }
            _ => panic!("variant changed"),
        }
    }

    #[test]
    fn normalize_empty_is_error() {
        let spec = CompactSetSpec::Finite { points: vec![] };
        assert_eq!(normalize(&spec).unwrap_err(), Error::EmptySet);
        assert_eq!(normalize(&spec).unwrap_err().to_string(), "empty singular set");
    }

    #[test]
    fn finite_set_is_its_own_enumeration() {
        let spec = CompactSetSpec::Finite {
            points: pts(&[(0.0, 0.0), (0.1, 0.0)]),
        };
        let e = enumerate(&spec, 2).unwrap();
        assert_eq!(e.points, pts(&[(0.0, 0.0), (0.1, 0.0)]));
        assert_eq!(density_radius(&e, 2).unwrap(), 0.0);
        assert!(e.exhaustive);
        let more = enumerate(&spec, 10).unwrap();
        assert_eq!(more.len(), 2);
    }

    #[test]
    fn duplicates_are_merged() {
        let spec = CompactSetSpec::Finite {
            points: pts(&[(0.0, 0.0), (1e-16, 0.0), (0.01, 0.0)]),
        };
        let e = enumerate(&spec, 5).unwrap();
        assert_eq!(e.len(), 2);
    }

    #[test]
    fn zero_count_is_error() {
        let spec = CompactSetSpec::Finite {
            points: pts(&[(0.0, 0.0)]),
        };
        assert_eq!(enumerate(&spec, 0).unwrap_err(), Error::ZeroCount);
    }

    #[test]
    fn density_radius_out_of_range() {
        let spec = CompactSetSpec::Finite {
            points: pts(&[(0.0, 0.0)]),
        };
        let e = enumerate(&spec, 1).unwrap();
        assert!(density_radius(&e, 0).is_err());
        assert!(density_radius(&e, 2).is_err());
    }

    #[test]
    fn disk_center_density() {
        let spec = CompactSetSpec::Disk {
            center: Point2::ORIGIN,
            radius: 0.05,
        };
        let e = enumerate(&spec, 1).unwrap();
        let d = density_radius(&e, 1).unwrap();
        assert!((d - 0.05).abs() <= 0.02 * 0.05);
    }

    #[test]
    fn disk_points_stay_inside() {
        let spec = CompactSetSpec::Disk {
            center: Point2::new(0.01, 0.0),
            radius: 0.02,
        };
        let e = enumerate(&spec, 200).unwrap();
        assert!(e.points.iter().all(|p| spec.contains(*p, MEMBERSHIP_TOL)));
        assert!(e.density_radii[199] < e.density_radii[0]);
    }

    #[test]
    fn cantor_enumeration_starts_at_lower_left_corner() {
        let spec = CompactSetSpec::CantorDust {
            center: Point2::new(0.1, 0.1),
            width: 0.2,
            depth: 3,
        };
        assert_eq!(spec.first_point().unwrap(), Point2::ORIGIN);
    }

    #[test]
    fn union_interleaves_members() {
        let spec = CompactSetSpec::Union {
            members: vec![
                CompactSetSpec::Finite {
                    points: pts(&[(0.0, 0.0), (0.01, 0.0)]),
                },
                CompactSetSpec::Finite {
                    points: pts(&[(0.0, 0.02), (0.0, 0.0)]),
                },
            ],
        };
        let e = enumerate(&spec, 10).unwrap();
        assert_eq!(e.points, pts(&[(0.0, 0.0), (0.0, 0.02), (0.01, 0.0)]));
        assert!(e.exhaustive);
    }

    #[test]
    fn toml_round_trip_of_tagged_spec() {
        let text = "kind = \"cantor_dust\"\ncenter = [0.0, 0.0]\nwidth = 0.04\ndepth = 2\n";
        let spec: CompactSetSpec = toml::from_str(text).unwrap();
        assert_eq!(
            spec,
            CompactSetSpec::CantorDust {
                center: Point2::ORIGIN,
                width: 0.04,
                depth: 2
            }
        );
        let bad = "kind = \"disk\"\ncenter = [0.0, 0.0]\nradius = 0.1\ncolour = 3\n";
        assert!(toml::from_str::<CompactSetSpec>(bad).is_err());
    }
}
