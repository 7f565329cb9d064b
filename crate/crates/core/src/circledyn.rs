//! Piecewise-linear homeomorphisms of the circle `R/Z` and of `[0, 1]`.
//!
//! A circle map is stored as the breakpoint table of one lift `F: R -> R`
//! over a fundamental domain: `xs[0] = 0 < xs[1] < ... < 1` and strictly
//! increasing values `ys`, extended by `F(x + 1) = F(x) + 1`. The stored lift
//! is the one with `F(0) - 0` in `[-1/2, 1/2)`. Interval maps store their
//! breakpoints directly, with `(0, 0)` and `(1, 1)` always present.
//!
//! Group operations evaluate both maps exactly at the merged breakpoint set,
//! so composites and inverses are exact up to rounding.

use crate::psl2::{circle_diff, wrap_unit};
use crate::ucover::LiftedElement;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default threshold for [`PlHomeo::support`].
pub const SUPPORT_TOL: f64 = 1e-12;
/// Breakpoints closer than this are merged.
const NODE_MERGE: f64 = 1e-15;
/// Constant in the conjugator bound `K eps`.
pub const CONJUGATOR_K: f64 = 8.0;
/// Node count of [`TildeIntervalAction::to_pl`] exports.
pub const TILDE_EXPORT_NODES: usize = 4096;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PlError {
    #[error("breakpoints are not strictly increasing")]
    NotIncreasing,
    #[error("invalid breakpoints: {0}")]
    InvalidBreaks(String),
    #[error("precondition violated: {0}")]
    PreconditionViolation(String),
    #[error("displacement {displacement} too large for the cover (limit {limit})")]
    DisplacementTooLarge { displacement: f64, limit: f64 },
    #[error("invalid cover: {0}")]
    InvalidCover(String),
    #[error("net points closer than 4 delta")]
    NetTooDense,
}

/// A closed arc `[start, end]` with `start` in `[0, 1)` and
/// `start <= end <= start + 1`. On the circle `end` may exceed 1.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Arc {
    pub start: f64,
    pub end: f64,
}

impl Arc {
    pub fn new(start: f64, end: f64) -> Self {
        let s = wrap_unit(start);
        Arc { start: s, end: s + (end - start) }
    }

    pub fn len(&self) -> f64 {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.len() <= 0.0
    }

    /// Whether the interiors intersect, modulo 1.
    pub fn overlaps(&self, other: &Arc) -> bool {
        (-1..=1).any(|k| {
            let k = k as f64;
            self.start < other.end + k && other.start + k < self.end
        })
    }

    /// Whether `inner` lies in `self` (modulo 1), up to `tol`.
    pub fn contains(&self, inner: &Arc, tol: f64) -> bool {
        if self.len() >= 1.0 {
            return true;
        }
        (-1..=1).any(|k| {
            let k = k as f64;
            self.start <= inner.start + k + tol && inner.end + k <= self.end + tol
        })
    }

    pub fn contains_point(&self, x: f64) -> bool {
        self.contains(&Arc { start: wrap_unit(x), end: wrap_unit(x) }, 0.0)
    }
}

/// Common interface of circle and interval PL homeomorphisms.
///
/// Composition follows function order: `f.compose(g)` is `f o g`.
pub trait PlHomeo: Sized + Clone {
    fn identity() -> Self;
    /// Value in `[0, 1)` (circle) or `[0, 1]` (interval).
    fn eval(&self, x: f64) -> f64;
    fn compose(&self, other: &Self) -> Self;
    fn inverse(&self) -> Self;
    /// `(x, y)` breakpoints as stored.
    fn breakpoints(&self) -> Vec<(f64, f64)>;
    /// Signed displacement `f(x) - x` of the stored lift.
    fn displacement_at(&self, x: f64) -> f64;
    /// Closure of `{x : |f(x) - x| > tol}` as disjoint arcs.
    fn support(&self, tol: f64) -> Vec<Arc>;
    /// Smallest arc containing every given arc.
    fn hull(arcs: &[Arc]) -> Option<Arc>;
    fn image_arc(&self, arc: &Arc) -> Arc;
    /// Exact sup distance, attained at a breakpoint of either map.
    fn sup_dist(&self, other: &Self) -> f64;

    fn commutator(&self, other: &Self) -> Self {
        self.compose(other).compose(&self.inverse()).compose(&other.inverse())
    }

    /// `y o self o y^-1`, written `self^y`.
    fn conj(&self, y: &Self) -> Self {
        y.compose(self).compose(&y.inverse())
    }

    fn sup_displacement(&self) -> f64 {
        self.sup_dist(&Self::identity())
    }

    fn is_identity(&self, tol: f64) -> bool {
        self.sup_displacement() <= tol
    }

    /// `(min slope, max slope)`.
    fn slope_bounds(&self) -> (f64, f64);
}

/// Ordered product `fs[0] o fs[1] o ... o fs[n-1]`.
pub fn product<T: PlHomeo>(fs: &[T]) -> T {
    fs.iter().fold(T::identity(), |acc, f| acc.compose(f))
}

fn interp(xs: &[f64], ys: &[f64], x: f64) -> f64 {
    let n = xs.len();
    let i = xs.partition_point(|&v| v <= x).clamp(1, n - 1);
    let (x0, x1, y0, y1) = (xs[i - 1], xs[i], ys[i - 1], ys[i]);
    if x == x0 {
        return y0;
    }
    if x == x1 {
        return y1;
    }
    y0 + (y1 - y0) * (x - x0) / (x1 - x0)
}

fn slope_range(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    xs.windows(2).zip(ys.windows(2)).fold((f64::INFINITY, 0.0f64), |(lo, hi), (x, y)| {
        let s = (y[1] - y[0]) / (x[1] - x[0]);
        (lo.min(s), hi.max(s))
    })
}

/// Drops interior points lying on the segment through their neighbours.
fn simplify(xs: &mut Vec<f64>, ys: &mut Vec<f64>, keep_last: bool) {
    let n = xs.len();
    if n < 3 {
        return;
    }
    let mut ox = vec![xs[0]];
    let mut oy = vec![ys[0]];
    let end = if keep_last { n - 1 } else { n };
    for i in 1..end {
        let (px, py) = (*ox.last().unwrap(), *oy.last().unwrap());
        let (nx, ny) = if i + 1 < n { (xs[i + 1], ys[i + 1]) } else { (xs[0] + 1.0, ys[0] + 1.0) };
        let pred = py + (ny - py) * (xs[i] - px) / (nx - px);
        if (pred - ys[i]).abs() > 1e-15 {
            ox.push(xs[i]);
            oy.push(ys[i]);
        }
    }
    if keep_last {
        ox.push(xs[n - 1]);
        oy.push(ys[n - 1]);
    }
    *xs = ox;
    *ys = oy;
}

/// Sub-intervals of `[x0, x1]` where the linear function through
/// `(x0, d0), (x1, d1)` has `|d| > tol`.
fn exceed_pieces(x0: f64, x1: f64, d0: f64, d1: f64, tol: f64, out: &mut Vec<(f64, f64)>) {
    for sign in [1.0, -1.0] {
        let (a, b) = (sign * d0 - tol, sign * d1 - tol);
        if a <= 0.0 && b <= 0.0 {
            continue;
        }
        let cross = x0 + (x1 - x0) * a / (a - b);
        let piece = if a > 0.0 && b > 0.0 {
            (x0, x1)
        } else if a > 0.0 {
            (x0, cross)
        } else {
            (cross, x1)
        };
        out.push(piece);
    }
}

fn merge_pieces(mut pieces: Vec<(f64, f64)>) -> Vec<(f64, f64)> {
    pieces.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut out: Vec<(f64, f64)> = Vec::new();
    for p in pieces {
        match out.last_mut() {
            Some(last) if p.0 <= last.1 + NODE_MERGE => last.1 = last.1.max(p.1),
            _ => out.push(p),
        }
    }
    out
}

fn dedup_nodes(xs: &mut Vec<f64>) {
    xs.sort_by(f64::total_cmp);
    xs.dedup_by(|b, a| (*b - *a).abs() <= NODE_MERGE);
}

/// Drops nodes that coincide with their predecessor up to rounding in both
/// coordinates, as happens when one breakpoint is reached along two routes.
fn drop_rounding_twins(xs: &mut Vec<f64>, ys: &mut Vec<f64>) {
    let mut keep = vec![true; xs.len()];
    let mut last = 0;
    for i in 1..xs.len() {
        if xs[i] - xs[last] <= 1e-12 && (ys[i] - ys[last]).abs() <= 1e-14 {
            keep[i] = false;
        } else {
            last = i;
        }
    }
    let mut k = keep.iter();
    xs.retain(|_| *k.next().unwrap());
    let mut k = keep.iter();
    ys.retain(|_| *k.next().unwrap());
}

/// PL orientation-preserving homeomorphism of the circle `R/Z`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<[f64; 2]>", into = "Vec<[f64; 2]>")]
pub struct PlCircleHomeo {
    xs: Vec<f64>,
    ys: Vec<f64>,
}

impl PlCircleHomeo {
    /// From `(x, y)` pairs in `[0,1)^2`, any order. The cyclic order of the
    /// `y` values must follow that of the `x` values.
    pub fn from_breaks(breaks: &[(f64, f64)]) -> Result<Self, PlError> {
        if breaks.is_empty() {
            return Err(PlError::InvalidBreaks("no breakpoints".into()));
        }
        let mut b: Vec<(f64, f64)> = breaks.iter().map(|&(x, y)| (wrap_unit(x), wrap_unit(y))).collect();
        b.sort_by(|p, q| p.0.total_cmp(&q.0));
        if b.windows(2).any(|w| w[1].0 - w[0].0 <= 0.0) {
            return Err(PlError::InvalidBreaks("repeated x".into()));
        }
        let mut xs = Vec::with_capacity(b.len());
        let mut ys = Vec::with_capacity(b.len());
        let mut prev = f64::NEG_INFINITY;
        for &(x, y) in &b {
            let mut y = y;
            while y <= prev {
                y += 1.0;
            }
            xs.push(x);
            ys.push(y);
            prev = y;
        }
        if ys[ys.len() - 1] - ys[0] >= 1.0 {
            return Err(PlError::NotIncreasing);
        }
        let (x0, y0) = (xs[0], ys[0]);
        let lift = |x: f64| {
            let mut ex = xs.clone();
            let mut ey = ys.clone();
            ex.push(x0 + 1.0);
            ey.push(y0 + 1.0);
            let k = ((x - x0) / 1.0).floor();
            interp(&ex, &ey, x - k) + k
        };
        Self::from_lift_samples(xs.clone(), lift)
    }

    /// Builds the PL map interpolating a continuous lift at `nodes` (taken
    /// modulo 1; the node 0 is added).
    pub fn from_lift_samples(
        nodes: impl IntoIterator<Item = f64>,
        lift: impl Fn(f64) -> f64,
    ) -> Result<Self, PlError> {
        let mut xs: Vec<f64> = nodes
            .into_iter()
            .map(|x| {
                let w = wrap_unit(x);
                if w > 1.0 - NODE_MERGE {
                    0.0
                } else {
                    w
                }
            })
            .chain([0.0])
            .collect();
        dedup_nodes(&mut xs);
        let mut ys: Vec<f64> = xs.iter().map(|&x| lift(x)).collect();
        drop_rounding_twins(&mut xs, &mut ys);
        let shift = (ys[0] + 0.5).floor();
        for y in ys.iter_mut() {
            *y -= shift;
        }
        if ys.windows(2).any(|w| w[1] <= w[0]) || ys[ys.len() - 1] >= ys[0] + 1.0 {
            return Err(PlError::NotIncreasing);
        }
        simplify(&mut xs, &mut ys, false);
        Ok(PlCircleHomeo { xs, ys })
    }

    pub fn rotation(r: f64) -> Self {
        PlCircleHomeo { xs: vec![0.0], ys: vec![r - (r + 0.5).floor()] }
    }

    /// The stored lift, at any real `x`.
    pub fn lift(&self, x: f64) -> f64 {
        let k = x.floor();
        let u = x - k;
        let (xs, ys) = self.extended();
        interp(&xs, &ys, u) + k
    }

    /// Inverse of the stored lift.
    pub fn lift_inverse(&self, y: f64) -> f64 {
        let y0 = self.ys[0];
        let k = (y - y0).floor();
        let (xs, ys) = self.extended();
        interp(&ys, &xs, y - k) + k
    }

    fn extended(&self) -> (Vec<f64>, Vec<f64>) {
        let mut xs = self.xs.clone();
        let mut ys = self.ys.clone();
        xs.push(1.0);
        ys.push(self.ys[0] + 1.0);
        (xs, ys)
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    fn nodes(&self) -> &[f64] {
        &self.xs
    }
}

impl TryFrom<Vec<[f64; 2]>> for PlCircleHomeo {
    type Error = PlError;
    fn try_from(v: Vec<[f64; 2]>) -> Result<Self, PlError> {
        let b: Vec<(f64, f64)> = v.into_iter().map(|[x, y]| (x, y)).collect();
        PlCircleHomeo::from_breaks(&b)
    }
}

impl From<PlCircleHomeo> for Vec<[f64; 2]> {
    fn from(f: PlCircleHomeo) -> Self {
        f.breakpoints().into_iter().map(|(x, y)| [x, y]).collect()
    }
}

impl PlHomeo for PlCircleHomeo {
    fn identity() -> Self {
        PlCircleHomeo { xs: vec![0.0], ys: vec![0.0] }
    }

    fn eval(&self, x: f64) -> f64 {
        wrap_unit(self.lift(x))
    }

    fn compose(&self, other: &Self) -> Self {
        let nodes: Vec<f64> = other
            .xs
            .iter()
            .copied()
            .chain(self.xs.iter().map(|&x| other.lift_inverse(x)))
            .collect();
        Self::from_lift_samples(nodes, |x| self.lift(other.lift(x)))
            .expect("composite of homeomorphisms is increasing")
    }

    fn inverse(&self) -> Self {
        Self::from_lift_samples(self.ys.clone(), |y| self.lift_inverse(y))
            .expect("inverse of a homeomorphism is increasing")
    }

    fn breakpoints(&self) -> Vec<(f64, f64)> {
        self.xs.iter().zip(&self.ys).map(|(&x, &y)| (x, wrap_unit(y))).collect()
    }

    fn displacement_at(&self, x: f64) -> f64 {
        self.lift(x) - x
    }

    fn support(&self, tol: f64) -> Vec<Arc> {
        let (xs, ys) = self.extended();
        let mut pieces = Vec::new();
        for i in 0..xs.len() - 1 {
            exceed_pieces(xs[i], xs[i + 1], ys[i] - xs[i], ys[i + 1] - xs[i + 1], tol, &mut pieces);
        }
        let mut merged = merge_pieces(pieces);
        if merged.len() == 1 && merged[0].0 <= NODE_MERGE && merged[0].1 >= 1.0 - NODE_MERGE {
            return vec![Arc { start: 0.0, end: 1.0 }];
        }
        if merged.len() >= 2 && merged[0].0 <= NODE_MERGE && merged[merged.len() - 1].1 >= 1.0 - NODE_MERGE {
            let first = merged.remove(0);
            let last = merged.last_mut().unwrap();
            last.1 = first.1 + 1.0;
        }
        merged.into_iter().map(|(s, e)| Arc::new(s, e)).collect()
    }

    fn hull(arcs: &[Arc]) -> Option<Arc> {
        let arcs: Vec<Arc> = arcs.iter().filter(|a| !a.is_empty()).copied().collect();
        if arcs.is_empty() {
            return None;
        }
        if arcs.iter().any(|a| a.len() >= 1.0) {
            return Some(Arc { start: 0.0, end: 1.0 });
        }
        let mut merged = merge_pieces(arcs.iter().map(|a| (a.start, a.end)).collect());
        // fold arcs that wrap past 1 into the leading ones
        while merged.len() > 1 && merged[merged.len() - 1].1 >= merged[0].0 + 1.0 {
            let first = merged.remove(0);
            let last = merged.last_mut().unwrap();
            last.1 = last.1.max(first.1 + 1.0);
        }
        if merged[merged.len() - 1].1 - merged[0].0 >= 1.0 && merged.len() == 1 {
            return Some(Arc { start: 0.0, end: 1.0 });
        }
        let n = merged.len();
        let mut best = (merged[0].0 + 1.0 - merged[n - 1].1, n - 1);
        for i in 0..n - 1 {
            let gap = merged[i + 1].0 - merged[i].1;
            if gap > best.0 {
                best = (gap, i);
            }
        }
        let (gap, i) = best;
        if gap <= 0.0 {
            return Some(Arc { start: 0.0, end: 1.0 });
        }
        let start = merged[(i + 1) % n].0;
        let end = merged[i].1 + if i + 1 == n { 0.0 } else { 1.0 };
        Some(Arc::new(start, end))
    }

    fn image_arc(&self, arc: &Arc) -> Arc {
        let s = self.lift(arc.start);
        let e = self.lift(arc.end);
        Arc::new(s, s + (e - s))
    }

    fn sup_dist(&self, other: &Self) -> f64 {
        self.nodes()
            .iter()
            .chain(other.nodes())
            .map(|&x| circle_diff(self.lift(x), other.lift(x)).abs())
            .fold(0.0, f64::max)
    }

    fn slope_bounds(&self) -> (f64, f64) {
        let (xs, ys) = self.extended();
        slope_range(&xs, &ys)
    }
}

/// PL increasing homeomorphism of `[0, 1]` fixing both endpoints.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<[f64; 2]>", into = "Vec<[f64; 2]>")]
pub struct PlIntervalHomeo {
    xs: Vec<f64>,
    ys: Vec<f64>,
}

impl PlIntervalHomeo {
    /// From `(x, y)` pairs; `(0, 0)` and `(1, 1)` are added if missing.
    pub fn from_breaks(breaks: &[(f64, f64)]) -> Result<Self, PlError> {
        let mut b: Vec<(f64, f64)> = breaks.to_vec();
        if b.iter().any(|&(x, y)| !(0.0..=1.0).contains(&x) || !(0.0..=1.0).contains(&y)) {
            return Err(PlError::InvalidBreaks("breakpoint outside [0,1]^2".into()));
        }
        b.push((0.0, 0.0));
        b.push((1.0, 1.0));
        b.sort_by(|p, q| p.0.total_cmp(&q.0));
        b.dedup_by(|q, p| q.0 == p.0 && q.1 == p.1);
        if b.first() != Some(&(0.0, 0.0)) || b.last() != Some(&(1.0, 1.0)) {
            return Err(PlError::InvalidBreaks("endpoints must be fixed".into()));
        }
        let (mut xs, mut ys): (Vec<f64>, Vec<f64>) = b.into_iter().unzip();
        if xs.windows(2).any(|w| w[1] <= w[0]) || ys.windows(2).any(|w| w[1] <= w[0]) {
            return Err(PlError::NotIncreasing);
        }
        simplify(&mut xs, &mut ys, true);
        Ok(PlIntervalHomeo { xs, ys })
    }

    /// Interpolates `f` at `nodes` (clamped to `[0, 1]`, endpoints added and
    /// pinned).
    pub fn from_samples(nodes: impl IntoIterator<Item = f64>, f: impl Fn(f64) -> f64) -> Result<Self, PlError> {
        let mut xs: Vec<f64> = nodes.into_iter().map(|x| x.clamp(0.0, 1.0)).chain([0.0, 1.0]).collect();
        dedup_nodes(&mut xs);
        let n = xs.len();
        if xs[n - 1] != 1.0 {
            xs[n - 1] = 1.0;
        }
        let mut ys: Vec<f64> = xs.iter().map(|&x| f(x)).collect();
        ys[0] = 0.0;
        ys[n - 1] = 1.0;
        drop_rounding_twins(&mut xs, &mut ys);
        if xs[xs.len() - 1] != 1.0 {
            let m = xs.len();
            xs[m - 1] = 1.0;
            ys[m - 1] = 1.0;
        }
        if ys.windows(2).any(|w| w[1] <= w[0]) {
            return Err(PlError::NotIncreasing);
        }
        simplify(&mut xs, &mut ys, true);
        Ok(PlIntervalHomeo { xs, ys })
    }

    pub fn eval_inverse(&self, y: f64) -> f64 {
        interp(&self.ys, &self.xs, y.clamp(0.0, 1.0))
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }
}

impl TryFrom<Vec<[f64; 2]>> for PlIntervalHomeo {
    type Error = PlError;
    fn try_from(v: Vec<[f64; 2]>) -> Result<Self, PlError> {
        let b: Vec<(f64, f64)> = v.into_iter().map(|[x, y]| (x, y)).collect();
        PlIntervalHomeo::from_breaks(&b)
    }
}

impl From<PlIntervalHomeo> for Vec<[f64; 2]> {
    fn from(f: PlIntervalHomeo) -> Self {
        f.breakpoints().into_iter().map(|(x, y)| [x, y]).collect()
    }
}

impl PlHomeo for PlIntervalHomeo {
    fn identity() -> Self {
        PlIntervalHomeo { xs: vec![0.0, 1.0], ys: vec![0.0, 1.0] }
    }

    fn eval(&self, x: f64) -> f64 {
        interp(&self.xs, &self.ys, x.clamp(0.0, 1.0))
    }

    fn compose(&self, other: &Self) -> Self {
        let nodes: Vec<f64> =
            other.xs.iter().copied().chain(self.xs.iter().map(|&x| other.eval_inverse(x))).collect();
        Self::from_samples(nodes, |x| self.eval(other.eval(x))).expect("composite of homeomorphisms is increasing")
    }

    fn inverse(&self) -> Self {
        Self::from_samples(self.ys.clone(), |y| self.eval_inverse(y)).expect("inverse of a homeomorphism is increasing")
    }

    fn breakpoints(&self) -> Vec<(f64, f64)> {
        self.xs.iter().copied().zip(self.ys.iter().copied()).collect()
    }

    fn displacement_at(&self, x: f64) -> f64 {
        self.eval(x) - x
    }

    fn support(&self, tol: f64) -> Vec<Arc> {
        let mut pieces = Vec::new();
        for i in 0..self.xs.len() - 1 {
            let (x0, x1) = (self.xs[i], self.xs[i + 1]);
            exceed_pieces(x0, x1, self.ys[i] - x0, self.ys[i + 1] - x1, tol, &mut pieces);
        }
        merge_pieces(pieces).into_iter().map(|(s, e)| Arc { start: s, end: e }).collect()
    }

    fn hull(arcs: &[Arc]) -> Option<Arc> {
        let arcs: Vec<&Arc> = arcs.iter().filter(|a| !a.is_empty()).collect();
        if arcs.is_empty() {
            return None;
        }
        let s = arcs.iter().map(|a| a.start).fold(f64::INFINITY, f64::min);
        let e = arcs.iter().map(|a| a.end).fold(f64::NEG_INFINITY, f64::max);
        Some(Arc { start: s, end: e })
    }

    fn image_arc(&self, arc: &Arc) -> Arc {
        Arc { start: self.eval(arc.start), end: self.eval(arc.end) }
    }

    fn sup_dist(&self, other: &Self) -> f64 {
        self.xs.iter().chain(&other.xs).map(|&x| (self.eval(x) - other.eval(x)).abs()).fold(0.0, f64::max)
    }

    fn slope_bounds(&self) -> (f64, f64) {
        slope_range(&self.xs, &self.ys)
    }
}

fn supports_disjoint(a: &[Arc], b: &[Arc]) -> bool {
    a.iter().all(|x| b.iter().all(|y| !x.overlaps(y)))
}

/// The four factors `h, (h^-1)^c, h^(cb), (h^-1)^b` with `c = h^-1 a h`,
/// whose ordered product is `[a, b]`.
///
/// Requires the hull `V` of the supports of `a` and `b` to satisfy
/// `h(V) ∩ V = ∅`, and `supp(c) ∩ supp(b) = ∅`.
pub fn eq5_word<T: PlHomeo>(a: &T, b: &T, h: &T) -> Result<[T; 4], PlError> {
    let sa = a.support(SUPPORT_TOL);
    let sb = b.support(SUPPORT_TOL);
    let all: Vec<Arc> = sa.iter().chain(&sb).copied().collect();
    if let Some(v) = T::hull(&all) {
        if h.image_arc(&v).overlaps(&v) {
            return Err(PlError::PreconditionViolation("h(V) meets V".into()));
        }
    }
    let hinv = h.inverse();
    let c = hinv.compose(a).compose(h);
    if !supports_disjoint(&c.support(SUPPORT_TOL), &sb) {
        return Err(PlError::PreconditionViolation("supp(h^-1 a h) meets supp(b)".into()));
    }
    let cb = c.compose(b);
    Ok([h.clone(), hinv.conj(&c), h.conj(&cb), hinv.conj(b)])
}

/// One factor `conj o h^exp o conj^-1`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConjugateFactor<T> {
    pub conjugator: T,
    pub exponent: i8,
}

/// Conjugators and norms of the compressed identity: with `a' = a^g`,
/// `b' = b^g` and `c' = h^-1 a' h`,
/// `[a, b] = (h)^(g^-1) (h^-1)^(g^-1 c') (h)^(g^-1 c' b') (h^-1)^(g^-1 b')`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConjugatorReport<T> {
    pub factors: Vec<ConjugateFactor<T>>,
    /// Sup displacement of each conjugator.
    pub norms: Vec<f64>,
    /// `max(diam V, sup displacement of h)`, with `V` the hull of the supports
    /// of `a`, `b` and `g`.
    pub eps: f64,
}

impl<T: PlHomeo> ConjugatorReport<T> {
    pub fn product(&self, h: &T) -> T {
        let hinv = h.inverse();
        let fs: Vec<T> = self
            .factors
            .iter()
            .map(|f| if f.exponent > 0 { h.conj(&f.conjugator) } else { hinv.conj(&f.conjugator) })
            .collect();
        product(&fs)
    }

    pub fn within_bound(&self) -> bool {
        self.norms.iter().all(|&n| n <= CONJUGATOR_K * self.eps + 1e-12)
    }
}

/// The conjugators of `[a, b]` written through the compressor `g`.
pub fn conjugator_norms<T: PlHomeo>(a: &T, b: &T, h: &T, g: &T) -> Result<ConjugatorReport<T>, PlError> {
    let ginv = g.inverse();
    let a2 = a.conj(g);
    let b2 = b.conj(g);
    eq5_word(&a2, &b2, h)?;
    let c2 = h.inverse().compose(&a2).compose(h);
    let conjugators = [ginv.clone(), ginv.compose(&c2), ginv.compose(&c2).compose(&b2), ginv.compose(&b2)];
    let supports: Vec<Arc> = [a, b, g].iter().flat_map(|f| f.support(SUPPORT_TOL)).collect();
    let diam = T::hull(&supports).map_or(0.0, |v| v.len());
    let eps = diam.max(h.sup_displacement());
    let norms = conjugators.iter().map(|c| c.sup_displacement()).collect();
    let factors = conjugators
        .into_iter()
        .zip([1i8, -1, 1, -1])
        .map(|(conjugator, exponent)| ConjugateFactor { conjugator, exponent })
        .collect();
    Ok(ConjugatorReport { factors, norms, eps })
}

/// PL map supported in `[u.start - margin, u.end + margin]` carrying `u`
/// onto `v` (`v` inside `u`).
pub fn compressor(u: &Arc, v: &Arc, margin: f64) -> Result<PlCircleHomeo, PlError> {
    if !u.contains(v, 0.0) || u.len() + 2.0 * margin >= 1.0 || margin <= 0.0 {
        return Err(PlError::PreconditionViolation("compressor needs v inside u and room for the margin".into()));
    }
    let vs = u.start + wrap_unit(v.start - u.start);
    let ve = vs + v.len();
    let breaks = [
        (u.start - margin, u.start - margin),
        (u.start, vs),
        (u.end, ve),
        (u.end + margin, u.end + margin),
    ];
    PlCircleHomeo::from_breaks(&breaks)
}

/// Validated cover of the circle by arcs in cyclic order.
fn check_cover(cover: &[Arc]) -> Result<Vec<f64>, PlError> {
    let r = cover.len();
    if r < 2 {
        return Err(PlError::InvalidCover("need at least two arcs".into()));
    }
    let mut overlaps = Vec::with_capacity(r);
    for k in 0..r {
        let next_start = if k + 1 < r { cover[k + 1].start } else { cover[0].start + 1.0 };
        if k + 1 < r && cover[k + 1].start <= cover[k].start {
            return Err(PlError::InvalidCover("arcs must be sorted by start".into()));
        }
        let ov = cover[k].end - next_start;
        if ov <= 0.0 {
            return Err(PlError::InvalidCover(format!("arcs {k} and {} do not overlap", (k + 1) % r)));
        }
        overlaps.push(ov);
    }
    Ok(overlaps)
}

/// Lebesgue number of a cyclic arc cover: the smallest consecutive overlap.
pub fn lebesgue_number(cover: &[Arc]) -> Result<f64, PlError> {
    Ok(check_cover(cover)?.into_iter().fold(f64::INFINITY, f64::min))
}

/// Factors `f = f_r o ... o f_1` with `supp(f_k)` inside `cover[k - 1]`;
/// the returned vector is `[f_1, ..., f_r]`.
///
/// Intermediate maps `g_k` agree with `f` over arcs `1..k` and with the
/// identity beyond, switching linearly across windows cut from the overlaps;
/// then `f_k = g_k o g_{k-1}^-1`. Windows keep the sup displacement `D` away
/// from both ends of their overlap and must be longer than `D` themselves, so
/// every overlap has to exceed `3D`.
pub fn fragment(f: &PlCircleHomeo, cover: &[Arc]) -> Result<Vec<PlCircleHomeo>, PlError> {
    let overlaps = check_cover(cover)?;
    let r = cover.len();
    if f.is_identity(0.0) {
        return Ok(vec![PlCircleHomeo::identity(); r]);
    }
    let supp = f.support(SUPPORT_TOL);
    if let Some(i) = cover.iter().position(|u| supp.iter().all(|s| u.contains(s, 0.0))) {
        let mut out = vec![PlCircleHomeo::identity(); r];
        out[i] = f.clone();
        return Ok(out);
    }
    let d = f.sup_displacement();
    let limit = overlaps.iter().fold(f64::INFINITY, |m, &o| m.min(o)) / 3.0;
    if d >= limit {
        return Err(PlError::DisplacementTooLarge { displacement: d, limit });
    }
    // transition windows T_k inside cover[k] ∩ cover[k+1], T_r wrapping
    let trans: Vec<(f64, f64)> = (0..r)
        .map(|k| {
            let lo = if k + 1 < r { cover[k + 1].start } else { cover[0].start + 1.0 } + d;
            (lo, cover[k].end - d)
        })
        .collect();
    let (wrap_lo, wrap_hi) = (trans[r - 1].0 - 1.0, trans[r - 1].1 - 1.0);
    let ordered = std::iter::once(wrap_hi)
        .chain(trans[..r - 1].iter().flat_map(|t| [t.0, t.1]))
        .chain(std::iter::once(wrap_lo + 1.0))
        .collect::<Vec<_>>();
    if ordered.windows(2).any(|w| w[1] <= w[0]) {
        return Err(PlError::InvalidCover("transition windows are not in cyclic order".into()));
    }
    // g_k equals f from the end of T_r to the start of T_k, the identity from
    // the end of T_k to the start of T_r, and is linear across both windows
    let mut stages = vec![PlCircleHomeo::identity()];
    for k in 1..r {
        let (fall_lo, fall_hi) = trans[k - 1];
        let mut pts: Vec<(f64, f64)> = vec![
            (wrap_lo, wrap_lo),
            (wrap_hi, f.lift(wrap_hi)),
            (fall_lo, f.lift(fall_lo)),
            (fall_hi, fall_hi),
        ];
        for &x in &f.xs {
            let y = x - (x - wrap_lo).floor();
            if y > wrap_hi + NODE_MERGE && y < fall_lo - NODE_MERGE {
                pts.push((y, f.lift(y)));
            }
        }
        pts.sort_by(|p, q| p.0.total_cmp(&q.0));
        let breaks: Vec<(f64, f64)> = pts.iter().map(|&(x, y)| (wrap_unit(x), wrap_unit(y))).collect();
        let g = PlCircleHomeo::from_breaks(&breaks)
            .map_err(|_| PlError::DisplacementTooLarge { displacement: d, limit })?;
        stages.push(g);
    }
    stages.push(f.clone());
    let factors: Vec<PlCircleHomeo> =
        (1..=r).map(|k| stages[k].compose(&stages[k - 1].inverse())).collect();
    for (k, fk) in factors.iter().enumerate() {
        if !fk.support(SUPPORT_TOL).iter().all(|s| cover[k].contains(s, 1e-12)) {
            return Err(PlError::DisplacementTooLarge { displacement: d, limit });
        }
    }
    Ok(factors)
}

/// `f_r o ... o f_1` for factors `[f_1, ..., f_r]`.
pub fn recompose(factors: &[PlCircleHomeo]) -> PlCircleHomeo {
    factors.iter().fold(PlCircleHomeo::identity(), |acc, f| f.compose(&acc))
}

/// PL map supported in the `2 delta`-balls around the net points, moving
/// each `delta`-ball off itself (sup displacement `2.25 delta`).
pub fn net_displacer(net: &[f64], delta: f64) -> Result<PlCircleHomeo, PlError> {
    if net.is_empty() {
        return Ok(PlCircleHomeo::identity());
    }
    if !(delta > 0.0) || 4.0 * delta * net.len() as f64 > 1.0 + 1e-15 {
        return Err(PlError::NetTooDense);
    }
    let mut pts: Vec<f64> = net.iter().map(|&p| wrap_unit(p)).collect();
    pts.sort_by(f64::total_cmp);
    let n = pts.len();
    for i in 0..n {
        let gap = if i + 1 < n { pts[i + 1] - pts[i] } else { pts[0] + 1.0 - pts[i] };
        if n > 1 && gap < 4.0 * delta - 1e-15 {
            return Err(PlError::NetTooDense);
        }
    }
    let bump = [(-2.0, -2.0), (-1.0, 1.25), (1.0, 1.75), (2.0, 2.0)];
    let disp = |x: f64| -> f64 {
        for &p in &pts {
            let u = circle_diff(x, p) / delta;
            if u.abs() < 2.0 {
                let i = bump.partition_point(|b| b.0 <= u).clamp(1, 3);
                let (x0, y0) = bump[i - 1];
                let (x1, y1) = bump[i];
                let y = y0 + (y1 - y0) * (u - x0) / (x1 - x0);
                return (y - u) * delta;
            }
        }
        0.0
    };
    let nodes: Vec<f64> = pts.iter().flat_map(|&p| bump.iter().map(move |b| p + b.0 * delta)).collect();
    PlCircleHomeo::from_lift_samples(nodes, |x| x + disp(wrap_unit(x)))
}

/// `kappa(x) = (1 + x / (1 + |x|)) / 2`, a homeomorphism `R -> (0, 1)`.
pub fn kappa(x: f64) -> f64 {
    0.5 * (1.0 + x / (1.0 + x.abs()))
}

pub fn kappa_inverse(t: f64) -> f64 {
    let u = 2.0 * t - 1.0;
    u / (1.0 - u.abs())
}

/// Action of a lifted element on the end compactification `[0, 1]` of the
/// real line.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TildeIntervalAction {
    pub x: LiftedElement,
}

impl TildeIntervalAction {
    pub fn eval(&self, t: f64) -> f64 {
        if t <= 0.0 {
            0.0
        } else if t >= 1.0 {
            1.0
        } else {
            kappa(self.x.eval(kappa_inverse(t)))
        }
    }

    /// PL interpolant at `nodes + 1` equally spaced points.
    pub fn to_pl(&self, nodes: usize) -> Result<PlIntervalHomeo, PlError> {
        PlIntervalHomeo::from_samples((0..=nodes).map(|i| i as f64 / nodes as f64), |t| self.eval(t))
    }
}

pub fn tilde_interval_action(x: &LiftedElement) -> TildeIntervalAction {
    TildeIntervalAction { x: *x }
}

/// `f` rescaled onto `arc`, identity elsewhere.
pub fn implant(f: &PlIntervalHomeo, arc: &Arc) -> Result<PlCircleHomeo, PlError> {
    let len = arc.len();
    if !(len > 0.0) || len > 1.0 {
        return Err(PlError::PreconditionViolation("arc length must lie in (0, 1]".into()));
    }
    let s = arc.start;
    let disp = |x: f64| {
        let u = (x - s) - (x - s).floor();
        if u <= len {
            len * (f.eval(u / len) - u / len)
        } else {
            0.0
        }
    };
    let nodes: Vec<f64> = f.xs.iter().map(|&x| s + len * x).collect();
    PlCircleHomeo::from_lift_samples(nodes, |x| x + disp(x))
}
