//! Arithmetic in SL(2,R) and PSL(2,R), the Lie algebra sl(2,R), and the
//! action of PSL(2,R) on the boundary circle RP^1.
//!
//! The boundary circle is parameterized by `t in [0,1)`, the line through the
//! origin at angle `pi * t`. A rotation matrix `R(alpha)` therefore acts as
//! `t -> t + alpha / pi`.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::fmt;
use std::ops::Mul;

/// Entries below this magnitude are skipped when choosing the sign of a
/// projective representative.
pub const SIGN_THRESHOLD: f64 = 1e-12;
/// Determinant drift that triggers renormalization.
pub const DET_DRIFT: f64 = 1e-14;
/// Trace tolerance used by [`classify`].
pub const CLASSIFY_TOL: f64 = 1e-10;

/// A real 2x2 matrix `[[a, b], [c, d]]` with determinant one.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Sl2Matrix {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl Sl2Matrix {
    pub const IDENTITY: Sl2Matrix = Sl2Matrix { a: 1.0, b: 0.0, c: 0.0, d: 1.0 };

    /// Builds a matrix and rescales it onto det = 1 if the input drifts.
    ///
    /// Panics if the determinant is not positive; every caller in this crate
    /// produces matrices with determinant close to one.
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        Sl2Matrix { a, b, c, d }.renormalized()
    }

    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(&self) -> f64 {
        self.a + self.d
    }

    /// `trace - 2`, computed as `bc - (a-1)(d-1)` to avoid cancellation near
    /// the identity. Valid because det = 1.
    pub fn trace_minus_two(&self) -> f64 {
        self.b * self.c - (self.a - 1.0) * (self.d - 1.0)
    }

    /// `trace + 2`, the same identity applied to `-M`.
    pub fn trace_plus_two(&self) -> f64 {
        (self.a + 1.0) * (self.d + 1.0) - self.b * self.c
    }

    fn renormalized(self) -> Self {
        let det = self.det();
        assert!(det > 0.0, "SL(2,R) matrix with non-positive determinant {det}");
        if (det - 1.0).abs() > DET_DRIFT {
            let s = det.sqrt();
            Sl2Matrix { a: self.a / s, b: self.b / s, c: self.c / s, d: self.d / s }
        } else {
            self
        }
    }

    pub fn inverse(&self) -> Self {
        Sl2Matrix { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    pub fn neg(&self) -> Self {
        Sl2Matrix { a: -self.a, b: -self.b, c: -self.c, d: -self.d }
    }

    pub fn entries(&self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    /// Max-norm distance between entries.
    pub fn max_dist(&self, other: &Sl2Matrix) -> f64 {
        self.entries()
            .iter()
            .zip(other.entries().iter())
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max)
    }

    /// Image of the column vector `(x, y)`.
    pub fn apply(&self, x: f64, y: f64) -> (f64, f64) {
        (self.a * x + self.b * y, self.c * x + self.d * y)
    }
}

impl Mul for Sl2Matrix {
    type Output = Sl2Matrix;

    fn mul(self, o: Sl2Matrix) -> Sl2Matrix {
        Sl2Matrix::new(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )
    }
}

/// An element of PSL(2,R): a determinant-one matrix whose first entry of
/// magnitude above [`SIGN_THRESHOLD`] is positive.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(from = "Sl2Matrix", into = "Sl2Matrix")]
pub struct ProjMatrix {
    m: Sl2Matrix,
}

impl From<Sl2Matrix> for ProjMatrix {
    fn from(m: Sl2Matrix) -> Self {
        ProjMatrix::from_sl2(m)
    }
}

impl From<ProjMatrix> for Sl2Matrix {
    fn from(p: ProjMatrix) -> Self {
        p.m
    }
}

impl ProjMatrix {
    pub const IDENTITY: ProjMatrix = ProjMatrix { m: Sl2Matrix::IDENTITY };

    pub fn from_sl2(m: Sl2Matrix) -> Self {
        ProjMatrix { m: canonicalize(m.renormalized()) }
    }

    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        Self::from_sl2(Sl2Matrix::new(a, b, c, d))
    }

    pub fn matrix(&self) -> Sl2Matrix {
        self.m
    }

    /// Counterclockwise rotation `R(alpha)`; acts on the circle as `t -> t + alpha/pi`.
    pub fn rotation(alpha: f64) -> Self {
        let (s, c) = alpha.sin_cos();
        Self::from_sl2(Sl2Matrix { a: c, b: -s, c: s, d: c })
    }

    pub fn diag(lambda: f64) -> Self {
        Self::new(lambda, 0.0, 0.0, 1.0 / lambda)
    }

    pub fn inverse(&self) -> Self {
        Self::from_sl2(self.m.inverse())
    }

    pub fn compose(&self, other: &ProjMatrix) -> Self {
        compose(self, other)
    }

    /// Entrywise max-norm distance in PSL, i.e. the smaller of the distances
    /// to the two lifts of `other`.
    pub fn dist(&self, other: &ProjMatrix) -> f64 {
        let p = self.m.max_dist(&other.m);
        let n = self.m.max_dist(&other.m.neg());
        p.min(n)
    }

    pub fn dist_to_identity(&self) -> f64 {
        self.dist(&ProjMatrix::IDENTITY)
    }

    pub fn conjugate_by(&self, g: &ProjMatrix) -> Self {
        g.compose(self).compose(&g.inverse())
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(ProjMatrix::IDENTITY, |acc, _| acc.compose(self))
    }
}

impl Mul for ProjMatrix {
    type Output = ProjMatrix;

    fn mul(self, o: ProjMatrix) -> ProjMatrix {
        compose(&self, &o)
    }
}

impl fmt::Display for ProjMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.m.a, self.m.b, self.m.c, self.m.d)
    }
}

fn canonicalize(m: Sl2Matrix) -> Sl2Matrix {
    match m.entries().iter().find(|x| x.abs() > SIGN_THRESHOLD) {
        Some(x) if *x < 0.0 => m.neg(),
        _ => m,
    }
}

pub fn compose(x: &ProjMatrix, y: &ProjMatrix) -> ProjMatrix {
    ProjMatrix::from_sl2(x.m * y.m)
}

pub fn commutator(x: &ProjMatrix, y: &ProjMatrix) -> ProjMatrix {
    ProjMatrix::from_sl2(x.m * y.m * x.m.inverse() * y.m.inverse())
}

/// Coefficients in the basis `(H, E, F)` of sl(2,R).
///
/// `E = [[1,0],[0,-1]]` and `F = [[0,1],[1,0]]` generate boosts and
/// `H = [E,F] = EF - FE = [[0,2],[-2,0]]` generates rotations
/// (`exp(sH) = R(-2s)`).
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct LieVec {
    pub h: f64,
    pub e: f64,
    pub f: f64,
}

impl LieVec {
    pub const H: LieVec = LieVec { h: 1.0, e: 0.0, f: 0.0 };
    pub const E: LieVec = LieVec { h: 0.0, e: 1.0, f: 0.0 };
    pub const F: LieVec = LieVec { h: 0.0, e: 0.0, f: 1.0 };

    pub fn new(h: f64, e: f64, f: f64) -> Self {
        LieVec { h, e, f }
    }

    pub fn scale(&self, s: f64) -> Self {
        LieVec { h: s * self.h, e: s * self.e, f: s * self.f }
    }

    pub fn add(&self, o: &LieVec) -> Self {
        LieVec { h: self.h + o.h, e: self.e + o.e, f: self.f + o.f }
    }

    /// Euclidean norm of the coefficient vector.
    pub fn norm(&self) -> f64 {
        (self.h * self.h + self.e * self.e + self.f * self.f).sqrt()
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.h, self.e, self.f]
    }

    pub fn from_array(v: [f64; 3]) -> Self {
        LieVec { h: v[0], e: v[1], f: v[2] }
    }

    /// The traceless matrix `[[p, q], [r, -p]]` as `(p, q, r)`.
    pub fn to_matrix(&self) -> (f64, f64, f64) {
        (self.e, self.f + 2.0 * self.h, self.f - 2.0 * self.h)
    }

    pub fn from_matrix(p: f64, q: f64, r: f64) -> Self {
        LieVec { h: (q - r) / 4.0, e: p, f: (q + r) / 2.0 }
    }

    /// Matrix commutator `XY - YX` expressed in the same basis.
    pub fn bracket(&self, o: &LieVec) -> LieVec {
        let (p1, q1, r1) = self.to_matrix();
        let (p2, q2, r2) = o.to_matrix();
        // [[p1,q1],[r1,-p1]] * [[p2,q2],[r2,-p2]] minus the reverse product.
        let p = q1 * r2 - r1 * q2;
        let q = 2.0 * (p1 * q2 - q1 * p2);
        let r = 2.0 * (r1 * p2 - p1 * r2);
        LieVec::from_matrix(p, q, r)
    }
}

/// Closed-form exponential of a traceless 2x2 matrix:
/// `exp(X) = cosh(rho) I + sinh(rho)/rho X` with `rho^2 = -det X`.
pub fn exp_sl2(v: &LieVec) -> ProjMatrix {
    let (p, q, r) = v.to_matrix();
    let rho2 = p * p + q * r;
    let (c, s) = if rho2.abs() < 1e-8 {
        // Taylor series; the truncation error is below 1e-33.
        (
            1.0 + rho2 / 2.0 + rho2 * rho2 / 24.0 + rho2 * rho2 * rho2 / 720.0,
            1.0 + rho2 / 6.0 + rho2 * rho2 / 120.0 + rho2 * rho2 * rho2 / 5040.0,
        )
    } else if rho2 > 0.0 {
        let rho = rho2.sqrt();
        (rho.cosh(), rho.sinh() / rho)
    } else {
        let w = (-rho2).sqrt();
        (w.cos(), w.sin() / w)
    };
    ProjMatrix::from_sl2(Sl2Matrix::new(c + s * p, s * q, s * r, c - s * p))
}

/// Conjugacy type of an element of PSL(2,R).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Classification {
    Identity,
    /// Conjugate to `R(angle)` with `angle in (0, pi)`; the rotation number
    /// of the action on the circle is `angle / pi`.
    Elliptic(f64),
    Parabolic,
    /// Hyperbolic with the given translation length `2 acosh(|tr|/2)`.
    Hyperbolic(f64),
}

impl Classification {
    pub fn is_elliptic(&self) -> bool {
        matches!(self, Classification::Elliptic(_))
    }

    /// Rotation as a circle fraction in `(0, 1)` for elliptic elements.
    pub fn circle_fraction(&self) -> Option<f64> {
        match self {
            Classification::Elliptic(a) => Some(a / PI),
            _ => None,
        }
    }
}

pub fn classify(x: &ProjMatrix) -> Classification {
    let m = x.m;
    if x.dist_to_identity() <= CLASSIFY_TOL {
        return Classification::Identity;
    }
    // Pick the sign with non-negative trace; both deviations are accurate.
    let (tm2, tp2, m) = if m.trace() >= 0.0 {
        (m.trace_minus_two(), m.trace_plus_two(), m)
    } else {
        let n = m.neg();
        (n.trace_minus_two(), n.trace_plus_two(), n)
    };
    if tm2 < -CLASSIFY_TOL {
        // 4 - tr^2 = -(tr-2)(tr+2) = 4 sin^2(phi)
        let sin_abs = ((-tm2) * tp2).sqrt() / 2.0;
        let cos = (tm2 + 2.0) / 2.0;
        // The sign of the lower-left entry is the sign of sin(phi) and is a
        // conjugacy invariant for elliptic elements of SL(2,R).
        let phi = if m.c > 0.0 { sin_abs.atan2(cos) } else { (-sin_abs).atan2(cos) };
        let angle = if phi > 0.0 { phi } else { phi + PI };
        Classification::Elliptic(angle)
    } else if tm2 > CLASSIFY_TOL {
        let half = (tm2 + 2.0) / 2.0;
        Classification::Hyperbolic(2.0 * half.acosh())
    } else {
        Classification::Parabolic
    }
}

/// A point of RP^1, the line at angle `pi * t`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct CirclePoint(f64);

impl CirclePoint {
    pub fn new(t: f64) -> Self {
        CirclePoint(wrap_unit(t))
    }

    pub fn t(&self) -> f64 {
        self.0
    }
}

/// Reduces into `[0, 1)`.
pub fn wrap_unit(t: f64) -> f64 {
    let r = t - t.floor();
    if r >= 1.0 || r == 0.0 {
        0.0
    } else {
        r
    }
}

/// Signed circle difference reduced into `[-1/2, 1/2)`.
pub fn circle_diff(a: f64, b: f64) -> f64 {
    let d = a - b;
    d - (d + 0.5).floor()
}

pub fn circle_dist(a: f64, b: f64) -> f64 {
    circle_diff(a, b).abs()
}

/// Angle of a nonzero vector as a line parameter in `[0, 1)`.
pub fn line_param(x: f64, y: f64) -> f64 {
    wrap_unit(y.atan2(x) / PI)
}

pub fn act_t(x: &ProjMatrix, t: f64) -> f64 {
    let (s, c) = (PI * t).sin_cos();
    let (u, v) = x.m.apply(c, s);
    line_param(u, v)
}

pub fn act(x: &ProjMatrix, p: CirclePoint) -> CirclePoint {
    CirclePoint(act_t(x, p.t()))
}

pub const DIST_GRID: usize = 2048;

/// Sup-norm distance from the circle action of `x` to the nearest rotation,
/// in circle-fraction units.
///
/// The displacement of the continuous lift is sampled on a grid of
/// `grid` points; the optimal rotation offset is located by golden-section
/// search and the extremal displacements are then refined locally, so the
/// reported value is accurate well beyond the grid spacing.
pub fn dist_to_rotations_grid(x: &ProjMatrix, grid: usize) -> f64 {
    let disp = |t: f64| crate::ucover::lift_eval_unit(x, t) - t;
    let samples: Vec<(f64, f64)> = (0..grid)
        .map(|i| {
            let t = i as f64 / grid as f64;
            (t, disp(t))
        })
        .collect();
    let lo = samples.iter().map(|s| s.1).fold(f64::INFINITY, f64::min);
    let hi = samples.iter().map(|s| s.1).fold(f64::NEG_INFINITY, f64::max);
    if hi - lo < 1e-15 {
        return 0.0;
    }
    // Refine the extremal displacements around their grid locations.
    let h = 1.0 / grid as f64;
    let argmax = samples.iter().copied().max_by(|p, q| p.1.total_cmp(&q.1)).unwrap().0;
    let argmin = samples.iter().copied().min_by(|p, q| p.1.total_cmp(&q.1)).unwrap().0;
    let top = disp(golden_min(|t| -disp(t), argmax - h, argmax + h, 1e-14)).max(hi);
    let bottom = disp(golden_min(disp, argmin - h, argmin + h, 1e-14)).min(lo);
    // Best rotation offset.
    let cost = |beta: f64| (top - beta).abs().max((beta - bottom).abs());
    let beta = golden_min(cost, bottom, top, 1e-15);
    cost(beta)
}

pub fn dist_to_rotations(x: &ProjMatrix) -> f64 {
    dist_to_rotations_grid(x, DIST_GRID)
}

/// Golden-section minimization of a unimodal function on `[a, b]`.
pub(crate) fn golden_min(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> f64 {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..200 {
        if (b - a).abs() < tol {
            break;
        }
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    (a + b) / 2.0
}
