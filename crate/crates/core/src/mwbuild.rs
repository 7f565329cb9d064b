//! Constructors for surface-group representations into PSL(2,R) whose
//! generators are close to rotations and whose Euler class is prescribed.
//!
//! Every builder starts from pairs of small boosts `(exp(eps F), exp(eps E))`.
//! Their commutator is elliptic with rotation `theta(eps) ~ c0 eps^2` (circle
//! fractions), so roughly `|chi| / theta` pairs are needed to wind the lifted
//! relator `chi` times around. The three methods differ in how the leftover
//! discrepancy is removed:
//!
//! 1. shrink `eps` so `g theta = |chi|` exactly and conjugate the commutator
//!    into the rotation subgroup;
//! 2. keep `eps`, and absorb the residual rotation with extra "patch" pairs
//!    found by [`solve_commutator`];
//! 3. keep every pair but the last, and solve for the last pair exactly.

use crate::psl2::{classify, commutator, exp_sl2, Classification, LieVec, ProjMatrix, Sl2Matrix};
use crate::ucover::{self, EulerError, SurfaceRep};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use thiserror::Error;

pub const MAX_BUILD_EPS: f64 = 0.2;
pub const MAX_ANGLE_EPS: f64 = 0.5;
/// Relator defect accepted from a builder.
pub const BUILD_DEFECT_TOL: f64 = 1e-8;
/// Slack added to `eps` when checking generator distances to rotations.
pub const DIST_SLACK: f64 = 1e-4;
/// Tikhonov weight on the Newton update.
pub const NEWTON_TIKHONOV: f64 = 1e-8;
pub const NEWTON_MAX_ITER: usize = 100;
/// Required accuracy of [`solve_commutator`] (entrywise).
pub const SOLVE_TOL: f64 = 1e-10;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SolveError {
    #[error("target is not elliptic or exceeds the reachable angle {max_angle} (got {angle})")]
    TargetOutOfRange { angle: f64, max_angle: f64 },
    #[error("Newton iteration did not converge; residual history {history:?}")]
    NoConvergence { history: Vec<f64> },
    #[error("solution norm {norm} exceeds bound {bound}")]
    BoundExceeded { norm: f64, bound: f64 },
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BuildError {
    #[error("eps = {0} must lie in (0, {MAX_BUILD_EPS}]")]
    EpsTooLarge(f64),
    #[error("eps = {0} must lie in (0, {MAX_ANGLE_EPS}]")]
    InvalidEps(f64),
    #[error("boost commutator at eps = {0} is not elliptic")]
    NotElliptic(f64),
    #[error("method must be 1, 2 or 3 (got {0})")]
    UnknownMethod(u8),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Euler(#[from] EulerError),
    #[error("built representation failed verification: {0}")]
    Verification(String),
}

/// Signed rotation of an element near the identity, as a circle fraction in
/// `[-1/2, 1/2)`. `None` for hyperbolic elements and parabolics away from
/// the identity.
pub fn signed_rotation(x: &ProjMatrix) -> Option<f64> {
    match classify(x) {
        Classification::Elliptic(a) => {
            let f = a / PI;
            Some(if f < 0.5 { f } else { f - 1.0 })
        }
        Classification::Identity => {
            let t = ucover::translation_number(&ucover::canonical_lift(x));
            Some(t - t.round())
        }
        Classification::Parabolic if x.dist_to_identity() < 1e-6 => {
            let t = ucover::translation_number(&ucover::canonical_lift(x));
            Some(t - t.round())
        }
        _ => None,
    }
}

/// The boost pair whose commutator rotates in the direction of `sign`.
pub fn boost_pair(eps: f64, sign: i64) -> (ProjMatrix, ProjMatrix) {
    let e = exp_sl2(&LieVec::E.scale(eps));
    let f = exp_sl2(&LieVec::F.scale(eps));
    if sign >= 0 {
        (f, e)
    } else {
        (e, f)
    }
}

/// Rotation (circle fraction) of `[exp(eps E), exp(eps F)]`.
///
/// The commutator rotates clockwise; the magnitude is returned.
pub fn commutator_angle(eps: f64) -> Result<f64, BuildError> {
    if !(eps > 0.0 && eps <= MAX_ANGLE_EPS) {
        return Err(BuildError::InvalidEps(eps));
    }
    let c = commutator(&exp_sl2(&LieVec::E.scale(eps)), &exp_sl2(&LieVec::F.scale(eps)));
    match classify(&c) {
        Classification::Elliptic(a) => {
            let f = a / PI;
            Ok(if f < 0.5 { f } else { 1.0 - f })
        }
        _ => Err(BuildError::NotElliptic(eps)),
    }
}

fn theta(eps: f64) -> f64 {
    commutator_angle(eps).expect("eps within (0, 0.5]")
}

/// Smallest `eps` in `(0, hi]` with `theta(eps) >= target` (to rounding).
fn invert_theta(target: f64, hi: f64) -> f64 {
    let (mut lo, mut hi) = (0.0f64, hi);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if theta(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    hi
}

/// Constants of the genus law `g ~ |chi| / (c0 eps^2 (1 - K eps))`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Calibration {
    /// `lim theta(eps) / eps^2`.
    pub c0: f64,
    /// Coefficient of the `O(1/eps)` genus correction.
    pub k: f64,
}

impl Default for Calibration {
    /// Values produced by [`calibrate`] on [`calibration_grid`].
    fn default() -> Self {
        Calibration { c0: 0.636_605_721_920_297_5, k: 0.180_301 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CalibrationReport {
    pub calibration: Calibration,
    /// Log-log slope of theta against eps.
    pub slope: f64,
    pub grid: Vec<f64>,
    pub theta: Vec<f64>,
}

/// `0.0125 * 2^(i/2)` for `i = 0..=8`, spanning `[0.0125, 0.2]`.
pub fn calibration_grid() -> Vec<f64> {
    (0..=8).map(|i| 0.0125 * 2f64.powf(i as f64 / 2.0)).collect()
}

/// Least-squares slope of `y` against `x`.
pub fn ls_slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    sxy / sxx
}

pub fn log_log_slope(eps: &[f64]) -> Result<f64, BuildError> {
    let th = eps.iter().map(|&e| commutator_angle(e)).collect::<Result<Vec<_>, _>>()?;
    let lx: Vec<f64> = eps.iter().map(|e| e.ln()).collect();
    let ly: Vec<f64> = th.iter().map(|t| t.ln()).collect();
    Ok(ls_slope(&lx, &ly))
}

/// Fits the genus-law constants.
///
/// `c0` is the intercept of the least-squares fit `theta/eps^2 = c0 + c2 eps^2`
/// (the expansion of `theta` is even in `eps`). `K` is the smallest constant,
/// rounded up to 1e-6, for which the genus law dominates `|chi|/theta + 2`
/// at `|chi| = 1` on the whole grid; the builders never use more genera than
/// that.
pub fn calibrate(grid: &[f64]) -> Result<CalibrationReport, BuildError> {
    let th = grid.iter().map(|&e| commutator_angle(e)).collect::<Result<Vec<_>, _>>()?;
    let slope = log_log_slope(grid)?;
    let x: Vec<f64> = grid.iter().map(|e| e * e).collect();
    let y: Vec<f64> = grid.iter().zip(&th).map(|(e, t)| t / (e * e)).collect();
    let c2 = ls_slope(&x, &y);
    let n = x.len() as f64;
    let c0 = y.iter().sum::<f64>() / n - c2 * x.iter().sum::<f64>() / n;
    let k = grid
        .iter()
        .zip(&th)
        .map(|(e, t)| (1.0 - 1.0 / (c0 * e * e * (1.0 / t + 2.0))) / e)
        .fold(0.0, f64::max);
    let k = (k * 1e6).ceil() / 1e6;
    Ok(CalibrationReport { calibration: Calibration { c0, k }, slope, grid: grid.to_vec(), theta: th })
}

/// Upper bound `ceil(|chi| / (c0 eps^2 (1 - K eps)))` on the genus used by
/// the builders.
pub fn genus_bound(chi: i64, eps: f64, cal: &Calibration) -> u64 {
    if chi == 0 {
        return 0;
    }
    let denom = cal.c0 * eps * eps * (1.0 - cal.k * eps);
    if denom <= 0.0 {
        return u64::MAX;
    }
    (chi.unsigned_abs() as f64 / denom).ceil() as u64
}

/// Output of one construction.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BuildReport {
    pub method: u8,
    pub chi: i64,
    pub epsilon_requested: f64,
    pub epsilon_used: f64,
    pub genus: usize,
    pub defect: f64,
    pub euler: i64,
    pub max_dist_to_rotations: f64,
    /// Rotation of one main commutator, in circle fractions.
    pub theta_per_commutator: f64,
    /// Genera spent on correction (method 2 patches, method 3 solved pair).
    pub correction_pairs: usize,
    /// Largest Lie-algebra norm among solved generators, if any were solved.
    pub solved_norm: Option<f64>,
    pub rep: SurfaceRep,
}

fn check_eps(eps: f64) -> Result<(), BuildError> {
    if eps > 0.0 && eps <= MAX_BUILD_EPS {
        Ok(())
    } else {
        Err(BuildError::EpsTooLarge(eps))
    }
}

fn trivial_report(method: u8, eps: f64) -> BuildReport {
    BuildReport {
        method,
        chi: 0,
        epsilon_requested: eps,
        epsilon_used: 0.0,
        genus: 0,
        defect: 0.0,
        euler: 0,
        max_dist_to_rotations: 0.0,
        theta_per_commutator: 0.0,
        correction_pairs: 0,
        solved_norm: None,
        rep: SurfaceRep::trivial(0),
    }
}

/// Largest distance to rotations over the distinct generators.
pub fn max_generator_dist(rep: &SurfaceRep) -> f64 {
    let mut seen: Vec<ProjMatrix> = Vec::new();
    let mut worst = 0.0f64;
    for g in &rep.gens {
        if !seen.contains(g) {
            seen.push(*g);
            worst = worst.max(crate::psl2::dist_to_rotations(g));
        }
    }
    worst
}

/// `P` with `P(i) = z` in the upper half-plane, for the elliptic fixed point
/// `z` of `c`. Conjugating `c` by `P^-1` gives a rotation.
pub fn elliptic_center(c: &ProjMatrix) -> ProjMatrix {
    let mut m = c.matrix();
    if m.trace() < 0.0 {
        m = m.neg();
    }
    let neg_disc = -(m.trace_minus_two() * m.trace_plus_two());
    let x = (m.a - m.d) / (2.0 * m.c);
    let y = neg_disc.max(0.0).sqrt() / (2.0 * m.c.abs());
    let sy = y.sqrt();
    ProjMatrix::new(sy, x / sy, 0.0, 1.0 / sy)
}

#[allow(clippy::too_many_arguments)]
fn finish(
    method: u8,
    chi: i64,
    eps: f64,
    eps_used: f64,
    theta: f64,
    correction_pairs: usize,
    solved_norm: Option<f64>,
    rep: SurfaceRep,
) -> Result<BuildReport, BuildError> {
    let defect = ucover::relator_defect(&rep);
    let euler = ucover::euler_class(&rep)?;
    let max_dist = max_generator_dist(&rep);
    let report = BuildReport {
        method,
        chi,
        epsilon_requested: eps,
        epsilon_used: eps_used,
        genus: rep.genus,
        defect,
        euler,
        max_dist_to_rotations: max_dist,
        theta_per_commutator: theta,
        correction_pairs,
        solved_norm,
        rep,
    };
    if defect > BUILD_DEFECT_TOL {
        return Err(BuildError::Verification(format!("defect {defect:e}")));
    }
    if euler != chi {
        return Err(BuildError::Verification(format!("euler class {euler}, requested {chi}")));
    }
    if max_dist > eps + DIST_SLACK {
        return Err(BuildError::Verification(format!("generator distance {max_dist} > eps {eps}")));
    }
    Ok(report)
}

/// Method 1: equal pairs of conjugated boosts whose commutators are exact
/// rotations by `|chi| / g`.
pub fn build_method1(chi: i64, eps: f64) -> Result<BuildReport, BuildError> {
    check_eps(eps)?;
    if chi == 0 {
        return Ok(trivial_report(1, eps));
    }
    let sign = chi.signum();
    let n = chi.unsigned_abs() as f64;
    let mut cap = eps;
    let mut last_err = None;
    for _ in 0..=20 {
        let genus = (n / theta(cap)).ceil() as usize;
        let target = n / genus as f64;
        let eps_used = invert_theta(target, cap);
        let (a, b) = boost_pair(eps_used, sign);
        let center = elliptic_center(&commutator(&a, &b));
        let gamma = center.inverse();
        let a = a.conjugate_by(&gamma);
        let b = b.conjugate_by(&gamma);
        if crate::psl2::dist_to_rotations(&a).max(crate::psl2::dist_to_rotations(&b)) > eps {
            cap *= 0.9;
            last_err = Some(BuildError::Verification("conjugated generators left the eps-ball".into()));
            continue;
        }
        let gens = [a, b].repeat(genus).into_iter().collect();
        let rep = SurfaceRep { genus, gens };
        return finish(1, chi, eps, eps_used, theta(eps_used), 0, None, rep);
    }
    Err(last_err.unwrap())
}

/// Result of [`solve_commutator`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CommutatorSolution {
    pub a: ProjMatrix,
    pub b: ProjMatrix,
    pub xi: LieVec,
    pub eta: LieVec,
    /// Entrywise distance of `[a, b]` from the target.
    pub residual: f64,
    /// Residual norm after each Newton iteration (the seed first).
    pub history: Vec<f64>,
}

fn unpack(u: &[f64; 6]) -> (LieVec, LieVec) {
    (LieVec::new(u[0], u[1], u[2]), LieVec::new(u[3], u[4], u[5]))
}

/// Coordinates of `target^-1 [exp xi, exp eta]` in the chart `X -> X - I`.
fn commutator_residual(target_inv: &Sl2Matrix, u: &[f64; 6]) -> [f64; 3] {
    let (xi, eta) = unpack(u);
    let c = commutator(&exp_sl2(&xi), &exp_sl2(&eta)).matrix();
    let mut x = *target_inv * c;
    if x.a + x.d < 0.0 {
        x = x.neg();
    }
    [(x.a - x.d) / 2.0, x.b, x.c]
}

fn norm3(v: &[f64; 3]) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

fn solve3(m: [[f64; 3]; 3], r: [f64; 3]) -> [f64; 3] {
    let det = |m: &[[f64; 3]; 3]| {
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    };
    let d = det(&m);
    let mut out = [0.0; 3];
    for (k, o) in out.iter_mut().enumerate() {
        let mut mk = m;
        for i in 0..3 {
            mk[i][k] = r[i];
        }
        *o = det(&mk) / d;
    }
    out
}

/// Writes an elliptic `target` near the identity as a commutator
/// `[exp(xi), exp(eta)]` with `|xi|, |eta| <= bound`.
///
/// Newton iteration on the six coefficients, seeded with the boost pair whose
/// commutator has the target's rotation. Each step is the Tikhonov-regularized
/// minimal-norm solution of the linearized 3x6 system, halved until the
/// residual decreases.
pub fn solve_commutator(target: &ProjMatrix, bound: f64) -> Result<CommutatorSolution, SolveError> {
    if target.dist_to_identity() <= 1e-14 {
        return Ok(CommutatorSolution {
            a: ProjMatrix::IDENTITY,
            b: ProjMatrix::IDENTITY,
            xi: LieVec::default(),
            eta: LieVec::default(),
            residual: target.dist_to_identity(),
            history: vec![],
        });
    }
    let max_angle = commutator_angle(bound.min(MAX_ANGLE_EPS)).unwrap_or(0.0);
    let angle = match signed_rotation(target) {
        Some(a) => a,
        None => return Err(SolveError::TargetOutOfRange { angle: f64::NAN, max_angle }),
    };
    if angle.abs() > max_angle {
        return Err(SolveError::TargetOutOfRange { angle, max_angle });
    }
    let s = invert_theta(angle.abs(), bound.min(MAX_ANGLE_EPS));
    let (p, q) = if angle >= 0.0 { (LieVec::F, LieVec::E) } else { (LieVec::E, LieVec::F) };
    let mut u = [0.0; 6];
    u[..3].copy_from_slice(&p.scale(s).as_array());
    u[3..].copy_from_slice(&q.scale(s).as_array());

    let tinv = target.matrix().inverse();
    let mut r = commutator_residual(&tinv, &u);
    let mut history = vec![norm3(&r)];
    let fd = 1e-6 * s.max(1e-3);
    for _ in 0..NEWTON_MAX_ITER {
        if r.iter().all(|v| v.abs() < 1e-15) {
            break;
        }
        // central-difference Jacobian, 3x6
        let mut jac = [[0.0; 6]; 3];
        for j in 0..6 {
            let mut up = u;
            let mut dn = u;
            up[j] += fd;
            dn[j] -= fd;
            let rp = commutator_residual(&tinv, &up);
            let rn = commutator_residual(&tinv, &dn);
            for i in 0..3 {
                jac[i][j] = (rp[i] - rn[i]) / (2.0 * fd);
            }
        }
        // du = -J^T (J J^T + lambda I)^-1 r
        let mut jjt = [[0.0; 3]; 3];
        for i in 0..3 {
            for k in 0..3 {
                jjt[i][k] = (0..6).map(|j| jac[i][j] * jac[k][j]).sum::<f64>()
                    + if i == k { NEWTON_TIKHONOV * s * s } else { 0.0 };
            }
        }
        let y = solve3(jjt, r);
        let du: Vec<f64> = (0..6).map(|j| -(0..3).map(|i| jac[i][j] * y[i]).sum::<f64>()).collect();
        let current = norm3(&r);
        let mut step = 1.0;
        let mut accepted = false;
        for _ in 0..40 {
            let mut trial = u;
            for j in 0..6 {
                trial[j] += step * du[j];
            }
            let rt = commutator_residual(&tinv, &trial);
            if norm3(&rt) < current {
                u = trial;
                r = rt;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        history.push(norm3(&r));
        if !accepted {
            break;
        }
    }
    let (xi, eta) = unpack(&u);
    let a = exp_sl2(&xi);
    let b = exp_sl2(&eta);
    let residual = commutator(&a, &b).dist(target);
    if !(residual <= SOLVE_TOL) {
        return Err(SolveError::NoConvergence { history });
    }
    let norm = xi.norm().max(eta.norm());
    if norm > bound {
        return Err(SolveError::BoundExceeded { norm, bound });
    }
    Ok(CommutatorSolution { a, b, xi, eta, residual, history })
}

/// Method 2: `p = round(|chi| / theta)` boost pairs, followed by `k` patch
/// pairs whose commutators are equal roots of the leftover rotation.
pub fn build_method2(chi: i64, eps: f64) -> Result<BuildReport, BuildError> {
    check_eps(eps)?;
    if chi == 0 {
        return Ok(trivial_report(2, eps));
    }
    let sign = chi.signum();
    let (a, b) = boost_pair(eps, sign);
    let c = commutator(&a, &b);
    let th = signed_rotation(&c).ok_or(BuildError::NotElliptic(eps))?;
    let main = (chi as f64 / th).round().max(0.0) as usize;
    let discrepancy = chi as f64 - main as f64 * th;
    let patches = if discrepancy.abs() < 1e-15 { 0 } else { (discrepancy.abs() / th.abs()).ceil() as usize };

    let mut gens: Vec<ProjMatrix> = [a, b].repeat(main);
    let mut solved_norm = None;
    if patches > 0 {
        let center = elliptic_center(&c);
        let root = ProjMatrix::rotation(PI * discrepancy / patches as f64).conjugate_by(&center);
        let sol = solve_commutator(&root, eps)?;
        solved_norm = Some(sol.xi.norm().max(sol.eta.norm()));
        gens.extend([sol.a, sol.b].repeat(patches));
    }
    let rep = SurfaceRep { genus: main + patches, gens };
    finish(2, chi, eps, eps, th.abs(), patches, solved_norm, rep)
}

/// Method 3: `g - 1` boost pairs held fixed and a last pair solved so the
/// lifted relator is exactly the deck translation by `chi`.
pub fn build_method3(chi: i64, eps: f64) -> Result<BuildReport, BuildError> {
    check_eps(eps)?;
    if chi == 0 {
        return Ok(trivial_report(3, eps));
    }
    let sign = chi.signum();
    let (a, b) = boost_pair(eps, sign);
    let c = commutator(&a, &b);
    let th = signed_rotation(&c).ok_or(BuildError::NotElliptic(eps))?.abs();
    let main = (chi.unsigned_abs() as f64 / th).floor() as usize;
    let partial = (0..main).fold(ProjMatrix::IDENTITY, |acc, _| acc.compose(&c));
    let sol = solve_commutator(&partial.inverse(), 3.0 * eps)?;
    let mut gens: Vec<ProjMatrix> = [a, b].repeat(main);
    gens.extend([sol.a, sol.b]);
    let rep = SurfaceRep { genus: main + 1, gens };
    finish(3, chi, eps, eps, th, 1, Some(sol.xi.norm().max(sol.eta.norm())), rep)
}

pub fn build(method: u8, chi: i64, eps: f64) -> Result<BuildReport, BuildError> {
    match method {
        1 => build_method1(chi, eps),
        2 => build_method2(chi, eps),
        3 => build_method3(chi, eps),
        m => Err(BuildError::UnknownMethod(m)),
    }
}

/// Genus-2 representation from the side pairings of the regular hyperbolic
/// octagon with interior angles `pi/4`. Its Euler class is `+-2`.
pub fn fuchsian_octagon() -> SurfaceRep {
    // Side midpoints sit at distance r from the center with cosh r = cot(pi/8).
    let r = (1.0 / (PI / 8.0).tan()).acosh();
    let translate = ProjMatrix::diag(r.exp());
    // rotation of the disk by phi about the center i
    let rot = |phi: f64| ProjMatrix::rotation(phi / 2.0);
    // isometry carrying side j onto side k, moving the octagon across side k
    let pairing = |j: usize, k: usize| {
        rot(k as f64 * PI / 4.0).compose(&translate).compose(&rot(PI - j as f64 * PI / 4.0))
    };
    SurfaceRep {
        genus: 2,
        gens: vec![pairing(2, 0), pairing(1, 3), pairing(6, 4), pairing(5, 7)],
    }
}

/// One row of a sweep.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub chi: i64,
    pub eps: f64,
    pub method: u8,
    pub bound: u64,
    pub result: Result<BuildReport, String>,
}

/// Runs every `(chi, eps, method)` cell, in parallel, ordered by
/// `(chi, eps, method)` as given.
pub fn sweep(chis: &[i64], epss: &[f64], methods: &[u8], cal: &Calibration) -> Vec<SweepRow> {
    let cells: Vec<(i64, f64, u8)> = chis
        .iter()
        .flat_map(|&c| epss.iter().flat_map(move |&e| methods.iter().map(move |&m| (c, e, m))))
        .collect();
    cells
        .par_iter()
        .map(|&(chi, eps, method)| SweepRow {
            chi,
            eps,
            method,
            bound: genus_bound(chi, eps, cal),
            result: build(method, chi, eps).map_err(|e| e.to_string()),
        })
        .collect()
}
