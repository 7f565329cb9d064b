//! The universal cover of PSL(2,R) and Euler classes of surface-group
//! representations.
//!
//! A lift is stored as `(g, w)`: the canonical lift of `g` (the monotone lift
//! `F` of the circle action with `F(0) in [0,1)`) followed by the deck
//! translation `x -> x + w`.

use crate::psl2::{self, classify, commutator, Classification, ProjMatrix};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use thiserror::Error;

/// Relator defect above which the Euler class is not computed.
pub const EULER_DEFECT_TOL: f64 = 1e-8;
/// Allowed distance of the lifted relator's translation number from an integer.
pub const EULER_SNAP_TOL: f64 = 1e-6;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EulerError {
    #[error("relator defect {0:e} exceeds {EULER_DEFECT_TOL:e}")]
    DefectTooLarge(f64),
    #[error("lifted relator has translation number {0}, not within {EULER_SNAP_TOL:e} of an integer")]
    NonIntegral(f64),
    #[error("expected {expected} generators for genus {genus}, got {got}")]
    GeneratorCount { genus: usize, expected: usize, got: usize },
}

/// Canonical lift of `g` evaluated on `[0, 1)`.
///
/// The sweep from the image of the base line to the image of the line at
/// angle `pi t` is measured directly, so the result is continuous in `t` and
/// lies in `[F(0), F(0) + 1)`.
pub fn lift_eval_unit(g: &ProjMatrix, t: f64) -> f64 {
    let m = g.matrix();
    let (x0, y0) = (m.a, m.c);
    let (s, c) = (PI * t).sin_cos();
    let (x1, y1) = m.apply(c, s);
    let cross = x0 * y1 - y0 * x1;
    let dot = x0 * x1 + y0 * y1;
    // cross = det(m) sin(pi t) >= 0 on [0, 1)
    base_point(x0, y0) + cross.max(0.0).atan2(dot) / PI
}

/// `F(0)`, with values within rounding of 1 snapped to 0 so that lifts of
/// elements at the identity are stored as pure deck translations.
fn base_point(x0: f64, y0: f64) -> f64 {
    let t = psl2::line_param(x0, y0);
    if t > 1.0 - 1e-14 {
        0.0
    } else {
        t
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LiftedElement {
    pub g: ProjMatrix,
    pub w: i64,
}

impl LiftedElement {
    pub const IDENTITY: LiftedElement = LiftedElement { g: ProjMatrix::IDENTITY, w: 0 };

    pub fn new(g: ProjMatrix, w: i64) -> Self {
        LiftedElement { g, w }
    }

    pub fn deck(n: i64) -> Self {
        LiftedElement { g: ProjMatrix::IDENTITY, w: n }
    }

    /// Evaluates the lift at any real `x`.
    pub fn eval(&self, x: f64) -> f64 {
        let k = x.floor();
        let mut u = x - k;
        let mut k = k;
        if u >= 1.0 {
            u = 0.0;
            k += 1.0;
        }
        k + self.w as f64 + lift_eval_unit(&self.g, u)
    }

    pub fn compose(&self, other: &LiftedElement) -> Self {
        lift_compose(self, other)
    }

    pub fn inverse(&self) -> Self {
        lift_inverse(self)
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(LiftedElement::IDENTITY, |acc, _| acc.compose(self))
    }
}

pub fn canonical_lift(g: &ProjMatrix) -> LiftedElement {
    LiftedElement { g: *g, w: 0 }
}

/// The cocycle `sigma(g, h) = F_g(F_h(0)) - F_gh(0)`, always 0 or 1.
pub fn cocycle(g: &ProjMatrix, h: &ProjMatrix) -> i64 {
    let gh = g.compose(h);
    let fh0 = lift_eval_unit(h, 0.0);
    let lhs = lift_eval_unit(g, fh0);
    let rhs = lift_eval_unit(&gh, 0.0);
    (lhs - rhs).round() as i64
}

pub fn lift_compose(x: &LiftedElement, y: &LiftedElement) -> LiftedElement {
    LiftedElement { g: x.g.compose(&y.g), w: x.w + y.w + cocycle(&x.g, &y.g) }
}

pub fn lift_inverse(x: &LiftedElement) -> LiftedElement {
    let gi = x.g.inverse();
    LiftedElement { g: gi, w: -x.w - cocycle(&x.g, &gi) }
}

pub fn lift_commutator(x: &LiftedElement, y: &LiftedElement) -> LiftedElement {
    x.compose(y).compose(&x.inverse()).compose(&y.inverse())
}

fn fixed_point(g: &ProjMatrix) -> f64 {
    let m = g.matrix();
    let tr = m.trace();
    let lambda = if tr.abs() <= 2.0 {
        tr.signum()
    } else {
        let disc = (tr * tr - 4.0).sqrt();
        // attracting eigenvalue: larger magnitude
        (tr + tr.signum() * disc) / 2.0
    };
    let v1 = (m.b, lambda - m.a);
    let v2 = (lambda - m.d, m.c);
    let n1 = v1.0.hypot(v1.1);
    let n2 = v2.0.hypot(v2.1);
    let v = if n1 >= n2 { v1 } else { v2 };
    if v.0 == 0.0 && v.1 == 0.0 {
        0.0
    } else {
        psl2::line_param(v.0, v.1)
    }
}

/// Translation number of the canonical lift of `g`, in closed form.
fn canonical_translation(g: &ProjMatrix) -> f64 {
    match classify(g) {
        Classification::Elliptic(alpha) => alpha / PI,
        // Within the classification tolerance the displacement at the
        // (approximate) fixed line is kept unrounded: it is exact for true
        // parabolics and recovers tiny rotations.
        Classification::Identity => lift_eval_unit(g, 0.0),
        Classification::Parabolic => {
            let p = fixed_point(g);
            lift_eval_unit(g, p) - p
        }
        Classification::Hyperbolic(_) => {
            let p = fixed_point(g);
            (lift_eval_unit(g, p) - p).round()
        }
    }
}

pub fn translation_number(x: &LiftedElement) -> f64 {
    x.w as f64 + canonical_translation(&x.g)
}

/// Orbit-average estimate `F^n(0) / n`; the error is at most `1/n`.
pub fn translation_number_orbit(x: &LiftedElement, iterates: usize) -> f64 {
    let mut whole = 0.0f64;
    let mut frac = 0.0f64;
    for _ in 0..iterates {
        let y = x.eval(frac);
        let k = y.floor();
        whole += k;
        frac = y - k;
    }
    (whole + frac) / iterates as f64
}

/// A representation of the genus-`g` surface group, given by the images
/// `(a_1, b_1, ..., a_g, b_g)` of the standard generators.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SurfaceRep {
    pub genus: usize,
    pub gens: Vec<ProjMatrix>,
}

impl SurfaceRep {
    pub fn new(genus: usize, gens: Vec<ProjMatrix>) -> Result<Self, EulerError> {
        if gens.len() != 2 * genus {
            return Err(EulerError::GeneratorCount { genus, expected: 2 * genus, got: gens.len() });
        }
        Ok(SurfaceRep { genus, gens })
    }

    pub fn trivial(genus: usize) -> Self {
        SurfaceRep { genus, gens: vec![ProjMatrix::IDENTITY; 2 * genus] }
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&ProjMatrix, &ProjMatrix)> {
        self.gens.chunks_exact(2).map(|p| (&p[0], &p[1]))
    }

    /// `[a_1, b_1] ... [a_g, b_g]`.
    pub fn relator(&self) -> ProjMatrix {
        self.pairs().fold(ProjMatrix::IDENTITY, |acc, (a, b)| acc.compose(&commutator(a, b)))
    }
}

pub fn relator_defect(rep: &SurfaceRep) -> f64 {
    rep.relator().dist_to_identity()
}

/// Translation number of the lifted relator, built from lifts with the given
/// winding offsets (one per generator).
pub fn lifted_relator_translation(rep: &SurfaceRep, offsets: &[i64]) -> f64 {
    assert_eq!(offsets.len(), rep.gens.len());
    let lifts: Vec<LiftedElement> =
        rep.gens.iter().zip(offsets).map(|(g, &w)| LiftedElement::new(*g, w)).collect();
    let product = lifts
        .chunks_exact(2)
        .fold(LiftedElement::IDENTITY, |acc, p| acc.compose(&lift_commutator(&p[0], &p[1])));
    translation_number(&product)
}

pub fn euler_class(rep: &SurfaceRep) -> Result<i64, EulerError> {
    euler_class_with_offsets(rep, &vec![0; rep.gens.len()])
}

pub fn euler_class_with_offsets(rep: &SurfaceRep, offsets: &[i64]) -> Result<i64, EulerError> {
    let defect = relator_defect(rep);
    if !(defect <= EULER_DEFECT_TOL) {
        return Err(EulerError::DefectTooLarge(defect));
    }
    let tau = lifted_relator_translation(rep, offsets);
    let n = tau.round();
    if (tau - n).abs() > EULER_SNAP_TOL {
        return Err(EulerError::NonIntegral(tau));
    }
    Ok(n as i64)
}
