//! Unit quaternions, the binary icosahedral group and solvers for products
//! of conjugates and commutators in SU(2).
//!
//! A unit quaternion `cos(phi) + sin(phi) u` (`u` a unit pure quaternion) has
//! SU(2) angle `phi` in `[0, pi]`; it acts on R^3 as the rotation by `2 phi`
//! about `u`. Conjugates of `g` are exactly the unit quaternions with the same
//! angle, which makes both solvers below explicit.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::{HashMap, VecDeque};
use std::f64::consts::PI;
use std::ops::Mul;
use thiserror::Error;

/// Grid of the quantized hash used for finite closures.
pub const QUANTUM: f64 = 1e-9;
pub const CLOSURE_LIMIT: usize = 200;
const NORM_DRIFT: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Su2Error {
    #[error("closure exceeded {0} elements")]
    ClosureOverflow(usize),
    #[error("element is not in the group")]
    NotAMember,
    #[error("generator is central")]
    CentralGenerator,
    #[error("no solution within the length budget; best residual {best}")]
    NoConvergence { best: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct UnitQuaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl UnitQuaternion {
    pub const IDENTITY: UnitQuaternion = UnitQuaternion { w: 1.0, x: 0.0, y: 0.0, z: 0.0 };
    pub const MINUS_ONE: UnitQuaternion = UnitQuaternion { w: -1.0, x: 0.0, y: 0.0, z: 0.0 };

    /// Normalizes when the norm drifts from 1 by more than 1e-12.
    pub fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        let n = (w * w + x * x + y * y + z * z).sqrt();
        if (n - 1.0).abs() > NORM_DRIFT {
            UnitQuaternion { w: w / n, x: x / n, y: y / n, z: z / n }
        } else {
            UnitQuaternion { w, x, y, z }
        }
    }

    /// `cos(phi) + sin(phi) axis`, `axis` normalized here.
    pub fn from_axis_angle(axis: [f64; 3], phi: f64) -> Self {
        let n = norm3(axis);
        let (s, c) = phi.sin_cos();
        UnitQuaternion::new(c, s * axis[0] / n, s * axis[1] / n, s * axis[2] / n)
    }

    /// Exponential of the pure quaternion `v`.
    pub fn exp(v: [f64; 3]) -> Self {
        let n = norm3(v);
        if n < 1e-300 {
            return UnitQuaternion::IDENTITY;
        }
        UnitQuaternion::from_axis_angle(v, n)
    }

    pub fn vector(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn as_array(&self) -> [f64; 4] {
        [self.w, self.x, self.y, self.z]
    }

    /// SU(2) angle in `[0, pi]`.
    pub fn angle(&self) -> f64 {
        // atan2 keeps accuracy near 0 and pi
        norm3(self.vector()).atan2(self.w)
    }

    /// Unit axis, or `None` for `+-1`.
    pub fn axis(&self) -> Option<[f64; 3]> {
        let v = self.vector();
        let n = norm3(v);
        (n > 1e-15).then(|| [v[0] / n, v[1] / n, v[2] / n])
    }

    pub fn inverse(&self) -> Self {
        UnitQuaternion { w: self.w, x: -self.x, y: -self.y, z: -self.z }
    }

    pub fn neg(&self) -> Self {
        UnitQuaternion { w: -self.w, x: -self.x, y: -self.y, z: -self.z }
    }

    pub fn is_central(&self, tol: f64) -> bool {
        self.dist(&UnitQuaternion::IDENTITY) <= tol || self.dist(&UnitQuaternion::MINUS_ONE) <= tol
    }

    /// Euclidean distance in R^4.
    pub fn dist(&self, o: &UnitQuaternion) -> f64 {
        let d = [self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z];
        (d.iter().map(|v| v * v).sum::<f64>()).sqrt()
    }

    /// `c self c^-1`.
    pub fn conj_by(&self, c: &UnitQuaternion) -> Self {
        *c * *self * c.inverse()
    }

    pub fn pow(&self, n: i64) -> Self {
        let base = if n < 0 { self.inverse() } else { *self };
        (0..n.unsigned_abs()).fold(UnitQuaternion::IDENTITY, |acc, _| acc * base)
    }

    /// Rotation of the pure quaternion `v`.
    pub fn rotate(&self, v: [f64; 3]) -> [f64; 3] {
        let p = UnitQuaternion { w: 0.0, x: v[0], y: v[1], z: v[2] };
        let r = *self * p * self.inverse();
        [r.x, r.y, r.z]
    }

    fn key(&self) -> [i64; 4] {
        self.as_array().map(|c| (c / QUANTUM).round() as i64)
    }

    pub fn random(rng: &mut impl Rng) -> Self {
        loop {
            let v: [f64; 4] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
            let n2: f64 = v.iter().map(|c| c * c).sum();
            if n2 > 1e-4 && n2 <= 1.0 {
                return UnitQuaternion::new(v[0], v[1], v[2], v[3]);
            }
        }
    }
}

impl Mul for UnitQuaternion {
    type Output = UnitQuaternion;
    fn mul(self, o: UnitQuaternion) -> UnitQuaternion {
        UnitQuaternion::new(
            self.w * o.w - self.x * o.x - self.y * o.y - self.z * o.z,
            self.w * o.x + self.x * o.w + self.y * o.z - self.z * o.y,
            self.w * o.y - self.x * o.z + self.y * o.w + self.z * o.x,
            self.w * o.z + self.x * o.y - self.y * o.x + self.z * o.w,
        )
    }
}

fn norm3(v: [f64; 3]) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

fn dot3(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross3(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

/// Some unit vector orthogonal to `v`.
fn orthogonal(v: [f64; 3]) -> [f64; 3] {
    let e = if v[0].abs() < 0.9 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
    let c = cross3(v, e);
    let n = norm3(c);
    [c[0] / n, c[1] / n, c[2] / n]
}

/// Quaternion whose rotation carries the unit vector `u` to `v`.
pub fn rotation_between(u: [f64; 3], v: [f64; 3]) -> UnitQuaternion {
    let d = dot3(u, v);
    if d < -1.0 + 1e-12 {
        let p = orthogonal(u);
        return UnitQuaternion::new(0.0, p[0], p[1], p[2]);
    }
    let c = cross3(u, v);
    UnitQuaternion::new(1.0 + d, c[0], c[1], c[2])
}

/// Finite subgroup of SU(2) with a quantized index.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FiniteSubgroup {
    pub elements: Vec<UnitQuaternion>,
    #[serde(skip)]
    index: HashMap<[i64; 4], usize>,
}

impl PartialEq for FiniteSubgroup {
    fn eq(&self, o: &Self) -> bool {
        self.order() == o.order() && self.elements.iter().all(|e| o.contains(e))
    }
}

impl FiniteSubgroup {
    /// Closure of `gens` under products, breadth first from the identity.
    pub fn generate(gens: &[UnitQuaternion], limit: usize) -> Result<Self, Su2Error> {
        let mut g = FiniteSubgroup { elements: vec![UnitQuaternion::IDENTITY], index: HashMap::new() };
        g.index.insert(UnitQuaternion::IDENTITY.key(), 0);
        let mut queue = VecDeque::from([UnitQuaternion::IDENTITY]);
        while let Some(e) = queue.pop_front() {
            for s in gens {
                let p = e * *s;
                if !g.contains(&p) {
                    if g.elements.len() >= limit {
                        return Err(Su2Error::ClosureOverflow(limit));
                    }
                    g.index.insert(p.key(), g.elements.len());
                    g.elements.push(p);
                    queue.push_back(p);
                }
            }
        }
        Ok(g)
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, q: &UnitQuaternion) -> bool {
        self.index.contains_key(&q.key())
    }

    pub fn center(&self) -> Vec<UnitQuaternion> {
        self.elements
            .iter()
            .filter(|a| self.elements.iter().all(|b| (**a * *b).dist(&(*b * **a)) < 1e-9))
            .copied()
            .collect()
    }

    /// Smallest distance between two distinct elements.
    pub fn min_separation(&self) -> f64 {
        let mut best = f64::INFINITY;
        for (i, a) in self.elements.iter().enumerate() {
            for b in &self.elements[i + 1..] {
                best = best.min(a.dist(b));
            }
        }
        best
    }

    fn rebuild_index(&mut self) {
        self.index = self.elements.iter().enumerate().map(|(i, e)| (e.key(), i)).collect();
    }
}

/// Order of `q` in SU(2), if finite and at most `max`.
pub fn element_order(q: &UnitQuaternion, max: usize) -> Option<usize> {
    let mut p = *q;
    for n in 1..=max {
        if p.dist(&UnitQuaternion::IDENTITY) < 1e-9 {
            return Some(n);
        }
        p = p * *q;
    }
    None
}

pub fn golden_ratio() -> f64 {
    (1.0 + 5f64.sqrt()) / 2.0
}

/// The two icosian generators `(1 + i + j + k)/2` and `(phi + phi^-1 i + j)/2`.
pub fn bi_generators() -> [UnitQuaternion; 2] {
    let phi = golden_ratio();
    [UnitQuaternion::new(0.5, 0.5, 0.5, 0.5), UnitQuaternion::new(phi / 2.0, 0.5 / phi, 0.5, 0.0)]
}

/// The binary icosahedral group.
pub fn bi_generate() -> Result<FiniteSubgroup, Su2Error> {
    let mut g = FiniteSubgroup::generate(&bi_generators(), CLOSURE_LIMIT)?;
    g.rebuild_index();
    assert!(g.min_separation() > 1e3 * QUANTUM, "quantized hash too coarse for this group");
    Ok(g)
}

/// Whether the commutator subgroup is the whole group.
pub fn is_perfect(g: &FiniteSubgroup) -> bool {
    let mut comms: Vec<UnitQuaternion> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for a in &g.elements {
        for b in &g.elements {
            let c = *a * *b * a.inverse() * b.inverse();
            if seen.insert(c.key()) {
                comms.push(c);
            }
        }
    }
    match FiniteSubgroup::generate(&comms, g.order().max(1)) {
        Ok(h) => h.order() == g.order(),
        Err(_) => false,
    }
}

/// Whether the conjugates of `q` and `q^-1` generate `g`.
pub fn normally_generates(q: &UnitQuaternion, g: &FiniteSubgroup) -> Result<bool, Su2Error> {
    if !g.contains(q) {
        return Err(Su2Error::NotAMember);
    }
    let mut gens: Vec<UnitQuaternion> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for h in &g.elements {
        for c in [q.conj_by(h), q.inverse().conj_by(h)] {
            if seen.insert(c.key()) {
                gens.push(c);
            }
        }
    }
    Ok(FiniteSubgroup::generate(&gens, g.order())
        .map(|n| n.order() == g.order())
        .unwrap_or(false))
}

/// One factor `conjugator g^exponent conjugator^-1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConjFactor {
    pub conjugator: UnitQuaternion,
    pub exponent: i8,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConjProduct {
    pub factors: Vec<ConjFactor>,
    pub residual: f64,
}

/// Ordered product of the factors.
pub fn evaluate_conj_product(factors: &[ConjFactor], g: &UnitQuaternion) -> UnitQuaternion {
    factors
        .iter()
        .fold(UnitQuaternion::IDENTITY, |acc, f| acc * g.pow(f.exponent as i64).conj_by(&f.conjugator))
}

/// Conjugators `(c1, c2)` with `c1 g c1^-1 c2 g^-1 c2^-1 = cos(beta) + sin(beta) axis`.
///
/// The product of `cos a + sin a v1` and `cos a - sin a v2` has real part
/// `cos^2 a + sin^2 a (v1 . v2)`, so any `beta` in `[0, min(2a, 2pi - 2a)]`
/// is reached by choosing the angle between `v1` and `v2`; the result is
/// then rotated onto `axis`.
fn conj_pair(g: &UnitQuaternion, beta: f64, axis: [f64; 3]) -> (UnitQuaternion, UnitQuaternion) {
    let a = g.angle();
    let u = g.axis().expect("non-central generator");
    let (s2, c2) = (a.sin().powi(2), a.cos().powi(2));
    let cos_t = ((beta.cos() - c2) / s2).clamp(-1.0, 1.0);
    let sin_t = (1.0 - cos_t * cos_t).max(0.0).sqrt();
    let v1 = [1.0, 0.0, 0.0];
    let v2 = [cos_t, sin_t, 0.0];
    let piece = UnitQuaternion::from_axis_angle(v1, a) * UnitQuaternion::from_axis_angle(v2, -a);
    let r = match piece.axis() {
        Some(p) => rotation_between(p, axis),
        None => UnitQuaternion::IDENTITY,
    };
    (r * rotation_between(u, v1), r * rotation_between(u, v2))
}

/// Largest angle of a single `conj(g) conj(g^-1)` product.
pub fn pair_reach(g: &UnitQuaternion) -> f64 {
    let a = g.angle();
    (2.0 * a).min(2.0 * PI - 2.0 * a)
}

/// Conjugator pairs whose `conj(g) conj(g^-1)` products multiply to `target`.
fn conj_pieces(target: &UnitQuaternion, g: &UnitQuaternion) -> Vec<(UnitQuaternion, UnitQuaternion)> {
    let beta = target.angle();
    if beta < 1e-15 {
        return vec![];
    }
    let axis = target.axis().unwrap_or([0.0, 0.0, 1.0]);
    let m = (beta / pair_reach(g) * (1.0 - 1e-12)).ceil().max(1.0) as usize;
    let (c1, c2) = conj_pair(g, beta / m as f64, axis);
    vec![(c1, c2); m]
}

fn pieces_to_factors(pieces: &[(UnitQuaternion, UnitQuaternion)]) -> Vec<ConjFactor> {
    pieces
        .iter()
        .flat_map(|&(c1, c2)| [ConjFactor { conjugator: c1, exponent: 1 }, ConjFactor { conjugator: c2, exponent: -1 }])
        .collect()
}

/// Solves `target = prod c_i g^(+-1) c_i^-1` with at most `maxlen` factors.
///
/// Short words for `1`, `g`, `g^-1`, `g^2` and conjugates of `g^(+-1)`; in
/// general, equal pieces of the explicit `conj(g) conj(g^-1)` family along
/// the target's axis. Gauss-Newton on the conjugators polishes the result,
/// with seeded random restarts if the explicit word misses `tol`.
pub fn conj_product_solve(
    target: &UnitQuaternion,
    g: &UnitQuaternion,
    maxlen: usize,
    tol: f64,
    seed: u64,
) -> Result<ConjProduct, Su2Error> {
    if g.is_central(1e-12) {
        return Err(Su2Error::CentralGenerator);
    }
    let id = UnitQuaternion::IDENTITY;
    let f = |c: UnitQuaternion, e: i8| ConjFactor { conjugator: c, exponent: e };
    let short: Vec<Vec<ConjFactor>> = vec![
        vec![],
        vec![f(id, 1)],
        vec![f(id, -1)],
        vec![f(id, 1), f(id, 1)],
        vec![f(rotation_between(g.axis().unwrap(), target.axis().unwrap_or([0.0, 0.0, 1.0])), 1)],
        vec![f(rotation_between(g.axis().unwrap(), target.axis().map(|a| a.map(|c| -c)).unwrap_or([0.0, 0.0, 1.0])), -1)],
    ];
    for word in short {
        if word.len() <= maxlen && evaluate_conj_product(&word, g).dist(target) <= tol.min(1e-14) {
            let residual = evaluate_conj_product(&word, g).dist(target);
            return Ok(ConjProduct { factors: word, residual });
        }
    }
    let mut factors = pieces_to_factors(&conj_pieces(target, g));
    if factors.len() > maxlen {
        return Err(Su2Error::NoConvergence { best: f64::INFINITY });
    }
    let mut residual = evaluate_conj_product(&factors, g).dist(target);
    if residual > tol {
        let exps: Vec<i8> = factors.iter().map(|f| f.exponent).collect();
        let (c, r) = polish(&factors.iter().map(|f| f.conjugator).collect::<Vec<_>>(), &|cs| {
            evaluate_conj_product(&zip_factors(cs, &exps), g)
        }, target);
        factors = zip_factors(&c, &exps);
        residual = r;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..20 {
            if residual <= tol {
                break;
            }
            let start: Vec<UnitQuaternion> = exps.iter().map(|_| UnitQuaternion::random(&mut rng)).collect();
            let (c, r) = polish(&start, &|cs| evaluate_conj_product(&zip_factors(cs, &exps), g), target);
            if r < residual {
                factors = zip_factors(&c, &exps);
                residual = r;
            }
        }
    }
    if residual > tol {
        return Err(Su2Error::NoConvergence { best: residual });
    }
    Ok(ConjProduct { factors, residual })
}

fn zip_factors(cs: &[UnitQuaternion], exps: &[i8]) -> Vec<ConjFactor> {
    cs.iter().zip(exps).map(|(&c, &e)| ConjFactor { conjugator: c, exponent: e }).collect()
}

fn solve_small(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Vec<f64> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs())).unwrap();
        a.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..n {
            let f = a[row][col] / a[col][col];
            let pivot = a[col].clone();
            for (x, p) in a[row][col..].iter_mut().zip(&pivot[col..]) {
                *x -= f * p;
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let s: f64 = (row + 1..n).map(|k| a[row][k] * x[k]).sum();
        x[row] = (b[row] - s) / a[row][row];
    }
    x
}

/// Gauss-Newton on left perturbations `exp(d_i) q_i` minimizing
/// `|eval(q) - target|`. Minimal-norm damped steps, at most 50 iterations.
fn polish(
    start: &[UnitQuaternion],
    eval: &dyn Fn(&[UnitQuaternion]) -> UnitQuaternion,
    target: &UnitQuaternion,
) -> (Vec<UnitQuaternion>, f64) {
    let mut qs = start.to_vec();
    let resid = |qs: &[UnitQuaternion]| {
        let p = eval(qs);
        [p.w - target.w, p.x - target.x, p.y - target.y, p.z - target.z]
    };
    let norm = |r: &[f64; 4]| r.iter().map(|v| v * v).sum::<f64>().sqrt();
    let mut r = resid(&qs);
    let n = 3 * qs.len();
    let h = 1e-7;
    for _ in 0..50 {
        if norm(&r) < 1e-15 {
            break;
        }
        let mut jac = vec![[0.0; 4]; n];
        for (j, col) in jac.iter_mut().enumerate() {
            let mut d = [0.0; 3];
            d[j % 3] = h;
            let mut p = qs.clone();
            p[j / 3] = UnitQuaternion::exp(d) * p[j / 3];
            let rp = resid(&p);
            d[j % 3] = -h;
            let mut m = qs.clone();
            m[j / 3] = UnitQuaternion::exp(d) * m[j / 3];
            let rm = resid(&m);
            for i in 0..4 {
                col[i] = (rp[i] - rm[i]) / (2.0 * h);
            }
        }
        let jjt: Vec<Vec<f64>> = (0..4)
            .map(|i| (0..4).map(|k| jac.iter().map(|c| c[i] * c[k]).sum::<f64>() + if i == k { 1e-12 } else { 0.0 }).collect())
            .collect();
        let y = solve_small(jjt, r.to_vec());
        let step: Vec<f64> = jac.iter().map(|c| -(0..4).map(|i| c[i] * y[i]).sum::<f64>()).collect();
        let current = norm(&r);
        let mut t = 1.0;
        let mut improved = false;
        for _ in 0..30 {
            let trial: Vec<UnitQuaternion> = qs
                .iter()
                .enumerate()
                .map(|(i, q)| UnitQuaternion::exp([t * step[3 * i], t * step[3 * i + 1], t * step[3 * i + 2]]) * *q)
                .collect();
            let rt = resid(&trial);
            if norm(&rt) < current {
                qs = trial;
                r = rt;
                improved = true;
                break;
            }
            t *= 0.5;
        }
        if !improved {
            break;
        }
    }
    let res = norm(&r);
    (qs, res)
}

/// `[a, b] = a b a^-1 b^-1`.
pub fn commutator(a: &UnitQuaternion, b: &UnitQuaternion) -> UnitQuaternion {
    *a * *b * a.inverse() * b.inverse()
}

/// Ordered product `[a_1, b_1] [a_2, b_2] ...`.
pub fn commutator_product(pairs: &[(UnitQuaternion, UnitQuaternion)]) -> UnitQuaternion {
    pairs.iter().fold(UnitQuaternion::IDENTITY, |acc, (a, b)| acc * commutator(a, b))
}

pub const COMMUTATOR_TOL: f64 = 1e-8;

/// Writes `f` as a product of `m` commutators.
///
/// Each factor is the `m`-th root `r = cos(beta/m) + sin(beta/m) v` of `f`,
/// and `r = [a, b]` with `b = cos(beta/2m) - sin(beta/2m) v` and `a` the
/// half-turn about an axis orthogonal to `v` (so `a b a^-1 = b^-1`).
pub fn commutator_decomp_su2(f: &UnitQuaternion, m: usize) -> Result<Vec<(UnitQuaternion, UnitQuaternion)>, Su2Error> {
    let m = m.max(1);
    let beta = f.angle();
    if beta < 1e-15 {
        return Ok(vec![(UnitQuaternion::IDENTITY, UnitQuaternion::IDENTITY); m]);
    }
    let v = f.axis().unwrap_or([0.0, 0.0, 1.0]);
    let n = orthogonal(v);
    let a = UnitQuaternion::new(0.0, n[0], n[1], n[2]);
    let half = beta / (2.0 * m as f64);
    let b = UnitQuaternion::from_axis_angle(v, -half);
    let mut pairs = vec![(a, b); m];
    let mut residual = commutator_product(&pairs).dist(f);
    if residual > COMMUTATOR_TOL {
        let start = [a, b];
        let (q, r) = polish(&start, &|q| commutator_product(&vec![(q[0], q[1]); m]), f);
        pairs = vec![(q[0], q[1]); m];
        residual = r;
    }
    if residual > COMMUTATOR_TOL {
        return Err(Su2Error::NoConvergence { best: residual });
    }
    Ok(pairs)
}

/// One factor `(c g^e c^-1, d g^e d^-1)` of the diagonal element's normal
/// closure in SU(2) x SU(2).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiagFactor {
    pub left: UnitQuaternion,
    pub right: UnitQuaternion,
    pub exponent: i8,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProbeResult {
    pub target: (UnitQuaternion, UnitQuaternion),
    pub factors: Vec<DiagFactor>,
    pub residual: f64,
}

pub const PROBE_TOL: f64 = 1e-4;

pub fn evaluate_diag(factors: &[DiagFactor], g: &UnitQuaternion) -> (UnitQuaternion, UnitQuaternion) {
    factors.iter().fold((UnitQuaternion::IDENTITY, UnitQuaternion::IDENTITY), |(l, r), f| {
        let p = g.pow(f.exponent as i64);
        (l * p.conj_by(&f.left), r * p.conj_by(&f.right))
    })
}

/// Products of conjugates of `(g, g)` reaching each target pair.
///
/// A piece `conj(g) conj(g^-1)` in one coordinate is paired with the same
/// conjugator twice in the other, where it cancels; the two coordinates are
/// then handled one after the other.
pub fn diagonal_closure_probe(
    targets: &[(UnitQuaternion, UnitQuaternion)],
    g: &UnitQuaternion,
    budget: usize,
) -> Result<Vec<ProbeResult>, Su2Error> {
    if g.is_central(1e-12) {
        return Err(Su2Error::CentralGenerator);
    }
    let id = UnitQuaternion::IDENTITY;
    targets
        .iter()
        .map(|&(x, y)| {
            let factors = if x.dist(g) < 1e-15 && y.dist(g) < 1e-15 {
                vec![DiagFactor { left: id, right: id, exponent: 1 }]
            } else {
                let mut fs = Vec::new();
                for (c1, c2) in conj_pieces(&x, g) {
                    fs.push(DiagFactor { left: c1, right: id, exponent: 1 });
                    fs.push(DiagFactor { left: c2, right: id, exponent: -1 });
                }
                for (c1, c2) in conj_pieces(&y, g) {
                    fs.push(DiagFactor { left: id, right: c1, exponent: 1 });
                    fs.push(DiagFactor { left: id, right: c2, exponent: -1 });
                }
                fs
            };
            let (l, r) = evaluate_diag(&factors, g);
            let residual = l.dist(&x).max(r.dist(&y));
            if factors.len() > budget || residual > PROBE_TOL {
                return Err(Su2Error::NoConvergence { best: residual });
            }
            Ok(ProbeResult { target: (x, y), factors, residual })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quaternion_basics() {
        let i = UnitQuaternion::new(0.0, 1.0, 0.0, 0.0);
        let j = UnitQuaternion::new(0.0, 0.0, 1.0, 0.0);
        let k = i * j;
        assert!(k.dist(&UnitQuaternion::new(0.0, 0.0, 0.0, 1.0)) < 1e-15);
        assert!((i * i).dist(&UnitQuaternion::MINUS_ONE) < 1e-15);
        assert!((i.angle() - PI / 2.0).abs() < 1e-15);
        let q = UnitQuaternion::new(2.0, 0.0, 0.0, 0.0);
        assert_eq!(q, UnitQuaternion::IDENTITY);
    }

    #[test]
    fn rotation_between_maps_axes() {
        let u = [0.0, 0.0, 1.0];
        for v in [[1.0, 0.0, 0.0], [0.0, 0.0, -1.0], [0.6, 0.0, 0.8]] {
            let r = rotation_between(u, v).rotate(u);
            assert!((0..3).all(|i| (r[i] - v[i]).abs() < 1e-15));
        }
    }

    #[test]
    fn bi_has_120_elements() {
        let g = bi_generate().unwrap();
        assert_eq!(g.order(), 120);
        assert!(g.contains(&UnitQuaternion::MINUS_ONE));
    }

    #[test]
    fn cyclic_group_is_not_perfect() {
        let q = UnitQuaternion::from_axis_angle([0.0, 0.0, 1.0], 2.0 * PI / 5.0);
        let c5 = FiniteSubgroup::generate(&[q], CLOSURE_LIMIT).unwrap();
        assert_eq!(c5.order(), 5);
        assert!(!is_perfect(&c5));
        assert!(is_perfect(&FiniteSubgroup::generate(&[], 1).unwrap()));
    }

    #[test]
    fn closure_overflow() {
        let q = UnitQuaternion::from_axis_angle([0.0, 0.0, 1.0], 1.0);
        assert!(matches!(FiniteSubgroup::generate(&[q], 50), Err(Su2Error::ClosureOverflow(50))));
    }

    #[test]
    fn central_element_does_not_normally_generate() {
        let g = bi_generate().unwrap();
        assert!(!normally_generates(&UnitQuaternion::MINUS_ONE, &g).unwrap());
        let far = UnitQuaternion::from_axis_angle([1.0, 2.0, 3.0], 0.123);
        assert_eq!(normally_generates(&far, &g), Err(Su2Error::NotAMember));
    }

    #[test]
    fn short_words() {
        let g = UnitQuaternion::from_axis_angle([1.0, 1.0, 0.0], PI / 5.0);
        let s = conj_product_solve(&g, &g, 64, 1e-12, 0).unwrap();
        assert_eq!(s.factors, vec![ConjFactor { conjugator: UnitQuaternion::IDENTITY, exponent: 1 }]);
        let s = conj_product_solve(&(g * g), &g, 64, 1e-12, 0).unwrap();
        assert_eq!(s.factors.len(), 2);
        assert!(s.factors.iter().all(|f| f.exponent == 1 && f.conjugator == UnitQuaternion::IDENTITY));
        assert!(conj_product_solve(&g, &UnitQuaternion::MINUS_ONE, 64, 1e-12, 0).is_err());
    }

    #[test]
    fn minus_one_is_a_commutator() {
        let p = commutator_decomp_su2(&UnitQuaternion::MINUS_ONE, 1).unwrap();
        assert!(commutator(&p[0].0, &p[0].1).dist(&UnitQuaternion::MINUS_ONE) <= 1e-8);
    }

    #[test]
    fn trivial_probe_targets() {
        let g = UnitQuaternion::from_axis_angle([0.0, 1.0, 0.0], 0.7);
        let id = UnitQuaternion::IDENTITY;
        let r = diagonal_closure_probe(&[(g, g), (id, id)], &g, 200).unwrap();
        assert_eq!(r[0].factors.len(), 1);
        assert!(r[1].factors.is_empty());
    }
}
