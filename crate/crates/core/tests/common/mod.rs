#![allow(dead_code)]

use flatholo_core::circledyn::{net_displacer, Arc, PlCircleHomeo, PlHomeo, PlIntervalHomeo};
use flatholo_core::psl2::{exp_sl2, LieVec, ProjMatrix};
use flatholo_core::ucover::LiftedElement;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_lie(r: &mut impl Rng, scale: f64) -> LieVec {
    LieVec::new(r.gen_range(-scale..scale), r.gen_range(-scale..scale), r.gen_range(-scale..scale))
}

/// `exp(v1) exp(v2)`, which covers elliptic, parabolic-ish and hyperbolic
/// elements.
pub fn random_proj(r: &mut impl Rng) -> ProjMatrix {
    exp_sl2(&random_lie(r, 1.5)).compose(&exp_sl2(&random_lie(r, 1.5)))
}

pub fn random_lifted(r: &mut impl Rng) -> LiftedElement {
    LiftedElement::new(random_proj(r), r.gen_range(-3..=3))
}

/// Conjugate of a rotation by `alpha` (matrix angle) in `(0, pi)`.
pub fn random_elliptic(r: &mut impl Rng, max_alpha: f64) -> ProjMatrix {
    let alpha = r.gen_range(1e-3..max_alpha);
    let g = exp_sl2(&random_lie(r, 0.8));
    ProjMatrix::rotation(alpha).conjugate_by(&g)
}

/// Circle map with `n` breakpoints, sup displacement below `max_disp` and
/// slopes in `[1/4, 4]`.
pub fn random_circle_homeo(r: &mut impl Rng, max_disp: f64, n: usize) -> PlCircleHomeo {
    loop {
        let mut xs: Vec<f64> = (0..n).map(|_| r.gen_range(0.0..1.0)).collect();
        xs.sort_by(f64::total_cmp);
        let breaks: Vec<(f64, f64)> = xs.iter().map(|&x| (x, x + r.gen_range(-max_disp..max_disp))).collect();
        if let Ok(f) = PlCircleHomeo::from_lift_samples(breaks.iter().map(|b| b.0), |x| {
            lift_through(&breaks, x)
        }) {
            let (lo, hi) = f.slope_bounds();
            if lo >= 0.25 && hi <= 4.0 {
                return f;
            }
        }
    }
}

fn lift_through(breaks: &[(f64, f64)], x: f64) -> f64 {
    let mut ext: Vec<(f64, f64)> = breaks.iter().map(|&(a, b)| (a - 1.0, b - 1.0)).collect();
    ext.extend_from_slice(breaks);
    ext.extend(breaks.iter().map(|&(a, b)| (a + 1.0, b + 1.0)));
    let k = x.floor();
    let u = x - k;
    let i = ext.partition_point(|p| p.0 <= u);
    let (x0, y0) = ext[i - 1];
    let (x1, y1) = ext[i];
    y0 + (y1 - y0) * (u - x0) / (x1 - x0) + k
}

/// PL bump supported in `[a, b]` with `m` interior breakpoints and slopes in
/// `[1/5, 5]`.
pub fn random_bump(r: &mut impl Rng, a: f64, b: f64, m: usize) -> PlCircleHomeo {
    loop {
        let f = PlCircleHomeo::from_breaks(&bump_breaks(r, a, b, m)).expect("bump");
        let (lo, hi) = f.slope_bounds();
        if lo >= 0.2 && hi <= 5.0 {
            return f;
        }
    }
}

fn bump_breaks(r: &mut impl Rng, a: f64, b: f64, m: usize) -> Vec<(f64, f64)> {
    let mut xs: Vec<f64> = (0..m).map(|_| r.gen_range(a..b)).collect();
    xs.sort_by(f64::total_cmp);
    let mut ys: Vec<f64> = (0..m).map(|_| r.gen_range(a..b)).collect();
    ys.sort_by(f64::total_cmp);
    let mut out = vec![(a, a)];
    out.extend(xs.into_iter().zip(ys));
    out.push((b, b));
    out.dedup_by(|q, p| q.0 <= p.0 || q.1 <= p.1);
    if out.last().map(|p| p.0) != Some(b) {
        out.push((b, b));
    }
    out.into_iter().map(|(x, y)| (x.rem_euclid(1.0), y.rem_euclid(1.0))).collect()
}

/// Interval map with `m` interior breakpoints and slopes in `[1/5, 5]`.
pub fn random_interval_homeo(r: &mut impl Rng, m: usize) -> PlIntervalHomeo {
    loop {
        let f = raw_interval_homeo(r, m);
        let (lo, hi) = f.slope_bounds();
        if lo >= 0.2 && hi <= 5.0 {
            return f;
        }
    }
}

fn raw_interval_homeo(r: &mut impl Rng, m: usize) -> PlIntervalHomeo {
    let mut xs: Vec<f64> = (0..m).map(|_| r.gen_range(0.01..0.99)).collect();
    let mut ys: Vec<f64> = (0..m).map(|_| r.gen_range(0.01..0.99)).collect();
    xs.sort_by(f64::total_cmp);
    ys.sort_by(f64::total_cmp);
    let mut b: Vec<(f64, f64)> = xs.into_iter().zip(ys).collect();
    b.dedup_by(|q, p| q.0 <= p.0 || q.1 <= p.1);
    PlIntervalHomeo::from_breaks(&b).expect("increasing breakpoints")
}

/// `(a, b, h)` with `supp a, supp b` inside `V = [p - delta, p + delta]` and
/// `h` the net displacer at `p`.
pub fn eq5_instance(r: &mut impl Rng) -> (PlCircleHomeo, PlCircleHomeo, PlCircleHomeo, Arc) {
    let p = r.gen_range(0.0..1.0);
    let delta = r.gen_range(0.005..0.03);
    let h = net_displacer(&[p], delta).unwrap();
    let lo = p - delta;
    let hi = p + delta;
    let (ma, mb) = (r.gen_range(1..4), r.gen_range(1..4));
    let a = random_bump(r, lo, hi, ma);
    let b = random_bump(r, lo, hi, mb);
    (a, b, h, Arc::new(lo, hi))
}

/// Four arcs in cyclic order with overlaps 0.2.
pub fn four_arc_cover(offset: f64) -> Vec<Arc> {
    (0..4).map(|k| Arc::new(offset + 0.25 * k as f64, offset + 0.25 * k as f64 + 0.45)).collect()
}

pub fn grid_sup(f: impl Fn(f64) -> f64, g: impl Fn(f64) -> f64, n: usize) -> f64 {
    (0..n)
        .map(|i| {
            let x = i as f64 / n as f64;
            flatholo_core::psl2::circle_dist(f(x), g(x))
        })
        .fold(0.0, f64::max)
}
