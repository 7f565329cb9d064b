//! Invariant suites run by `flatholo verify`.

use crate::config::RunConfig;
use flatholo_core::circledyn::*;
use flatholo_core::mwbuild::{build_method1, fuchsian_octagon};
use flatholo_core::psl2::{classify, exp_sl2, Classification, LieVec, ProjMatrix};
use flatholo_core::su2lab::{bi_generate, is_perfect, normally_generates};
use flatholo_core::ucover::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const SUITES: [&str; 5] = ["eq5", "fragment", "ucover", "bi", "octagon"];

#[derive(Debug, Default)]
pub struct Tally {
    pub suite: String,
    pub passed: usize,
    pub failures: Vec<String>,
}

impl Tally {
    fn new(suite: &str) -> Self {
        Tally { suite: suite.to_string(), ..Default::default() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if ok {
            self.passed += 1;
        } else {
            self.failures.push(what());
        }
    }

    pub fn total(&self) -> usize {
        self.passed + self.failures.len()
    }
}

pub fn run(suite: &str, cfg: &RunConfig) -> Option<Tally> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    Some(match suite {
        "eq5" => eq5(cfg, &mut rng),
        "fragment" => fragmentation(cfg, &mut rng),
        "ucover" => ucover(cfg, &mut rng),
        "bi" => bi(),
        "octagon" => octagon(cfg),
        _ => return None,
    })
}

fn grid_sup<T: PlHomeo>(f: &T, g: &T, n: usize) -> f64 {
    (0..n)
        .map(|i| {
            let x = i as f64 / n as f64;
            flatholo_core::psl2::circle_dist(f.eval(x), g.eval(x))
        })
        .fold(f.sup_dist(g), f64::max)
}

/// PL bump on `[a, b]` with slopes in `[1/5, 5]`.
fn bump(r: &mut ChaCha8Rng, a: f64, b: f64) -> PlCircleHomeo {
    loop {
        let mut xs = [r.gen_range(a..b), r.gen_range(a..b)];
        let mut ys = [r.gen_range(a..b), r.gen_range(a..b)];
        xs.sort_by(f64::total_cmp);
        ys.sort_by(f64::total_cmp);
        let mut pts = vec![(a, a), (xs[0], ys[0]), (xs[1], ys[1]), (b, b)];
        pts.dedup_by(|q, p| q.0 <= p.0 || q.1 <= p.1);
        if pts.last() != Some(&(b, b)) {
            continue;
        }
        let pts: Vec<(f64, f64)> = pts.into_iter().map(|(x, y)| (x.rem_euclid(1.0), y.rem_euclid(1.0))).collect();
        if let Ok(f) = PlCircleHomeo::from_breaks(&pts) {
            let (lo, hi) = f.slope_bounds();
            if lo >= 0.2 && hi <= 5.0 {
                return f;
            }
        }
    }
}

/// Circle map with `n` breakpoints, displacement below `max_disp` and slopes
/// in `[1/4, 4]`.
fn circle_map(r: &mut ChaCha8Rng, max_disp: f64, n: usize) -> PlCircleHomeo {
    loop {
        let mut xs: Vec<f64> = (0..n).map(|_| r.gen_range(0.0..1.0)).collect();
        xs.sort_by(f64::total_cmp);
        let pts: Vec<(f64, f64)> = xs.iter().map(|&x| (x, x + r.gen_range(-max_disp..max_disp))).collect();
        let lift = |x: f64| {
            let k = x.floor();
            let u = x - k;
            let ext: Vec<(f64, f64)> = [-1.0, 0.0, 1.0]
                .iter()
                .flat_map(|s| pts.iter().map(move |&(a, b)| (a + s, b + s)))
                .collect();
            let i = ext.partition_point(|p| p.0 <= u);
            let ((x0, y0), (x1, y1)) = (ext[i - 1], ext[i]);
            y0 + (y1 - y0) * (u - x0) / (x1 - x0) + k
        };
        if let Ok(f) = PlCircleHomeo::from_lift_samples(xs.iter().copied(), lift) {
            let (lo, hi) = f.slope_bounds();
            if lo >= 0.25 && hi <= 4.0 {
                return f;
            }
        }
    }
}

fn eq5(cfg: &RunConfig, r: &mut ChaCha8Rng) -> Tally {
    let mut t = Tally::new("eq5");
    let tol = cfg.tolerances.pl_sup;
    for k in 0..cfg.trials {
        let p: f64 = r.gen_range(0.0..1.0);
        let delta = r.gen_range(0.005..0.02);
        let h = net_displacer(&[p], delta).expect("net displacer");
        let (lo, hi) = (p - 1.5 * delta, p + 1.5 * delta);
        let (a, b) = (bump(r, lo, hi), bump(r, lo, hi));
        let g = compressor(&Arc::new(lo, hi), &Arc::new(p - 0.8 * delta, p + 0.8 * delta), 0.5 * delta)
            .expect("compressor");
        let (a0, b0) = (bump(r, p - delta, p + delta), bump(r, p - delta, p + delta));
        match eq5_word(&a0, &b0, &h) {
            Ok(w) => {
                let err = grid_sup(&product(&w), &a0.commutator(&b0), cfg.verify_grid);
                t.check(err <= tol, || format!("instance {k}: four-factor error {err:e}"));
            }
            Err(e) => t.check(false, || format!("instance {k}: {e}")),
        }
        match conjugator_norms(&a, &b, &h, &g) {
            Ok(rep) => {
                t.check(rep.within_bound(), || format!("instance {k}: conjugator norms {:?} vs eps {}", rep.norms, rep.eps));
                let err = grid_sup(&rep.product(&h), &a.commutator(&b), cfg.verify_grid);
                t.check(err <= tol, || format!("instance {k}: conjugate product error {err:e}"));
            }
            Err(e) => t.check(false, || format!("instance {k}: {e}")),
        }
    }
    t
}

fn fragmentation(cfg: &RunConfig, r: &mut ChaCha8Rng) -> Tally {
    let mut t = Tally::new("fragment");
    for k in 0..cfg.trials {
        let offset = r.gen_range(0.0..0.25);
        let cover: Vec<Arc> = (0..4).map(|i| Arc::new(offset + 0.25 * i as f64, offset + 0.25 * i as f64 + 0.45)).collect();
        let f = circle_map(r, 0.05, 12);
        match fragment(&f, &cover) {
            Ok(parts) => {
                let err = grid_sup(&recompose(&parts), &f, cfg.verify_grid);
                t.check(err <= cfg.tolerances.pl_sup, || format!("map {k}: recomposition error {err:e}"));
                let inside = parts
                    .iter()
                    .zip(&cover)
                    .all(|(p, u)| p.support(SUPPORT_TOL).iter().all(|s| u.contains(s, 1e-12)));
                t.check(inside, || format!("map {k}: factor support leaves its arc"));
            }
            Err(e) => t.check(false, || format!("map {k}: {e}")),
        }
    }
    t
}

fn random_lifted(r: &mut ChaCha8Rng) -> LiftedElement {
    let mut lie = || LieVec::new(r.gen_range(-1.5..1.5), r.gen_range(-1.5..1.5), r.gen_range(-1.5..1.5));
    let g = exp_sl2(&lie()).compose(&exp_sl2(&lie()));
    LiftedElement::new(g, r.gen_range(-3..=3))
}

fn random_elliptic(r: &mut ChaCha8Rng) -> LiftedElement {
    let alpha = r.gen_range(1e-3..3.0);
    let c = exp_sl2(&LieVec::new(r.gen_range(-0.8..0.8), r.gen_range(-0.8..0.8), r.gen_range(-0.8..0.8)));
    LiftedElement::new(ProjMatrix::rotation(alpha).conjugate_by(&c), r.gen_range(-3..=3))
}

fn ucover(cfg: &RunConfig, r: &mut ChaCha8Rng) -> Tally {
    let mut t = Tally::new("ucover");
    let pairs = 200 * cfg.trials;
    let bad = (0..pairs)
        .filter(|_| {
            let (x, y) = (random_lifted(r), random_lifted(r));
            !matches!(cocycle(&x.g, &y.g), 0 | 1)
        })
        .count();
    t.check(bad == 0, || format!("cocycle outside {{0, 1}} on {bad} of {pairs} pairs"));
    let worst = (0..pairs)
        .map(|_| {
            let (x, y) = (random_elliptic(r), random_lifted(r));
            (translation_number(&lift_compose(&x, &y)) - translation_number(&x) - translation_number(&y)).abs()
        })
        .fold(0.0, f64::max);
    t.check(worst < 1.0, || format!("quasimorphism defect {worst}"));
    for k in 0..cfg.trials {
        let x = random_lifted(r);
        let (a, b) = (translation_number(&x), translation_number_orbit(&x, 200_000));
        t.check((a - b).abs() <= 1e-5, || format!("element {k}: closed form {a} vs orbit {b}"));
    }
    let reps = [fuchsian_octagon(), build_method1(1, 0.2).expect("build").rep];
    for k in 0..cfg.trials {
        let rep = &reps[k % reps.len()];
        let offsets: Vec<i64> = (0..rep.gens.len()).map(|_| r.gen_range(-3..=3)).collect();
        let same = euler_class_with_offsets(rep, &offsets).ok() == euler_class(rep).ok();
        t.check(same, || format!("trial {k}: euler class depends on lift offsets {offsets:?}"));
    }
    t
}

fn bi() -> Tally {
    let mut t = Tally::new("bi");
    let g = match bi_generate() {
        Ok(g) => g,
        Err(e) => {
            t.check(false, || e.to_string());
            return t;
        }
    };
    t.check(g.order() == 120, || format!("order {}", g.order()));
    t.check(is_perfect(&g), || "not perfect".into());
    let center = g.center();
    t.check(center.len() == 2 && center.iter().all(|c| c.is_central(1e-12)), || format!("center {center:?}"));
    let noncentral: Vec<_> = g.elements.iter().filter(|e| !e.is_central(1e-9)).collect();
    t.check(noncentral.len() == 118, || format!("{} non-central elements", noncentral.len()));
    for e in noncentral {
        t.check(normally_generates(e, &g) == Ok(true), || format!("{e:?} does not normally generate"));
    }
    t
}

fn octagon(cfg: &RunConfig) -> Tally {
    let mut t = Tally::new("octagon");
    let rep = fuchsian_octagon();
    let defect = relator_defect(&rep);
    t.check(defect <= cfg.tolerances.defect, || format!("defect {defect:e}"));
    let euler = euler_class(&rep);
    t.check(matches!(euler, Ok(2) | Ok(-2)), || format!("euler class {euler:?}"));
    let hyperbolic = rep.gens.iter().all(|g| matches!(classify(g), Classification::Hyperbolic(_)));
    t.check(hyperbolic, || "non-hyperbolic side pairing".into());
    t
}
