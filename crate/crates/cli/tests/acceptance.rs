//! Acceptance gate: one PASS/FAIL line per criterion.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use common::*;
use flatholo_core::circledyn::*;
use flatholo_core::mwbuild::*;
use flatholo_core::psl2::{dist_to_rotations, ProjMatrix};
use flatholo_core::su2lab::*;
use flatholo_core::ucover::*;
use rand::Rng;
use std::f64::consts::PI;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(limit: Duration, elapsed: Duration) -> Result<(), String> {
    ensure(elapsed < limit, || format!("runtime {:.3}s over {:.0}s", elapsed.as_secs_f64(), limit.as_secs_f64()))
}

fn pl_close<T: PlHomeo>(f: &T, g: &T) -> f64 {
    grid_sup(|x| f.eval(x), |x| g.eval(x), 10_000).max(f.sup_dist(g))
}

fn c1_quadratic_law() -> Outcome {
    let t = Instant::now();
    let slope = log_log_slope(&[0.2, 0.1, 0.05, 0.025, 0.0125]).map_err(|e| e.to_string())?;
    within(Duration::from_secs(1), t.elapsed())?;
    ensure((slope - 2.0).abs() <= 0.05, || format!("slope {slope}"))?;
    Ok(format!("slope {slope:.5}"))
}

fn theorem_grid() -> Result<Vec<BuildReport>, String> {
    let mut out = Vec::new();
    for chi in [1, 2] {
        for eps in [0.2, 0.1, 0.05] {
            for m in 1..=3 {
                out.push(build(m, chi, eps).map_err(|e| format!("method {m} chi {chi} eps {eps}: {e}"))?);
            }
        }
    }
    Ok(out)
}

fn c2_construction() -> Outcome {
    let t = Instant::now();
    let cal = Calibration::default();
    let reports = theorem_grid()?;
    let mut worst_defect: f64 = 0.0;
    for r in &reports {
        let tag = format!("method {} chi {} eps {}", r.method, r.chi, r.epsilon_requested);
        let defect = relator_defect(&r.rep);
        worst_defect = worst_defect.max(defect);
        ensure(defect <= 1e-8, || format!("{tag}: defect {defect:e}"))?;
        let euler = euler_class(&r.rep).map_err(|e| format!("{tag}: {e}"))?;
        ensure(euler == r.chi, || format!("{tag}: euler {euler}"))?;
        let dist = r.rep.gens.iter().map(dist_to_rotations).fold(0.0, f64::max);
        ensure(dist <= r.epsilon_requested + 1e-4, || format!("{tag}: dist {dist}"))?;
        let bound = genus_bound(r.chi, r.epsilon_requested, &cal);
        ensure(r.genus as u64 <= bound, || format!("{tag}: genus {} > bound {bound}", r.genus))?;
        if r.method == 1 {
            let theta = commutator_angle(r.epsilon_used).map_err(|e| e.to_string())?;
            let miss = (r.genus as f64 * theta - r.chi.abs() as f64).abs();
            ensure(miss <= 1e-9, || format!("{tag}: g theta - |chi| = {miss:e}"))?;
        }
    }
    within(Duration::from_secs(60), t.elapsed())?;
    Ok(format!("{} builds, max defect {worst_defect:.1e}", reports.len()))
}

fn c3_genus_scaling() -> Outcome {
    let mut ratios = Vec::new();
    for eps in [0.1, 0.05, 0.025] {
        let a = build_method1(1, eps).map_err(|e| e.to_string())?.genus as f64;
        let b = build_method1(1, eps / 2.0).map_err(|e| e.to_string())?.genus as f64;
        let r = b / a;
        ensure((r - 4.0).abs() <= 1.0, || format!("eps {eps}: ratio {r}"))?;
        ratios.push(format!("{r:.3}"));
    }
    Ok(format!("ratios {}", ratios.join(", ")))
}

fn c4_milnor_wood() -> Outcome {
    let mut reports = theorem_grid()?;
    for chi in [-3, 3, 5] {
        reports.push(build_method1(chi, 0.2).map_err(|e| e.to_string())?);
    }
    let mut checked = 0;
    for r in &reports {
        if r.genus >= 2 {
            ensure(r.euler.unsigned_abs() as usize <= 2 * r.genus - 2, || format!("genus {} euler {}", r.genus, r.euler))?;
            checked += 1;
        }
        if r.method == 1 {
            let rhs = 4.0 * r.genus as f64 * r.epsilon_requested + 1e-9;
            ensure(r.chi.abs() as f64 <= rhs, || format!("|chi| {} > 4 g eps {rhs}", r.chi))?;
        }
    }
    let oct = fuchsian_octagon();
    let e = euler_class(&oct).map_err(|e| e.to_string())?;
    ensure(e.unsigned_abs() <= 2, || format!("octagon euler {e}"))?;
    Ok(format!("{checked} reps with g >= 2 plus the octagon"))
}

fn c5_euler_oracle() -> Outcome {
    let oct = fuchsian_octagon();
    let defect = relator_defect(&oct);
    ensure(defect <= 1e-8, || format!("octagon defect {defect:e}"))?;
    let e = euler_class(&oct).map_err(|e| e.to_string())?;
    ensure(e.abs() == 2, || format!("octagon euler {e}"))?;
    ensure(euler_class(&SurfaceRep::trivial(2)) == Ok(0), || "trivial rep".into())?;
    let mut r = rng(505);
    let rot = SurfaceRep::new(3, (0..6).map(|_| ProjMatrix::rotation(r.gen_range(0.0..PI))).collect()).unwrap();
    ensure(euler_class(&rot) == Ok(0), || "rotation rep".into())?;
    let reps = [oct, build_method1(1, 0.1).unwrap().rep, build_method3(-2, 0.2).unwrap().rep];
    for k in 0..100 {
        let rep = &reps[k % reps.len()];
        let offsets: Vec<i64> = (0..rep.gens.len()).map(|_| r.gen_range(-3..=3)).collect();
        let a = euler_class_with_offsets(rep, &offsets);
        ensure(a == euler_class(rep), || format!("trial {k}: {a:?}"))?;
    }
    Ok(format!("octagon euler {e}, defect {defect:.1e}; 100 offset trials"))
}

fn c6_universal_cover() -> Outcome {
    let mut r = rng(606);
    for _ in 0..100_000 {
        let (g, h) = (random_proj(&mut r), random_proj(&mut r));
        let s = cocycle(&g, &h);
        ensure(s == 0 || s == 1, || format!("cocycle {s}"))?;
    }
    let mut worst: f64 = 0.0;
    for _ in 0..10_000 {
        let x = LiftedElement::new(random_elliptic(&mut r, 3.0), r.gen_range(-3..=3));
        let y = random_lifted(&mut r);
        let d = translation_number(&lift_compose(&x, &y)) - translation_number(&x) - translation_number(&y);
        worst = worst.max(d.abs());
    }
    ensure(worst < 1.0, || format!("quasimorphism defect {worst}"))?;
    let mut gap: f64 = 0.0;
    for _ in 0..100 {
        let x = random_lifted(&mut r);
        gap = gap.max((translation_number(&x) - translation_number_orbit(&x, 200_000)).abs());
    }
    ensure(gap <= 1e-5, || format!("closed form vs orbit {gap:e}"))?;
    Ok(format!("max quasimorphism defect {worst:.4} (elliptic first factor), orbit gap {gap:.1e}"))
}

fn c7_conjugate_products() -> Outcome {
    let t = Instant::now();
    let mut r = rng(707);
    let (mut worst_word, mut worst_ratio): (f64, f64) = (0.0, 0.0);
    for k in 0..50 {
        let p: f64 = r.gen_range(0.0..1.0);
        let delta = r.gen_range(0.005..0.02);
        let h = net_displacer(&[p], delta).map_err(|e| e.to_string())?;
        let (lo, hi) = (p - 1.5 * delta, p + 1.5 * delta);
        let (ma, mb) = (r.gen_range(1..4), r.gen_range(1..4));
        let a = random_bump(&mut r, lo, hi, ma);
        let b = random_bump(&mut r, lo, hi, mb);
        let g = compressor(&Arc::new(lo, hi), &Arc::new(p - 0.8 * delta, p + 0.8 * delta), 0.5 * delta)
            .map_err(|e| e.to_string())?;
        let (ga, gb) = (a.conj(&g), b.conj(&g));
        let w = eq5_word(&ga, &gb, &h).map_err(|e| format!("instance {k}: {e}"))?;
        worst_word = worst_word.max(pl_close(&product(&w), &ga.commutator(&gb)));
        let rep = conjugator_norms(&a, &b, &h, &g).map_err(|e| format!("instance {k}: {e}"))?;
        ensure(rep.within_bound(), || format!("instance {k}: norms {:?} eps {}", rep.norms, rep.eps))?;
        worst_word = worst_word.max(pl_close(&rep.product(&h), &a.commutator(&b)));
        worst_ratio = worst_ratio.max(rep.norms.iter().fold(0.0, |m: f64, n| m.max(*n)) / rep.eps);
    }
    ensure(worst_word <= 1e-12, || format!("product error {worst_word:e}"))?;
    within(Duration::from_secs(5), t.elapsed())?;
    Ok(format!("max error {worst_word:.1e}, max displacement {worst_ratio:.3} eps"))
}

fn c8_fragmentation() -> Outcome {
    let mut r = rng(808);
    let mut worst: f64 = 0.0;
    for k in 0..50 {
        let cover = four_arc_cover(r.gen_range(0.0..0.25));
        let f = random_circle_homeo(&mut r, 0.05, 12);
        let parts = fragment(&f, &cover).map_err(|e| format!("map {k}: {e}"))?;
        worst = worst.max(pl_close(&recompose(&parts), &f));
        for (i, (p, u)) in parts.iter().zip(&cover).enumerate() {
            let inside = p.support(SUPPORT_TOL).iter().all(|s| u.contains(s, 1e-12));
            ensure(inside, || format!("map {k}: factor {i} leaves its arc"))?;
        }
    }
    ensure(worst <= 1e-12, || format!("recomposition error {worst:e}"))?;
    Ok(format!("max recomposition error {worst:.1e}"))
}

fn c9_binary_icosahedral() -> Outcome {
    let t = Instant::now();
    let g = bi_generate().map_err(|e| e.to_string())?;
    ensure(g.order() == 120, || format!("order {}", g.order()))?;
    ensure(is_perfect(&g), || "not perfect".into())?;
    let center = g.center();
    let pm = center.len() == 2
        && center.iter().any(|c| c.dist(&UnitQuaternion::IDENTITY) < 1e-12)
        && center.iter().any(|c| c.dist(&UnitQuaternion::MINUS_ONE) < 1e-12);
    ensure(pm, || format!("center {center:?}"))?;
    let noncentral: Vec<_> = g.elements.iter().filter(|e| !e.is_central(1e-9)).collect();
    ensure(noncentral.len() == 118, || format!("{} non-central", noncentral.len()))?;
    for e in &noncentral {
        ensure(normally_generates(e, &g) == Ok(true), || format!("{e:?} fails"))?;
    }
    within(Duration::from_secs(5), t.elapsed())?;
    Ok(format!("|BI| = 120, perfect, center {{+1, -1}}, 118/118 normal generators in {:.2}s", t.elapsed().as_secs_f64()))
}

fn c10_su2_solvers() -> Outcome {
    let mut r = rng(1010);
    let mut worst_n = 0;
    let mut worst: f64 = 0.0;
    for k in 0..20 {
        let axis = UnitQuaternion::random(&mut r).axis().unwrap();
        let g = UnitQuaternion::from_axis_angle(axis, PI / 5.0);
        let target = UnitQuaternion::random(&mut r);
        let s = conj_product_solve(&target, &g, 64, 1e-6, k).map_err(|e| format!("target {k}: {e}"))?;
        let res = evaluate_conj_product(&s.factors, &g).dist(&target);
        ensure(res <= 1e-6 && s.factors.len() <= 64, || format!("target {k}: residual {res:e}"))?;
        worst = worst.max(res);
        worst_n = worst_n.max(s.factors.len());
    }
    let mut worst_c: f64 = 0.0;
    for k in 0..20 {
        let f = UnitQuaternion::random(&mut r);
        let pairs = commutator_decomp_su2(&f, 1 + k % 3).map_err(|e| e.to_string())?;
        worst_c = worst_c.max(commutator_product(&pairs).dist(&f));
    }
    ensure(worst_c <= 1e-8, || format!("commutator residual {worst_c:e}"))?;
    let g = UnitQuaternion::from_axis_angle(UnitQuaternion::random(&mut r).axis().unwrap(), PI / 5.0);
    let id = UnitQuaternion::IDENTITY;
    let targets = [
        (UnitQuaternion::from_axis_angle([0.0, 0.0, 1.0], PI / 6.0), id),
        (UnitQuaternion::random(&mut r), id),
        (UnitQuaternion::random(&mut r), UnitQuaternion::random(&mut r)),
    ];
    let probe = diagonal_closure_probe(&targets, &g, 200).map_err(|e| e.to_string())?;
    let worst_p = probe
        .iter()
        .map(|p| {
            let (a, b) = evaluate_diag(&p.factors, &g);
            a.dist(&p.target.0).max(b.dist(&p.target.1))
        })
        .fold(0.0, f64::max);
    ensure(worst_p <= 1e-4, || format!("probe residual {worst_p:e}"))?;
    Ok(format!("conj residual {worst:.1e} (N <= {worst_n}), commutator {worst_c:.1e}, probe {worst_p:.1e}"))
}

fn c11_interval_action() -> Outcome {
    let mut r = rng(1111);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let (x, y) = (random_lifted(&mut r), random_lifted(&mut r));
        let xy = tilde_interval_action(&lift_compose(&x, &y));
        let (ax, ay) = (tilde_interval_action(&x), tilde_interval_action(&y));
        for _ in 0..8 {
            let t = r.gen_range(0.0..1.0);
            worst = worst.max((xy.eval(t) - ax.eval(ay.eval(t))).abs());
        }
        ensure(xy.eval(0.0) == 0.0 && xy.eval(1.0) == 1.0, || "endpoint moved".into())?;
    }
    ensure(worst <= 1e-9, || format!("homomorphism error {worst:e}"))?;
    let mut faithful = 0;
    while faithful < 100 {
        let x = random_lifted(&mut r);
        if x.g.dist_to_identity() == 0.0 && x.w == 0 {
            continue;
        }
        let a = tilde_interval_action(&x);
        let moved = (1..=1024).map(|i| i as f64 / 1025.0).any(|t| (a.eval(t) - t).abs() > 1e-12);
        ensure(moved, || format!("{x:?} fixes every sample point"))?;
        faithful += 1;
    }
    Ok(format!("homomorphism error {worst:.1e}; 100/100 nontrivial elements move a sample point"))
}

fn c12_cli_determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let cfg = dir.path().join("cfg.json");
    std::fs::write(&cfg, r#"{"seed": 12}"#).map_err(|e| e.to_string())?;
    let run = |name: &str| -> Result<Vec<u8>, String> {
        let out = dir.path().join(name);
        let status = Command::new(env!("CARGO_BIN_EXE_flatholo"))
            .args(["sweep", "--config", cfg.to_str().unwrap(), "--chi", "1,2", "--eps", "0.2,0.1", "--out", out.to_str().unwrap()])
            .env_remove("FLATHOLO_SEED")
            .stderr(std::process::Stdio::null())
            .status()
            .map_err(|e| e.to_string())?;
        ensure(status.success(), || format!("exit {status}"))?;
        std::fs::read(&out).map_err(|e| e.to_string())
    };
    let (a, b) = (run("a.csv")?, run("b.csv")?);
    ensure(a == b, || "sweep CSVs differ".into())?;
    Ok(format!("two sweeps, {} identical bytes", a.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("quadratic commutator law", c1_quadratic_law),
        ("construction grid", c2_construction),
        ("genus scaling", c3_genus_scaling),
        ("Milnor-Wood and 4g eps", c4_milnor_wood),
        ("Euler-class oracle", c5_euler_oracle),
        ("universal-cover arithmetic", c6_universal_cover),
        ("conjugate-product identities", c7_conjugate_products),
        ("fragmentation", c8_fragmentation),
        ("binary icosahedral group", c9_binary_icosahedral),
        ("SU(2) solvers", c10_su2_solvers),
        ("interval action", c11_interval_action),
        ("CLI determinism", c12_cli_determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let res = f();
        let secs = t.elapsed().as_secs_f64();
        match res {
            Ok(d) => println!("PASS {:>2} {name}: {d} [{secs:.2}s]", i + 1),
            Err(d) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {d} [{secs:.2}s]", i + 1);
            }
        }
    }
    println!("acceptance: {}/12 passed", 12 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
