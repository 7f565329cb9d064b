mod common;

use common::*;
use flatholo_core::circledyn::*;
use flatholo_core::ucover::{lift_compose, LiftedElement};
use proptest::prelude::*;
use rand::Rng;

const GRID: usize = 10_000;

fn close<T: PlHomeo>(f: &T, g: &T) -> f64 {
    grid_sup(|x| f.eval(x), |x| g.eval(x), GRID).max(f.sup_dist(g))
}

#[test]
fn eq5_product_matches_commutator() {
    let mut r = rng(5);
    for _ in 0..50 {
        let (a, b, h, _) = eq5_instance(&mut r);
        let w = eq5_word(&a, &b, &h).unwrap();
        let err = close(&product(&w), &a.commutator(&b));
        assert!(err <= 1e-12, "{err}");
    }
}

#[test]
fn eq5_word_on_the_interval() {
    let mut r = rng(6);
    for _ in 0..20 {
        let a = random_interval_homeo(&mut r, 2);
        let b = random_interval_homeo(&mut r, 2);
        let a = PlIntervalHomeo::from_samples(
            (0..=40).map(|i| i as f64 / 40.0),
            |x| if (0.1..0.2).contains(&x) { 0.1 + 0.1 * a.eval((x - 0.1) / 0.1) } else { x },
        )
        .unwrap();
        let b = PlIntervalHomeo::from_samples(
            (0..=40).map(|i| i as f64 / 40.0),
            |x| if (0.1..0.2).contains(&x) { 0.1 + 0.1 * b.eval((x - 0.1) / 0.1) } else { x },
        )
        .unwrap();
        let h = PlIntervalHomeo::from_breaks(&[(0.05, 0.05), (0.1, 0.3), (0.2, 0.4), (0.45, 0.45)]).unwrap();
        let w = eq5_word(&a, &b, &h).unwrap();
        assert!(close(&product(&w), &a.commutator(&b)) <= 1e-12);
    }
}

#[test]
fn conjugators_stay_small() {
    let mut r = rng(7);
    for _ in 0..30 {
        let p: f64 = r.gen_range(0.0..1.0);
        let delta = r.gen_range(0.005..0.02);
        let h = net_displacer(&[p], delta).unwrap();
        let u = Arc::new(p - 1.5 * delta, p + 1.5 * delta);
        let v = Arc::new(p - 0.8 * delta, p + 0.8 * delta);
        let g = compressor(&u, &v, 0.5 * delta).unwrap();
        let a = random_bump(&mut r, p - 1.5 * delta, p + 1.5 * delta, 2);
        let b = random_bump(&mut r, p - 1.5 * delta, p + 1.5 * delta, 2);
        let rep = conjugator_norms(&a, &b, &h, &g).unwrap();
        assert!(rep.within_bound(), "{:?} eps {}", rep.norms, rep.eps);
        assert!(close(&rep.product(&h), &a.commutator(&b)) <= 1e-12);
    }
}

#[test]
fn conjugator_example_bound() {
    // bumps of diameter 0.01, h displacing by 0.02
    let h = net_displacer(&[0.5], 0.02 / 2.25).unwrap();
    assert!((h.sup_displacement() - 0.02).abs() < 1e-12);
    let a = PlCircleHomeo::from_breaks(&[(0.495, 0.495), (0.5, 0.503), (0.505, 0.505)]).unwrap();
    let b = PlCircleHomeo::from_breaks(&[(0.495, 0.495), (0.499, 0.497), (0.505, 0.505)]).unwrap();
    let g = compressor(&Arc::new(0.495, 0.505), &Arc::new(0.497, 0.503), 0.001).unwrap();
    let rep = conjugator_norms(&a, &b, &h, &g).unwrap();
    assert!(rep.norms.iter().all(|&n| n <= 0.16), "{:?}", rep.norms);
}

#[test]
fn conjugator_norms_scale_linearly() {
    let build = |s: f64| {
        let h = net_displacer(&[0.3], 0.02 * s).unwrap();
        let u = Arc::new(0.3 - 0.03 * s, 0.3 + 0.03 * s);
        let v = Arc::new(0.3 - 0.015 * s, 0.3 + 0.015 * s);
        let g = compressor(&u, &v, 0.01 * s).unwrap();
        let a = PlCircleHomeo::from_breaks(&[(0.3 - 0.03 * s, 0.3 - 0.03 * s), (0.3, 0.3 + 0.01 * s), (0.3 + 0.03 * s, 0.3 + 0.03 * s)]).unwrap();
        let b = PlCircleHomeo::from_breaks(&[(0.3 - 0.02 * s, 0.3 - 0.02 * s), (0.3 - 0.01 * s, 0.3 - 0.015 * s), (0.3 + 0.02 * s, 0.3 + 0.02 * s)]).unwrap();
        conjugator_norms(&a, &b, &h, &g).unwrap().norms
    };
    let big = build(1.0);
    let small = build(0.5);
    for (x, y) in big.iter().zip(&small) {
        assert!(*x <= 2.5 * y + 1e-15 && *y <= *x + 1e-15, "{x} {y}");
    }
}

#[test]
fn identity_inputs_give_zero_norms() {
    let id = PlCircleHomeo::identity();
    let rep = conjugator_norms(&id, &id, &id, &id).unwrap();
    assert!(rep.norms.iter().all(|&n| n == 0.0));
}

#[test]
fn fragment_random_maps() {
    let mut r = rng(8);
    let cover = four_arc_cover(0.05);
    for _ in 0..50 {
        let f = random_circle_homeo(&mut r, 0.05, 12);
        let parts = fragment(&f, &cover).unwrap();
        assert!(close(&recompose(&parts), &f) <= 1e-12);
        for (p, u) in parts.iter().zip(&cover) {
            assert!(p.support(SUPPORT_TOL).iter().all(|s| u.contains(s, 1e-12)));
        }
    }
}

#[test]
fn fragment_trivial_cases() {
    let cover = four_arc_cover(0.0);
    let parts = fragment(&PlCircleHomeo::identity(), &cover).unwrap();
    assert!(parts.iter().all(|p| p.is_identity(0.0)));
    let f = PlCircleHomeo::from_breaks(&[(0.05, 0.05), (0.1, 0.15), (0.3, 0.3)]).unwrap();
    let parts = fragment(&f, &cover).unwrap();
    assert_eq!(parts[0], f);
    assert!(parts[1..].iter().all(|p| p.is_identity(0.0)));
}

#[test]
fn fragment_rejects_large_displacement() {
    let cover = four_arc_cover(0.0);
    let f = PlCircleHomeo::rotation(0.07);
    assert!(matches!(fragment(&f, &cover), Err(PlError::DisplacementTooLarge { .. })));
}

#[test]
fn fragment_rotation_by_small_angle() {
    let cover = four_arc_cover(0.0);
    let f = PlCircleHomeo::rotation(0.04);
    let parts = fragment(&f, &cover).unwrap();
    assert!(recompose(&parts).sup_dist(&f) <= 1e-12);
}

#[test]
fn net_displacer_eight_points() {
    let net: Vec<f64> = (0..8).map(|i| 0.125 * i as f64 + 0.01).collect();
    let h = net_displacer(&net, 0.01).unwrap();
    assert!(h.sup_displacement() <= 0.04);
    for &p in &net {
        let v = Arc::new(p - 0.01, p + 0.01);
        assert!(!h.image_arc(&v).overlaps(&v));
        let ball = Arc::new(p - 0.02, p + 0.02);
        assert!(h.support(SUPPORT_TOL).iter().any(|s| ball.contains(s, 1e-12)));
    }
}

#[test]
fn tilde_action_identity_and_deck() {
    let id = tilde_interval_action(&LiftedElement::IDENTITY);
    let deck = tilde_interval_action(&LiftedElement::deck(1));
    for i in 1..1024 {
        let t = i as f64 / 1024.0;
        assert!((id.eval(t) - t).abs() < 1e-15);
        assert!(deck.eval(t) > t);
    }
    assert_eq!((deck.eval(0.0), deck.eval(1.0)), (0.0, 1.0));
}

#[test]
fn tilde_action_is_a_homomorphism() {
    let mut r = rng(9);
    for _ in 0..1000 {
        let x = random_lifted(&mut r);
        let y = random_lifted(&mut r);
        let xy = tilde_interval_action(&lift_compose(&x, &y));
        let (ax, ay) = (tilde_interval_action(&x), tilde_interval_action(&y));
        for i in 0..=32 {
            let t = i as f64 / 32.0;
            assert!((xy.eval(t) - ax.eval(ay.eval(t))).abs() <= 1e-9);
        }
    }
}

#[test]
fn tilde_export_is_close() {
    let mut r = rng(10);
    let x = random_lifted(&mut r);
    let a = tilde_interval_action(&x);
    let pl = a.to_pl(TILDE_EXPORT_NODES).unwrap();
    assert_eq!((pl.eval(0.0), pl.eval(1.0)), (0.0, 1.0));
    for i in 0..=TILDE_EXPORT_NODES {
        let t = i as f64 / TILDE_EXPORT_NODES as f64;
        assert!((pl.eval(t) - a.eval(t)).abs() < 1e-12);
    }
}

#[test]
fn implant_is_a_homomorphism() {
    let mut r = rng(11);
    let arc = Arc::new(0.8, 1.15);
    for _ in 0..50 {
        let f = random_interval_homeo(&mut r, 3);
        let g = random_interval_homeo(&mut r, 3);
        let lhs = implant(&f.compose(&g), &arc).unwrap();
        let rhs = implant(&f, &arc).unwrap().compose(&implant(&g, &arc).unwrap());
        assert!(close(&lhs, &rhs) <= 1e-12);
        assert!(implant(&f, &arc).unwrap().support(SUPPORT_TOL).iter().all(|s| arc.contains(s, 1e-12)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn circle_group_laws(seed in any::<u64>()) {
        let mut r = rng(seed);
        let f = random_circle_homeo(&mut r, 0.3, 6);
        let g = random_circle_homeo(&mut r, 0.3, 6);
        let h = random_circle_homeo(&mut r, 0.3, 6);
        prop_assert!(f.compose(&f.inverse()).is_identity(1e-12));
        prop_assert!(f.inverse().compose(&f).is_identity(1e-12));
        let lhs = f.compose(&g).compose(&h);
        let rhs = f.compose(&g.compose(&h));
        prop_assert!(close(&lhs, &rhs) <= 1e-12);
        let fg = f.compose(&g);
        prop_assert!(fg.len() <= f.len() + g.len());
        for i in 0..100 {
            let x = i as f64 / 100.0;
            prop_assert!(flatholo_core::psl2::circle_dist(fg.eval(x), f.eval(g.eval(x))) <= 1e-12);
        }
    }

    #[test]
    fn interval_group_laws(seed in any::<u64>()) {
        let mut r = rng(seed);
        let f = random_interval_homeo(&mut r, 4);
        let g = random_interval_homeo(&mut r, 4);
        let h = random_interval_homeo(&mut r, 4);
        prop_assert!(f.compose(&f.inverse()).is_identity(1e-12));
        prop_assert!(close(&f.compose(&g).compose(&h), &f.compose(&g.compose(&h))) <= 1e-12);
        let fg = f.compose(&g);
        prop_assert_eq!((fg.eval(0.0), fg.eval(1.0)), (0.0, 1.0));
    }

    #[test]
    fn disjoint_supports_commute(seed in any::<u64>()) {
        let mut r = rng(seed);
        let s = r.gen_range(0.0..1.0);
        let f = random_bump(&mut r, s, s + 0.3, 3);
        let g = random_bump(&mut r, s + 0.4, s + 0.9, 3);
        prop_assert!(f.commutator(&g).is_identity(1e-12));
    }

    #[test]
    fn conjugate_support_moves_with_conjugator(seed in any::<u64>()) {
        let mut r = rng(seed);
        let s = r.gen_range(0.0..1.0);
        let f = random_bump(&mut r, s, s + 0.2, 3);
        let g = random_circle_homeo(&mut r, 0.2, 5);
        let conj = f.conj(&g);
        // |g f g^-1 (y) - y| <= L_g |f(x) - x| with L_g <= 4
        let moved: Vec<Arc> = f.support(SUPPORT_TOL / 8.0).iter().map(|a| g.image_arc(a)).collect();
        for piece in conj.support(SUPPORT_TOL) {
            prop_assert!(moved.iter().any(|m| m.contains(&piece, 1e-12)));
        }
    }

    #[test]
    fn eq5_identity_holds(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (a, b, h, _) = eq5_instance(&mut r);
        let w = eq5_word(&a, &b, &h).unwrap();
        prop_assert!(close(&product(&w), &a.commutator(&b)) <= 1e-12);
    }

    #[test]
    fn json_round_trip_is_exact(seed in any::<u64>()) {
        let mut r = rng(seed);
        let f = random_interval_homeo(&mut r, 5);
        let g: PlIntervalHomeo = serde_json::from_str(&serde_json::to_string(&f).unwrap()).unwrap();
        prop_assert_eq!(f, g);
    }
}

