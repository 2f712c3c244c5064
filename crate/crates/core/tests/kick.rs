use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use switchwell::double_well::{bound_state, Parity};
use switchwell::kick::*;
use switchwell::oracle::adaptive_quad_points;

#[test]
fn transition_matches_quadrature_at_random_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6b1c);
    for _ in 0..100 {
        let k: f64 = rng.gen_range(-10.0..10.0);
        let l: f64 = rng.gen_range(1.05..8.0);
        let e = bound_state(l, Parity::Even).unwrap();
        let o = bound_state(l, Parity::Odd).unwrap();
        let f = |x: f64| Complex64::from_polar(e.value(x) * o.value(x), k * x);
        let q = adaptive_quad_points(f, &[-l - 40.0, -l, 0.0, 40.0], 1e-12).unwrap().value;
        let p = kick_transition(k, l).unwrap().value;
        assert!((p - q.norm_sqr()).abs() < 1e-10, "k={k} l={l}: {p} vs {}", q.norm_sqr());
    }
}

#[test]
fn transition_bounded_on_dense_sweep() {
    for i in 1..=70 {
        let l = 1.0 + i as f64 * 0.1;
        for j in 0..=200 {
            let k = j as f64 * 0.1;
            let p = kick_transition(k, l).unwrap().value;
            assert!((0.0..=1.0).contains(&p), "k={k} l={l}: {p}");
        }
    }
}

#[test]
fn retention_matches_quadrature() {
    for j in 0..50 {
        let k = j as f64 * 0.4;
        let f = |x: f64| Complex64::from_polar((-2.0 * x.abs()).exp(), k * x);
        let q = adaptive_quad_points(f, &[-40.0, 0.0, 40.0], 1e-12).unwrap().value;
        let r = kick_retention(k).unwrap();
        assert!((r.value - q.norm_sqr()).abs() < 1e-10, "k={k}");
    }
}
