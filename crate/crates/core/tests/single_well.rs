use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use switchwell::oracle::{adaptive_quad_points, Grid, WaveField};
use switchwell::single_well::*;

fn eq18_quadrature(tau: f64, l: f64) -> Complex64 {
    let f = |x: f64| free_evolution(x, tau, l).unwrap() * (-x.abs()).exp();
    adaptive_quad_points(f, &[-40.0, -l, 0.0, 40.0], 1e-11).unwrap().value
}

#[test]
fn delayed_amplitude_matches_overlap_quadrature() {
    let a = delayed_amplitude(1.0, 2.0).unwrap();
    let q = eq18_quadrature(1.0, 2.0);
    assert!((a - q).norm() < 1e-6, "{a} vs {q}");
    let mut rng = ChaCha8Rng::seed_from_u64(18);
    for _ in 0..20 {
        let tau = rng.gen_range(0.01..10.0);
        let l = rng.gen_range(0.1..5.0);
        let a = delayed_amplitude(tau, l).unwrap();
        let q = eq18_quadrature(tau, l);
        assert!((a - q).norm() < 1e-6, "tau={tau} l={l}: {a} vs {q}");
    }
}

#[test]
fn kernel_route_matches_exact_solution() {
    let grid = Grid::new(-31.0, 30.0, 0.001, 1e-3).unwrap();
    let initial = WaveField::from_fn(grid, 0.0, |x| initial_state(x, 1.0, 0.0));
    let via_kernel = propagate_kernel(&initial, 3.0, 0.07, 0.0).unwrap();
    let exact = evolve_after_switch(0.0, 0.07, 3.0, 1.0).unwrap();
    assert!((via_kernel - exact).norm() < 1e-4, "{via_kernel} vs {exact}");

    for &(x, t, mu) in &[(0.5, 0.3, 0.5), (-1.2, 1.0, 3.0), (2.0, 2.0, 1.0)] {
        let a = propagate_kernel(&initial, mu, t, x).unwrap();
        let b = evolve_after_switch(x, t, mu, 1.0).unwrap();
        assert!((a - b).norm() < 1e-4, "x={x} t={t} mu={mu}: {a} vs {b}");
    }

    let free = propagate_kernel(&initial, 0.0, 2.0, 0.0).unwrap();
    assert!((free - free_evolution(0.0, 2.0, 1.0).unwrap()).norm() < 1e-4);
}

#[test]
fn kernel_sifts_a_delta_field() {
    let grid = Grid::new(-5.0, 5.0, 0.01, 1e-3).unwrap();
    let origin = grid.node_index(0.0).unwrap();
    let mut values = vec![Complex64::new(0.0, 0.0); grid.n_nodes()];
    values[origin] = Complex64::new(1.0 / grid.dx, 0.0);
    let field = WaveField::new(grid, values, 0.0).unwrap();
    let (x, t) = (0.8, 0.5);
    let k = propagate_kernel(&field, 0.0, t, x).unwrap();
    let expected = Complex64::from_polar(1.0, x * x / (4.0 * t)) / (2.0 * Complex64::new(0.0, std::f64::consts::PI * t).sqrt());
    assert!((k - expected).norm() < 1e-12);
    assert!(propagate_kernel(&field, 0.0, 0.0, x).is_err());
}

#[test]
fn green_kernel_builds_the_exact_solution() {
    // the kernel route with a quadrature far finer than any grid
    for &(x, t, mu) in &[(0.0, 0.5, 3.0), (0.4, 0.3, 0.5)] {
        let f = |xp: f64| green_kernel(x, xp, t, mu).unwrap() * (-(xp + 1.0).abs()).exp();
        let q = adaptive_quad_points(f, &[-30.0, -1.0, 0.0, x.max(0.0) + 1e-9, 30.0], 1e-10).unwrap().value;
        let exact = evolve_after_switch(x, t, mu, 1.0).unwrap();
        assert!((q - exact).norm() < 1e-8, "{q} vs {exact}");
    }
}

#[test]
fn long_time_overlap_reproduces_retention() {
    let (mu, l, t) = (3.0, 1.0, 50.0);
    let f = |x: f64| evolve_after_switch(x, t, mu, l).unwrap() * final_state(x, mu, 0.0).unwrap();
    let a = adaptive_quad_points(f, &[-40.0, -l, 0.0, 40.0], 1e-10).unwrap().value;
    let p = retention_probability(mu, l).unwrap().value;
    assert!((a.norm_sqr() - p).abs() < 2e-2, "{} vs {p}", a.norm_sqr());
}

#[test]
fn strict_retention_below_one() {
    for j in 1..=200 {
        let l = j as f64 * 0.05;
        for &mu in &[0.3, 1.0, 2.0] {
            assert!(retention_probability(mu, l).unwrap().value < 1.0);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 300, ..ProptestConfig::default() })]

    #[test]
    fn probabilities_lie_in_unit_interval(mu in 1e-3f64..10.0, l in 1e-3f64..10.0, tau in 0.0f64..50.0) {
        let p = retention_probability(mu, l).unwrap();
        prop_assert!(p.in_unit_interval());
        let d = delayed_amplitude(tau, l).unwrap().norm_sqr();
        prop_assert!((0.0..=1.0).contains(&d), "tau={} l={} P={}", tau, l, d);
        let s = HopScenario::new(l, 1.0, tau).unwrap().retention().unwrap();
        prop_assert!(s.in_unit_interval());
    }

    #[test]
    fn evolution_stays_finite(x in -20.0f64..20.0, t in 1e-4f64..100.0, mu in 0.0f64..8.0, l in 0.0f64..6.0) {
        let v = evolve_after_switch(x, t, mu, l).unwrap();
        prop_assert!(v.re.is_finite() && v.im.is_finite());
        prop_assert!(v.norm() < 5.0);
    }
}
