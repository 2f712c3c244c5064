use num_complex::Complex64;
use switchwell::double_well::*;
use switchwell::oracle::{adaptive_quad_points, fd_eigenstates, Grid, Well};

fn quad(f: impl Fn(f64) -> f64, l: f64) -> f64 {
    adaptive_quad_points(|x| Complex64::new(f(x), 0.0), &[-l - 40.0, -l, 0.0, 40.0], 1e-13).unwrap().value.re
}

#[test]
fn energies_match_finite_difference_eigensolver() {
    let l = 2.0f64;
    let grid = Grid::<f64>::new(-31.0, 29.0, 0.002, 1e-3).unwrap();
    let states = fd_eigenstates(&[Well::new(-l, 1.0), Well::new(0.0, 1.0)], &grid, 2).unwrap();
    let (e_even, e_odd) = spectrum(l).unwrap();
    assert_eq!(states.len(), 2);
    assert!((states[0].0 - e_even).abs() < 1e-4, "{} vs {e_even}", states[0].0);
    assert!((states[1].0 - e_odd.unwrap()).abs() < 1e-4);

    let grid = Grid::<f64>::new(-30.5, 30.0, 0.002, 1e-3).unwrap();
    let states = fd_eigenstates(&[Well::new(-0.5, 1.0), Well::new(0.0, 1.0)], &grid, 2).unwrap();
    assert_eq!(states.len(), 1);
    assert!(spectrum(0.5).unwrap().1.is_none());
    assert!((states[0].0 - spectrum(0.5).unwrap().0).abs() < 1e-4);

    let states = fd_eigenstates(&[Well::new(0.0, 1.0)], &grid, 2).unwrap();
    assert_eq!(states.len(), 1);
    assert!((states[0].0 + 1.0).abs() < 1e-4);
}

#[test]
fn eigenstates_are_orthonormal() {
    for &l in &[1.5, 2.0, 4.0, 8.0] {
        let e = bound_state(l, Parity::Even).unwrap();
        let o = bound_state(l, Parity::Odd).unwrap();
        assert!((quad(|x| e.value(x).powi(2), l) - 1.0).abs() < 1e-12, "l={l}");
        assert!((quad(|x| o.value(x).powi(2), l) - 1.0).abs() < 1e-12, "l={l}");
        assert!(quad(|x| e.value(x) * o.value(x), l).abs() < 1e-12, "l={l}");
    }
}

#[test]
fn sampled_states_are_orthogonal() {
    let l = 3.0;
    let e = bound_state(l, Parity::Even).unwrap();
    let o = bound_state(l, Parity::Odd).unwrap();
    let dx = 1e-3;
    let s: f64 = (0..=60_000).map(|i| -l / 2.0 - 30.0 + i as f64 * dx).map(|x| e.value(x) * o.value(x)).sum::<f64>() * dx;
    assert!(s.abs() < 1e-6, "{s}");
}

#[test]
fn retrap_sum_never_exceeds_one() {
    for j in 1..=200 {
        let l = j as f64 * 0.05;
        let (pe, po) = retrap_probabilities(l).unwrap();
        let total = pe.value + po.as_ref().map_or(0.0, |p| p.value);
        assert!(total <= 1.0 + 1e-12, "l={l}: {total}");
        assert_eq!(po.is_some(), l > 1.0);
    }
}

#[test]
fn retrap_matches_quadrature_overlaps() {
    for &l in &[0.5, 1.5, 2.0, 6.0] {
        let (pe, po) = retrap_probabilities(l).unwrap();
        let e = bound_state(l, Parity::Even).unwrap();
        let ov = quad(|x| (-(x + l).abs()).exp() * e.value(x), l);
        assert!((ov * ov - pe.value).abs() < 1e-10);
        if let Some(po) = po {
            let o = bound_state(l, Parity::Odd).unwrap();
            let ov = quad(|x| (-(x + l).abs()).exp() * o.value(x), l);
            assert!((ov * ov - po.value).abs() < 1e-10);
        }
    }
}
