//! Bound states of the finite-difference Hamiltonian `−D₂ + V` with on-node
//! delta wells: Sturm-sequence bisection for the eigenvalues, inverse
//! iteration for the eigenvectors.

use num_complex::Complex;

use super::grid::{Grid, WaveField, Well};
use super::tdse::on_node_potential;
use crate::error::{Error, Result};
use crate::scalar::{lit, Real};

pub const MAX_STATES: usize = 4;

/// Checks the well convention on the grid: a unit well must bind a single
/// state at `E = −1` (to the `O(dx²)` discretization error). Returns the energy.
pub fn convention_self_test() -> Result<f64> {
    let grid = Grid::<f64>::symmetric(20.0, 0.01, 1e-3)?;
    let states = fd_eigenstates(&[Well::new(0.0, 1.0)], &grid, 2)?;
    match states.as_slice() {
        [(e, _)] if (e + 1.0).abs() < 1e-3 => Ok(*e),
        _ => Err(Error::Config(format!(
            "well convention self-test failed: expected one bound state at E = -1, got {:?}",
            states.iter().map(|s| s.0).collect::<Vec<_>>()
        ))),
    }
}

/// Lowest `n_states` bound (negative-energy) eigenpairs, ascending in energy.
/// Fewer are returned when the potential binds fewer states.
pub fn fd_eigenstates<T: Real>(wells: &[Well<T>], grid: &Grid<T>, n_states: usize) -> Result<Vec<(T, WaveField<T>)>> {
    if n_states == 0 || n_states > MAX_STATES {
        return Err(Error::Config(format!("n_states must be in 1..={MAX_STATES}, got {n_states}")));
    }
    let potential = on_node_potential(grid, wells)?;
    let inv_dx2 = (grid.dx * grid.dx).recip();
    let diag: Vec<T> = potential.iter().map(|&v| lit::<T>(2.0) * inv_dx2 + v).collect();
    let off = -inv_dx2;

    let bound = count_below(&diag, off, T::zero());
    let wanted = n_states.min(bound);
    let lower = diag.iter().fold(T::infinity(), |m, &d| m.min(d)) - lit::<T>(2.0) * off.abs();

    let mut out = Vec::with_capacity(wanted);
    for k in 0..wanted {
        let energy = kth_eigenvalue(&diag, off, k, lower, T::zero());
        let vector = inverse_iteration(&diag, off, energy);
        let mut field = WaveField::new(*grid, vector.into_iter().map(|v| Complex::new(v, T::zero())).collect(), T::zero())?
            .normalized();
        orient(&mut field, wells);
        out.push((energy, field));
    }
    Ok(out)
}

/// Number of eigenvalues below `sigma` (negative pivots of `LDLᵀ` of `H − σ`).
fn count_below<T: Real>(diag: &[T], off: T, sigma: T) -> usize {
    let off2 = off * off;
    let tiny = T::min_positive_value().sqrt();
    let mut count = 0;
    let mut q = T::one();
    for (j, &d) in diag.iter().enumerate() {
        q = if j == 0 { d - sigma } else { d - sigma - off2 / q };
        if q == T::zero() {
            q = tiny;
        }
        if q < T::zero() {
            count += 1;
        }
    }
    count
}

fn kth_eigenvalue<T: Real>(diag: &[T], off: T, k: usize, mut lo: T, mut hi: T) -> T {
    let half: T = lit(0.5);
    for _ in 0..200 {
        let mid = (lo + hi) * half;
        if mid <= lo || mid >= hi || (hi - lo) <= T::epsilon() * lit::<T>(4.0) * mid.abs() {
            break;
        }
        if count_below(diag, off, mid) > k {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    (lo + hi) * half
}

fn inverse_iteration<T: Real>(diag: &[T], off: T, energy: T) -> Vec<T> {
    let n = diag.len();
    let shift = energy - lit::<T>(1e-9) * (T::one() + energy.abs());
    let mut v = vec![T::one(); n];
    let mut c = vec![T::zero(); n];
    let mut d = vec![T::zero(); n];
    for _ in 0..4 {
        // Thomas solve of (H − shift) y = v
        let mut prev_c = T::zero();
        let mut prev_d = T::zero();
        for j in 0..n {
            let mut pivot = diag[j] - shift - off * prev_c;
            if pivot == T::zero() {
                pivot = T::epsilon();
            }
            c[j] = off / pivot;
            d[j] = (v[j] - off * prev_d) / pivot;
            prev_c = c[j];
            prev_d = d[j];
        }
        v[n - 1] = d[n - 1];
        for j in (0..n - 1).rev() {
            v[j] = d[j] - c[j] * v[j + 1];
        }
        let scale = v.iter().fold(T::zero(), |m, x| m.max(x.abs()));
        for x in &mut v {
            *x = *x / scale;
        }
    }
    v
}

/// Sign convention: positive at the right-most well.
fn orient<T: Real>(field: &mut WaveField<T>, wells: &[Well<T>]) {
    let anchor = wells
        .iter()
        .map(|w| w.position)
        .fold(None, |m: Option<T>, p| Some(m.map_or(p, |q| q.max(p))))
        .and_then(|p| field.grid.node_index(p));
    if let Some(i) = anchor {
        if field.values[i].re < T::zero() {
            for v in &mut field.values {
                *v = -*v;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_well_binds_at_minus_one() {
        let e = convention_self_test().unwrap();
        assert!((e + 1.0).abs() < 1e-4, "{e}");
    }
}
