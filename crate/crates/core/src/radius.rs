//! Numerical radius `w(A) = max |<Ax, x>|` over unit `x`.
//!
//! The engine uses `w(A) = max_theta lambda_max(Re(e^{i theta} A))`: a uniform
//! sweep over `theta` followed by golden-section refinement around the best
//! grid cells.

use num_complex::Complex;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{vector, Matrix};
use crate::scalar::Real;
use crate::spectral::{eigh, eigvalsh, spectral_norm, spectral_radius, MAX_DIM};

pub const DEFAULT_GRID: usize = 1024;
/// Width in `theta` at which refinement stops.
pub const DEFAULT_THETA_TOL: f64 = 1e-12;
/// Relative tolerance of the radial (`w = ||A||`) and spectral (`w = r`) flags.
pub const PREDICATE_TOL: f64 = 1e-8;
/// Largest change tolerated between the default and the doubled grid in
/// verified mode.
pub const VERIFY_TOL: f64 = 1e-9;
const REFINED_CELLS: usize = 3;
const MAX_GOLDEN_STEPS: usize = 200;

#[derive(Debug, Clone, Serialize)]
pub struct RadiusResult<T> {
    pub value: T,
    /// Maximising angle in `[0, 2 pi)`.
    pub theta_star: T,
    /// Unit vector with `Re(e^{i theta*} <Ax, x>) = value`.
    pub attaining_vector: Vec<Complex<T>>,
    /// `w(A) = ||A||` within tolerance.
    pub is_radial: bool,
    /// `w(A) = r(A)` within tolerance.
    pub is_spectral: bool,
}

/// `lambda_max(Re(e^{i theta} A))`.
fn support<T: Real>(a: &Matrix<T>, theta: T) -> Result<T> {
    let mu = eigvalsh(&a.rotated_real_part(theta))?;
    Ok(mu[mu.len() - 1])
}

/// Support values on the uniform grid `theta_k = 2 pi k / grid`. For even grids
/// `lambda_min` at `theta_k` gives the value at `theta_k + pi` for free.
fn sweep<T: Real>(a: &Matrix<T>, grid: usize) -> Result<Vec<T>> {
    let step = T::TAU() / T::from_usize_lossy(grid);
    if grid % 2 == 0 {
        let half = grid / 2;
        let pairs: Vec<(T, T)> = (0..half)
            .into_par_iter()
            .with_min_len(8)
            .map(|k| {
                let mu = eigvalsh(&a.rotated_real_part(step * T::from_usize_lossy(k)))?;
                Ok((mu[mu.len() - 1], -mu[0]))
            })
            .collect::<Result<_>>()?;
        let mut out = vec![T::zero(); grid];
        for (k, (hi, lo)) in pairs.into_iter().enumerate() {
            out[k] = hi;
            out[k + half] = lo;
        }
        Ok(out)
    } else {
        (0..grid)
            .into_par_iter()
            .with_min_len(8)
            .map(|k| support(a, step * T::from_usize_lossy(k)))
            .collect()
    }
}

/// Golden-section maximisation of the support function on `[lo, hi]`.
fn golden<T: Real>(a: &Matrix<T>, mut lo: T, mut hi: T, tol: T) -> Result<(T, T)> {
    let inv_phi = (T::lit(5.0).sqrt() - T::one()) * T::lit(0.5);
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = support(a, x1)?;
    let mut f2 = support(a, x2)?;
    for _ in 0..MAX_GOLDEN_STEPS {
        if hi - lo <= tol {
            break;
        }
        if f1 >= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = support(a, x1)?;
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = support(a, x2)?;
        }
    }
    Ok(if f1 >= f2 { (x1, f1) } else { (x2, f2) })
}

/// Reduces candidates `(theta, value)` to the best one; ties go to the
/// smallest angle.
fn best<T: Real>(candidates: &[(T, T)]) -> (T, T) {
    let mut top = candidates[0];
    for &(theta, value) in &candidates[1..] {
        if value > top.1 || (value == top.1 && theta < top.0) {
            top = (theta, value);
        }
    }
    top
}

fn wrap_angle<T: Real>(theta: T) -> T {
    let tau = T::TAU();
    let r = theta % tau;
    if r < T::zero() {
        r + tau
    } else {
        r
    }
}

/// Value and maximising angle by sweep plus refinement; no shortcut.
fn sweep_value<T: Real>(a: &Matrix<T>, grid: usize, tol: T) -> Result<(T, T)> {
    let n = a.require_square("numerical_radius")?;
    if n > MAX_DIM {
        return Err(Error::TooLarge {
            op: "numerical_radius",
            n,
            limit: MAX_DIM,
        });
    }
    if grid == 0 {
        return Err(Error::InvalidArgument("radius grid must be positive".into()));
    }
    let values = sweep(a, grid)?;
    let step = T::TAU() / T::from_usize_lossy(grid);
    let mut order: Vec<usize> = (0..grid).collect();
    order.sort_by(|&i, &j| values[j].partial_cmp(&values[i]).unwrap().then(i.cmp(&j)));
    let mut candidates: Vec<(T, T)> = Vec::with_capacity(REFINED_CELLS + 1);
    candidates.push((T::zero(), values[0]));
    candidates.push((step * T::from_usize_lossy(order[0]), values[order[0]]));
    for &k in order.iter().take(REFINED_CELLS.min(grid)) {
        let centre = step * T::from_usize_lossy(k);
        let (theta, value) = golden(a, centre - step, centre + step, tol)?;
        candidates.push((wrap_angle(theta), value));
    }
    Ok(best(&candidates))
}

fn finish<T: Real>(a: &Matrix<T>, value: T, theta: T) -> Result<RadiusResult<T>> {
    let (_, v) = eigh(&a.rotated_real_part(theta))?;
    let x = v.column(v.cols() - 1);
    let norm = spectral_norm(a)?;
    let r = spectral_radius(a)?;
    let slack = T::lit(PREDICATE_TOL) * norm.max(T::one());
    Ok(RadiusResult {
        value,
        theta_star: theta,
        attaining_vector: x,
        is_radial: (norm - value).abs() <= slack,
        is_spectral: (value - r).abs() <= slack,
    })
}

/// Numerical radius with a `grid`-point sweep refined to width `tol` in
/// `theta`. Entrywise real nonnegative matrices take the exact shortcut
/// `w(A) = lambda_max((A + A*) / 2)`.
pub fn numerical_radius<T: Real>(a: &Matrix<T>, grid: usize, tol: T) -> Result<RadiusResult<T>> {
    if a.is_real_nonnegative() {
        let value = numerical_radius_nonneg(a)?;
        return finish(a, value, T::zero());
    }
    let (theta, value) = sweep_value(a, grid, tol)?;
    finish(a, value, theta)
}

/// Sweep-only numerical radius (the shortcut is never taken).
pub fn numerical_radius_sweep<T: Real>(a: &Matrix<T>, grid: usize, tol: T) -> Result<RadiusResult<T>> {
    let (theta, value) = sweep_value(a, grid, tol)?;
    finish(a, value, theta)
}

/// [`numerical_radius`] plus self-checks: the sweep is repeated on a doubled
/// grid, and for nonnegative input the shortcut is compared with the sweep.
/// Any disagreement above `1e-9` is an [`Error::Inconsistent`].
pub fn numerical_radius_verified<T: Real>(a: &Matrix<T>, grid: usize, tol: T) -> Result<RadiusResult<T>> {
    let result = numerical_radius(a, grid, tol)?;
    let allowed = T::tol(VERIFY_TOL) * result.value.max(T::one());
    let (_, coarse) = sweep_value(a, grid, tol)?;
    let (_, fine) = sweep_value(a, 2 * grid, tol)?;
    let drift = (coarse - fine).abs();
    if drift > allowed {
        return Err(Error::Inconsistent {
            what: "numerical radius changed when the grid was doubled",
            discrepancy: drift.as_f64(),
        });
    }
    let gap = (result.value - fine).abs();
    if gap > allowed {
        return Err(Error::Inconsistent {
            what: "nonnegative shortcut disagrees with the sweep",
            discrepancy: gap.as_f64(),
        });
    }
    Ok(result)
}

/// `w(A)` at the default grid and tolerance.
pub fn w<T: Real>(a: &Matrix<T>) -> Result<T> {
    if a.is_real_nonnegative() {
        return numerical_radius_nonneg(a);
    }
    Ok(sweep_value(a, DEFAULT_GRID, T::tol(DEFAULT_THETA_TOL))?.1)
}

/// `w(A) = r(A + A*) / 2` for entrywise real nonnegative `A`.
pub fn numerical_radius_nonneg<T: Real>(a: &Matrix<T>) -> Result<T> {
    a.require_square("numerical_radius_nonneg")?;
    if let Some(k) = a.data().iter().position(|z| z.im != T::zero() || z.re < T::zero()) {
        return Err(Error::NotNonnegative {
            row: k / a.cols(),
            col: k % a.cols(),
        });
    }
    let mu = eigvalsh(&a.hermitian_part())?;
    // Perron-Frobenius: the top eigenvalue dominates the bottom one in modulus
    Ok(mu[mu.len() - 1].max(-mu[0]))
}

/// Closed form for the anti-diagonal matrix with entries `lams`:
/// `max_j (|l_j| + |l_{n+1-j}|) / 2`.
pub fn radius_antidiagonal<T: Real>(lams: &[Complex<T>]) -> T {
    let n = lams.len();
    (0..n.div_ceil(2))
        .map(|j| (lams[j].norm() + lams[n - 1 - j].norm()) * T::lit(0.5))
        .fold(T::zero(), T::max)
}

/// `|<Ax, x>|` for a vector `x` (not normalised).
pub fn rayleigh_modulus<T: Real>(a: &Matrix<T>, x: &[Complex<T>]) -> T {
    vector::dot(x, &a.mul_vec(x)).norm()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{random_complex, random_real, random_unitary, stream_rng};
    use crate::structured::{anti_diagonal, circulant, kron};

    type M = Matrix<f64>;

    fn cx(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    fn sweep_w(a: &M) -> f64 {
        numerical_radius_sweep(a, DEFAULT_GRID, DEFAULT_THETA_TOL).unwrap().value
    }

    #[test]
    fn nilpotent_two_by_two() {
        let a = M::from_real_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]]).unwrap();
        let r = numerical_radius(&a, DEFAULT_GRID, DEFAULT_THETA_TOL).unwrap();
        assert!((r.value - 0.5).abs() < 1e-12);
        assert!((sweep_w(&a) - 0.5).abs() < 1e-12);
        assert!(!r.is_radial);
    }

    #[test]
    fn half_norm_example() {
        let a = M::from_real_rows(&[vec![1.0, 1.0], vec![-1.0, -1.0]]).unwrap();
        let r = numerical_radius(&a, DEFAULT_GRID, DEFAULT_THETA_TOL).unwrap();
        assert!((r.value - 1.0).abs() < 1e-12);
        assert!((spectral_norm(&a).unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn circulant_is_normal() {
        let a = circulant(&[cx(1.0, 0.0), cx(2.0, 0.0), cx(3.0, 0.0)]).unwrap();
        let r = numerical_radius(&a, DEFAULT_GRID, DEFAULT_THETA_TOL).unwrap();
        assert!((r.value - 6.0).abs() < 1e-12);
        assert!((sweep_w(&a) - 6.0).abs() < 1e-12);
        assert!(r.is_spectral && r.is_radial);
    }

    #[test]
    fn nonneg_shortcut_examples() {
        assert!((numerical_radius_nonneg(&M::ones(2, 2)).unwrap() - 2.0).abs() < 1e-14);
        let a = M::from_real_rows(&[vec![1.0, 2.0], vec![2.0, 1.0]]).unwrap();
        assert!((numerical_radius_nonneg(&a).unwrap() - 3.0).abs() < 1e-14);
        let mut rng = stream_rng(30, 0);
        let ds: M = crate::generators::random_doubly_stochastic(&mut rng, 5, 2.5, 4);
        assert!((numerical_radius_nonneg(&ds).unwrap() - 2.5).abs() < 1e-12);
        let neg = M::from_real_rows(&[vec![1.0, -1.0], vec![0.0, 0.0]]).unwrap();
        assert!(matches!(numerical_radius_nonneg(&neg), Err(Error::NotNonnegative { row: 0, col: 1 })));
    }

    #[test]
    fn antidiagonal_closed_form() {
        assert!((radius_antidiagonal(&[cx(1.0, 0.0), cx(0.0, 0.0)]) - 0.5).abs() < 1e-15);
        let lams = [cx(1.0, 0.0), cx(2.0, 0.0), cx(3.0, 0.0), cx(4.0, 0.0)];
        assert!((radius_antidiagonal(&lams) - 2.5).abs() < 1e-15);
        assert!((sweep_w(&anti_diagonal(&lams).unwrap()) - 2.5).abs() < 1e-10);
        assert!((radius_antidiagonal(&[cx(5.0, 0.0)]) - 5.0).abs() < 1e-15);
        let mut rng = stream_rng(31, 0);
        for n in 1..8 {
            let lams = crate::generators::random_vector::<f64, _>(&mut rng, n);
            let a = anti_diagonal(&lams).unwrap();
            assert!((sweep_w(&a) - radius_antidiagonal(&lams)).abs() <= 1e-9);
        }
    }

    #[test]
    fn attaining_vector_and_norm_bracket() {
        let mut rng = stream_rng(32, 0);
        for n in [1, 2, 3, 5, 8] {
            let a: M = random_complex(&mut rng, n, n);
            let r = numerical_radius(&a, DEFAULT_GRID, DEFAULT_THETA_TOL).unwrap();
            assert!(rayleigh_modulus(&a, &r.attaining_vector) >= r.value - 1e-8);
            assert!((vector::norm2(&r.attaining_vector) - 1.0).abs() < 1e-12);
            let norm = spectral_norm(&a).unwrap();
            assert!(r.value >= norm / 2.0 - 1e-9 && r.value <= norm + 1e-9);
            assert!(r.theta_star >= 0.0 && r.theta_star < std::f64::consts::TAU);
        }
    }

    #[test]
    fn weak_unitary_invariance() {
        let mut rng = stream_rng(33, 0);
        for n in [2, 4, 6] {
            let a: M = random_complex(&mut rng, n, n);
            let u: M = random_unitary(&mut rng, n);
            let b = &(&u.adjoint() * &a) * &u;
            assert!((w(&a).unwrap() - w(&b).unwrap()).abs() <= 1e-9);
        }
    }

    #[test]
    fn monotone_on_nonnegative() {
        let mut rng = stream_rng(34, 0);
        for _ in 0..10 {
            let a: M = random_real(&mut rng, 4, 4, 0.0, 1.0);
            let extra: M = random_real(&mut rng, 4, 4, 0.0, 1.0);
            let bigger = &a + &extra;
            assert!(w(&a).unwrap() <= w(&bigger).unwrap() + 1e-9);
        }
    }

    #[test]
    fn direct_sum_rule() {
        let mut rng = stream_rng(35, 0);
        let x: M = random_complex(&mut rng, 3, 3);
        let y: M = random_complex(&mut rng, 2, 2);
        let lhs = sweep_w(&x.direct_sum(&y));
        assert!((lhs - sweep_w(&x).max(sweep_w(&y))).abs() <= 1e-9);
    }

    #[test]
    fn tied_antidiagonal_kron_is_multiplicative() {
        let mut rng = stream_rng(36, 0);
        // |l_1| = |l_3| dominates |l_2|
        let lams = [cx(0.0, 2.0), cx(-1.5, 0.0), cx(2.0, 0.0)];
        let a = anti_diagonal(&lams).unwrap();
        for m in 1..5 {
            let b: M = random_complex(&mut rng, m, m);
            let lhs = sweep_w(&kron(&a, &b).unwrap());
            assert!((lhs - sweep_w(&a) * sweep_w(&b)).abs() <= 1e-8, "m={m}");
        }
    }

    #[test]
    fn verified_mode_agrees() {
        let mut rng = stream_rng(37, 0);
        let a: M = random_complex(&mut rng, 4, 4);
        let v = numerical_radius_verified(&a, DEFAULT_GRID, DEFAULT_THETA_TOL).unwrap();
        assert!((v.value - sweep_w(&a)).abs() < 1e-12);
        let p: M = random_real(&mut rng, 4, 4, 0.0, 1.0);
        numerical_radius_verified(&p, DEFAULT_GRID, DEFAULT_THETA_TOL).unwrap();
    }

    #[test]
    fn single_precision() {
        let a = Matrix::<f32>::from_real_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]]).unwrap();
        let r = numerical_radius(&a, 256, 1e-6).unwrap();
        assert!((r.value - 0.5).abs() < 1e-6);
        let b = Matrix::<f32>::from_real_rows(&[vec![0.0, -1.0], vec![0.0, 0.0]]).unwrap();
        assert!((w(&b).unwrap() - 0.5).abs() < 1e-5);
    }
}
