//! Upper bounds on the moduli of polynomial roots obtained from numerical
//! radii of companion matrices.

use num_complex::Complex;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::poly::Poly;
use crate::radius::w;
use crate::scalar::{c, Real};
use crate::spectral::eigenvalues;
use crate::structured::{circulant, companion};

/// Largest degree accepted by [`root_bound_report`].
pub const MAX_DEGREE: usize = 64;

fn coeff_sq_sum<T: Real>(a: &[Complex<T>]) -> T {
    a.iter().map(|z| z.norm_sqr()).sum()
}

/// `cos(pi / (n + 1)) + (|a_{n-1}| + (sum_k |a_k|^2)^{1/2}) / 2`.
pub fn fujii_kubo_bound<T: Real>(p: &Poly<T>) -> T {
    let a = p.coeffs();
    let n = a.len();
    let half = T::lit(0.5);
    (T::PI() / T::from_usize_lossy(n + 1)).cos() + half * (a[n - 1].norm() + coeff_sq_sum(a).sqrt())
}

/// `1 + (|a_{n-1}| + (|a_0 + 1|^2 + sum_{k>=1} |a_k|^2)^{1/2}) / 2`.
pub fn est_poly_bound<T: Real>(p: &Poly<T>) -> T {
    T::one() + rank_one_row_radius(&shifted_row(p))
}

/// First row of `C(p) - Circ(0, ..., 0, 1)`: `-(a_{n-1}, ..., a_1, a_0 + 1)`.
fn shifted_row<T: Real>(p: &Poly<T>) -> Vec<Complex<T>> {
    let a = p.coeffs();
    let n = a.len();
    (0..n)
        .map(|j| {
            let k = n - 1 - j;
            if k == 0 {
                -(a[0] + c(T::one()))
            } else {
                -a[k]
            }
        })
        .collect()
}

/// `w` of the matrix whose only nonzero row is the first one, `a`:
/// `(|a_1| + ||a||) / 2`.
pub fn rank_one_row_radius<T: Real>(a: &[Complex<T>]) -> T {
    match a.first() {
        None => T::zero(),
        Some(first) => T::lit(0.5) * (first.norm() + coeff_sq_sum(a).sqrt()),
    }
}

/// Matrix with first row `a` and zeros elsewhere.
pub fn first_row_matrix<T: Real>(a: &[Complex<T>]) -> Result<Matrix<T>> {
    let n = a.len();
    if n == 0 {
        return Err(Error::EmptyDimension { rows: 0, cols: 0 });
    }
    Ok(Matrix::from_fn(n, n, |i, j| if i == 0 { a[j] } else { c(T::zero()) }))
}

/// The cyclic shift `Circ(0, ..., 0, 1)` and the rank-one remainder `D` with
/// `C(p) = shift + D`.
pub fn companion_split<T: Real>(p: &Poly<T>) -> Result<(Matrix<T>, Matrix<T>)> {
    let n = p.degree();
    let mut row = vec![c(T::zero()); n];
    row[n - 1] = c(T::one());
    Ok((circulant(&row)?, first_row_matrix(&shifted_row(p))?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Winner {
    FujiiKubo,
    EstPoly,
    Tie,
}

#[derive(Debug, Clone, Serialize)]
pub struct RootBoundReport<T> {
    pub poly: Poly<T>,
    /// Companion eigenvalues.
    pub roots: Vec<Complex<T>>,
    pub fujii_kubo: T,
    pub est_poly: T,
    pub max_root_modulus: T,
    pub winner: Winner,
}

impl<T: Real> RootBoundReport<T> {
    /// Largest root modulus minus the smaller bound; `<= tol` when sound.
    pub fn excess(&self) -> T {
        self.max_root_modulus - self.fujii_kubo.min(self.est_poly)
    }
}

/// Roots (as companion eigenvalues) and both bounds. Bounds within `1e-12`
/// (relative) of each other are a tie.
pub fn root_bound_report<T: Real>(p: &Poly<T>) -> Result<RootBoundReport<T>> {
    let n = p.degree();
    if n > MAX_DEGREE {
        return Err(Error::TooLarge {
            op: "root_bound_report",
            n,
            limit: MAX_DEGREE,
        });
    }
    let roots = eigenvalues(&companion(p))?;
    let max_root_modulus = roots[0].norm();
    let (fk, est) = (fujii_kubo_bound(p), est_poly_bound(p));
    let winner = if (fk - est).abs() <= T::tol(1e-12) * fk.max(est) {
        Winner::Tie
    } else if fk < est {
        Winner::FujiiKubo
    } else {
        Winner::EstPoly
    };
    Ok(RootBoundReport {
        poly: p.clone(),
        roots,
        fujii_kubo: fk,
        est_poly: est,
        max_root_modulus,
        winner,
    })
}

/// `(w(shift), w(D))` by the radius sweep, for checking
/// `est_poly = w(shift) + w(D)`.
pub fn est_poly_decomposition<T: Real>(p: &Poly<T>) -> Result<(T, T)> {
    let (shift, d) = companion_split(p)?;
    Ok((w(&shift)?, w(&d)?))
}

/// Comparison of the two bounds along `z^n + (fixed low-order part)` as `n`
/// grows.
#[derive(Debug, Clone, Serialize)]
pub struct DegreeScan {
    pub degrees: Vec<usize>,
    /// `est_poly <= fujii_kubo` at each degree.
    pub est_wins: Vec<bool>,
    /// Smallest tested degree from which `est_poly <= fujii_kubo` at every
    /// larger tested degree.
    pub n0: Option<usize>,
}

/// Scans `z^n + a_{k-1} z^{k-1} + ... + a_0` (the given `low` coefficients,
/// zero padded) for `n` from `max(2, k)` to `n_max`.
pub fn degree_scan<T: Real>(low: &[Complex<T>], n_max: usize) -> Result<DegreeScan> {
    let start = low.len().max(2);
    let mut degrees = Vec::new();
    let mut est_wins = Vec::new();
    for n in start..=n_max {
        let mut coeffs = low.to_vec();
        coeffs.resize(n, c(T::zero()));
        let p = Poly::new(coeffs)?;
        degrees.push(n);
        est_wins.push(est_poly_bound(&p) <= fujii_kubo_bound(&p));
    }
    let tail = est_wins.iter().rev().take_while(|&&b| b).count();
    let n0 = (tail > 0).then(|| degrees[degrees.len() - tail]);
    Ok(DegreeScan { degrees, est_wins, n0 })
}
