//! Structured constructors: Kronecker and Schur products, circulant, companion
//! and anti-diagonal matrices, doubly-stochastic detection, and the index sets
//! locating a Schur power inside the matching Kronecker power.

use std::sync::OnceLock;

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::poly::Poly;
use crate::scalar::Real;

/// Default cap on the number of entries a Kronecker result may hold (2^24).
pub const DEFAULT_ELEMENT_BUDGET: usize = 1 << 24;

/// Environment variable overriding [`DEFAULT_ELEMENT_BUDGET`].
pub const BUDGET_ENV: &str = "KRONRAD_BUDGET";

/// The active element budget: `KRONRAD_BUDGET` if set to a positive integer,
/// otherwise [`DEFAULT_ELEMENT_BUDGET`]. Read once per process.
pub fn element_budget() -> usize {
    static BUDGET: OnceLock<usize> = OnceLock::new();
    *BUDGET.get_or_init(|| {
        std::env::var(BUDGET_ENV)
            .ok()
            .and_then(|s| s.trim().parse::<usize>().ok())
            .filter(|&b| b > 0)
            .unwrap_or(DEFAULT_ELEMENT_BUDGET)
    })
}

pub(crate) fn check_budget(op: &'static str, rows: u128, cols: u128, budget: usize) -> Result<()> {
    let requested = rows.saturating_mul(cols);
    if requested > budget as u128 {
        Err(Error::BudgetExceeded {
            op,
            requested,
            budget,
        })
    } else {
        Ok(())
    }
}

/// Kronecker product `A ⊗ B = [a_ij B]` under the process element budget.
pub fn kron<T: Real>(a: &Matrix<T>, b: &Matrix<T>) -> Result<Matrix<T>> {
    kron_with_budget(a, b, element_budget())
}

pub fn kron_with_budget<T: Real>(a: &Matrix<T>, b: &Matrix<T>, budget: usize) -> Result<Matrix<T>> {
    let (ar, ac) = a.shape();
    let (br, bc) = b.shape();
    check_budget(
        "kron",
        ar as u128 * br as u128,
        ac as u128 * bc as u128,
        budget,
    )?;
    Ok(Matrix::from_fn(ar * br, ac * bc, |i, j| {
        a[(i / br, j / bc)] * b[(i % br, j % bc)]
    }))
}

/// `A^{⊗m}`.
pub fn kron_power<T: Real>(a: &Matrix<T>, m: usize) -> Result<Matrix<T>> {
    if m == 0 {
        return Err(Error::InvalidArgument("Kronecker power needs m >= 1".into()));
    }
    let (r, c) = a.shape();
    let rows = (r as u128).checked_pow(m as u32).ok_or(Error::Overflow("kron power rows"))?;
    let cols = (c as u128).checked_pow(m as u32).ok_or(Error::Overflow("kron power cols"))?;
    check_budget("kron_power", rows, cols, element_budget())?;
    let mut out = a.clone();
    for _ in 1..m {
        out = kron(&out, a)?;
    }
    Ok(out)
}

/// Entrywise (Schur/Hadamard) product.
pub fn schur_product<T: Real>(a: &Matrix<T>, b: &Matrix<T>) -> Result<Matrix<T>> {
    a.require_same_shape(b, "schur_product")?;
    let (r, c) = a.shape();
    Ok(Matrix::from_fn(r, c, |i, j| a[(i, j)] * b[(i, j)]))
}

/// `A^{∘m}`, built by repeated entrywise multiplication.
pub fn schur_power<T: Real>(a: &Matrix<T>, m: usize) -> Result<Matrix<T>> {
    if m == 0 {
        return Err(Error::InvalidArgument("Schur power needs m >= 1".into()));
    }
    let mut out = a.clone();
    for _ in 1..m {
        out = schur_product(&out, a)?;
    }
    Ok(out)
}

/// `Circ(a_1, ..., a_n)`: first row `a`, each further row the cyclic right shift
/// of the one above, so entry `(i, j)` is `a_{(j - i) mod n}`.
pub fn circulant<T: Real>(a: &[Complex<T>]) -> Result<Matrix<T>> {
    let n = a.len();
    if n == 0 {
        return Err(Error::InvalidArgument("circulant needs at least one entry".into()));
    }
    Matrix::new(
        n,
        n,
        (0..n * n).map(|k| a[(k % n + n - k / n) % n]).collect(),
    )
}

/// Frobenius companion matrix: first row `-a_{n-1}, ..., -a_0`, identity on the
/// subdiagonal.
pub fn companion<T: Real>(p: &Poly<T>) -> Matrix<T> {
    let n = p.degree();
    let a = p.coeffs();
    Matrix::from_fn(n, n, |i, j| {
        if i == 0 {
            -a[n - 1 - j]
        } else if i == j + 1 {
            Complex::one()
        } else {
            Complex::zero()
        }
    })
}

/// Anti-diagonal matrix with `(i, n-1-i)` entry `lams[i]` (0-based).
pub fn anti_diagonal<T: Real>(lams: &[Complex<T>]) -> Result<Matrix<T>> {
    let n = lams.len();
    if n == 0 {
        return Err(Error::InvalidArgument("anti_diagonal needs at least one entry".into()));
    }
    Matrix::new(
        n,
        n,
        (0..n * n)
            .map(|k| {
                let (i, j) = (k / n, k % n);
                if i + j == n - 1 {
                    lams[i]
                } else {
                    Complex::zero()
                }
            })
            .collect(),
    )
}

/// Returns `k` when `A` is `k` times a doubly stochastic matrix: real entries
/// `>= -tol` and every row and column sum within `tol` of a common `k >= 0`.
pub fn doubly_stochastic_scale<T: Real>(a: &Matrix<T>, tol: T) -> Option<T> {
    if !a.is_square() {
        return None;
    }
    if a.data().iter().any(|z| z.im.abs() > tol || z.re < -tol) {
        return None;
    }
    let rows: Vec<T> = a.row_sums().into_iter().map(|z| z.re).collect();
    let cols: Vec<T> = a.col_sums().into_iter().map(|z| z.re).collect();
    let n = T::from_usize_lossy(rows.len());
    let k = (rows.iter().copied().sum::<T>() + cols.iter().copied().sum::<T>()) / (n + n);
    let consistent = rows.iter().chain(&cols).all(|&s| (s - k).abs() <= tol);
    (consistent && k >= -tol).then(|| k.max(T::zero()))
}

/// 1-based row and column positions of `A_1 ∘ ... ∘ A_m` (each `p x q`) inside
/// `A_1 ⊗ ... ⊗ A_m`: `{ j (1 + p + ... + p^{m-1}) + 1 : 0 <= j < p }`, and
/// likewise with `q` for the columns.
pub fn schur_embed_indices(p: usize, q: usize, m: usize) -> Result<(Vec<usize>, Vec<usize>)> {
    Ok((repunit_positions(p, m)?, repunit_positions(q, m)?))
}

fn repunit_positions(base: usize, m: usize) -> Result<Vec<usize>> {
    if base == 0 || m == 0 {
        return Err(Error::InvalidArgument("schur_embed_indices needs p, q, m >= 1".into()));
    }
    // (11...1)_base with m digits
    let mut repunit: usize = 0;
    let mut power: usize = 1;
    for _ in 0..m {
        repunit = repunit
            .checked_add(power)
            .ok_or(Error::Overflow("base^m repunit"))?;
        power = power.checked_mul(base).ok_or(Error::Overflow("base^m"))?;
    }
    (0..base)
        .map(|j| {
            j.checked_mul(repunit)
                .and_then(|v| v.checked_add(1))
                .ok_or(Error::Overflow("embedding index"))
        })
        .collect()
}

/// 0-based variant of [`schur_embed_indices`] for square `n x n` factors.
pub(crate) fn diagonal_tensor_positions(n: usize, m: usize) -> Result<Vec<usize>> {
    Ok(repunit_positions(n, m)?.into_iter().map(|i| i - 1).collect())
}
