//! `l_p` operator norms of matrices and of Kronecker products `A ⊗ B` acting on
//! `H^n` with the mixed norm `||x||_p = (sum_j ||x_j||^p)^{1/p}`, where each
//! block `x_j` carries its Euclidean norm.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;
use num_traits::Zero;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::matrix::{vector, Matrix};
use crate::radius::w;
use crate::scalar::{c, Real};
use crate::spectral::{eigh, spectral_norm};
use crate::structured::{circulant, doubly_stochastic_scale, element_budget, kron_with_budget};

/// Power-method iterations used by default in [`opnorm_lower`].
pub const DEFAULT_ITERS: usize = 50;
/// Dimension up to which all two-coordinate candidates are tried.
pub const PAIR_CANDIDATE_LIMIT: usize = 64;
/// Default number of quadrature points for [`kappa`].
pub const DEFAULT_KAPPA_POINTS: usize = 1 << 16;
/// Relative tolerance for the equicorrelated Gram structure.
pub const GRAM_TOL: f64 = 1e-8;

/// Exponent `p` in `[1, inf]`, with infinity as its own variant.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Exponent {
    Finite(f64),
    Infinity,
}

impl Exponent {
    pub const ONE: Exponent = Exponent::Finite(1.0);
    pub const TWO: Exponent = Exponent::Finite(2.0);

    /// Finite `p >= 1`; `f64::INFINITY` maps to [`Exponent::Infinity`].
    pub fn new(p: f64) -> Result<Self> {
        if p == f64::INFINITY {
            Ok(Exponent::Infinity)
        } else if p.is_finite() && p >= 1.0 {
            Ok(Exponent::Finite(p))
        } else {
            Err(Error::UnsupportedExponent(p))
        }
    }

    /// The conjugate exponent `q` with `1/p + 1/q = 1`.
    pub fn conjugate(self) -> Self {
        match self {
            Exponent::Infinity => Exponent::ONE,
            Exponent::Finite(p) if p == 1.0 => Exponent::Infinity,
            Exponent::Finite(p) => Exponent::Finite(p / (p - 1.0)),
        }
    }

    /// `1/p`, exactly `0` at infinity.
    pub fn reciprocal(self) -> f64 {
        match self {
            Exponent::Infinity => 0.0,
            Exponent::Finite(p) => 1.0 / p,
        }
    }

    pub fn as_f64(self) -> f64 {
        match self {
            Exponent::Infinity => f64::INFINITY,
            Exponent::Finite(p) => p,
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Infinity => write!(f, "inf"),
            Exponent::Finite(p) => write!(f, "{p}"),
        }
    }
}

impl FromStr for Exponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "inf" | "infinity" | "∞" => Ok(Exponent::Infinity),
            other => {
                let p: f64 = other
                    .parse()
                    .map_err(|_| Error::InvalidArgument(format!("cannot parse exponent {s:?}")))?;
                Exponent::new(p)
            }
        }
    }
}

impl Serialize for Exponent {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Exponent::Infinity => s.serialize_str("inf"),
            Exponent::Finite(p) => s.serialize_f64(*p),
        }
    }
}

/// Euclidean norms of consecutive blocks of length `block`.
fn block_norms<T: Real>(x: &[Complex<T>], block: usize) -> Vec<T> {
    x.chunks(block).map(vector::norm2).collect()
}

fn lp<T: Real>(values: &[T], p: Exponent) -> T {
    match p {
        Exponent::Infinity => values.iter().copied().fold(T::zero(), T::max),
        Exponent::Finite(p) if p == 1.0 => values.iter().copied().sum(),
        Exponent::Finite(p) => {
            // scale by the largest entry to avoid overflow in x^p
            let top = values.iter().copied().fold(T::zero(), T::max);
            if top == T::zero() {
                return T::zero();
            }
            let pt = T::lit(p);
            top * values.iter().map(|&v| (v / top).powf(pt)).sum::<T>().powf(T::one() / pt)
        }
    }
}

/// Mixed norm of `x` viewed as consecutive blocks of length `block`.
pub fn mixed_norm<T: Real>(x: &[Complex<T>], block: usize, p: Exponent) -> T {
    lp(&block_norms(x, block), p)
}

/// A vector `d` of unit dual (`q`) norm with `<d, y> = ||y||_p`.
fn dual<T: Real>(y: &[Complex<T>], block: usize, p: Exponent) -> Vec<Complex<T>> {
    let norms = block_norms(y, block);
    let mut out = vec![Complex::zero(); y.len()];
    let total = lp(&norms, p);
    if total == T::zero() {
        return out;
    }
    match p {
        Exponent::Infinity => {
            let mut arg = 0;
            for (j, &v) in norms.iter().enumerate() {
                if v > norms[arg] {
                    arg = j;
                }
            }
            for (o, &yi) in out[arg * block..].iter_mut().zip(&y[arg * block..(arg + 1) * block]) {
                *o = yi / norms[arg];
            }
        }
        Exponent::Finite(pf) => {
            let pt = T::lit(pf);
            for (j, &v) in norms.iter().enumerate() {
                if v == T::zero() {
                    continue;
                }
                let weight = if pf == 1.0 {
                    T::one()
                } else {
                    (v / total).powf(pt - T::one())
                };
                for k in j * block..(j + 1) * block {
                    out[k] = y[k] * (weight / v);
                }
            }
        }
    }
    out
}

fn ratio<T: Real>(m: &Matrix<T>, x: &[Complex<T>], in_block: usize, out_block: usize, p: Exponent) -> T {
    let den = mixed_norm(x, in_block, p);
    if den == T::zero() {
        return T::zero();
    }
    mixed_norm(&m.mul_vec(x), out_block, p) / den
}

/// Dual-norm power iteration (Higham's `p`-norm estimator, per block). Returns
/// the best ratio seen and the vector attaining it.
fn power<T: Real>(
    m: &Matrix<T>,
    start: &[Complex<T>],
    in_block: usize,
    out_block: usize,
    p: Exponent,
    iters: usize,
) -> (T, Vec<Complex<T>>) {
    let q = p.conjugate();
    let mh = m.adjoint();
    let norm = mixed_norm(start, in_block, p);
    if norm == T::zero() {
        return (T::zero(), start.to_vec());
    }
    let mut x: Vec<Complex<T>> = start.iter().map(|z| z / norm).collect();
    let mut best = (T::zero(), x.clone());
    for _ in 0..iters {
        let y = m.mul_vec(&x);
        let value = mixed_norm(&y, out_block, p);
        if value > best.0 {
            best = (value, x.clone());
        }
        let z = mh.mul_vec(&dual(&y, out_block, p));
        let zq = mixed_norm(&z, in_block, q);
        if zq <= vector::dot(&x, &z).re * (T::one() + T::tol(1e-14)) {
            break;
        }
        x = dual(&z, in_block, q);
    }
    best
}

/// Structured starting vectors in `C^n`: all-ones, basis vectors, conjugate
/// sign patterns of rows, two-coordinate vectors `e_i ± e_j`, `e_i + i e_j`
/// (for `n <= 64`), and the top right singular vector.
fn candidates<T: Real>(a: &Matrix<T>) -> Result<Vec<Vec<Complex<T>>>> {
    let n = a.cols();
    let one = c(T::one());
    let mut out = vec![vec![one; n]];
    out.extend((0..n).map(|j| vector::basis(n, j)));
    for i in 0..a.rows() {
        out.push(
            a.row(i)
                .iter()
                .map(|z| if z.norm() == T::zero() { one } else { z.conj() / z.norm() })
                .collect(),
        );
    }
    if n <= PAIR_CANDIDATE_LIMIT {
        let imag = Complex::new(T::zero(), T::one());
        for i in 0..n {
            for j in i + 1..n {
                for s in [one, -one, imag] {
                    let mut x = vec![Complex::zero(); n];
                    x[i] = one;
                    x[j] = s;
                    out.push(x);
                }
            }
        }
    }
    out.push(top_right_singular(a)?.1);
    Ok(out)
}

/// `||A||_2` and a unit vector attaining it.
fn top_right_singular<T: Real>(a: &Matrix<T>) -> Result<(T, Vec<Complex<T>>)> {
    let (mu, v) = eigh(&(&a.adjoint() * a))?;
    let k = mu.len() - 1;
    Ok((mu[k].max(T::zero()).sqrt(), v.column(k)))
}

fn best_of<T: Real>(scored: Vec<(T, Vec<Complex<T>>)>) -> (T, Vec<Complex<T>>) {
    let mut top: Option<(T, Vec<Complex<T>>)> = None;
    for (value, x) in scored {
        if top.as_ref().is_none_or(|t| value > t.0) {
            top = Some((value, x));
        }
    }
    top.expect("at least one candidate")
}

/// Lower estimate of `||M||_p` on block vectors: the best ratio over `starts`
/// and power iterates from the first start and from the best start.
fn lower_from<T: Real>(
    m: &Matrix<T>,
    starts: Vec<Vec<Complex<T>>>,
    in_block: usize,
    out_block: usize,
    p: Exponent,
    iters: usize,
) -> (T, Vec<Complex<T>>) {
    let mut scored: Vec<(T, Vec<Complex<T>>)> = starts
        .into_iter()
        .map(|x| (ratio(m, &x, in_block, out_block, p), x))
        .collect();
    let from_first = power(m, &scored[0].1, in_block, out_block, p, iters);
    let (_, best_start) = best_of(scored.clone());
    let from_best = power(m, &best_start, in_block, out_block, p, iters);
    scored.push(from_first);
    scored.push(from_best);
    let (value, x) = best_of(scored);
    let norm = mixed_norm(&x, in_block, p);
    (value, x.iter().map(|z| z / norm).collect())
}

/// Certified lower bound for `||A||_p` with a unit witness vector.
pub fn opnorm_lower<T: Real>(a: &Matrix<T>, p: Exponent, iters: usize) -> Result<(T, Vec<Complex<T>>)> {
    let starts = candidates(a)?;
    Ok(lower_from(a, starts, 1, 1, p, iters))
}

/// Exact `||A||_p` for `p` in `{1, 2, inf}`.
pub fn opnorm_exact<T: Real>(a: &Matrix<T>, p: Exponent) -> Result<T> {
    match p {
        Exponent::Infinity => Ok(a.norm_inf()),
        Exponent::Finite(x) if x == 1.0 => Ok(a.norm_one()),
        Exponent::Finite(x) if x == 2.0 => spectral_norm(a),
        Exponent::Finite(x) => Err(Error::UnsupportedExponent(x)),
    }
}

/// `(max row abs sum)^{1/q} (max column abs sum)^{1/p}`, with `x^0 = 1`.
pub fn opnorm_upper_interp<T: Real>(a: &Matrix<T>, p: Exponent) -> T {
    let inv_p = p.reciprocal();
    let rows = a.norm_inf();
    let cols = a.norm_one();
    let pow = |x: T, e: f64| if e == 0.0 { T::one() } else { x.powf(T::lit(e)) };
    pow(rows, 1.0 - inv_p) * pow(cols, inv_p)
}

/// Bracket for `||A ⊗ B||_p`.
#[derive(Debug, Clone, Serialize)]
pub struct PNormBounds<T> {
    pub p: Exponent,
    pub lower: T,
    pub upper: T,
    pub exact: Option<T>,
    /// Unit (mixed `p`-norm) vector in `H^n` attaining `lower`.
    pub witness: Vec<Complex<T>>,
    /// Whether the materialised product took part in the lower estimate.
    pub materialized: bool,
}

/// Lower and upper bounds (and the exact value where known) for
/// `||A ⊗ B||_p`, `A` square.
///
/// The lower bound is the best of: `min_i |sum_j a_ij| ||B||`, the structured
/// candidates `c ⊗ v` with `v` a top right singular vector of `B`, and the
/// estimator run on the materialised product when it fits the element budget.
pub fn kron_pnorm_bounds<T: Real>(a: &Matrix<T>, b: &Matrix<T>, p: Exponent) -> Result<PNormBounds<T>> {
    let n = a.require_square("kron_pnorm_bounds")?;
    let (nb, v) = top_right_singular(b)?;
    let m_in = b.cols();
    let m_out = b.rows();

    let ones = vec![c(T::one()); n];
    let min_row = a
        .row_sums()
        .iter()
        .map(|z| z.norm())
        .fold(T::infinity(), T::min);
    let mut options: Vec<(T, Vec<Complex<T>>)> = vec![(min_row * nb, vector::kron(&ones, &v))];

    let (structured, c_vec) = opnorm_lower(a, p, DEFAULT_ITERS)?;
    options.push((structured * nb, vector::kron(&c_vec, &v)));

    let mut materialized = false;
    if let Ok(prod) = kron_with_budget(a, b, element_budget()) {
        let starts: Vec<Vec<Complex<T>>> = candidates(a)?.iter().map(|x| vector::kron(x, &v)).collect();
        options.push(lower_from(&prod, starts, m_in, m_out, p, DEFAULT_ITERS));
        materialized = true;
    }
    let (lower, raw) = best_of(options);
    let norm = mixed_norm(&raw, m_in, p);
    let witness = if norm == T::zero() {
        raw
    } else {
        raw.iter().map(|z| z / norm).collect()
    };

    let upper = opnorm_upper_interp(a, p) * nb;
    let scale_tol = T::tol(1e-12) * a.max_abs().max(T::one());
    let exact = match doubly_stochastic_scale(a, scale_tol) {
        Some(k) => Some(k * nb),
        None => match p {
            Exponent::Infinity => Some(a.norm_inf() * nb),
            Exponent::Finite(x) if x == 1.0 => Some(a.norm_one() * nb),
            Exponent::Finite(x) if x == 2.0 => Some(spectral_norm(a)? * nb),
            Exponent::Finite(_) => None,
        },
    };
    Ok(PNormBounds {
        p,
        lower,
        upper,
        exact,
        witness,
        materialized,
    })
}

/// `Circ(-a, b, ..., b)` of order `n`.
pub fn circ_minus_a_b<T: Real>(a: Complex<T>, b: Complex<T>, n: usize) -> Result<Matrix<T>> {
    if n < 2 {
        return Err(Error::InvalidArgument("circulant order must be at least 2".into()));
    }
    let mut first = vec![b; n];
    first[0] = -a;
    circulant(&first)
}

/// `max{|a + b|, |(n-1) b - a|}`: spectral radius, numerical radius and norm
/// of the normal matrix `Circ(-a, b, ..., b)`.
pub fn circ_factor<T: Real>(a: Complex<T>, b: Complex<T>, n: usize) -> T {
    let nm1 = T::from_usize_lossy(n - 1);
    (a + b).norm().max((b * nm1 - a).norm())
}

/// `(||A ⊗ B||_2, w(A ⊗ B))` for `A = Circ(-a, b, ..., b)` in closed form.
pub fn circ_norm2_closed<T: Real>(a: Complex<T>, b: Complex<T>, n: usize, bm: &Matrix<T>) -> Result<(T, T)> {
    if n < 2 {
        return Err(Error::InvalidArgument("circulant order must be at least 2".into()));
    }
    let f = circ_factor(a, b, n);
    Ok((f * spectral_norm(bm)?, f * w(bm)?))
}

/// Two-regime form of `||Circ(-a, b, ..., b)||_2` for real `a, b >= 0`.
pub fn circ_norm2_nonneg_cases<T: Real>(a: T, b: T, n: usize) -> T {
    let nm2 = T::from_usize_lossy(n - 2);
    if nm2 * b <= a + a {
        a + b
    } else {
        T::from_usize_lossy(n - 1) * b - a
    }
}

/// Bracket `(lower, upper)` for `||Circ(-a, b, ..., b) ⊗ B||_p`, valid for
/// every `p`.
pub fn tfinal_bounds<T: Real>(a: Complex<T>, b: Complex<T>, n: usize, bm: &Matrix<T>) -> Result<(T, T)> {
    let nb = spectral_norm(bm)?;
    let nt = T::from_usize_lossy(n);
    let lower = circ_factor(a, b, n);
    let upper = ((a + b).norm() + nt * b.norm()).min(a.norm() + (nt - T::one()) * b.norm());
    Ok((lower * nb, upper * nb))
}

/// `||A ⊗ B||_2` for `A` whose Gram matrix is `(alpha - beta) I + beta 1`:
/// `max{sqrt|alpha - beta|, sqrt|alpha + (n-1) beta|} ||B||`.
pub fn gram_equicorrelated_norm<T: Real>(a: &Matrix<T>, b: &Matrix<T>) -> Result<T> {
    let n = a.require_square("gram_equicorrelated_norm")?;
    let g = &a.adjoint() * a;
    let nt = T::from_usize_lossy(n);
    let alpha = (0..n).map(|i| g[(i, i)].re).sum::<T>() / nt;
    let beta = if n > 1 {
        let mut s = T::zero();
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += g[(i, j)].re;
                }
            }
        }
        s / (nt * (nt - T::one()))
    } else {
        T::zero()
    };
    let model = Matrix::from_fn(n, n, |i, j| c(if i == j { alpha } else { beta }));
    let deviation = g.max_abs_diff(&model);
    if deviation > T::tol(GRAM_TOL) * g.max_abs().max(T::one()) {
        return Err(Error::GramStructure {
            deviation: deviation.as_f64(),
        });
    }
    let factor = (alpha - beta).abs().sqrt().max((alpha + (nt - T::one()) * beta).abs().sqrt());
    Ok(factor * spectral_norm(b)?)
}

/// Closed form for `||Circ(a1, a2, a3) ⊗ B||_2` with real `a1, a2, a3`.
pub fn circ3_real_norm2<T: Real>(a1: T, a2: T, a3: T, b: &Matrix<T>) -> Result<T> {
    let s = (a1 + a2 + a3).abs();
    let r = (a1 * a1 + a2 * a2 + a3 * a3 - (a1 * a2 + a2 * a3 + a1 * a3)).abs().sqrt();
    Ok(s.max(r) * spectral_norm(b)?)
}

/// `kappa(n) = (1/2pi) int_0^{2pi} |1 + e^{it} + ... + e^{i(n-1)t}| dt`.
///
/// Trapezoidal rule on a grid containing the zeros `2 pi k / n` of the
/// integrand (at least `quad_points` nodes), plus the Euler-Maclaurin
/// correction for the derivative jumps of the modulus at those zeros.
pub fn kappa(n: usize, quad_points: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::InvalidArgument("kappa needs n >= 2".into()));
    }
    let per_segment = quad_points.div_ceil(n).max(1);
    let total = per_segment * n;
    let h = std::f64::consts::TAU / total as f64;
    let nf = n as f64;
    let integrand = |t: f64| {
        let s = (t / 2.0).sin();
        if s.abs() < 1e-300 {
            nf
        } else {
            ((nf * t / 2.0).sin() / s).abs()
        }
    };
    let mut sum = 0.0;
    for k in 0..total {
        if k % per_segment == 0 && k != 0 {
            continue; // exact zero of the integrand
        }
        sum += integrand(k as f64 * h);
    }
    let trapezoid = sum * h;
    // |phi|' jumps by 2 |phi'(z)| = n / |sin(z/2)| at each zero z = 2 pi k / n
    let jumps: f64 = (1..n)
        .map(|k| {
            let z = std::f64::consts::TAU * k as f64 / nf;
            (nf / 2.0 * (nf * z / 2.0).cos() / (z / 2.0).sin()).abs()
        })
        .sum();
    Ok((trapezoid + h * h / 6.0 * jumps) / std::f64::consts::TAU)
}
