//! Schur (entrywise) products and powers: bound chains, the characterization
//! of `w(A^{∘m}) = w(A)^m` for radial `A`, and generators of radial matrices.

use num_complex::Complex;
use rand::Rng;
use serde::Serialize;

use crate::bounds::{c_matrices, symmetrized_moduli, BoundReport};
use crate::error::Result;
use crate::generators::{complete_orthonormal, random_complex, random_unitary};
use crate::matrix::{vector, Matrix};
use crate::radius::w;
use crate::scalar::{c, cis, Real};
use crate::spectral::{
    eigenvalues, hermitian_eigs, max_modulus_structure, min_singular, null_space, numerical_rank, spectral_norm,
    DEFAULT_CLUSTER_TOL,
};
use crate::structured::{diagonal_tensor_positions, kron, kron_power, schur_power, schur_product};

fn close<T: Real>(x: T, y: T, tol: T) -> bool {
    (x - y).abs() <= tol * x.abs().max(y.abs()).max(T::one())
}

/// `w(A) = ||A||` within `tol` (relative).
pub fn is_radial<T: Real>(a: &Matrix<T>, tol: T) -> Result<bool> {
    Ok(close(w(a)?, spectral_norm(a)?, tol))
}

/// `w(A ∘ B) <= w(A ⊗ B) <= w(C), w(C°), w(A') w(B)` together with
/// `w(A ∘ B) <= min{w(A) ||B||, w(B) ||A||} <= 2 w(A) w(B)`; adds
/// `w(A ∘ B) <= w(A) w(B)` when either factor is radial and
/// `w(A ∘ B) <= max_i a_ii w(B)` when `A` is positive semidefinite.
pub fn schur_radius_chain<T: Real>(a: &Matrix<T>, b: &Matrix<T>) -> Result<BoundReport<T>> {
    let tol = T::tol(crate::bounds::EQUALITY_TOL);
    let ab = schur_product(a, b)?;
    let (wa, wb) = (w(a)?, w(b)?);
    let (na, nb) = (spectral_norm(a)?, spectral_norm(b)?);
    let (cm, circ) = c_matrices(a, b)?;
    let mut r = BoundReport::new(a, b);
    r.push("w_AoB", w(&ab)?, "numerical radius sweep");
    r.push("w_AxB", w(&kron(a, b)?)?, "Schur product is a principal submatrix");
    r.push("w_C", w(&cm)?, "comparison matrix C");
    r.push("w_Ccirc", w(&circ)?, "comparison matrix C-circ");
    r.push("wAprime_wB", w(&symmetrized_moduli(a)?)? * wb, "symmetrized modulus bound");
    r.push("min_upper", (wa * nb).min(wb * na), "Schur product sandwich");
    r.push("two_wA_wB", T::lit(2.0) * wa * wb, "Schur product sandwich, power form");
    r.le("w_AoB", "w_AxB");
    r.le("w_AxB", "w_C");
    r.le("w_AxB", "w_Ccirc");
    r.le("w_AoB", "wAprime_wB");
    r.le("w_AoB", "min_upper");
    r.le("min_upper", "two_wA_wB");
    if close(wa, na, tol) || close(wb, nb, tol) {
        r.push("wA_wB", wa * wb, "radial factor");
        r.le("w_AoB", "wA_wB");
    }
    let n = a.rows();
    if a.is_hermitian(T::tol(1e-12)) && hermitian_eigs(a, T::tol(1e-10))?.0[0] >= -tol * na.max(T::one()) {
        let dmax = (0..n).map(|i| a[(i, i)].re).fold(T::neg_infinity(), T::max);
        r.push("maxdiag_wB", dmax * wb, "positive semidefinite factor");
        r.le("w_AoB", "maxdiag_wB");
    }
    Ok(r)
}

/// One-directional equality test for Schur products: for nonnegative `A` with
/// nonzero diagonal, `w(A ∘ B) = w(A) ||B||` forces `w(B) = ||B||`.
#[derive(Debug, Clone, Serialize)]
pub struct Cor2Check<T> {
    pub w_aob: T,
    pub holbrook: T,
    pub w_b: T,
    pub norm_b: T,
    pub applicable: bool,
    pub equality: bool,
    /// Vacuously true unless applicable with equality.
    pub ok: bool,
    /// Applicable, `w(B) = ||B||`, yet no equality: the reverse implication fails here.
    pub converse_counterexample: bool,
}

pub fn cor2_check<T: Real>(a: &Matrix<T>, b: &Matrix<T>, tol: T) -> Result<Cor2Check<T>> {
    let n = a.require_square("cor2_check")?;
    let w_aob = w(&schur_product(a, b)?)?;
    let (w_b, norm_b) = (w(b)?, spectral_norm(b)?);
    let holbrook = w(a)? * norm_b;
    let applicable = a.is_real_nonnegative() && (0..n).all(|i| a[(i, i)].re != T::zero());
    let equality = (w_aob - holbrook).abs() <= tol;
    let radial_b = (w_b - norm_b).abs() <= tol;
    Ok(Cor2Check {
        w_aob,
        holbrook,
        w_b,
        norm_b,
        applicable,
        equality,
        ok: !(applicable && equality) || radial_b,
        converse_counterexample: applicable && radial_b && !equality,
    })
}

/// `w(A^{∘m}) <= w(A) ||A||^{m-1} <= 2^{m-1} w(A)^m`; for radial `A` also
/// `w(A^{∘m}) <= w(A)^m`, and when that is attained
/// `w(A^{∘m}) = ||A^{∘m}|| = ||A||^m`.
pub fn th10_chain<T: Real>(a: &Matrix<T>, m: usize) -> Result<BoundReport<T>> {
    let tol = T::tol(crate::bounds::EQUALITY_TOL);
    let am = schur_power(a, m)?;
    let (wa, na) = (w(a)?, spectral_norm(a)?);
    let e = m as i32;
    let mut r = BoundReport::new(a, a);
    let wam = w(&am)?;
    r.push("w_Aom", wam, "numerical radius sweep");
    r.push("wA_normA_pow", wa * na.powi(e - 1), "Schur power bound");
    r.push("two_pow_wA_pow", T::lit(2.0).powi(e - 1) * wa.powi(e), "Schur power bound, radius form");
    r.le("w_Aom", "wA_normA_pow");
    r.le("wA_normA_pow", "two_pow_wA_pow");
    if close(wa, na, tol) {
        let target = wa.powi(e);
        r.push("wA_pow", target, "radial Schur power bound");
        r.le("w_Aom", "wA_pow");
        if close(wam, target, tol) {
            r.push("norm_Aom", spectral_norm(&am)?, "radial Schur power equality");
            r.push("normA_pow", na.powi(e), "radial Schur power equality");
            r.eq("w_Aom", "norm_Aom");
            r.eq("norm_Aom", "normA_pow");
        }
    }
    Ok(r)
}

/// `K`, whose columns are `(A e_j)^{⊗m}`, so that `A^{⊗m} E = K` where `E`
/// has columns `e_j^{⊗m}`.
pub fn tensor_columns<T: Real>(a: &Matrix<T>, m: usize) -> Result<Matrix<T>> {
    let n = a.require_square("tensor_columns")?;
    let big = kron_power(&Matrix::<T>::identity(n), m)?.rows();
    let mut k = Matrix::zeros(big, n);
    for j in 0..n {
        let col = a.column(j);
        let mut acc = col.clone();
        for _ in 1..m {
            acc = vector::kron(&acc, &col);
        }
        for (i, z) in acc.into_iter().enumerate() {
            k[(i, j)] = z;
        }
    }
    Ok(k)
}

/// `E* K`, i.e. the rows of `K` at the positions of `e_j^{⊗m}`; equals `A^{∘m}`.
pub fn schur_power_from_tensor<T: Real>(a: &Matrix<T>, m: usize) -> Result<Matrix<T>> {
    let n = a.rows();
    let k = tensor_columns(a, m)?;
    let pos = diagonal_tensor_positions(n, m)?;
    Ok(k.select(&pos, &(0..n).collect::<Vec<_>>()))
}

/// `x` with `A^{⊗m} (sum_j x_j e_j^{⊗m}) = lambda sum_j x_j e_j^{⊗m}`.
#[derive(Debug, Clone, Serialize)]
pub struct TrefWitness<T> {
    pub x: Vec<Complex<T>>,
    pub lambda: Complex<T>,
    /// `||K x - lambda E x||`.
    pub residual: T,
}

#[derive(Debug, Clone, Serialize)]
pub struct TrefVerdict<T> {
    pub m: usize,
    /// `w(A) = ||A||`; nothing else is asserted when false.
    pub radial: bool,
    /// `w(A^{∘m})`.
    pub power_radius: T,
    /// `w(A)^m`.
    pub target: T,
    pub equality: bool,
    pub witness: Option<TrefWitness<T>>,
    /// Peripheral Jordan blocks are all `1 x 1`.
    pub partial_diag: bool,
    /// Equality at `m' = 1, ..., m - 1`.
    pub lower_equalities: Vec<bool>,
}

impl<T: Real> TrefVerdict<T> {
    /// Witness found exactly when equality holds.
    pub fn consistent(&self) -> bool {
        !self.radial || self.equality == self.witness.is_some()
    }

    /// Equality at `m` implies equality at every smaller power.
    pub fn downward_closed(&self) -> bool {
        !self.equality || self.lower_equalities.iter().all(|&e| e)
    }
}

/// Distinct values among `vals`, merging those within `tol` of an earlier one.
fn distinct<T: Real>(vals: impl IntoIterator<Item = Complex<T>>, tol: T) -> Vec<Complex<T>> {
    let mut out: Vec<Complex<T>> = Vec::new();
    for v in vals {
        if !out.iter().any(|u| (*u - v).norm() <= tol) {
            out.push(v);
        }
    }
    out
}

/// Decides `w(A^{∘m}) = w(A)^m` by value and by searching the eigenpairs of
/// `A^{∘m}` whose lift to `A^{⊗m}` stays an eigenvector.
pub fn tref_check<T: Real>(a: &Matrix<T>, m: usize, tol: T) -> Result<TrefVerdict<T>> {
    let n = a.require_square("tref_check")?;
    let (wa, na) = (w(a)?, spectral_norm(a)?);
    let radial = close(wa, na, tol);
    let e = m as i32;
    let target = wa.powi(e);
    let am = schur_power(a, m)?;
    let power_radius = w(&am)?;
    let equality = radial && close(power_radius, target, tol);
    let partial_diag = max_modulus_structure(a, T::tol(DEFAULT_CLUSTER_TOL))?
        .max_modulus_cluster
        .partial_diagonalizable;
    let lower_equalities = (1..m)
        .map(|mm| Ok(close(w(&schur_power(a, mm)?)?, wa.powi(mm as i32), tol)))
        .collect::<Result<Vec<_>>>()?;
    let witness = if radial {
        let scale = na.powi(e).max(T::one());
        let k = tensor_columns(a, m)?;
        let pos = diagonal_tensor_positions(n, m)?;
        let candidates = distinct(
            eigenvalues(&am)?
                .into_iter()
                .filter(|l| (l.norm() - na.powi(e)).abs() <= tol * scale),
            tol * scale,
        );
        let mut best: Option<TrefWitness<T>> = None;
        for lambda in candidates {
            let mut g = k.clone();
            for (j, &p) in pos.iter().enumerate() {
                g[(p, j)] -= lambda;
            }
            let (s, x) = min_singular(&g)?;
            if s <= tol * scale && best.as_ref().is_none_or(|b| s < b.residual) {
                best = Some(TrefWitness { x, lambda, residual: s });
            }
        }
        best
    } else {
        None
    };
    Ok(TrefVerdict {
        m,
        radial,
        power_radius,
        target,
        equality,
        witness,
        partial_diag,
        lower_equalities,
    })
}

/// Decides the eigenvector condition on the full `n^m x n^m` matrix: some
/// eigenspace of `A^{⊗m}` for an eigenvalue of modulus `||A||^m` meets the
/// span of the `e_j^{⊗m}`.
pub fn tref_direct<T: Real>(a: &Matrix<T>, m: usize, tol: T) -> Result<bool> {
    let n = a.require_square("tref_direct")?;
    let x = kron_power(a, m)?;
    let big = x.rows();
    let target = spectral_norm(a)?.powi(m as i32);
    let scale = target.max(T::one());
    let pos = diagonal_tensor_positions(n, m)?;
    let outside: Vec<usize> = (0..big).filter(|i| !pos.contains(i)).collect();
    let cluster = T::tol(DEFAULT_CLUSTER_TOL) * scale;
    let candidates = distinct(
        eigenvalues(&x)?.into_iter().filter(|l| (l.norm() - target).abs() <= cluster),
        cluster,
    );
    for lambda in candidates {
        let Some(basis) = null_space(&x.shift_diagonal(-lambda), T::tol(1e-7) * scale)? else {
            continue;
        };
        if outside.is_empty() {
            return Ok(true);
        }
        // component of the eigenspace outside span{e_j^{⊗m}}
        let off = basis.select(&outside, &(0..basis.cols()).collect::<Vec<_>>());
        if min_singular(&off)?.0 <= tol.sqrt() {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Unitary `U` whose first `k` columns are eigenvectors for the eigenvalues
/// of maximum modulus, with `k`. For radial `A`, `U* A U = diag(a_1..a_k) ⊕ A'`.
pub fn peripheral_unitary<T: Real>(a: &Matrix<T>) -> Result<(Matrix<T>, usize)> {
    let n = a.require_square("peripheral_unitary")?;
    let data = max_modulus_structure(a, T::tol(DEFAULT_CLUSTER_TOL))?;
    let tol = T::tol(1e-8) * spectral_norm(a)?.max(T::one());
    let mut cols: Vec<Vec<Complex<T>>> = Vec::new();
    for member in &data.max_modulus_cluster.members {
        if let Some(basis) = null_space(&a.shift_diagonal(-member.eigenvalue), tol)? {
            cols.extend((0..basis.cols()).map(|j| basis.column(j)));
        }
    }
    let k = cols.len();
    let q = complete_orthonormal(&cols, n);
    Ok((Matrix::from_fn(n, n, |i, j| q[j][i]), k))
}

/// Indices in `0..n^m` whose base-`n` digits are all below `k`.
fn block_positions(n: usize, k: usize, m: usize) -> Vec<usize> {
    let total = n.pow(m as u32);
    (0..total)
        .filter(|&idx| {
            let mut t = idx;
            (0..m).all(|_| {
                let d = t % n;
                t /= n;
                d < k
            })
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct CrefVerdict {
    /// The eigenvector condition in `D = U* A U` coordinates holds.
    pub holds: bool,
    /// It agrees with the witness search of [`tref_check`].
    pub agrees: bool,
}

/// Re-decides the witness condition in the coordinates `D = U* A U`: an
/// eigenvector of `D^{⊗m}` in `V_k^{⊗m}` and in the span of the
/// `(U* e_j)^{⊗m}`, for an eigenvalue `a_{j_1} ... a_{j_m}`.
pub fn cref_check<T: Real>(a: &Matrix<T>, m: usize, tol: T) -> Result<CrefVerdict> {
    let n = a.require_square("cref_check")?;
    let tref = tref_check(a, m, tol)?;
    if !tref.radial {
        return Ok(CrefVerdict {
            holds: false,
            agrees: true,
        });
    }
    let (u, k) = peripheral_unitary(a)?;
    let ustar = u.adjoint();
    let d = &(&ustar * a) * &u;
    // F columns (U* e_j)^{⊗m}; G columns (D U* e_j)^{⊗m} = D^{⊗m} F
    let f = tensor_columns(&ustar, m)?;
    let g = tensor_columns(&(&d * &ustar), m)?;
    let big = f.rows();
    let inside = block_positions(n, k, m);
    let outside: Vec<usize> = (0..big).filter(|i| !inside.contains(i)).collect();
    let scale = spectral_norm(a)?.powi(m as i32).max(T::one());
    let heads: Vec<Complex<T>> = (0..k).map(|j| d[(j, j)]).collect();
    let mut products = vec![c(T::one())];
    for _ in 0..m {
        products = products.iter().flat_map(|p| heads.iter().map(move |h| *p * *h)).collect();
    }
    let mut holds = false;
    for lambda in distinct(products, tol * scale) {
        let mut stacked = Matrix::zeros(big + outside.len(), n);
        for j in 0..n {
            for i in 0..big {
                stacked[(i, j)] = g[(i, j)] - lambda * f[(i, j)];
            }
            for (r, &i) in outside.iter().enumerate() {
                stacked[(big + r, j)] = f[(i, j)] * c(scale);
            }
        }
        if min_singular(&stacked)?.0 <= tol * scale {
            holds = true;
            break;
        }
    }
    Ok(CrefVerdict {
        holds,
        agrees: holds == tref.witness.is_some(),
    })
}

/// Structure of the tensor eigenvector `y = (U*)^{⊗m} sum_j x_j e_j^{⊗m}`
/// behind a witness.
#[derive(Debug, Clone, Serialize)]
pub struct WitnessStructure<T> {
    /// `||y||` outside `V_k^{⊗m}`.
    pub outside: T,
    /// Largest relative eigen-residual of the nonzero slices `y_j`
    /// (`j < k`) under `D^{⊗(m-1)}`; zero when `m = 1`.
    pub slice_residual: T,
    /// Largest `| |mu_j| - w(A)^{m-1} |` over those slices.
    pub slice_modulus_gap: T,
}

pub fn witness_structure<T: Real>(a: &Matrix<T>, m: usize, witness: &TrefWitness<T>) -> Result<WitnessStructure<T>> {
    let n = a.require_square("witness_structure")?;
    let (u, k) = peripheral_unitary(a)?;
    let ustar = u.adjoint();
    let f = tensor_columns(&ustar, m)?;
    let y = f.mul_vec(&witness.x);
    let inside = block_positions(n, k, m);
    let outside = (0..y.len())
        .filter(|i| !inside.contains(i))
        .map(|i| y[i].norm_sqr())
        .sum::<T>()
        .sqrt();
    let (mut slice_residual, mut slice_modulus_gap) = (T::zero(), T::zero());
    if m > 1 {
        let d = &(&ustar * a) * &u;
        let x = kron_power(&d, m - 1)?;
        let len = x.rows();
        let wpow = w(a)?.powi(m as i32 - 1);
        for j in 0..k {
            let yj = &y[j * len..(j + 1) * len];
            let size = vector::norm2(yj);
            if size <= T::tol(1e-8) {
                continue;
            }
            let xy = x.mul_vec(yj);
            let mu = vector::dot(yj, &xy) / c(size * size);
            let resid: Vec<Complex<T>> = xy.iter().zip(yj).map(|(p, q)| *p - mu * *q).collect();
            slice_residual = slice_residual.max(vector::norm2(&resid) / size);
            slice_modulus_gap = slice_modulus_gap.max((mu.norm() - wpow).abs());
        }
    }
    Ok(WitnessStructure {
        outside,
        slice_residual,
        slice_modulus_gap,
    })
}

/// For the leading `k x k` block `T` of `X`: whether `w(T) = ||X||`, and
/// whether `X` has a zero-padded eigenvector `[y; 0]` for an eigenvalue of
/// modulus `||X||`.
pub fn lem_ref_check<T: Real>(x: &Matrix<T>, k: usize, tol: T) -> Result<(bool, bool)> {
    let n = x.require_square("lem_ref_check")?;
    let lead: Vec<usize> = (0..k.min(n)).collect();
    let nx = spectral_norm(x)?;
    let scale = nx.max(T::one());
    let radius_equal = close(w(&x.select(&lead, &lead))?, nx, tol);
    let mut padded = false;
    let candidates = distinct(
        eigenvalues(x)?.into_iter().filter(|l| (l.norm() - nx).abs() <= tol * scale),
        tol * scale,
    );
    for lambda in candidates {
        let cols = x.shift_diagonal(-lambda).select(&(0..n).collect::<Vec<_>>(), &lead);
        if min_singular(&cols)?.0 <= tol.sqrt() * scale {
            padded = true;
            break;
        }
    }
    Ok((radius_equal, padded))
}

#[derive(Debug, Clone, Serialize)]
pub struct RankOneCheck {
    /// Exactly one nonzero entry, on the diagonal.
    pub single_diagonal_entry: bool,
    /// Scan membership matches that characterization.
    pub agrees: bool,
}

/// Finite scan for membership in the set of radial matrices with
/// `w(A^{∘m}) = w(A)^m` for all `m`.
#[derive(Debug, Clone, Serialize)]
pub struct TforallmScan {
    pub radial: bool,
    /// Equality at `m = 1, ..., m_max`.
    pub equalities: Vec<bool>,
    pub member: bool,
    pub rank_one: Option<RankOneCheck>,
}

pub fn tforallm_scan<T: Real>(a: &Matrix<T>, m_max: usize, tol: T) -> Result<TforallmScan> {
    let (wa, na) = (w(a)?, spectral_norm(a)?);
    let radial = close(wa, na, tol);
    let equalities = (1..=m_max.max(1))
        .map(|m| Ok(close(w(&schur_power(a, m)?)?, wa.powi(m as i32), tol)))
        .collect::<Result<Vec<_>>>()?;
    let member = radial && equalities.iter().all(|&e| e);
    let cutoff = T::tol(1e-10) * na.max(T::one());
    let rank_one = (numerical_rank(a, cutoff)? == 1).then(|| {
        let (r, cc) = a.shape();
        let nonzero: Vec<(usize, usize)> = (0..r)
            .flat_map(|i| (0..cc).map(move |j| (i, j)))
            .filter(|&(i, j)| a[(i, j)].norm() > cutoff)
            .collect();
        let single = nonzero.len() == 1 && nonzero[0].0 == nonzero[0].1;
        RankOneCheck {
            single_diagonal_entry: single,
            agrees: single == member,
        }
    });
    Ok(TforallmScan {
        radial,
        equalities,
        member,
        rank_one,
    })
}

/// Block `T` of a generated radial matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Contraction {
    /// Random matrix rescaled to norm in `[0.3 r, r)`.
    Random,
    /// `r` times the nilpotent Jordan block (norm exactly `r` when size >= 2).
    Jordan,
    Zero,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct RadialProfile {
    /// Number of peripheral eigenvalues, at least 1.
    pub k: usize,
    pub radius: f64,
    pub contraction: Contraction,
}

impl RadialProfile {
    pub fn random<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Self {
        let contraction = match rng.random_range(0..3) {
            0 => Contraction::Random,
            1 => Contraction::Jordan,
            _ => Contraction::Zero,
        };
        Self {
            k: rng.random_range(1..=n.max(1)),
            radius: rng.random_range(0.5..2.0),
            contraction,
        }
    }
}

/// Phases on the unit circle, pairwise at least `gap` apart.
fn separated_phases<R: Rng + ?Sized>(rng: &mut R, k: usize, gap: f64) -> Vec<f64> {
    let tau = std::f64::consts::TAU;
    let mut out: Vec<f64> = Vec::with_capacity(k);
    while out.len() < k {
        let t = rng.random_range(0.0..tau);
        if out.iter().all(|&s| {
            let d = (t - s).rem_euclid(tau);
            d.min(tau - d) >= gap
        }) {
            out.push(t);
        }
    }
    out
}

/// `U (r diag(e^{i phi_1}, ..., e^{i phi_k}) ⊕ T) U*` with `||T|| <= r` and a
/// random unitary `U`; radial by construction.
pub fn radial_generator<T: Real, R: Rng + ?Sized>(rng: &mut R, n: usize, profile: RadialProfile) -> Matrix<T> {
    let k = profile.k.clamp(1, n);
    let r = profile.radius;
    let head: Vec<Complex<T>> = separated_phases(rng, k, 1e-2)
        .into_iter()
        .map(|t| cis(T::lit(t)) * T::lit(r))
        .collect();
    let rest = n - k;
    let tail: Matrix<T> = match profile.contraction {
        _ if rest == 0 => Matrix::zeros(1, 1),
        Contraction::Zero => Matrix::zeros(rest, rest),
        Contraction::Jordan => Matrix::from_fn(rest, rest, |i, j| {
            if j == i + 1 {
                c(T::lit(r))
            } else {
                c(T::zero())
            }
        }),
        Contraction::Random => {
            let x: Matrix<T> = random_complex(rng, rest, rest);
            let target = r * rng.random_range(0.3..1.0);
            let nx = spectral_norm(&x).map(|v| v.as_f64()).unwrap_or(1.0).max(1e-12);
            x.scale_real(T::lit(target / nx))
        }
    };
    let core = if rest == 0 {
        Matrix::diag(&head)
    } else {
        Matrix::diag(&head).direct_sum(&tail)
    };
    let u: Matrix<T> = random_unitary(rng, n);
    &(&u * &core) * &u.adjoint()
}

/// `DP ⊕ T`: unimodular diagonal `D`, permutation `P` (`n_dp x n_dp`), and a
/// contraction `T` (`n_t x n_t`, norm `t_norm <= 1`).
pub fn dp_plus_t<T: Real, R: Rng + ?Sized>(rng: &mut R, n_dp: usize, n_t: usize, t_norm: f64) -> Matrix<T> {
    let mut perm: Vec<usize> = (0..n_dp).collect();
    for i in (1..n_dp).rev() {
        perm.swap(i, rng.random_range(0..=i));
    }
    let phases: Vec<Complex<T>> = (0..n_dp)
        .map(|_| cis(T::lit(rng.random_range(0.0..std::f64::consts::TAU))))
        .collect();
    let dp = Matrix::from_fn(n_dp, n_dp, |i, j| if perm[i] == j { phases[i] } else { c(T::zero()) });
    if n_t == 0 {
        return dp;
    }
    let x: Matrix<T> = random_complex(rng, n_t, n_t);
    let nx = spectral_norm(&x).map(|v| v.as_f64()).unwrap_or(1.0).max(1e-12);
    dp.direct_sum(&x.scale_real(T::lit(t_norm / nx)))
}
