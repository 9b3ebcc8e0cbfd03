//! Finite-dimensional semi-Hilbertian spaces: a positive semidefinite `P`
//! induces `<x, y>_P = <Px, y>`, and operators leaving the support of `P`
//! suitably invariant reduce to honest matrices on that support.

use num_complex::Complex;
use rand::Rng;

use crate::bounds::{c_matrices, cor1_equality_check, BoundReport, Cor1Check};
use crate::error::{Error, Result};
use crate::generators::{random_complex, random_unitary};
use crate::matrix::{vector, Matrix};
use crate::radius::w;
use crate::scalar::{c, Real};
use crate::spectral::{hermitian_eigs, spectral_norm};
use crate::structured::kron;

/// Eigenvalues at or below this fraction of the largest one count as zero.
pub const SUPPORT_CUTOFF: f64 = 1e-12;
/// Default relative tolerance of the adjointability test.
pub const ADJOINT_TOL: f64 = 1e-9;
/// Relative tolerance for accepting `P` as Hermitian and positive.
const PSD_TOL: f64 = 1e-9;

/// A positive semidefinite `P` together with its eigen-decomposition.
#[derive(Debug, Clone)]
pub struct PSpace<T: Real> {
    p: Matrix<T>,
    /// Eigenvectors, columns ordered like `sigma`.
    u: Matrix<T>,
    /// Eigenvalues, descending, clamped at zero.
    sigma: Vec<T>,
    rank: usize,
}

impl<T: Real> PSpace<T> {
    pub fn new(p: &Matrix<T>) -> Result<Self> {
        let n = p.require_square("PSpace")?;
        let (mu, v) = hermitian_eigs(p, T::tol(PSD_TOL))?;
        let scale = mu.iter().fold(T::one(), |m, x| m.max(x.abs()));
        if mu[0] < -T::tol(PSD_TOL) * scale {
            return Err(Error::NotPositive {
                min_eigenvalue: mu[0].as_f64(),
            });
        }
        // stable, so tied eigenvalues keep the solver's order (P = I gives U = I)
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| mu[j].partial_cmp(&mu[i]).unwrap());
        let u = v.select(&(0..n).collect::<Vec<_>>(), &order);
        let sigma: Vec<T> = order.iter().map(|&i| mu[i].max(T::zero())).collect();
        let cutoff = T::tol(SUPPORT_CUTOFF) * sigma[0];
        let rank = sigma.iter().filter(|&&s| s > cutoff).count();
        Ok(Self {
            p: p.clone(),
            u,
            sigma,
            rank,
        })
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::new(&Matrix::identity(n))
    }

    pub fn dim(&self) -> usize {
        self.sigma.len()
    }

    pub fn p(&self) -> &Matrix<T> {
        &self.p
    }

    pub fn eigenvalues(&self) -> &[T] {
        &self.sigma
    }

    pub fn eigenvectors(&self) -> &Matrix<T> {
        &self.u
    }

    pub fn support_rank(&self) -> usize {
        self.rank
    }

    /// `U_S`, the eigenvectors spanning the support.
    pub fn support_basis(&self) -> Matrix<T> {
        let rows: Vec<usize> = (0..self.dim()).collect();
        let cols: Vec<usize> = (0..self.rank).collect();
        self.u.select(&rows, &cols)
    }

    fn sigma_power(&self, e: T) -> Matrix<T> {
        let d: Vec<Complex<T>> = self.sigma[..self.rank].iter().map(|&s| c(s.powf(e))).collect();
        Matrix::diag(&d)
    }

    /// Orthogonal projection onto the support of `P`.
    pub fn projector(&self) -> Matrix<T> {
        let us = self.support_basis();
        &us * &us.adjoint()
    }

    /// Moore-Penrose inverse of `P` (through the support cutoff).
    pub fn pinv(&self) -> Matrix<T> {
        let us = self.support_basis();
        &(&us * &self.sigma_power(-T::one())) * &us.adjoint()
    }

    /// `||P - U diag(sigma) U*||_inf`.
    pub fn reconstruction_error(&self) -> T {
        let d: Vec<Complex<T>> = self.sigma.iter().map(|&s| c(s)).collect();
        let back = &(&self.u * &Matrix::diag(&d)) * &self.u.adjoint();
        (&back - &self.p).norm_inf()
    }

    /// `||x||_P = <Px, x>^{1/2}`.
    pub fn seminorm(&self, x: &[Complex<T>]) -> T {
        vector::dot(&self.p.mul_vec(x), x).re.max(T::zero()).sqrt()
    }

    /// `||Pi B Pi_perp||`, zero exactly when `B*` maps the range of `P^{1/2}`
    /// into itself.
    pub fn adjointability_defect(&self, b: &Matrix<T>) -> Result<T> {
        self.check_shape(b)?;
        let pi = self.projector();
        let perp = &Matrix::identity(self.dim()) - &pi;
        spectral_norm(&(&(&pi * b) * &perp))
    }

    pub fn is_p_adjointable(&self, b: &Matrix<T>, tol: T) -> Result<bool> {
        Ok(self.adjointability_defect(b)? <= tol * spectral_norm(b)?.max(T::one()))
    }

    fn check_shape(&self, b: &Matrix<T>) -> Result<()> {
        let n = self.dim();
        if b.shape() != (n, n) {
            return Err(Error::ShapeMismatch {
                op: "semi-Hilbertian operator",
                left: (n, n),
                right: b.shape(),
            });
        }
        Ok(())
    }

    /// Matrix of the reduced operator in the `[., .]`-orthonormal basis
    /// `sigma_i^{1/2} u_i` of the support: `Sigma^{1/2} U_S* B U_S Sigma^{-1/2}`.
    pub fn reduced_matrix(&self, b: &Matrix<T>) -> Result<Matrix<T>> {
        let defect = self.adjointability_defect(b)?;
        if defect > T::tol(ADJOINT_TOL) * spectral_norm(b)?.max(T::one()) {
            return Err(Error::NotAdjointable {
                defect: defect.as_f64(),
            });
        }
        let us = self.support_basis();
        let core = &(&us.adjoint() * b) * &us;
        Ok(&(&self.sigma_power(T::lit(0.5)) * &core) * &self.sigma_power(T::lit(-0.5)))
    }

    /// The reduced operator realized on the support in standard coordinates,
    /// `U_S Sigma^{1/2} M Sigma^{-1/2} U_S*`, so that `P B = lift(M) P`.
    pub fn lift(&self, m: &Matrix<T>) -> Matrix<T> {
        self.conjugate_into(m, T::lit(0.5))
    }

    /// An operator whose reduced matrix is `m`: `U_S Sigma^{-1/2} M Sigma^{1/2} U_S*`.
    pub fn embed(&self, m: &Matrix<T>) -> Matrix<T> {
        self.conjugate_into(m, T::lit(-0.5))
    }

    fn conjugate_into(&self, m: &Matrix<T>, e: T) -> Matrix<T> {
        let us = self.support_basis();
        let inner = &(&self.sigma_power(e) * m) * &self.sigma_power(-e);
        &(&us * &inner) * &us.adjoint()
    }

    /// `||P B - lift(M) P||_inf`.
    pub fn intertwining_residual(&self, b: &Matrix<T>) -> Result<T> {
        let m = self.reduced_matrix(b)?;
        Ok((&(&self.p * b) - &(&self.lift(&m) * &self.p)).norm_inf())
    }

    /// `B^{#P} = P^+ B* P`.
    pub fn sharp(&self, b: &Matrix<T>) -> Result<Matrix<T>> {
        self.check_shape(b)?;
        Ok(&(&self.pinv() * &b.adjoint()) * &self.p)
    }

    /// `(w_P(B), ||B||_P)`.
    pub fn p_radius_and_norm(&self, b: &Matrix<T>) -> Result<(T, T)> {
        let m = self.reduced_matrix(b)?;
        Ok((w(&m)?, spectral_norm(&m)?))
    }

    /// `I_n ⊗ P`.
    pub fn inflate(&self, n: usize) -> Result<PSpace<T>> {
        PSpace::new(&kron(&Matrix::identity(n), &self.p)?)
    }

    /// Random operator with `Pi B Pi_perp = 0`: block lower triangular with
    /// respect to the support split, in the eigenbasis.
    pub fn random_adjointable<R: Rng + ?Sized>(&self, rng: &mut R) -> Matrix<T> {
        let n = self.dim();
        let mut x: Matrix<T> = random_complex(rng, n, n);
        for i in 0..self.rank {
            for j in self.rank..n {
                x[(i, j)] = c(T::zero());
            }
        }
        &(&self.u * &x) * &self.u.adjoint()
    }
}

/// Random `n x n` positive semidefinite matrix of rank `rank` with spread-out
/// nonzero eigenvalues in `[0.5, 2)`.
pub fn random_p<T: Real, R: Rng + ?Sized>(rng: &mut R, n: usize, rank: usize) -> Matrix<T> {
    let u: Matrix<T> = random_unitary(rng, n);
    let d: Vec<Complex<T>> = (0..n)
        .map(|i| if i < rank { c(T::lit(rng.random_range(0.5..2.0))) } else { c(T::zero()) })
        .collect();
    (&(&u * &Matrix::diag(&d)) * &u.adjoint()).hermitian_part()
}

/// Kronecker chain for `A ⊗ B` measured in `I_n ⊗ P`: lower and upper
/// products, the comparison matrices built from `w_P` and `||.||_P`, and a
/// direct reduction of `A ⊗ B` against the inflated space.
pub fn p_kron_suite<T: Real>(ps: &PSpace<T>, a: &Matrix<T>, b: &Matrix<T>) -> Result<BoundReport<T>> {
    let n = a.require_square("p_kron_suite")?;
    let m = ps.reduced_matrix(b)?;
    let (wa, na) = (w(a)?, spectral_norm(a)?);
    let (wpb, npb) = (w(&m)?, spectral_norm(&m)?);
    let mid = w(&kron(a, &m)?)?;
    let direct = w(&ps.inflate(n)?.reduced_matrix(&kron(a, b)?)?)?;
    let (cm, bold) = c_matrices(a, &m)?;
    let mut r = BoundReport::new(a, b);
    r.push("wA_wPB", wa * wpb, "P-Kronecker lower bound");
    r.push("wP_AxB", mid, "reduced operator A ⊗ B-tilde");
    r.push("wP_AxB_direct", direct, "reduction in I_n ⊗ P");
    r.push("wA_normPB", wa * npb, "P-Holbrook bound");
    r.push("wPB_normA", wpb * na, "P-Holbrook bound, swapped factors");
    r.push("min_upper", (wa * npb).min(wpb * na), "P-Kronecker sandwich");
    r.push("w_C", w(&cm)?, "P comparison matrix C");
    r.push("w_boldC", w(&bold)?, "P comparison matrix bold C");
    r.eq("wP_AxB", "wP_AxB_direct");
    r.le("wA_wPB", "wP_AxB");
    r.le("wP_AxB", "min_upper");
    r.le("wP_AxB", "w_C");
    r.le("wP_AxB", "w_boldC");
    r.le("w_C", "w_boldC");
    if a.is_real_nonnegative() {
        r.le("w_boldC", "wA_normPB");
    }
    if (wpb - npb).abs() <= T::tol(1e-8) * npb.max(T::one()) {
        r.eq("wP_AxB", "wA_normPB");
    }
    Ok(r)
}

/// [`cor1_equality_check`] with `w_P` and `||.||_P` in place of `w` and `||.||`.
pub fn p_cor1_equality_check<T: Real>(ps: &PSpace<T>, a: &Matrix<T>, b: &Matrix<T>, tol: T) -> Result<Cor1Check<T>> {
    cor1_equality_check(a, &ps.reduced_matrix(b)?, tol)
}
