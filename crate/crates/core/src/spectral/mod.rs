//! Eigenvalues, singular values and the structure of the peripheral spectrum.

mod jacobi;
mod qr;
mod svd;
mod tridiag;

use num_complex::Complex;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{c, Real};

pub(crate) use jacobi::eigh;
pub(crate) use tridiag::eigvalsh;
pub use jacobi::{hermitian_eigs, MAX_SWEEPS};
pub use qr::{eigenvalues, sort_eigenvalues, MAX_DIM};
pub use svd::{min_singular, null_space, numerical_rank, svd, Svd};

/// Default relative tolerance for grouping eigenvalues onto the spectral circle.
pub const DEFAULT_CLUSTER_TOL: f64 = 1e-6;
/// Relative (to `||A||`) singular value cutoff for numerical rank.
pub const RANK_TOL: f64 = 1e-8;
/// Largest dimension accepted by [`max_modulus_structure`].
pub const MAX_STRUCTURE_DIM: usize = 64;

/// Operator 2-norm, `sqrt(lambda_max(A* A))`.
pub fn spectral_norm<T: Real>(a: &Matrix<T>) -> Result<T> {
    Ok(singular_values(a)?[0])
}

/// Singular values in descending order.
pub fn singular_values<T: Real>(a: &Matrix<T>) -> Result<Vec<T>> {
    let gram = &a.adjoint() * a;
    let (mu, _) = eigh(&gram)?;
    Ok(mu.iter().rev().map(|&x| x.max(T::zero()).sqrt()).collect())
}

/// Largest eigenvalue modulus.
pub fn spectral_radius<T: Real>(a: &Matrix<T>) -> Result<T> {
    Ok(eigenvalues(a)?[0].norm())
}

/// Largest eigenvalue of a Hermitian matrix, with a unit eigenvector.
pub fn lambda_max<T: Real>(h: &Matrix<T>) -> Result<(T, Vec<Complex<T>>)> {
    let (mu, v) = eigh(h)?;
    let n = mu.len();
    Ok((mu[n - 1], v.column(n - 1)))
}

/// Square root of a Hermitian positive semidefinite matrix; eigenvalues below
/// zero (roundoff) are clamped.
pub fn psd_sqrt<T: Real>(h: &Matrix<T>) -> Result<Matrix<T>> {
    let (mu, v) = eigh(h)?;
    let root: Vec<Complex<T>> = mu.iter().map(|&x| c(x.max(T::zero()).sqrt())).collect();
    let out = &(&v * &Matrix::diag(&root)) * &v.adjoint();
    Ok(out.hermitian_part())
}

/// Operator absolute value `|B| = (B* B)^{1/2}`.
pub fn abs_operator<T: Real>(b: &Matrix<T>) -> Result<Matrix<T>> {
    psd_sqrt(&(&b.adjoint() * b))
}

/// One distinct eigenvalue on the spectral circle.
#[derive(Debug, Clone, Serialize)]
pub struct ClusterMember<T> {
    /// Positions in the sorted eigenvalue list that were merged into this value.
    pub indices: Vec<usize>,
    pub eigenvalue: Complex<T>,
    pub algebraic: usize,
    pub geometric: usize,
}

/// Eigenvalues of maximum modulus and their multiplicities.
#[derive(Debug, Clone, Serialize)]
pub struct MaxModulusCluster<T> {
    pub radius: T,
    pub members: Vec<ClusterMember<T>>,
    /// Every member has equal algebraic and geometric multiplicity, i.e. all
    /// Jordan blocks for the peripheral eigenvalues are `1 x 1`.
    pub partial_diagonalizable: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectralData<T> {
    pub eigenvalues: Vec<Complex<T>>,
    pub singular_values: Option<Vec<T>>,
    pub max_modulus_cluster: MaxModulusCluster<T>,
}

/// Eigenvalues plus multiplicities of the peripheral eigenvalues.
///
/// Eigenvalues with modulus within `cluster_tol * max(1, r)` of `r` are
/// peripheral; peripheral eigenvalues within the same distance of each other
/// are merged. Geometric multiplicity is `n - rank(A - lambda I)` at singular
/// value cutoff `1e-8 ||A||`.
pub fn max_modulus_structure<T: Real>(a: &Matrix<T>, cluster_tol: T) -> Result<SpectralData<T>> {
    let n = a.require_square("max_modulus_structure")?;
    if n > MAX_STRUCTURE_DIM {
        return Err(Error::TooLarge {
            op: "max_modulus_structure",
            n,
            limit: MAX_STRUCTURE_DIM,
        });
    }
    let eigs = eigenvalues(a)?;
    let sv = singular_values(a)?;
    let r = eigs[0].norm();
    let width = cluster_tol * r.max(T::one());
    let peripheral: Vec<usize> = (0..n).filter(|&i| r - eigs[i].norm() <= width).collect();

    let mut groups: Vec<Vec<usize>> = Vec::new();
    for &i in &peripheral {
        match groups
            .iter_mut()
            .find(|g| g.iter().any(|&j| (eigs[j] - eigs[i]).norm() <= width))
        {
            Some(g) => g.push(i),
            None => groups.push(vec![i]),
        }
    }

    let rank_tol = T::lit(RANK_TOL) * sv[0];
    let mut members = Vec::with_capacity(groups.len());
    for indices in groups {
        let count = T::from_usize_lossy(indices.len());
        let lambda = indices.iter().map(|&i| eigs[i]).sum::<Complex<T>>() / count;
        let rank = numerical_rank(&a.shift_diagonal(-lambda), rank_tol)?;
        let algebraic = indices.len();
        members.push(ClusterMember {
            indices,
            eigenvalue: lambda,
            algebraic,
            geometric: (n - rank).clamp(1, algebraic),
        });
    }
    let partial_diagonalizable = members.iter().all(|m| m.algebraic == m.geometric);
    Ok(SpectralData {
        eigenvalues: eigs,
        singular_values: Some(sv),
        max_modulus_cluster: MaxModulusCluster {
            radius: r,
            members,
            partial_diagonalizable,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::random_unitary;
    use crate::structured::doubly_stochastic_scale;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    type M = Matrix<f64>;

    fn cx(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn spectral_norm_examples() {
        let j = M::from_real_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]]).unwrap();
        assert!((spectral_norm(&j).unwrap() - 1.0).abs() < 1e-15);
        let d = M::diag(&[cx(1.0, 0.0), cx(2.0, 0.0)]);
        assert!((spectral_norm(&d).unwrap() - 2.0).abs() < 1e-15);
        // A1* A1 = diag(2, 2)
        let a1 = M::from_rows(&[vec![cx(0.0, 0.0), cx(1.0, 1.0)], vec![cx(2f64.sqrt(), 0.0), cx(0.0, 0.0)]]).unwrap();
        assert!((spectral_norm(&a1).unwrap() - 2f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn spectral_radius_examples() {
        for n in 1..6 {
            assert!((spectral_radius(&M::ones(n, n)).unwrap() - n as f64).abs() < 1e-12);
        }
        let a = M::from_real_rows(&[vec![1.0, 1.0], vec![-1.0, -1.0]]).unwrap();
        // nilpotent, characteristic polynomial z^2
        assert!(spectral_radius(&a).unwrap() < 1e-12);
    }

    #[test]
    fn doubly_stochastic_hermitian_part_radius() {
        // r(A + A*) = 2k for k times a doubly stochastic A
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let n = 4;
        let perms = [[0, 1, 2, 3], [1, 2, 3, 0], [3, 0, 2, 1], [2, 3, 1, 0]];
        let weights: Vec<f64> = (0..4).map(|_| rng.random_range(0.1..1.0)).collect();
        let total: f64 = weights.iter().sum();
        let a = M::from_fn(n, n, |i, j| {
            let s: f64 = perms.iter().zip(&weights).filter(|(p, _)| p[i] == j).map(|(_, w)| w).sum();
            cx(2.5 * s / total, 0.0)
        });
        let k = doubly_stochastic_scale(&a, 1e-12).unwrap();
        let r = spectral_radius(&(&a + &a.adjoint())).unwrap();
        assert!((r - 2.0 * k).abs() < 1e-10);
    }

    #[test]
    fn unitary_invariance_of_norm() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for n in [2, 4, 7] {
            let a = M::from_fn(n, n, |_, _| cx(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
            let u = random_unitary::<f64, _>(&mut rng, n);
            let v = random_unitary::<f64, _>(&mut rng, n);
            let lhs = spectral_norm(&(&(&u * &a) * &v)).unwrap();
            assert!((lhs - spectral_norm(&a).unwrap()).abs() < 1e-10);
        }
    }

    #[test]
    fn structure_of_jordan_block() {
        let j = M::from_real_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]]).unwrap();
        let s = max_modulus_structure(&j, DEFAULT_CLUSTER_TOL).unwrap();
        let cl = &s.max_modulus_cluster;
        assert_eq!(cl.members.len(), 1);
        assert_eq!((cl.members[0].algebraic, cl.members[0].geometric), (2, 1));
        assert!(!cl.partial_diagonalizable);
    }

    #[test]
    fn structure_of_radial_example() {
        let a = M::from_real_rows(&[vec![1.0, 0.0, 0.0], vec![0.0, 0.0, 1.0], vec![0.0, 0.0, 0.0]]).unwrap();
        let s = max_modulus_structure(&a, DEFAULT_CLUSTER_TOL).unwrap();
        let cl = &s.max_modulus_cluster;
        assert!((cl.radius - 1.0).abs() < 1e-14);
        assert_eq!(cl.members.len(), 1);
        assert_eq!((cl.members[0].algebraic, cl.members[0].geometric), (1, 1));
        assert!(cl.partial_diagonalizable);
    }

    #[test]
    fn structure_of_conjugated_diagonal() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        let u = random_unitary::<f64, _>(&mut rng, 3);
        let d = M::diag(&[cx(1.0, 0.0), cx(1.0, 0.0), cx(0.5, 0.0)]);
        let a = &(&u * &d) * &u.adjoint();
        let s = max_modulus_structure(&a, DEFAULT_CLUSTER_TOL).unwrap();
        let cl = &s.max_modulus_cluster;
        assert_eq!(cl.members.len(), 1);
        assert_eq!((cl.members[0].algebraic, cl.members[0].geometric), (2, 2));
        assert!(cl.partial_diagonalizable);
    }

    #[test]
    fn psd_sqrt_squares_back() {
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        let b = M::from_fn(4, 4, |_, _| cx(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
        let abs = abs_operator(&b).unwrap();
        assert!((&abs * &abs).max_abs_diff(&(&b.adjoint() * &b)) < 1e-12);
    }
}
