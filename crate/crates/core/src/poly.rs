use num_complex::Complex;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Monic polynomial `z^n + a_{n-1} z^{n-1} + ... + a_1 z + a_0`, stored as
/// `a_0, ..., a_{n-1}` with the leading 1 implicit.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Poly<T> {
    coeffs: Vec<Complex<T>>,
}

impl<T: Real> Poly<T> {
    /// From the lower coefficients `a_0, ..., a_{n-1}`; requires `n >= 2`.
    pub fn new(coeffs: Vec<Complex<T>>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::InvalidPolynomial(format!(
                "degree {} is below 2",
                coeffs.len()
            )));
        }
        if coeffs.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::InvalidPolynomial("non-finite coefficient".into()));
        }
        Ok(Self { coeffs })
    }

    /// From all coefficients in ascending order, leading one last. A leading
    /// coefficient other than exactly 1 is rejected, never normalised away.
    pub fn from_ascending(all: &[Complex<T>]) -> Result<Self> {
        match all.split_last() {
            Some((lead, rest)) if lead.is_one() => Self::new(rest.to_vec()),
            Some((lead, _)) => Err(Error::InvalidPolynomial(format!(
                "leading coefficient is {lead}, expected 1"
            ))),
            None => Err(Error::InvalidPolynomial("no coefficients".into())),
        }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Complex<T>] {
        &self.coeffs
    }

    /// Horner evaluation.
    pub fn eval(&self, z: Complex<T>) -> Complex<T> {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex::one(), |acc, &a| acc * z + a)
    }
}
