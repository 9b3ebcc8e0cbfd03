//! Numerical radius bounds for Kronecker products `A ⊗ B`, collected into
//! named ledgers whose declared relations are checked numerically.

use num_complex::Complex;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::radius::w;
use crate::scalar::{c, Real};
use crate::spectral::{abs_operator, spectral_norm};
use crate::structured::kron;

/// Most negative slack a declared relation may show.
pub const SLACK_TOL: f64 = 1e-8;
/// Relative tolerance for "this bound is attained" flags.
pub const EQUALITY_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RelationKind {
    Le,
    Eq,
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundEntry<T> {
    pub name: String,
    pub value: T,
    /// Name of the result the value comes from.
    pub anchor: String,
}

/// `lhs <= rhs` (slack `rhs - lhs`) or `lhs = rhs` (slack `-|lhs - rhs|`).
#[derive(Debug, Clone, Serialize)]
pub struct Relation<T> {
    pub lhs: String,
    pub rhs: String,
    pub kind: RelationKind,
    pub slack: T,
}

impl<T: Real> Relation<T> {
    pub fn holds(&self, tol: T) -> bool {
        self.slack >= -tol
    }
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Instance {
    pub a_shape: (usize, usize),
    pub b_shape: (usize, usize),
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trial: Option<u64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundReport<T> {
    pub instance: Instance,
    pub entries: Vec<BoundEntry<T>>,
    pub relations: Vec<Relation<T>>,
}

impl<T: Real> BoundReport<T> {
    pub fn new(a: &Matrix<T>, b: &Matrix<T>) -> Self {
        Self {
            instance: Instance {
                a_shape: a.shape(),
                b_shape: b.shape(),
                ..Instance::default()
            },
            entries: Vec::new(),
            relations: Vec::new(),
        }
    }

    pub fn push(&mut self, name: &str, value: T, anchor: &str) {
        self.entries.push(BoundEntry {
            name: name.into(),
            value,
            anchor: anchor.into(),
        });
    }

    pub fn value(&self, name: &str) -> Option<T> {
        self.entries.iter().find(|e| e.name == name).map(|e| e.value)
    }

    fn get(&self, name: &str) -> T {
        self.value(name)
            .unwrap_or_else(|| panic!("bound entry {name} must be pushed before it is related"))
    }

    /// Declares `lhs <= rhs` between two existing entries.
    pub fn le(&mut self, lhs: &str, rhs: &str) {
        let slack = self.get(rhs) - self.get(lhs);
        self.relations.push(Relation {
            lhs: lhs.into(),
            rhs: rhs.into(),
            kind: RelationKind::Le,
            slack,
        });
    }

    /// Declares `lhs = rhs` between two existing entries.
    pub fn eq(&mut self, lhs: &str, rhs: &str) {
        let slack = -(self.get(rhs) - self.get(lhs)).abs();
        self.relations.push(Relation {
            lhs: lhs.into(),
            rhs: rhs.into(),
            kind: RelationKind::Eq,
            slack,
        });
    }

    /// Smallest slack over all relations (`+inf` when there are none).
    pub fn min_slack(&self) -> T {
        self.relations.iter().map(|r| r.slack).fold(T::infinity(), T::min)
    }

    pub fn violations(&self, tol: T) -> Vec<&Relation<T>> {
        self.relations.iter().filter(|r| !r.holds(tol)).collect()
    }

    pub fn holds(&self, tol: T) -> bool {
        self.violations(tol).is_empty()
    }
}

fn attained<T: Real>(x: T, y: T) -> bool {
    (x - y).abs() <= T::tol(EQUALITY_TOL) * x.abs().max(y.abs()).max(T::one())
}

/// Upper bound `w(A) ||B||` on `w(A ⊗ B)`.
pub fn holbrook<T: Real>(a: &Matrix<T>, b: &Matrix<T>) -> Result<T> {
    Ok(w(a)? * spectral_norm(b)?)
}

/// `w(A) w(B) <= w(A ⊗ B) <= min{w(A) ||B||, w(B) ||A||}`; when `A` or `B`
/// has `w = ||.||` the lower bound is declared an equality.
pub fn p3_chain<T: Real>(a: &Matrix<T>, b: &Matrix<T>) -> Result<BoundReport<T>> {
    let (wa, wb) = (w(a)?, w(b)?);
    let (na, nb) = (spectral_norm(a)?, spectral_norm(b)?);
    let wab = w(&kron(a, b)?)?;
    let mut r = BoundReport::new(a, b);
    r.push("wA_wB", wa * wb, "Kronecker lower bound");
    r.push("w_AxB", wab, "numerical radius sweep");
    r.push("wA_normB", wa * nb, "Holbrook bound");
    r.push("wB_normA", wb * na, "Holbrook bound, swapped factors");
    r.push("min_upper", (wa * nb).min(wb * na), "Kronecker sandwich");
    r.le("wA_wB", "w_AxB");
    r.le("w_AxB", "min_upper");
    if attained(wa, na) || attained(wb, nb) {
        r.eq("w_AxB", "wA_wB");
    }
    Ok(r)
}

/// `w([[0, x], [y, 0]] ⊗ B)` by the sweep.
fn pair_radius<T: Real>(x: Complex<T>, y: Complex<T>, b: &Matrix<T>) -> Result<T> {
    let z = Complex::new(T::zero(), T::zero());
    let block = Matrix::from_rows(&[vec![z, x], vec![y, z]])?;
    w(&kron(&block, b)?)
}

/// The comparison matrices `(C, C°)`: diagonals `|a_ii| w(B)`, off-diagonals
/// `w([[0, a_ij], [a_ji, 0]] ⊗ B)` and `|a_ij| ||B||` respectively.
pub fn c_matrices<T: Real>(a: &Matrix<T>, b: &Matrix<T>) -> Result<(Matrix<T>, Matrix<T>)> {
    let n = a.require_square("c_matrices")?;
    let wb = w(b)?;
    let nb = spectral_norm(b)?;
    // [[0, a_ji], [a_ij, 0]] is a permutation similarity of [[0, a_ij], [a_ji, 0]],
    // so one sweep per unordered pair fills both c_ij and c_ji
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let values: Vec<T> = pairs
        .par_iter()
        .map(|&(i, j)| pair_radius(a[(i, j)], a[(j, i)], b))
        .collect::<Result<_>>()?;
    let mut cm = Matrix::zeros(n, n);
    for (&(i, j), &v) in pairs.iter().zip(&values) {
        cm[(i, j)] = c(v);
        cm[(j, i)] = c(v);
    }
    for i in 0..n {
        cm[(i, i)] = c(a[(i, i)].norm() * wb);
    }
    let circ = Matrix::from_fn(n, n, |i, j| {
        if i == j {
            c(a[(i, i)].norm() * wb)
        } else {
            c(a[(i, j)].norm() * nb)
        }
    });
    Ok((cm, circ))
}

/// `w(A) w(B) <= w(A ⊗ B) <= w(C) <= w(C°)`, plus `w(C°) <= w(A) ||B||` when
/// `A` is entrywise nonnegative, and Holbrook's bound in all cases.
pub fn th4_chain<T: Real>(a: &Matrix<T>, b: &Matrix<T>) -> Result<BoundReport<T>> {
    let (cm, circ) = c_matrices(a, b)?;
    let (wa, wb, nb) = (w(a)?, w(b)?, spectral_norm(b)?);
    let mut r = BoundReport::new(a, b);
    r.push("wA_wB", wa * wb, "Kronecker lower bound");
    r.push("w_AxB", w(&kron(a, b)?)?, "numerical radius sweep");
    r.push("w_C", w(&cm)?, "comparison matrix C");
    r.push("w_Ccirc", w(&circ)?, "comparison matrix C-circ");
    r.push("wA_normB", wa * nb, "Holbrook bound");
    r.le("wA_wB", "w_AxB");
    r.le("w_AxB", "w_C");
    r.le("w_C", "w_Ccirc");
    r.le("w_AxB", "wA_normB");
    if a.is_real_nonnegative() {
        r.le("w_Ccirc", "wA_normB");
    }
    Ok(r)
}

/// `A'` with entries `max{|a_ij|, |a_ji|}`.
pub fn symmetrized_moduli<T: Real>(a: &Matrix<T>) -> Result<Matrix<T>> {
    let n = a.require_square("symmetrized_moduli")?;
    Ok(Matrix::from_fn(n, n, |i, j| c(a[(i, j)].norm().max(a[(j, i)].norm()))))
}

/// `C-hat`: diagonal `|a_ii| w(B)`, off-diagonal
/// `||(|a_ij| |B| + |a_ji| |B*|)||^{1/2} ||(|a_ji| |B| + |a_ij| |B*|)||^{1/2} / 2`.
pub fn c_hat<T: Real>(a: &Matrix<T>, b: &Matrix<T>) -> Result<Matrix<T>> {
    let n = a.require_square("c_hat")?;
    let wb = w(b)?;
    let abs_b = abs_operator(b)?;
    let abs_bstar = abs_operator(&b.adjoint())?;
    let mut out = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            out[(i, j)] = if i == j {
                c(a[(i, i)].norm() * wb)
            } else {
                let (x, y) = (a[(i, j)].norm(), a[(j, i)].norm());
                let first = spectral_norm(&(&abs_b.scale_real(x) + &abs_bstar.scale_real(y)))?;
                let second = spectral_norm(&(&abs_b.scale_real(y) + &abs_bstar.scale_real(x)))?;
                c((first * second).sqrt() * T::lit(0.5))
            };
        }
    }
    Ok(out)
}

/// `w(A ⊗ B) <= w(C) <= w(A') w(B)`, `w(C) <= w(C-hat)`, and the entrywise
/// facts `c_ij <= c-hat_ij <= (|a_ij| + |a_ji|) ||B|| / 2` reported as their
/// worst slack.
pub fn refined_bounds<T: Real>(a: &Matrix<T>, b: &Matrix<T>) -> Result<BoundReport<T>> {
    let n = a.require_square("refined_bounds")?;
    let (cm, _) = c_matrices(a, b)?;
    let hat = c_hat(a, b)?;
    let (wb, nb) = (w(b)?, spectral_norm(b)?);
    let mut r = BoundReport::new(a, b);
    r.push("w_AxB", w(&kron(a, b)?)?, "numerical radius sweep");
    r.push("w_C", w(&cm)?, "comparison matrix C");
    r.push("wAprime_wB", w(&symmetrized_moduli(a)?)? * wb, "symmetrized modulus bound");
    r.push("w_Chat", w(&hat)?, "operator absolute value bound");
    let mut c_excess = T::neg_infinity();
    let mut hat_excess = T::neg_infinity();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let avg = (a[(i, j)].norm() + a[(j, i)].norm()) * T::lit(0.5) * nb;
                c_excess = c_excess.max(cm[(i, j)].re - hat[(i, j)].re);
                hat_excess = hat_excess.max(hat[(i, j)].re - avg);
            }
        }
    }
    let (c_excess, hat_excess) = if n == 1 {
        (T::zero(), T::zero())
    } else {
        (c_excess, hat_excess)
    };
    r.push("zero", T::zero(), "reference");
    r.push("max_c_minus_chat", c_excess, "entrywise C <= C-hat");
    r.push("max_chat_minus_avg", hat_excess, "entrywise C-hat <= mean modulus times norm");
    r.le("w_AxB", "w_C");
    r.le("w_C", "wAprime_wB");
    r.le("w_C", "w_Chat");
    r.le("max_c_minus_chat", "zero");
    r.le("max_chat_minus_avg", "zero");
    Ok(r)
}

/// Outcome of testing the equality characterisation `w(A ⊗ B) = w(A) ||B||`.
#[derive(Debug, Clone, Serialize)]
pub struct Cor1Check<T> {
    pub w_b: T,
    pub norm_b: T,
    pub w_axb: T,
    pub holbrook: T,
    /// `w(B) = ||B||` within `tol`.
    pub forward_applicable: bool,
    /// Vacuously true when not applicable.
    pub forward_ok: bool,
    /// All `a_ij >= 0` and all `a_ii != 0`.
    pub converse_applicable: bool,
    /// Equality in Holbrook's bound within `tol`.
    pub equality: bool,
    /// Under applicability and equality, `w(B) = ||B||` within `tol`;
    /// vacuously true otherwise.
    pub converse_ok: bool,
}

/// Checks both directions of: `w(B) = ||B||` implies `w(A ⊗ B) = w(A) ||B||`,
/// and conversely for nonnegative `A` with nonzero diagonal.
pub fn cor1_equality_check<T: Real>(a: &Matrix<T>, b: &Matrix<T>, tol: T) -> Result<Cor1Check<T>> {
    let n = a.require_square("cor1_equality_check")?;
    let (w_b, norm_b) = (w(b)?, spectral_norm(b)?);
    let w_axb = w(&kron(a, b)?)?;
    let holbrook = w(a)? * norm_b;
    let forward_applicable = (w_b - norm_b).abs() <= tol;
    let equality = (w_axb - holbrook).abs() <= tol;
    let converse_applicable = a.is_real_nonnegative() && (0..n).all(|i| a[(i, i)].re != T::zero());
    Ok(Cor1Check {
        w_b,
        norm_b,
        w_axb,
        holbrook,
        forward_applicable,
        forward_ok: !forward_applicable || equality,
        converse_applicable,
        equality,
        converse_ok: !(converse_applicable && equality) || forward_applicable,
    })
}

/// `w(A) w(B) <= w(A ⊗ B) <= ||A|| w(B) <= sqrt(max row sum * max col sum) w(B)`.
pub fn e14_chain<T: Real>(a: &Matrix<T>, b: &Matrix<T>) -> Result<BoundReport<T>> {
    let (wa, wb, na) = (w(a)?, w(b)?, spectral_norm(a)?);
    let mut r = BoundReport::new(a, b);
    r.push("wA_wB", wa * wb, "Kronecker lower bound");
    r.push("w_AxB", w(&kron(a, b)?)?, "numerical radius sweep");
    r.push("normA_wB", na * wb, "Kronecker upper bound");
    r.push(
        "rowcol_wB",
        (a.norm_inf() * a.norm_one()).sqrt() * wb,
        "row and column sum interpolation",
    );
    r.le("wA_wB", "w_AxB");
    r.le("w_AxB", "normA_wB");
    r.le("normA_wB", "rowcol_wB");
    Ok(r)
}

/// `(||[P_ij]||, ||[||P_ij||]||)` for an `n x n` grid of equally shaped blocks.
pub fn hou_du_gap<T: Real>(blocks: &[Vec<Matrix<T>>]) -> Result<(T, T)> {
    let n = blocks.len();
    if n == 0 || blocks.iter().any(|row| row.len() != n) {
        return Err(Error::InvalidArgument("block grid must be square and nonempty".into()));
    }
    let shape = blocks[0][0].shape();
    for row in blocks {
        for blk in row {
            if blk.shape() != shape {
                return Err(Error::ShapeMismatch {
                    op: "hou_du_gap",
                    left: shape,
                    right: blk.shape(),
                });
            }
        }
    }
    let assembled = Matrix::from_blocks(blocks)?;
    let mut norms = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            norms[(i, j)] = c(spectral_norm(&blocks[i][j])?);
        }
    }
    Ok((spectral_norm(&assembled)?, spectral_norm(&norms)?))
}
