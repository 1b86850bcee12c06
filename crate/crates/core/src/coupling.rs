//! Linear two-mode couplings `U v U† = A v` on `v = (a, a†, b, b†)`.

use std::fmt;
use std::ops::Mul;

use nalgebra::{Matrix2, Matrix4};
use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Residual accepted by [`validate_coupling`] when no explicit tolerance is given.
pub const COUPLING_TOL: f64 = 1e-10;

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

/// 4×4 complex symplectic matrix of a Gaussian two-mode unitary, in
/// Heisenberg form: `U v U† = A v` with `v = (a, a†, b, b†)`.
#[derive(Clone, Copy, PartialEq)]
pub struct CouplingMatrix(Matrix4<Complex64>);

impl fmt::Debug for CouplingMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("CouplingMatrix").field(&self.0).finish()
    }
}

impl CouplingMatrix {
    pub fn from_matrix(m: Matrix4<Complex64>) -> Self {
        Self(m)
    }

    /// Builds the full matrix from its `a` and `b` rows; rows 2 and 4 are the
    /// conjugate partners forced by `U a† U† = (U a U†)†`.
    pub fn from_rows(row_a: [Complex64; 4], row_b: [Complex64; 4]) -> Self {
        let partner = |r: &[Complex64; 4]| [r[1].conj(), r[0].conj(), r[3].conj(), r[2].conj()];
        let rows = [row_a, partner(&row_a), row_b, partner(&row_b)];
        Self(Matrix4::from_fn(|i, j| rows[i][j]))
    }

    pub fn identity() -> Self {
        Self(Matrix4::identity())
    }

    /// Product coupling of two independent single-mode unitaries, given by
    /// their Heisenberg coefficients `W a W† = u a + v a†`.
    pub fn local(mode_a: (Complex64, Complex64), mode_b: (Complex64, Complex64)) -> Self {
        let (ua, va) = mode_a;
        let (ub, vb) = mode_b;
        Self::from_rows([ua, va, ZERO, ZERO], [ZERO, ZERO, ub, vb])
    }

    /// Coupling acting on `b` only.
    pub fn local_b(u: Complex64, v: Complex64) -> Self {
        Self::local((ONE, ZERO), (u, v))
    }

    /// The mode-exchange isometry `Ξ`: `Ξ a Ξ = b`, `Ξ b Ξ = a`.
    pub fn exchange() -> Self {
        Self::from_rows([ZERO, ZERO, ONE, ZERO], [ONE, ZERO, ZERO, ZERO])
    }

    pub fn matrix(&self) -> &Matrix4<Complex64> {
        &self.0
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.0[(i, j)]
    }

    /// `|A₁₁|² − |A₁₂|²`.
    pub fn q(&self) -> f64 {
        self.0[(0, 0)].norm_sqr() - self.0[(0, 1)].norm_sqr()
    }

    /// Inverse of a symplectic matrix, `K A† K` with `K = diag(1, −1, 1, −1)`.
    pub fn symplectic_inverse(&self) -> Matrix4<Complex64> {
        Matrix4::from_fn(|i, j| {
            let sign = if (i + j) % 2 == 0 { 1.0 } else { -1.0 };
            self.0[(j, i)].conj() * sign
        })
    }

    /// Columns shifted by two: `Ã_ij = A_{i, j⊕2}`, the coupling of `Ξ U`.
    pub fn swapped(&self) -> Self {
        Self(Matrix4::from_fn(|i, j| self.0[(i, (j + 2) % 4)]))
    }

    /// Single-mode block `[[A_ii, A_i,i+1], [A_i+1,i, A_i+1,i+1]]` for `i ∈ {0, 2}`.
    pub fn block(&self, row: usize, col: usize) -> Matrix2<Complex64> {
        self.0.fixed_view::<2, 2>(row, col).into_owned()
    }

    pub fn validate(&self, tol: f64) -> Result<()> {
        let report = validate_coupling(self, tol);
        if report.passed {
            Ok(())
        } else {
            Err(Error::InvalidCoupling {
                residual: report.max_residual,
            })
        }
    }
}

/// Heisenberg composition: if `X ↦ self` and `Y ↦ rhs`, then `self * rhs`
/// is the coupling of the unitary `Y X` (apply `X` first, then `Y`).
impl Mul for CouplingMatrix {
    type Output = CouplingMatrix;

    fn mul(self, rhs: Self) -> Self {
        Self(self.0 * rhs.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ValidationReport {
    /// `|Σ_j (−1)^{j+1}|A_1j|² − 1|`.
    pub row_a_norm: f64,
    /// `|Σ_j (−1)^{j+1}|A_3j|² − 1|`.
    pub row_b_norm: f64,
    /// `|[a', b']|`.
    pub commutator: f64,
    /// `|[a', b'†]|`.
    pub cross_commutator: f64,
    /// Largest deviation of rows 2 and 4 from the conjugates of rows 1 and 3.
    pub partner_rows: f64,
    pub max_residual: f64,
    pub passed: bool,
}

pub fn validate_coupling(a: &CouplingMatrix, tol: f64) -> ValidationReport {
    let m = &a.0;
    let sign = |j: usize| if j.is_multiple_of(2) { 1.0 } else { -1.0 };
    let norm = |i: usize| {
        let s: f64 = (0..4).map(|j| sign(j) * m[(i, j)].norm_sqr()).sum();
        (s - 1.0).abs()
    };
    let partner = |j: usize| j ^ 1;
    let commutator: Complex64 = (0..4)
        .map(|j| m[(0, j)] * m[(2, partner(j))] * sign(j))
        .sum();
    let cross: Complex64 = (0..4).map(|j| m[(0, j)] * m[(2, j)].conj() * sign(j)).sum();
    let mut partner_rows: f64 = 0.0;
    for (row, source) in [(1usize, 0usize), (3, 2)] {
        for j in 0..4 {
            partner_rows = partner_rows.max((m[(row, j)] - m[(source, partner(j))].conj()).norm());
        }
    }
    let row_a_norm = norm(0);
    let row_b_norm = norm(2);
    let max_residual = [
        row_a_norm,
        row_b_norm,
        commutator.norm(),
        cross.norm(),
        partner_rows,
    ]
    .into_iter()
    .fold(0.0, f64::max);
    ValidationReport {
        row_a_norm,
        row_b_norm,
        commutator: commutator.norm(),
        cross_commutator: cross.norm(),
        partner_rows,
        max_residual,
        passed: max_residual <= tol && max_residual.is_finite(),
    }
}

pub fn compute_q(a: &CouplingMatrix) -> f64 {
    a.q()
}

pub fn swap_coupling(a: &CouplingMatrix) -> CouplingMatrix {
    a.swapped()
}

impl Serialize for CouplingMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire {
            #[serde(rename = "A")]
            a: [[Complex64; 4]; 4],
        }
        let a = std::array::from_fn(|i| std::array::from_fn(|j| self.0[(i, j)]));
        Wire { a }.serialize(serializer)
    }
}

/// Accepts either all four rows or only the `a` and `b` rows (1 and 3), in
/// which case the conjugate partner rows are filled in.
impl<'de> Deserialize<'de> for CouplingMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Wire {
            #[serde(rename = "A")]
            a: Vec<[Complex64; 4]>,
        }
        let wire = Wire::deserialize(deserializer)?;
        match wire.a.len() {
            4 => Ok(Self(Matrix4::from_fn(|i, j| wire.a[i][j]))),
            2 => Ok(Self::from_rows(wire.a[0], wire.a[1])),
            n => Err(serde::de::Error::custom(format!(
                "coupling \"A\" must have 4 rows (or rows 1 and 3 only), got {n}"
            ))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bs(k: f64) -> CouplingMatrix {
        let t = Complex64::new(k.sqrt(), 0.0);
        let r = Complex64::new((1.0 - k).sqrt(), 0.0);
        CouplingMatrix::from_rows([t, ZERO, -r, ZERO], [r, ZERO, t, ZERO])
    }

    #[test]
    fn identity_passes_with_zero_residual() {
        let report = validate_coupling(&CouplingMatrix::identity(), COUPLING_TOL);
        assert!(report.passed);
        assert_eq!(report.max_residual, 0.0);
        assert_eq!(compute_q(&CouplingMatrix::identity()), 1.0);
    }

    #[test]
    fn scaled_entry_fails() {
        let mut m = *CouplingMatrix::identity().matrix();
        m[(0, 0)] *= 2.0;
        let report = validate_coupling(&CouplingMatrix::from_matrix(m), COUPLING_TOL);
        assert!(!report.passed);
        assert!((report.row_a_norm - 3.0).abs() < 1e-15);
        assert!((report.max_residual - 3.0).abs() < 1e-15);
        assert!((report.partner_rows - 1.0).abs() < 1e-15);

        // Beam splitter k = 0.3: 4k + (1 − k) − 1 = 3k.
        let mut m = *bs(0.3).matrix();
        m[(0, 0)] *= 2.0;
        let report = validate_coupling(&CouplingMatrix::from_matrix(m), COUPLING_TOL);
        assert!((report.row_a_norm - 0.9).abs() < 1e-14);
    }

    #[test]
    fn commutator_violation_detected() {
        let one = ONE;
        let bad = CouplingMatrix::from_rows([one, ZERO, ZERO, ZERO], [one, ZERO, ZERO, ZERO]);
        let report = validate_coupling(&bad, COUPLING_TOL);
        assert!((report.cross_commutator - 1.0).abs() < 1e-15);
        assert!(!report.passed);
    }

    #[test]
    fn symplectic_inverse_is_inverse() {
        let a = bs(0.37).swapped() * CouplingMatrix::exchange();
        let prod = a.symplectic_inverse() * a.matrix();
        assert!((prod - Matrix4::identity()).norm() < 1e-14);
    }

    #[test]
    fn swap_twice_is_identity() {
        let a = bs(0.3);
        assert_eq!(a.swapped().swapped(), a);
        assert!((a.swapped().q() - 0.7).abs() < 1e-15);
        assert_eq!(CouplingMatrix::identity().swapped().q(), 0.0);
    }

    #[test]
    fn exchange_composition_matches_column_shift() {
        // Ξ U has coupling A_U · A_Ξ, which is A with columns shifted by two.
        let a = bs(0.61);
        assert_eq!(a * CouplingMatrix::exchange(), a.swapped());
    }

    #[test]
    fn two_row_json_fills_partners() {
        let a = bs(0.5);
        let full = serde_json::to_value(a).unwrap();
        let rows = full["A"].as_array().unwrap().clone();
        let short = serde_json::json!({ "A": [rows[0], rows[2]] });
        let back: CouplingMatrix = serde_json::from_value(short).unwrap();
        assert_eq!(back, a);
        let back: CouplingMatrix = serde_json::from_value(full).unwrap();
        assert_eq!(back, a);
        assert!(
            serde_json::from_value::<CouplingMatrix>(serde_json::json!({"A": [rows[0]]})).is_err()
        );
    }
}
