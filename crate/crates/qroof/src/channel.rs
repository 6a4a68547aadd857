//! Trace-preserving positive (stochastic) 1-qubit maps.
//!
//! A map is stored in the affine form `x -> (x0, x0*t + Lambda*x)` acting on
//! Minkowski 4-vectors; trace preservation is structural. Positivity is
//! classified by closed forms for axially symmetric maps and by the
//! eigenvalue flow of the concurrence form in general. Complete positivity
//! is checked through the Choi matrix; that check is plumbing for user
//! convenience, the roof construction itself only needs positivity.

use nalgebra::{Matrix2, Matrix3, Matrix4, Vector3};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bloch::MinkowskiVector;
use crate::concurrence;

/// Tolerance on eigenvalue imaginary parts in the positivity test.
pub const TAU_IMAG: f64 = 1e-8;
/// Tolerance on positive-semidefiniteness tests.
pub const TAU_PSD: f64 = 1e-9;

/// A trace-preserving linear 1-qubit map `(Lambda, t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitMap {
    pub lambda: Matrix3<f64>,
    pub t: Vector3<f64>,
}

/// Parameters of an axially symmetric map: `Lambda = diag(beta, beta,
/// alpha+gamma-1)`, `t = (0, 0, alpha-gamma)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AxialParams {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PositivityClass {
    NotPositive,
    Positive,
    CompletelyPositive,
}

impl PositivityClass {
    pub fn is_positive(&self) -> bool {
        !matches!(self, PositivityClass::NotPositive)
    }
}

impl QubitMap {
    pub fn identity() -> Self {
        Self {
            lambda: Matrix3::identity(),
            t: Vector3::zeros(),
        }
    }

    /// Bistochastic map `Lambda = diag(l1, l2, l3)`, `t = 0`.
    pub fn unital(l1: f64, l2: f64, l3: f64) -> Self {
        Self {
            lambda: Matrix3::from_diagonal(&Vector3::new(l1, l2, l3)),
            t: Vector3::zeros(),
        }
    }

    /// `rho -> p rho + (1-p) I/2`.
    pub fn depolarizing(p: f64) -> Self {
        Self::unital(p, p, p)
    }

    pub fn phase_damping(p: f64) -> Self {
        Self::unital(p, p, 1.0)
    }

    /// Amplitude damping with parameter `alpha`: axial with `gamma = 1`,
    /// `beta^2 = alpha`.
    pub fn amplitude_damping(alpha: f64) -> Self {
        AxialParams {
            alpha,
            beta: alpha.sqrt(),
            gamma: 1.0,
        }
        .map()
    }

    /// Kraus-length-2 normal form `Lambda = diag(cos u, cos v, cos u cos v)`,
    /// `t = (0, 0, sin u sin v)`. Swaps `u` and `v` when `cos u < cos v`;
    /// the second return value records the swap.
    pub fn kraus2(u: f64, v: f64) -> (Self, bool) {
        let (u, v, swapped) = if u.cos() >= v.cos() {
            (u, v, false)
        } else {
            (v, u, true)
        };
        let map = Self {
            lambda: Matrix3::from_diagonal(&Vector3::new(u.cos(), v.cos(), u.cos() * v.cos())),
            t: Vector3::new(0.0, 0.0, u.sin() * v.sin()),
        };
        (map, swapped)
    }

    /// Applies the map: `(x0, x) -> (x0, x0*t + Lambda*x)`.
    pub fn apply(&self, v: &MinkowskiVector) -> MinkowskiVector {
        MinkowskiVector {
            x0: v.x0,
            x: v.x0 * self.t + self.lambda * v.x,
        }
    }

    /// Applies the complex-linear extension to an arbitrary 2x2 matrix.
    pub fn apply_matrix(&self, m: &Matrix2<Complex64>) -> Matrix2<Complex64> {
        // Decompose M = (m0*I + mvec.sigma)/2 with complex coefficients.
        let m0 = m[(0, 0)] + m[(1, 1)];
        let mv = [
            m[(0, 1)] + m[(1, 0)],
            Complex64::i() * (m[(0, 1)] - m[(1, 0)]),
            m[(0, 0)] - m[(1, 1)],
        ];
        let mut out = [Complex64::new(0.0, 0.0); 3];
        for i in 0..3 {
            out[i] = m0 * self.t[i];
            for j in 0..3 {
                out[i] += self.lambda[(i, j)] * mv[j];
            }
        }
        let half = Complex64::new(0.5, 0.0);
        Matrix2::new(
            half * (m0 + out[2]),
            half * (out[0] - Complex64::i() * out[1]),
            half * (out[0] + Complex64::i() * out[1]),
            half * (m0 - out[2]),
        )
    }

    /// Recovers axial parameters when the map has the diagonal axial shape
    /// with `alpha, gamma` in `[0, 1]`.
    pub fn as_axial(&self) -> Option<AxialParams> {
        let l = &self.lambda;
        let diag_ok = l[(0, 1)] == 0.0
            && l[(0, 2)] == 0.0
            && l[(1, 0)] == 0.0
            && l[(1, 2)] == 0.0
            && l[(2, 0)] == 0.0
            && l[(2, 1)] == 0.0
            && l[(0, 0)] == l[(1, 1)];
        if !diag_ok || self.t[0] != 0.0 || self.t[1] != 0.0 {
            return None;
        }
        let beta = l[(0, 0)];
        let alpha = 0.5 * (1.0 + l[(2, 2)] + self.t[2]);
        let gamma = 0.5 * (1.0 + l[(2, 2)] - self.t[2]);
        if !(0.0..=1.0).contains(&alpha) || !(0.0..=1.0).contains(&gamma) || beta < 0.0 {
            return None;
        }
        Some(AxialParams { alpha, beta, gamma })
    }

    /// Choi matrix `sum_ij E_ij (x) Phi(E_ij)` of the map.
    pub fn choi(&self) -> Matrix4<Complex64> {
        let mut c = Matrix4::zeros();
        for i in 0..2 {
            for j in 0..2 {
                let mut e = Matrix2::zeros();
                e[(i, j)] = Complex64::new(1.0, 0.0);
                let out = self.apply_matrix(&e);
                for k in 0..2 {
                    for l in 0..2 {
                        c[(2 * i + k, 2 * j + l)] = out[(k, l)];
                    }
                }
            }
        }
        c
    }

    fn choi_is_psd(&self) -> bool {
        let c = self.choi();
        // The Choi matrix of a trace-preserving map is Hermitian.
        c.symmetric_eigenvalues().iter().all(|&e| e >= -TAU_PSD)
    }

    /// Positivity classification. Axial maps use the closed-form
    /// inequalities; general maps use the eigenvalue flow of the
    /// concurrence form.
    pub fn classify_positivity(&self) -> PositivityClass {
        if let Some(p) = self.as_axial() {
            return p.classify_positivity();
        }
        let flow = match concurrence::eigen_flow(self) {
            Ok(f) => f,
            Err(_) => return PositivityClass::NotPositive,
        };
        let w2 = flow[1];
        if w2 < -TAU_PSD {
            return PositivityClass::NotPositive;
        }
        let q = concurrence::q_matrix(self, w2);
        if q.symmetric_eigenvalues().iter().any(|&e| e < -TAU_PSD) {
            return PositivityClass::NotPositive;
        }
        if self.choi_is_psd() {
            PositivityClass::CompletelyPositive
        } else {
            PositivityClass::Positive
        }
    }
}

impl AxialParams {
    pub fn map(&self) -> QubitMap {
        QubitMap {
            lambda: Matrix3::from_diagonal(&Vector3::new(
                self.beta,
                self.beta,
                self.alpha + self.gamma - 1.0,
            )),
            t: Vector3::new(0.0, 0.0, self.alpha - self.gamma),
        }
    }

    /// Positivity boundary: largest admissible `beta^2`.
    pub fn beta_max_sq(&self) -> f64 {
        let (a, g) = (self.alpha, self.gamma);
        1.0 + 2.0 * a * g - a - g + 2.0 * (a * (1.0 - a) * g * (1.0 - g)).sqrt()
    }

    /// Roof bifurcation: `beta_c^2`, the same quadratic root with the
    /// opposite sign of the square root.
    pub fn beta_c_sq(&self) -> f64 {
        let (a, g) = (self.alpha, self.gamma);
        1.0 + 2.0 * a * g - a - g - 2.0 * (a * (1.0 - a) * g * (1.0 - g)).sqrt()
    }

    /// Critical parameter of the concurrence form, `max(beta^2, beta_c^2)`.
    pub fn critical_w(&self) -> f64 {
        (self.beta * self.beta).max(self.beta_c_sq())
    }

    pub fn classify_positivity(&self) -> PositivityClass {
        let (a, g) = (self.alpha, self.gamma);
        if !(0.0..=1.0).contains(&a) || !(0.0..=1.0).contains(&g) {
            return PositivityClass::NotPositive;
        }
        let b2 = self.beta * self.beta;
        if b2 > self.beta_max_sq() + TAU_PSD {
            PositivityClass::NotPositive
        } else if b2 <= a * g + TAU_PSD {
            PositivityClass::CompletelyPositive
        } else {
            PositivityClass::Positive
        }
    }
}

/// Self-describing channel specification, the on-disk format consumed by
/// the CLI.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ChannelSpec {
    General {
        lambda: [[f64; 3]; 3],
        t: [f64; 3],
    },
    Axial {
        alpha: f64,
        beta: f64,
        gamma: f64,
    },
    Named {
        name: NamedChannel,
        param: f64,
    },
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NamedChannel {
    Depolarizing,
    PhaseDamping,
    AmplitudeDamping,
}

impl ChannelSpec {
    pub fn to_map(&self) -> QubitMap {
        match self {
            ChannelSpec::General { lambda, t } => QubitMap {
                lambda: Matrix3::from_fn(|i, j| lambda[i][j]),
                t: Vector3::new(t[0], t[1], t[2]),
            },
            ChannelSpec::Axial { alpha, beta, gamma } => AxialParams {
                alpha: *alpha,
                beta: *beta,
                gamma: *gamma,
            }
            .map(),
            ChannelSpec::Named { name, param } => match name {
                NamedChannel::Depolarizing => QubitMap::depolarizing(*param),
                NamedChannel::PhaseDamping => QubitMap::phase_damping(*param),
                NamedChannel::AmplitudeDamping => QubitMap::amplitude_damping(*param),
            },
        }
    }

    pub fn parse(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}
