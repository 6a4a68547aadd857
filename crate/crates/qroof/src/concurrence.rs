//! The quadratic-form construction of the concurrence.
//!
//! For a stochastic map the form `q_w(x) = Phi(x).Phi(x) - w x.x` becomes
//! positive semidefinite and degenerate at a unique critical `w_0`, the
//! second largest real eigenvalue of `eta Q_0`. The concurrence is
//! `sqrt(q_{w_0})` and the kernel of `Q_{w_0}` determines the leaf geometry
//! of the optimal decompositions.

use nalgebra::{Matrix4, Vector3, Vector4};

use crate::bloch::{minkowski_dot, MinkowskiVector, State};
use crate::channel::{AxialParams, QubitMap, TAU_IMAG, TAU_PSD};

/// Eigenvalue-degeneracy threshold for the flow `w_1 >= ... >= w_4`.
pub const TAU_DEGEN: f64 = 1e-9;
/// Threshold on the time component of the (max-normalized) kernel vector
/// separating flat from apex foliations.
pub const TAU_FLAT_KERNEL: f64 = 1e-7;

#[derive(Debug, Clone, thiserror::Error)]
pub enum ConcurrenceError {
    /// `eta Q_0` has complex eigenvalues; the map cannot be positive.
    #[error("eta*Q0 has non-real eigenvalues (max imaginary part {max_imag})")]
    NonRealEigenvalues { max_imag: f64 },
    /// The critical form evaluated below `-tau_psd`; internal inconsistency.
    #[error("quadratic form evaluated to {value} below -tau_psd")]
    NegativeForm { value: f64 },
    /// `linear_concurrence_check` called away from the bifurcation.
    #[error("beta = {beta} is not at the bifurcation beta_c = {beta_c}")]
    NotAtBifurcation { beta: f64, beta_c: f64 },
}

fn eta() -> Matrix4<f64> {
    Matrix4::from_diagonal(&Vector4::new(1.0, -1.0, -1.0, -1.0))
}

/// The symmetric matrix of the form `q_w`:
/// `[[1-|t|^2-w, -t'Lambda], [-(t'Lambda)', w I - Lambda'Lambda]]`.
pub fn q_matrix(m: &QubitMap, w: f64) -> Matrix4<f64> {
    let tl = m.lambda.transpose() * m.t; // row vector t'Lambda as a column
    let ll = m.lambda.transpose() * m.lambda;
    let mut q = Matrix4::zeros();
    q[(0, 0)] = 1.0 - m.t.norm_squared() - w;
    for i in 0..3 {
        q[(0, i + 1)] = -tl[i];
        q[(i + 1, 0)] = -tl[i];
        for j in 0..3 {
            q[(i + 1, j + 1)] = -ll[(i, j)];
        }
        q[(i + 1, i + 1)] += w;
    }
    q
}

fn vec4(v: &MinkowskiVector) -> Vector4<f64> {
    Vector4::new(v.x0, v.x[0], v.x[1], v.x[2])
}

/// Evaluates `q_w(v) = v' Q_w v`.
pub fn q_value(m: &QubitMap, w: f64, v: &MinkowskiVector) -> f64 {
    let x = vec4(v);
    x.dot(&(q_matrix(m, w) * x))
}

/// The four real eigenvalues of `eta Q_0`, sorted descending.
pub fn eigen_flow(m: &QubitMap) -> Result<[f64; 4], ConcurrenceError> {
    let eig = (eta() * q_matrix(m, 0.0)).complex_eigenvalues();
    let scale = 1.0 + eig.iter().map(|c| c.re.abs()).fold(0.0, f64::max);
    let max_imag = eig.iter().map(|c| c.im.abs()).fold(0.0, f64::max);
    // A defective (double) real eigenvalue splits under roundoff into a
    // conjugate pair with imaginary part of order sqrt(machine epsilon),
    // well above TAU_IMAG; treat such pairs as real.
    let defect_margin = 1e-6 * scale;
    if max_imag > TAU_IMAG && max_imag > defect_margin {
        return Err(ConcurrenceError::NonRealEigenvalues { max_imag });
    }
    let mut w: Vec<f64> = eig.iter().map(|c| c.re).collect();
    w.sort_by(|a, b| b.partial_cmp(a).unwrap());
    Ok([w[0], w[1], w[2], w[3]])
}

/// The unique `w_0` making `Q_w` PSD and degenerate: the second largest
/// eigenvalue of `eta Q_0`.
pub fn critical_w(m: &QubitMap) -> Result<f64, ConcurrenceError> {
    Ok(eigen_flow(m)?[1])
}

/// Leaf geometry of the optimal decompositions.
#[derive(Debug, Clone, PartialEq)]
pub enum Foliation {
    /// Leaves are chords along `direction`; the roof is flat.
    Flat { direction: Vector3<f64> },
    /// Leaves are lines through `point` (normalized to `x0 = 1`), which
    /// lies on or outside the Bloch sphere.
    Apex { point: MinkowskiVector },
}

/// The concurrence form of a map: `Q_0`, the eigenvalue flow, the critical
/// `w_0 = w_2` and the kernel of `Q_{w_0}`.
#[derive(Debug, Clone)]
pub struct ConcurrenceForm {
    pub q0: Matrix4<f64>,
    pub w_flow: [f64; 4],
    pub w0: f64,
    q_critical: Matrix4<f64>,
    /// Kernel vector used for the foliation (smallest-eigenvalue
    /// eigenvector of `Q_{w_0}`, max component normalized to 1).
    pub kernel: MinkowskiVector,
    /// All eigenvectors of `Q_{w_0}` with near-zero eigenvalue.
    pub kernel_basis: Vec<MinkowskiVector>,
}

fn normalize_max(v: Vector4<f64>) -> MinkowskiVector {
    let mut max = v[0];
    for i in 1..4 {
        if v[i].abs() > max.abs() {
            max = v[i];
        }
    }
    let v = v / max;
    MinkowskiVector::new(v[0], v[1], v[2], v[3])
}

impl ConcurrenceForm {
    pub fn new(m: &QubitMap) -> Result<Self, ConcurrenceError> {
        let w_flow = eigen_flow(m)?;
        let w0 = w_flow[1];
        let q_critical = q_matrix(m, w0);
        let se = q_critical.symmetric_eigen();
        let mut order: Vec<usize> = (0..4).collect();
        order.sort_by(|&a, &b| {
            se.eigenvalues[a]
                .abs()
                .partial_cmp(&se.eigenvalues[b].abs())
                .unwrap()
        });
        let kernel_tol = 1e-8 * (1.0 + q_critical.norm());
        let mut kernel_basis: Vec<MinkowskiVector> = order
            .iter()
            .filter(|&&i| se.eigenvalues[i].abs() <= kernel_tol)
            .map(|&i| normalize_max(se.eigenvectors.column(i).into_owned()))
            .collect();
        if kernel_basis.is_empty() {
            kernel_basis.push(normalize_max(se.eigenvectors.column(order[0]).into_owned()));
        }
        Ok(Self {
            q0: q_matrix(m, 0.0),
            w_flow,
            w0,
            q_critical,
            kernel: kernel_basis[0],
            kernel_basis,
        })
    }

    /// The critical form value `q_{w_0}(v)`, clamped at zero when it dips
    /// below by at most `tau_psd`.
    pub fn value(&self, v: &MinkowskiVector) -> Result<f64, ConcurrenceError> {
        let x = vec4(v);
        let q = x.dot(&(self.q_critical * x));
        if q < -TAU_PSD * (1.0 + x.norm_squared()) {
            return Err(ConcurrenceError::NegativeForm { value: q });
        }
        Ok(q.max(0.0))
    }

    /// `C_Phi(v) = sqrt(q_{w_0}(v))`.
    pub fn concurrence(&self, s: &State) -> Result<f64, ConcurrenceError> {
        Ok(self.value(&s.vector())?.sqrt())
    }

    /// Flat/apex classification from the kernel.
    ///
    /// A kernel of dimension >= 2 always contains a vector with vanishing
    /// time component (any 2-dimensional subspace does), so degenerate
    /// kernels classify as flat; the chosen direction is exposed and the
    /// full basis remains available in `kernel_basis`.
    pub fn foliation(&self) -> Foliation {
        let spatial = |n: &MinkowskiVector| Foliation::Flat {
            direction: n.x.normalize(),
        };
        if self.kernel_basis.len() >= 2 {
            // Combine the first two basis vectors to kill the time component.
            let a = &self.kernel_basis[0];
            let b = &self.kernel_basis[1];
            if a.x0.abs() <= TAU_FLAT_KERNEL {
                return spatial(a);
            }
            if b.x0.abs() <= TAU_FLAT_KERNEL {
                return spatial(b);
            }
            let n = MinkowskiVector {
                x0: 0.0,
                x: b.x0 * a.x - a.x0 * b.x,
            };
            return spatial(&n);
        }
        let n = &self.kernel;
        if n.x0.abs() <= TAU_FLAT_KERNEL {
            spatial(n)
        } else {
            Foliation::Apex {
                point: n.scale(1.0 / n.x0),
            }
        }
    }
}

/// Convenience wrapper: concurrence of `s` under `m`.
pub fn concurrence(m: &QubitMap, s: &State) -> Result<f64, ConcurrenceError> {
    ConcurrenceForm::new(m)?.concurrence(s)
}

/// Pure-state concurrence `2 sqrt(det Phi(pi))`, the restriction of the
/// roof to the light cone (independent of `w`).
pub fn pure_concurrence(m: &QubitMap, direction: &Vector3<f64>) -> f64 {
    let out = m.apply(&MinkowskiVector { x0: 1.0, x: *direction });
    (minkowski_dot(&out, &out).max(0.0)).sqrt()
}

/// At the bifurcation `beta = beta_c` the concurrence is affine in `z`:
/// returns `(slope, intercept)` with
/// `slope = sqrt(a(1-a)) - sqrt(g(1-g))`, `intercept = sqrt(a(1-a)) + sqrt(g(1-g))`.
pub fn linear_concurrence_check(p: &AxialParams) -> Result<(f64, f64), ConcurrenceError> {
    let beta_c = p.beta_c_sq().max(0.0).sqrt();
    if (p.beta - beta_c).abs() > 1e-9 {
        return Err(ConcurrenceError::NotAtBifurcation {
            beta: p.beta,
            beta_c,
        });
    }
    let sa = (p.alpha * (1.0 - p.alpha)).sqrt();
    let sg = (p.gamma * (1.0 - p.gamma)).sqrt();
    Ok((sa - sg, sa + sg))
}
