//! Rank-2 concurrence of 2 x n bipartite systems and second-symmetric-
//! function lower bounds for maps with higher output rank.
//!
//! A 2-dimensional subspace of a 2 x n space induces a 1-qubit map by
//! partial trace over the second factor; the subspace carries a unique
//! invariant `w` with `C(rho)^2 = 4 (det rho^A - w det rho)` on states
//! supported there.

use nalgebra::{DMatrix, DVector, Matrix2, Matrix3};
use num_complex::Complex64;

use crate::bloch::MinkowskiVector;
use crate::channel::{QubitMap, TAU_PSD};
use crate::concurrence::{critical_w, ConcurrenceError};

#[derive(Debug, Clone, thiserror::Error)]
pub enum BipartiteError {
    #[error("basis vectors are not orthonormal (deviation {deviation})")]
    NotOrthonormal { deviation: f64 },
    #[error("basis vector length {len} is not 2*n")]
    BadDimension { len: usize },
    #[error("parameter {value} outside the admissible domain")]
    DomainError { value: f64 },
    #[error("quadratic form is negative beyond tolerance: {value}")]
    NegativeForm { value: f64 },
    #[error(transparent)]
    Concurrence(#[from] ConcurrenceError),
}

/// Two orthonormal vectors spanning a subspace of `C^2 (x) C^n`.
/// Index convention: component `a*n + b` is `|a>_A (x) |b>_B`, A first.
#[derive(Debug, Clone)]
pub struct Subspace2 {
    n: usize,
    basis: [DVector<Complex64>; 2],
}

impl Subspace2 {
    pub fn new(b0: DVector<Complex64>, b1: DVector<Complex64>) -> Result<Self, BipartiteError> {
        if b0.len() != b1.len() || b0.len() % 2 != 0 || b0.is_empty() {
            return Err(BipartiteError::BadDimension { len: b0.len() });
        }
        let deviation = [
            (b0.dotc(&b0).re - 1.0).abs(),
            (b1.dotc(&b1).re - 1.0).abs(),
            b0.dotc(&b1).norm(),
        ]
        .into_iter()
        .fold(0.0_f64, f64::max);
        if deviation > 1e-12 {
            return Err(BipartiteError::NotOrthonormal { deviation });
        }
        Ok(Self {
            n: b0.len() / 2,
            basis: [b0, b1],
        })
    }

    /// Dimension of the B factor.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn basis(&self) -> &[DVector<Complex64>; 2] {
        &self.basis
    }

    /// `Tr_B |b_i><b_j|` as a 2x2 matrix on A.
    fn cross_marginal(&self, i: usize, j: usize) -> Matrix2<Complex64> {
        let (u, v) = (&self.basis[i], &self.basis[j]);
        Matrix2::from_fn(|a, a1| {
            (0..self.n)
                .map(|b| u[a * self.n + b] * v[a1 * self.n + b].conj())
                .sum()
        })
    }

    /// A-marginal of the operator with subspace coordinates `rho`.
    pub fn a_marginal(&self, rho: &Matrix2<Complex64>) -> Matrix2<Complex64> {
        let mut out = Matrix2::zeros();
        for i in 0..2 {
            for j in 0..2 {
                out += self.cross_marginal(i, j) * rho[(i, j)];
            }
        }
        out
    }

    /// The induced 1-qubit map: subspace coordinates in, A-marginal out,
    /// in affine `(Lambda, t)` form.
    pub fn induced_map(&self) -> QubitMap {
        let image = |v: MinkowskiVector| {
            MinkowskiVector::from_matrix(&self.a_marginal(&v.to_matrix()))
        };
        let t = image(MinkowskiVector::new(1.0, 0.0, 0.0, 0.0)).x;
        let cols: Vec<_> = (0..3)
            .map(|k| {
                let mut e = [0.0; 3];
                e[k] = 1.0;
                image(MinkowskiVector::new(0.0, e[0], e[1], e[2])).x
            })
            .collect();
        QubitMap {
            lambda: nalgebra::Matrix3::from_columns(&cols),
            t,
        }
    }
}

/// The subspace invariant `w`: the critical parameter of the induced map.
pub fn subspace_w(sub: &Subspace2) -> Result<f64, BipartiteError> {
    Ok(critical_w(&sub.induced_map())?)
}

/// `C(rho) = sqrt(4 (det rho^A - w det rho))` for a state with subspace
/// coordinates `rho` (PSD, unit trace), clamped at zero.
pub fn rank2_concurrence(sub: &Subspace2, rho: &Matrix2<Complex64>) -> Result<f64, BipartiteError> {
    let w = subspace_w(sub)?;
    let det_a = sub.a_marginal(rho).determinant().re;
    let det_r = rho.determinant().re;
    Ok((4.0 * (det_a - w * det_r)).max(0.0).sqrt())
}

/// Polarization of the concurrence form:
/// `q_w(r1, r2) = 2(1-w) Tr(r1) Tr(r2) + 2 [w Tr(r1 r2) - Tr(r1^A r2^A)]`
/// for Hermitian operators given in subspace coordinates.
pub fn bilinear_q(
    sub: &Subspace2,
    rho1: &Matrix2<Complex64>,
    rho2: &Matrix2<Complex64>,
    w: f64,
) -> f64 {
    let tr = |m: &Matrix2<Complex64>| m.trace().re;
    let tr_prod = |a: &Matrix2<Complex64>, b: &Matrix2<Complex64>| (a * b).trace().re;
    2.0 * (1.0 - w) * tr(rho1) * tr(rho2)
        + 2.0 * (w * tr_prod(rho1, rho2) - tr_prod(&sub.a_marginal(rho1), &sub.a_marginal(rho2)))
}

/// Second elementary symmetric polynomial of the eigenvalues, from traces:
/// `e2(m) = ((Tr m)^2 - Tr m^2) / 2`.
pub fn e2(m: &DMatrix<Complex64>) -> f64 {
    let tr = m.trace().re;
    let tr2 = (m * m).trace().re;
    0.5 * (tr * tr - tr2)
}

/// Lower bound `2 sqrt(e2(phi(rho)) - w e2(rho))` on the concurrence of a
/// higher-output-rank map; the caller picks `w` so the radicand stays
/// nonnegative on the domain of interest.
pub fn e2_lower_bound(
    phi: impl Fn(&DMatrix<Complex64>) -> DMatrix<Complex64>,
    rho: &DMatrix<Complex64>,
    w: f64,
) -> Result<f64, BipartiteError> {
    let value = e2(&phi(rho)) - w * e2(rho);
    if value < -TAU_PSD {
        return Err(BipartiteError::NegativeForm { value });
    }
    Ok(2.0 * value.max(0.0).sqrt())
}

/// The map cancelling all off-diagonal elements. Its implied `w` is 1.
pub fn diagonal_map(rho: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    DMatrix::from_fn(rho.nrows(), rho.ncols(), |i, j| {
        if i == j {
            rho[(i, j)]
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// Indecomposable positive 3x3 map family, trace-preserving for `mu >= 1`.
#[derive(Debug, Clone, Copy)]
pub struct ChoiMap {
    pub mu: f64,
}

impl ChoiMap {
    pub fn new(mu: f64) -> Result<Self, BipartiteError> {
        if mu < 1.0 {
            return Err(BipartiteError::DomainError { value: mu });
        }
        Ok(Self { mu })
    }

    pub fn apply(&self, rho: &Matrix3<Complex64>) -> Matrix3<Complex64> {
        let m = Complex64::new(self.mu, 0.0);
        let p = Complex64::new(1.0 / (1.0 + self.mu), 0.0);
        let x = |i: usize, j: usize| rho[(i, j)];
        Matrix3::new(
            x(0, 0) + m * x(2, 2),
            -x(0, 1),
            -x(0, 2),
            -x(1, 0),
            x(1, 1) + m * x(0, 0),
            -x(1, 2),
            -x(2, 0),
            -x(2, 1),
            x(2, 2) + m * x(1, 1),
        ) * p
    }

    /// The `w` under which the `e2` recipe yields a PSD quadratic form:
    /// `(mu^2 - mu + 1) / (1 + mu)^2`.
    pub fn implied_w(&self) -> f64 {
        (self.mu * self.mu - self.mu + 1.0) / (1.0 + self.mu).powi(2)
    }

    /// Closed-form value of the `e2` bound:
    /// `C^2 >= 4mu/(1+mu)^2 [ (Tr rho)^2 + (mu-1)(|x01|^2+|x02|^2+|x12|^2) ]`.
    pub fn concurrence_bound(&self, rho: &Matrix3<Complex64>) -> f64 {
        let tr = rho.trace().re;
        let off = rho[(0, 1)].norm_sqr() + rho[(0, 2)].norm_sqr() + rho[(1, 2)].norm_sqr();
        let sq = 4.0 * self.mu / (1.0 + self.mu).powi(2) * (tr * tr + (self.mu - 1.0) * off);
        sq.max(0.0).sqrt()
    }
}

/// Two orthonormal 3-qubit vectors (`n = 4`, qubit `a` is the A factor):
/// `b0 = (|001> + |010> + |100>)/sqrt(3)`, `b1 = (|000> + |111>)/sqrt(2)`.
/// This ordering makes the induced map axially symmetric with `w = 1/6`.
pub fn ghz_w_subspace() -> Subspace2 {
    let re = |v: f64| Complex64::new(v, 0.0);
    let mut w = DVector::from_element(8, re(0.0));
    let s3 = re(1.0 / 3.0_f64.sqrt());
    w[0b001] = s3;
    w[0b010] = s3;
    w[0b100] = s3;
    let mut ghz = DVector::from_element(8, re(0.0));
    let s2 = re(1.0 / 2.0_f64.sqrt());
    ghz[0b000] = s2;
    ghz[0b111] = s2;
    Subspace2::new(w, ghz).unwrap()
}
