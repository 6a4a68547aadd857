//! Hermitian 2x2 matrices as Minkowski 4-vectors and the Bloch ball.
//!
//! A Hermitian matrix `rho = (x0*I + x.sigma)/2` is identified with the
//! 4-vector `(x0, x)`. Under this identification `det rho` is a quarter of
//! the Minkowski square, positive matrices fill the forward light cone and
//! the Bloch ball is the slice `x0 = 1`.

use nalgebra::{Matrix2, Vector3};
use num_complex::Complex64;

/// Purity tolerance: `|x| = 1` within this margin counts as pure.
pub const TAU_PURE: f64 = 1e-9;

/// A Hermitian 2x2 matrix in 4-vector form `(x0, x1, x2, x3)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinkowskiVector {
    pub x0: f64,
    pub x: Vector3<f64>,
}

impl MinkowskiVector {
    pub fn new(x0: f64, x1: f64, x2: f64, x3: f64) -> Self {
        Self {
            x0,
            x: Vector3::new(x1, x2, x3),
        }
    }

    /// The Hermitian matrix `(x0*I + x.sigma)/2`.
    pub fn to_matrix(&self) -> Matrix2<Complex64> {
        let re = |v: f64| Complex64::new(v, 0.0);
        Matrix2::new(
            re(0.5 * (self.x0 + self.x[2])),
            Complex64::new(0.5 * self.x[0], -0.5 * self.x[1]),
            Complex64::new(0.5 * self.x[0], 0.5 * self.x[1]),
            re(0.5 * (self.x0 - self.x[2])),
        )
    }

    /// Inverse of [`to_matrix`](Self::to_matrix); takes the Hermitian part for granted.
    pub fn from_matrix(m: &Matrix2<Complex64>) -> Self {
        Self {
            x0: m[(0, 0)].re + m[(1, 1)].re,
            x: Vector3::new(
                m[(0, 1)].re + m[(1, 0)].re,
                m[(1, 0)].im - m[(0, 1)].im,
                m[(0, 0)].re - m[(1, 1)].re,
            ),
        }
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            x0: s * self.x0,
            x: s * self.x,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            x0: self.x0 + other.x0,
            x: self.x + other.x,
        }
    }
}

/// Minkowski inner product `a0*b0 - a.b` with signature (+,-,-,-).
pub fn minkowski_dot(a: &MinkowskiVector, b: &MinkowskiVector) -> f64 {
    a.x0 * b.x0 - a.x.dot(&b.x)
}

/// Determinant of the associated 2x2 matrix, `(x.x)/4`.
pub fn det4(v: &MinkowskiVector) -> f64 {
    0.25 * minkowski_dot(v, v)
}

/// A qubit state: a Minkowski vector with `x0 = 1` and `|x| <= 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct State {
    x: Vector3<f64>,
}

/// Error for Bloch vectors sticking out of the ball.
#[derive(Debug, Clone, thiserror::Error)]
#[error("Bloch vector has norm {norm} > 1")]
pub struct OutsideBall {
    pub norm: f64,
}

impl State {
    pub fn new(x: Vector3<f64>) -> Result<Self, OutsideBall> {
        let norm = x.norm();
        if norm > 1.0 + TAU_PURE {
            return Err(OutsideBall { norm });
        }
        Ok(Self { x })
    }

    /// The maximally mixed state `I/2`.
    pub fn center() -> Self {
        Self {
            x: Vector3::zeros(),
        }
    }

    pub fn bloch(&self) -> Vector3<f64> {
        self.x
    }

    pub fn radius(&self) -> f64 {
        self.x.norm()
    }

    pub fn is_pure(&self) -> bool {
        (self.radius() - 1.0).abs() <= TAU_PURE
    }

    pub fn vector(&self) -> MinkowskiVector {
        MinkowskiVector {
            x0: 1.0,
            x: self.x,
        }
    }
}

impl From<PureState> for State {
    fn from(p: PureState) -> Self {
        Self { x: p.direction() }
    }
}

/// A pure qubit state: a unit Bloch vector. Its 4-vector is light-like by
/// construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PureState {
    n: Vector3<f64>,
}

impl PureState {
    /// Normalizes `n`; `n` must be nonzero.
    pub fn new(n: Vector3<f64>) -> Self {
        Self { n: n.normalize() }
    }

    pub fn direction(&self) -> Vector3<f64> {
        self.n
    }

    pub fn vector(&self) -> MinkowskiVector {
        MinkowskiVector { x0: 1.0, x: self.n }
    }
}

/// Binary entropy `H(p, 1-p)` in the given log base, with `0 log 0 = 0`.
pub fn binary_entropy(p: f64, base: f64) -> f64 {
    let q = 1.0 - p;
    let term = |v: f64| if v > 0.0 { -v * v.ln() } else { 0.0 };
    (term(p) + term(q)) / base.ln()
}

/// Von Neumann entropy of a qubit state, `H((1-r)/2, (1+r)/2)` with `r = |x|`.
pub fn von_neumann_entropy(s: &State, base: f64) -> f64 {
    let r = s.radius().min(1.0);
    binary_entropy(0.5 * (1.0 - r), base)
}
