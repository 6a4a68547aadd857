//! Deterministic grids and random fixtures on the Bloch ball.

use nalgebra::{Rotation3, Unit, Vector3};
use rand::Rng;

use crate::bloch::{PureState, State};
use crate::channel::{AxialParams, QubitMap};

/// Quasi-uniform set of `n` points on the unit sphere (Fibonacci lattice).
pub fn fibonacci_sphere(n: usize) -> Vec<Vector3<f64>> {
    let golden = (1.0 + 5.0_f64.sqrt()) / 2.0;
    (0..n)
        .map(|i| {
            let z = 1.0 - (2.0 * i as f64 + 1.0) / n as f64;
            let r = (1.0 - z * z).max(0.0).sqrt();
            let phi = 2.0 * std::f64::consts::PI * (i as f64 / golden).fract();
            Vector3::new(r * phi.cos(), r * phi.sin(), z)
        })
        .collect()
}

pub fn random_unit_vector<R: Rng>(rng: &mut R) -> Vector3<f64> {
    loop {
        let v = Vector3::new(
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        );
        let n = v.norm();
        if n > 1e-3 && n <= 1.0 {
            return v / n;
        }
    }
}

pub fn random_pure_state<R: Rng>(rng: &mut R) -> PureState {
    PureState::new(random_unit_vector(rng))
}

/// Uniform state in the ball, optionally capped away from the boundary.
pub fn random_state<R: Rng>(rng: &mut R, max_radius: f64) -> State {
    loop {
        let v = Vector3::new(
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        );
        if v.norm() <= max_radius {
            return State::new(v).unwrap();
        }
    }
}

pub fn random_rotation<R: Rng>(rng: &mut R) -> Rotation3<f64> {
    let axis = Unit::new_normalize(random_unit_vector(rng));
    let angle = rng.gen_range(0.0..std::f64::consts::TAU);
    Rotation3::from_axis_angle(&axis, angle)
}

/// Random positive axial map: `alpha, gamma` uniform in `[0,1]`, `beta`
/// uniform in `[0, beta_max]`.
pub fn random_positive_axial<R: Rng>(rng: &mut R) -> AxialParams {
    let alpha = rng.gen_range(0.0..1.0);
    let gamma = rng.gen_range(0.0..1.0);
    let p = AxialParams {
        alpha,
        beta: 0.0,
        gamma,
    };
    let beta_max = p.beta_max_sq().max(0.0).sqrt();
    AxialParams {
        alpha,
        beta: rng.gen_range(0.0..1.0) * beta_max,
        gamma,
    }
}

/// Random positive (generally non-axial) map: a positive axial map
/// conjugated by rotations on input and output, which preserves positivity.
pub fn random_positive_map<R: Rng>(rng: &mut R) -> QubitMap {
    let axial = random_positive_axial(rng).map();
    let r1 = random_rotation(rng);
    let r2 = random_rotation(rng);
    QubitMap {
        lambda: r1.matrix() * axial.lambda * r2.matrix(),
        t: r1.matrix() * axial.t,
    }
}
