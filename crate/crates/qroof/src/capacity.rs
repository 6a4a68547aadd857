//! Holevo quantity and one-shot (HSW) classical capacity.
//!
//! `chi*(rho) = S(Phi(rho)) - E_Phi(rho)`; the capacity is its maximum
//! over input states. Unital maps have the closed form
//! `chi = 1 - H((1+sqrt(w))/2, (1-sqrt(w))/2)` bits; axial maps are
//! maximized along the z-axis; general maps by multistart local search.

use nalgebra::Vector3;
use rayon::prelude::*;

use crate::bloch::{binary_entropy, State};
use crate::channel::{AxialParams, QubitMap};
use crate::concurrence;
use crate::entanglement::{
    axial_axis_entanglement, classify_phase, entanglement, EntanglementError, PhaseLabel,
};
use crate::roof::{nelder_mead, Budget};

/// One-shot capacity with its maximizer and an optional sampled curve.
#[derive(Debug, Clone)]
pub struct CapacityResult {
    /// Capacity in bits.
    pub chi: f64,
    pub argmax_state: State,
    /// `(parameter, chi)` samples when produced by a sweep.
    pub profile: Option<Vec<(f64, f64)>>,
}

/// One sample of a `beta` sweep at fixed `alpha, gamma`.
#[derive(Debug, Clone)]
pub struct SweepPoint {
    pub beta: f64,
    pub chi: f64,
    /// z-coordinate of the maximizing on-axis state.
    pub z_star: f64,
    pub phase: PhaseLabel,
}

fn output_entropy_bits(m: &QubitMap, s: &State) -> f64 {
    let out = m.apply(&s.vector());
    binary_entropy(0.5 * (1.0 - out.x.norm().min(1.0)), 2.0)
}

/// `chi*(s) = S(Phi(s)) - E_Phi(s)` in bits.
pub fn holevo_quantity(
    m: &QubitMap,
    s: &State,
    budget: &Budget,
) -> Result<f64, EntanglementError> {
    Ok(output_entropy_bits(m, s) - entanglement(m, s, budget, 2.0)?)
}

/// On-axis Holevo quantity of an axial map, using the symmetry-reduced
/// entanglement families.
fn axial_axis_holevo(p: &AxialParams, z: f64) -> f64 {
    let l3 = p.alpha + p.gamma - 1.0;
    let tz = p.alpha - p.gamma;
    let r = (l3 * z + tz).abs().min(1.0);
    binary_entropy(0.5 * (1.0 - r), 2.0) - axial_axis_entanglement(p, z, 2.0)
}

fn golden_max<F: Fn(f64) -> f64>(f: &F, mut lo: f64, mut hi: f64) -> (f64, f64) {
    let inv_phi = (5.0_f64.sqrt() - 1.0) / 2.0;
    let mut c = hi - inv_phi * (hi - lo);
    let mut d = lo + inv_phi * (hi - lo);
    let (mut fc, mut fd) = (f(c), f(d));
    while hi - lo > 1e-8 {
        if fc > fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - inv_phi * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + inv_phi * (hi - lo);
            fd = f(d);
        }
    }
    let x = 0.5 * (lo + hi);
    (x, f(x))
}

/// Capacity of a unital map: `1 - H((1+sqrt(w))/2, (1-sqrt(w))/2)` bits,
/// maximized at the center.
fn unital_capacity(m: &QubitMap) -> Result<CapacityResult, EntanglementError> {
    let w = concurrence::critical_w(m)?.clamp(0.0, 1.0);
    let r = w.sqrt();
    Ok(CapacityResult {
        chi: 1.0 - binary_entropy(0.5 * (1.0 - r), 2.0),
        argmax_state: State::center(),
        profile: None,
    })
}

fn axial_capacity(p: &AxialParams) -> (f64, f64) {
    // chi* is concave on the axis, so a coarse grid plus golden-section
    // around the best cell is enough; z = 0 and the endpoints are also
    // evaluated exactly so degenerate channels come out bit-exact.
    let f = |z: f64| axial_axis_holevo(p, z);
    let n = 40;
    let mut best = (0.0, f(0.0));
    for i in 0..=n {
        let z = -1.0 + 2.0 * i as f64 / n as f64;
        let v = f(z);
        if v > best.1 {
            best = (z, v);
        }
    }
    let span = 2.0 / n as f64;
    let (z, v) = golden_max(&f, (best.0 - span).max(-1.0), (best.0 + span).min(1.0));
    if v > best.1 {
        best = (z, v);
    }
    (best.0, best.1.max(0.0))
}

/// One-shot (HSW) classical capacity. Closed form for unital maps, a
/// golden-section maximization on the z-axis for axial maps, and a
/// multistart Nelder-Mead search over the Bloch ball otherwise.
pub fn hsw_capacity(m: &QubitMap, budget: &Budget) -> Result<CapacityResult, EntanglementError> {
    if m.t.norm() == 0.0 {
        return unital_capacity(m);
    }
    if let Some(p) = m.as_axial() {
        let (z, chi) = axial_capacity(&p);
        return Ok(CapacityResult {
            chi,
            argmax_state: State::new(Vector3::new(0.0, 0.0, z)).unwrap(),
            profile: None,
        });
    }
    general_capacity(m, budget)
}

fn general_capacity(m: &QubitMap, budget: &Budget) -> Result<CapacityResult, EntanglementError> {
    // Search with a lightweight entanglement budget, then rescore the best
    // point with the full one.
    let search = Budget {
        m3_seeds: budget.m3_seeds.min(400),
        m3_refine: budget.m3_refine.min(2),
        ..*budget
    };
    let objective = |x: &[f64]| {
        let v = Vector3::new(x[0], x[1], x[2]);
        let n = v.norm();
        if n > 1.0 {
            return n - 1.0; // penalty ramp outside the ball
        }
        let s = State::new(v).unwrap();
        match holevo_quantity(m, &s, &search) {
            Ok(chi) => -chi,
            Err(_) => f64::INFINITY,
        }
    };
    let mut starts: Vec<Vector3<f64>> = crate::sampling::fibonacci_sphere(32)
        .into_iter()
        .map(|d| 0.5 * d)
        .collect();
    starts.push(Vector3::zeros());
    let results: Vec<(f64, Vector3<f64>)> = starts
        .par_iter()
        .map(|s0| {
            let (x, v) = nelder_mead(&objective, &[s0[0], s0[1], s0[2]], 0.2, 60);
            (v, Vector3::new(x[0], x[1], x[2]))
        })
        .collect();
    let best = results
        .iter()
        .enumerate()
        .min_by(|(i, a), (j, b)| (a.0, *i).partial_cmp(&(b.0, *j)).unwrap())
        .map(|(_, r)| r)
        .unwrap();
    let mut v = best.1;
    if v.norm() > 1.0 {
        v /= v.norm();
    }
    let s = State::new(v).unwrap();
    Ok(CapacityResult {
        chi: holevo_quantity(m, &s, budget)?.max(0.0),
        argmax_state: s,
        profile: None,
    })
}

/// Capacity curve over a `beta` grid at fixed `alpha, gamma`, annotated
/// with phase labels. Grid points evaluate in parallel and assemble by
/// index.
pub fn capacity_sweep(
    alpha: f64,
    gamma: f64,
    betas: &[f64],
) -> Result<Vec<SweepPoint>, EntanglementError> {
    betas
        .par_iter()
        .map(|&beta| {
            let p = AxialParams { alpha, beta, gamma };
            let phase = classify_phase(&p)?;
            let (z_star, chi) = axial_capacity(&p);
            Ok(SweepPoint {
                beta,
                chi,
                z_star,
                phase,
            })
        })
        .collect()
}
