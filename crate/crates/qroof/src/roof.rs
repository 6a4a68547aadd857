//! Brute-force convex-roof minimizer.
//!
//! Searches pure-state decompositions of bounded length for the minimum of
//! the ensemble average of a pure-state functional `g`. Length-2 candidates
//! are chords of the Bloch sphere, length-3 candidates are triangles of
//! sphere points lying in a plane through the target state, length 4 is an
//! optional cross-check built from pairs of chords. The search is
//! deterministic for a given budget seed regardless of thread count: all
//! parallel reductions pick the minimum by (value, candidate index).

use nalgebra::Vector3;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bloch::{MinkowskiVector, PureState, State, TAU_PURE};
use crate::sampling::fibonacci_sphere;

/// Member values equal within this margin count as a flat decomposition.
pub const TAU_FLAT: f64 = 1e-5;

/// Search budget. The seed makes runs reproducible.
#[derive(Debug, Clone, Copy)]
pub struct Budget {
    pub seed: u64,
    /// Chord directions on the Fibonacci sphere for the length-2 scan.
    pub m2_grid: usize,
    /// Nelder-Mead iterations for local refinement.
    pub nm_iters: usize,
    /// Random triangle seeds for the length-3 scan.
    pub m3_seeds: usize,
    /// How many of the best triangle seeds get Nelder-Mead refinement.
    pub m3_refine: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Self {
            seed: 0x5EED,
            m2_grid: 2000,
            nm_iters: 200,
            m3_seeds: 10_000,
            m3_refine: 8,
        }
    }
}

impl Budget {
    /// A cheaper budget for inner loops (sweeps, large test batteries).
    pub fn light(seed: u64) -> Self {
        Self {
            seed,
            m2_grid: 400,
            nm_iters: 120,
            m3_seeds: 1500,
            m3_refine: 4,
        }
    }
}

#[derive(Debug, Clone, thiserror::Error)]
pub enum OracleError {
    #[error("a pure state has only the trivial decomposition")]
    PureInput,
}

/// A convex decomposition of a state into weighted pure states.
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub members: Vec<(f64, PureState)>,
}

impl Decomposition {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// The reconstructed Minkowski vector `sum w_j (1, n_j)`.
    pub fn state_vector(&self) -> MinkowskiVector {
        let mut v = MinkowskiVector::new(0.0, 0.0, 0.0, 0.0);
        for (w, p) in &self.members {
            v = v.add(&p.vector().scale(*w));
        }
        v
    }

    pub fn average<G: Fn(&Vector3<f64>) -> f64>(&self, g: &G) -> f64 {
        self.members
            .iter()
            .map(|(w, p)| w * g(&p.direction()))
            .sum()
    }

    /// All member `g`-values mutually equal within `tau`.
    pub fn is_flat<G: Fn(&Vector3<f64>) -> f64>(&self, g: &G, tau: f64) -> bool {
        let vals: Vec<f64> = self.members.iter().map(|(_, p)| g(&p.direction())).collect();
        let min = vals.iter().cloned().fold(f64::INFINITY, f64::min);
        let max = vals.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        max - min <= tau
    }
}

/// Best decomposition found and its ensemble average.
#[derive(Debug, Clone)]
pub struct RoofResult {
    pub value: f64,
    pub decomposition: Decomposition,
    pub flat: bool,
}

/// The chord through `s` along `direction` meets the sphere at two pure
/// states; the weights are the convex coordinates of `s` on the chord.
pub fn length2_family(s: &State, direction: &Vector3<f64>) -> Result<Decomposition, OracleError> {
    if s.is_pure() {
        return Err(OracleError::PureInput);
    }
    let u = direction.normalize();
    let x = s.bloch();
    let c = x.dot(&u);
    let disc = (c * c + 1.0 - x.norm_squared()).max(0.0).sqrt();
    let (t_plus, t_minus) = (-c + disc, -c - disc);
    let w_plus = -t_minus / (t_plus - t_minus);
    Ok(Decomposition {
        members: vec![
            (w_plus, PureState::new(x + t_plus * u)),
            (1.0 - w_plus, PureState::new(x + t_minus * u)),
        ],
    })
}

fn chord_value<G: Fn(&Vector3<f64>) -> f64 + Sync>(s: &State, u: &Vector3<f64>, g: &G) -> f64 {
    match length2_family(s, u) {
        Ok(d) => d.average(g),
        Err(_) => f64::INFINITY,
    }
}

fn spherical(theta: f64, phi: f64) -> Vector3<f64> {
    Vector3::new(
        theta.sin() * phi.cos(),
        theta.sin() * phi.sin(),
        theta.cos(),
    )
}

fn to_spherical(v: &Vector3<f64>) -> (f64, f64) {
    (v[2].clamp(-1.0, 1.0).acos(), v[1].atan2(v[0]))
}

/// Plain Nelder-Mead with fixed iteration count, for smooth low-d objectives.
pub(crate) fn nelder_mead<F: Fn(&[f64]) -> f64>(
    f: F,
    start: &[f64],
    step: f64,
    iters: usize,
) -> (Vec<f64>, f64) {
    let n = start.len();
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
    simplex.push((start.to_vec(), f(start)));
    for i in 0..n {
        let mut p = start.to_vec();
        p[i] += step;
        let fp = f(&p);
        simplex.push((p, fp));
    }
    for _ in 0..iters {
        simplex.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap());
        let worst = simplex[n].clone();
        let mut centroid = vec![0.0; n];
        for v in simplex.iter().take(n) {
            for i in 0..n {
                centroid[i] += v.0[i] / n as f64;
            }
        }
        let lerp = |a: f64| -> Vec<f64> {
            (0..n)
                .map(|i| centroid[i] + a * (centroid[i] - worst.0[i]))
                .collect()
        };
        let refl = lerp(1.0);
        let f_refl = f(&refl);
        if f_refl < simplex[0].1 {
            let exp = lerp(2.0);
            let f_exp = f(&exp);
            simplex[n] = if f_exp < f_refl { (exp, f_exp) } else { (refl, f_refl) };
        } else if f_refl < simplex[n - 1].1 {
            simplex[n] = (refl, f_refl);
        } else {
            let contr = lerp(-0.5);
            let f_contr = f(&contr);
            if f_contr < worst.1 {
                simplex[n] = (contr, f_contr);
            } else {
                let best = simplex[0].0.clone();
                for v in simplex.iter_mut().skip(1) {
                    for i in 0..n {
                        v.0[i] = 0.5 * (v.0[i] + best[i]);
                    }
                    v.1 = f(&v.0);
                }
            }
        }
    }
    simplex.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap());
    simplex[0].clone()
}

/// Deterministic parallel argmin over indexed candidates.
fn argmin_indexed<T: Sync, F: Fn(usize, &T) -> f64 + Sync>(
    items: &[T],
    f: F,
) -> Option<(usize, f64)> {
    items
        .par_iter()
        .enumerate()
        .map(|(i, t)| (i, f(i, t)))
        .filter(|(_, v)| v.is_finite())
        .reduce_with(|a, b| {
            if (b.1, b.0) < (a.1, a.0) {
                b
            } else {
                a
            }
        })
}

/// In-plane orthonormal basis perpendicular to `normal`.
fn plane_basis(normal: &Vector3<f64>) -> (Vector3<f64>, Vector3<f64>) {
    let pick = if normal[0].abs() < 0.9 {
        Vector3::x()
    } else {
        Vector3::y()
    };
    let e1 = (pick - pick.dot(normal) * normal).normalize();
    let e2 = normal.cross(&e1);
    (e1, e2)
}

/// A triangle of sphere points in the plane through `x` with the given
/// normal; returns `(value, decomposition)` if `x` lies in its convex hull.
fn eval_triangle<G: Fn(&Vector3<f64>) -> f64>(
    x: &Vector3<f64>,
    g: &G,
    params: &[f64; 5],
) -> Option<(f64, Decomposition)> {
    let normal = spherical(params[0], params[1]);
    let d = normal.dot(x);
    if d.abs() >= 1.0 - 1e-9 {
        return None;
    }
    let center = d * normal;
    let radius = (1.0 - d * d).sqrt();
    let (e1, e2) = plane_basis(&normal);
    let xi = x - center;
    let points: Vec<Vector3<f64>> = (0..3)
        .map(|k| {
            let psi = params[2 + k];
            center + radius * (psi.cos() * e1 + psi.sin() * e2)
        })
        .collect();
    // Barycentric weights from the 3x3 system (sum, e1-, e2-components).
    let m = nalgebra::Matrix3::new(
        1.0,
        1.0,
        1.0,
        (points[0] - center).dot(&e1),
        (points[1] - center).dot(&e1),
        (points[2] - center).dot(&e1),
        (points[0] - center).dot(&e2),
        (points[1] - center).dot(&e2),
        (points[2] - center).dot(&e2),
    );
    let rhs = Vector3::new(1.0, xi.dot(&e1), xi.dot(&e2));
    let w = m.lu().solve(&rhs)?;
    if w.iter().any(|&wi| wi < -1e-12) {
        return None;
    }
    let members: Vec<(f64, PureState)> = (0..3)
        .filter(|&k| w[k] > 1e-14)
        .map(|k| (w[k].max(0.0), PureState::new(points[k])))
        .collect();
    let decomp = Decomposition { members };
    let value = decomp.average(g);
    Some((value, decomp))
}

fn best_m2<G: Fn(&Vector3<f64>) -> f64 + Sync>(
    s: &State,
    g: &G,
    budget: &Budget,
) -> (f64, Decomposition) {
    let grid = fibonacci_sphere(budget.m2_grid);
    let (idx, _) = argmin_indexed(&grid, |_, u| chord_value(s, u, g)).expect("nonempty grid");
    let (theta, phi) = to_spherical(&grid[idx]);
    let (best, _) = nelder_mead(
        |p| chord_value(s, &spherical(p[0], p[1]), g),
        &[theta, phi],
        0.1,
        budget.nm_iters,
    );
    let u = spherical(best[0], best[1]);
    let d = length2_family(s, &u).expect("mixed state");
    let v = d.average(g);
    (v, d)
}

fn triangle_seeds<R: Rng>(
    rng: &mut R,
    x: &Vector3<f64>,
    m2_direction: Option<&Vector3<f64>>,
    count: usize,
) -> Vec<[f64; 5]> {
    let mut seeds = Vec::with_capacity(count);
    let tau = std::f64::consts::TAU;
    // Pole-pinned seeds: planes through x and a pole, one vertex at the
    // pole (length-3 cones have their apex at a pole).
    for pole in [Vector3::z(), -Vector3::z()] {
        let axis = pole - x;
        if axis.norm() > 1e-9 {
            let (b1, b2) = plane_basis(&axis.normalize());
            for _ in 0..count / 10 {
                let ang: f64 = rng.gen_range(0.0..tau);
                let normal = ang.cos() * b1 + ang.sin() * b2;
                let (nt, np) = to_spherical(&normal);
                let d = normal.dot(x);
                if d.abs() >= 1.0 - 1e-9 {
                    continue;
                }
                let center = d * normal;
                let (e1, e2) = plane_basis(&normal);
                let pv = pole - center;
                let psi_pole = pv.dot(&e2).atan2(pv.dot(&e1));
                seeds.push([
                    nt,
                    np,
                    psi_pole,
                    rng.gen_range(0.0..tau),
                    rng.gen_range(0.0..tau),
                ]);
            }
        }
    }
    // Seeds around the best chord: planes containing the chord direction.
    if let Some(u) = m2_direction {
        let (b1, b2) = plane_basis(&u.normalize());
        for _ in 0..count / 10 {
            let ang: f64 = rng.gen_range(0.0..tau);
            let normal = ang.cos() * b1 + ang.sin() * b2;
            let (nt, np) = to_spherical(&normal);
            seeds.push([
                nt,
                np,
                rng.gen_range(0.0..tau),
                rng.gen_range(0.0..tau),
                rng.gen_range(0.0..tau),
            ]);
        }
    }
    while seeds.len() < count {
        seeds.push([
            rng.gen_range(0.0..std::f64::consts::PI),
            rng.gen_range(0.0..tau),
            rng.gen_range(0.0..tau),
            rng.gen_range(0.0..tau),
            rng.gen_range(0.0..tau),
        ]);
    }
    seeds
}

fn best_m3<G: Fn(&Vector3<f64>) -> f64 + Sync>(
    s: &State,
    g: &G,
    budget: &Budget,
    m2_direction: Option<&Vector3<f64>>,
) -> Option<(f64, Decomposition)> {
    let x = s.bloch();
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed ^ 0x3333);
    let seeds = triangle_seeds(&mut rng, &x, m2_direction, budget.m3_seeds);
    let mut scored: Vec<(f64, usize)> = seeds
        .par_iter()
        .enumerate()
        .map(|(i, p)| {
            let v = eval_triangle(&x, g, p).map(|(v, _)| v).unwrap_or(f64::INFINITY);
            (v, i)
        })
        .collect();
    scored.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut best: Option<(f64, Decomposition)> = None;
    for &(v0, i) in scored.iter().take(budget.m3_refine) {
        if !v0.is_finite() {
            break;
        }
        let (p, _) = nelder_mead(
            |p| {
                let arr = [p[0], p[1], p[2], p[3], p[4]];
                eval_triangle(&x, g, &arr)
                    .map(|(v, _)| v)
                    .unwrap_or(f64::INFINITY)
            },
            &seeds[i],
            0.05,
            budget.nm_iters,
        );
        let arr = [p[0], p[1], p[2], p[3], p[4]];
        let cand = eval_triangle(&x, g, &arr).or_else(|| eval_triangle(&x, g, &seeds[i]));
        if let Some((v, d)) = cand {
            if best.as_ref().map_or(true, |(bv, _)| v < *bv) {
                best = Some((v, d));
            }
        }
    }
    best
}

fn best_m4<G: Fn(&Vector3<f64>) -> f64 + Sync>(
    s: &State,
    g: &G,
    budget: &Budget,
) -> Option<(f64, Decomposition)> {
    let x = s.bloch();
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed ^ 0x4444);
    let count = (budget.m3_seeds / 10).max(100);
    let mut candidates: Vec<[f64; 8]> = Vec::with_capacity(count);
    for _ in 0..count {
        candidates.push([
            rng.gen_range(0.0..std::f64::consts::PI),
            rng.gen_range(0.0..std::f64::consts::TAU),
            rng.gen_range(0.05..0.95),
            rng.gen_range(0.05..0.95),
            rng.gen_range(0.0..std::f64::consts::PI),
            rng.gen_range(0.0..std::f64::consts::TAU),
            rng.gen_range(0.0..std::f64::consts::PI),
            rng.gen_range(0.0..std::f64::consts::TAU),
        ]);
    }
    let eval = |p: &[f64; 8]| -> Option<(f64, Decomposition)> {
        // Split s along a chord into two interior points, then decompose
        // each by its own chord: a 4-member decomposition.
        let u = spherical(p[0], p[1]);
        let c = x.dot(&u);
        let disc = (c * c + 1.0 - x.norm_squared()).max(0.0).sqrt();
        let (t_plus, t_minus) = (-c + disc, -c - disc);
        let a = x + p[2] * t_minus * u;
        let b = x + p[3] * t_plus * u;
        let ta = p[2] * t_minus;
        let tb = p[3] * t_plus;
        if (tb - ta).abs() < 1e-12 {
            return None;
        }
        let mu = tb / (tb - ta); // weight on a
        let sa = State::new(a).ok()?;
        let sb = State::new(b).ok()?;
        let da = length2_family(&sa, &spherical(p[4], p[5])).ok()?;
        let db = length2_family(&sb, &spherical(p[6], p[7])).ok()?;
        let mut members = Vec::with_capacity(4);
        for (w, q) in &da.members {
            members.push((mu * w, *q));
        }
        for (w, q) in &db.members {
            members.push(((1.0 - mu) * w, *q));
        }
        let d = Decomposition { members };
        let v = d.average(g);
        Some((v, d))
    };
    let (idx, _) = argmin_indexed(&candidates, |_, p| {
        eval(p).map(|(v, _)| v).unwrap_or(f64::INFINITY)
    })?;
    eval(&candidates[idx])
}

/// Minimizes `sum w_j g(n_j)` over decompositions of `s` of length at most
/// `max_length` (2..=4). Deterministic for a fixed budget.
pub fn minimize_roof<G: Fn(&Vector3<f64>) -> f64 + Sync>(
    s: &State,
    g: &G,
    max_length: usize,
    budget: &Budget,
) -> RoofResult {
    assert!((2..=4).contains(&max_length), "max_length must be 2..=4");
    if s.radius() >= 1.0 - TAU_PURE {
        let p = PureState::new(s.bloch());
        let d = Decomposition {
            members: vec![(1.0, p)],
        };
        let value = d.average(g);
        return RoofResult {
            value,
            decomposition: d,
            flat: true,
        };
    }
    let (mut value, mut decomp) = best_m2(s, g, budget);
    if max_length >= 3 {
        let chord_dir = decomp.members[0].1.direction() - decomp.members[1].1.direction();
        if let Some((v3, d3)) = best_m3(s, g, budget, Some(&chord_dir)) {
            if v3 < value {
                value = v3;
                decomp = d3;
            }
        }
    }
    if max_length >= 4 {
        if let Some((v4, d4)) = best_m4(s, g, budget) {
            if v4 < value {
                value = v4;
                decomp = d4;
            }
        }
    }
    let flat = decomp.is_flat(g, TAU_FLAT);
    RoofResult {
        value,
        decomposition: decomp,
        flat,
    }
}

/// True iff the best concurrence decomposition found for `s` is flat.
pub fn leaf_scan(m: &crate::channel::QubitMap, s: &State, budget: &Budget) -> bool {
    let g = |n: &Vector3<f64>| crate::concurrence::pure_concurrence(m, n);
    minimize_roof(s, &g, 2, budget).flat
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bloch::von_neumann_entropy;
    use crate::channel::{AxialParams, QubitMap};
    use crate::concurrence::pure_concurrence;
    use approx::assert_abs_diff_eq;
    use rand::SeedableRng;

    #[test]
    fn length2_center_polar() {
        let d = length2_family(&State::center(), &Vector3::z()).unwrap();
        assert_abs_diff_eq!(d.members[0].0, 0.5, epsilon = 1e-14);
        assert_abs_diff_eq!(d.members[1].0, 0.5, epsilon = 1e-14);
        assert_abs_diff_eq!((d.members[0].1.direction() - Vector3::z()).norm(), 0.0, epsilon = 1e-14);
    }

    #[test]
    fn length2_off_center() {
        let s = State::new(Vector3::new(0.0, 0.0, 0.5)).unwrap();
        let d = length2_family(&s, &Vector3::z()).unwrap();
        // 0.75 north + 0.25 south.
        assert_abs_diff_eq!(d.members[0].0, 0.75, epsilon = 1e-14);
        let d = length2_family(&s, &Vector3::x()).unwrap();
        assert_abs_diff_eq!(d.members[0].0, 0.5, epsilon = 1e-14);
        assert_abs_diff_eq!(d.members[0].1.direction()[0], 0.75_f64.sqrt(), epsilon = 1e-12);
        assert_abs_diff_eq!(d.members[0].1.direction()[2], 0.5, epsilon = 1e-12);
    }

    #[test]
    fn length2_rejects_pure() {
        let s = State::new(Vector3::z()).unwrap();
        assert!(length2_family(&s, &Vector3::x()).is_err());
    }

    #[test]
    fn decomposition_reconstructs_state() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let budget = Budget::light(7);
        let g = |n: &Vector3<f64>| n[2] * n[2];
        for _ in 0..20 {
            let s = crate::sampling::random_state(&mut rng, 0.9);
            for len in 2..=4 {
                let r = minimize_roof(&s, &g, len, &budget);
                let v = r.decomposition.state_vector();
                assert_abs_diff_eq!(v.x0, 1.0, epsilon = 1e-10);
                assert!((v.x - s.bloch()).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn value_non_increasing_in_length() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let budget = Budget::light(9);
        let m = AxialParams { alpha: 0.8, beta: 0.22, gamma: 0.4 }.map();
        let g = |n: &Vector3<f64>| {
            let p = PureState::new(*n);
            von_neumann_entropy(&crate::bloch::State::new(m.apply(&p.vector()).x).unwrap(), 2.0)
        };
        for _ in 0..10 {
            let s = crate::sampling::random_state(&mut rng, 0.9);
            let v2 = minimize_roof(&s, &g, 2, &budget).value;
            let v3 = minimize_roof(&s, &g, 3, &budget).value;
            let v4 = minimize_roof(&s, &g, 4, &budget).value;
            assert!(v3 <= v2 + 1e-12);
            assert!(v4 <= v3 + 1e-12);
        }
    }

    #[test]
    fn depolarizing_concurrence_flat() {
        // For the depolarizing channel the concurrence is constant on the
        // ball, so every decomposition of the center is optimal with value
        // sqrt(1 - w) = sqrt(0.75).
        let m = QubitMap::depolarizing(0.5);
        let g = |n: &Vector3<f64>| pure_concurrence(&m, n);
        let r = minimize_roof(&State::center(), &g, 2, &Budget::default());
        assert_abs_diff_eq!(r.value, 0.75_f64.sqrt(), epsilon = 1e-6);
        assert!(r.flat);
    }

    #[test]
    fn identity_entropy_roof_is_zero() {
        let g = |n: &Vector3<f64>| {
            let p = PureState::new(*n);
            von_neumann_entropy(&p.into(), 2.0)
        };
        let r = minimize_roof(&State::center(), &g, 2, &Budget::light(1));
        assert_abs_diff_eq!(r.value, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn entropy_roof_between_sandwich_bounds() {
        let p = AxialParams { alpha: 0.8, beta: 0.5, gamma: 0.4 };
        let m = p.map();
        let g = |n: &Vector3<f64>| {
            let pure = PureState::new(*n);
            von_neumann_entropy(&crate::bloch::State::new(m.apply(&pure.vector()).x).unwrap(), 2.0)
        };
        let r = minimize_roof(&State::center(), &g, 3, &Budget::default());
        let c = crate::concurrence::concurrence(&m, &State::center()).unwrap();
        assert_abs_diff_eq!(c, 0.768115, epsilon = 1e-6);
        let lower = crate::entanglement::xi(c).unwrap();
        assert!(r.value >= lower - 1e-6, "oracle {} below xi(C) {}", r.value, lower);
        assert!(r.value <= c + 1e-6, "oracle {} above C {}", r.value, c);
    }

    #[test]
    fn oracle_at_least_analytic_concurrence() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let budget = Budget::light(3);
        for _ in 0..10 {
            let m = crate::sampling::random_positive_map(&mut rng);
            let s = crate::sampling::random_state(&mut rng, 0.9);
            let c = crate::concurrence::concurrence(&m, &s).unwrap();
            let g = |n: &Vector3<f64>| pure_concurrence(&m, n);
            let r = minimize_roof(&s, &g, 2, &budget);
            assert!(r.value >= c - 1e-9);
            assert!((r.value - c) / c.max(0.01) < 1e-3, "gap too large: {} vs {}", r.value, c);
        }
    }

    #[test]
    fn leaf_scan_examples() {
        let budget = Budget::light(5);
        // Unital channels: flat everywhere.
        let m = QubitMap::depolarizing(0.6);
        let s = State::new(Vector3::new(0.2, 0.1, -0.3)).unwrap();
        assert!(leaf_scan(&m, &s, &budget));
        // Apex regime, generic state: not flat.
        let m = AxialParams { alpha: 0.8, beta: 0.1, gamma: 0.4 }.map();
        let s = State::new(Vector3::new(0.3, 0.0, 0.2)).unwrap();
        assert!(!leaf_scan(&m, &s, &budget));
        // Axis states at beta > beta_c: flat (horizontal leaves).
        let m = AxialParams { alpha: 0.8, beta: 0.5, gamma: 0.4 }.map();
        let s = State::new(Vector3::new(0.0, 0.0, 0.3)).unwrap();
        assert!(leaf_scan(&m, &s, &budget));
    }

    #[test]
    fn deterministic_given_seed() {
        let m = AxialParams { alpha: 0.8, beta: 0.1, gamma: 0.4 }.map();
        let s = State::new(Vector3::new(0.1, 0.2, 0.3)).unwrap();
        let g = |n: &Vector3<f64>| pure_concurrence(&m, n);
        let budget = Budget::light(42);
        let a = minimize_roof(&s, &g, 3, &budget);
        let b = minimize_roof(&s, &g, 3, &budget);
        assert_eq!(a.value, b.value);
    }
}
