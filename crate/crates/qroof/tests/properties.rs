//! Randomized invariants of the public API.

use nalgebra::Vector3;
use proptest::prelude::*;

use qroof::bloch::{det4, MinkowskiVector, PureState, State};
use qroof::channel::{AxialParams, QubitMap};
use qroof::concurrence::{self, ConcurrenceForm};
use qroof::entanglement;

fn positive_axial() -> impl Strategy<Value = AxialParams> {
    (0.001..0.999f64, 0.001..0.999f64, 0.0..1.0f64).prop_map(|(alpha, gamma, frac)| {
        let base = AxialParams {
            alpha,
            beta: 0.0,
            gamma,
        };
        AxialParams {
            alpha,
            beta: frac * base.beta_max_sq().max(0.0).sqrt(),
            gamma,
        }
    })
}

fn bloch_vector(max: f64) -> impl Strategy<Value = Vector3<f64>> {
    (-1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64)
        .prop_map(move |(x, y, z)| {
            let v = Vector3::new(x, y, z);
            if v.norm() > max {
                v * (max / v.norm())
            } else {
                v
            }
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn matrix_roundtrip(x0 in -2.0..2.0f64, x in bloch_vector(1.0)) {
        let v = MinkowskiVector { x0, x };
        let back = MinkowskiVector::from_matrix(&v.to_matrix());
        prop_assert!((back.x0 - v.x0).abs() < 1e-13);
        prop_assert!((back.x - v.x).norm() < 1e-13);
    }

    #[test]
    fn apply_is_affine_on_states(p in positive_axial(), a in bloch_vector(1.0), b in bloch_vector(1.0), t in 0.0..1.0f64) {
        let m = p.map();
        let mix = MinkowskiVector { x0: 1.0, x: a * t + b * (1.0 - t) };
        let lhs = m.apply(&mix);
        let rhs = m
            .apply(&MinkowskiVector { x0: 1.0, x: a })
            .scale(t)
            .add(&m.apply(&MinkowskiVector { x0: 1.0, x: b }).scale(1.0 - t));
        prop_assert!((lhs.x - rhs.x).norm() < 1e-12);
    }

    #[test]
    fn positive_maps_preserve_the_ball(p in positive_axial(), n in bloch_vector(1.0)) {
        prop_assume!(n.norm() > 1e-3);
        let m = p.map();
        let out = m.apply(&PureState::new(n).vector());
        prop_assert!(det4(&out) >= -1e-9);
    }

    #[test]
    fn concurrence_zero_iff_pure_anchor(p in positive_axial(), n in bloch_vector(1.0)) {
        prop_assume!(n.norm() > 1e-3);
        let m = p.map();
        let pure = PureState::new(n);
        let c = concurrence::concurrence(&m, &State::from(pure)).unwrap();
        let direct = concurrence::pure_concurrence(&m, &pure.direction());
        prop_assert!((c - direct).abs() < 1e-9);
    }

    #[test]
    fn concurrence_between_zero_and_one(p in positive_axial(), x in bloch_vector(0.999)) {
        let c = concurrence::concurrence(&p.map(), &State::new(x).unwrap()).unwrap();
        prop_assert!((0.0..=1.0 + 1e-12).contains(&c));
    }

    #[test]
    fn critical_w_in_unit_interval(p in positive_axial()) {
        let w = concurrence::critical_w(&p.map()).unwrap();
        prop_assert!((-1e-12..=1.0 + 1e-12).contains(&w));
        // Closed form: w = max(beta^2, beta_c^2).
        prop_assert!((w - p.critical_w()).abs() < 1e-9);
    }

    #[test]
    fn q_critical_is_psd_on_the_sphere(p in positive_axial(), n in bloch_vector(1.0)) {
        prop_assume!(n.norm() > 1e-3);
        let m = p.map();
        let form = ConcurrenceForm::new(&m).unwrap();
        let v = PureState::new(n).vector();
        prop_assert!(concurrence::q_value(&m, form.w0, &v) >= -1e-9);
    }

    #[test]
    fn xi_bounds_hold(p in positive_axial(), x in bloch_vector(0.98)) {
        let m = p.map();
        let s = State::new(x).unwrap();
        let (lo, hi) = entanglement::entanglement_bounds(&m, &s, 2.0).unwrap();
        prop_assert!(lo <= hi + 1e-12);
        prop_assert!(lo >= -1e-12);
    }

    #[test]
    fn bifurcations_ordered(alpha in 0.02..0.98f64, gamma in 0.02..0.98f64) {
        prop_assume!((alpha - gamma).abs() > 1e-6);
        prop_assume!((alpha + gamma - 1.0).abs() > 1e-6);
        let b = entanglement::bifurcation_betas(alpha, gamma).unwrap();
        prop_assert!(b.beta2 <= b.beta1 + 1e-9);
        prop_assert!(b.beta1 <= b.beta_c + 1e-9);
        prop_assert!(b.beta2 >= -1e-12);
    }

    #[test]
    fn kraus2_matches_closed_form(u in -1.5..1.5f64, v in -1.5..1.5f64, z in -0.99..0.99f64) {
        // C^2 = y^2 (cos^2 u - cos^2 v) + (z cos u sin v - cos v sin u)^2
        // for pure states (0, y, z) with y^2 = 1 - z^2 and cos u >= cos v.
        let (m, _) = QubitMap::kraus2(u, v);
        let (cu, cv) = (m.lambda[(0, 0)], m.lambda[(1, 1)]);
        let sv = if cv.abs() < 1.0 { (1.0 - cv * cv).sqrt() * m.t[2].signum() } else { 0.0 };
        let su = if cu.abs() < 1.0 && sv != 0.0 { m.t[2] / sv } else { 0.0 };
        prop_assume!(sv.abs() > 1e-6);
        let y2 = 1.0 - z * z;
        let n = Vector3::new(0.0, y2.sqrt(), z);
        let c = concurrence::pure_concurrence(&m, &PureState::new(n).direction());
        let closed = (y2 * (cu * cu - cv * cv) + (z * cu * sv - cv * su).powi(2)).max(0.0).sqrt();
        prop_assert!((c - closed).abs() < 1e-8, "c={c} closed={closed}");
    }

    #[test]
    fn unital_capacity_closed_form(l1 in -0.99..0.99f64, l2 in -0.99..0.99f64, l3 in -0.99..0.99f64) {
        let m = QubitMap::unital(l1, l2, l3);
        prop_assume!(m.classify_positivity().is_positive());
        let chi = qroof::capacity::hsw_capacity(&m, &qroof::roof::Budget::light(1)).unwrap().chi;
        let w = l1.abs().max(l2.abs()).max(l3.abs());
        let closed = 1.0 - qroof::binary_entropy(0.5 * (1.0 - w), 2.0);
        prop_assert!((chi - closed).abs() < 1e-9);
    }
}
