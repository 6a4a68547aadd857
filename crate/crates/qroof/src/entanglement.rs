//! Entanglement entropy of stochastic 1-qubit maps.
//!
//! On flat roof points of the concurrence the entanglement entropy equals
//! `xi(C)`; elsewhere it is bounded by the sandwich
//! `xi(C) <= E <= log(2) C` and computed numerically. For axially
//! symmetric maps the phase structure of the optimal decompositions is
//! classified by the bifurcation values `beta_c`, `beta_1`, `beta_2`.

use nalgebra::Vector3;

use crate::bloch::{binary_entropy, State};
use crate::channel::{AxialParams, PositivityClass, QubitMap};
use crate::concurrence::{ConcurrenceError, ConcurrenceForm, Foliation};
use crate::roof::{leaf_scan, minimize_roof, Budget};

#[derive(Debug, Clone, thiserror::Error)]
pub enum EntanglementError {
    #[error("argument {value} outside the domain [-1, 1]")]
    DomainError { value: f64 },
    #[error("degenerate axial family (alpha = gamma or alpha + gamma = 1)")]
    DegenerateFamily,
    #[error("map is not positive")]
    NotPositive,
    #[error(transparent)]
    Concurrence(#[from] ConcurrenceError),
}

/// `xi(x) = H((1-y)/2, (1+y)/2)` with `y = sqrt(1 - x^2)`, in the given
/// log base. Converts concurrence to entropy on flat roof points.
pub fn xi_base(x: f64, base: f64) -> Result<f64, EntanglementError> {
    if x.abs() > 1.0 + 1e-12 {
        return Err(EntanglementError::DomainError { value: x });
    }
    let y = (1.0 - (x * x).min(1.0)).max(0.0).sqrt();
    Ok(binary_entropy(0.5 * (1.0 - y), base))
}

/// `xi` in bits.
pub fn xi(x: f64) -> Result<f64, EntanglementError> {
    xi_base(x, 2.0)
}

/// Closed-form second derivative of the natural-log `xi`:
/// `xi''(x) = ln((1+y)/(1-y)) / (2 y^3) - 1/y^2`.
pub fn xi_second_derivative(x: f64) -> f64 {
    let y = (1.0 - x * x).max(0.0).sqrt();
    ((1.0 + y) / (1.0 - y)).ln() / (2.0 * y * y * y) - 1.0 / (y * y)
}

/// Verifies the closed-form `xi''` against central finite differences on a
/// grid of `n` points over `[-0.99, 0.99]` excluding `|x| < 0.01`.
/// Returns `(max |fd - closed|, min closed form value)`.
pub fn xi_convexity_certificate(n: usize) -> (f64, f64) {
    assert!(n >= 3);
    let h = 1e-4;
    let xi_nat = |x: f64| xi_base(x, std::f64::consts::E).unwrap();
    let mut max_violation: f64 = 0.0;
    let mut min_closed = f64::INFINITY;
    for i in 0..n {
        let x = -0.99 + 1.98 * i as f64 / (n - 1) as f64;
        if x.abs() < 0.01 {
            continue;
        }
        let fd = (xi_nat(x + h) - 2.0 * xi_nat(x) + xi_nat(x - h)) / (h * h);
        let closed = xi_second_derivative(x);
        max_violation = max_violation.max((fd - closed).abs());
        min_closed = min_closed.min(closed);
    }
    (max_violation, min_closed)
}

/// Optimal-decomposition phases of axially symmetric maps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhaseLabel {
    /// Flat concurrence and entanglement roofs (`beta >= beta_c`).
    Ia,
    /// Flat entanglement, apex concurrence (`beta_1 <= beta < beta_c`).
    Ib,
    /// Length-3 optimal decompositions exist (`beta_2 < beta < beta_1`).
    II,
    /// Length-2 non-flat decompositions (`beta <= beta_2`).
    III,
    /// `alpha = gamma`: unital, flat roof.
    DegenerateUnital,
    /// `alpha + gamma = 1`: planar range, flat roof.
    DegeneratePlanar,
}

impl std::fmt::Display for PhaseLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            PhaseLabel::Ia => "Ia",
            PhaseLabel::Ib => "Ib",
            PhaseLabel::II => "II",
            PhaseLabel::III => "III",
            PhaseLabel::DegenerateUnital => "degenerate_unital",
            PhaseLabel::DegeneratePlanar => "degenerate_planar",
        };
        f.write_str(s)
    }
}

/// The bifurcation values separating the phases, for fixed `alpha, gamma`.
#[derive(Debug, Clone, Copy)]
pub struct BifurcationBetas {
    pub beta1: f64,
    pub beta2: f64,
    pub beta_c: f64,
    /// True when `(alpha-gamma)(alpha+gamma-1) < 0` and the formulas were
    /// evaluated with `alpha` and `gamma` exchanged (pictures upside down).
    pub orientation_flipped: bool,
}

fn beta1_sq(x: f64, y: f64) -> f64 {
    // Removable singularity at x = 0: series limit plus first correction.
    if x.abs() < 1e-4 {
        return 0.75 * (1.0 - (1.0 - 2.0 * y * y / 3.0).sqrt()) + 0.5 * x * y;
    }
    let x = x.clamp(-(1.0 - 1e-9), 1.0 - 1e-9);
    let a = x.atanh();
    let denom = 2.0 * (x + (x * x - 1.0) * a);
    let root = ((1.0 - x * x) * a * (x * x * x - x * y * y - (x * x - 1.0) * y * y * a))
        .max(0.0)
        .sqrt();
    x * (x * x + x * y + (x * x - 1.0) * y * a - root) / denom
}

fn beta2_sq(x: f64, y: f64) -> f64 {
    if y.abs() < 1e-9 {
        // Limit y -> 0 of the ratio.
        return ((1.0 + x) * (1.0 + x).ln() + (1.0 - x) * (1.0 - x).ln()) / 4.0;
    }
    let x = x.clamp(-(1.0 - 1e-12), 1.0 - 1e-12);
    let y = y.clamp(-(1.0 - 1e-12), 1.0 - 1e-12);
    let num = (1.0 + x) * (1.0 - y).ln() + (1.0 - x) * (1.0 + y).ln()
        - (1.0 + x) * (1.0 + x).ln()
        - (1.0 - x) * (1.0 - x).ln();
    y * num / (2.0 * ((1.0 - y).ln() - (1.0 + y).ln()))
}

/// Evaluates the analytic bifurcation values `beta_1`, `beta_2` (and
/// `beta_c`) for the axial family with the given `alpha, gamma`. Applies
/// the orientation swap `alpha <-> gamma` when
/// `(alpha-gamma)(alpha+gamma-1) < 0`.
pub fn bifurcation_betas(alpha: f64, gamma: f64) -> Result<BifurcationBetas, EntanglementError> {
    if (alpha - gamma).abs() < 1e-12 || (alpha + gamma - 1.0).abs() < 1e-12 {
        return Err(EntanglementError::DegenerateFamily);
    }
    let orientation_flipped = (alpha - gamma) * (alpha + gamma - 1.0) < 0.0;
    let (a, g) = if orientation_flipped {
        (gamma, alpha)
    } else {
        (alpha, gamma)
    };
    let x = 2.0 * a - 1.0;
    let y = 2.0 * g - 1.0;
    let beta_c = AxialParams {
        alpha: a,
        beta: 0.0,
        gamma: g,
    }
    .beta_c_sq()
    .max(0.0)
    .sqrt();
    Ok(BifurcationBetas {
        beta1: beta1_sq(x, y).max(0.0).sqrt(),
        beta2: beta2_sq(x, y).max(0.0).sqrt(),
        beta_c,
        orientation_flipped,
    })
}

/// Phase of an axial map per the `(beta_c, beta_1, beta_2)` thresholds.
pub fn classify_phase(p: &AxialParams) -> Result<PhaseLabel, EntanglementError> {
    if p.classify_positivity() == PositivityClass::NotPositive {
        return Err(EntanglementError::NotPositive);
    }
    if (p.alpha - p.gamma).abs() < 1e-12 {
        return Ok(PhaseLabel::DegenerateUnital);
    }
    if (p.alpha + p.gamma - 1.0).abs() < 1e-12 {
        return Ok(PhaseLabel::DegeneratePlanar);
    }
    let b = bifurcation_betas(p.alpha, p.gamma)?;
    Ok(if p.beta >= b.beta_c {
        PhaseLabel::Ia
    } else if p.beta >= b.beta1 {
        PhaseLabel::Ib
    } else if p.beta > b.beta2 {
        PhaseLabel::II
    } else {
        PhaseLabel::III
    })
}

/// Output entropy (natural or given base) of the axial image of a pure
/// state at polar cosine `ct`.
pub fn axial_pure_output_entropy(p: &AxialParams, ct: f64, base: f64) -> f64 {
    let l3 = p.alpha + p.gamma - 1.0;
    let tz = p.alpha - p.gamma;
    let st2 = (1.0 - ct * ct).max(0.0);
    let r = (p.beta * p.beta * st2 + (l3 * ct + tz).powi(2)).sqrt();
    binary_entropy(0.5 * (1.0 - r.min(1.0)), base)
}

fn golden_min<F: Fn(f64) -> f64>(f: &F, mut lo: f64, mut hi: f64, iters: usize) -> (f64, f64) {
    let inv_phi = (5.0_f64.sqrt() - 1.0) / 2.0;
    let mut c = hi - inv_phi * (hi - lo);
    let mut d = lo + inv_phi * (hi - lo);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..iters {
        if fc < fd {
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

fn grid_then_golden<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64, grid: usize) -> (f64, f64) {
    let mut best = (lo, f(lo));
    for i in 1..=grid {
        let x = lo + (hi - lo) * i as f64 / grid as f64;
        let v = f(x);
        if v < best.1 {
            best = (x, v);
        }
    }
    let span = (hi - lo) / grid as f64;
    let (x, v) = golden_min(f, (best.0 - span).max(lo), (best.0 + span).min(hi), 80);
    if v < best.1 {
        (x, v)
    } else {
        best
    }
}

/// Best average output entropy over chords through the on-axis state at
/// height `z`, parameterized by the chord's tilt against the z-axis.
fn axis_chord_min(p: &AxialParams, z: f64, base: f64) -> (f64, f64) {
    let f = |theta: f64| {
        let (st, ct) = theta.sin_cos();
        let c = z * ct;
        let disc = (c * c + 1.0 - z * z).max(0.0).sqrt();
        let (tp, tm) = (-c + disc, -c - disc);
        if (tp - tm).abs() < 1e-15 {
            return f64::INFINITY;
        }
        let wp = -tm / (tp - tm);
        let ct_p = z + tp * ct;
        let ct_m = z + tm * ct;
        // Endpoint polar cosines; the x-offsets t*sin(theta) only matter
        // through ct since the endpoints are on the sphere.
        let _ = st;
        wp * axial_pure_output_entropy(p, ct_p.clamp(-1.0, 1.0), base)
            + (1.0 - wp) * axial_pure_output_entropy(p, ct_m.clamp(-1.0, 1.0), base)
    };
    grid_then_golden(&f, 0.0, std::f64::consts::FRAC_PI_2, 180)
}

/// Best pole-pinned symmetric length-3 value: weight on the pole `q` plus
/// an equal pair at polar cosine `ct`.
fn axis_cone_min(p: &AxialParams, z: f64, base: f64, q: f64) -> f64 {
    let s_pole = axial_pure_output_entropy(p, q, base);
    let f = |ct: f64| {
        if (q - ct).abs() < 1e-12 {
            return f64::INFINITY;
        }
        let w0 = (z - ct) / (q - ct);
        if !(0.0..=1.0).contains(&w0) {
            return f64::INFINITY;
        }
        w0 * s_pole + (1.0 - w0) * axial_pure_output_entropy(p, ct, base)
    };
    let (lo, hi) = if q > 0.0 { (-1.0, z) } else { (z, 1.0) };
    if hi <= lo {
        return f64::INFINITY;
    }
    grid_then_golden(&f, lo, hi, 400).1
}

/// Entanglement entropy of an on-axis state of an axial map, from the
/// symmetry-reduced decomposition families (tilted chords and pole-pinned
/// cones). Exact in the flat phases, and the reference used by the
/// capacity maximization.
pub fn axial_axis_entanglement(p: &AxialParams, z: f64, base: f64) -> f64 {
    let chord = axis_chord_min(p, z, base).1;
    let cone_n = axis_cone_min(p, z, base, 1.0);
    let cone_s = axis_cone_min(p, z, base, -1.0);
    chord.min(cone_n).min(cone_s)
}

/// Length-2-only variant of [`axial_axis_entanglement`], used to witness
/// phase II where length-3 decompositions strictly win.
pub fn axial_axis_entanglement_len2(p: &AxialParams, z: f64, base: f64) -> f64 {
    axis_chord_min(p, z, base).1
}

/// Fuchs-van-de-Graaf style sandwich `(xi(C), log(2) C)` in the given base.
pub fn entanglement_bounds(
    m: &QubitMap,
    s: &State,
    base: f64,
) -> Result<(f64, f64), EntanglementError> {
    let c = crate::concurrence::concurrence(m, s)?;
    Ok((xi_base(c, base)?, c * 2.0_f64.ln() / base.ln()))
}

/// Entanglement entropy `E_Phi(s)`: `xi(C)` on flat roof points, the
/// symmetry-reduced families for on-axis axial states, and the brute-force
/// oracle otherwise.
pub fn entanglement(
    m: &QubitMap,
    s: &State,
    budget: &Budget,
    base: f64,
) -> Result<f64, EntanglementError> {
    let form = ConcurrenceForm::new(m)?;
    let c = form.concurrence(s)?;
    if matches!(form.foliation(), Foliation::Flat { .. }) {
        return xi_base(c, base);
    }
    if let Some(p) = m.as_axial() {
        let x = s.bloch();
        if x[0].abs() < 1e-12 && x[1].abs() < 1e-12 {
            return Ok(axial_axis_entanglement(&p, x[2], base));
        }
    }
    if leaf_scan(m, s, budget) {
        return xi_base(c, base);
    }
    let g = |n: &Vector3<f64>| {
        let out = m.apply(&crate::bloch::MinkowskiVector { x0: 1.0, x: *n });
        binary_entropy(0.5 * (1.0 - out.x.norm().min(1.0)), base)
    };
    Ok(minimize_roof(s, &g, 3, budget).value)
}

// ---------------------------------------------------------------------
// Numerical bifurcation detectors (competing-decomposition scans).
// ---------------------------------------------------------------------

/// Curvature coefficient of `E1 - E2` in `phi` at `phi -> 0` (beta_1 scan)
/// with Richardson refinement at base step 0.05.
fn beta1_curvature(p: &AxialParams) -> f64 {
    let s = |ct: f64| axial_pure_output_entropy(p, ct, std::f64::consts::E);
    let d = |h: f64| {
        let e1 = s(1.0) / 3.0 + 2.0 * s(h.cos()) / 3.0;
        let e2 = s(1.0 / 3.0 + 2.0 * h.cos() / 3.0);
        (e1 - e2) / (h * h)
    };
    let h = 0.05;
    (4.0 * d(h / 2.0) - d(h)) / 3.0
}

/// Curvature coefficient of `E1 - E2` around `phi = pi` (beta_2 scan).
fn beta2_curvature(p: &AxialParams) -> f64 {
    let s = |ct: f64| axial_pure_output_entropy(p, ct, std::f64::consts::E);
    let d = |h: f64| {
        let c = (std::f64::consts::PI - h).cos();
        let e1 = 0.5 * (1.0 + c) * s(1.0) + 0.5 * (1.0 - c) * s(-1.0);
        let e2 = s(c);
        (e1 - e2) / (h * h)
    };
    let h = 0.05;
    (4.0 * d(h / 2.0) - d(h)) / 3.0
}

fn bisect_root<F: Fn(f64) -> f64>(f: &F, mut lo: f64, mut hi: f64) -> Option<f64> {
    let (mut flo, fhi) = (f(lo), f(hi));
    if flo == 0.0 {
        return Some(lo);
    }
    if flo * fhi > 0.0 {
        return None;
    }
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if flo * fm <= 0.0 {
            hi = mid;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    Some(0.5 * (lo + hi))
}

fn detect_bifurcation(
    alpha: f64,
    gamma: f64,
    curvature: impl Fn(&AxialParams) -> f64,
) -> Option<f64> {
    // Apply the same orientation convention as the analytic formulas.
    let (a, g) = if (alpha - gamma) * (alpha + gamma - 1.0) < 0.0 {
        (gamma, alpha)
    } else {
        (alpha, gamma)
    };
    let base = AxialParams {
        alpha: a,
        beta: 0.0,
        gamma: g,
    };
    let beta_max = base.beta_max_sq().max(0.0).sqrt();
    let f = |beta: f64| {
        curvature(&AxialParams {
            alpha: a,
            beta,
            gamma: g,
        })
    };
    // Scan for a sign change, then bisect.
    let n = 200;
    let mut prev = (1e-4, f(1e-4));
    for i in 1..=n {
        let b = 1e-4 + (beta_max - 2e-4) * i as f64 / n as f64;
        let fb = f(b);
        if prev.1 * fb <= 0.0 {
            return bisect_root(&f, prev.0, b);
        }
        prev = (b, fb);
    }
    None
}

/// Numerically detected `beta_1` (cone-vs-horizontal scan at the pole).
pub fn detect_beta1(alpha: f64, gamma: f64) -> Option<f64> {
    detect_bifurcation(alpha, gamma, beta1_curvature)
}

/// Numerically detected `beta_2` (polar-vs-horizontal scan at the south pole).
pub fn detect_beta2(alpha: f64, gamma: f64) -> Option<f64> {
    detect_bifurcation(alpha, gamma, beta2_curvature)
}
