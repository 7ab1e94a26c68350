//! Composite 𝒯-gate construction for X-Z platforms: segments generated by
//! an X drive tilted by a Z component, with a fully correlated additive
//! detuning error ε on every segment's Z coefficient.
//!
//! A segment is `exp[i θ(cos φ·X + sin φ·Z) + i ε·Z]`; sequences multiply
//! leftmost-first (the first list element is the k = 1 factor). Targets in
//! this plane are matched up to global phase — the two-segment relations
//! only fix 𝒯 up to a phase, so all comparisons use the phase-adjusted
//! Frobenius distance.

use crate::mat2::{Mat2, Unitary2};
use crate::metrics::phase_adjusted_frobenius_distance;
use crate::solve::{dexp_i_pauli, exp_i_pauli, golden_min, levenberg_marquardt, uniform, LmOptions};
use crate::su2::{GateTarget, MagicFrame};
use crate::{Error, Result};
use alloc::vec::Vec;
use core::f64::consts::PI;
use rand_core::SeedableRng;

/// One X-Z control segment: signed area `theta`, axis angle `phi` in the
/// X-Z plane (φ = 0 is pure X, φ = π/2 pure Z).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XZSegment {
    pub theta: f64,
    pub phi: f64,
}

/// An ordered train of X-Z segments realizing `target` at ε = 0.
#[derive(Debug, Clone, PartialEq)]
pub struct XZSequence {
    pub segments: Vec<XZSegment>,
    pub target: GateTarget,
}

impl XZSequence {
    pub fn new(segments: Vec<XZSegment>, target: GateTarget) -> Self {
        Self { segments, target }
    }
}

/// Segment unitary `exp[i θ(cos φ·X + sin φ·Z) + i ε·Z]`, via the
/// closed-form SU(2) exponential. Unitary for every real ε.
pub fn xz_segment_unitary(seg: &XZSegment, eps: f64) -> Unitary2 {
    exp_i_pauli(seg.theta * libm::cos(seg.phi), 0.0, seg.theta * libm::sin(seg.phi) + eps)
}

/// `d/dε` of [`xz_segment_unitary`] at the given ε (the error enters only
/// the Z coefficient, so the direction is the constant [0, 0, 1]).
pub fn xz_segment_derivative(seg: &XZSegment, eps: f64) -> Mat2 {
    dexp_i_pauli(
        [seg.theta * libm::cos(seg.phi), 0.0, seg.theta * libm::sin(seg.phi) + eps],
        [0.0, 0.0, 1.0],
    )
}

/// Product of all segment unitaries, leftmost = first list element.
pub fn sequence_unitary(seq: &XZSequence, eps: f64) -> Unitary2 {
    let mut u = Mat2::IDENTITY;
    for seg in &seq.segments {
        u = u * xz_segment_unitary(seg, eps);
    }
    u
}

/// `d/dε` of the composed sequence (product rule over the segments).
pub fn sequence_derivative(seq: &XZSequence, eps: f64) -> Mat2 {
    let n = seq.segments.len();
    let mut total = Mat2::ZERO;
    for k in 0..n {
        let mut term = Mat2::IDENTITY;
        for (j, seg) in seq.segments.iter().enumerate() {
            let f = if j == k {
                xz_segment_derivative(seg, eps)
            } else {
                xz_segment_unitary(seg, eps)
            };
            term = term * f;
        }
        total = total + term;
    }
    total
}

/// The XZ-convention magic frame (see [`MagicFrame::xz`]); the defining
/// property `𝒯(XZ)|0⟩ = |T₀⟩` is covered by the test suite.
pub fn xz_magic_frame() -> MagicFrame {
    MagicFrame::xz()
}

/// Principal arccot with range (0, π).
fn acot(c: f64) -> f64 {
    libm::atan2(1.0, c)
}

/// Exact two-segment synthesis of 𝒯(XZ) with φ₁ as the free parameter.
///
/// The remaining angles follow from the closed relations
///
/// ```text
/// cot θ₁ = −sin φ₁,    cot θ₂ = sin φ₂,
/// cot φ₂ = [(1+√3)·cot φ₁ ± 2] / [(1+√3) ∓ cot φ₁]
/// ```
///
/// Both signs of the φ₂ relation are scanned, and within each the arccot
/// ambiguities (each angle modulo π) are resolved by keeping a combination
/// only if its product actually reproduces 𝒯(XZ) within 10⁻¹⁰
/// phase-adjusted Frobenius distance. Under this product convention the −
/// sign never survives that check (it lands a fixed distance ≈ 0.65 away),
/// so the result generically holds exactly one sequence, from the + sign.
///
/// Fails with [`Error::BranchSingularity`] when sin φ₁ = 0 (cot φ₁ blows
/// up), when the φ₂ denominator vanishes, or when no combination verifies.
pub fn two_segment_synthesis(phi1: f64) -> Result<Vec<XZSequence>> {
    let s1 = libm::sin(phi1);
    if libm::fabs(s1) < 1e-12 {
        return Err(Error::BranchSingularity);
    }
    let target = GateTarget::t_xz();
    let tmat = target.matrix();
    let sqrt3p1 = 1.0 + libm::sqrt(3.0);
    let cot_phi1 = libm::cos(phi1) / s1;
    let t1a = acot(-s1);

    let mut out = Vec::new();
    for sign in [1.0, -1.0] {
        let den = sqrt3p1 - sign * cot_phi1;
        if libm::fabs(den) < 1e-12 {
            continue;
        }
        let cot_phi2 = (sqrt3p1 * cot_phi1 + sign * 2.0) / den;
        let p2a = acot(cot_phi2);
        'branch: for phi2 in [p2a, p2a - PI] {
            let t2a = acot(libm::sin(phi2));
            for theta2 in [t2a, t2a - PI] {
                for theta1 in [t1a, t1a - PI] {
                    let seq = XZSequence::new(
                        alloc::vec![
                            XZSegment { theta: theta1, phi: phi1 },
                            XZSegment { theta: theta2, phi: phi2 },
                        ],
                        target,
                    );
                    let d = phase_adjusted_frobenius_distance(&sequence_unitary(&seq, 0.0), &tmat);
                    if d < 1e-11 {
                        out.push(seq);
                        break 'branch;
                    }
                }
            }
        }
    }
    if out.is_empty() {
        return Err(Error::BranchSingularity);
    }
    Ok(out)
}

/// Gate-matching residuals up to global phase: with `M = G·T†`, a perfect
/// phase-equivalent gate makes M a multiple of the identity, so the
/// residuals are the off-diagonal entries and the diagonal difference.
pub(crate) fn phase_free_gate_residuals(g: &Mat2, tmat: &Mat2) -> [f64; 6] {
    let m = *g * tmat.adjoint();
    let dd = m.m00 - m.m11;
    [m.m10.re, m.m10.im, m.m01.re, m.m01.im, dd.re, dd.im]
}

/// Robustness residuals: with `D = (dG/dε)·G†` (anti-Hermitian), the three
/// components of its traceless part must vanish for first-order error
/// cancellation; the trace part is an unobservable global-phase drift.
pub(crate) fn robustness_residuals(dg: &Mat2, g: &Mat2) -> [f64; 3] {
    let d = *dg * g.adjoint();
    [
        (d.m01 + d.m10).im / 2.0,
        (d.m01 - d.m10).re / 2.0,
        (d.m00 - d.m11).im / 2.0,
    ]
}

/// First-order-robust three-segment synthesis by damped least squares.
///
/// The 6 unknowns {θ_k, φ_k} are solved against 9 residuals: 6 from
/// phase-free gate matching and 3 from the traceless part of
/// `(dU/dε)U†|₀`. The solution family is continuous (the Jacobian is
/// rank-deficient along it), so the returned point depends on the seed —
/// seeding with a tabulated row reproduces that row up to its printed
/// precision. Up to 50 deterministic perturbed restarts are tried before
/// giving up with the best residual.
pub fn three_segment_robust_solve(seed: &XZSequence) -> Result<XZSequence> {
    if seed.segments.len() != 3 {
        return Err(Error::SegmentCount { expected: 3, got: seed.segments.len() });
    }
    let target = seed.target;
    let tmat = target.matrix();
    let mut residuals = |x: &[f64]| {
        let seq = sequence_from_flat(x, target);
        let g = sequence_unitary(&seq, 0.0);
        let dg = sequence_derivative(&seq, 0.0);
        let gate = phase_free_gate_residuals(&g, &tmat);
        let rob = robustness_residuals(&dg, &g);
        let mut r = Vec::with_capacity(9);
        r.extend_from_slice(&gate);
        r.extend_from_slice(&rob);
        r
    };

    let x0: Vec<f64> = seed
        .segments
        .iter()
        .map(|s| s.theta)
        .chain(seed.segments.iter().map(|s| s.phi))
        .collect();
    let tau = 2.0 * PI;
    let lo = [-tau; 6];
    let hi = [tau; 6];
    let opts = LmOptions { max_iter: 200, tol: 1e-10, inner_retries: 40 };

    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
    let mut best = f64::INFINITY;
    for restart in 0..50 {
        let mut x = x0.clone();
        if restart > 0 {
            for xi in x.iter_mut() {
                *xi += uniform(&mut rng, -0.05, 0.05);
            }
        }
        let outcome = levenberg_marquardt(&mut residuals, &x, &lo, &hi, &opts);
        best = best.min(outcome.residual_norm);
        if outcome.residual_norm <= 1e-9 {
            return Ok(sequence_from_flat(&outcome.x, target));
        }
    }
    Err(Error::Stagnation { residual: best })
}

fn sequence_from_flat(x: &[f64], target: GateTarget) -> XZSequence {
    let n = x.len() / 2;
    let segments = (0..n)
        .map(|k| XZSegment { theta: x[k], phi: x[n + k] })
        .collect();
    XZSequence::new(segments, target)
}

/// The three tabulated first-order-robust sequences (rows a, b, c), as
/// published to five decimals. Feed them to
/// [`three_segment_robust_solve`] to re-polish to full precision.
pub fn published_robust_sequences() -> Vec<XZSequence> {
    let target = GateTarget::t_xz();
    crate::reference::XZ_ROBUST_SEQUENCES
        .iter()
        .map(|(thetas, phis)| {
            let segments = (0..3)
                .map(|k| XZSegment { theta: thetas[k], phi: phis[k] })
                .collect();
            XZSequence::new(segments, target)
        })
        .collect()
}

/// Smallest phase-adjusted Frobenius distance any *single* segment can
/// reach to 𝒯(XZ), by grid search over (θ, φ) with golden-section
/// coordinate refinement. The gap stays well above 10⁻², which is why a
/// sequence is needed at all.
pub fn single_segment_gap(samples: usize) -> f64 {
    let tmat = GateTarget::t_xz().matrix();
    let dist = |theta: f64, phi: f64| {
        phase_adjusted_frobenius_distance(
            &xz_segment_unitary(&XZSegment { theta, phi }, 0.0),
            &tmat,
        )
    };
    let n = samples.max(8);
    let mut best = (f64::INFINITY, 0.0, 0.0);
    for i in 0..n {
        let theta = -2.0 * PI + 4.0 * PI * i as f64 / (n - 1) as f64;
        for j in 0..n {
            let phi = -PI + 2.0 * PI * j as f64 / (n - 1) as f64;
            let d = dist(theta, phi);
            if d < best.0 {
                best = (d, theta, phi);
            }
        }
    }
    // A few rounds of coordinate-wise golden refinement around the grid
    // minimum; the objective is smooth so this converges quickly.
    let span_t = 8.0 * PI / (n - 1) as f64;
    let span_p = 4.0 * PI / (n - 1) as f64;
    let (_, mut theta, mut phi) = best;
    for _ in 0..4 {
        theta = golden_min(&mut |t| dist(t, phi), theta - span_t, theta + span_t, 1e-10);
        phi = golden_min(&mut |p| dist(theta, p), phi - span_p, phi + span_p, 1e-10);
    }
    dist(theta, phi).min(best.0)
}
