//! Gate-quality measures.
//!
//! Two families of metrics coexist here. The matrix-norm family
//! ([`frobenius_fidelity`], [`trace_fidelity`],
//! [`phase_adjusted_frobenius_distance`]) compares a realized unitary
//! entrywise against its target. The task-oriented family
//! ([`t_magic_error`], [`magic_t_gate_fidelity`]) only asks how well the
//! gate prepares the magic state — the quantity that actually feeds the
//! distillation estimates — and is therefore insensitive to global phase
//! and to errors in the second column.

use crate::mat2::{inner, ket_norm, Mat2, Unitary2};
use crate::su2::MagicFrame;
use num_complex::Complex64;

/// Frobenius-distance fidelity `1 − ‖G − T‖_F / 2`.
///
/// Equals 1 iff `G = T` exactly; a global sign flip scores `1 − √2`. The
/// value is deliberately phase-*sensitive*: it certifies exact synthesis,
/// not equivalence up to phase (use
/// [`phase_adjusted_frobenius_distance`] for that).
pub fn frobenius_fidelity(g: &Unitary2, target: &Unitary2) -> f64 {
    1.0 - (*g - *target).frobenius_norm() / 2.0
}

/// Trace measure `1 − ½|Tr[G T†]|`.
///
/// The absolute value makes the result real and global-phase invariant;
/// note the orientation: 0 for a perfect gate, 1 for a trace-orthogonal
/// one, so this behaves as a distance despite the conventional name.
pub fn trace_fidelity(g: &Unitary2, target: &Unitary2) -> f64 {
    1.0 - 0.5 * (*g * target.adjoint()).trace().norm()
}

/// Frobenius distance minimized over a global phase:
/// `min_γ ‖G − e^{iγ}T‖_F / 2`, attained at `γ = arg Tr[G T†]`.
///
/// When the trace is numerically zero the minimizing phase is undefined
/// (any γ gives the same distance); γ = 0 is used.
pub fn phase_adjusted_frobenius_distance(g: &Unitary2, target: &Unitary2) -> f64 {
    let tr = (*g * target.adjoint()).trace();
    let phase = if tr.norm() < 1e-14 { Complex64::new(1.0, 0.0) } else { Complex64::cis(tr.arg()) };
    (*g - target.scale(phase)).frobenius_norm() / 2.0
}

/// `1 −` [`phase_adjusted_frobenius_distance`].
pub fn phase_adjusted_frobenius_fidelity(g: &Unitary2, target: &Unitary2) -> f64 {
    1.0 - phase_adjusted_frobenius_distance(g, target)
}

/// Magic-state preparation error of a gate: the population the realized
/// gate leaves in the wrong magic state,
///
/// ```text
/// ε = |⟨T₁| G |0⟩|²
/// ```
///
/// This is the input error rate seen by a distillation protocol fed with
/// `G|0⟩`, and is invariant under a global phase of `G`.
pub fn t_magic_error(g: &Unitary2, frame: &MagicFrame) -> f64 {
    let prepared = g.col(0);
    inner(frame.t1, prepared).norm_sqr()
}

/// Magic-state preparation fidelity `1 − √ε` with ε = [`t_magic_error`]:
/// the overlap `|⟨T₀|G|0⟩|` expressed through the error amplitude.
pub fn magic_t_gate_fidelity(g: &Unitary2, frame: &MagicFrame) -> f64 {
    1.0 - libm::sqrt(t_magic_error(g, frame))
}

/// Populations of a faulty T-state after dephasing in the magic basis.
///
/// For the state `rotation_with_detuning(θ, δ, φ)|0⟩` dephased over the
/// magic axis (see [`crate::distill::dephase`]), the diagonal populations
/// have the closed form
///
/// ```text
/// p₀ = [3 + √3 cos θ − √3 sin θ (cos(δ−φ) + sin(δ−φ))] / 6,   p₁ = 1 − p₀
/// ```
///
/// where the angles parameterize the preparation pulse: area `θ`, detuning
/// phase `δ`, drive phase `φ`.
pub fn dephased_populations(theta: f64, delta: f64, phi: f64) -> (f64, f64) {
    let s3 = libm::sqrt(3.0);
    let d = delta - phi;
    let p0 = (3.0 + s3 * libm::cos(theta) - s3 * libm::sin(theta) * (libm::cos(d) + libm::sin(d)))
        / 6.0;
    (p0, 1.0 - p0)
}

/// Minimum of the dephased error `p₁` over the preparation angle θ at the
/// optimal phase relation `δ = φ`, together with the minimizing θ.
///
/// At `δ = φ` the error `p₁(θ) = [3 − √3 cos θ + √3 sin θ]/6` is minimized
/// by `θ = −π/4`, giving `p₁ = (3 − √6)/6 ≈ 9.175×10⁻²` — the floor any
/// single imperfect pulse followed by dephasing can reach.
pub fn min_dephased_error() -> (f64, f64) {
    (-core::f64::consts::FRAC_PI_4, (3.0 - libm::sqrt(6.0)) / 6.0)
}

/// Diagonal of a Hermitian matrix in a magic frame: `(⟨T₀|ρ|T₀⟩, ⟨T₁|ρ|T₁⟩)`.
pub fn magic_basis_populations(rho: &Mat2, frame: &MagicFrame) -> (f64, f64) {
    let p0 = inner(frame.t0, rho.apply(frame.t0)).re;
    let p1 = inner(frame.t1, rho.apply(frame.t1)).re;
    (p0, p1)
}

/// Normalize a ket to unit Euclidean norm (no-op on the zero vector).
pub fn normalize(v: [Complex64; 2]) -> [Complex64; 2] {
    let n = ket_norm(v);
    if n == 0.0 {
        v
    } else {
        [v[0] / n, v[1] / n]
    }
}
