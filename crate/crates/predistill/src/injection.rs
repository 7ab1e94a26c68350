//! State-injection channel for converting coupler gate error into the
//! fidelity of the injected magic state.
//!
//! A dual-rail qubit prepared as `cos θ |0⟩ + e^{iφ} sin θ |1⟩` rides
//! through two lossy coupler stages with loss parameters `ε₁`, `ε₂`; the
//! surviving (post-selected) state differs from the ideal injection output
//! by a damped off-diagonal. The channel below is that post-selected map
//! on the input projector, and the module's fidelity helpers compare it
//! against the ideal output (the input rotated by the lossless stage pair,
//! a phase gate of angle −π/6 here).

use crate::error::{Error, Result};
use crate::mat2::{c64, ket_norm, outer, Mat2};
use num_complex::Complex64;

/// An injection input `cos θ |0⟩ + e^{iφ} sin θ |1⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InputState {
    pub theta: f64,
    pub phi: f64,
}

impl InputState {
    pub const fn new(theta: f64, phi: f64) -> Self {
        InputState { theta, phi }
    }

    pub fn ket(&self) -> [Complex64; 2] {
        let (c, s) = (libm::cos(self.theta), libm::sin(self.theta));
        [c64(c, 0.0), Complex64::from_polar(s, self.phi)]
    }
}

/// A 2×2 density matrix is just a [`Mat2`] with the usual constraints;
/// [`validate_density`] checks them.
pub type DensityMatrix2 = Mat2;

/// Check Hermiticity (defect ≤ 1e−12), unit trace (|Tr−1| ≤ 1e−12) and
/// positivity (eigenvalues ≥ −1e−10).
pub fn validate_density(rho: &DensityMatrix2) -> Result<()> {
    if rho.hermiticity_defect() > 1e-12 {
        return Err(Error::NotDensityMatrix);
    }
    let tr = rho.trace();
    if libm::fabs(tr.re - 1.0) > 1e-12 || libm::fabs(tr.im) > 1e-12 {
        return Err(Error::NotDensityMatrix);
    }
    // Hermitian 2×2 eigenvalues: Tr/2 ± sqrt((Tr/2)² − det).
    let half = tr.re / 2.0;
    let det = rho.det().re;
    let disc = half * half - det;
    let lambda_min = half - libm::sqrt(disc.max(0.0));
    if lambda_min < -1e-10 {
        return Err(Error::NotDensityMatrix);
    }
    Ok(())
}

fn check_loss(name: &'static str, eps: f64) -> Result<()> {
    if !(0.0..0.5).contains(&eps) || !eps.is_finite() {
        return Err(Error::OutOfRange { name, value: eps });
    }
    Ok(())
}

/// Post-selected output state of the two-stage injection circuit on the
/// input `(θ, φ)` with stage losses `ε₁`, `ε₂` (each in `[0, 1/2)`).
///
/// The diagonal populations survive unchanged; the coherence is multiplied
/// by a loss-dependent complex factor `a(ε₁, ε₂)` with `|a(0,0)| = 1`:
///
/// ```text
///         1 − i√3 + i(2i + √3) ε₂ + ε₁ (−2 + i√3 + 4 ε₂)
/// a   =   ------------------------------------------------
///                   −2 + ε₁ + ε₂ − 2 ε₁ ε₂
/// ```
pub fn injection_channel(input: &InputState, eps1: f64, eps2: f64) -> Result<DensityMatrix2> {
    check_loss("eps1", eps1)?;
    check_loss("eps2", eps2)?;
    let s3 = libm::sqrt(3.0);
    let num = c64(1.0, -s3)
        + c64(-2.0, s3) * c64(eps2, 0.0)
        + c64(eps1, 0.0) * (c64(-2.0, s3) + c64(4.0 * eps2, 0.0));
    let den = c64(-2.0 + eps1 + eps2 - 2.0 * eps1 * eps2, 0.0);
    if den.norm() < 1e-12 {
        return Err(Error::SingularDenominator);
    }
    let a = num / den;
    let (c, s) = (libm::cos(input.theta), libm::sin(input.theta));
    let cs = c * s;
    let phase = Complex64::from_polar(1.0, input.phi);
    Ok(Mat2::new(
        c64(c * c, 0.0),
        c64(0.0, -1.0) * a * phase.conj() * cs,
        c64(0.0, 1.0) * a.conj() * phase * cs,
        c64(s * s, 0.0),
    ))
}

/// Ideal (lossless) output: the input ket with its relative phase advanced
/// by −π/6, as a projector.
pub fn ideal_channel_state(input: &InputState) -> DensityMatrix2 {
    let (c, s) = (libm::cos(input.theta), libm::sin(input.theta));
    let v = [
        c64(c, 0.0),
        Complex64::from_polar(1.0, -core::f64::consts::FRAC_PI_6)
            * Complex64::from_polar(s, input.phi),
    ];
    debug_assert!(libm::fabs(ket_norm(v) - 1.0) < 1e-12);
    outer(v, v)
}

/// Fidelity of two qubit density matrices,
/// `F = Tr[ρσ] + 2 √(det ρ · det σ)` (the qubit closed form of the
/// Uhlmann fidelity). Tiny negative determinants from rounding are
/// clamped to zero.
pub fn jozsa_fidelity(rho: &DensityMatrix2, sigma: &DensityMatrix2) -> Result<f64> {
    validate_density(rho)?;
    validate_density(sigma)?;
    let tr_prod = (*rho * *sigma).trace().re;
    let clamp = |d: f64| if libm::fabs(d) < 1e-14 { 0.0 } else { d.max(0.0) };
    let (dr, ds) = (clamp(rho.det().re), clamp(sigma.det().re));
    Ok(tr_prod + 2.0 * libm::sqrt(dr * ds))
}

/// Fidelity between the lossy injection output and the ideal one, in the
/// closed form
///
/// ```text
/// F = 1 − (3/4) · (ε₁ + ε₂) / (2 − ε₁ − ε₂ + 2 ε₁ ε₂) · sin²(2θ)
/// ```
///
/// which [`jozsa_fidelity`] of [`injection_channel`] against
/// [`ideal_channel_state`] reproduces to rounding error.
pub fn channel_fidelity(input: &InputState, eps1: f64, eps2: f64) -> Result<f64> {
    check_loss("eps1", eps1)?;
    check_loss("eps2", eps2)?;
    let s2 = libm::sin(2.0 * input.theta);
    Ok(1.0 - 0.75 * (eps1 + eps2) / (2.0 - eps1 - eps2 + 2.0 * eps1 * eps2) * s2 * s2)
}
