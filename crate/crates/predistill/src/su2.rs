//! Pulse unitaries, gate targets, and magic-state frames.
//!
//! The two synthesis targets are rotations that map the computational basis
//! onto a magic-state basis: the 𝒯 gate prepares T-states (eigenstates of
//! the order-3 Clifford axis), the ℋ gate prepares H-states. Both are
//! expressed through [`rotation`] with the crate-wide convention documented
//! there; the X-Z platform uses the same gate written in a rotated frame.

use crate::mat2::{c64, inner, ket_norm, Mat2, Unitary2};
use crate::{Error, Result};
use num_complex::Complex64;

/// Resonant pulse of area `theta` and phase `phi`:
///
/// ```text
/// [[ cos(θ/2),            −i e^{−iφ} sin(θ/2) ],
///  [ −i e^{iφ} sin(θ/2),   cos(θ/2)           ]]
/// ```
///
/// equal to `exp(−i θ/2 (cos φ · X + sin φ · Y))`.
pub fn rotation(theta: f64, phi: f64) -> Unitary2 {
    let c = c64(libm::cos(theta / 2.0), 0.0);
    let s = libm::sin(theta / 2.0);
    let e = Complex64::cis(phi);
    let mi = c64(0.0, -1.0);
    Mat2::new(c, mi * e.conj() * s, mi * e * s, c)
}

/// [`rotation`] with an additional static detuning phase `delta` on the
/// diagonal:
///
/// ```text
/// [[ e^{iδ} cos(θ/2),      −i e^{−iφ} sin(θ/2) ],
///  [ −i e^{iφ} sin(θ/2),    e^{−iδ} cos(θ/2)   ]]
/// ```
///
/// Equivalently `exp(iδZ/2) · rotation(θ, φ) · exp(iδZ/2)`.
pub fn rotation_with_detuning(theta: f64, delta: f64, phi: f64) -> Unitary2 {
    let c = libm::cos(theta / 2.0);
    let s = libm::sin(theta / 2.0);
    let e = Complex64::cis(phi);
    let d = Complex64::cis(delta);
    let mi = c64(0.0, -1.0);
    Mat2::new(d * c, mi * e.conj() * s, mi * e * s, d.conj() * c)
}

/// Ordered matrix product; the first slice element is the *leftmost* factor.
///
/// For a pulse train applied in time order, pass the factors so that the
/// last pulse applied comes first in the slice.
pub fn compose(factors: &[Mat2]) -> Result<Mat2> {
    let (first, rest) = factors.split_first().ok_or(Error::EmptyProduct)?;
    let mut acc = *first;
    for f in rest {
        acc = acc * *f;
    }
    Ok(acc)
}

/// Wrap an angle to the half-open interval `(−π, π]`.
pub fn wrap_angle(a: f64) -> f64 {
    let tau = 2.0 * core::f64::consts::PI;
    let mut r = a - tau * libm::floor(a / tau);
    if r > core::f64::consts::PI {
        r -= tau;
    }
    // `floor` can leave r == −π through cancellation; fold onto +π.
    if r <= -core::f64::consts::PI {
        r += tau;
    }
    r
}

/// Control plane a sequence is expressed in.
///
/// The distinction matters for the error model and the magic frame, not for
/// the algebra of a single rotation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Convention {
    /// Resonant pulses with programmable phase; errors scale pulse areas.
    Xy,
    /// X-drive/Z-detuning segments; errors add to the Z component.
    Xz,
}

/// `cos β` and `sin β` for the magic angle β defined by `cos 2β = 1/√3`.
pub(crate) fn beta_cos_sin() -> (f64, f64) {
    let s3 = libm::sqrt(3.0);
    (libm::sqrt((3.0 + s3) / 6.0), libm::sqrt((3.0 - s3) / 6.0))
}

/// A gate target: the rotation `rotation(θ*, φ*)` together with the control
/// plane it is meant for.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GateTarget {
    pub theta_star: f64,
    pub phi_star: f64,
    pub convention: Convention,
}

impl GateTarget {
    pub const fn new(theta_star: f64, phi_star: f64, convention: Convention) -> Self {
        Self { theta_star, phi_star, convention }
    }

    /// 𝒯 gate in the X-Y plane: `rotation(arccos(1/√3), 3π/4)`.
    pub fn t_xy() -> Self {
        Self::new(
            libm::acos(1.0 / libm::sqrt(3.0)),
            3.0 * core::f64::consts::FRAC_PI_4,
            Convention::Xy,
        )
    }

    /// ℋ gate in the X-Y plane: `rotation(π/4, π/2)`.
    pub fn h_xy() -> Self {
        Self::new(core::f64::consts::FRAC_PI_4, core::f64::consts::FRAC_PI_2, Convention::Xy)
    }

    /// 𝒯 gate in the X-Z frame: `rotation(arccos(1/√3), −3π/4)`, explicitly
    ///
    /// ```text
    /// [[ cos β,             e^{iπ/4} sin β ],
    ///  [ −e^{−iπ/4} sin β,  cos β          ]]
    /// ```
    pub fn t_xz() -> Self {
        Self::new(
            libm::acos(1.0 / libm::sqrt(3.0)),
            -3.0 * core::f64::consts::FRAC_PI_4,
            Convention::Xz,
        )
    }

    /// The target unitary itself.
    pub fn matrix(&self) -> Unitary2 {
        rotation(self.theta_star, self.phi_star)
    }

    /// Magic frame matching this target's convention.
    pub fn frame(&self) -> MagicFrame {
        match self.convention {
            Convention::Xy => MagicFrame::xy(),
            Convention::Xz => MagicFrame::xz(),
        }
    }
}

/// Orthonormal magic-state basis `{|T₀⟩, |T₁⟩}` for a control plane.
///
/// The preparation error of a gate `G` is the weight it leaves in `|T₁⟩`
/// when applied to `|0⟩`; see [`crate::metrics::t_magic_error`].
#[derive(Debug, Clone)]
pub struct MagicFrame {
    pub t0: [Complex64; 2],
    pub t1: [Complex64; 2],
    pub convention: Convention,
}

impl MagicFrame {
    /// X-Y frame:
    /// `|T₀⟩ = cos β|0⟩ + e^{iπ/4} sin β|1⟩`,
    /// `|T₁⟩ = sin β|0⟩ − e^{iπ/4} cos β|1⟩`.
    pub fn xy() -> Self {
        let (cb, sb) = beta_cos_sin();
        let e = Complex64::cis(core::f64::consts::FRAC_PI_4);
        Self {
            t0: [c64(cb, 0.0), e * sb],
            t1: [c64(sb, 0.0), -(e * cb)],
            convention: Convention::Xy,
        }
    }

    /// X-Z frame:
    /// `|T₀⟩ = cos β|0⟩ − e^{−iπ/4} sin β|1⟩`,
    /// `|T₁⟩ = e^{iπ/4} sin β|0⟩ + cos β|1⟩`.
    pub fn xz() -> Self {
        let (cb, sb) = beta_cos_sin();
        let e = Complex64::cis(core::f64::consts::FRAC_PI_4);
        Self {
            t0: [c64(cb, 0.0), -(e.conj() * sb)],
            t1: [e * sb, c64(cb, 0.0)],
            convention: Convention::Xz,
        }
    }

    /// Worst deviation from orthonormality:
    /// `max(|⟨T₀|T₀⟩ − 1|, |⟨T₁|T₁⟩ − 1|, |⟨T₀|T₁⟩|)`.
    pub fn orthonormality_defect(&self) -> f64 {
        let n0 = libm::fabs(ket_norm(self.t0) - 1.0);
        let n1 = libm::fabs(ket_norm(self.t1) - 1.0);
        let x = inner(self.t0, self.t1).norm();
        n0.max(n1).max(x)
    }
}
