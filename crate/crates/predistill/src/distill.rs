//! Distillation arithmetic for the five-qubit T-state code and the 15-to-1
//! H-state code: exact output-error curves, thresholds, level counting, and
//! the magic-axis dephasing map used to diagonalize faulty input states.
//!
//! Both codes are described by a closed-form map ε ↦ ε′ giving the output
//! error of one round in terms of the input error. Everything else —
//! thresholds (fixed points), per-level transition errors, required levels
//! for a target — is derived from that map.

use crate::mat2::{c64, Mat2, Unitary2};
use crate::solve::bisect;
use crate::{Error, Result};
use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;

/// Smallest positive fixed point of the 15-to-1 output-error curve,
/// computed once by bisection on `ε′(ε) − ε` over (0, 1/2) and frozen to
/// the double-precision value (the curve itself is exact, so the fixed
/// point is reproducible bit-for-bit; a regression test re-derives it).
pub const FIFTEEN_TO_ONE_THRESHOLD: f64 = 0.14148029265616724;

/// A distillation protocol with a closed-form error map.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DistillationCode {
    /// Five-qubit T-state code: one output state per five inputs,
    /// quadratic suppression, threshold ½(1 − √(3/7)).
    FiveQubitT,
    /// 15-to-1 H-state code: cubic suppression, threshold ≈ 0.1415.
    FifteenToOneH,
}

impl DistillationCode {
    /// Fixed point of the error map: inputs at or above it do not improve.
    pub fn threshold_error(self) -> f64 {
        match self {
            Self::FiveQubitT => 0.5 * (1.0 - libm::sqrt(3.0 / 7.0)),
            Self::FifteenToOneH => FIFTEEN_TO_ONE_THRESHOLD,
        }
    }

    /// Input states consumed per output state; `arity^levels` is the
    /// qubit cost per final logical magic state.
    pub fn arity(self) -> u32 {
        match self {
            Self::FiveQubitT => 5,
            Self::FifteenToOneH => 15,
        }
    }

    /// Largest admissible input error for the closed-form map.
    pub fn domain_max(self) -> f64 {
        match self {
            Self::FiveQubitT => 1.0,
            Self::FifteenToOneH => 0.5,
        }
    }

    /// One round of the code's error map.
    pub fn output_error(self, eps: f64) -> Result<f64> {
        match self {
            Self::FiveQubitT => five_qubit_output_error(eps),
            Self::FifteenToOneH => fifteen_to_one_output_error(eps),
        }
    }
}

fn check_eps(eps: f64, max: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&eps) || eps > max || !eps.is_finite() {
        return Err(Error::OutOfRange { name: "eps", value: eps });
    }
    Ok(())
}

/// Output error of one five-qubit T-code round:
///
/// ```text
/// ε′ = [ε⁵ + 5ε²(1−ε)³] / [ε⁵ + 5ε²(1−ε)³ + 5ε³(1−ε)² + (1−ε)⁵]
/// ```
///
/// Leading order 5ε²; fixed point at ½(1 − √(3/7)).
pub fn five_qubit_output_error(eps: f64) -> Result<f64> {
    check_eps(eps, 1.0)?;
    let q = 1.0 - eps;
    let num = libm::pow(eps, 5.0) + 5.0 * eps * eps * q * q * q;
    let den = num + 5.0 * eps * eps * eps * q * q + libm::pow(q, 5.0);
    Ok(num / den)
}

/// Success probability of one five-qubit round: the normalizing
/// denominator of [`five_qubit_output_error`] divided by 6. Equals 1/6 at
/// both ε = 0 and ε = 1.
pub fn five_qubit_success_prob(eps: f64) -> Result<f64> {
    check_eps(eps, 1.0)?;
    let q = 1.0 - eps;
    let den = libm::pow(eps, 5.0)
        + 5.0 * eps * eps * q * q * q
        + 5.0 * eps * eps * eps * q * q
        + libm::pow(q, 5.0);
    Ok(den / 6.0)
}

/// Output error of one 15-to-1 H-code round:
///
/// ```text
/// ε′ = [1 − 15(1−2ε)⁷ + 15(1−2ε)⁸ − (1−2ε)¹⁵] / [2(1 + 15(1−2ε)⁸)]
/// ```
///
/// valid for ε ∈ [0, 1/2] (beyond that the derivation regime is left and
/// an error is returned). Leading order 35ε³.
pub fn fifteen_to_one_output_error(eps: f64) -> Result<f64> {
    check_eps(eps, 0.5)?;
    let x = 1.0 - 2.0 * eps;
    let x7 = libm::pow(x, 7.0);
    let x8 = x7 * x;
    let x15 = x7 * x8;
    Ok((1.0 - 15.0 * x7 + 15.0 * x8 - x15) / (2.0 * (1.0 + 15.0 * x8)))
}

/// Level count of an [`IterationPlan`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Levels {
    Finite(u32),
    /// The input error is at or above the code threshold; no number of
    /// rounds reaches the target.
    Divergent,
}

impl Levels {
    pub fn finite(self) -> Option<u32> {
        match self {
            Self::Finite(n) => Some(n),
            Self::Divergent => None,
        }
    }
}

/// Outcome of [`iterations_to_threshold`]: how many rounds a given input
/// error needs to reach a target, the qubit cost, and the error trajectory
/// (input error followed by the error after each round).
#[derive(Debug, Clone, PartialEq)]
pub struct IterationPlan {
    pub input_error: f64,
    pub target_error: f64,
    pub levels: Levels,
    /// `arity^levels`; `None` when divergent.
    pub qubits_per_logical: Option<u128>,
    pub trajectory: Vec<f64>,
}

/// Smallest number of rounds n with `ε′ⁿ(eps) ≤ target`, or
/// [`Levels::Divergent`] when `eps` is at or above the code threshold.
pub fn iterations_to_threshold(
    eps: f64,
    target: f64,
    code: DistillationCode,
) -> Result<IterationPlan> {
    if !(target > 0.0 && target < 1.0) {
        return Err(Error::OutOfRange { name: "target", value: target });
    }
    check_eps(eps, code.domain_max())?;

    if eps > target && eps >= code.threshold_error() {
        return Ok(IterationPlan {
            input_error: eps,
            target_error: target,
            levels: Levels::Divergent,
            qubits_per_logical: None,
            trajectory: vec![eps],
        });
    }

    let mut trajectory = vec![eps];
    let mut e = eps;
    let mut n: u32 = 0;
    while e > target {
        e = code.output_error(e)?;
        trajectory.push(e);
        n += 1;
        debug_assert!(n < 10_000, "iteration count runaway below threshold");
    }
    let qubits = (code.arity() as u128).checked_pow(n);
    Ok(IterationPlan {
        input_error: eps,
        target_error: target,
        levels: Levels::Finite(n),
        qubits_per_logical: qubits,
        trajectory,
    })
}

/// Critical input errors `ε_{c_i}`, i = 1..count: the value at which the
/// required number of levels for `target` transitions from i−1 to i.
///
/// `ε_{c_1} = target` by definition; each further value is the preimage of
/// the previous one under the error map, found by bisection on
/// `[0, threshold]` (the map is monotone there, so each step is exact to
/// machine precision).
pub fn transition_thresholds(
    code: DistillationCode,
    target: f64,
    count: u32,
) -> Result<Vec<f64>> {
    if count < 1 {
        return Err(Error::OutOfRange { name: "count", value: count as f64 });
    }
    if !(target > 0.0 && target < code.threshold_error()) {
        return Err(Error::OutOfRange { name: "target", value: target });
    }
    let mut out = Vec::with_capacity(count as usize);
    let mut value = target;
    out.push(value);
    let hi = code.threshold_error();
    for _ in 1..count {
        let v = value;
        let mut f = |e: f64| code.output_error(e).unwrap_or(f64::NAN) - v;
        value = bisect(&mut f, 0.0, hi);
        out.push(value);
    }
    Ok(out)
}

/// The magic-axis twirl operator `T = e^{iπ/4}·S·H`, an order-3 Clifford
/// rotation whose eigenstates are the T-states. Explicitly
/// `e^{iπ/4}/√2 · [[1, 1], [i, −i]]`, and `T³` is a phase times identity.
pub fn twirl_operator() -> Unitary2 {
    let f = Complex64::cis(core::f64::consts::FRAC_PI_4) / libm::sqrt(2.0);
    Mat2::new(f, f, f * c64(0.0, 1.0), f * c64(0.0, -1.0))
}

fn density_defect(m: &Mat2) -> f64 {
    let herm = m.hermiticity_defect();
    let tr = (m.trace() - c64(1.0, 0.0)).norm();
    // Hermitian 2×2 eigenvalues: tr/2 ± √((tr/2)² − det).
    let half_tr = m.trace().re / 2.0;
    let disc = half_tr * half_tr - m.det().re;
    let lam_min = half_tr - libm::sqrt(disc.max(0.0));
    herm.max(tr).max(-lam_min)
}

/// Dephasing over the magic axis: `(η + TηT† + T†ηT)/3` with `T` the
/// [`twirl_operator`].
///
/// Kills coherences in the `{|T₀⟩, |T₁⟩}` basis while preserving the
/// populations, turning an arbitrarily faulty state into the diagonal form
/// the distillation error maps assume. The input must be a density matrix
/// (Hermitian, unit trace, PSD) within 10⁻¹⁰.
pub fn dephase(state: &Mat2) -> Result<Mat2> {
    if density_defect(state) > 1e-10 {
        return Err(Error::NotDensityMatrix);
    }
    let t = twirl_operator();
    let td = t.adjoint();
    let third = c64(1.0 / 3.0, 0.0);
    Ok((*state + t * *state * td + td * *state * t).scale(third))
}
