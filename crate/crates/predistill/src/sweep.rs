//! Tabulated error sweeps: one row per error value, carrying the standard
//! metric set plus the distillation-level count that error implies.
//!
//! The CSV/JSON emitters in the companion CLI crate serialize these
//! structures verbatim, so the column meanings are fixed here.

use crate::distill::{iterations_to_threshold, DistillationCode, Levels};
use crate::mat2::Unitary2;
use crate::metrics::{
    frobenius_fidelity, magic_t_gate_fidelity, phase_adjusted_frobenius_fidelity, t_magic_error,
    trace_fidelity,
};
use crate::su2::MagicFrame;
use alloc::string::String;
use alloc::vec::Vec;

/// One sweep row at a single value of the platform's error parameter
/// (the Rabi/detuning ε, or δw in nm for couplers).
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub error_param: f64,
    /// Frobenius fidelity vs the target. Phase-sensitive for XY/XZ pulse
    /// platforms; phase-adjusted for photonic designs (where the global
    /// phase is unobservable).
    pub frobenius: f64,
    pub trace_fid: f64,
    pub t_magic_error: f64,
    pub magic_fidelity: f64,
    /// Five-qubit distillation levels needed to push `t_magic_error`
    /// below the sweep's target error.
    pub levels: Levels,
}

/// A full sweep with its identifying metadata. Timestamps and tool
/// versions are attached by the CLI layer, not here, so the row data stays
/// bit-deterministic.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub platform: String,
    pub design_id: String,
    /// Distillation target error used for the levels column.
    pub target_error: f64,
    /// Rows sorted by `error_param` ascending.
    pub rows: Vec<SweepRow>,
}

/// Evaluate the metric set over a list of error values for a gate family
/// `gate_at(ε)`. Rows come out sorted by ε ascending regardless of input
/// order; the levels column uses the five-qubit T code against
/// `target_error` (magic-error sweeps are a T-state story; H-state sweeps
/// are not defined by the error model here).
pub fn sweep_gates(
    errors: &[f64],
    mut gate_at: impl FnMut(f64) -> Unitary2,
    target: &Unitary2,
    frame: &MagicFrame,
    target_error: f64,
    phase_adjusted: bool,
) -> Vec<SweepRow> {
    let mut sorted: Vec<f64> = errors.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("finite error values"));
    sorted
        .into_iter()
        .map(|e| {
            let g = gate_at(e);
            let tmag = t_magic_error(&g, frame);
            let levels = match iterations_to_threshold(
                tmag.min(1.0),
                target_error,
                DistillationCode::FiveQubitT,
            ) {
                Ok(plan) => plan.levels,
                Err(_) => Levels::Divergent,
            };
            SweepRow {
                error_param: e,
                frobenius: if phase_adjusted {
                    phase_adjusted_frobenius_fidelity(&g, target)
                } else {
                    frobenius_fidelity(&g, target)
                },
                trace_fid: trace_fidelity(&g, target),
                t_magic_error: tmag,
                magic_fidelity: magic_t_gate_fidelity(&g, frame),
                levels,
            }
        })
        .collect()
}

/// Inclusive range `[min, max]` in steps of `step`, with the endpoint
/// included when it lands within half a step (guards accumulated float
/// drift in long sweeps).
pub fn error_range(min: f64, max: f64, step: f64) -> Vec<f64> {
    let mut out = Vec::new();
    if step <= 0.0 || max < min {
        return out;
    }
    let n = libm::floor((max - min) / step + 0.5) as usize;
    for i in 0..=n {
        let v = min + step * i as f64;
        if v <= max + step * 0.5 {
            out.push(v);
        }
    }
    out
}
