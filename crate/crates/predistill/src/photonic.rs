//! Directional-coupler gate synthesis for dual-rail photonic qubits.
//!
//! A coupler segment is two parallel waveguides of widths `w1`, `w2`
//! (nanometres) running together for a length `z` (micrometres). Over that
//! length the optical mode pair evolves under
//!
//! ```text
//! U(w1, w2, z) = exp[-i z (Ω X - Δ Z)]
//! ```
//!
//! where the coupling rate `Ω` and the propagation-constant mismatch `Δ`
//! (both in rad/µm) come from quartic polynomial fits to waveguide
//! simulations, valid for widths in the 350-450 nm window. A fabrication
//! bias shifts *both* widths of *every* segment by a common `δw`
//! (nanometres), which is the error parameter all robustness statements
//! refer to.
//!
//! Because the generator only ever contains X and Z, coupler circuits are
//! a subset of the X-Z rotation sequences in [`crate::xz`], and the magic
//! frame for T-state metrics is the X-Z one.

use crate::error::{Error, Result};
use crate::mat2::{Mat2, Unitary2};
use crate::metrics::phase_adjusted_frobenius_distance;
use crate::solve::{dexp_i_pauli, exp_i_pauli, golden_min, levenberg_marquardt, norm2, uniform, LmOptions};
use crate::su2::GateTarget;
use crate::sweep::{sweep_gates, SweepResult, SweepRow};
use crate::xz::{phase_free_gate_residuals, robustness_residuals};
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;

/// Fitted coefficients for the mismatch Δ: contribution of the second
/// waveguide's width (µm), powers 1..4, plus the antisymmetric partner
/// `DELTA_W1` for the first. Δ(w, w) vanishes to float precision.
const DELTA_W2: [f64; 4] = [3.94502808, -18.0203544, 27.94843595, -15.42295066];
const DELTA_W1: [f64; 4] = [-3.94502818, 18.02035521, -27.94843797, 15.42295233];

/// Fitted coefficients for the coupling Ω as a polynomial in the width sum
/// `s = w1 + w2` (µm), powers 0..4.
const OMEGA_SUM: [f64; 5] = [0.38044405, -1.48138422, 2.51783632, -1.9993113, 0.60771393];

/// Width window (nm) the polynomial fits were made over.
pub const FIT_RANGE_NM: (f64, f64) = (350.0, 450.0);

/// One coupler segment: waveguide widths in nanometres, length in
/// micrometres.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplerSegment {
    pub w1_nm: f64,
    pub w2_nm: f64,
    pub z_um: f64,
}

/// A coupler circuit: the first entry is the leftmost factor of the
/// composed unitary, matching the crate-wide [`crate::su2::compose`]
/// convention.
#[derive(Debug, Clone, PartialEq)]
pub struct CouplerDesign {
    pub segments: Vec<CouplerSegment>,
}

impl CouplerDesign {
    pub fn new(segments: Vec<CouplerSegment>) -> Self {
        assert!(!segments.is_empty(), "coupler design needs at least one segment");
        CouplerDesign { segments }
    }

    /// Total propagation length in µm.
    pub fn total_length_um(&self) -> f64 {
        self.segments.iter().map(|s| s.z_um).sum()
    }
}

fn horner(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

/// Σ kᵢ x^(i+1) for coefficient arrays indexed by power-minus-one.
fn horner_shifted(coeffs: &[f64; 4], x: f64) -> f64 {
    x * horner(coeffs, x)
}

/// d/dx Σ kᵢ x^(i+1) = Σ (i+1) kᵢ xⁱ.
fn dhorner_shifted(coeffs: &[f64; 4], x: f64) -> f64 {
    let scaled = [coeffs[0], 2.0 * coeffs[1], 3.0 * coeffs[2], 4.0 * coeffs[3]];
    horner(&scaled, x)
}

/// Propagation-constant mismatch Δ (rad/µm) for widths in µm.
pub fn delta_of_widths(w1_um: f64, w2_um: f64) -> f64 {
    horner_shifted(&DELTA_W1, w1_um) + horner_shifted(&DELTA_W2, w2_um)
}

/// Coupling rate Ω (rad/µm) for widths in µm.
pub fn omega_of_widths(w1_um: f64, w2_um: f64) -> f64 {
    horner(&OMEGA_SUM, w1_um + w2_um)
}

/// Whether a width (nm) sits inside the window the Δ/Ω fits cover.
pub fn width_in_fit_range(w_nm: f64) -> bool {
    w_nm >= FIT_RANGE_NM.0 && w_nm <= FIT_RANGE_NM.1
}

/// Whether every waveguide width in the design, after a common shift
/// `delta_w_nm`, stays inside the fit window.
pub fn design_in_fit_range(design: &CouplerDesign, delta_w_nm: f64) -> bool {
    design
        .segments
        .iter()
        .all(|s| width_in_fit_range(s.w1_nm + delta_w_nm) && width_in_fit_range(s.w2_nm + delta_w_nm))
}

/// Generator coefficients (hx, hz) for `exp[i(hx X + hz Z)]` of one segment
/// under a common width shift `delta_w_nm`.
fn segment_generator(seg: &CouplerSegment, delta_w_nm: f64) -> (f64, f64) {
    let w1 = (seg.w1_nm + delta_w_nm) / 1000.0;
    let w2 = (seg.w2_nm + delta_w_nm) / 1000.0;
    let omega = omega_of_widths(w1, w2);
    let delta = delta_of_widths(w1, w2);
    (-seg.z_um * omega, seg.z_um * delta)
}

/// Segment unitary `exp[-i z (Ω X - Δ Z)]` at a common width shift
/// `delta_w_nm` applied to both waveguides.
pub fn coupler_segment_unitary(seg: &CouplerSegment, delta_w_nm: f64) -> Unitary2 {
    let (hx, hz) = segment_generator(seg, delta_w_nm);
    exp_i_pauli(hx, 0.0, hz)
}

/// Derivative of the segment unitary with respect to the width shift
/// (per nm), evaluated at `delta_w_nm`.
pub fn coupler_segment_derivative(seg: &CouplerSegment, delta_w_nm: f64) -> Mat2 {
    let w1 = (seg.w1_nm + delta_w_nm) / 1000.0;
    let w2 = (seg.w2_nm + delta_w_nm) / 1000.0;
    // Both widths move by 1e-3 µm per nm of shift, so the width sum moves
    // by 2e-3 µm/nm.
    let domega = 2.0e-3 * {
        let scaled = [
            OMEGA_SUM[1],
            2.0 * OMEGA_SUM[2],
            3.0 * OMEGA_SUM[3],
            4.0 * OMEGA_SUM[4],
        ];
        horner(&scaled, w1 + w2)
    };
    let ddelta = 1.0e-3 * (dhorner_shifted(&DELTA_W1, w1) + dhorner_shifted(&DELTA_W2, w2));
    let (hx, hz) = segment_generator(seg, delta_w_nm);
    dexp_i_pauli([hx, 0.0, hz], [-seg.z_um * domega, 0.0, seg.z_um * ddelta])
}

/// Full circuit unitary at width shift `delta_w_nm` (first segment =
/// leftmost factor).
pub fn design_unitary(design: &CouplerDesign, delta_w_nm: f64) -> Unitary2 {
    let mut u = Mat2::IDENTITY;
    for seg in &design.segments {
        u = u * coupler_segment_unitary(seg, delta_w_nm);
    }
    u
}

/// Derivative of the circuit unitary with respect to the width shift
/// (per nm), by the product rule across segments.
pub fn design_derivative(design: &CouplerDesign, delta_w_nm: f64) -> Mat2 {
    let n = design.segments.len();
    let mut total = Mat2::ZERO;
    for k in 0..n {
        let mut term = Mat2::IDENTITY;
        for (i, seg) in design.segments.iter().enumerate() {
            let factor = if i == k {
                coupler_segment_derivative(seg, delta_w_nm)
            } else {
                coupler_segment_unitary(seg, delta_w_nm)
            };
            term = term * factor;
        }
        total = total + term;
    }
    total
}

/// A synthesized design together with its phase-adjusted Frobenius
/// distance from the target at zero width error.
#[derive(Debug, Clone, PartialEq)]
pub struct CouplerFit {
    pub design: CouplerDesign,
    pub pa_distance: f64,
}

fn require_nontrivial(target: &GateTarget) -> Result<()> {
    if libm::fabs(libm::sin(target.theta_star / 2.0)) < 1e-12 {
        return Err(Error::TrivialTarget);
    }
    Ok(())
}

fn two_segment_design(w1_nm: f64, w2_nm: f64, z_um: f64) -> CouplerDesign {
    CouplerDesign::new(vec![
        CouplerSegment { w1_nm, w2_nm, z_um },
        CouplerSegment { w1_nm: w2_nm, w2_nm: w1_nm, z_um },
    ])
}

/// Number of floor/ceil corners [`round_to_grid`] enumerates for an
/// `m`-segment design: 2^(3m) (three fabrication parameters per segment).
pub fn grid_corner_count(segments: usize) -> usize {
    assert!(segments * 3 < usize::BITS as usize, "corner count overflows");
    1usize << (3 * segments)
}

/// Snap a continuous design to the fabrication grid (integer-nm widths,
/// 1-nm-resolution lengths, i.e. 0.001 µm) by trying every floor/ceil
/// corner and keeping the one closest to the target at zero width error.
/// Ties in distance go to the shorter total length.
pub fn round_to_grid(design: &CouplerDesign, target: &Unitary2) -> CouplerDesign {
    let m = design.segments.len();
    let mut lo = Vec::with_capacity(3 * m);
    let mut hi = Vec::with_capacity(3 * m);
    for seg in &design.segments {
        lo.push(libm::floor(seg.w1_nm));
        hi.push(libm::ceil(seg.w1_nm));
        lo.push(libm::floor(seg.w2_nm));
        hi.push(libm::ceil(seg.w2_nm));
        lo.push(libm::floor(seg.z_um * 1000.0) / 1000.0);
        hi.push(libm::ceil(seg.z_um * 1000.0) / 1000.0);
    }
    let mut best: Option<(f64, f64, CouplerDesign)> = None;
    for mask in 0..grid_corner_count(m) {
        let pick = |j: usize| if mask >> j & 1 == 0 { lo[j] } else { hi[j] };
        let segments: Vec<CouplerSegment> = (0..m)
            .map(|k| CouplerSegment {
                w1_nm: pick(3 * k),
                w2_nm: pick(3 * k + 1),
                z_um: pick(3 * k + 2),
            })
            .collect();
        let cand = CouplerDesign::new(segments);
        let dist = phase_adjusted_frobenius_distance(&design_unitary(&cand, 0.0), target);
        let len = cand.total_length_um();
        let better = match &best {
            None => true,
            Some((bd, bl, _)) => dist < bd - 1e-18 || (dist < bd + 1e-18 && len < *bl),
        };
        if better {
            best = Some((dist, len, cand));
        }
    }
    best.expect("corner enumeration is non-empty").2
}

/// Synthesize a mirrored two-segment coupler `(w1, w2, z), (w2, w1, z)` for
/// the target gate, already snapped to the fabrication grid.
///
/// The continuous family is scanned over integer `w1` across the fit
/// window; at each `w1` a Levenberg-Marquardt solve over `(w2, z)` drives
/// the six phase-free gate residuals to zero, warm-started from the
/// neighbouring solution (with a short seed list as fallback). Each
/// converged family member is then rounded: both integer neighbours of
/// `w2`, a golden-section re-optimization of `z` for each, and both
/// 0.001 µm neighbours of that length. The best rounded candidate overall
/// (smallest phase-adjusted distance, ties to shorter length) wins.
pub fn synthesize_two_segment(target: &GateTarget) -> Result<CouplerFit> {
    require_nontrivial(target)?;
    let tmat = target.matrix();
    let seeds: [(f64, f64); 6] = [
        (355.0, 15.0),
        (370.0, 20.0),
        (390.0, 25.0),
        (410.0, 20.0),
        (430.0, 15.0),
        (445.0, 25.0),
    ];
    let lo = [FIT_RANGE_NM.0, 0.5];
    let hi = [FIT_RANGE_NM.1, 80.0];
    let opts = LmOptions { max_iter: 200, tol: 1e-12, ..LmOptions::default() };
    let mut warm: Option<[f64; 2]> = None;
    let mut best: Option<(f64, f64, CouplerDesign)> = None;
    let mut best_residual = f64::INFINITY;
    for w1_int in 350..=450u32 {
        let w1 = w1_int as f64;
        let mut residual = |x: &[f64]| -> Vec<f64> {
            let g = design_unitary(&two_segment_design(w1, x[0], x[1]), 0.0);
            phase_free_gate_residuals(&g, &tmat).to_vec()
        };
        let mut solution: Option<[f64; 2]> = None;
        let starts = warm.into_iter().chain(seeds.iter().map(|&(w2, z)| [w2, z]));
        for start in starts {
            let got = levenberg_marquardt(&mut residual, &start, &lo, &hi, &opts);
            best_residual = best_residual.min(got.residual_norm);
            if got.residual_norm <= 1e-9 {
                solution = Some([got.x[0], got.x[1]]);
                break;
            }
        }
        let Some([w2, z]) = solution else {
            warm = None;
            continue;
        };
        warm = Some([w2, z]);
        for w2r in [libm::floor(w2), libm::ceil(w2)] {
            let mut dist_at = |zz: f64| {
                phase_adjusted_frobenius_distance(
                    &design_unitary(&two_segment_design(w1, w2r, zz), 0.0),
                    &tmat,
                )
            };
            let z_opt = golden_min(&mut dist_at, z - 0.6, z + 0.6, 1e-11);
            for zr in [libm::floor(z_opt * 1000.0) / 1000.0, libm::ceil(z_opt * 1000.0) / 1000.0] {
                let cand = two_segment_design(w1, w2r, zr);
                let dist = dist_at(zr);
                let len = cand.total_length_um();
                let better = match &best {
                    None => true,
                    Some((bd, bl, _)) => {
                        dist < bd - 1e-18 || (dist < bd + 1e-18 && len < *bl)
                    }
                };
                if better {
                    best = Some((dist, len, cand));
                }
            }
        }
    }
    match best {
        Some((pa_distance, _, design)) => Ok(CouplerFit { design, pa_distance }),
        None => Err(Error::Stagnation { residual: best_residual }),
    }
}

/// Synthesize a four-segment coupler that hits the target at `δw = 0` and
/// additionally cancels the first-order response to a common width shift.
///
/// Twelve fabrication parameters (three per segment) are fit against nine
/// residuals: six phase-free gate residuals plus the three first-order
/// robustness residuals, the latter weighted heavily so the optimizer
/// treats them as hard constraints. The solve multistarts from `seed`
/// (pass a published design or a hand-crafted layout) and 23 deterministic
/// perturbations of it; each converged candidate is snapped to the
/// fabrication grid and the best rounded design wins.
pub fn synthesize_four_segment_robust(
    target: &GateTarget,
    seed: &CouplerDesign,
) -> Result<CouplerFit> {
    require_nontrivial(target)?;
    if seed.segments.len() != 4 {
        return Err(Error::SegmentCount { expected: 4, got: seed.segments.len() });
    }
    let tmat = target.matrix();
    const ROBUST_WEIGHT: f64 = 200.0;
    let mut residual = |x: &[f64]| -> Vec<f64> {
        let segments: Vec<CouplerSegment> = (0..4)
            .map(|k| CouplerSegment {
                w1_nm: x[3 * k],
                w2_nm: x[3 * k + 1],
                z_um: x[3 * k + 2],
            })
            .collect();
        let design = CouplerDesign::new(segments);
        let g = design_unitary(&design, 0.0);
        let dg = design_derivative(&design, 0.0);
        let mut out = Vec::with_capacity(9);
        out.extend_from_slice(&phase_free_gate_residuals(&g, &tmat));
        out.extend(robustness_residuals(&dg, &g).map(|r| r * ROBUST_WEIGHT));
        out
    };
    let x_seed: Vec<f64> = seed
        .segments
        .iter()
        .flat_map(|s| [s.w1_nm, s.w2_nm, s.z_um])
        .collect();
    let mut lo = Vec::new();
    let mut hi = Vec::new();
    for _ in 0..4 {
        lo.extend_from_slice(&[FIT_RANGE_NM.0, FIT_RANGE_NM.0, 0.5]);
        hi.extend_from_slice(&[FIT_RANGE_NM.1, FIT_RANGE_NM.1, 80.0]);
    }
    let opts = LmOptions { max_iter: 200, tol: 2e-8, ..LmOptions::default() };
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let mut best: Option<(f64, f64, CouplerDesign)> = None;
    let mut best_residual = f64::INFINITY;
    for k in 0..24 {
        let mut x0 = x_seed.clone();
        if k > 0 {
            for (j, v) in x0.iter_mut().enumerate() {
                let span = if j % 3 == 2 { 0.05 } else { 0.4 };
                *v += uniform(&mut rng, -span, span);
            }
        }
        for (v, (&l, &h)) in x0.iter_mut().zip(lo.iter().zip(hi.iter())) {
            *v = v.clamp(l, h);
        }
        let got = levenberg_marquardt(&mut residual, &x0, &lo, &hi, &opts);
        let segments: Vec<CouplerSegment> = (0..4)
            .map(|k| CouplerSegment {
                w1_nm: got.x[3 * k],
                w2_nm: got.x[3 * k + 1],
                z_um: got.x[3 * k + 2],
            })
            .collect();
        let design = CouplerDesign::new(segments);
        let gate_res = norm2(&phase_free_gate_residuals(&design_unitary(&design, 0.0), &tmat));
        best_residual = best_residual.min(gate_res);
        if gate_res > 1e-8 {
            continue;
        }
        let rounded = round_to_grid(&design, &tmat);
        let dist = phase_adjusted_frobenius_distance(&design_unitary(&rounded, 0.0), &tmat);
        let len = rounded.total_length_um();
        let better = match &best {
            None => true,
            Some((bd, bl, _)) => dist < bd - 1e-18 || (dist < bd + 1e-18 && len < *bl),
        };
        if better {
            best = Some((dist, len, rounded));
        }
    }
    match best {
        Some((pa_distance, _, design)) => Ok(CouplerFit { design, pa_distance }),
        None => Err(Error::Stagnation { residual: best_residual }),
    }
}

/// Sweep the common width error over `errors` (nm) for one design,
/// reporting the standard metric set per point. Frobenius fidelity is
/// phase-adjusted here: a coupler's global phase is not observable.
pub fn width_error_sweep(
    design: &CouplerDesign,
    design_id: &str,
    target: &GateTarget,
    errors: &[f64],
    target_error: f64,
) -> SweepResult {
    let tmat = target.matrix();
    let frame = target.frame();
    let rows: Vec<SweepRow> = sweep_gates(
        errors,
        |dw| design_unitary(design, dw),
        &tmat,
        &frame,
        target_error,
        true,
    );
    SweepResult {
        platform: "photonic".to_string(),
        design_id: design_id.to_string(),
        target_error,
        rows,
    }
}

/// Identifier for one of the tabulated reference designs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PublishedDesign {
    /// Mirrored two-segment design (not robust to width error).
    TwoSegment,
    /// Four-segment robust designs, variants a/b/c.
    RobustA,
    RobustB,
    RobustC,
}

impl PublishedDesign {
    pub const ALL: [PublishedDesign; 4] = [
        PublishedDesign::TwoSegment,
        PublishedDesign::RobustA,
        PublishedDesign::RobustB,
        PublishedDesign::RobustC,
    ];

    pub fn id(self) -> &'static str {
        match self {
            PublishedDesign::TwoSegment => "2seg",
            PublishedDesign::RobustA => "a",
            PublishedDesign::RobustB => "b",
            PublishedDesign::RobustC => "c",
        }
    }

    pub fn from_id(id: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|d| d.id() == id)
    }

    /// The design's tabulated geometry.
    pub fn design(self) -> CouplerDesign {
        let rows: &[(f64, f64, f64)] = match self {
            PublishedDesign::TwoSegment => &crate::reference::COUPLER_TWO_SEGMENT,
            PublishedDesign::RobustA => &crate::reference::COUPLER_ROBUST_A,
            PublishedDesign::RobustB => &crate::reference::COUPLER_ROBUST_B,
            PublishedDesign::RobustC => &crate::reference::COUPLER_ROBUST_C,
        };
        CouplerDesign::new(
            rows.iter()
                .map(|&(w1_nm, w2_nm, z_um)| CouplerSegment { w1_nm, w2_nm, z_um })
                .collect(),
        )
    }
}

/// Look up a tabulated design by its id (`"2seg"`, `"a"`, `"b"`, `"c"`).
pub fn published_design(id: &str) -> Option<CouplerDesign> {
    PublishedDesign::from_id(id).map(PublishedDesign::design)
}
