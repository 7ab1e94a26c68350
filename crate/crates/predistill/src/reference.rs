//! Published reference values the synthesis routines are checked against.
//!
//! Everything in this module is tabulated data quoted to the precision it
//! was published at (five decimals for pulse parameters, so comparisons
//! should allow ~1e−5 in the quoted units). The library never *uses* these
//! numbers to compute anything — solvers derive their results from scratch
//! — but the test suites and the `tables --check` CLI path compare against
//! them, and [`crate::photonic::published_design`] exposes the coupler
//! geometries for sweeps.

/// Three-pulse symmetric sequences for `rotation(θ*, 0)`:
/// rows `(θ*/π, θ/π, φ₁/π, φ₂/π)` for θ*/π = 0.1 … 1.0.
pub const THREE_PULSE_TABLE: [(f64, f64, f64, f64); 10] = [
    (0.1, 0.50614, -0.46114, 0.48923),
    (0.2, 0.52421, -0.42464, 0.47824),
    (0.3, 0.55331, -0.39234, 0.46678),
    (0.4, 0.59226, -0.36536, 0.45458),
    (0.5, 0.63990, -0.34419, 0.44129),
    (0.6, 0.69538, -0.32894, 0.42648),
    (0.7, 0.75827, -0.31966, 0.40952),
    (0.8, 0.82882, -0.31661, 0.38952),
    (0.9, 0.90828, -0.32055, 0.36501),
    (1.0, 1.00000, -0.33333, 0.33333),
];

/// Five-pulse symmetric sequences for `rotation(θ*, 0)`:
/// rows `(θ*/π, θ/π, φ₁/π, φ₂/π, φ₃/π)` for θ*/π = 0.1 … 1.0.
pub const FIVE_PULSE_TABLE: [(f64, f64, f64, f64, f64); 10] = [
    (0.1, 1.50291, 0.48163, -0.51210, -0.45592),
    (0.2, 1.51182, 0.46354, -0.52386, -0.41193),
    (0.3, 1.52730, 0.44603, -0.53487, -0.36810),
    (0.4, 1.55034, 0.42955, -0.54464, -0.32444),
    (0.5, 1.58238, 0.41472, -0.55249, -0.28086),
    (0.6, 1.62536, 0.40238, -0.55752, -0.23704),
    (0.7, 1.68194, 0.39372, -0.55852, -0.19226),
    (0.8, 1.75611, 0.39037, -0.55380, -0.14500),
    (0.9, 1.85530, 0.39495, -0.54056, -0.09202),
    (1.0, 2.00000, 0.41312, -0.51245, -0.02491),
];

/// Published composite realizations of the magic gate 𝒯 (X-Y control),
/// in radians: `(θ, [φ₁ … φₙ])`.
pub const T_THREE_PULSE: (f64, [f64; 2]) = (1.74270, [1.12743, 3.82112]);
pub const T_FIVE_PULSE: (f64, [f64; 3]) = (4.80062, [3.75525, 0.67449, 1.20539]);
pub const T_SEVEN_PULSE: (f64, [f64; 4]) = (1.78928, [3.4837, 4.23899, 1.15951, 0.894556]);

/// Published composite realizations of the magic gate ℋ (X-Y control),
/// in radians: `(θ, [φ₁ … φₙ])`.
pub const H_THREE_PULSE: (f64, [f64; 2]) = (1.68846, [0.28941, 3.05547]);
pub const H_FIVE_PULSE: (f64, [f64; 3]) = (4.77109, [2.99923, -0.09264, 0.34559]);
pub const H_SEVEN_PULSE: (f64, [f64; 4]) = (1.72181, [2.76539, 3.39854, 0.30736, 0.08854]);

/// Published three-segment X-Z sequences robust to first order in the
/// detuning, targeting 𝒯(XZ): rows `([θ₁, θ₂, θ₃], [φ₁, φ₂, φ₃])` in
/// radians, quoted to five decimals (row a's φ₂ happens to be −π at that
/// precision; it is quoted data, not a rounded constant).
#[allow(clippy::approx_constant)]
pub const XZ_ROBUST_SEQUENCES: [([f64; 3], [f64; 3]); 3] = [
    ([1.26121, -2.86242, -1.26121], [3.31558, -3.14159, -0.17399]),
    ([3.25204, -1.56495, -1.35397], [0.49741, -0.06006, -0.41585]),
    ([-3.02982, -1.56520, 1.35359], [0.55004, -0.08606, -3.58545]),
];

/// Published coupler geometries `(w1 nm, w2 nm, z µm)`, segments in
/// application order. The two-segment design hits 𝒯(XZ) at zero width
/// error only; the four-segment variants additionally cancel the
/// first-order response to a common width shift.
pub const COUPLER_TWO_SEGMENT: [(f64, f64, f64); 2] =
    [(449.0, 356.0, 23.813), (356.0, 449.0, 23.813)];

pub const COUPLER_ROBUST_A: [(f64, f64, f64); 4] = [
    (449.0, 387.0, 23.220),
    (424.0, 448.0, 17.190),
    (450.0, 351.0, 21.152),
    (353.0, 450.0, 36.094),
];

pub const COUPLER_ROBUST_B: [(f64, f64, f64); 4] = [
    (448.0, 387.0, 23.822),
    (395.0, 422.0, 15.660),
    (449.0, 350.0, 21.215),
    (355.0, 449.0, 37.081),
];

pub const COUPLER_ROBUST_C: [(f64, f64, f64); 4] = [
    (450.0, 389.0, 22.675),
    (395.0, 407.0, 18.369),
    (449.0, 350.0, 20.343),
    (359.0, 450.0, 39.073),
];

/// Published five-qubit-code transition errors: `ε_c,i` is the largest
/// input error for which `i` rounds of distillation reach 10⁻¹⁵
/// (element 0 is the target itself, i.e. zero rounds). Compare against
/// [`crate::distill::transition_thresholds`] with a relative tolerance of
/// about 10⁻³ (the published values carry four significant digits).
pub const FIVE_QUBIT_TRANSITION_ERRORS: [f64; 10] = [
    1e-15, 1.414e-8, 5.318e-5, 3.251e-3, 2.490e-2, 6.676e-2, 1.072e-1, 1.353e-1, 1.520e-1,
    1.615e-1,
];
