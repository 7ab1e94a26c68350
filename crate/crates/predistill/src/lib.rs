//! Composite-pulse synthesis of magic-state-preparing gates, gate-quality
//! metrics, and magic-state-distillation resource arithmetic.
//!
//! The crate builds short pulse sequences that realize the two single-qubit
//! gates whose eigenstates are the magic states used in state distillation:
//! the 𝒯 gate (a rotation taking the computational basis onto the T-state
//! basis) and the ℋ gate (the analogous rotation for H-states). Sequences are
//! constructed so that the realized unitary is flat to a prescribed order in
//! a platform-specific control error:
//!
//! * [`xy`] — global multiplicative pulse-area error on a platform driven by
//!   resonant pulses with a programmable phase (X-Y control plane),
//! * [`xz`] — fully correlated additive detuning on a platform whose
//!   segments mix an X drive with a Z detuning,
//! * [`photonic`] — a common width deviation on directional-coupler segments
//!   in femtosecond-laser-written waveguides.
//!
//! The [`metrics`] module scores a realized gate against its target
//! (Frobenius and trace fidelities, magic-state preparation error), and
//! [`distill`] converts a preparation error into distillation levels and
//! qubit counts for the five-qubit T-state code and the 15-to-1 H-state
//! code. [`injection`] models direct injection of an imperfect T-state pair
//! into a gate teleportation circuit.
//!
//! # Conventions
//!
//! All angles are radians. A resonant pulse of area θ and phase φ is
//!
//! ```text
//! rotation(θ, φ) = [[ cos(θ/2),            −i e^{−iφ} sin(θ/2) ],
//!                   [ −i e^{iφ} sin(θ/2),   cos(θ/2)           ]]
//! ```
//!
//! and products are written left to right: `compose(&[a, b])` is the matrix
//! product `a · b` (the *first* factor in a slice is the leftmost matrix).
//! Time-ordering, where it matters, is stated at each call site.
//!
//! The crate is `no_std`-compatible (it needs `alloc`); the default `std`
//! feature only widens error-trait integration. All routines are
//! deterministic: stochastic restarts in the optimizers draw from a
//! fixed-seed counter-based generator.
#![cfg_attr(not(any(feature = "std", test)), no_std)]
#![deny(unsafe_code)]

extern crate alloc;

pub mod distill;
pub mod error;
pub mod injection;
pub mod mat2;
pub mod metrics;
pub mod photonic;
pub mod reference;
pub mod solve;
pub mod su2;
pub mod sweep;
pub mod xy;
pub mod xz;

pub use error::{Error, Result};
pub use mat2::{c64, Mat2, Unitary2};
pub use su2::{Convention, GateTarget, MagicFrame};
