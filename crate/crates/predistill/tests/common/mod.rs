//! Shared oracle helpers for the integration suites. Everything here is
//! deliberately written by a *different* route than the library code it
//! checks (Taylor-series exponentials instead of closed forms, grid scans
//! instead of analytic minimizers, literal matrix products instead of
//! tabulated entries), so agreement is meaningful.
#![allow(dead_code)]

use num_complex::Complex64;
use predistill::mat2::{c64, Mat2};
use rand::Rng;

pub const PI: f64 = std::f64::consts::PI;

pub fn assert_close(a: f64, b: f64, tol: f64, what: &str) {
    assert!(
        (a - b).abs() <= tol,
        "{what}: {a} vs {b} (diff {:.3e}, tol {:.1e})",
        (a - b).abs(),
        tol
    );
}

pub fn mat_close(a: &Mat2, b: &Mat2, tol: f64, what: &str) {
    let d = (*a - *b).max_abs();
    assert!(d <= tol, "{what}: matrices differ by {d:.3e} (tol {tol:.1e})\n a={a:?}\n b={b:?}");
}

/// Matrix exponential by scaling-and-squaring with a long Taylor series —
/// an oracle for every closed-form exponential in the crate.
pub fn series_exp(m: &Mat2) -> Mat2 {
    let scale = 1u32 << 8;
    let small = m.scale(c64(1.0 / scale as f64, 0.0));
    let mut term = Mat2::IDENTITY;
    let mut sum = Mat2::IDENTITY;
    for k in 1..64 {
        term = (term * small).scale(c64(1.0 / k as f64, 0.0));
        sum = sum + term;
    }
    let mut out = sum;
    for _ in 0..8 {
        out = out * out;
    }
    out
}

/// `exp[i(hx X + hy Y + hz Z)]` through [`series_exp`] on literal Pauli
/// matrices.
pub fn series_exp_pauli(hx: f64, hy: f64, hz: f64) -> Mat2 {
    let x = Mat2::new(c64(0.0, 0.0), c64(1.0, 0.0), c64(1.0, 0.0), c64(0.0, 0.0));
    let y = Mat2::new(c64(0.0, 0.0), c64(0.0, -1.0), c64(0.0, 1.0), c64(0.0, 0.0));
    let z = Mat2::new(c64(1.0, 0.0), c64(0.0, 0.0), c64(0.0, 0.0), c64(-1.0, 0.0));
    let h = x.scale(c64(hx, 0.0)) + y.scale(c64(hy, 0.0)) + z.scale(c64(hz, 0.0));
    series_exp(&h.scale(c64(0.0, 1.0)))
}

/// The magic-axis twirl built from first principles: `e^{iπ/4}·S·H` with
/// the literal phase gate and Hadamard.
pub fn twirl_oracle() -> Mat2 {
    let s = Mat2::new(c64(1.0, 0.0), c64(0.0, 0.0), c64(0.0, 0.0), c64(0.0, 1.0));
    let r = 1.0 / 2.0_f64.sqrt();
    let h = Mat2::new(c64(r, 0.0), c64(r, 0.0), c64(r, 0.0), c64(-r, 0.0));
    (s * h).scale(Complex64::cis(PI / 4.0))
}

/// Random unitary: Haar-ish via a random SU(2) rotation times a random
/// global phase.
pub fn random_unitary(rng: &mut impl Rng) -> Mat2 {
    let theta: f64 = rng.gen_range(0.0..PI);
    let phi: f64 = rng.gen_range(-PI..PI);
    let lam: f64 = rng.gen_range(-PI..PI);
    let gamma: f64 = rng.gen_range(-PI..PI);
    let rz = Mat2::diag(Complex64::cis(-lam / 2.0), Complex64::cis(lam / 2.0));
    (predistill::su2::rotation(theta, phi) * rz).scale(Complex64::cis(gamma))
}

/// Random normalized pure-state density matrix.
pub fn random_pure_density(rng: &mut impl Rng) -> Mat2 {
    let u = random_unitary(rng);
    let v = u.col(0);
    predistill::mat2::outer(v, v)
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn log_log_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
    for &(x, y) in points {
        let (lx, ly) = (x.ln(), y.ln());
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    (n * sxy - sx * sy) / (n * sxx - sx * sx)
}

/// Naive power-sum polynomial evaluation (the anti-Horner oracle).
pub fn powsum(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().enumerate().map(|(k, &c)| c * x.powi(k as i32)).sum()
}

/// Phase-adjusted Frobenius distance by brute-force minimization over the
/// global phase (3600-point grid with local refinement).
pub fn pa_dist_grid(g: &Mat2, t: &Mat2) -> f64 {
    let dist = |gamma: f64| (*g - t.scale(Complex64::cis(gamma))).frobenius_norm() / 2.0;
    let mut best = (f64::INFINITY, 0.0);
    for k in 0..3600 {
        let gamma = -PI + 2.0 * PI * k as f64 / 3600.0;
        let d = dist(gamma);
        if d < best.0 {
            best = (d, gamma);
        }
    }
    // refine around the grid winner
    let (mut lo, mut hi) = (best.1 - 2e-3, best.1 + 2e-3);
    for _ in 0..80 {
        let m1 = lo + (hi - lo) / 3.0;
        let m2 = hi - (hi - lo) / 3.0;
        if dist(m1) < dist(m2) {
            hi = m2;
        } else {
            lo = m1;
        }
    }
    dist(0.5 * (lo + hi))
}

/// First central difference of a matrix-valued function, independent of
/// the library's stencil helpers.
pub fn fd1(f: &mut impl FnMut(f64) -> Mat2, h: f64) -> Mat2 {
    (f(h) - f(-h)).scale(c64(0.5 / h, 0.0))
}
