//! Shared numerical machinery: bracketed root finding, golden-section
//! minimization, a box-constrained Levenberg–Marquardt driver, closed-form
//! SU(2) exponentials with their Fréchet derivatives, and finite-difference
//! stencils with Richardson extrapolation.
//!
//! Everything here is deterministic and allocation-light; the solvers work
//! on small dense problems (≤ a few dozen residuals, ≤ 12 unknowns) where a
//! direct normal-equations solve is both fastest and simplest.

use crate::mat2::{c64, Mat2};
use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;

/// Bisection on a bracketing interval; runs a fixed 200 halvings, which
/// drives the interval below one ulp for any f64 endpoints, so callers get
/// the machine-precision root without a tolerance knob.
///
/// Requires `f(lo)` and `f(hi)` to have opposite signs (the caller brackets
/// first, e.g. with [`sign_change_brackets`]).
pub fn bisect(f: &mut impl FnMut(f64) -> f64, lo: f64, hi: f64) -> f64 {
    let (mut a, mut b) = (lo, hi);
    let mut fa = f(a);
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        let fm = f(m);
        if fm == 0.0 {
            return m;
        }
        if (fa > 0.0) == (fm > 0.0) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

/// Scan `[lo, hi]` with `samples` equidistant points and return every
/// consecutive pair with a sign change. Non-finite samples (poles of `f`)
/// break the chain instead of producing a spurious bracket.
pub fn sign_change_brackets(
    f: &mut impl FnMut(f64) -> f64,
    lo: f64,
    hi: f64,
    samples: usize,
) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    if samples < 2 {
        return out;
    }
    let step = (hi - lo) / (samples - 1) as f64;
    let mut xp = lo;
    let mut fp = f(xp);
    for i in 1..samples {
        let x = lo + step * i as f64;
        let fx = f(x);
        if fp.is_finite() && fx.is_finite() && (fp > 0.0) != (fx > 0.0) {
            out.push((xp, x));
        }
        xp = x;
        fp = fx;
    }
    out
}

/// Golden-section minimization of a unimodal function on `[lo, hi]`,
/// shrinking the interval below `tol`.
pub fn golden_min(f: &mut impl FnMut(f64) -> f64, lo: f64, hi: f64, tol: f64) -> f64 {
    let g = (libm::sqrt(5.0) - 1.0) / 2.0;
    let (mut a, mut b) = (lo, hi);
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while libm::fabs(b - a) > tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}

/// Tuning knobs for [`levenberg_marquardt`].
#[derive(Debug, Clone, Copy)]
pub struct LmOptions {
    /// Outer iteration limit.
    pub max_iter: usize,
    /// Stop once the residual 2-norm falls below this.
    pub tol: f64,
    /// Damping increases tried per outer iteration before declaring a stall.
    pub inner_retries: usize,
}

impl Default for LmOptions {
    fn default() -> Self {
        Self { max_iter: 200, tol: 1e-12, inner_retries: 40 }
    }
}

/// Result of a [`levenberg_marquardt`] run. `residual_norm` is the 2-norm
/// at the returned point; convergence is the caller's judgement (compare
/// against the tolerance that matters for the application).
#[derive(Debug, Clone)]
pub struct LmOutcome {
    pub x: Vec<f64>,
    pub residual_norm: f64,
    pub iterations: usize,
}

pub(crate) fn norm2(v: &[f64]) -> f64 {
    let mut s = 0.0;
    for &x in v {
        s += x * x;
    }
    libm::sqrt(s)
}

/// Gaussian elimination with partial pivoting on an n×n system (row-major
/// `a`), solving in place into `b`. Returns false on a (numerically)
/// singular pivot.
fn solve_linear(a: &mut [f64], b: &mut [f64], n: usize) -> bool {
    for col in 0..n {
        let mut piv = col;
        let mut best = libm::fabs(a[col * n + col]);
        for r in (col + 1)..n {
            let v = libm::fabs(a[r * n + col]);
            if v > best {
                best = v;
                piv = r;
            }
        }
        if best < 1e-300 {
            return false;
        }
        if piv != col {
            for c in 0..n {
                a.swap(piv * n + c, col * n + c);
            }
            b.swap(piv, col);
        }
        let d = a[col * n + col];
        for r in (col + 1)..n {
            let factor = a[r * n + col] / d;
            if factor == 0.0 {
                continue;
            }
            for c in col..n {
                a[r * n + c] -= factor * a[col * n + c];
            }
            b[r] -= factor * b[col];
        }
    }
    for col in (0..n).rev() {
        let mut s = b[col];
        for c in (col + 1)..n {
            s -= a[col * n + c] * b[c];
        }
        b[col] = s / a[col * n + col];
    }
    true
}

fn clamp_to_box(x: &mut [f64], lo: &[f64], hi: &[f64]) {
    for i in 0..x.len() {
        if x[i] < lo[i] {
            x[i] = lo[i];
        }
        if x[i] > hi[i] {
            x[i] = hi[i];
        }
    }
}

/// Box-constrained Levenberg–Marquardt least squares.
///
/// Minimizes `‖f(x)‖²` starting from `x0`, keeping every iterate inside
/// `[lo, hi]` by clamping trial steps. The Jacobian is estimated by central
/// differences with per-coordinate step `10⁻⁶·max(1, |xᵢ|)`; damping starts
/// at 10⁻³ and is scaled by 10 on rejection / 0.1 on acceptance (floor
/// 10⁻¹⁴, cap 10¹⁰). The run ends at `tol`, at `max_iter`, or when
/// `inner_retries` consecutive damping increases fail to improve the
/// residual — whichever comes first. No error is returned; inspect
/// [`LmOutcome::residual_norm`].
pub fn levenberg_marquardt(
    f: &mut impl FnMut(&[f64]) -> Vec<f64>,
    x0: &[f64],
    lo: &[f64],
    hi: &[f64],
    opts: &LmOptions,
) -> LmOutcome {
    let n = x0.len();
    debug_assert_eq!(lo.len(), n);
    debug_assert_eq!(hi.len(), n);

    let mut x = x0.to_vec();
    clamp_to_box(&mut x, lo, hi);
    let mut r = f(&x);
    let m = r.len();
    let mut rn = norm2(&r);
    let mut lambda = 1e-3;
    let mut iterations = 0;

    let mut jac = vec![0.0; m * n];
    for it in 0..opts.max_iter {
        iterations = it;
        if rn < opts.tol {
            break;
        }

        // Central-difference Jacobian, columns clamped to the box so the
        // model reflects reachable points.
        for j in 0..n {
            let h = 1e-6 * libm::fabs(x[j]).max(1.0);
            let mut xp = x.clone();
            xp[j] = (x[j] + h).min(hi[j]);
            let mut xm = x.clone();
            xm[j] = (x[j] - h).max(lo[j]);
            let denom = xp[j] - xm[j];
            let rp = f(&xp);
            let rm = f(&xm);
            for i in 0..m {
                jac[i * n + j] = if denom != 0.0 { (rp[i] - rm[i]) / denom } else { 0.0 };
            }
        }

        // JᵀJ and −Jᵀr.
        let mut jtj = vec![0.0; n * n];
        let mut jtr = vec![0.0; n];
        for i in 0..m {
            for a in 0..n {
                let ja = jac[i * n + a];
                jtr[a] -= ja * r[i];
                for b in a..n {
                    jtj[a * n + b] += ja * jac[i * n + b];
                }
            }
        }
        for a in 0..n {
            for b in 0..a {
                jtj[a * n + b] = jtj[b * n + a];
            }
        }

        let mut accepted = false;
        for _ in 0..opts.inner_retries {
            let mut a = jtj.clone();
            for d in 0..n {
                a[d * n + d] += lambda;
            }
            let mut step = jtr.clone();
            if !solve_linear(&mut a, &mut step, n) {
                lambda = (lambda * 10.0).min(1e10);
                continue;
            }
            let mut xn = x.clone();
            for j in 0..n {
                xn[j] += step[j];
            }
            clamp_to_box(&mut xn, lo, hi);
            let rnew = f(&xn);
            let rnn = norm2(&rnew);
            if rnn < rn {
                x = xn;
                r = rnew;
                rn = rnn;
                lambda = (lambda * 0.1).max(1e-14);
                accepted = true;
                break;
            }
            lambda = (lambda * 10.0).min(1e10);
        }
        if !accepted {
            break;
        }
    }

    LmOutcome { x, residual_norm: rn, iterations }
}

/// Closed-form `exp[i (hx·X + hy·Y + hz·Z)]`.
///
/// With `r = √(hx²+hy²+hz²)` this is `cos r · I + i sinc r · (h·σ)`; the
/// sinc is series-expanded near r = 0 so the identity limit is exact.
pub fn exp_i_pauli(hx: f64, hy: f64, hz: f64) -> Mat2 {
    let r = libm::sqrt(hx * hx + hy * hy + hz * hz);
    let (c, s) = if r < 1e-4 {
        let r2 = r * r;
        (libm::cos(r), 1.0 - r2 / 6.0 + r2 * r2 / 120.0)
    } else {
        (libm::cos(r), libm::sin(r) / r)
    };
    // i (h·σ) = [[i hz, i hx + hy], [i hx − hy, −i hz]]
    Mat2::new(
        c64(c, s * hz),
        c64(s * hy, s * hx),
        c64(-s * hy, s * hx),
        c64(c, -s * hz),
    )
}

fn pauli_combo(h: [f64; 3]) -> Mat2 {
    Mat2::new(c64(h[2], 0.0), c64(h[0], -h[1]), c64(h[0], h[1]), c64(-h[2], 0.0))
}

/// Fréchet derivative of the Pauli exponential:
/// `d/dt exp[i ((h + t·dh)·σ)]` at `t = 0`.
///
/// Uses the spectral (Daleckii–Krein) formula for the 2×2 Hermitian
/// generator, written with the projectors `P± = (I ± n̂·σ)/2` so no
/// eigenvector code is needed; the off-diagonal divided difference
/// `(e^{ir} − e^{−ir})/(2r) = i sin(r)/r` is sinc-stable. Near the
/// degenerate point r = 0 the series `iE − (HE + EH)/2` is used instead.
pub fn dexp_i_pauli(h: [f64; 3], dh: [f64; 3]) -> Mat2 {
    let r = libm::sqrt(h[0] * h[0] + h[1] * h[1] + h[2] * h[2]);
    let e = pauli_combo(dh);
    if r < 1e-7 {
        let hm = pauli_combo(h);
        return e.scale(c64(0.0, 1.0)) - (hm * e + e * hm).scale(c64(0.5, 0.0));
    }
    let nhat = pauli_combo([h[0] / r, h[1] / r, h[2] / r]);
    let half = c64(0.5, 0.0);
    let pp = (Mat2::IDENTITY + nhat).scale(half);
    let pm = (Mat2::IDENTITY - nhat).scale(half);
    let phi_pp = Complex64::cis(r) * c64(0.0, 1.0);
    let phi_mm = Complex64::cis(-r) * c64(0.0, 1.0);
    let phi_pm = c64(0.0, libm::sin(r) / r);
    (pp * e * pp).scale(phi_pp) + (pm * e * pm).scale(phi_mm) + (pp * e * pm + pm * e * pp).scale(phi_pm)
}

/// k-th central finite difference (k ≤ 4) of a matrix-valued function at 0
/// with step `h`, using the standard symmetric stencils.
pub fn central_difference(f: &mut impl FnMut(f64) -> Mat2, k: u32, h: f64) -> Mat2 {
    match k {
        1 => (f(h) - f(-h)).scale(c64(1.0 / (2.0 * h), 0.0)),
        2 => (f(h) - f(0.0).scale(c64(2.0, 0.0)) + f(-h)).scale(c64(1.0 / (h * h), 0.0)),
        3 => (f(2.0 * h) - f(h).scale(c64(2.0, 0.0)) + f(-h).scale(c64(2.0, 0.0)) - f(-2.0 * h))
            .scale(c64(1.0 / (2.0 * h * h * h), 0.0)),
        4 => (f(2.0 * h) - f(h).scale(c64(4.0, 0.0)) + f(0.0).scale(c64(6.0, 0.0))
            - f(-h).scale(c64(4.0, 0.0))
            + f(-2.0 * h))
        .scale(c64(1.0 / (h * h * h * h), 0.0)),
        _ => panic!("central_difference supports orders 1..=4"),
    }
}

/// One Richardson extrapolation step for the order-h² central stencils:
/// `(4·D(h/2) − D(h)) / 3`, cancelling the leading truncation term.
pub fn richardson(f: &mut impl FnMut(f64) -> Mat2, k: u32, h: f64) -> Mat2 {
    let fine = central_difference(f, k, h / 2.0);
    let coarse = central_difference(f, k, h);
    (fine.scale(c64(4.0, 0.0)) - coarse).scale(c64(1.0 / 3.0, 0.0))
}

/// Map a generator's next `u64` to a uniform f64 in `[lo, hi)`.
/// 53 mantissa bits, exactly reproducible across platforms.
pub(crate) fn uniform(rng: &mut impl rand_core::RngCore, lo: f64, hi: f64) -> f64 {
    let u = (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
    lo + u * (hi - lo)
}
