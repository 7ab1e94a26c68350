//! Dense 2×2 complex matrices.
//!
//! Everything in this crate lives in a two-dimensional Hilbert space, so a
//! hand-rolled fixed-size `Copy` type beats a general linear-algebra stack:
//! no allocation, no panics on shape mismatch, and it works in `no_std`.

use core::ops::{Add, Mul, Neg, Sub};
use num_complex::Complex64;

/// Shorthand constructor for a complex number.
#[inline]
pub const fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Row-major 2×2 complex matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2 {
    pub m00: Complex64,
    pub m01: Complex64,
    pub m10: Complex64,
    pub m11: Complex64,
}

/// A [`Mat2`] that is expected to be unitary up to numerical tolerance.
/// The alias documents intent at API boundaries; it adds no checking.
pub type Unitary2 = Mat2;

impl Mat2 {
    pub const ZERO: Self = Self::new(c64(0.0, 0.0), c64(0.0, 0.0), c64(0.0, 0.0), c64(0.0, 0.0));
    pub const IDENTITY: Self = Self::new(c64(1.0, 0.0), c64(0.0, 0.0), c64(0.0, 0.0), c64(1.0, 0.0));

    #[inline]
    pub const fn new(m00: Complex64, m01: Complex64, m10: Complex64, m11: Complex64) -> Self {
        Self { m00, m01, m10, m11 }
    }

    /// Diagonal matrix `diag(a, d)`.
    #[inline]
    pub const fn diag(a: Complex64, d: Complex64) -> Self {
        Self::new(a, c64(0.0, 0.0), c64(0.0, 0.0), d)
    }

    /// Conjugate transpose.
    #[inline]
    pub fn adjoint(&self) -> Self {
        Self::new(self.m00.conj(), self.m10.conj(), self.m01.conj(), self.m11.conj())
    }

    #[inline]
    pub fn trace(&self) -> Complex64 {
        self.m00 + self.m11
    }

    #[inline]
    pub fn det(&self) -> Complex64 {
        self.m00 * self.m11 - self.m01 * self.m10
    }

    /// Column `j` (0 or 1) as a ket.
    #[inline]
    pub fn col(&self, j: usize) -> [Complex64; 2] {
        match j {
            0 => [self.m00, self.m10],
            _ => [self.m01, self.m11],
        }
    }

    /// Matrix–vector product `M|v⟩`.
    #[inline]
    pub fn apply(&self, v: [Complex64; 2]) -> [Complex64; 2] {
        [self.m00 * v[0] + self.m01 * v[1], self.m10 * v[0] + self.m11 * v[1]]
    }

    /// Frobenius norm `sqrt(Σ |m_ij|²)`.
    #[inline]
    pub fn frobenius_norm(&self) -> f64 {
        libm::sqrt(
            self.m00.norm_sqr() + self.m01.norm_sqr() + self.m10.norm_sqr() + self.m11.norm_sqr(),
        )
    }

    /// Largest entry modulus.
    #[inline]
    pub fn max_abs(&self) -> f64 {
        let mut m = self.m00.norm();
        for v in [self.m01, self.m10, self.m11] {
            let n = v.norm();
            if n > m {
                m = n;
            }
        }
        m
    }

    /// `‖U†U − I‖_max`; zero for an exactly unitary matrix.
    #[inline]
    pub fn unitarity_defect(&self) -> f64 {
        (self.adjoint() * *self - Self::IDENTITY).max_abs()
    }

    /// `‖A − A†‖_max`; zero for an exactly Hermitian matrix.
    #[inline]
    pub fn hermiticity_defect(&self) -> f64 {
        (*self - self.adjoint()).max_abs()
    }

    /// Entrywise scaling by a complex factor.
    #[inline]
    pub fn scale(&self, s: Complex64) -> Self {
        Self::new(self.m00 * s, self.m01 * s, self.m10 * s, self.m11 * s)
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    #[inline]
    fn add(self, r: Mat2) -> Mat2 {
        Mat2::new(self.m00 + r.m00, self.m01 + r.m01, self.m10 + r.m10, self.m11 + r.m11)
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    #[inline]
    fn sub(self, r: Mat2) -> Mat2 {
        Mat2::new(self.m00 - r.m00, self.m01 - r.m01, self.m10 - r.m10, self.m11 - r.m11)
    }
}

impl Neg for Mat2 {
    type Output = Mat2;
    #[inline]
    fn neg(self) -> Mat2 {
        Mat2::new(-self.m00, -self.m01, -self.m10, -self.m11)
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    #[inline]
    fn mul(self, r: Mat2) -> Mat2 {
        Mat2::new(
            self.m00 * r.m00 + self.m01 * r.m10,
            self.m00 * r.m01 + self.m01 * r.m11,
            self.m10 * r.m00 + self.m11 * r.m10,
            self.m10 * r.m01 + self.m11 * r.m11,
        )
    }
}

impl Mul<f64> for Mat2 {
    type Output = Mat2;
    #[inline]
    fn mul(self, s: f64) -> Mat2 {
        self.scale(c64(s, 0.0))
    }
}

impl Mul<Complex64> for Mat2 {
    type Output = Mat2;
    #[inline]
    fn mul(self, s: Complex64) -> Mat2 {
        self.scale(s)
    }
}

/// Hermitian inner product `⟨a|b⟩`, conjugate-linear in `a`.
#[inline]
pub fn inner(a: [Complex64; 2], b: [Complex64; 2]) -> Complex64 {
    a[0].conj() * b[0] + a[1].conj() * b[1]
}

/// Outer product `|a⟩⟨b|`.
#[inline]
pub fn outer(a: [Complex64; 2], b: [Complex64; 2]) -> Mat2 {
    Mat2::new(
        a[0] * b[0].conj(),
        a[0] * b[1].conj(),
        a[1] * b[0].conj(),
        a[1] * b[1].conj(),
    )
}

/// Euclidean norm of a ket.
#[inline]
pub fn ket_norm(v: [Complex64; 2]) -> f64 {
    libm::sqrt(v[0].norm_sqr() + v[1].norm_sqr())
}
