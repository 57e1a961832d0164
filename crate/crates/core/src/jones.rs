//! 2x2 complex Jones matrices.

use num_complex::Complex64;
use std::ops::{Add, AddAssign, Mul, Sub};

/// A 2x2 complex matrix acting on the (x, y) polarization components of an
/// optical field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jones {
    /// Row-major entries: m[row][col].
    pub m: [[Complex64; 2]; 2],
}

impl Jones {
    pub fn new(m00: Complex64, m01: Complex64, m10: Complex64, m11: Complex64) -> Self {
        Jones {
            m: [[m00, m01], [m10, m11]],
        }
    }

    pub fn zero() -> Self {
        Jones {
            m: [[Complex64::default(); 2]; 2],
        }
    }

    pub fn identity() -> Self {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::default();
        Jones::new(one, zero, zero, one)
    }

    /// Rotation by `theta` (real orthogonal).
    pub fn rotation(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Jones::new(
            Complex64::new(c, 0.0),
            Complex64::new(-s, 0.0),
            Complex64::new(s, 0.0),
            Complex64::new(c, 0.0),
        )
    }

    /// Diagonal phase plate diag(e^{j a}, e^{j b}).
    pub fn phase_plate(a: f64, b: f64) -> Self {
        let zero = Complex64::default();
        Jones::new(Complex64::from_polar(1.0, a), zero, zero, Complex64::from_polar(1.0, b))
    }

    pub fn det(&self) -> Complex64 {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    /// Squared Frobenius norm, sum of |m_ij|^2.
    pub fn frob_sq(&self) -> f64 {
        self.m
            .iter()
            .flatten()
            .map(|v| v.norm_sqr())
            .sum()
    }

    pub fn transpose(&self) -> Self {
        Jones::new(self.m[0][0], self.m[1][0], self.m[0][1], self.m[1][1])
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Jones::new(
            self.m[0][0] * s,
            self.m[0][1] * s,
            self.m[1][0] * s,
            self.m[1][1] * s,
        )
    }

    /// Apply to a field vector (x, y).
    pub fn apply(&self, x: Complex64, y: Complex64) -> (Complex64, Complex64) {
        (
            self.m[0][0] * x + self.m[0][1] * y,
            self.m[1][0] * x + self.m[1][1] * y,
        )
    }

    pub fn is_finite(&self) -> bool {
        self.m
            .iter()
            .flatten()
            .all(|v| v.re.is_finite() && v.im.is_finite())
    }
}

impl Mul for Jones {
    type Output = Jones;
    fn mul(self, rhs: Jones) -> Jones {
        let mut out = Jones::zero();
        for r in 0..2 {
            for c in 0..2 {
                out.m[r][c] = self.m[r][0] * rhs.m[0][c] + self.m[r][1] * rhs.m[1][c];
            }
        }
        out
    }
}

impl Add for Jones {
    type Output = Jones;
    fn add(self, rhs: Jones) -> Jones {
        let mut out = self;
        out += rhs;
        out
    }
}

impl AddAssign for Jones {
    fn add_assign(&mut self, rhs: Jones) {
        for r in 0..2 {
            for c in 0..2 {
                self.m[r][c] += rhs.m[r][c];
            }
        }
    }
}

impl Sub for Jones {
    type Output = Jones;
    fn sub(self, rhs: Jones) -> Jones {
        let mut out = self;
        for r in 0..2 {
            for c in 0..2 {
                out.m[r][c] -= rhs.m[r][c];
            }
        }
        out
    }
}
