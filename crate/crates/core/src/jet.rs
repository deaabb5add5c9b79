//! Scalar rings used as series coefficients.
//!
//! [`PhaseJet`] carries a complex value together with its derivative with
//! respect to the interferometer phase, so every quantity assembled from
//! jet-valued coefficients comes out with an exact first derivative.

use std::fmt::Debug;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use num_complex::Complex64;

/// Coefficient ring for [`TruncatedSeries`](crate::series::TruncatedSeries).
pub trait Scalar:
    Copy
    + Debug
    + PartialEq
    + Send
    + Sync
    + Add<Output = Self>
    + AddAssign
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + 'static
{
    fn zero() -> Self;
    fn one() -> Self;
    /// Embeds a phase-independent constant.
    fn constant(c: Complex64) -> Self;
    /// e^{iφ}; jets also carry its φ-derivative.
    fn phase(phi: f64) -> Self;
    fn scale(self, k: f64) -> Self;
    fn conj(self) -> Self;
    /// True only for the exact additive identity.
    fn is_zero(&self) -> bool;
    /// The plain complex value, discarding any derivative part.
    fn value(&self) -> Complex64;
}

impl Scalar for Complex64 {
    #[inline]
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    #[inline]
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    #[inline]
    fn constant(c: Complex64) -> Self {
        c
    }
    #[inline]
    fn phase(phi: f64) -> Self {
        Complex64::from_polar(1.0, phi)
    }
    #[inline]
    fn scale(self, k: f64) -> Self {
        self * k
    }
    #[inline]
    fn conj(self) -> Self {
        Complex64::conj(&self)
    }
    #[inline]
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    #[inline]
    fn value(&self) -> Complex64 {
        *self
    }
}

/// A complex number paired with its derivative in the phase φ.
///
/// Arithmetic follows the first-order jet rules, e.g.
/// `(a*b).deriv = a.value*b.deriv + a.deriv*b.value`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseJet {
    pub value: Complex64,
    pub deriv: Complex64,
}

impl PhaseJet {
    #[inline]
    pub fn new(value: Complex64, deriv: Complex64) -> Self {
        Self { value, deriv }
    }

    pub fn real(x: f64) -> Self {
        Self::constant(Complex64::new(x, 0.0))
    }

    pub fn exp(self) -> Self {
        let e = self.value.exp();
        Self { value: e, deriv: e * self.deriv }
    }

    pub fn recip(self) -> Self {
        let inv = self.value.inv();
        Self { value: inv, deriv: -self.deriv * inv * inv }
    }

    pub fn sqrt(self) -> Self {
        let r = self.value.sqrt();
        Self { value: r, deriv: self.deriv / (2.0 * r) }
    }
}

impl Scalar for PhaseJet {
    #[inline]
    fn zero() -> Self {
        Self::constant(Complex64::new(0.0, 0.0))
    }
    #[inline]
    fn one() -> Self {
        Self::constant(Complex64::new(1.0, 0.0))
    }
    #[inline]
    fn constant(c: Complex64) -> Self {
        Self { value: c, deriv: Complex64::new(0.0, 0.0) }
    }
    fn phase(phi: f64) -> Self {
        let e = Complex64::from_polar(1.0, phi);
        Self { value: e, deriv: Complex64::i() * e }
    }
    #[inline]
    fn scale(self, k: f64) -> Self {
        Self { value: self.value * k, deriv: self.deriv * k }
    }
    #[inline]
    fn conj(self) -> Self {
        // φ is real, so differentiation commutes with conjugation.
        Self { value: self.value.conj(), deriv: self.deriv.conj() }
    }
    #[inline]
    fn is_zero(&self) -> bool {
        Scalar::is_zero(&self.value) && Scalar::is_zero(&self.deriv)
    }
    #[inline]
    fn value(&self) -> Complex64 {
        self.value
    }
}

impl Add for PhaseJet {
    type Output = Self;
    #[inline]
    fn add(self, rhs: Self) -> Self {
        Self { value: self.value + rhs.value, deriv: self.deriv + rhs.deriv }
    }
}

impl AddAssign for PhaseJet {
    #[inline]
    fn add_assign(&mut self, rhs: Self) {
        self.value += rhs.value;
        self.deriv += rhs.deriv;
    }
}

impl Sub for PhaseJet {
    type Output = Self;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        Self { value: self.value - rhs.value, deriv: self.deriv - rhs.deriv }
    }
}

impl Mul for PhaseJet {
    type Output = Self;
    #[inline]
    fn mul(self, rhs: Self) -> Self {
        Self { value: self.value * rhs.value, deriv: self.value * rhs.deriv + self.deriv * rhs.value }
    }
}

impl Div for PhaseJet {
    type Output = Self;
    #[inline]
    fn div(self, rhs: Self) -> Self {
        self * rhs.recip()
    }
}

impl Neg for PhaseJet {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self { value: -self.value, deriv: -self.deriv }
    }
}

impl Mul<f64> for PhaseJet {
    type Output = Self;
    #[inline]
    fn mul(self, rhs: f64) -> Self {
        self.scale(rhs)
    }
}

impl Mul<Complex64> for PhaseJet {
    type Output = Self;
    #[inline]
    fn mul(self, rhs: Complex64) -> Self {
        Self { value: self.value * rhs, deriv: self.deriv * rhs }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol * (1.0 + b.norm())
    }

    #[test]
    fn product_rule() {
        let a = PhaseJet::new(Complex64::new(1.0, 2.0), Complex64::new(-0.5, 0.25));
        let b = PhaseJet::new(Complex64::new(0.3, -1.0), Complex64::new(2.0, 1.0));
        let p = a * b;
        assert_eq!(p.deriv, a.value * b.deriv + a.deriv * b.value);
    }

    #[test]
    fn exp_rule() {
        let a = PhaseJet::new(Complex64::new(0.2, 0.7), Complex64::new(1.5, -0.5));
        let e = a.exp();
        assert!(close(e.deriv, e.value * a.deriv, 1e-15));
    }

    #[test]
    fn phase_matches_finite_difference() {
        let phi = 0.731;
        let h = 1e-6;
        let fd = (Complex64::from_polar(1.0, phi + h) - Complex64::from_polar(1.0, phi - h)) / (2.0 * h);
        assert!(close(PhaseJet::phase(phi).deriv, fd, 1e-9));
    }

    #[test]
    fn quotient_and_sqrt() {
        let f = |phi: f64| {
            let j = PhaseJet::phase(phi) + PhaseJet::real(2.0);
            (PhaseJet::real(1.0) / j).sqrt()
        };
        let phi = 1.1;
        let h = 1e-6;
        let fd = (f(phi + h).value - f(phi - h).value) / (2.0 * h);
        assert!(close(f(phi).deriv, fd, 1e-8));
    }
}
