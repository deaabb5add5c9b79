//! Homodyne phase sensitivity of the photon-subtracted output.
//!
//! With Ĉ the Heisenberg image of the detected mode, ⟨Ĉ†ᵏĈˡ⟩ is read off
//! the detection exponent as G_{k,l} = ∂ₜᵏ∂ₛˡ e^{Z₀}|₀, and the moments of
//! the subtracted state are G_{m+k,m+l}/G_{m,m}. The quadrature is
//! X = (a + a†)/√2 and
//!
//! ```text
//! Δφ = √(⟨X²⟩ − ⟨X⟩²) / |∂φ⟨X⟩|
//! ```
//!
//! where ∂φ comes from the φ-jets carried through the series.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::jet::{PhaseJet, Scalar};
use crate::model::{build_z0, vars, ExponentForm, LossSymbol, Params};
use crate::series::{MultiIndex, TruncatedSeries};

/// Normalizers below this count as an annihilated state.
pub const ANNIHILATION_FLOOR: f64 = 1e-14;
/// Largest imaginary part tolerated on a quantity that must be real.
pub const IMAG_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HomodyneResult {
    pub mean_x: f64,
    pub dmean_dphi: f64,
    pub var_x: f64,
    /// `f64::INFINITY` when ⟨X⟩ is stationary in φ.
    pub delta_phi: f64,
    pub norm_gmm: f64,
}

pub(crate) fn check_real(what: &'static str, z: Complex64) -> Result<f64> {
    if z.im.abs() > IMAG_TOLERANCE * z.re.abs().max(1.0) {
        return Err(Error::Consistency { what, residue: z.im });
    }
    Ok(z.re)
}

fn g_index(k: u32, l: u32) -> MultiIndex {
    MultiIndex::from_pairs(&[(vars::T, k as u8), (vars::S, l as u8)])
}

fn cap_for(p: &Params, extra: u32) -> Result<u8> {
    u8::try_from(p.m + extra).map_err(|_| Error::usage("m", "derivative order too large"))
}

/// ⟨a†ᵏaˡ⟩ of the normalized subtracted output state.
pub fn subtracted_moment(p: &Params, k: u32, l: u32) -> Result<Complex64> {
    p.validate()?;
    let cap = cap_for(p, k.max(l))?;
    let z: TruncatedSeries<Complex64> = build_z0(p, LossSymbol::T, cap, ExponentForm::Canonical)?;
    let e = z.exp()?;
    let norm = e.derivative_at_origin(&g_index(p.m, p.m))?;
    let norm = check_real("G_{m,m}", norm)?;
    if norm <= ANNIHILATION_FLOOR {
        return Err(Error::Annihilated { normalizer: norm });
    }
    Ok(e.derivative_at_origin(&g_index(p.m + k, p.m + l))? / norm)
}

/// Quadrature statistics from an already built detection exponent with
/// caps of at least m+2. Exposed so callers can audit modified exponents.
pub fn homodyne_from_exponent(m: u32, z: &TruncatedSeries<PhaseJet>) -> Result<HomodyneResult> {
    let e = z.exp()?;
    let g = |k: u32, l: u32| e.derivative_at_origin(&g_index(k, l));
    let norm = g(m, m)?;
    let norm_re = check_real("G_{m,m}", norm.value)?;
    if norm_re <= ANNIHILATION_FLOOR {
        return Err(Error::Annihilated { normalizer: norm_re });
    }
    let inv = norm.recip();
    let mean = (g(m, m + 1)? + g(m + 1, m)?) * inv * std::f64::consts::FRAC_1_SQRT_2;
    let second = ((g(m, m + 2)? + g(m + 2, m)? + g(m + 1, m + 1)?.scale(2.0)) * inv + PhaseJet::one()).scale(0.5);
    let mean_x = check_real("<X>", mean.value)?;
    let dmean_dphi = check_real("d<X>/dphi", mean.deriv)?;
    let second = check_real("<X^2>", second.value)?;
    let var_x = second - mean_x * mean_x;
    if var_x < -IMAG_TOLERANCE * second.abs().max(1.0) {
        return Err(Error::Consistency { what: "Var(X)", residue: var_x });
    }
    let var_x = var_x.max(0.0);
    let sd = var_x.sqrt();
    // Treat a slope at rounding level as exactly stationary.
    let stationary = dmean_dphi.abs() <= 1e-13 * sd.max(mean_x.abs()).max(1.0);
    let delta_phi = if stationary { f64::INFINITY } else { sd / dmean_dphi.abs() };
    Ok(HomodyneResult { mean_x, dmean_dphi, var_x, delta_phi, norm_gmm: norm_re })
}

pub fn homodyne_stats(p: &Params) -> Result<HomodyneResult> {
    p.validate()?;
    let z = build_z0::<PhaseJet>(p, LossSymbol::T, cap_for(p, 2)?, ExponentForm::Canonical)?;
    homodyne_from_exponent(p.m, &z)
}

/// Δφ, or `f64::INFINITY` at a stationary point.
pub fn phase_sensitivity(p: &Params) -> Result<f64> {
    Ok(homodyne_stats(p)?.delta_phi)
}
