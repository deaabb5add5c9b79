//! Quantum Fisher information under photon loss in mode a, bounded through
//! a purification of the loss channel.
//!
//! The Kraus family of a beam splitter with transmittance η is parametrized
//! by λ (λ = 0 places the loss after the phase shift, λ = −1 before it). For
//! the subtracted probe |Ψ⟩ = N₂ O S|α,β⟩, O = (√(τη) e^{iφ} a + i√(1−τ) b)ᵐ,
//! the bound is
//!
//! ```text
//! C_Q(λ) = 4[F₀ + C²V + CW + B⟨n⟩]
//! C = 1 − (1+λ)(1−η),   B = (1+λ)²η(1−η)
//! F₀ = ⟨Ψ̃|Ψ̃⟩ − |⟨Ψ|Ψ̃⟩|²,   V = ⟨n²⟩ − ⟨n⟩²
//! W = i(⟨O′†nO⟩ − c.c.) + i⟨n⟩(⟨O†O′⟩ − c.c.)
//! ```
//!
//! where O′ = ∂φO and the brackets are normalized. C_Q is quadratic in
//! μ = 1+λ, so the minimum F_L is closed form:
//!
//! ```text
//! μ*  = (2V + W) / (2[(1−η)V + η⟨n⟩])
//! F_L = 4(F₀ + V + W) − (1−η)(2V + W)² / ((1−η)V + η⟨n⟩)
//! ```
//!
//! Every call also minimizes C_Q numerically and fails if the two disagree.

use num_complex::Complex64;

use crate::detection::{check_real, ANNIHILATION_FLOOR};
use crate::error::{Error, Result};
use crate::model::{build_z2, vars::*, ExponentForm, Params};
use crate::optimize::minimize_widening;
use crate::series::{MultiIndex, TruncatedSeries, VariableId};

/// Default window for the numeric λ search.
pub const LAMBDA_WINDOW: (f64, f64) = (-2.0, 1.0);
const CONSISTENCY_RTOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KrausCoeffs {
    /// Coefficient of n² in H₁.
    pub a: f64,
    /// Coefficient of n in H₁.
    pub b: f64,
    /// Coefficient of n in H₂.
    pub c: f64,
}

pub fn kraus_coeffs(eta: f64, lambda: f64) -> KrausCoeffs {
    let mu = 1.0 + lambda;
    let c = 1.0 - mu * (1.0 - eta);
    KrausCoeffs { a: c * c, b: mu * mu * eta * (1.0 - eta), c }
}

/// Unnormalized expectations in S|α,β⟩ (n2 is the inverse norm).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LossyBlocks {
    pub n2: f64,
    pub d_odag_d_o: Complex64,
    pub odag_d_o: Complex64,
    pub d_odag_na_o: Complex64,
    pub na: f64,
    pub na2: f64,
}

/// Normalized ingredients of C_Q.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LossyMoments {
    pub f0: f64,
    pub var_n: f64,
    pub w: f64,
    pub mean_n: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LossyQfiResult {
    pub f_lossy: f64,
    /// Minimizer of C_Q from the closed form; `None` when C_Q does not depend on λ.
    pub lambda_opt: Option<f64>,
    pub f_numeric: f64,
    pub lambda_numeric: f64,
    /// The numeric search left the default window.
    pub widened: bool,
}

fn p_index(m: u8, k: u8, l: u8) -> MultiIndex {
    MultiIndex::from_pairs(&[(S, m), (T, m), (X, k), (Y, l)])
}

fn monomial(z: &TruncatedSeries<Complex64>, pairs: &[(VariableId, u8)]) -> TruncatedSeries<Complex64> {
    let mut out = z.empty_like();
    out.add_monomial(pairs, Complex64::new(1.0, 0.0));
    out
}

pub fn lossy_building_blocks(p: &Params) -> Result<LossyBlocks> {
    p.validate()?;
    let z: TruncatedSeries<Complex64> = build_z2(p, ExponentForm::Canonical)?;
    let e = z.exp()?;
    let m = p.m_u8();
    let pm = |k, l| e.derivative_at_origin(&p_index(m, k, l));
    let pre = |pairs: &[(VariableId, u8)], k, l| -> Result<Complex64> {
        monomial(&z, pairs).mul(&e)?.derivative_at_origin(&p_index(m, k, l))
    };

    let norm = check_real("P_{m,0,0}", pm(0, 0)?)?;
    if norm <= ANNIHILATION_FLOOR {
        return Err(Error::Annihilated { normalizer: norm });
    }
    let ephi = Complex64::from_polar(1.0, p.phi);
    let i = Complex64::i();
    let k = (p.tau * p.eta).sqrt();
    let p11 = pm(1, 1)?;
    Ok(LossyBlocks {
        n2: 1.0 / norm,
        d_odag_d_o: pre(&[(S, 1), (T, 1)], 1, 1)? * (p.tau * p.eta),
        odag_d_o: i * ephi * k * pre(&[(S, 1)], 0, 1)?,
        d_odag_na_o: -i * ephi.conj() * k * pre(&[(T, 1)], 2, 1)?,
        na: check_real("<n_a>", p11)?,
        na2: check_real("<n_a^2>", pm(2, 2)? + p11)?,
    })
}

impl LossyBlocks {
    pub fn moments(&self) -> Result<LossyMoments> {
        let n2 = self.n2;
        let e_dd = check_real("<O'^+ O'>", self.d_odag_d_o)? * n2;
        let e_od = self.odag_d_o * n2;
        let e_dno = self.d_odag_na_o * n2;
        let mean_n = self.na * n2;
        let var_n = self.na2 * n2 - mean_n * mean_n;
        let i = Complex64::i();
        let w = i * (e_dno - e_dno.conj()) + i * mean_n * (e_od - e_od.conj());
        Ok(LossyMoments { f0: e_dd - e_od.norm_sqr(), var_n, w: check_real("W", w)?, mean_n })
    }
}

impl LossyMoments {
    pub fn cq(&self, eta: f64, lambda: f64) -> f64 {
        let k = kraus_coeffs(eta, lambda);
        4.0 * (self.f0 + k.a * self.var_n + k.c * self.w + k.b * self.mean_n)
    }

    /// (F_L, λ*) from the closed form.
    pub fn closed_form(&self, eta: f64) -> (f64, Option<f64>) {
        let loss = 1.0 - eta;
        let lin = 2.0 * self.var_n + self.w;
        let den = loss * self.var_n + eta * self.mean_n;
        let full = 4.0 * (self.f0 + self.var_n + self.w);
        let scale = self.var_n.abs() + self.mean_n.abs() + 1e-300;
        if loss == 0.0 || den.abs() <= 1e-14 * scale {
            return (full, None);
        }
        (full - loss * lin * lin / den, Some(lin / (2.0 * den) - 1.0))
    }
}

pub fn cq_of_lambda(p: &Params, lambda: f64) -> Result<f64> {
    let c = lossy_building_blocks(p)?.moments()?.cq(p.eta, lambda);
    if c < -1e-10 {
        return Err(Error::Consistency { what: "C_Q", residue: c });
    }
    Ok(c.max(0.0))
}

pub fn qfi_lossy(p: &Params) -> Result<LossyQfiResult> {
    let mom = lossy_building_blocks(p)?.moments()?;
    let (f_lossy, lambda_opt) = mom.closed_form(p.eta);
    let num = minimize_widening(|l| mom.cq(p.eta, l), LAMBDA_WINDOW.0, LAMBDA_WINDOW.1, 61, 1e-10, 60);
    let tol = CONSISTENCY_RTOL * f_lossy.abs().max(num.fx.abs()) + 1e-12;
    if (f_lossy - num.fx).abs() > tol {
        return Err(Error::Consistency {
            what: "closed-form vs numeric lambda minimization",
            residue: f_lossy - num.fx,
        });
    }
    Ok(LossyQfiResult {
        f_lossy: f_lossy.max(0.0),
        lambda_opt,
        f_numeric: num.fx,
        lambda_numeric: num.x,
        widened: num.widened,
    })
}
