//! Quantum Fisher information of the lossless equivalent model and the
//! quantum Cramér–Rao bound.
//!
//! The probe is |ψ_φ⟩ = N₁ Ĉᵐ U_φ S|α,β⟩ with Ĉ = √τ a + i√(1−τ) b, i.e. the
//! subtraction pulled back through the variable beam splitter. Writing n̂ for
//! the number operator of a in the frame of U_φ S,
//!
//! ```text
//! D_{m,x₁,y₁,x₂,y₂} = ⟨â†^{x₁}â^{y₁} Ĉ†ᵐĈᵐ â†^{x₂}â^{y₂}⟩
//! ⟨ψ'|ψ'⟩ = N₁²D₁₁₁₁ − iN₁N₁'D₁₁₀₀ + iN₁N₁'D₀₀₁₁ + N₁'²D₀₀₀₀
//! ⟨ψ'|ψ⟩  = −iN₁²D₁₁₀₀ + N₁N₁'D₀₀₀₀
//! F       = 4[⟨ψ'|ψ'⟩ − |⟨ψ'|ψ⟩|²]
//! ```

use num_complex::Complex64;

use crate::detection::{check_real, ANNIHILATION_FLOOR};
use crate::error::{Error, Result};
use crate::jet::PhaseJet;
use crate::model::{build_z1, vars::*, ExponentForm, Params};
use crate::series::{MultiIndex, TruncatedSeries};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QfiResult {
    pub f: f64,
    pub qcrb: f64,
    /// |Re⟨ψ'|ψ⟩|, zero for a normalized state.
    pub braket_check: f64,
    /// |⟨ψ|ψ'⟩ − ⟨ψ'|ψ⟩*| computed from the mirrored derivative.
    pub conjugate_check: f64,
}

/// 1/√(vF).
pub fn qcrb(f: f64, v: u32) -> Result<f64> {
    if !(f > 0.0) {
        return Err(Error::Domain(format!("QCRB needs F > 0, got {f}")));
    }
    if v == 0 {
        return Err(Error::usage("v", "must be >= 1"));
    }
    Ok(1.0 / (v as f64 * f).sqrt())
}

pub fn qfi_ideal(p: &Params) -> Result<QfiResult> {
    qfi_ideal_with(p, ExponentForm::Canonical)
}

/// As [`qfi_ideal`], with a choice of exponent form.
pub fn qfi_ideal_with(p: &Params, form: ExponentForm) -> Result<QfiResult> {
    p.validate()?;
    let z: TruncatedSeries<PhaseJet> = build_z1(p, form)?;
    let e = z.exp()?;
    let m = p.m_u8();
    let d = |x1: u8, y1: u8, x2: u8, y2: u8| {
        e.derivative_at_origin(&MultiIndex::from_pairs(&[(S, m), (T, m), (C, x1), (D, y1), (P, x2), (H, y2)]))
    };

    let d0 = d(0, 0, 0, 0)?;
    let d0_re = check_real("D_{m,0,0,0,0}", d0.value)?;
    if d0_re <= ANNIHILATION_FLOOR {
        return Err(Error::Annihilated { normalizer: d0_re });
    }
    let d0_dphi = check_real("dD_{m,0,0,0,0}/dphi", d0.deriv)?;
    let n1 = d0_re.powf(-0.5);
    let n1p = -0.5 * d0_re.powf(-1.5) * d0_dphi;

    let d1100 = d(1, 1, 0, 0)?.value;
    let d0011 = d(0, 0, 1, 1)?.value;
    let d1111 = d(1, 1, 1, 1)?.value;
    let i = Complex64::i();

    let dd =
        d1111 * (n1 * n1) - i * d1100 * (n1 * n1p) + i * d0011 * (n1 * n1p) + Complex64::new(n1p * n1p * d0_re, 0.0);
    let dd = check_real("<psi'|psi'>", dd)?;
    let dpsi = -i * d1100 * (n1 * n1) + Complex64::new(n1 * n1p * d0_re, 0.0);
    let psid = i * d0011 * (n1 * n1) + Complex64::new(n1 * n1p * d0_re, 0.0);

    let mut f = 4.0 * (dd - dpsi.norm_sqr());
    if f < 0.0 {
        if f < -1e-10 * dd.abs().max(1.0) {
            return Err(Error::Consistency { what: "ideal QFI", residue: f });
        }
        f = 0.0;
    }
    let qcrb = if f > 0.0 { qcrb(f, p.v)? } else { f64::INFINITY };
    Ok(QfiResult { f, qcrb, braket_check: dpsi.re.abs(), conjugate_check: (psid - dpsi.conj()).norm() })
}
