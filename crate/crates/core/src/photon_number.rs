//! Mean photon number inside the interferometer, N_T = ⟨a†a + b†b⟩ in
//! N₃ Ĉᵐ U_φ B_T S|α,β,0⟩, and the limits 1/√N_T and 1/N_T.

use num_complex::Complex64;

use crate::detection::{check_real, ANNIHILATION_FLOOR};
use crate::error::{Error, Result};
use crate::model::{build_z3, vars::*, ExponentForm, Params};
use crate::series::{MultiIndex, TruncatedSeries};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhotonNumberResult {
    pub n_total: f64,
    /// 1/√N_T, infinite when N_T = 0.
    pub sql: f64,
    /// 1/N_T, infinite when N_T = 0.
    pub hl: f64,
}

impl PhotonNumberResult {
    pub fn from_total(n_total: f64) -> Self {
        if n_total > 0.0 {
            Self { n_total, sql: n_total.sqrt().recip(), hl: n_total.recip() }
        } else {
            Self { n_total, sql: f64::INFINITY, hl: f64::INFINITY }
        }
    }
}

pub fn internal_photon_number(p: &Params) -> Result<PhotonNumberResult> {
    internal_photon_number_with(p, ExponentForm::Canonical)
}

/// As [`internal_photon_number`], with a choice of exponent form.
pub fn internal_photon_number_with(p: &Params, form: ExponentForm) -> Result<PhotonNumberResult> {
    p.validate()?;
    let z: TruncatedSeries<Complex64> = build_z3(p, form)?;
    let e = z.exp()?;
    let m = p.m_u8();
    let q = |l: [u8; 4]| {
        e.derivative_at_origin(&MultiIndex::from_pairs(&[
            (S, m),
            (T, m),
            (L1, l[0]),
            (L2, l[1]),
            (L3, l[2]),
            (L4, l[3]),
        ]))
    };
    let norm = check_real("Q_{m,0,0,0,0}", q([0, 0, 0, 0])?)?;
    if norm <= ANNIHILATION_FLOOR {
        return Err(Error::Annihilated { normalizer: norm });
    }
    let n = check_real("N_T", (q([1, 1, 0, 0])? + q([0, 0, 1, 1])?) / norm)?;
    if n < -1e-10 * n.abs().max(1.0) {
        return Err(Error::Consistency { what: "N_T", residue: n });
    }
    Ok(PhotonNumberResult::from_total(n.max(0.0)))
}
