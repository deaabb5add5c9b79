//! Parameters of the interferometer and the generating-function exponents.
//!
//! The optical pipeline acting on |α⟩_a|β⟩_b|0⟩_v is
//!
//! ```text
//! aᵐ · B_v · U_φ · B_T · S(ξ)
//! ```
//!
//! with S(ξ) = exp(ξ*ab − ξa†b†), ξ = g e^{iθ}; B_T = exp[θ_T(a†v − av†)],
//! cos θ_T = √T; U_φ = e^{iφ a†a}; B_v = exp[iθ_B(a†b + ab†)], cos θ_B = √τ,
//! so that B_v† a B_v = √τ a + i√(1−τ) b.
//!
//! Two forms of every exponent are provided:
//! - [`ExponentForm::Canonical`] is assembled from the mode maps above by
//!   [`crate::gaussian::ordered_exponent`] and is what the physics modules use;
//! - [`ExponentForm::Reference`] evaluates the closed-form coefficient tables
//!   (X, y, f) term by term and exists so the two can be audited against each
//!   other.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gaussian::{heisenberg, ordered_exponent, LinearForm, ModeMap};
use crate::jet::Scalar;
use crate::series::{TruncatedSeries, VariableId};

/// Default upper bound on the subtraction order m.
pub const DEFAULT_MAX_M: u32 = 6;
/// Hard limit; beyond this the factorial weights lose too much precision.
pub const HARD_MAX_M: u32 = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Scheme {
    /// Coherent light in mode a, vacuum in b.
    A,
    /// Vacuum in a, coherent light in b.
    B,
}

/// Which transmittance plays the role of the loss beam splitter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LossSymbol {
    T,
    Eta,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ExponentForm {
    #[default]
    Canonical,
    Reference,
}

/// One configuration of the interferometer.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Params {
    pub alpha: f64,
    pub beta: f64,
    pub g: f64,
    pub theta: f64,
    pub phi: f64,
    pub tau: f64,
    #[serde(rename = "T")]
    pub t_loss: f64,
    pub eta: f64,
    pub m: u32,
    /// Number of repetitions in the Cramér–Rao bound.
    pub v: u32,
}

impl Default for Params {
    fn default() -> Self {
        Self::scheme(Scheme::A)
    }
}

impl Params {
    /// Unit amplitude in the scheme's input mode, g=1, θ=π, φ=π/2, τ=0.5, lossless, m=0.
    pub fn scheme(scheme: Scheme) -> Self {
        let (alpha, beta) = match scheme {
            Scheme::A => (1.0, 0.0),
            Scheme::B => (0.0, 1.0),
        };
        Self { alpha, beta, g: 1.0, theta: PI, phi: FRAC_PI_2, tau: 0.5, t_loss: 1.0, eta: 1.0, m: 0, v: 1 }
    }

    /// The scheme implied by the amplitudes, if any.
    pub fn detect_scheme(&self) -> Option<Scheme> {
        match (self.alpha > 0.0, self.beta > 0.0) {
            (true, false) => Some(Scheme::A),
            (false, true) => Some(Scheme::B),
            _ => None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.validate_with_max_m(DEFAULT_MAX_M)
    }

    pub fn validate_with_max_m(&self, max_m: u32) -> Result<()> {
        let finite = [
            ("alpha", self.alpha),
            ("beta", self.beta),
            ("g", self.g),
            ("theta", self.theta),
            ("phi", self.phi),
            ("tau", self.tau),
            ("T", self.t_loss),
            ("eta", self.eta),
        ];
        for (name, x) in finite {
            if !x.is_finite() {
                return Err(Error::usage(name, format!("must be finite, got {x}")));
            }
        }
        for (name, x) in [("alpha", self.alpha), ("beta", self.beta), ("g", self.g)] {
            if x < 0.0 {
                return Err(Error::usage(name, format!("must be >= 0, got {x}")));
            }
        }
        for (name, x) in [("tau", self.tau), ("T", self.t_loss), ("eta", self.eta)] {
            if !(0.0..=1.0).contains(&x) {
                return Err(Error::usage(name, format!("must lie in [0, 1], got {x}")));
            }
        }
        let limit = max_m.min(HARD_MAX_M);
        if self.m > limit {
            return Err(Error::usage("m", format!("must be <= {limit}, got {}", self.m)));
        }
        if self.v == 0 {
            return Err(Error::usage("v", "must be >= 1"));
        }
        Ok(())
    }

    pub(crate) fn m_u8(&self) -> u8 {
        self.m.min(HARD_MAX_M) as u8
    }

    fn transmittance(&self, loss: LossSymbol) -> f64 {
        match loss {
            LossSymbol::T => self.t_loss,
            LossSymbol::Eta => self.eta,
        }
    }
}

fn re<S: Scalar>(x: f64) -> S {
    S::constant(Complex64::new(x, 0.0))
}

fn cx<S: Scalar>(z: Complex64) -> S {
    S::constant(z)
}

fn i_unit<S: Scalar>() -> S {
    S::constant(Complex64::i())
}

/// Detection coefficients; with `LossSymbol::Eta` they are the lossy-QFI variant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoeffSetDetection<S: Scalar = Complex64> {
    pub x1: S,
    pub x2: S,
    pub x3: S,
    pub x4: S,
}

pub fn coeffs_detection<S: Scalar>(p: &Params, loss: LossSymbol) -> CoeffSetDetection<S> {
    let tr = p.transmittance(loss);
    let (sh, ch) = (p.g.sinh(), p.g.cosh());
    let ephi = S::phase(p.phi);
    let eth: S = cx(Complex64::from_polar(1.0, p.theta));
    let st: f64 = (p.tau * tr).sqrt();
    let r: f64 = (1.0 - p.tau).sqrt();
    CoeffSetDetection {
        x1: -i_unit::<S>() * ephi * eth * re(st * r * sh * ch),
        x2: ephi * re(st * ch) - i_unit::<S>() * eth * re(r * sh),
        x3: i_unit::<S>() * re(r * ch) - ephi * eth * re(st * sh),
        x4: re((1.0 - p.tau + p.tau * tr) * sh * sh),
    }
}

/// Coefficients of the ideal-QFI exponent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoeffSetQfiIdeal<S: Scalar = Complex64> {
    pub y1: S,
    pub y2: S,
    pub y3: S,
    pub y4: S,
    pub y5: S,
    pub y6: S,
}

pub fn coeffs_qfi_ideal<S: Scalar>(p: &Params) -> CoeffSetQfiIdeal<S> {
    let (sh, ch) = (p.g.sinh(), p.g.cosh());
    let emphi = S::phase(p.phi).conj();
    let emth: S = cx(Complex64::from_polar(1.0, -p.theta));
    let st = p.tau.sqrt();
    let r = (1.0 - p.tau).sqrt();
    CoeffSetQfiIdeal {
        y1: emphi * re(ch),
        y2: -(emphi * emth * re(sh)),
        y3: emphi * re(st * ch),
        y4: i_unit::<S>() * emth * re(r * sh),
        y5: -(i_unit::<S>() * re(r * ch)),
        y6: -(emphi * emth * re(st * sh)),
    }
}

/// Extra coefficients of the lossy-QFI exponent (the X₁…X₄ part is
/// [`coeffs_detection`] with `LossSymbol::Eta`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoeffSetQfiLossy<S: Scalar = Complex64> {
    pub base: CoeffSetDetection<S>,
    pub x5: S,
    pub x6: S,
}

pub fn coeffs_qfi_lossy<S: Scalar>(p: &Params) -> CoeffSetQfiLossy<S> {
    let (sh, ch) = (p.g.sinh(), p.g.cosh());
    let eth: S = cx(Complex64::from_polar(1.0, p.theta));
    CoeffSetQfiLossy {
        base: coeffs_detection(p, LossSymbol::Eta),
        x5: S::phase(p.phi) * re((p.tau * p.eta).sqrt() * sh * sh),
        x6: -(i_unit::<S>() * eth * re((1.0 - p.tau).sqrt() * sh * ch)),
    }
}

/// Coefficients of the photon-number exponent. `f11` has no closed form in
/// the coefficient table and is filled with the value implied by the
/// Heisenberg map of b, namely cosh g.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoeffSetPhotonNumber<S: Scalar = Complex64> {
    pub f: [S; 11],
}

pub fn coeffs_photon_number<S: Scalar>(p: &Params) -> CoeffSetPhotonNumber<S> {
    let (sh, ch) = (p.g.sinh(), p.g.cosh());
    let ephi = S::phase(p.phi);
    let eth: S = cx(Complex64::from_polar(1.0, p.theta));
    let t = p.t_loss;
    let r = (1.0 - p.tau).sqrt();
    let i = i_unit::<S>();
    CoeffSetPhotonNumber {
        f: [
            re(p.tau.sqrt() * t * sh * sh),
            -(i * ephi * eth * re(t.sqrt() * r * sh * ch)),
            i * re(r * sh * sh),
            -(ephi * eth * re((p.tau * t).sqrt() * sh * ch)),
            re(t * sh * sh),
            -(ephi * eth * re(t.sqrt() * sh * ch)),
            re(sh * sh),
            ephi * re(t.sqrt() * ch),
            -(eth * re(sh)),
            -(ephi * eth * re(t.sqrt() * sh)),
            re(ch),
        ],
    }
}

// ---------------------------------------------------------------------------
// Variable registries

pub mod vars {
    use crate::series::VariableId;

    pub const S: VariableId = VariableId(0);
    pub const T: VariableId = VariableId(1);
    // ideal QFI
    pub const C: VariableId = VariableId(2);
    pub const D: VariableId = VariableId(3);
    pub const P: VariableId = VariableId(4);
    pub const H: VariableId = VariableId(5);
    // lossy QFI
    pub const X: VariableId = VariableId(2);
    pub const Y: VariableId = VariableId(3);
    // photon number
    pub const L1: VariableId = VariableId(2);
    pub const L2: VariableId = VariableId(3);
    pub const L3: VariableId = VariableId(4);
    pub const L4: VariableId = VariableId(5);
}

use vars::*;

pub fn registry_z0<S: Scalar>(cap: u8) -> TruncatedSeries<S> {
    TruncatedSeries::zero(&[("s", cap), ("t", cap)]).expect("two variables")
}

pub fn registry_z1<S: Scalar>(cap: u8) -> TruncatedSeries<S> {
    TruncatedSeries::zero(&[("s", cap), ("t", cap), ("c", 1), ("d", 1), ("p", 1), ("h", 1)]).expect("six variables")
}

pub fn registry_z2<S: Scalar>(cap: u8) -> TruncatedSeries<S> {
    TruncatedSeries::zero(&[("s", cap), ("t", cap), ("x", 2), ("y", 2)]).expect("four variables")
}

pub fn registry_z3<S: Scalar>(cap: u8) -> TruncatedSeries<S> {
    TruncatedSeries::zero(&[("s", cap), ("t", cap), ("l1", 1), ("l2", 1), ("l3", 1), ("l4", 1)]).expect("six variables")
}

// ---------------------------------------------------------------------------
// Canonical exponents

const A_MODE: usize = 0;
const B_MODE: usize = 1;

fn coherent(p: &Params) -> [f64; 3] {
    [p.alpha, p.beta, 0.0]
}

/// √τ a + i√(1−τ) b, the a-mode output of the variable beam splitter.
fn vbs_output<S: Scalar>(tau: f64) -> LinearForm<S> {
    let mut f = LinearForm::zero();
    f.ann[A_MODE] = re(tau.sqrt());
    f.ann[B_MODE] = i_unit::<S>() * re((1.0 - tau).max(0.0).sqrt());
    f
}

/// U_φ · B(tr) · S as a Heisenberg chain.
fn detection_chain<S: Scalar>(p: &Params, transmittance: f64) -> [ModeMap<S>; 3] {
    [ModeMap::phase_shift(p.phi), ModeMap::loss_splitter(transmittance), ModeMap::two_mode_squeezer(p.g, p.theta)]
}

fn z0_canonical<S: Scalar>(p: &Params, loss: LossSymbol, cap: u8) -> Result<TruncatedSeries<S>> {
    let chain = detection_chain::<S>(p, p.transmittance(loss));
    let c = heisenberg(&chain, &vbs_output(p.tau));
    ordered_exponent(&registry_z0(cap), &[(T, c.adjoint()), (S, c)], &coherent(p))
}

fn z1_canonical<S: Scalar>(p: &Params) -> Result<TruncatedSeries<S>> {
    let chain = [ModeMap::phase_shift(p.phi), ModeMap::two_mode_squeezer(p.g, p.theta)];
    let c = heisenberg(&chain, &vbs_output(p.tau));
    let a = heisenberg(&chain, &LinearForm::mode(A_MODE));
    ordered_exponent(
        &registry_z1(p.m_u8()),
        &[(C, a.adjoint()), (D, a), (T, c.adjoint()), (S, c), (P, a.adjoint()), (H, a)],
        &coherent(p),
    )
}

/// The operator whose m-th power is applied in the lossy-QFI construction,
/// √(τη) e^{iφ} a + i√(1−τ) b, in the frame of S.
fn lossy_lowering<S: Scalar>(p: &Params) -> LinearForm<S> {
    let mut l = LinearForm::zero();
    l.ann[A_MODE] = S::phase(p.phi) * re((p.tau * p.eta).sqrt());
    l.ann[B_MODE] = i_unit::<S>() * re((1.0 - p.tau).max(0.0).sqrt());
    l
}

fn z2_canonical<S: Scalar>(p: &Params) -> Result<TruncatedSeries<S>> {
    let sq = [ModeMap::two_mode_squeezer(p.g, p.theta)];
    let l = heisenberg(&sq, &lossy_lowering(p));
    let a = heisenberg(&sq, &LinearForm::mode(A_MODE));
    ordered_exponent(&registry_z2(p.m_u8()), &[(X, a.adjoint()), (T, l.adjoint()), (S, l), (Y, a)], &coherent(p))
}

fn z3_canonical<S: Scalar>(p: &Params) -> Result<TruncatedSeries<S>> {
    let chain = detection_chain::<S>(p, p.t_loss);
    let c = heisenberg(&chain, &vbs_output(p.tau));
    let a = heisenberg(&chain, &LinearForm::mode(A_MODE));
    let b = heisenberg(&chain, &LinearForm::mode(B_MODE));
    ordered_exponent(
        &registry_z3(p.m_u8()),
        &[(T, c.adjoint()), (L1, a.adjoint()), (L2, a), (L3, b.adjoint()), (L4, b), (S, c)],
        &coherent(p),
    )
}

// ---------------------------------------------------------------------------
// Reference exponents built from the coefficient tables

fn push<S: Scalar>(z: &mut TruncatedSeries<S>, pairs: &[(VariableId, u8)], coeff: S) {
    z.add_monomial(pairs, coeff);
}

fn z0_terms<S: Scalar>(z: &mut TruncatedSeries<S>, p: &Params, x: &CoeffSetDetection<S>) {
    let (al, be) = (re::<S>(p.alpha), re::<S>(p.beta));
    push(z, &[(S, 2)], x.x1);
    push(z, &[(T, 2)], x.x1.conj());
    push(z, &[(S, 1)], al * x.x2);
    push(z, &[(T, 1)], al * x.x2.conj());
    push(z, &[(S, 1)], be * x.x3);
    push(z, &[(T, 1)], be * x.x3.conj());
    push(z, &[(S, 1), (T, 1)], x.x4);
}

fn z0_reference<S: Scalar>(p: &Params, loss: LossSymbol, cap: u8) -> TruncatedSeries<S> {
    let mut z = registry_z0(cap);
    z0_terms(&mut z, p, &coeffs_detection(p, loss));
    z
}

fn z1_reference<S: Scalar>(p: &Params) -> TruncatedSeries<S> {
    let mut z = registry_z1(p.m_u8());
    // The embedded Z0 is the lossless one except for its st term, which is
    // (1−τ) sinh²g here; the remaining τ sinh²g arrives through y6 y6*.
    let lossless = Params { t_loss: 1.0, ..*p };
    let mut x = coeffs_detection::<S>(&lossless, LossSymbol::T);
    x.x4 = re((1.0 - p.tau) * p.g.sinh().powi(2));
    z0_terms(&mut z, p, &x);
    let y = coeffs_qfi_ideal::<S>(p);
    let (al, be) = (re::<S>(p.alpha), re::<S>(p.beta));
    let cj = |v: S| v.conj();
    push(&mut z, &[(P, 1), (S, 1)], y.y1 * cj(y.y3));
    push(&mut z, &[(T, 1), (P, 1)], y.y1 * y.y4);
    push(&mut z, &[(D, 1), (P, 1)], cj(y.y1) * y.y1);
    push(&mut z, &[(D, 1), (T, 1)], cj(y.y1) * y.y3);
    push(&mut z, &[(D, 1), (S, 1)], cj(y.y1) * cj(y.y4));
    push(&mut z, &[(H, 1), (P, 1)], cj(y.y2) * y.y2);
    push(&mut z, &[(H, 1), (S, 1)], cj(y.y2) * cj(y.y5));
    push(&mut z, &[(T, 1), (H, 1)], y.y6 * cj(y.y2));
    push(&mut z, &[(T, 1), (S, 1)], y.y6 * cj(y.y6));
    push(&mut z, &[(C, 1), (D, 1)], y.y2 * cj(y.y2));
    push(&mut z, &[(C, 1), (H, 1)], y.y2 * cj(y.y2));
    push(&mut z, &[(C, 1), (T, 1)], y.y2 * y.y5);
    push(&mut z, &[(C, 1), (S, 1)], y.y2 * cj(y.y6));
    for (v, k) in [(C, y.y1), (P, y.y1), (D, cj(y.y1)), (H, cj(y.y1))] {
        push(&mut z, &[(v, 1)], k * al);
    }
    for (v, k) in [(C, y.y2), (P, y.y2), (D, cj(y.y2)), (H, cj(y.y2))] {
        push(&mut z, &[(v, 1)], k * be);
    }
    z
}

fn z2_reference<S: Scalar>(p: &Params) -> TruncatedSeries<S> {
    let mut z = registry_z2(p.m_u8());
    let k = coeffs_qfi_lossy::<S>(p);
    z0_terms(&mut z, p, &k.base);
    let (sh, ch) = (p.g.sinh(), p.g.cosh());
    let eth: S = cx(Complex64::from_polar(1.0, p.theta));
    push(&mut z, &[(S, 1), (X, 1)], k.x5);
    push(&mut z, &[(T, 1), (Y, 1)], k.x5.conj());
    push(&mut z, &[(S, 1), (Y, 1)], k.x6);
    push(&mut z, &[(T, 1), (X, 1)], k.x6.conj());
    push(&mut z, &[(X, 1), (Y, 1)], re(sh * sh));
    push(&mut z, &[(X, 1)], re(p.alpha * ch));
    push(&mut z, &[(Y, 1)], re(p.alpha * ch));
    push(&mut z, &[(Y, 1)], -(eth * re(p.beta * sh)));
    push(&mut z, &[(X, 1)], -(eth.conj() * re(p.beta * sh)));
    z
}

fn z3_reference<S: Scalar>(p: &Params) -> TruncatedSeries<S> {
    let mut z = registry_z3(p.m_u8());
    // The X table printed next to this exponent carries η; with the loss
    // beam splitter set by T that only agrees when η = T.
    z0_terms(&mut z, p, &coeffs_detection(p, LossSymbol::Eta));
    let f = coeffs_photon_number::<S>(p).f;
    let cj = |v: S| v.conj();
    let (al, be) = (re::<S>(p.alpha), re::<S>(p.beta));
    for (v, k) in [(L1, f[0]), (L2, f[1]), (L3, f[2]), (L4, f[3])] {
        push(&mut z, &[(S, 1), (v, 1)], k);
    }
    for (v, k) in [(L2, cj(f[0])), (L1, cj(f[1])), (L4, cj(f[2])), (L3, cj(f[3]))] {
        push(&mut z, &[(T, 1), (v, 1)], k);
    }
    push(&mut z, &[(L1, 1), (L2, 1)], f[4]);
    push(&mut z, &[(L2, 1), (L4, 1)], f[5]);
    push(&mut z, &[(L1, 1), (L3, 1)], cj(f[5]));
    push(&mut z, &[(L3, 1), (L4, 1)], f[6]);
    for (v, k) in [(L1, cj(f[7])), (L2, f[7]), (L3, cj(f[8])), (L4, f[8])] {
        push(&mut z, &[(v, 1)], k * al);
    }
    for (v, k) in [(L1, cj(f[9])), (L2, f[9]), (L3, f[10]), (L4, f[10])] {
        push(&mut z, &[(v, 1)], k * be);
    }
    z
}

// ---------------------------------------------------------------------------
// Public builders

/// Detection exponent over (s, t) with both caps equal to `cap`.
pub fn build_z0<S: Scalar>(p: &Params, loss: LossSymbol, cap: u8, form: ExponentForm) -> Result<TruncatedSeries<S>> {
    match form {
        ExponentForm::Canonical => z0_canonical(p, loss, cap),
        ExponentForm::Reference => Ok(z0_reference(p, loss, cap)),
    }
}

/// Ideal-QFI exponent over (s, t, c, d, p, h); s, t capped at m.
pub fn build_z1<S: Scalar>(p: &Params, form: ExponentForm) -> Result<TruncatedSeries<S>> {
    match form {
        ExponentForm::Canonical => z1_canonical(p),
        ExponentForm::Reference => Ok(z1_reference(p)),
    }
}

/// Lossy-QFI exponent over (s, t, x, y); s, t capped at m, x, y at 2.
pub fn build_z2<S: Scalar>(p: &Params, form: ExponentForm) -> Result<TruncatedSeries<S>> {
    match form {
        ExponentForm::Canonical => z2_canonical(p),
        ExponentForm::Reference => Ok(z2_reference(p)),
    }
}

/// Photon-number exponent over (s, t, λ₁…λ₄); s, t capped at m.
pub fn build_z3<S: Scalar>(p: &Params, form: ExponentForm) -> Result<TruncatedSeries<S>> {
    match form {
        ExponentForm::Canonical => z3_canonical(p),
        ExponentForm::Reference => Ok(z3_reference(p)),
    }
}
