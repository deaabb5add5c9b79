//! Brute-force reference: the whole pipeline evolved in a truncated Fock
//! space, with φ-derivatives taken by finite differences.
//!
//! Nothing here uses the generating functions. The cutoff K bounds the
//! photon number per mode of the squeezed input: exp(ξ*ab − ξa†b†) is applied
//! on the (K+1)² cube, and the mass on its outer layers is reported as the
//! truncation tail. Everything after the squeezer lives on the ball
//! n_a + n_b (+ n_v) ≤ 2K, which contains the cube and on which the beam
//! splitters are block diagonal, so they add no truncation error.
//!
//! An [`Oracle`] caches beam-splitter blocks and prepared input states, so
//! many evaluations on one grid share the expensive parts. Each instance is
//! independent; run one per thread.

mod expm;
mod state;

use std::collections::HashMap;
use std::sync::Arc;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

pub use expm::{expm_apply, expm_dense};
pub use state::FockState;

use crate::error::{Error, Result};
use crate::lossy::{kraus_coeffs, LAMBDA_WINDOW};
use crate::model::Params;
use crate::optimize::minimize_widening;

/// Photon-number cutoff used when none is given.
pub const DEFAULT_CUTOFF: usize = 40;
/// Largest cutoff the automatic policy will try.
pub const MAX_AUTO_CUTOFF: usize = 100;
/// A result whose tail exceeds this is rejected.
pub const TAIL_LIMIT: f64 = 1e-8;
/// The automatic policy grows the cutoff until the tail is below this.
pub const AUTO_TAIL_TARGET: f64 = 1e-13;
const AUTO_STEP: usize = 20;
/// Central-difference step in φ.
pub const FD_STEP: f64 = 1e-4;
const ANNIHILATION_NORM: f64 = 1e-14;
/// Outermost per-mode layers whose mass counts as truncation tail.
const EDGE_LAYERS: usize = 2;
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CutoffPolicy {
    /// Use exactly this cutoff; fail if the tail exceeds [`TAIL_LIMIT`].
    Fixed(usize),
    /// Start here and grow in steps of 20 until the tail drops below [`AUTO_TAIL_TARGET`].
    Auto { start: usize, max: usize },
}

impl Default for CutoffPolicy {
    fn default() -> Self {
        CutoffPolicy::Auto { start: DEFAULT_CUTOFF, max: MAX_AUTO_CUTOFF }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleValue {
    pub value: f64,
    /// Richardson error estimate of the finite difference (0 if none was taken).
    pub error_estimate: f64,
    pub cutoff: usize,
    pub tail: f64,
    /// The minimizing λ for the lossy bound.
    pub lambda: Option<f64>,
}

type InputKey = [u64; 7];

fn key(p: &Params, with_loss: bool, k: usize) -> InputKey {
    [
        p.alpha.to_bits(),
        p.beta.to_bits(),
        p.g.to_bits(),
        p.theta.to_bits(),
        if with_loss { p.t_loss.to_bits() } else { u64::MAX },
        k as u64,
        with_loss as u64,
    ]
}

/// Unitary blocks exp(iθ(a†b + ab†)) for each total N ≤ cutoff.
struct Splitter {
    blocks: Vec<Vec<Complex64>>,
}

#[derive(Default)]
pub struct Oracle {
    policy: CutoffPolicy,
    splitters: HashMap<(u64, usize), Arc<Splitter>>,
    inputs: HashMap<InputKey, Arc<FockState>>,
}

impl Oracle {
    pub fn new(policy: CutoffPolicy) -> Self {
        Self { policy, ..Default::default() }
    }

    pub fn policy(&self) -> CutoffPolicy {
        self.policy
    }

    fn splitter(&mut self, tau: f64, k: usize) -> Result<Arc<Splitter>> {
        if let Some(s) = self.splitters.get(&(tau.to_bits(), k)) {
            return Ok(s.clone());
        }
        let blocks = splitter_blocks(tau, k)?;
        if self.splitters.len() > 8 {
            self.splitters.clear();
        }
        let s = Arc::new(Splitter { blocks });
        self.splitters.insert((tau.to_bits(), k), s.clone());
        Ok(s)
    }

    /// S|α,β⟩ on two modes, restricted to the ball.
    fn squeezed_input(&mut self, p: &Params, k: usize) -> Result<Arc<FockState>> {
        let kk = key(p, false, k);
        if let Some(s) = self.inputs.get(&kk) {
            return Ok(s.clone());
        }
        let d = k + 1;
        let ca = coherent_amplitudes(p.alpha, k);
        let cb = coherent_amplitudes(p.beta, k);
        let mut cube: Vec<Complex64> = (0..d * d).map(|i| Complex64::new(ca[i / d] * cb[i % d], 0.0)).collect();
        let xi = Complex64::from_polar(p.g, p.theta);
        let gen = |x: &[Complex64], out: &mut [Complex64]| {
            for a in 0..d {
                for b in 0..d {
                    let v = x[a * d + b];
                    if v == ZERO {
                        continue;
                    }
                    if a > 0 && b > 0 {
                        out[(a - 1) * d + b - 1] += xi.conj() * ((a * b) as f64).sqrt() * v;
                    }
                    if a < k && b < k {
                        out[(a + 1) * d + b + 1] -= xi * (((a + 1) * (b + 1)) as f64).sqrt() * v;
                    }
                }
            }
        };
        expm_apply(gen, &mut cube, 2.0 * p.g * d as f64)?;
        // The cube fits inside the ball of radius 2k, where the beam splitters act exactly.
        let mut st = FockState::zeros(2, 2 * k);
        for a in 0..d {
            for b in 0..d {
                let z = cube[a * d + b];
                if a + EDGE_LAYERS > k || b + EDGE_LAYERS > k {
                    st.tail += z.norm_sqr();
                }
                let i = st.index(&[a, b]);
                st.amps[i] = z;
            }
        }
        if self.inputs.len() > 8 {
            self.inputs.clear();
        }
        let s = Arc::new(st);
        self.inputs.insert(kk, s.clone());
        Ok(s)
    }

    /// B_T S|α,β,0⟩ on three modes.
    fn lossy_input(&mut self, p: &Params, k: usize) -> Result<Arc<FockState>> {
        let kk = key(p, true, k);
        if let Some(s) = self.inputs.get(&kk) {
            return Ok(s.clone());
        }
        let two = self.squeezed_input(p, k)?;
        let theta = p.t_loss.sqrt().clamp(0.0, 1.0).acos();
        let k = two.cutoff;
        let mut out = FockState::zeros(3, k);
        out.tail = two.tail;
        for n in 0..=k {
            // exp(θ(a†v − av†)) |n, 0⟩ over q = n_v, n_a = n − q.
            let mut u = vec![ZERO; n + 1];
            u[0] = Complex64::new(1.0, 0.0);
            let gen = |x: &[Complex64], y: &mut [Complex64]| {
                for q in 0..=n {
                    let v = x[q];
                    if v == ZERO {
                        continue;
                    }
                    if q > 0 {
                        y[q - 1] += theta * (((n - q + 1) * q) as f64).sqrt() * v;
                    }
                    if q < n {
                        y[q + 1] -= theta * (((n - q) * (q + 1)) as f64).sqrt() * v;
                    }
                }
            };
            expm_apply(gen, &mut u, theta * (n + 1) as f64)?;
            for b in 0..=(k - n) {
                let src = two.amps[n * (k + 1) + b];
                if src == ZERO {
                    continue;
                }
                for (q, &uq) in u.iter().enumerate() {
                    let i = out.index(&[n - q, b, q]);
                    out.amps[i] += uq * src;
                }
            }
        }
        if self.inputs.len() > 8 {
            self.inputs.clear();
        }
        let s = Arc::new(out);
        self.inputs.insert(kk, s.clone());
        Ok(s)
    }

    fn apply_splitter(&mut self, st: &mut FockState, tau: f64, adjoint: bool) -> Result<()> {
        let sp = self.splitter(tau, st.cutoff)?;
        let k = st.cutoff;
        let slices = if st.modes == 2 { 1 } else { k + 1 };
        let (modes, dim) = (st.modes, st.dim());
        let mut x = Vec::with_capacity(k + 1);
        let mut y = Vec::with_capacity(k + 1);
        for v in 0..slices {
            for n in 0..=(k - v) {
                let d = n + 1;
                let idx = |j: usize| {
                    if modes == 2 {
                        j * dim + n - j
                    } else {
                        (j * dim + n - j) * dim + v
                    }
                };
                x.clear();
                x.extend((0..d).map(|j| st.amps[idx(j)]));
                if x.iter().all(|z| *z == ZERO) {
                    continue;
                }
                let u = &sp.blocks[n];
                y.clear();
                for i in 0..d {
                    let mut acc = ZERO;
                    for j in 0..d {
                        acc += if adjoint { u[j * d + i].conj() } else { u[i * d + j] } * x[j];
                    }
                    y.push(acc);
                }
                for j in 0..d {
                    let i = idx(j);
                    st.amps[i] = y[j];
                }
            }
        }
        Ok(())
    }

    fn finish(st: &mut FockState, m: usize) -> Result<()> {
        let w = st.normalize();
        if !(w > ANNIHILATION_NORM) {
            return Err(Error::Annihilated { normalizer: w });
        }
        let edge = st.cutoff.saturating_sub(m + 2);
        st.tail += st.mass_from_total(edge);
        Ok(())
    }

    /// aᵐ B_v U_φ B_T S|α,β,0⟩, normalized.
    pub fn output_state(&mut self, p: &Params, k: usize) -> Result<FockState> {
        let mut st = (*self.lossy_input(p, k)?).clone();
        st.apply_phase(p.phi);
        self.apply_splitter(&mut st, p.tau, false)?;
        let mut st = st.lower_a(p.m as usize);
        Self::finish(&mut st, p.m as usize)?;
        Ok(st)
    }

    /// B_v† aᵐ B_v U_φ S|α,β⟩ on two modes, normalized.
    fn ideal_probe(&mut self, p: &Params, k: usize, phi: f64) -> Result<FockState> {
        let mut st = (*self.squeezed_input(p, k)?).clone();
        st.apply_phase(phi);
        self.apply_splitter(&mut st, p.tau, false)?;
        let mut st = st.lower_a(p.m as usize);
        self.apply_splitter(&mut st, p.tau, true)?;
        Self::finish(&mut st, p.m as usize)?;
        Ok(st)
    }

    /// B_v† aᵐ B_v U_φ B_T S|α,β,0⟩, normalized.
    fn internal_state(&mut self, p: &Params, k: usize) -> Result<FockState> {
        let mut st = (*self.lossy_input(p, k)?).clone();
        st.apply_phase(p.phi);
        self.apply_splitter(&mut st, p.tau, false)?;
        let mut st = st.lower_a(p.m as usize);
        self.apply_splitter(&mut st, p.tau, true)?;
        Self::finish(&mut st, p.m as usize)?;
        Ok(st)
    }

    /// (√(τη) e^{iφ} a + i√(1−τ) b)ᵐ S|α,β⟩, normalized.
    fn lossy_probe(&mut self, p: &Params, k: usize, phi: f64) -> Result<FockState> {
        let mut st = (*self.squeezed_input(p, k)?).clone();
        let ca = Complex64::from_polar((p.tau * p.eta).sqrt(), phi);
        let cb = Complex64::new(0.0, (1.0 - p.tau).max(0.0).sqrt());
        let k = st.cutoff;
        let d = k + 1;
        for _ in 0..p.m {
            let mut next = FockState::zeros(2, k);
            next.tail = st.tail;
            for a in 0..d {
                for b in 0..(d - a) {
                    let mut acc = ZERO;
                    if a + 1 + b <= k {
                        acc += ca * ((a + 1) as f64).sqrt() * st.amps[(a + 1) * d + b];
                        acc += cb * ((b + 1) as f64).sqrt() * st.amps[a * d + b + 1];
                    }
                    next.amps[a * d + b] = acc;
                }
            }
            st = next;
        }
        Self::finish(&mut st, p.m as usize)?;
        Ok(st)
    }

    fn drive<F>(&mut self, p: &Params, mut eval: F) -> Result<OracleValue>
    where
        F: FnMut(&mut Self, usize) -> Result<OracleValue>,
    {
        match self.policy {
            CutoffPolicy::Fixed(k) => {
                let v = eval(self, k)?;
                if v.tail > TAIL_LIMIT {
                    return Err(Error::CutoffTooSmall { tail: v.tail, cutoff: k });
                }
                Ok(v)
            }
            CutoffPolicy::Auto { start, max } => {
                let mut k = start.min(max);
                // The squeezed input is cheap; skip cutoffs it already rules out.
                while k < max && self.squeezed_input(p, k)?.tail > AUTO_TAIL_TARGET {
                    k = (k + AUTO_STEP).min(max);
                }
                loop {
                    let v = eval(self, k)?;
                    if v.tail <= AUTO_TAIL_TARGET {
                        return Ok(v);
                    }
                    if k >= max {
                        if v.tail <= TAIL_LIMIT {
                            return Ok(v);
                        }
                        return Err(Error::CutoffTooSmall { tail: v.tail, cutoff: k });
                    }
                    k = (k + AUTO_STEP).min(max);
                }
            }
        }
    }

    /// Δφ from ⟨X⟩ and ⟨X²⟩ of the output state; ∂φ⟨X⟩ by Richardson-extrapolated
    /// central differences.
    pub fn phase_sensitivity(&mut self, p: &Params) -> Result<OracleValue> {
        p.validate()?;
        let p = *p;
        self.drive(&p, |o, k| {
            let mut tail: f64 = 0.0;
            let mut mean_at = |o: &mut Self, phi: f64| -> Result<f64> {
                let st = o.output_state(&Params { phi, ..p }, k)?;
                tail = tail.max(st.tail);
                Ok(std::f64::consts::SQRT_2 * st.moment_a(0, 1).re)
            };
            let h = FD_STEP;
            let d1 = (mean_at(o, p.phi + h)? - mean_at(o, p.phi - h)?) / (2.0 * h);
            let d2 = (mean_at(o, p.phi + h / 2.0)? - mean_at(o, p.phi - h / 2.0)?) / h;
            let slope = (4.0 * d2 - d1) / 3.0;
            let st = o.output_state(&p, k)?;
            tail = tail.max(st.tail);
            let mean = std::f64::consts::SQRT_2 * st.moment_a(0, 1).re;
            let second = (2.0 * st.moment_a(0, 2).re + 2.0 * st.moment_a(1, 1).re + 1.0) / 2.0;
            let sd = (second - mean * mean).max(0.0).sqrt();
            let slope_err = (slope - d2).abs();
            let (value, err) = if slope.abs() <= 1e-9 * sd.max(1.0) {
                (f64::INFINITY, 0.0)
            } else {
                (sd / slope.abs(), sd * slope_err / (slope * slope))
            };
            Ok(OracleValue { value, error_estimate: err, cutoff: k, tail, lambda: None })
        })
    }

    /// F = 4(⟨ψ'|ψ'⟩ − |⟨ψ'|ψ⟩|²) with ψ' from differences of the normalized probe.
    pub fn qfi_ideal(&mut self, p: &Params) -> Result<OracleValue> {
        p.validate()?;
        let p = *p;
        self.drive(&p, |o, k| {
            let h = FD_STEP;
            let psi = o.ideal_probe(&p, k, p.phi)?;
            let mut tail = psi.tail;
            let mut diff = |o: &mut Self, h: f64| -> Result<Vec<Complex64>> {
                let a = o.ideal_probe(&p, k, p.phi + h)?;
                let b = o.ideal_probe(&p, k, p.phi - h)?;
                tail = tail.max(a.tail).max(b.tail);
                Ok(a.amps.iter().zip(&b.amps).map(|(x, y)| (x - y) / (2.0 * h)).collect())
            };
            let d1 = diff(o, h)?;
            let d2 = diff(o, h / 2.0)?;
            let dpsi: Vec<Complex64> = d1.iter().zip(&d2).map(|(a, b)| (4.0 * b - a) / 3.0).collect();
            let fisher = |d: &[Complex64]| {
                let dd: f64 = d.iter().map(|z| z.norm_sqr()).sum();
                let ov: Complex64 = d.iter().zip(&psi.amps).map(|(x, y)| x.conj() * y).sum();
                4.0 * (dd - ov.norm_sqr())
            };
            let f = fisher(&dpsi);
            Ok(OracleValue { value: f, error_estimate: (f - fisher(&d2)).abs(), cutoff: k, tail, lambda: None })
        })
    }

    /// C_Q(λ) assembled from the normalized probe, its φ-derivative and the
    /// Kraus generators H₁ = A n² + B n, H₂ = C n, minimized over λ.
    pub fn qfi_lossy(&mut self, p: &Params) -> Result<OracleValue> {
        p.validate()?;
        let p = *p;
        self.drive(&p, |o, k| {
            let h = FD_STEP;
            let psi = o.lossy_probe(&p, k, p.phi)?;
            let mut tail = psi.tail;
            let mut diff = |o: &mut Self, h: f64| -> Result<Vec<Complex64>> {
                let a = o.lossy_probe(&p, k, p.phi + h)?;
                let b = o.lossy_probe(&p, k, p.phi - h)?;
                tail = tail.max(a.tail).max(b.tail);
                Ok(a.amps.iter().zip(&b.amps).map(|(x, y)| (x - y) / (2.0 * h)).collect())
            };
            let d1 = diff(o, h)?;
            let d2 = diff(o, h / 2.0)?;
            let dpsi: Vec<Complex64> = d1.iter().zip(&d2).map(|(a, b)| (4.0 * b - a) / 3.0).collect();
            let eval = |d: &[Complex64]| cq_pieces(&psi, d);
            let pieces = eval(&dpsi);
            let coarse = eval(&d2);
            let cq = |pc: &CqPieces, lambda: f64| pc.cq(p.eta, lambda);
            let best = minimize_widening(|l| cq(&pieces, l), LAMBDA_WINDOW.0, LAMBDA_WINDOW.1, 61, 1e-10, 60);
            Ok(OracleValue {
                value: best.fx,
                error_estimate: (best.fx - cq(&coarse, best.x)).abs(),
                cutoff: k,
                tail,
                lambda: Some(best.x),
            })
        })
    }

    /// ⟨n_a + n_b⟩ inside the interferometer.
    pub fn internal_photon_number(&mut self, p: &Params) -> Result<OracleValue> {
        p.validate()?;
        let p = *p;
        self.drive(&p, |o, k| {
            let st = o.internal_state(&p, k)?;
            Ok(OracleValue { value: st.mean_ab(), error_estimate: 0.0, cutoff: k, tail: st.tail, lambda: None })
        })
    }

    /// ⟨a†ᵏaˡ⟩ of the normalized output state at the first acceptable cutoff.
    pub fn moment(&mut self, p: &Params, k_pow: usize, l_pow: usize) -> Result<(Complex64, usize)> {
        p.validate()?;
        let p = *p;
        let mut z = ZERO;
        let v = self.drive(&p, |o, k| {
            let st = o.output_state(&p, k)?;
            z = st.moment_a(k_pow, l_pow);
            Ok(OracleValue { value: z.re, error_estimate: 0.0, cutoff: k, tail: st.tail, lambda: None })
        })?;
        Ok((z, v.cutoff))
    }
}

/// Expectations entering C_Q, all in the normalized probe |Ψ⟩.
struct CqPieces {
    /// ⟨Ψ̃|Ψ̃⟩ − |⟨Ψ̃|Ψ⟩|²
    fs: f64,
    /// ⟨Ψ|Ψ̃⟩
    overlap: Complex64,
    /// ⟨Ψ̃|n|Ψ⟩
    dn: Complex64,
    n1: f64,
    n2: f64,
}

fn cq_pieces(psi: &FockState, d: &[Complex64]) -> CqPieces {
    let k = psi.cutoff;
    let mut dd = 0.0;
    let mut ov = ZERO;
    let mut dn = ZERO;
    for (i, (x, y)) in d.iter().zip(&psi.amps).enumerate() {
        let na = (i / (k + 1)) as f64;
        dd += x.norm_sqr();
        ov += y.conj() * x;
        dn += x.conj() * y * na;
    }
    CqPieces { fs: dd - ov.norm_sqr(), overlap: ov, dn, n1: psi.expect_na(|n| n), n2: psi.expect_na(|n| n * n) }
}

impl CqPieces {
    fn cq(&self, eta: f64, lambda: f64) -> f64 {
        let kc = kraus_coeffs(eta, lambda);
        let i = Complex64::i();
        let h1 = kc.a * self.n2 + kc.b * self.n1;
        let h2 = kc.c * self.n1;
        // ⟨Ψ̃|iH₂|Ψ⟩ − ⟨Ψ|iH₂|Ψ̃⟩ + i⟨H₂⟩⟨Ψ|Ψ̃⟩ − i⟨Ψ̃|Ψ⟩⟨H₂⟩
        let cross =
            i * kc.c * self.dn - i * kc.c * self.dn.conj() + i * h2 * self.overlap - i * self.overlap.conj() * h2;
        4.0 * (self.fs + h1 - h2 * h2 + cross.re)
    }
}

/// exp(iθ(a†b + ab†)) on the block n_a + n_b = n, basis index n_a.
fn splitter_generator(theta: f64, n: usize) -> Vec<Complex64> {
    let d = n + 1;
    let mut g = vec![ZERO; d * d];
    for j in 0..d {
        if j < n {
            // a†b: |j, n−j⟩ → √((j+1)(n−j)) |j+1, n−j−1⟩
            g[(j + 1) * d + j] = Complex64::new(0.0, theta * (((j + 1) * (n - j)) as f64).sqrt());
        }
        if j > 0 {
            // ab†: |j, n−j⟩ → √(j(n−j+1)) |j−1, n−j+1⟩
            g[(j - 1) * d + j] = Complex64::new(0.0, theta * ((j * (n - j + 1)) as f64).sqrt());
        }
    }
    g
}

/// Blocks 0..=k of the splitter. Each block generator is real symmetric, so
/// the exponential is taken through its eigendecomposition, which stays
/// accurate and cheap for blocks of a few hundred states.
fn splitter_blocks(tau: f64, k: usize) -> Result<Vec<Vec<Complex64>>> {
    let theta = tau.sqrt().clamp(0.0, 1.0).acos();
    let mut blocks = Vec::with_capacity(k + 1);
    for n in 0..=k {
        let d = n + 1;
        let g = splitter_generator(1.0, n);
        let sym = DMatrix::from_fn(d, d, |i, j| g[i * d + j].im);
        let eig = SymmetricEigen::new(sym);
        let v = &eig.eigenvectors;
        let phases: Vec<Complex64> = eig.eigenvalues.iter().map(|&l| Complex64::from_polar(1.0, theta * l)).collect();
        let mut u = vec![ZERO; d * d];
        for i in 0..d {
            for j in 0..d {
                u[i * d + j] = (0..d).map(|q| phases[q] * (v[(i, q)] * v[(j, q)])).sum();
            }
        }
        let residue = unitarity_defect(&u, d);
        if residue > 1e-10 {
            return Err(Error::Consistency { what: "beam-splitter block", residue });
        }
        blocks.push(u);
    }
    Ok(blocks)
}

fn unitarity_defect(u: &[Complex64], d: usize) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..d {
        for j in i..d {
            let s: Complex64 = (0..d).map(|q| u[q * d + i].conj() * u[q * d + j]).sum();
            let e = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((s - e).norm());
        }
    }
    worst
}

fn coherent_amplitudes(alpha: f64, k: usize) -> Vec<f64> {
    let mut c = Vec::with_capacity(k + 1);
    let mut x = (-0.5 * alpha * alpha).exp();
    for n in 0..=k {
        if n > 0 {
            x *= alpha / (n as f64).sqrt();
        }
        c.push(x);
    }
    c
}

/// Normalized output state a^m B_v U_φ B_T S|α,β,0⟩ at a fixed cutoff.
pub fn evolve_output_state(p: &Params, cutoff: usize) -> Result<FockState> {
    p.validate()?;
    let st = Oracle::new(CutoffPolicy::Fixed(cutoff)).output_state(p, cutoff)?;
    if st.tail > TAIL_LIMIT {
        return Err(Error::CutoffTooSmall { tail: st.tail, cutoff });
    }
    Ok(st)
}

pub fn oracle_phase_sensitivity(p: &Params, policy: CutoffPolicy) -> Result<OracleValue> {
    Oracle::new(policy).phase_sensitivity(p)
}

pub fn oracle_qfi_ideal(p: &Params, policy: CutoffPolicy) -> Result<OracleValue> {
    Oracle::new(policy).qfi_ideal(p)
}

pub fn oracle_qfi_lossy(p: &Params, policy: CutoffPolicy) -> Result<OracleValue> {
    Oracle::new(policy).qfi_lossy(p)
}

pub fn oracle_internal_photon_number(p: &Params, policy: CutoffPolicy) -> Result<OracleValue> {
    Oracle::new(policy).internal_photon_number(p)
}
