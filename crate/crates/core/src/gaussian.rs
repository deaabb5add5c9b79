//! Heisenberg-picture linear forms and coherent-state expectations of
//! ordered products of exponentials.
//!
//! For linear forms Lⱼ = Σₖ (uⱼₖ aₖ + wⱼₖ aₖ†) and a coherent state |z⟩,
//!
//! ```text
//! ln ⟨z| e^{x₁L₁} e^{x₂L₂} … |z⟩ = Σⱼ ½ (uⱼ·wⱼ) xⱼ²
//!                                + Σ_{i<j} (uᵢ·wⱼ) xᵢ xⱼ
//!                                + Σⱼ (uⱼ·z + wⱼ·z*) xⱼ
//! ```
//!
//! which follows from normal ordering each factor and commuting the
//! annihilation parts to the right. Every generating function in this crate
//! is assembled this way from the mode maps of the optical elements.

use num_complex::Complex64;

use crate::error::Result;
use crate::jet::Scalar;
use crate::series::{MultiIndex, TruncatedSeries, VariableId};

pub const MODES: usize = 3;

/// Σₖ (ann[k] aₖ + cre[k] aₖ†) over the modes a, b and the loss mode v.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearForm<S: Scalar> {
    pub ann: [S; MODES],
    pub cre: [S; MODES],
}

impl<S: Scalar> LinearForm<S> {
    pub fn zero() -> Self {
        Self { ann: [S::zero(); MODES], cre: [S::zero(); MODES] }
    }

    /// The annihilator of mode `k`.
    pub fn mode(k: usize) -> Self {
        let mut f = Self::zero();
        f.ann[k] = S::one();
        f
    }

    pub fn adjoint(&self) -> Self {
        Self { ann: self.cre.map(|c| c.conj()), cre: self.ann.map(|c| c.conj()) }
    }

    pub fn scaled(&self, k: S) -> Self {
        Self { ann: self.ann.map(|c| c * k), cre: self.cre.map(|c| c * k) }
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = *self;
        for k in 0..MODES {
            out.ann[k] += other.ann[k];
            out.cre[k] += other.cre[k];
        }
        out
    }

    /// The c-number [self_ann, other_cre].
    fn commutator_with(&self, other: &Self) -> S {
        let mut acc = S::zero();
        for k in 0..MODES {
            acc += self.ann[k] * other.cre[k];
        }
        acc
    }

    fn coherent_value(&self, z: &[f64; MODES]) -> S {
        let mut acc = S::zero();
        for k in 0..MODES {
            // z is real, so z* = z.
            acc += (self.ann[k] + self.cre[k]).scale(z[k]);
        }
        acc
    }
}

/// Heisenberg image U† aₖ U of each mode annihilator under a unitary U.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeMap<S: Scalar> {
    images: [LinearForm<S>; MODES],
}

impl<S: Scalar> ModeMap<S> {
    pub fn identity() -> Self {
        Self { images: [0, 1, 2].map(LinearForm::mode) }
    }

    /// U = e^{iφ a†a}: a → e^{iφ} a.
    pub fn phase_shift(phi: f64) -> Self {
        let mut m = Self::identity();
        m.images[0].ann[0] = S::phase(phi);
        m
    }

    /// U = exp[θ(a†v − a v†)], cos θ = √T: a → √T a + √(1−T) v, v → √T v − √(1−T) a.
    pub fn loss_splitter(transmittance: f64) -> Self {
        let c = S::constant(Complex64::new(transmittance.sqrt(), 0.0));
        let s = S::constant(Complex64::new((1.0 - transmittance).max(0.0).sqrt(), 0.0));
        let mut m = Self::identity();
        m.images[0].ann = [c, S::zero(), s];
        m.images[2].ann = [-s, S::zero(), c];
        m
    }

    /// U = exp(ξ* ab − ξ a†b†), ξ = g e^{iθ}: a → a cosh g − b† e^{iθ} sinh g, and a ↔ b.
    pub fn two_mode_squeezer(g: f64, theta: f64) -> Self {
        let ch = S::constant(Complex64::new(g.cosh(), 0.0));
        let sh = S::constant(Complex64::from_polar(-g.sinh(), theta));
        let mut m = Self::identity();
        m.images[0].ann = [ch, S::zero(), S::zero()];
        m.images[0].cre = [S::zero(), sh, S::zero()];
        m.images[1].ann = [S::zero(), ch, S::zero()];
        m.images[1].cre = [sh, S::zero(), S::zero()];
        m
    }

    /// U† L U given the images of the annihilators.
    pub fn apply(&self, form: &LinearForm<S>) -> LinearForm<S> {
        let mut out = LinearForm::zero();
        for k in 0..MODES {
            let img = &self.images[k];
            let adj = img.adjoint();
            out = out.plus(&img.scaled(form.ann[k])).plus(&adj.scaled(form.cre[k]));
        }
        out
    }
}

/// V† L V for V = U₁U₂…Uₙ, with `elements` listed as U₁, U₂, …
pub fn heisenberg<S: Scalar>(elements: &[ModeMap<S>], form: &LinearForm<S>) -> LinearForm<S> {
    elements.iter().fold(*form, |acc, m| m.apply(&acc))
}

/// Exponent of ⟨z| ∏ⱼ e^{xⱼLⱼ} |z⟩ with the product ordered as listed.
///
/// `template` supplies the variable registry and caps; its terms are ignored.
pub fn ordered_exponent<S: Scalar>(
    template: &TruncatedSeries<S>,
    factors: &[(VariableId, LinearForm<S>)],
    z: &[f64; MODES],
) -> Result<TruncatedSeries<S>> {
    let mut out = template.empty_like();
    for (j, (vj, lj)) in factors.iter().enumerate() {
        out.add_term(MultiIndex::from_pairs(&[(*vj, 2)]), lj.commutator_with(lj).scale(0.5));
        out.add_term(MultiIndex::from_pairs(&[(*vj, 1)]), lj.coherent_value(z));
        for (vi, li) in &factors[..j] {
            out.add_term(MultiIndex::from_pairs(&[(*vi, 1), (*vj, 1)]), li.commutator_with(lj));
        }
    }
    Ok(out)
}
