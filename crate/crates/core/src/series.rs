//! Sparse multivariate truncated power series.
//!
//! A [`TruncatedSeries`] stores the nonzero coefficients of a polynomial in at
//! most [`MAX_VARIABLES`] formal variables, each with its own maximum degree.
//! Products drop every monomial that exceeds a cap, which makes the
//! exponential of a series with zero constant term a finite computation.
//!
//! Mixed derivatives at the origin are read off as factorial-scaled
//! coefficients:
//!
//! ```text
//! ∂^{k₁+…+kₙ} e^Z / ∂v₁^{k₁}…∂vₙ^{kₙ} |₀ = k₁!…kₙ! · [v₁^{k₁}…vₙ^{kₙ}] e^Z
//! ```
//!
//! Invariants:
//! - no stored coefficient is exactly zero
//! - no stored index exceeds the caps
//! - terms iterate in lexicographic multi-index order

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::jet::Scalar;

pub const MAX_VARIABLES: usize = 8;

/// Position of a formal variable inside a series' registry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VariableId(pub u8);

/// Exponent vector of a monomial. Unused trailing slots are zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct MultiIndex([u8; MAX_VARIABLES]);

impl MultiIndex {
    pub fn from_slice(degrees: &[u8]) -> Result<Self> {
        if degrees.len() > MAX_VARIABLES {
            return Err(Error::SeriesMismatch(format!(
                "{} degrees given, at most {MAX_VARIABLES} variables supported",
                degrees.len()
            )));
        }
        let mut d = [0u8; MAX_VARIABLES];
        d[..degrees.len()].copy_from_slice(degrees);
        Ok(Self(d))
    }

    /// Builds an index from `(variable, degree)` pairs; repeated variables add up.
    pub fn from_pairs(pairs: &[(VariableId, u8)]) -> Self {
        let mut d = [0u8; MAX_VARIABLES];
        for &(v, k) in pairs {
            d[v.0 as usize] += k;
        }
        Self(d)
    }

    #[inline]
    pub fn degree(&self, var: VariableId) -> u8 {
        self.0[var.0 as usize]
    }

    #[inline]
    pub fn degrees(&self) -> &[u8; MAX_VARIABLES] {
        &self.0
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&k| k as u32).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&k| k == 0)
    }

    /// ∏ kᵢ! as a float.
    pub fn factorial_weight(&self) -> f64 {
        self.0.iter().map(|&k| (1..=k as u32).map(f64::from).product::<f64>()).product()
    }

    #[inline]
    fn checked_add(&self, other: &Self, caps: &[u8; MAX_VARIABLES]) -> Option<Self> {
        let mut d = [0u8; MAX_VARIABLES];
        for i in 0..MAX_VARIABLES {
            let k = self.0[i] + other.0[i];
            if k > caps[i] {
                return None;
            }
            d[i] = k;
        }
        Some(Self(d))
    }
}

/// Sparse polynomial truncated at per-variable degree caps.
#[derive(Clone, PartialEq)]
pub struct TruncatedSeries<S: Scalar> {
    names: Vec<&'static str>,
    caps: [u8; MAX_VARIABLES],
    terms: BTreeMap<MultiIndex, S>,
}

impl<S: Scalar> TruncatedSeries<S> {
    /// The zero series over the given `(name, cap)` registry.
    pub fn zero(vars: &[(&'static str, u8)]) -> Result<Self> {
        if vars.len() > MAX_VARIABLES {
            return Err(Error::SeriesMismatch(format!(
                "{} variables requested, at most {MAX_VARIABLES} supported",
                vars.len()
            )));
        }
        let mut caps = [0u8; MAX_VARIABLES];
        for (i, &(_, c)) in vars.iter().enumerate() {
            caps[i] = c;
        }
        Ok(Self { names: vars.iter().map(|&(n, _)| n).collect(), caps, terms: BTreeMap::new() })
    }

    /// The constant series 1 over the same registry as `self`.
    pub fn one_like(&self) -> Self {
        let mut out = self.empty_like();
        out.terms.insert(MultiIndex::default(), S::one());
        out
    }

    pub fn empty_like(&self) -> Self {
        Self { names: self.names.clone(), caps: self.caps, terms: BTreeMap::new() }
    }

    pub fn num_variables(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[&'static str] {
        &self.names
    }

    pub fn cap(&self, var: VariableId) -> u8 {
        self.caps[var.0 as usize]
    }

    /// Looks a variable up by name.
    pub fn var(&self, name: &str) -> Result<VariableId> {
        self.names
            .iter()
            .position(|&n| n == name)
            .map(|i| VariableId(i as u8))
            .ok_or_else(|| Error::SeriesMismatch(format!("unknown variable `{name}`")))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &S)> {
        self.terms.iter()
    }

    pub fn coeff(&self, index: &MultiIndex) -> S {
        self.terms.get(index).copied().unwrap_or_else(S::zero)
    }

    pub fn constant_term(&self) -> S {
        self.coeff(&MultiIndex::default())
    }

    fn within_caps(&self, index: &MultiIndex) -> bool {
        index.0.iter().zip(self.caps.iter()).all(|(&k, &c)| k <= c)
    }

    /// Adds `coeff · monomial`, silently dropping monomials beyond the caps.
    pub fn add_term(&mut self, index: MultiIndex, coeff: S) {
        if coeff.is_zero() || !self.within_caps(&index) {
            return;
        }
        let slot = self.terms.entry(index).or_insert_with(S::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&index);
        }
    }

    /// Convenience for builders: `coeff · ∏ vᵢ^{kᵢ}`.
    pub fn add_monomial(&mut self, pairs: &[(VariableId, u8)], coeff: S) {
        self.add_term(MultiIndex::from_pairs(pairs), coeff);
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.names != other.names || self.caps != other.caps {
            return Err(Error::SeriesMismatch(format!(
                "registries differ: {:?}/{:?} vs {:?}/{:?}",
                self.names,
                &self.caps[..self.names.len()],
                other.names,
                &other.caps[..other.names.len()]
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (&i, &c) in &other.terms {
            out.add_term(i, c);
        }
        Ok(out)
    }

    pub fn scale(&self, k: f64) -> Self {
        let mut out = self.empty_like();
        for (&i, &c) in &self.terms {
            out.add_term(i, c.scale(k));
        }
        out
    }

    /// Truncated product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut acc: BTreeMap<MultiIndex, S> = BTreeMap::new();
        for (ia, &ca) in &self.terms {
            for (ib, &cb) in &other.terms {
                if let Some(ix) = ia.checked_add(ib, &self.caps) {
                    *acc.entry(ix).or_insert_with(S::zero) += ca * cb;
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(Self { names: self.names.clone(), caps: self.caps, terms: acc })
    }

    /// Σ Zⁿ/n! up to the sum of all caps, stopping once a power truncates away.
    pub fn exp(&self) -> Result<Self> {
        if !self.constant_term().is_zero() {
            return Err(Error::Precondition("series_exp needs a zero constant term; factor constants out".into()));
        }
        let max_order: u32 = self.caps.iter().map(|&c| c as u32).sum();
        let mut result = self.one_like();
        let mut power = self.one_like();
        for n in 1..=max_order {
            power = power.mul(self)?.scale(1.0 / n as f64);
            if power.is_empty() {
                break;
            }
            for (&i, &c) in &power.terms {
                result.add_term(i, c);
            }
        }
        Ok(result)
    }

    /// (∏ kᵢ!) × coefficient at `orders`, i.e. the mixed derivative at the origin.
    pub fn derivative_at_origin(&self, orders: &MultiIndex) -> Result<S> {
        if !self.within_caps(orders) {
            return Err(Error::Usage {
                field: "orders",
                reason: format!(
                    "derivative orders {:?} exceed caps {:?}",
                    &orders.0[..self.names.len()],
                    &self.caps[..self.names.len()]
                ),
            });
        }
        Ok(self.coeff(orders).scale(orders.factorial_weight()))
    }

    /// Maps every coefficient through `f`, keeping the registry.
    pub fn map<T: Scalar>(&self, f: impl Fn(S) -> T) -> TruncatedSeries<T> {
        let mut out = TruncatedSeries { names: self.names.clone(), caps: self.caps, terms: BTreeMap::new() };
        for (&i, &c) in &self.terms {
            out.add_term(i, f(c));
        }
        out
    }
}

impl<S: Scalar> fmt::Debug for TruncatedSeries<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.names.len();
        f.debug_struct("TruncatedSeries")
            .field("names", &self.names)
            .field("caps", &&self.caps[..n])
            .field("terms", &self.terms.iter().map(|(i, c)| (&i.0[..n], c)).collect::<Vec<_>>())
            .finish()
    }
}

pub fn series_mul<S: Scalar>(a: &TruncatedSeries<S>, b: &TruncatedSeries<S>) -> Result<TruncatedSeries<S>> {
    a.mul(b)
}

pub fn series_exp<S: Scalar>(z: &TruncatedSeries<S>) -> Result<TruncatedSeries<S>> {
    z.exp()
}

/// ∂^{orders} e^{Z} at the origin.
pub fn extract_derivative<S: Scalar>(z: &TruncatedSeries<S>, orders: &MultiIndex) -> Result<S> {
    z.exp()?.derivative_at_origin(orders)
}

/// ∂^{orders} (prefactor · e^{Z}) at the origin.
pub fn extract_from_prefactored<S: Scalar>(
    prefactor: &TruncatedSeries<S>,
    z: &TruncatedSeries<S>,
    orders: &MultiIndex,
) -> Result<S> {
    prefactor.mul(&z.exp()?)?.derivative_at_origin(orders)
}
