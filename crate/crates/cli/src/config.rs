//! Flag and config-file handling. Flags override file values.

use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use psmetro::oracle::CutoffPolicy;
use psmetro::{Params, Scheme};
use serde::Deserialize;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[value(rename_all = "verbatim")]
pub enum SchemeArg {
    A,
    B,
}

impl From<SchemeArg> for Scheme {
    fn from(s: SchemeArg) -> Self {
        match s {
            SchemeArg::A => Scheme::A,
            SchemeArg::B => Scheme::B,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// Parameter and output flags shared by every evaluating subcommand.
#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CommonArgs {
    /// JSON file with default values for any of these flags
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
    /// A: coherent light in mode a; B: in mode b
    #[arg(long, value_enum)]
    pub scheme: Option<SchemeArg>,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub beta: Option<f64>,
    /// Squeezing gain
    #[arg(long)]
    pub g: Option<f64>,
    /// Squeezing phase (default π)
    #[arg(long)]
    pub theta: Option<f64>,
    /// Phase shift (default π/2)
    #[arg(long)]
    pub phi: Option<f64>,
    /// Transmittance of the variable beam splitter
    #[arg(long)]
    pub tau: Option<f64>,
    /// Transmittance of the loss beam splitter in mode a
    #[arg(long = "T")]
    #[serde(rename = "T")]
    pub t: Option<f64>,
    /// Transmittance used for the lossy QFI
    #[arg(long)]
    pub eta: Option<f64>,
    /// Number of subtracted photons
    #[arg(long)]
    pub m: Option<u32>,
    /// Repetitions in the Cramér-Rao bound
    #[arg(long)]
    pub v: Option<u32>,
    /// Fock cutoff for the brute-force oracle (default: grow from 40 until converged)
    #[arg(long)]
    pub cutoff: Option<usize>,
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Sweep axes as name:start:stop:count
    #[arg(skip)]
    pub axis: Option<Vec<String>>,
    /// Comma-separated quantity names
    #[arg(skip)]
    pub quantities: Option<Vec<String>>,
}

/// Everything needed to evaluate, after merging file and flags.
#[derive(Debug, Clone)]
pub struct Settings {
    pub params: Params,
    /// Params fields given explicitly (as flag or file key).
    pub explicit: Vec<&'static str>,
    pub cutoff: CutoffPolicy,
    pub output: Option<PathBuf>,
    pub format: Format,
    pub axis: Vec<String>,
    pub quantities: Option<Vec<String>>,
}

pub fn read_config(path: &Path) -> Result<CommonArgs, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("bad config {}: {e}", path.display())))
}

impl CommonArgs {
    /// Fills every unset field from `base`.
    pub fn over(self, base: CommonArgs) -> CommonArgs {
        CommonArgs {
            config: self.config,
            scheme: self.scheme.or(base.scheme),
            alpha: self.alpha.or(base.alpha),
            beta: self.beta.or(base.beta),
            g: self.g.or(base.g),
            theta: self.theta.or(base.theta),
            phi: self.phi.or(base.phi),
            tau: self.tau.or(base.tau),
            t: self.t.or(base.t),
            eta: self.eta.or(base.eta),
            m: self.m.or(base.m),
            v: self.v.or(base.v),
            cutoff: self.cutoff.or(base.cutoff),
            output: self.output.or(base.output),
            format: self.format.or(base.format),
            axis: self.axis.or(base.axis),
            quantities: self.quantities.or(base.quantities),
        }
    }

    pub fn resolve(self) -> Result<Settings, CliError> {
        let merged = match &self.config {
            Some(path) => {
                let file = read_config(path)?;
                self.over(file)
            }
            None => self,
        };
        merged.into_settings()
    }

    fn into_settings(self) -> Result<Settings, CliError> {
        let mut p = Params::scheme(self.scheme.map(Scheme::from).unwrap_or(Scheme::A));
        let mut explicit = Vec::new();
        let mut set = |name: &'static str, v: Option<f64>, field: &mut f64| {
            if let Some(v) = v {
                *field = v;
                explicit.push(name);
            }
        };
        set("alpha", self.alpha, &mut p.alpha);
        set("beta", self.beta, &mut p.beta);
        set("g", self.g, &mut p.g);
        set("theta", self.theta, &mut p.theta);
        set("phi", self.phi, &mut p.phi);
        set("tau", self.tau, &mut p.tau);
        set("T", self.t, &mut p.t_loss);
        set("eta", self.eta, &mut p.eta);
        if let Some(m) = self.m {
            p.m = m;
            explicit.push("m");
        }
        if let Some(v) = self.v {
            p.v = v;
            explicit.push("v");
        }
        p.validate().map_err(CliError::from)?;
        let cutoff = match self.cutoff {
            Some(0) => return Err(CliError::Usage("invalid value for `cutoff`: must be >= 1".into())),
            Some(k) => CutoffPolicy::Fixed(k),
            None => CutoffPolicy::default(),
        };
        Ok(Settings {
            params: p,
            explicit,
            cutoff,
            output: self.output,
            format: self.format.unwrap_or_default(),
            axis: self.axis.unwrap_or_default(),
            quantities: self.quantities,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scheme_b_defaults_and_explicit_amplitudes() {
        let s = CommonArgs { scheme: Some(SchemeArg::B), ..Default::default() }.resolve().unwrap();
        assert_eq!((s.params.alpha, s.params.beta), (0.0, 1.0));
        let s = CommonArgs { scheme: Some(SchemeArg::B), alpha: Some(0.5), ..Default::default() }.resolve().unwrap();
        assert_eq!((s.params.alpha, s.params.beta), (0.5, 1.0));
    }

    #[test]
    fn flags_override_file() {
        let file: CommonArgs = serde_json::from_str(r#"{"tau": 0.3, "T": 0.8, "m": 2}"#).unwrap();
        let s = CommonArgs { tau: Some(0.6), ..Default::default() }.over(file).into_settings().unwrap();
        assert_eq!(s.params.tau, 0.6);
        assert_eq!(s.params.t_loss, 0.8);
        assert_eq!(s.params.m, 2);
    }

    #[test]
    fn unknown_file_key_rejected() {
        assert!(serde_json::from_str::<CommonArgs>(r#"{"tua": 0.3}"#).is_err());
    }

    #[test]
    fn bad_value_names_field() {
        let e = CommonArgs { tau: Some(1.5), ..Default::default() }.resolve().unwrap_err();
        assert!(e.to_string().contains("tau"));
    }
}
