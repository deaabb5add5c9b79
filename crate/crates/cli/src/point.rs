//! Evaluation of one parameter point.

use std::fmt;
use std::str::FromStr;

use psmetro::detection::phase_sensitivity;
use psmetro::lossy::qfi_lossy;
use psmetro::oracle::{
    oracle_internal_photon_number, oracle_phase_sensitivity, oracle_qfi_ideal, oracle_qfi_lossy, CutoffPolicy,
};
use psmetro::photon_number::internal_photon_number;
use psmetro::qfi::qfi_ideal;
use psmetro::{Error, Params};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Quantity {
    DeltaPhi,
    F,
    FLossy,
    Qcrb,
    QcrbLossy,
    NTotal,
    Sql,
    Hl,
}

impl Quantity {
    pub const ALL: [Quantity; 8] = [
        Quantity::DeltaPhi,
        Quantity::F,
        Quantity::FLossy,
        Quantity::Qcrb,
        Quantity::QcrbLossy,
        Quantity::NTotal,
        Quantity::Sql,
        Quantity::Hl,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Quantity::DeltaPhi => "delta_phi",
            Quantity::F => "F",
            Quantity::FLossy => "F_lossy",
            Quantity::Qcrb => "qcrb",
            Quantity::QcrbLossy => "qcrb_lossy",
            Quantity::NTotal => "n_total",
            Quantity::Sql => "sql",
            Quantity::Hl => "hl",
        }
    }

    fn group(self) -> Group {
        match self {
            Quantity::DeltaPhi => Group::Detection,
            Quantity::F | Quantity::Qcrb => Group::Ideal,
            Quantity::FLossy | Quantity::QcrbLossy => Group::Lossy,
            Quantity::NTotal | Quantity::Sql | Quantity::Hl => Group::Photon,
        }
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Quantity {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        Quantity::ALL.into_iter().find(|q| q.name() == s).ok_or_else(|| {
            let names: Vec<_> = Quantity::ALL.iter().map(|q| q.name()).collect();
            CliError::Usage(format!("unknown quantity `{s}` (expected one of {})", names.join(", ")))
        })
    }
}

pub fn parse_quantities(list: &[String]) -> Result<Vec<Quantity>, CliError> {
    let mut out = Vec::new();
    for item in list.iter().flat_map(|s| s.split(',')) {
        let q: Quantity = item.trim().parse()?;
        if !out.contains(&q) {
            out.push(q);
        }
    }
    if out.is_empty() {
        return Err(CliError::Usage("no quantities requested".into()));
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Ok,
    Infinite,
    Annihilated,
    /// A physics module reported an internal error; details go to stderr.
    Failed,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Infinite => "infinite",
            Status::Annihilated => "annihilated",
            Status::Failed => "failed",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Group {
    Detection,
    Ideal,
    Lossy,
    Photon,
}

/// Brute-force comparison of the subcommand's primary quantity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleCells {
    pub value: Option<f64>,
    pub cutoff: Option<usize>,
    pub tail: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResultRow {
    pub params: Params,
    pub values: Vec<(Quantity, Option<f64>)>,
    pub oracle: Option<OracleCells>,
    pub status: Status,
    /// Error messages behind a `failed` status.
    pub notes: Vec<String>,
}

struct Acc {
    status: Status,
    notes: Vec<String>,
}

impl Acc {
    fn flag(&mut self, s: Status) {
        self.status = self.status.max(s);
    }

    /// Finite values pass through; everything else becomes an empty cell with a flag.
    fn cell(&mut self, x: Result<f64, &Error>) -> Option<f64> {
        match x {
            Ok(v) if v.is_finite() => Some(v),
            Ok(v) if v.is_infinite() => {
                self.flag(Status::Infinite);
                None
            }
            Ok(v) => {
                self.flag(Status::Failed);
                self.notes.push(format!("non-finite value {v}"));
                None
            }
            Err(e) => {
                self.error(e);
                None
            }
        }
    }

    fn error(&mut self, e: &Error) {
        match e {
            Error::Annihilated { .. } => self.flag(Status::Annihilated),
            other => {
                self.flag(Status::Failed);
                let msg = other.to_string();
                if !self.notes.contains(&msg) {
                    self.notes.push(msg);
                }
            }
        }
    }
}

fn bound(f: f64, v: u32) -> f64 {
    if f > 0.0 {
        1.0 / (v as f64 * f).sqrt()
    } else {
        f64::INFINITY
    }
}

/// Primary quantity of a point subcommand, checked by the oracle.
pub fn primary(q: &[Quantity]) -> Option<Quantity> {
    q.first().copied()
}

pub fn run_point(p: &Params, quantities: &[Quantity], oracle: Option<CutoffPolicy>) -> Result<ResultRow, CliError> {
    p.validate()?;
    let mut acc = Acc { status: Status::Ok, notes: Vec::new() };
    let wants = |g: Group| quantities.iter().any(|q| q.group() == g);

    let det = wants(Group::Detection).then(|| phase_sensitivity(p));
    let ideal = wants(Group::Ideal).then(|| qfi_ideal(p).map(|r| r.f));
    let lossy = wants(Group::Lossy).then(|| qfi_lossy(p).map(|r| r.f_lossy));
    let photon = wants(Group::Photon).then(|| internal_photon_number(p));

    let mut values = Vec::with_capacity(quantities.len());
    for &q in quantities {
        let x = match q {
            Quantity::DeltaPhi => det.as_ref().unwrap().as_ref().copied(),
            Quantity::F => ideal.as_ref().unwrap().as_ref().copied(),
            Quantity::Qcrb => ideal.as_ref().unwrap().as_ref().map(|&f| bound(f, p.v)),
            Quantity::FLossy => lossy.as_ref().unwrap().as_ref().copied(),
            Quantity::QcrbLossy => lossy.as_ref().unwrap().as_ref().map(|&f| bound(f, p.v)),
            Quantity::NTotal => photon.as_ref().unwrap().as_ref().map(|r| r.n_total),
            Quantity::Sql => photon.as_ref().unwrap().as_ref().map(|r| r.sql),
            Quantity::Hl => photon.as_ref().unwrap().as_ref().map(|r| r.hl),
        };
        values.push((q, acc.cell(x)));
    }

    let oracle = match (oracle, primary(quantities)) {
        (Some(policy), Some(q)) => {
            let r = match q.group() {
                Group::Detection => oracle_phase_sensitivity(p, policy),
                Group::Ideal => oracle_qfi_ideal(p, policy),
                Group::Lossy => oracle_qfi_lossy(p, policy),
                Group::Photon => oracle_internal_photon_number(p, policy),
            };
            Some(match r {
                Ok(v) => OracleCells { value: acc.cell(Ok(v.value)), cutoff: Some(v.cutoff), tail: Some(v.tail) },
                Err(e) => {
                    acc.error(&e);
                    OracleCells { value: None, cutoff: None, tail: None }
                }
            })
        }
        _ => None,
    };

    Ok(ResultRow { params: *p, values, oracle, status: acc.status, notes: acc.notes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use psmetro::Scheme;

    #[test]
    fn defaults_are_ok() {
        let q = [Quantity::DeltaPhi, Quantity::F, Quantity::Qcrb];
        let r = run_point(&Params::default(), &q, None).unwrap();
        assert_eq!(r.status, Status::Ok);
        assert!(r.values.iter().all(|(_, v)| v.is_some()));
    }

    #[test]
    fn empty_output_mode_is_annihilated() {
        let p = Params { tau: 1.0, g: 0.0, m: 1, ..Params::scheme(Scheme::B) };
        let r = run_point(&p, &[Quantity::DeltaPhi], None).unwrap();
        assert_eq!(r.status, Status::Annihilated);
        assert_eq!(r.values[0].1, None);
    }

    #[test]
    fn no_signal_is_infinite() {
        let p = Params { alpha: 0.0, beta: 0.0, ..Params::default() };
        let r = run_point(&p, &[Quantity::DeltaPhi], None).unwrap();
        assert_eq!(r.status, Status::Infinite);
        assert_eq!(r.values[0].1, None);
    }

    #[test]
    fn quantity_names_round_trip() {
        for q in Quantity::ALL {
            assert_eq!(q.name().parse::<Quantity>().unwrap(), q);
        }
        assert!(parse_quantities(&["F,bogus".into()]).is_err());
    }
}
