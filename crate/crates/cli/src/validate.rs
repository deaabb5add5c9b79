//! Self-check suite: analytic modules against the Fock-space oracle,
//! closed-form anchors and structural invariants.

use std::f64::consts::FRAC_1_SQRT_2;

use clap::ValueEnum;
use psmetro::detection::{homodyne_from_exponent, phase_sensitivity};
use psmetro::lossy::qfi_lossy;
use psmetro::model::{build_z0, vars};
use psmetro::oracle::{CutoffPolicy, Oracle};
use psmetro::photon_number::{internal_photon_number, internal_photon_number_with};
use psmetro::qfi::{qfi_ideal, qfi_ideal_with};
use psmetro::{ExponentForm, LossSymbol, MultiIndex, Params, PhaseJet, Scalar, Scheme};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Quick,
    Full,
}

/// Deliberate corruptions used to test that the suite catches them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Fixture {
    /// Negate the st coefficient of the detection exponent.
    FlipX4Sign,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub value: Option<f64>,
    pub reference: Option<f64>,
    pub tolerance: f64,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub level: Level,
    pub passed: bool,
    pub checks: Vec<Check>,
}

type Res = psmetro::Result<f64>;

struct Suite {
    checks: Vec<Check>,
}

impl Suite {
    /// Relative comparison.
    fn rel(&mut self, name: &str, value: Res, reference: Res, tol: f64, detail: &str) {
        self.cmp(name, value, reference, tol, detail, |v, r| (v - r).abs() / r.abs().max(1e-300));
    }

    fn abs(&mut self, name: &str, value: Res, reference: Res, tol: f64, detail: &str) {
        self.cmp(name, value, reference, tol, detail, |v, r| (v - r).abs());
    }

    fn cmp(&mut self, name: &str, value: Res, reference: Res, tol: f64, detail: &str, err: impl Fn(f64, f64) -> f64) {
        let check = match (value, reference) {
            (Ok(v), Ok(r)) => {
                let e = err(v, r);
                Check {
                    name: name.into(),
                    value: Some(v),
                    reference: Some(r),
                    tolerance: tol,
                    passed: e <= tol,
                    detail: format!("{detail}; error {e:.3e}"),
                }
            }
            (v, r) => {
                let why: Vec<String> =
                    [v.as_ref().err(), r.as_ref().err()].into_iter().flatten().map(|e| e.to_string()).collect();
                Check {
                    name: name.into(),
                    value: v.as_ref().ok().copied(),
                    reference: r.as_ref().ok().copied(),
                    tolerance: tol,
                    passed: false,
                    detail: format!("{detail}; {}", why.join("; ")),
                }
            }
        };
        self.checks.push(check);
    }

    fn holds(&mut self, name: &str, ok: psmetro::Result<bool>, detail: String) {
        let (passed, detail) = match ok {
            Ok(b) => (b, detail),
            Err(e) => (false, format!("{detail}; {e}")),
        };
        self.checks.push(Check { name: name.into(), value: None, reference: None, tolerance: 0.0, passed, detail });
    }
}

fn detection(p: &Params, fixture: Option<Fixture>) -> Res {
    match fixture {
        None => phase_sensitivity(p),
        Some(Fixture::FlipX4Sign) => {
            let mut z = build_z0::<PhaseJet>(p, LossSymbol::T, (p.m + 2) as u8, ExponentForm::Canonical)?;
            let idx = MultiIndex::from_pairs(&[(vars::S, 1), (vars::T, 1)]);
            let c = z.coeff(&idx);
            z.add_term(idx, c.scale(-2.0));
            Ok(homodyne_from_exponent(p.m, &z)?.delta_phi)
        }
    }
}

pub fn run(level: Level, fixture: Option<Fixture>) -> Report {
    let mut s = Suite { checks: Vec::new() };
    let mut oracle = Oracle::new(CutoffPolicy::default());
    let a = Params::scheme(Scheme::A);
    let b = Params::scheme(Scheme::B);

    let det_points = [
        ("detection_oracle_scheme_a", Params { m: 1, g: 0.6, ..a }),
        ("detection_oracle_scheme_b_lossy", Params { m: 2, g: 0.6, tau: 0.3, phi: 1.2, t_loss: 0.8, ..b }),
    ];
    for (name, p) in det_points {
        let r = oracle.phase_sensitivity(&p).map(|o| o.value);
        s.rel(name, detection(&p, fixture), r, 1e-6, "analytic vs Fock-space delta_phi");
    }
    let coherent = Params { g: 0.0, m: 2, ..a };
    s.abs("detection_anchor_coherent", phase_sensitivity(&coherent), Ok(FRAC_1_SQRT_2), 1e-8, "g=0 gives 1/sqrt(2)");

    let p = Params { m: 1, g: 0.6, beta: 0.4, phi: 0.9, tau: 0.35, ..a };
    s.rel(
        "qfi_oracle",
        qfi_ideal(&p).map(|r| r.f),
        oracle.qfi_ideal(&p).map(|o| o.value),
        1e-5,
        "analytic vs Fock-space F",
    );
    s.abs("qfi_anchor_coherent", qfi_ideal(&coherent).map(|r| r.f), Ok(4.0), 1e-8, "g=0 gives F=4");
    let sh2 = 1f64.sinh().powi(2);
    let vac = Params { alpha: 0.0, ..a };
    s.abs(
        "qfi_anchor_squeezed_vacuum",
        qfi_ideal(&vac).map(|r| r.f),
        Ok(4.0 * sh2 * (sh2 + 1.0)),
        1e-8,
        "two-mode squeezed vacuum",
    );

    let p = Params { m: 1, g: 0.6, eta: 0.7, ..b };
    s.rel(
        "qfi_lossy_oracle",
        qfi_lossy(&p).map(|r| r.f_lossy),
        oracle.qfi_lossy(&p).map(|o| o.value),
        1e-5,
        "analytic vs Fock-space minimized C_Q",
    );
    let eta = 0.6;
    s.abs(
        "qfi_lossy_anchor_coherent",
        qfi_lossy(&Params { eta, ..coherent }).map(|r| r.f_lossy),
        Ok(4.0 * eta),
        1e-8,
        "g=0 gives 4 eta",
    );
    let p = Params { m: 2, phi: 1.1, ..a };
    s.rel(
        "qfi_lossy_lossless_limit",
        qfi_lossy(&p).map(|r| r.f_lossy),
        qfi_ideal(&p).map(|r| r.f),
        1e-9,
        "eta=1 equals ideal F",
    );

    let p = Params { m: 1, g: 0.6, t_loss: 0.6, tau: 0.4, ..b };
    s.rel(
        "nphoton_oracle",
        internal_photon_number(&p).map(|r| r.n_total),
        oracle.internal_photon_number(&p).map(|o| o.value),
        1e-6,
        "analytic vs Fock-space N_T",
    );
    s.abs(
        "nphoton_anchor",
        internal_photon_number(&a).map(|r| r.n_total),
        Ok(2f64.cosh() + 2.0 * sh2),
        1e-8,
        "m=0, g=1, alpha=1",
    );
    s.rel(
        "nphoton_scheme_equality",
        internal_photon_number(&Params { m: 2, ..a }).map(|r| r.n_total),
        internal_photon_number(&Params { m: 2, ..b }).map(|r| r.n_total),
        1e-9,
        "schemes agree without loss",
    );

    let sweep: Vec<Params> = [a, b]
        .into_iter()
        .flat_map(|base| (0..=3).map(move |m| Params { m, tau: 0.3, phi: 1.0, t_loss: 0.8, ..base }))
        .collect();
    let gauge = sweep.iter().try_fold(0f64, |acc, p| Ok::<_, psmetro::Error>(acc.max(qfi_ideal(p)?.braket_check)));
    s.abs("gauge_check", gauge, Ok(0.0), 1e-8, "max |Re<psi'|psi>| over 8 points");
    let cr = sweep.iter().try_fold(true, |ok, p| {
        let ideal = Params { t_loss: 1.0, ..*p };
        let f = qfi_ideal(&ideal)?.f;
        Ok(ok && phase_sensitivity(&ideal)? >= 1.0 / f.sqrt() - 1e-9)
    });
    s.holds("cramer_rao_ordering", cr, "delta_phi >= 1/sqrt(F) over 8 points".into());

    // The reference photon-number table reads η where the loss is T.
    let p = Params { m: 2, beta: 0.3, phi: 0.8, tau: 0.4, t_loss: 0.7, eta: 0.7, ..a };
    s.rel(
        "reference_form_qfi",
        qfi_ideal_with(&p, ExponentForm::Reference).map(|r| r.f),
        qfi_ideal(&p).map(|r| r.f),
        1e-10,
        "reference vs canonical exponent",
    );
    s.rel(
        "reference_form_nphoton",
        internal_photon_number_with(&p, ExponentForm::Reference).map(|r| r.n_total),
        internal_photon_number(&p).map(|r| r.n_total),
        1e-10,
        "reference vs canonical exponent",
    );

    if level == Level::Full {
        let p = Params { m: 2, g: 0.5, phi: 1.0, ..a };
        let at = |k: usize| Oracle::new(CutoffPolicy::Fixed(k));
        s.rel(
            "cutoff_doubling_detection",
            at(30).phase_sensitivity(&p).map(|o| o.value),
            at(60).phase_sensitivity(&p).map(|o| o.value),
            1e-8,
            "cutoff 30 vs 60",
        );
        s.rel(
            "cutoff_doubling_qfi",
            at(30).qfi_ideal(&p).map(|o| o.value),
            at(60).qfi_ideal(&p).map(|o| o.value),
            1e-8,
            "cutoff 30 vs 60",
        );
        let p = Params { eta: 0.8, t_loss: 0.8, ..p };
        s.rel(
            "cutoff_growth_qfi_lossy",
            at(40).qfi_lossy(&p).map(|o| o.value),
            at(60).qfi_lossy(&p).map(|o| o.value),
            1e-7,
            "cutoff 40 vs 60",
        );
        s.rel(
            "cutoff_growth_nphoton",
            at(40).internal_photon_number(&p).map(|o| o.value),
            at(60).internal_photon_number(&p).map(|o| o.value),
            1e-8,
            "cutoff 40 vs 60",
        );
        let p = Params { m: 3, g: 1.0, t_loss: 0.7, ..b };
        s.rel(
            "detection_oracle_unit_gain",
            phase_sensitivity(&p),
            oracle.phase_sensitivity(&p).map(|o| o.value),
            1e-6,
            "analytic vs Fock-space delta_phi at g=1",
        );
    }

    let passed = s.checks.iter().all(|c| c.passed);
    Report { level, passed, checks: s.checks }
}
