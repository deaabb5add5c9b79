use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2};

use psmetro::detection::phase_sensitivity;
use psmetro::lossy::qfi_lossy;
use psmetro::oracle::{
    oracle_internal_photon_number, oracle_phase_sensitivity, oracle_qfi_ideal, oracle_qfi_lossy, CutoffPolicy, Oracle,
};
use psmetro::photon_number::internal_photon_number;
use psmetro::qfi::qfi_ideal;
use psmetro::{Params, Scheme};

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

fn auto() -> CutoffPolicy {
    CutoffPolicy::default()
}

#[test]
fn coherent_sensitivity() {
    let p = Params { g: 0.0, ..Params::scheme(Scheme::A) };
    let v = oracle_phase_sensitivity(&p, CutoffPolicy::Fixed(20)).unwrap();
    assert!((v.value - FRAC_1_SQRT_2).abs() < 1e-7);
}

#[test]
fn lossy_sensitivity_matches_analytic() {
    let p = Params { m: 2, t_loss: 0.8, ..Params::scheme(Scheme::A) };
    let o = oracle_phase_sensitivity(&p, auto()).unwrap();
    let a = phase_sensitivity(&p).unwrap();
    assert!(rel(a, o.value) < 1e-6, "{a} vs {o:?}");
}

#[test]
fn squeezed_vacuum_qfi() {
    let p = Params { alpha: 0.0, ..Params::default() };
    let n = 1f64.sinh().powi(2);
    let o = oracle_qfi_ideal(&p, auto()).unwrap();
    assert!(rel(o.value, 4.0 * n * (n + 1.0)) < 1e-7, "{o:?}");
}

#[test]
fn qfi_matches_analytic_off_axis() {
    let p = Params { m: 2, beta: 0.6, phi: 0.9, tau: 0.3, theta: 2.0, g: 0.7, ..Params::default() };
    let o = oracle_qfi_ideal(&p, auto()).unwrap();
    let a = qfi_ideal(&p).unwrap().f;
    assert!(rel(a, o.value) < 1e-6, "{a} vs {o:?}");
}

#[test]
fn lossy_qfi_matches_analytic() {
    let p = Params { m: 1, g: 0.8, eta: 0.7, ..Params::scheme(Scheme::A) };
    let o = oracle_qfi_lossy(&p, auto()).unwrap();
    let a = qfi_lossy(&p).unwrap();
    assert!(rel(a.f_lossy, o.value) < 1e-5, "{a:?} vs {o:?}");
    assert!((a.lambda_opt.unwrap() - o.lambda.unwrap()).abs() < 1e-3);
}

#[test]
fn lossless_lossy_qfi_is_ideal_qfi() {
    let p = Params { m: 2, g: 0.8, phi: 1.1, ..Params::scheme(Scheme::B) };
    let lossy = oracle_qfi_lossy(&p, auto()).unwrap().value;
    let ideal = oracle_qfi_ideal(&p, auto()).unwrap().value;
    assert!(rel(lossy, ideal) < 1e-7, "{lossy} vs {ideal}");
}

#[test]
fn photon_number_anchors() {
    let p = Params::default();
    let expect = 2f64.cosh() + 2.0 * 1f64.sinh().powi(2);
    assert!((oracle_internal_photon_number(&p, auto()).unwrap().value - expect).abs() < 1e-8);

    // With T = 0 mode a is replaced by vacuum and only mode b remains.
    for s in [Scheme::A, Scheme::B] {
        let p = Params { t_loss: 0.0, ..Params::scheme(s) };
        let (c, sh) = (1f64.cosh().powi(2), 1f64.sinh().powi(2));
        let nb = c * p.beta * p.beta + sh * (p.alpha * p.alpha + 1.0);
        let o = oracle_internal_photon_number(&p, auto()).unwrap().value;
        assert!(o > 0.0);
        assert!(rel(o, nb) < 1e-9, "{s:?}: {o} vs {nb}");
    }
}

#[test]
fn photon_number_matches_analytic_under_loss() {
    for m in 0..=3 {
        let p = Params { m, t_loss: 0.6, g: 0.8, tau: 0.4, phi: 0.7, ..Params::scheme(Scheme::B) };
        let o = oracle_internal_photon_number(&p, auto()).unwrap().value;
        let a = internal_photon_number(&p).unwrap().n_total;
        assert!(rel(a, o) < 1e-6, "m={m}: {a} vs {o}");
    }
}

#[test]
fn cutoff_convergence_at_unit_gain() {
    let p = Params { m: 3, phi: FRAC_PI_2, ..Params::scheme(Scheme::A) };
    let lo = oracle_phase_sensitivity(&p, CutoffPolicy::Fixed(80)).unwrap().value;
    let hi = oracle_phase_sensitivity(&p, CutoffPolicy::Fixed(100)).unwrap().value;
    assert!(rel(lo, hi) < 1e-7, "{lo} vs {hi}");
}

#[test]
fn moments_are_hermitian() {
    let p = Params { m: 2, g: 0.6, beta: 0.5, phi: 0.4, tau: 0.35, t_loss: 0.9, ..Params::default() };
    let mut o = Oracle::new(auto());
    let (kl, _) = o.moment(&p, 2, 1).unwrap();
    let (lk, _) = o.moment(&p, 1, 2).unwrap();
    assert!((kl - lk.conj()).norm() < 1e-12 * kl.norm().max(1.0));
    let analytic = psmetro::detection::subtracted_moment(&p, 2, 1).unwrap();
    assert!((kl - analytic).norm() < 1e-8 * kl.norm().max(1.0), "{kl} vs {analytic}");
}
