//! Acceptance run: one line per criterion.
//!
//! Criteria whose published claims the model does not reproduce are listed
//! in `KNOWN_UNMET`; they are still evaluated and reported as FAIL, but do
//! not make the run exit nonzero. Any other failure does.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI};
use std::time::{Duration, Instant};

use psmetro::detection::{homodyne_stats, phase_sensitivity, subtracted_moment};
use psmetro::lossy::{cq_of_lambda, qfi_lossy};
use psmetro::optimize::grid_then_golden;
use psmetro::oracle::{CutoffPolicy, Oracle};
use psmetro::photon_number::internal_photon_number;
use psmetro::qfi::{qcrb, qfi_ideal};
use psmetro::{Error, Params, Scheme};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const KNOWN_UNMET: &[u32] = &[9];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

const SCHEMES: [Scheme; 2] = [Scheme::A, Scheme::B];

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut oracle = Oracle::new(CutoffPolicy::default());
    let (mut worst, mut points, mut failures, mut max_cutoff) = (0.0f64, 0, Vec::new(), 0);
    for g in [0.3, 1.0] {
        for s in SCHEMES {
            for t in [0.7, 1.0] {
                for tau in [0.3, 0.5, 0.7] {
                    for phi in [0.3, FRAC_PI_2] {
                        for m in 0..=3 {
                            let p = Params { m, g, tau, phi, t_loss: t, ..Params::scheme(s) };
                            let a = phase_sensitivity(&p).unwrap();
                            let o = oracle.phase_sensitivity(&p).unwrap();
                            let r = rel(a, o.value);
                            let tol = if o.error_estimate > 1e-7 * o.value { 1e-4 } else { 1e-6 };
                            if r > tol {
                                failures.push(format!("{p:?}: {a} vs {}", o.value));
                            }
                            worst = worst.max(r);
                            max_cutoff = max_cutoff.max(o.cutoff);
                            points += 1;
                        }
                    }
                }
            }
        }
    }
    let elapsed = start.elapsed();
    let in_budget = elapsed < Duration::from_secs(300);
    outcome(
        failures.is_empty() && in_budget,
        format!(
            "{points} points, worst rel diff {worst:.2e}, cutoffs up to {max_cutoff}, {:.0} s{}",
            elapsed.as_secs_f64(),
            failures.first().map(|f| format!("; first failure {f}")).unwrap_or_default()
        ),
    )
}

fn criterion_2() -> Outcome {
    let mut oracle = Oracle::new(CutoffPolicy::default());
    let (mut worst_f, mut worst_l, mut points) = (0.0f64, 0.0f64, 0);
    for g in [0.3, 1.0] {
        for s in SCHEMES {
            for tau in [0.3, 0.5, 0.7] {
                for phi in [0.3, FRAC_PI_2] {
                    for m in 0..=3 {
                        let p = Params { m, g, tau, phi, ..Params::scheme(s) };
                        let a = qfi_ideal(&p).unwrap().f;
                        let o = oracle.qfi_ideal(&p).unwrap().value;
                        worst_f = worst_f.max(rel(a, o));
                        for eta in [0.5, 0.8, 1.0] {
                            let q = Params { eta, ..p };
                            let a = qfi_lossy(&q).unwrap().f_lossy;
                            let o = oracle.qfi_lossy(&q).unwrap().value;
                            worst_l = worst_l.max(rel(a, o));
                        }
                        points += 1;
                    }
                }
            }
        }
    }
    outcome(
        worst_f < 1e-5 && worst_l < 1e-5,
        format!("{points} points; worst rel diff F {worst_f:.2e}, F_L {worst_l:.2e}"),
    )
}

fn criterion_3() -> Outcome {
    let mut worst = 0.0f64;
    for m in 0..=6 {
        let p = Params { m, g: 0.0, ..Params::scheme(Scheme::A) };
        worst = worst.max((phase_sensitivity(&p).unwrap() - FRAC_1_SQRT_2).abs());
        worst = worst.max((qfi_ideal(&p).unwrap().f - 4.0).abs());
        for eta in [0.2, 0.5, 0.8, 1.0] {
            worst = worst.max((qfi_lossy(&Params { eta, ..p }).unwrap().f_lossy - 4.0 * eta).abs());
        }
    }
    let n = 1f64.sinh().powi(2);
    let f = qfi_ideal(&Params { alpha: 0.0, ..Params::default() }).unwrap().f;
    let fb = (f - 4.0 * n * (n + 1.0)).abs();
    let nt = internal_photon_number(&Params::default()).unwrap().n_total;
    let nc = (nt - (2f64.cosh() + 2.0 * n)).abs();
    outcome(
        worst < 1e-8 && fb < 1e-8 && nc < 1e-8,
        format!("(a) max dev {worst:.1e}; (b) F = {f:.10} dev {fb:.1e}; (c) N_T = {nt:.10} dev {nc:.1e}"),
    )
}

fn criterion_4() -> Outcome {
    let mut notes = Vec::new();
    let mut pass = true;
    for s in SCHEMES {
        for m in 0..=3 {
            let mut best = (f64::INFINITY, 0.0, 0.0);
            for i in 0..=100 {
                let phi = 2.0 * PI * i as f64 / 100.0;
                for j in 1..=19 {
                    let tau = j as f64 / 20.0;
                    let d = phase_sensitivity(&Params { m, phi, tau, ..Params::scheme(s) }).unwrap_or(f64::INFINITY);
                    if d < best.0 {
                        best = (d, phi, tau);
                    }
                }
            }
            pass &= (best.1 - FRAC_PI_2).abs() <= 0.1 && (best.2 - 0.5).abs() <= 0.1;
            notes.push(format!("{s:?}{m}:({:.3},{:.2})", best.1, best.2));
        }
    }
    outcome(pass, format!("argmin (phi, tau): {}", notes.join(" ")))
}

fn criterion_5() -> Outcome {
    let mut pass = true;
    let mut notes = Vec::new();
    let d = |s, m| phase_sensitivity(&Params { m, ..Params::scheme(s) }).unwrap();
    for s in SCHEMES {
        let v: Vec<f64> = (0..=3).map(|m| d(s, m)).collect();
        pass &= v.windows(2).all(|w| w[1] < w[0]);
        notes.push(format!("{s:?}: {}", v.iter().map(|x| format!("{x:.6}")).collect::<Vec<_>>().join(" ")));
    }
    for m in 0..=3 {
        pass &= d(Scheme::A, m) <= d(Scheme::B, m);
    }
    outcome(pass, notes.join("; "))
}

fn criterion_6() -> Outcome {
    let mut pass = true;
    let mut notes = Vec::new();
    for s in SCHEMES {
        for m in 0..=3 {
            let better = |t: f64| {
                let p = Params { m, t_loss: t, ..Params::scheme(s) };
                phase_sensitivity(&Params { tau: 0.7, ..p }).unwrap()
                    < phase_sensitivity(&Params { tau: 0.5, ..p }).unwrap()
            };
            // Largest T such that τ=0.7 wins on all of (0, T].
            let mut crossover = None;
            for i in 1..=1000 {
                let t = i as f64 / 1000.0;
                if better(t) {
                    crossover = Some(t);
                } else {
                    break;
                }
            }
            match crossover {
                Some(t) => notes.push(format!("{s:?}{m}: T*={t:.3}")),
                None => {
                    pass = false;
                    notes.push(format!("{s:?}{m}: none"));
                }
            }
        }
    }
    outcome(pass, format!("crossover {}", notes.join(" ")))
}

fn criterion_7() -> Outcome {
    let mut pass = true;
    let mut notes = Vec::new();
    for s in SCHEMES {
        for m in 0..=3 {
            let f = |phi: f64, tau: f64| qfi_ideal(&Params { m, phi, tau, ..Params::scheme(s) }).unwrap().f;
            for phi in [0.3, 1.9, 4.0] {
                pass &= (f(phi, 0.5) - f(phi + 2.0 * PI, 0.5)).abs() <= 1e-12 * f(phi, 0.5);
            }
            if m == 0 {
                // Without subtraction F does not depend on φ; argmax and range are undefined.
                continue;
            }
            let phis: Vec<f64> = (0..=200).map(|i| 2.0 * PI * i as f64 / 200.0).collect();
            let fs: Vec<f64> = phis.iter().map(|&p| f(p, 0.5)).collect();
            let (imax, fmax) = fs.iter().enumerate().fold((0, f64::MIN), |b, (i, &x)| if x > b.1 { (i, x) } else { b });
            let fmin = fs.iter().cloned().fold(f64::MAX, f64::min);
            let ft: Vec<f64> = (0..=60).map(|i| f(FRAC_PI_2, 0.2 + 0.01 * i as f64)).collect();
            let tmax = ft.iter().cloned().fold(f64::MIN, f64::max);
            let tmin = ft.iter().cloned().fold(f64::MAX, f64::min);
            let (range_phi, range_tau) = ((fmax - fmin) / fmax, (tmax - tmin) / tmax);
            pass &= (phis[imax] - FRAC_PI_2).abs() <= 0.1 && range_phi >= 10.0 * range_tau;
            notes.push(format!("{s:?}{m}: argmax {:.3}, ratio {:.1}", phis[imax], range_phi / range_tau));
        }
    }
    outcome(pass, notes.join("; "))
}

fn criterion_8() -> Outcome {
    let mut pass = true;
    let mut notes = Vec::new();
    for m in 0..=3 {
        let n = |s, t| internal_photon_number(&Params { m, t_loss: t, ..Params::scheme(s) }).unwrap().n_total;
        let (a1, b1) = (n(Scheme::A, 1.0), n(Scheme::B, 1.0));
        let (a0, b0) = (n(Scheme::A, 0.0), n(Scheme::B, 0.0));
        let (da, db) = (a1 - n(Scheme::A, 0.5), b1 - n(Scheme::B, 0.5));
        pass &= (a1 - b1).abs() <= 1e-9 && a0 > 0.0 && b0 > 0.0 && da > db;
        notes.push(format!("m={m}: N(1)={a1:.4}, drop A {da:.3} B {db:.3}"));
    }
    outcome(pass, notes.join("; "))
}

/// Δφ minimized over τ, with T = η.
fn optimal_tau(s: Scheme, m: u32, t: f64) -> (f64, f64) {
    let f = |tau: f64| {
        phase_sensitivity(&Params { m, tau, t_loss: t, eta: t, ..Params::scheme(s) }).unwrap_or(f64::INFINITY)
    };
    let (best, _) = grid_then_golden(f, 0.01, 0.99, 99, 1e-6);
    (best.x, best.fx)
}

fn photon_number_at(s: Scheme, m: u32, t: f64, tau: f64) -> f64 {
    internal_photon_number(&Params { m, tau, t_loss: t, eta: t, ..Params::scheme(s) }).unwrap().n_total
}

/// Largest loss 1−T such that Δφ stays below 1/√N_T for all smaller losses.
fn sql_threshold(s: Scheme, m: u32) -> f64 {
    let beats = |t: f64| {
        let (tau, d) = optimal_tau(s, m, t);
        d < 1.0 / photon_number_at(s, m, t, tau).sqrt()
    };
    let mut t = 1.0;
    while t > 0.01 && beats(t - 0.01) {
        t -= 0.01;
    }
    let (mut lo, mut hi) = (t - 0.01, t);
    for _ in 0..20 {
        let mid = 0.5 * (lo + hi);
        if beats(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    1.0 - hi
}

fn criterion_9() -> Outcome {
    let (tau, d) = optimal_tau(Scheme::A, 3, 0.8);
    let hl = 1.0 / photon_number_at(Scheme::A, 3, 0.8, tau);
    let l0 = sql_threshold(Scheme::A, 0);
    let l3 = sql_threshold(Scheme::A, 3);
    let lb0 = sql_threshold(Scheme::B, 0);
    let lb3 = sql_threshold(Scheme::B, 3);
    let hl_ok = d < hl;
    let l0_ok = (0.25..=0.5).contains(&l0);
    let l3_ok = (0.7..=0.9).contains(&l3);
    outcome(
        hl_ok && l0_ok && l3_ok,
        format!(
            "m=3 at 20% loss: dphi {d:.4} vs HL {hl:.4} ({}); SQL loss threshold m=0 {l0:.3} ({}), m=3 {l3:.3} ({}); scheme B: {lb0:.3}, {lb3:.3}",
            if hl_ok { "ok" } else { "not below" },
            if l0_ok { "ok" } else { "outside [0.25, 0.5]" },
            if l3_ok { "ok" } else { "outside [0.7, 0.9]" },
        ),
    )
}

fn random_params(rng: &mut ChaCha8Rng) -> Params {
    let t = rng.gen_range(0.2..=1.0);
    Params {
        alpha: rng.gen_range(0.0..1.5),
        beta: rng.gen_range(0.0..1.5),
        g: rng.gen_range(0.0..1.2),
        theta: rng.gen_range(0.0..2.0 * PI),
        phi: rng.gen_range(0.0..2.0 * PI),
        tau: rng.gen_range(0.05..0.95),
        t_loss: t,
        eta: t,
        m: rng.gen_range(0..=3),
        ..Params::default()
    }
}

fn criterion_10() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_2026);
    let mut failures: Vec<String> = Vec::new();
    let mut fail = |what: &str, p: &Params, detail: String| failures.push(format!("{what} at {p:?}: {detail}"));
    let mut skipped = 0;
    let mut oracle = Oracle::new(CutoffPolicy::default());
    for draw in 0..100 {
        let p = random_params(&mut rng);
        let h = match homodyne_stats(&p) {
            Ok(h) => h,
            Err(Error::Annihilated { .. }) => {
                skipped += 1;
                continue;
            }
            Err(e) => {
                fail("homodyne", &p, e.to_string());
                continue;
            }
        };
        for (k, l) in [(1, 0), (2, 0), (2, 1)] {
            let (a, b) = (subtracted_moment(&p, k, l).unwrap(), subtracted_moment(&p, l, k).unwrap());
            if (a - b.conj()).norm() > 1e-9 * a.norm().max(1.0) {
                fail("hermiticity", &p, format!("{a} vs {b}"));
            }
        }
        let step = 1e-5;
        let mean = |phi| homodyne_stats(&Params { phi, ..p }).unwrap().mean_x;
        let fd = (mean(p.phi + step) - mean(p.phi - step)) / (2.0 * step);
        if (fd - h.dmean_dphi).abs() > 1e-6 * h.dmean_dphi.abs().max(1e-3) {
            fail("phase jet", &p, format!("{} vs {fd}", h.dmean_dphi));
        }
        let q = qfi_ideal(&p).unwrap();
        if q.braket_check > 1e-8 || q.conjugate_check > 1e-8 {
            fail("gauge", &p, format!("{} / {}", q.braket_check, q.conjugate_check));
        }
        if q.f > 0.0 && h.delta_phi < qcrb(q.f, 1).unwrap() - 1e-9 {
            fail("cramer-rao", &p, format!("{} < {}", h.delta_phi, q.qcrb));
        }
        let l = qfi_lossy(&p).unwrap();
        if l.f_lossy > q.f + 1e-9 * q.f.max(1.0) {
            fail("lossy bound", &p, format!("{} > {}", l.f_lossy, q.f));
        }
        if l.f_lossy > 0.0 && h.delta_phi < 1.0 / l.f_lossy.sqrt() - 1e-9 {
            fail("lossy cramer-rao", &p, format!("{} < {}", h.delta_phi, 1.0 / l.f_lossy.sqrt()));
        }
        if let Some(star) = l.lambda_opt {
            let c = cq_of_lambda(&p, star).unwrap();
            for k in 0..20 {
                let lam = -2.0 + 3.0 * k as f64 / 19.0;
                if c > cq_of_lambda(&p, lam).unwrap() + 1e-9 * c.max(1.0) {
                    fail("lambda minimizer", &p, format!("C_Q({star}) > C_Q({lam})"));
                }
            }
        }
        if draw % 10 == 0 {
            let o = oracle.qfi_ideal(&p).unwrap();
            let up = Oracle::new(CutoffPolicy::Fixed(o.cutoff + 20)).qfi_ideal(&p).unwrap();
            if rel(o.value, up.value) > 1e-7 {
                fail("cutoff convergence", &p, format!("{} vs {} (K={})", o.value, up.value, o.cutoff));
            }
            if rel(q.f, o.value) > 1e-5 {
                fail("oracle qfi", &p, format!("{} vs {}", q.f, o.value));
            }
        }
    }
    let elapsed = start.elapsed();
    let in_budget = elapsed < Duration::from_secs(600);
    outcome(
        failures.is_empty() && in_budget,
        format!(
            "100 draws ({skipped} annihilated), {} violations, {:.0} s{}",
            failures.len(),
            elapsed.as_secs_f64(),
            failures.first().map(|f| format!("; first: {f}")).unwrap_or_default()
        ),
    )
}

fn main() {
    let criteria: [(u32, fn() -> Outcome); 10] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
        (10, criterion_10),
    ];
    let filter: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut unexpected = 0;
    for (id, run) in criteria {
        if !filter.is_empty() && !filter.contains(&id) {
            continue;
        }
        let o = run();
        let known = KNOWN_UNMET.contains(&id);
        let tag = match (o.pass, known) {
            (true, _) => "PASS",
            (false, true) => "FAIL (known)",
            (false, false) => "FAIL",
        };
        println!("criterion {id:>2}: {tag} - {}", o.detail);
        if !o.pass && !known {
            unexpected += 1;
        }
    }
    if unexpected > 0 {
        std::process::exit(1);
    }
}
