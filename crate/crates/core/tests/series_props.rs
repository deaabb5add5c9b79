use num_complex::Complex64;
use proptest::prelude::*;
use psmetro::series::{extract_derivative, series_exp, series_mul};
use psmetro::{MultiIndex, TruncatedSeries};

const NAMES: [&str; 4] = ["s", "t", "x", "y"];

fn registry(nvars: usize, cap: u8) -> TruncatedSeries<Complex64> {
    let vars: Vec<(&'static str, u8)> = NAMES[..nvars].iter().map(|&n| (n, cap)).collect();
    TruncatedSeries::zero(&vars).unwrap()
}

/// A random polynomial without constant term: (degrees, re, im) per term.
fn poly(nvars: usize, cap: u8) -> impl Strategy<Value = Vec<(Vec<u8>, f64, f64)>> {
    prop::collection::vec((prop::collection::vec(0..=cap, nvars), -1.0..1.0f64, -1.0..1.0f64), 1..6)
}

fn build(base: &TruncatedSeries<Complex64>, terms: &[(Vec<u8>, f64, f64)]) -> TruncatedSeries<Complex64> {
    let mut z = base.empty_like();
    for (deg, re, im) in terms {
        let idx = MultiIndex::from_slice(deg).unwrap();
        if idx.is_zero() {
            continue;
        }
        z.add_term(idx, Complex64::new(*re, *im));
    }
    z
}

fn all_indices(nvars: usize, cap: u8) -> Vec<Vec<u8>> {
    let mut out = vec![vec![]];
    for _ in 0..nvars {
        out = out.into_iter().flat_map(|v| (0..=cap).map(move |d| [v.clone(), vec![d]].concat())).collect();
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn exp_is_a_homomorphism(
        (nvars, cap, a, b) in (1usize..=4, 1u8..=3).prop_flat_map(|(n, c)| (Just(n), Just(c), poly(n, c), poly(n, c)))
    ) {
        let base = registry(nvars, cap);
        let za = build(&base, &a);
        let zb = build(&base, &b);
        let lhs = series_exp(&za.add(&zb).unwrap()).unwrap();
        let rhs = series_mul(&series_exp(&za).unwrap(), &series_exp(&zb).unwrap()).unwrap();
        for deg in all_indices(nvars, cap) {
            let idx = MultiIndex::from_slice(&deg).unwrap();
            let (l, r) = (lhs.coeff(&idx), rhs.coeff(&idx));
            prop_assert!((l - r).norm() <= 1e-12 * l.norm().max(r.norm()).max(1.0), "{deg:?}: {l} vs {r}");
        }
    }

    #[test]
    fn factorial_scaling_single_variable(re in -2.0..2.0f64, im in -2.0..2.0f64, k in 0u8..=6) {
        let a = Complex64::new(re, im);
        let mut z = registry(1, 6);
        z.add_term(MultiIndex::from_slice(&[1]).unwrap(), a);
        let d = extract_derivative(&z, &MultiIndex::from_slice(&[k]).unwrap()).unwrap();
        let expect = a.powu(k as u32);
        prop_assert!((d - expect).norm() <= 1e-12 * expect.norm().max(1.0));
    }

    #[test]
    fn conjugation_symmetry(terms in prop::collection::vec((0u8..=3, 0u8..=3, -1.0..1.0f64, -1.0..1.0f64), 1..6)) {
        // Z(s,t)* = Z(t,s): pair every term with its mirrored conjugate.
        let mut z = registry(2, 3);
        for (i, j, re, im) in terms {
            if i == 0 && j == 0 {
                continue;
            }
            let c = Complex64::new(re, im);
            z.add_term(MultiIndex::from_slice(&[i, j]).unwrap(), c);
            z.add_term(MultiIndex::from_slice(&[j, i]).unwrap(), c.conj());
        }
        let e = series_exp(&z).unwrap();
        for k in 0..=3u8 {
            for l in 0..=3u8 {
                let kl = e.derivative_at_origin(&MultiIndex::from_slice(&[k, l]).unwrap()).unwrap();
                let lk = e.derivative_at_origin(&MultiIndex::from_slice(&[l, k]).unwrap()).unwrap();
                prop_assert!((kl - lk.conj()).norm() <= 1e-12 * kl.norm().max(1.0));
            }
        }
    }
}
