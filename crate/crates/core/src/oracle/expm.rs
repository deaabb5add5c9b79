//! Matrix exponentials for the oracle: dense scaling-and-squaring for small
//! blocks, and a sub-stepped Taylor series for applying exp(G) to a vector
//! when only the action of G is available.

use num_complex::Complex64;

use crate::error::{Error, Result};

const MAX_TERMS: usize = 60;

fn matmul(a: &[Complex64], b: &[Complex64], n: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            if aik.re == 0.0 && aik.im == 0.0 {
                continue;
            }
            let row = &b[k * n..(k + 1) * n];
            let dst = &mut out[i * n..(i + 1) * n];
            for (d, &bkj) in dst.iter_mut().zip(row) {
                *d += aik * bkj;
            }
        }
    }
    out
}

fn norm1(a: &[Complex64], n: usize) -> f64 {
    (0..n).map(|j| (0..n).map(|i| a[i * n + j].norm()).sum::<f64>()).fold(0.0, f64::max)
}

/// e^A for a dense row-major n×n matrix.
pub fn expm_dense(a: &[Complex64], n: usize) -> Result<Vec<Complex64>> {
    let nrm = norm1(a, n);
    let squarings = if nrm > 0.5 { (nrm / 0.5).log2().ceil() as u32 } else { 0 };
    let scale = 0.5f64.powi(squarings as i32);
    let b: Vec<Complex64> = a.iter().map(|&x| x * scale).collect();

    let mut result = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        result[i * n + i] = Complex64::new(1.0, 0.0);
    }
    let mut term = result.clone();
    let mut converged = false;
    for k in 1..=MAX_TERMS {
        term = matmul(&term, &b, n);
        let inv_k = 1.0 / k as f64;
        term.iter_mut().for_each(|x| *x *= inv_k);
        for (r, t) in result.iter_mut().zip(&term) {
            *r += t;
        }
        if norm1(&term, n) <= 1e-18 * norm1(&result, n) {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::Consistency { what: "dense Taylor series", residue: norm1(&term, n) });
    }
    for _ in 0..squarings {
        result = matmul(&result, &result, n);
    }
    Ok(result)
}

/// Replaces `v` by e^G v, where `apply(x, out)` writes G x into `out` and
/// `norm_bound` bounds ‖G‖. The interval is cut into steps of norm at most 2.
pub fn expm_apply<F>(apply: F, v: &mut [Complex64], norm_bound: f64) -> Result<()>
where
    F: Fn(&[Complex64], &mut [Complex64]),
{
    let steps = (norm_bound / 2.0).ceil().max(1.0) as usize;
    let inv_steps = 1.0 / steps as f64;
    let n = v.len();
    let mut term = vec![Complex64::new(0.0, 0.0); n];
    let mut next = vec![Complex64::new(0.0, 0.0); n];
    let sq = |x: &[Complex64]| x.iter().map(|z| z.norm_sqr()).sum::<f64>();
    for _ in 0..steps {
        term.copy_from_slice(v);
        let base = sq(v).max(f64::MIN_POSITIVE);
        let mut converged = false;
        for k in 1..=MAX_TERMS {
            next.iter_mut().for_each(|x| *x = Complex64::new(0.0, 0.0));
            apply(&term, &mut next);
            let f = inv_steps / k as f64;
            for (t, x) in term.iter_mut().zip(&next) {
                *t = x * f;
            }
            for (a, t) in v.iter_mut().zip(&term) {
                *a += t;
            }
            if sq(&term) <= 1e-36 * base {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::Consistency { what: "vector Taylor series", residue: sq(&term).sqrt() });
        }
    }
    Ok(())
}
