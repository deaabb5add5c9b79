//! One-dimensional minimization: a coarse grid to bracket, golden section to refine.

/// 1/φ where φ is the golden ratio.
const INV_PHI: f64 = 0.618_033_988_749_894_8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Minimum {
    pub x: f64,
    pub fx: f64,
    /// The search window had to be enlarged because the minimum sat on its edge.
    pub widened: bool,
}

/// Golden-section search on [a, b] until the bracket is narrower than `xtol`.
pub fn golden_section<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, xtol: f64) -> (f64, f64) {
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    // Each step shrinks the bracket by 1/φ; cap the count in case xtol is below
    // the float spacing of the bracket.
    for _ in 0..200 {
        if (b - a).abs() <= xtol {
            break;
        }
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    if fc <= fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// Samples `n` equispaced points on [a, b], then refines around the best one.
/// Returns the minimum and whether the best grid point was an endpoint.
pub fn grid_then_golden<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, n: usize, xtol: f64) -> (Minimum, bool) {
    let n = n.max(3);
    let h = (b - a) / (n - 1) as f64;
    let mut best = (0usize, f64::INFINITY);
    for i in 0..n {
        let y = f(a + h * i as f64);
        if y < best.1 {
            best = (i, y);
        }
    }
    let at_edge = best.0 == 0 || best.0 == n - 1;
    let lo = a + h * best.0.saturating_sub(1) as f64;
    let hi = a + h * (best.0 + 1).min(n - 1) as f64;
    let (x, fx) = golden_section(&f, lo, hi, xtol);
    let (x, fx) = if fx <= best.1 { (x, fx) } else { (a + h * best.0 as f64, best.1) };
    (Minimum { x, fx, widened: false }, at_edge)
}

/// Like [`grid_then_golden`], but while the minimum lands on an edge of the
/// window the window is doubled about its centre, up to `max_widen` times.
pub fn minimize_widening<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, n: usize, xtol: f64, max_widen: usize) -> Minimum {
    let (mut lo, mut hi) = (a, b);
    let (mut best, mut at_edge) = grid_then_golden(&f, lo, hi, n, xtol);
    let mut widened = false;
    for _ in 0..max_widen {
        if !at_edge {
            break;
        }
        let (mid, half) = (0.5 * (lo + hi), hi - lo);
        lo = mid - half;
        hi = mid + half;
        widened = true;
        (best, at_edge) = grid_then_golden(&f, lo, hi, n, xtol);
    }
    Minimum { widened, ..best }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parabola() {
        let (x, fx) = golden_section(|x| (x - 0.3).powi(2) + 1.0, -2.0, 1.0, 1e-10);
        assert!((x - 0.3).abs() < 1e-7);
        assert!((fx - 1.0).abs() < 1e-15);
    }

    #[test]
    fn grid_finds_global_of_two_wells() {
        let f = |x: f64| (x * x - 1.0).powi(2) + 0.1 * x;
        let (m, edge) = grid_then_golden(f, -2.0, 2.0, 41, 1e-10);
        assert!(!edge);
        assert!(m.x < 0.0);
    }

    #[test]
    fn widening_reaches_far_minimum() {
        let m = minimize_widening(|x| (x - 7.5).powi(2), -2.0, 1.0, 31, 1e-10, 20);
        assert!(m.widened);
        assert!((m.x - 7.5).abs() < 1e-8);
    }

    #[test]
    fn flat_function_stays_put() {
        let m = minimize_widening(|_| 2.0, -2.0, 1.0, 31, 1e-10, 3);
        assert_eq!(m.fx, 2.0);
    }
}
