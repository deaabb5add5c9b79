//! Dense Fock-space amplitudes over 2 or 3 modes.
//!
//! Mode order is (a, b) or (a, b, v). Every state produced by the oracle is
//! supported on the "ball" n_a + n_b (+ n_v) ≤ cutoff, which the beam
//! splitters map onto itself exactly.

use num_complex::Complex64;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Debug, Clone, PartialEq)]
pub struct FockState {
    pub cutoff: usize,
    pub modes: usize,
    pub amps: Vec<Complex64>,
    /// Squared norm before the last normalization (the subtraction weight).
    pub weight: f64,
    /// Probability that was cut off or sits on the edge of the ball.
    pub tail: f64,
}

impl FockState {
    pub fn zeros(modes: usize, cutoff: usize) -> Self {
        assert!(modes == 2 || modes == 3, "2 or 3 modes supported");
        Self { cutoff, modes, amps: vec![ZERO; (cutoff + 1).pow(modes as u32)], weight: 1.0, tail: 0.0 }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.cutoff + 1
    }

    #[inline]
    pub fn index(&self, n: &[usize]) -> usize {
        n.iter().fold(0, |acc, &k| acc * self.dim() + k)
    }

    pub fn amp(&self, n: &[usize]) -> Complex64 {
        self.amps[self.index(n)]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Normalizes in place, recording the prior squared norm as `weight`.
    pub fn normalize(&mut self) -> f64 {
        let w = self.norm_sqr();
        if w > 0.0 {
            let s = w.sqrt().recip();
            self.amps.iter_mut().for_each(|z| *z *= s);
        }
        self.weight = w;
        w
    }

    pub fn inner(&self, other: &Self) -> Complex64 {
        self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum()
    }

    /// Visits every ball index as (n_a, n_b, n_v, flat index); n_v = 0 for two modes.
    pub fn for_each_ball(&self, mut f: impl FnMut(usize, usize, usize, usize)) {
        let k = self.cutoff;
        for a in 0..=k {
            for b in 0..=(k - a) {
                if self.modes == 2 {
                    f(a, b, 0, self.index(&[a, b]));
                } else {
                    for v in 0..=(k - a - b) {
                        f(a, b, v, self.index(&[a, b, v]));
                    }
                }
            }
        }
    }

    /// Probability carried by states with at least `shell` photons in total.
    pub fn mass_from_total(&self, shell: usize) -> f64 {
        let mut m = 0.0;
        self.for_each_ball(|a, b, v, i| {
            if a + b + v >= shell {
                m += self.amps[i].norm_sqr();
            }
        });
        m
    }

    /// e^{iφ n_a}.
    pub fn apply_phase(&mut self, phi: f64) {
        let d = self.dim();
        let stride = d.pow(self.modes as u32 - 1);
        for a in 0..d {
            let e = Complex64::from_polar(1.0, phi * a as f64);
            for z in &mut self.amps[a * stride..(a + 1) * stride] {
                *z *= e;
            }
        }
    }

    /// aᵐ (unnormalized).
    pub fn lower_a(&self, m: usize) -> Self {
        let mut out = Self::zeros(self.modes, self.cutoff);
        out.tail = self.tail;
        let d = self.dim();
        let stride = d.pow(self.modes as u32 - 1);
        for a in 0..d.saturating_sub(m) {
            let f: f64 = ((a + 1)..=(a + m)).map(|k| k as f64).product::<f64>().sqrt();
            let src = &self.amps[(a + m) * stride..(a + m + 1) * stride];
            for (o, &s) in out.amps[a * stride..(a + 1) * stride].iter_mut().zip(src) {
                *o = s * f;
            }
        }
        out
    }

    /// ⟨a†ᵏaˡ⟩ for a normalized state.
    pub fn moment_a(&self, k: usize, l: usize) -> Complex64 {
        let d = self.dim();
        let stride = d.pow(self.modes as u32 - 1);
        let fall = |n: usize, j: usize| ((n + 1)..=(n + j)).map(|x| x as f64).product::<f64>().sqrt();
        let mut acc = ZERO;
        for n in 0..d.saturating_sub(k.max(l)) {
            let f = fall(n, k) * fall(n, l);
            let bra = &self.amps[(n + k) * stride..(n + k + 1) * stride];
            let ket = &self.amps[(n + l) * stride..(n + l + 1) * stride];
            let s: Complex64 = bra.iter().zip(ket).map(|(x, y)| x.conj() * y).sum();
            acc += s * f;
        }
        acc
    }

    /// ⟨f(n_a)⟩ for a normalized state.
    pub fn expect_na(&self, f: impl Fn(f64) -> f64) -> f64 {
        let d = self.dim();
        let stride = d.pow(self.modes as u32 - 1);
        (0..d)
            .map(|a| {
                let w: f64 = self.amps[a * stride..(a + 1) * stride].iter().map(|z| z.norm_sqr()).sum();
                w * f(a as f64)
            })
            .sum()
    }

    /// ⟨n_a + n_b⟩ for a normalized state.
    pub fn mean_ab(&self) -> f64 {
        let mut s = 0.0;
        self.for_each_ball(|a, b, _, i| s += (a + b) as f64 * self.amps[i].norm_sqr());
        s
    }
}
