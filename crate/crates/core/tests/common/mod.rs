//! Independent oracles shared by the integration tests.

#![allow(dead_code)]

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Dense complex square matrix, row-major.
#[derive(Debug, Clone)]
pub struct Dense {
    pub n: usize,
    pub data: Vec<Complex64>,
}

impl Dense {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![Complex64::new(0.0, 0.0); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn mul(&self, other: &Dense) -> Dense {
        let n = self.n;
        let mut out = Dense::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn scale(&self, s: Complex64) -> Dense {
        Dense {
            n: self.n,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn add(&self, other: &Dense) -> Dense {
        Dense {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn one_norm(&self) -> f64 {
        (0..self.n)
            .map(|j| (0..self.n).map(|i| self[(i, j)].norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }
}

impl std::ops::Index<(usize, usize)> for Dense {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Dense {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.n + j]
    }
}

/// exp(A) by scaling and squaring with a truncated Taylor series.
pub fn expm(a: &Dense) -> Dense {
    let norm = a.one_norm();
    let squarings = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as i32
    } else {
        0
    };
    let scaled = a.scale(Complex64::new(0.5f64.powi(squarings), 0.0));
    let mut result = Dense::identity(a.n);
    let mut term = Dense::identity(a.n);
    for k in 1..=24 {
        term = term.mul(&scaled).scale(Complex64::new(1.0 / k as f64, 0.0));
        result = result.add(&term);
    }
    for _ in 0..squarings {
        result = result.mul(&result);
    }
    result
}

/// ⟨N| exp(-i H t) |1⟩ from the dense sector Hamiltonian.
pub fn amplitude_by_expm(diag: &[f64], offdiag: &[f64], t: f64) -> Complex64 {
    let n = diag.len();
    let mut h = Dense::zeros(n);
    for i in 0..n {
        h[(i, i)] = Complex64::new(diag[i], 0.0);
    }
    for (i, &b) in offdiag.iter().enumerate() {
        h[(i, i + 1)] = Complex64::new(b, 0.0);
        h[(i + 1, i)] = Complex64::new(b, 0.0);
    }
    let u = expm(&h.scale(Complex64::new(0.0, -t)));
    u[(n - 1, 0)]
}

/// Coefficients (ascending) of Π (x - r).
pub fn vieta(roots: &[f64]) -> Vec<f64> {
    let mut c = vec![1.0];
    for &r in roots {
        let mut next = vec![0.0; c.len() + 1];
        for (i, &x) in c.iter().enumerate() {
            next[i + 1] += x;
            next[i] -= r * x;
        }
        c = next;
    }
    c
}

/// Random antisymmetric spectrum of `n` levels with relative gap >= `gap`.
///
/// Consecutive levels are spaced by a random factor in [1, 1.5] of a base
/// step, then the whole spectrum is scaled.
pub fn random_antisymmetric_spectrum(rng: &mut impl Rng, n: usize, gap: f64) -> Vec<f64> {
    loop {
        let pairs = n / 2;
        let mut positive = Vec::with_capacity(pairs);
        let mut x = if n.is_multiple_of(2) {
            0.5 * rng.gen_range(1.0..1.5)
        } else {
            0.0
        };
        for i in 0..pairs {
            if i > 0 || n % 2 == 1 {
                x += rng.gen_range(1.0..1.5);
            }
            positive.push(x);
        }
        let scale: f64 = rng.gen_range(0.1..10.0);
        let mut levels: Vec<f64> = positive.iter().map(|x| -x * scale).collect();
        levels.extend(positive.iter().map(|x| x * scale));
        if n % 2 == 1 {
            levels.push(0.0);
        }
        levels.sort_by(f64::total_cmp);
        let radius = levels.iter().fold(0.0_f64, |a, x| a.max(x.abs()));
        if radius > 0.0 && levels.windows(2).all(|w| w[1] - w[0] >= gap * radius) {
            return levels;
        }
    }
}

pub fn linear_spectrum_couplings(n_sites: usize) -> Vec<f64> {
    (1..n_sites)
        .map(|i| ((i * (n_sites - i)) as f64).sqrt())
        .collect()
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}
