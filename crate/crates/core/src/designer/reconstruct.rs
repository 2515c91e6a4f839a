use std::f64::consts::SQRT_2;

use super::{CouplingSolution, Parity};
use crate::chain::is_mirror_symmetric;
use crate::error::{Error, Result};
use crate::tridiag::{spectrum_is_antisymmetric, JacobiMatrix};

/// Smallest accepted eigenvalue gap relative to the spectral radius.
const MIN_RELATIVE_GAP: f64 = 1e-6;
const SYMMETRY_TOL: f64 = 1e-10;

/// Half-chain block of a mirror-symmetric XX chain.
///
/// Even N = 2k: k×k zero-diagonal block with off-diagonal J_1..J_{k-1} and
/// corner entry ±J_k. Odd N = 2k + 1: the symmetric block is (k+1)×(k+1)
/// with off-diagonal J_1..J_{k-1}, √2·J_k; the antisymmetric block is k×k
/// with off-diagonal J_1..J_{k-1}. The two block spectra partition the chain
/// spectrum.
pub fn reduce_half(couplings: &[f64], parity: Parity) -> Result<JacobiMatrix> {
    if couplings.is_empty() {
        return Err(Error::InvalidChain("a chain needs at least 2 sites".into()));
    }
    if !is_mirror_symmetric(couplings, SYMMETRY_TOL) {
        return Err(Error::AsymmetricInput(format!("{couplings:?}")));
    }
    let n_sites = couplings.len() + 1;
    let k = n_sites / 2;
    if n_sites.is_multiple_of(2) {
        let mut diag = vec![0.0; k];
        let corner = couplings[k - 1];
        diag[k - 1] = match parity {
            Parity::Symmetric => corner,
            Parity::Antisymmetric => -corner,
        };
        JacobiMatrix::new(diag, couplings[..k - 1].to_vec())
    } else {
        match parity {
            Parity::Symmetric => {
                let mut offdiag = couplings[..k - 1].to_vec();
                offdiag.push(SQRT_2 * couplings[k - 1]);
                JacobiMatrix::zero_diagonal(offdiag)
            }
            Parity::Antisymmetric => JacobiMatrix::zero_diagonal(couplings[..k - 1].to_vec()),
        }
    }
}

/// The unique mirror-symmetric positive XX chain whose single-excitation
/// spectrum is `target`.
///
/// For a persymmetric Jacobi matrix the squared first components of the
/// eigenvectors are fixed by the spectrum, w_m ∝ 1 / Π_{l≠m} |E_m - E_l|.
/// Lanczos on diag(E) started from √w then returns the couplings as its
/// off-diagonal recurrence coefficients.
pub fn reconstruct_from_spectrum(target: &[f64], t_p: f64) -> Result<CouplingSolution> {
    let n = target.len();
    if n < 2 {
        return Err(Error::InvalidParams(format!(
            "target spectrum needs at least 2 levels, got {n}"
        )));
    }
    if let Some(e) = target.iter().find(|e| !e.is_finite()) {
        return Err(Error::InvalidParams(format!("non-finite level {e}")));
    }
    let mut sorted = target.to_vec();
    sorted.sort_by(f64::total_cmp);
    let radius = sorted.iter().fold(0.0_f64, |acc, e| acc.max(e.abs()));
    if radius == 0.0 {
        return Err(Error::DuplicateEigenvalue("all levels are zero".into()));
    }
    if !spectrum_is_antisymmetric(&sorted, SYMMETRY_TOL) {
        return Err(Error::NotAntisymmetric(format!("{sorted:?}")));
    }
    if let Some(w) = sorted
        .windows(2)
        .find(|w| w[1] - w[0] < MIN_RELATIVE_GAP * radius)
    {
        return Err(Error::DuplicateEigenvalue(format!(
            "levels {} and {} closer than {MIN_RELATIVE_GAP}·radius",
            w[0], w[1]
        )));
    }
    let levels: Vec<f64> = (0..n)
        .map(|m| 0.5 * (sorted[m] - sorted[n - 1 - m]))
        .collect();

    let couplings = lanczos_couplings(&levels, &end_weights(&levels))?;

    let len = couplings.len();
    let mut mirrored = couplings.clone();
    for i in 0..len {
        let (a, b) = (couplings[i], couplings[len - 1 - i]);
        if (a - b).abs() > 1e-6 * a.max(b) {
            return Err(Error::ReconstructionFailure(format!(
                "couplings J_{} = {a} and J_{} = {b} lost mirror symmetry",
                i + 1,
                len - i
            )));
        }
        mirrored[i] = 0.5 * (a + b);
    }

    let solution = CouplingSolution::from_couplings(mirrored, sorted, t_p)?;
    if solution.spectral_residual > 1e-8 * radius {
        return Err(Error::ReconstructionFailure(format!(
            "spectral residual {:e} exceeds 1e-8·radius",
            solution.spectral_residual
        )));
    }
    Ok(solution)
}

/// Normalized boundary weights of a persymmetric Jacobi matrix with the
/// given (distinct) spectrum, computed in log space.
fn end_weights(levels: &[f64]) -> Vec<f64> {
    let logs: Vec<f64> = levels
        .iter()
        .enumerate()
        .map(|(m, &e)| {
            -levels
                .iter()
                .enumerate()
                .filter(|&(l, _)| l != m)
                .map(|(_, &x)| (e - x).abs().ln())
                .sum::<f64>()
        })
        .collect();
    let top = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let raw: Vec<f64> = logs.iter().map(|l| (l - top).exp()).collect();
    let total: f64 = raw.iter().sum();
    raw.iter().map(|w| w / total).collect()
}

/// Lanczos with full reorthogonalization on diag(levels) from √weights.
fn lanczos_couplings(levels: &[f64], weights: &[f64]) -> Result<Vec<f64>> {
    let n = levels.len();
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(n);
    basis.push(weights.iter().map(|w| w.sqrt()).collect());
    let mut betas = Vec::with_capacity(n - 1);
    for j in 0..n - 1 {
        let q = &basis[j];
        let mut r: Vec<f64> = q.iter().zip(levels).map(|(x, e)| x * e).collect();
        for _ in 0..2 {
            for b in &basis {
                let dot: f64 = r.iter().zip(b).map(|(x, y)| x * y).sum();
                r.iter_mut().zip(b).for_each(|(x, y)| *x -= dot * y);
            }
        }
        let beta = r.iter().map(|x| x * x).sum::<f64>().sqrt();
        if !(beta.is_finite() && beta > 0.0) {
            return Err(Error::ReconstructionFailure(format!(
                "coupling J_{} = {beta} is not positive",
                j + 1
            )));
        }
        betas.push(beta);
        basis.push(r.iter().map(|x| x / beta).collect());
    }
    Ok(betas)
}
