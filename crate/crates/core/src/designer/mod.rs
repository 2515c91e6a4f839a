//! Coupling synthesis for perfect state transfer in mirror-symmetric XX
//! chains.
//!
//! A mirror-symmetric XX chain splits into a symmetric and an antisymmetric
//! half-chain block. Transfer from site 1 to site N is perfect at t_p exactly
//! when every symmetric-block eigenvalue picks up the phase e^{-iEt_p} = z and
//! every antisymmetric one picks up -z. The designs here choose such spectra
//! (arithmetic progressions in units of π/t_p) and then recover the couplings,
//! either from closed-form families for short chains or by reconstructing
//! the unique persymmetric Jacobi matrix with that spectrum.

mod closed_form;
mod reconstruct;
mod spectrum;

use serde::Serialize;

use crate::chain::ChainSpec;
use crate::error::{Error, Result};

pub use closed_form::{design_closed_form, xx4_natural_design};
pub use reconstruct::{reconstruct_from_spectrum, reduce_half};
pub use spectrum::target_spectrum;

/// Which half-chain block of a mirror-symmetric chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Symmetric,
    Antisymmetric,
}

/// A request for a perfect-transfer chain of `n_sites` sites at time `t_p`.
///
/// `params` are the integer family parameters:
/// * even N: `[n]`, the progression step (n >= 1);
/// * odd N (reconstruction): the odd-class integers n_j (eigenvalues
///   ±(2n_j - 1)π/t_p) followed by the even-class integers (eigenvalues
///   ±2n_jπ/t_p, plus 0);
/// * closed forms use their own layouts, see [`design_closed_form`].
#[derive(Debug, Clone, PartialEq)]
pub struct DesignRequest {
    pub n_sites: usize,
    pub t_p: f64,
    pub params: Vec<i64>,
}

impl DesignRequest {
    pub fn new(n_sites: usize, t_p: f64, params: Vec<i64>) -> Result<Self> {
        if n_sites < 2 {
            return Err(Error::InvalidParams(format!(
                "n_sites must be >= 2, got {n_sites}"
            )));
        }
        if !(t_p > 0.0 && t_p.is_finite()) {
            return Err(Error::InvalidParams(format!("t_p must be > 0, got {t_p}")));
        }
        Ok(Self {
            n_sites,
            t_p,
            params,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CouplingSolution {
    pub couplings: Vec<f64>,
    pub target_spectrum: Vec<f64>,
    pub achieved_spectrum: Vec<f64>,
    pub spectral_residual: f64,
    pub t_p: f64,
}

impl CouplingSolution {
    /// Assemble a solution from couplings and a target, diagonalizing the
    /// XX chain to obtain the achieved spectrum.
    pub(crate) fn from_couplings(
        couplings: Vec<f64>,
        mut target_spectrum: Vec<f64>,
        t_p: f64,
    ) -> Result<Self> {
        let chain = ChainSpec::xx(couplings)?;
        let achieved = chain.hamiltonian().eigen_decompose()?;
        target_spectrum.sort_by(f64::total_cmp);
        let spectral_residual = target_spectrum
            .iter()
            .zip(achieved.eigenvalues())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        Ok(Self {
            couplings: chain.couplings().to_vec(),
            target_spectrum,
            achieved_spectrum: achieved.eigenvalues().to_vec(),
            spectral_residual,
            t_p,
        })
    }

    pub fn chain(&self) -> ChainSpec {
        ChainSpec::xx(self.couplings.clone()).expect("solution couplings are positive")
    }

    pub fn spectral_radius(&self) -> f64 {
        self.target_spectrum
            .iter()
            .fold(0.0, |acc, e| acc.max(e.abs()))
    }
}

/// Target spectrum for the request, then the persymmetric chain realizing it.
pub fn design_general(req: &DesignRequest) -> Result<CouplingSolution> {
    let target = target_spectrum(req)?;
    reconstruct_from_spectrum(&target, req.t_p)
}

fn require_param_count(req: &DesignRequest, expected: usize, layout: &str) -> Result<()> {
    if req.params.len() != expected {
        return Err(Error::InvalidParams(format!(
            "N={} expects {expected} parameter(s) ({layout}), got {}",
            req.n_sites,
            req.params.len()
        )));
    }
    Ok(())
}

fn require_positive(req: &DesignRequest) -> Result<()> {
    if let Some(p) = req.params.iter().find(|&&p| p < 1) {
        return Err(Error::InvalidParams(format!(
            "family parameters must be >= 1, got {p}"
        )));
    }
    Ok(())
}
