//! Open spin chains and their single-excitation Hamiltonians.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tridiag::JacobiMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    /// Hopping only.
    Xx,
    /// Hopping plus the J_i/2 σᶻσᶻ bond term.
    Xxx,
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Model::Xx => f.write_str("xx"),
            Model::Xxx => f.write_str("xxx"),
        }
    }
}

impl FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "xx" => Ok(Model::Xx),
            "xxx" => Ok(Model::Xxx),
            other => Err(Error::InvalidChain(format!("unknown model `{other}`"))),
        }
    }
}

/// An open chain of `couplings.len() + 1` sites.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainSpec {
    model: Model,
    couplings: Vec<f64>,
}

impl ChainSpec {
    pub fn new(model: Model, couplings: Vec<f64>) -> Result<Self> {
        if couplings.is_empty() {
            return Err(Error::InvalidChain("a chain needs at least 2 sites".into()));
        }
        if let Some(i) = couplings.iter().position(|&j| !(j.is_finite() && j > 0.0)) {
            return Err(Error::InvalidChain(format!(
                "coupling J_{} = {} must be finite and > 0",
                i + 1,
                couplings[i]
            )));
        }
        Ok(Self { model, couplings })
    }

    pub fn xx(couplings: Vec<f64>) -> Result<Self> {
        Self::new(Model::Xx, couplings)
    }

    pub fn xxx(couplings: Vec<f64>) -> Result<Self> {
        Self::new(Model::Xxx, couplings)
    }

    pub fn model(&self) -> Model {
        self.model
    }

    pub fn couplings(&self) -> &[f64] {
        &self.couplings
    }

    pub fn n_sites(&self) -> usize {
        self.couplings.len() + 1
    }

    /// Same chain with every coupling multiplied by `factor` (> 0).
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Self::new(
            self.model,
            self.couplings.iter().map(|j| j * factor).collect(),
        )
    }

    /// |J_i - J_{N-i}| <= tol · max(1, J_i) for every bond.
    pub fn is_mirror_symmetric(&self, tol: f64) -> bool {
        is_mirror_symmetric(&self.couplings, tol)
    }

    /// Hamiltonian restricted to the states with a single flipped spin.
    ///
    /// Off-diagonal entries are the couplings for both models. For XXX each
    /// bond adds +J_i/2 to a basis state when the excitation sits on neither
    /// of its endpoints and -J_i/2 when it sits on one, so
    /// diag_j = Σ J_i / 2 - (J_{j-1} + J_j) with J_0 = J_N = 0.
    pub fn hamiltonian(&self) -> JacobiMatrix {
        let n = self.n_sites();
        let diag = match self.model {
            Model::Xx => vec![0.0; n],
            Model::Xxx => {
                let half_total: f64 = 0.5 * self.couplings.iter().sum::<f64>();
                (0..n)
                    .map(|j| {
                        let left = if j > 0 { self.couplings[j - 1] } else { 0.0 };
                        let right = if j + 1 < n { self.couplings[j] } else { 0.0 };
                        half_total - (left + right)
                    })
                    .collect()
            }
        };
        JacobiMatrix::new(diag, self.couplings.clone())
            .expect("couplings validated at construction")
    }
}

pub(crate) fn is_mirror_symmetric(couplings: &[f64], tol: f64) -> bool {
    let len = couplings.len();
    (0..len).all(|i| {
        let (a, b) = (couplings[i], couplings[len - 1 - i]);
        (a - b).abs() <= tol * a.abs().max(1.0)
    })
}

/// |j⟩: the single excitation sits on site `j` (1-indexed).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BasisState {
    site: usize,
}

impl BasisState {
    pub fn new(site: usize, n_sites: usize) -> Result<Self> {
        if site == 0 || site > n_sites {
            return Err(Error::InvalidChain(format!(
                "site {site} outside 1..={n_sites}"
            )));
        }
        Ok(Self { site })
    }

    pub fn site(&self) -> usize {
        self.site
    }

    pub(crate) fn index(&self) -> usize {
        self.site - 1
    }
}
