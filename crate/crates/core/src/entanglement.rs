//! Boundary-pair concurrence.
//!
//! Two-qubit states use the computational basis |q₁ q_N⟩ ordered
//! |00⟩, |01⟩, |10⟩, |11⟩, where 1 marks the flipped spin.

use nalgebra::{DMatrix, Matrix4};
use num_complex::Complex64;

use crate::chain::ChainSpec;
use crate::error::{Error, Result};

const STATE_TOL: f64 = 1e-12;

/// Density matrix of a pair of qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoQubitState(Matrix4<Complex64>);

impl TwoQubitState {
    pub fn new(rho: Matrix4<Complex64>) -> Result<Self> {
        if rho.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::InvalidState("non-finite entry".into()));
        }
        let hermitian_gap = (rho - rho.adjoint())
            .iter()
            .fold(0.0_f64, |a, z| a.max(z.norm()));
        if hermitian_gap > STATE_TOL {
            return Err(Error::InvalidState(format!(
                "not Hermitian (deviation {hermitian_gap:e})"
            )));
        }
        let trace = rho.trace();
        if (trace.re - 1.0).abs() > STATE_TOL || trace.im.abs() > STATE_TOL {
            return Err(Error::InvalidState(format!("trace {trace} != 1")));
        }
        let lowest = rho
            .symmetric_eigenvalues()
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min);
        if lowest < -STATE_TOL {
            return Err(Error::InvalidState(format!(
                "negative eigenvalue {lowest:e}"
            )));
        }
        Ok(Self(rho))
    }

    /// |ψ⟩⟨ψ| for a normalized amplitude vector.
    pub fn pure(psi: [Complex64; 4]) -> Result<Self> {
        let v = nalgebra::Vector4::from(psi);
        Self::new(v * v.adjoint())
    }

    pub fn matrix(&self) -> &Matrix4<Complex64> {
        &self.0
    }
}

/// Wootters concurrence max(0, λ₁ - λ₂ - λ₃ - λ₄).
///
/// λᵢ are the square roots of the eigenvalues of ρ(σʸ⊗σʸ)ρ*(σʸ⊗σʸ). They are
/// obtained as the singular values of τ = Fᵀ(σʸ⊗σʸ)F for a factor ρ = FF†
/// from pivoted Cholesky, which avoids square roots of near-zero
/// eigenvalues.
pub fn wootters_concurrence(state: &TwoQubitState) -> f64 {
    let factor = pivoted_cholesky(state.matrix());
    let rank = factor.len();
    if rank == 0 {
        return 0.0;
    }
    let spin_flip = |v: &[Complex64; 4]| [-v[3], v[2], v[1], -v[0]];
    let tau = DMatrix::from_fn(rank, rank, |i, j| {
        let flipped = spin_flip(&factor[j]);
        factor[i]
            .iter()
            .zip(&flipped)
            .map(|(a, b)| a * b)
            .sum::<Complex64>()
    });
    let mut lambdas: Vec<f64> = tau.singular_values().iter().copied().collect();
    lambdas.sort_by(|a, b| b.total_cmp(a));
    let rest: f64 = lambdas[1..].iter().sum();
    (lambdas[0] - rest).clamp(0.0, 1.0)
}

/// Columns f_i with Σ f_i f_i† = ρ, stopping at pivots below roundoff.
fn pivoted_cholesky(rho: &Matrix4<Complex64>) -> Vec<[Complex64; 4]> {
    let mut work = *rho;
    let threshold = 8.0 * f64::EPSILON * rho.trace().re.abs().max(f64::MIN_POSITIVE);
    let mut columns = Vec::with_capacity(4);
    for _ in 0..4 {
        let (p, pivot) = (0..4)
            .map(|i| (i, work[(i, i)].re))
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .expect("four diagonal entries");
        if pivot <= threshold {
            break;
        }
        let root = pivot.sqrt();
        let mut column = [Complex64::new(0.0, 0.0); 4];
        for (i, c) in column.iter_mut().enumerate() {
            *c = work[(i, p)] / root;
        }
        for i in 0..4 {
            for j in 0..4 {
                work[(i, j)] -= column[i] * column[j].conj();
            }
        }
        columns.push(column);
    }
    columns
}

fn x_state(both_down: f64, last_up: f64, first_up: f64, coherence: f64) -> Matrix4<Complex64> {
    let c = |x: f64| Complex64::new(x, 0.0);
    let mut rho = Matrix4::zeros();
    rho[(0, 0)] = c(both_down);
    rho[(1, 1)] = c(last_up);
    rho[(2, 2)] = c(first_up);
    rho[(1, 2)] = c(coherence);
    rho[(2, 1)] = c(coherence);
    rho
}

/// Reduced state of sites 1 and N for the sector-Gibbs mixture
/// Σ_m e^{-E_m/T}|ψ_m⟩⟨ψ_m| / Z over the single-excitation eigenstates.
pub fn sector_gibbs_boundary_state(spec: &ChainSpec, temperature: f64) -> Result<TwoQubitState> {
    if !(temperature > 0.0 && temperature.is_finite()) {
        return Err(Error::InvalidRange(format!(
            "temperature must be > 0, got {temperature}"
        )));
    }
    let decomposition = spec.hamiltonian().eigen_decompose()?;
    let ground = decomposition.eigenvalues()[0];
    let boltzmann: Vec<f64> = decomposition
        .eigenvalues()
        .iter()
        .map(|e| (-(e - ground) / temperature).exp())
        .collect();
    let z: f64 = boltzmann.iter().sum();
    let last = spec.n_sites() - 1;
    let (mut first_up, mut last_up, mut coherence) = (0.0, 0.0, 0.0);
    for (p, v) in boltzmann.iter().zip(decomposition.eigenvectors()) {
        let p = p / z;
        first_up += p * v[0] * v[0];
        last_up += p * v[last] * v[last];
        coherence += p * v[0] * v[last];
    }
    let both_down = if spec.n_sites() == 2 {
        0.0
    } else {
        (1.0 - first_up - last_up).max(0.0)
    };
    TwoQubitState::new(x_state(both_down, last_up, first_up, coherence))
}

/// Reduced state of sites 1 and N for the `index`-th (1-based, ascending
/// energy) single-excitation eigenstate.
pub fn pure_eigenstate_boundary_state(spec: &ChainSpec, index: usize) -> Result<TwoQubitState> {
    let v = eigenvector(spec, index)?;
    let last = v.len() - 1;
    let (first_up, last_up) = (v[0] * v[0], v[last] * v[last]);
    let both_down = if v.len() == 2 {
        0.0
    } else {
        (1.0 - first_up - last_up).max(0.0)
    };
    TwoQubitState::new(x_state(both_down, last_up, first_up, v[0] * v[last]))
}

fn eigenvector(spec: &ChainSpec, index: usize) -> Result<Vec<f64>> {
    let n = spec.n_sites();
    if index == 0 || index > n {
        return Err(Error::InvalidRange(format!(
            "eigenstate index {index} outside 1..={n}"
        )));
    }
    let decomposition = spec.hamiltonian().eigen_decompose()?;
    Ok(decomposition.eigenvector(index - 1).to_vec())
}

/// Concurrence 2|v₁ v_N| of the boundary pair in the `index`-th (1-based,
/// ascending energy) single-excitation eigenstate.
pub fn concurrence_pure_boundary(spec: &ChainSpec, index: usize) -> Result<f64> {
    let v = eigenvector(spec, index)?;
    Ok((2.0 * (v[0] * v[v.len() - 1]).abs()).min(1.0))
}

/// Boundary concurrence of the four-site XXX chain (1, J, 1) in the
/// sector-Gibbs state at temperature T (k_B = 1), from the closed-form
/// eigen-data of that chain.
///
/// Levels: J/2 + 1 and J/2 - 1 (mirror-even, end weight 1/4 each), and
/// -J/2 ± √(J² + 1) (mirror-odd, end weights 1/(2 + 2(√(J²+1) ∓ J)²)).
pub fn concurrence_thermal_xxx4(coupling: f64, temperature: f64) -> Result<f64> {
    if !(coupling > 0.0 && coupling.is_finite()) {
        return Err(Error::InvalidRange(format!(
            "J must be > 0, got {coupling}"
        )));
    }
    if !(temperature > 0.0 && temperature.is_finite()) {
        return Err(Error::InvalidRange(format!(
            "temperature must be > 0, got {temperature}"
        )));
    }
    let j = coupling;
    let root = (j * j + 1.0).sqrt();
    // √(J²+1) - J without cancellation
    let small = 1.0 / (root + j);
    let levels = [
        (0.5 * j + 1.0, 0.25),
        (0.5 * j - 1.0, 0.25),
        (-0.5 * j + root, -1.0 / (2.0 + 2.0 * small * small)),
        (
            -0.5 * j - root,
            -1.0 / (2.0 + 2.0 * (root + j) * (root + j)),
        ),
    ];
    let ground = levels.iter().map(|l| l.0).fold(f64::INFINITY, f64::min);
    let (mut numerator, mut z) = (0.0, 0.0);
    for (energy, signed_weight) in levels {
        let p = (-(energy - ground) / temperature).exp();
        numerator += signed_weight * p;
        z += p;
    }
    Ok((2.0 * numerator / z).abs().min(1.0))
}
