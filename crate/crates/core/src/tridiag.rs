//! Spectral engine for real symmetric tridiagonal (Jacobi) matrices.
//!
//! Eigenpairs come from the implicit QL iteration with Wilkinson-style
//! shifts, accumulating the rotations so the eigenvectors are orthonormal to
//! working precision. An independent Sturm-sequence bisection is kept for
//! eigenvalues alone.

use crate::error::{Error, Result};

/// Iteration budget per eigenvalue for the QL sweep.
const MAX_QL_ITERATIONS: usize = 60;

/// Real symmetric tridiagonal matrix with strictly positive off-diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct JacobiMatrix {
    diag: Vec<f64>,
    offdiag: Vec<f64>,
}

impl JacobiMatrix {
    pub fn new(diag: Vec<f64>, offdiag: Vec<f64>) -> Result<Self> {
        if diag.is_empty() {
            return Err(Error::InvalidMatrix("dimension must be at least 1".into()));
        }
        if offdiag.len() + 1 != diag.len() {
            return Err(Error::InvalidMatrix(format!(
                "expected {} off-diagonal entries, got {}",
                diag.len() - 1,
                offdiag.len()
            )));
        }
        if let Some(i) = diag.iter().position(|d| !d.is_finite()) {
            return Err(Error::InvalidMatrix(format!(
                "diagonal entry {i} is not finite"
            )));
        }
        if let Some(i) = offdiag.iter().position(|&b| !(b.is_finite() && b > 0.0)) {
            return Err(Error::InvalidMatrix(format!(
                "off-diagonal entry {i} must be finite and > 0, got {}",
                offdiag[i]
            )));
        }
        Ok(Self { diag, offdiag })
    }

    /// Zero-diagonal matrix with the given couplings.
    pub fn zero_diagonal(offdiag: Vec<f64>) -> Result<Self> {
        Self::new(vec![0.0; offdiag.len() + 1], offdiag)
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn offdiag(&self) -> &[f64] {
        &self.offdiag
    }

    pub fn trace(&self) -> f64 {
        self.diag.iter().sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        let d: f64 = self.diag.iter().map(|x| x * x).sum();
        let e: f64 = self.offdiag.iter().map(|x| x * x).sum();
        (d + 2.0 * e).sqrt()
    }

    /// Gershgorin interval containing the whole spectrum.
    pub fn gershgorin_bounds(&self) -> (f64, f64) {
        let n = self.dim();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let left = if i > 0 { self.offdiag[i - 1] } else { 0.0 };
            let right = if i + 1 < n { self.offdiag[i] } else { 0.0 };
            let r = left + right;
            lo = lo.min(self.diag[i] - r);
            hi = hi.max(self.diag[i] + r);
        }
        (lo, hi)
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        let n = self.dim();
        assert_eq!(v.len(), n, "vector length must match matrix dimension");
        (0..n)
            .map(|i| {
                let mut acc = self.diag[i] * v[i];
                if i > 0 {
                    acc += self.offdiag[i - 1] * v[i - 1];
                }
                if i + 1 < n {
                    acc += self.offdiag[i] * v[i + 1];
                }
                acc
            })
            .collect()
    }

    /// Monic characteristic polynomial det(xI - J), built with the
    /// three-term recurrence p_k = (x - a_k) p_{k-1} - b_{k-1}^2 p_{k-2}.
    pub fn char_poly(&self) -> Polynomial {
        let mut prev = vec![1.0];
        let mut cur = vec![-self.diag[0], 1.0];
        for k in 1..self.dim() {
            let a = self.diag[k];
            let b2 = self.offdiag[k - 1] * self.offdiag[k - 1];
            let mut next = vec![0.0; cur.len() + 1];
            for (i, &c) in cur.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= a * c;
            }
            for (i, &c) in prev.iter().enumerate() {
                next[i] -= b2 * c;
            }
            prev = cur;
            cur = next;
        }
        Polynomial(cur)
    }

    /// Number of eigenvalues strictly below `x` (Sturm count from the LDLᵀ
    /// pivots of J - xI).
    pub fn sturm_count(&self, x: f64) -> usize {
        let (lo, hi) = self.gershgorin_bounds();
        let guard = f64::EPSILON * lo.abs().max(hi.abs()).max(f64::MIN_POSITIVE);
        let mut count = 0;
        let mut q = self.diag[0] - x;
        for k in 0..self.dim() {
            if k > 0 {
                let b = self.offdiag[k - 1];
                q = self.diag[k] - x - b * b / q;
            }
            if q.abs() < guard {
                q = -guard;
            }
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// Eigenvalues in ascending order by Sturm bisection.
    pub fn eigenvalues_bisection(&self) -> Vec<f64> {
        let (lo, hi) = self.gershgorin_bounds();
        let scale = lo.abs().max(hi.abs()).max(f64::MIN_POSITIVE);
        let lo = lo - f64::EPSILON * scale;
        let hi = hi + f64::EPSILON * scale;
        (0..self.dim())
            .map(|k| {
                let (mut a, mut b) = (lo, hi);
                // invariant: count(a) <= k < count(b)
                for _ in 0..200 {
                    let mid = 0.5 * (a + b);
                    if mid <= a || mid >= b || b - a <= 2.0 * f64::EPSILON * scale {
                        break;
                    }
                    if self.sturm_count(mid) > k {
                        b = mid;
                    } else {
                        a = mid;
                    }
                }
                0.5 * (a + b)
            })
            .collect()
    }

    /// Full eigendecomposition, eigenvalues ascending, eigenvectors
    /// orthonormal with first nonzero component positive.
    pub fn eigen_decompose(&self) -> Result<EigenDecomposition> {
        let mut pairs = if self.dim() >= 2 && self.is_persymmetric() {
            self.persymmetric_pairs()?
        } else {
            ql_pairs(&self.diag, &self.offdiag)?
        };
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        let (eigenvalues, eigenvectors) = pairs
            .into_iter()
            .map(|(e, mut v)| {
                normalize_sign(&mut v);
                (e, v)
            })
            .unzip();

        let decomposition = EigenDecomposition {
            eigenvalues,
            eigenvectors,
        };
        let bound = 1e-12 * self.frobenius_norm().max(1.0);
        let residual = decomposition.max_residual(self);
        if residual.is_nan() || residual > bound {
            return Err(Error::ConvergenceFailure(format!(
                "eigen residual {residual:e} exceeds {bound:e}"
            )));
        }
        Ok(decomposition)
    }

    fn is_persymmetric(&self) -> bool {
        self.diag.iter().eq(self.diag.iter().rev())
            && self.offdiag.iter().eq(self.offdiag.iter().rev())
    }

    /// Eigenpairs through the symmetric/antisymmetric half blocks, so every
    /// eigenvector has exact mirror parity even when a parity pair is nearly
    /// degenerate.
    fn persymmetric_pairs(&self) -> Result<Vec<(f64, Vec<f64>)>> {
        let n = self.dim();
        let k = n / 2;
        let (d, e) = (&self.diag, &self.offdiag);
        let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
        let mut pairs = Vec::with_capacity(n);
        if n.is_multiple_of(2) {
            for sign in [1.0, -1.0] {
                let mut diag = d[..k].to_vec();
                diag[k - 1] += sign * e[k - 1];
                for (value, u) in ql_pairs(&diag, &e[..k - 1])? {
                    let mut v: Vec<f64> = u.iter().map(|x| x * inv_sqrt2).collect();
                    v.extend(u.iter().rev().map(|x| sign * x * inv_sqrt2));
                    pairs.push((value, v));
                }
            }
        } else {
            let mut offdiag = e[..k - 1].to_vec();
            offdiag.push(std::f64::consts::SQRT_2 * e[k - 1]);
            for (value, u) in ql_pairs(&d[..=k], &offdiag)? {
                let mut v: Vec<f64> = u[..k].iter().map(|x| x * inv_sqrt2).collect();
                v.push(u[k]);
                v.extend(u[..k].iter().rev().map(|x| x * inv_sqrt2));
                pairs.push((value, v));
            }
            for (value, u) in ql_pairs(&d[..k], &e[..k - 1])? {
                let mut v: Vec<f64> = u.iter().map(|x| x * inv_sqrt2).collect();
                v.push(0.0);
                v.extend(u.iter().rev().map(|x| -x * inv_sqrt2));
                pairs.push((value, v));
            }
        }
        Ok(pairs)
    }
}

/// Unsorted eigenpairs of the tridiagonal matrix (diag, offdiag) by QL.
fn ql_pairs(diag: &[f64], offdiag: &[f64]) -> Result<Vec<(f64, Vec<f64>)>> {
    let n = diag.len();
    let mut d = diag.to_vec();
    let mut e = offdiag.to_vec();
    e.push(0.0);
    // z[row][col], columns become eigenvectors
    let mut z: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            let mut row = vec![0.0; n];
            row[i] = 1.0;
            row
        })
        .collect();
    implicit_ql(&mut d, &mut e, &mut z)?;
    Ok((0..n)
        .map(|m| (d[m], (0..n).map(|row| z[row][m]).collect()))
        .collect())
}

/// Implicit QL with shifts on a symmetric tridiagonal matrix. On exit `d`
/// holds the eigenvalues and column m of `z` the eigenvector for `d[m]`.
fn implicit_ql(d: &mut [f64], e: &mut [f64], z: &mut [Vec<f64>]) -> Result<()> {
    let n = d.len();
    for l in 0..n {
        let mut iterations = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd || e[m] == 0.0 {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iterations += 1;
            if iterations > MAX_QL_ITERATIONS {
                return Err(Error::ConvergenceFailure(format!(
                    "QL iteration budget exhausted at index {l}"
                )));
            }

            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                for row in z.iter_mut() {
                    let t = row[i + 1];
                    row[i + 1] = s * row[i] + c * t;
                    row[i] = c * row[i] - s * t;
                }
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

fn normalize_sign(v: &mut [f64]) {
    if let Some(&first) = v.iter().find(|x| **x != 0.0) {
        if first < 0.0 {
            v.iter_mut().for_each(|x| *x = -*x);
        }
    }
}

/// Sorted eigenvalues with their orthonormal eigenvectors.
///
/// `eigenvector(m)` is paired with `eigenvalues()[m]`. Component signs carry
/// the relative phases (0 or π) between sites.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenDecomposition {
    eigenvalues: Vec<f64>,
    eigenvectors: Vec<Vec<f64>>,
}

impl EigenDecomposition {
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn eigenvector(&self, m: usize) -> &[f64] {
        &self.eigenvectors[m]
    }

    pub fn eigenvectors(&self) -> &[Vec<f64>] {
        &self.eigenvectors
    }

    pub fn spectral_radius(&self) -> f64 {
        self.eigenvalues.iter().fold(0.0, |acc, e| acc.max(e.abs()))
    }

    /// max_m ‖J v_m - E_m v_m‖₂
    pub fn max_residual(&self, matrix: &JacobiMatrix) -> f64 {
        self.eigenvalues
            .iter()
            .zip(&self.eigenvectors)
            .map(|(&e, v)| {
                matrix
                    .apply(v)
                    .iter()
                    .zip(v)
                    .map(|(hv, x)| (hv - e * x).powi(2))
                    .sum::<f64>()
                    .sqrt()
            })
            .fold(0.0, f64::max)
    }

    /// max_{a,b} |⟨v_a, v_b⟩ - δ_ab|
    pub fn orthonormality_error(&self) -> f64 {
        let n = self.len();
        let mut worst: f64 = 0.0;
        for a in 0..n {
            for b in a..n {
                let dot: f64 = self.eigenvectors[a]
                    .iter()
                    .zip(&self.eigenvectors[b])
                    .map(|(x, y)| x * y)
                    .sum();
                let target = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((dot - target).abs());
            }
        }
        worst
    }

    pub fn is_antisymmetric(&self, tol: f64) -> bool {
        spectrum_is_antisymmetric(&self.eigenvalues, tol)
    }
}

/// True iff the ascending spectrum satisfies E_m = -E_{n+1-m} to within
/// `tol · max(1, spectral radius)`.
pub fn spectrum_is_antisymmetric(sorted: &[f64], tol: f64) -> bool {
    let scale = sorted.iter().fold(1.0_f64, |acc, e| acc.max(e.abs()));
    let n = sorted.len();
    (0..n).all(|m| (sorted[m] + sorted[n - 1 - m]).abs() <= tol * scale)
}

/// Real polynomial, coefficients in ascending powers of x.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial(pub Vec<f64>);

impl Polynomial {
    /// Monic polynomial with the given roots.
    pub fn from_roots(roots: &[f64]) -> Self {
        let mut coeffs = vec![1.0];
        for &r in roots {
            let mut next = vec![0.0; coeffs.len() + 1];
            for (i, &c) in coeffs.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= r * c;
            }
            coeffs = next;
        }
        Polynomial(coeffs)
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.0.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol})");
    }

    #[test]
    fn rejects_invalid_shapes() {
        assert!(JacobiMatrix::new(vec![], vec![]).is_err());
        assert!(JacobiMatrix::new(vec![0.0, 0.0], vec![]).is_err());
        assert!(JacobiMatrix::new(vec![0.0, 0.0], vec![0.0]).is_err());
        assert!(JacobiMatrix::new(vec![0.0, 0.0], vec![-1.0]).is_err());
        assert!(JacobiMatrix::new(vec![f64::NAN, 0.0], vec![1.0]).is_err());
    }

    #[test]
    fn char_poly_two_by_two() {
        let j = JacobiMatrix::zero_diagonal(vec![1.0]).unwrap();
        assert_eq!(j.char_poly().coeffs(), &[-1.0, 0.0, 1.0]);
    }

    #[test]
    fn char_poly_matches_vieta_of_half_block() {
        let j = JacobiMatrix::new(vec![0.0, 0.0, 3.0], vec![5f64.sqrt(), 8f64.sqrt()]).unwrap();
        // (x-5)(x-1)(x+3) expanded by hand
        let expected = [15.0, -13.0, -3.0, 1.0];
        for (c, e) in j.char_poly().coeffs().iter().zip(expected) {
            assert_close(*c, e, 1e-12);
        }
    }

    #[test]
    fn char_poly_uniform_three() {
        let j = JacobiMatrix::zero_diagonal(vec![1.0, 1.0]).unwrap();
        let p = j.char_poly();
        for (c, e) in p.coeffs().iter().zip([0.0, -2.0, 0.0, 1.0]) {
            assert_close(*c, e, 1e-15);
        }
    }

    #[test]
    fn one_by_one() {
        let j = JacobiMatrix::new(vec![2.5], vec![]).unwrap();
        let d = j.eigen_decompose().unwrap();
        assert_eq!(d.eigenvalues(), &[2.5]);
        assert_eq!(d.eigenvector(0), &[1.0]);
        assert_eq!(j.char_poly().coeffs(), &[-2.5, 1.0]);
    }

    #[test]
    fn zero_diagonal_linear_spectrum() {
        let s3 = 3f64.sqrt();
        let j = JacobiMatrix::zero_diagonal(vec![s3, 2.0, s3]).unwrap();
        let d = j.eigen_decompose().unwrap();
        // x^4 - 10x^2 + 9 = (x^2-1)(x^2-9)
        for (e, x) in d.eigenvalues().iter().zip([-3.0, -1.0, 1.0, 3.0]) {
            assert_close(*e, x, 1e-13);
        }
        assert!(d.is_antisymmetric(1e-12));
        assert!(d.orthonormality_error() < 1e-13);
    }

    #[test]
    fn sign_convention_first_component_positive() {
        let j = JacobiMatrix::new(vec![0.3, -1.0, 2.0, 0.0], vec![1.0, 0.5, 2.0]).unwrap();
        let d = j.eigen_decompose().unwrap();
        for v in d.eigenvectors() {
            let first = v.iter().find(|x| **x != 0.0).unwrap();
            assert!(*first > 0.0);
        }
        let again = j.eigen_decompose().unwrap();
        assert_eq!(d, again);
    }

    #[test]
    fn antisymmetry_checks() {
        assert!(spectrum_is_antisymmetric(&[-3.0, -1.0, 1.0, 3.0], 1e-12));
        assert!(spectrum_is_antisymmetric(&[0.0], 1e-12));
        let xxx = [-0.5 - 2f64.sqrt(), -0.5, -0.5 + 2f64.sqrt(), 1.5];
        assert!(!spectrum_is_antisymmetric(&xxx, 1e-12));
    }

    #[test]
    fn bisection_agrees_with_ql() {
        let j =
            JacobiMatrix::new(vec![1.0, -2.0, 0.5, 3.0, 0.0], vec![0.7, 1.3, 2.2, 0.1]).unwrap();
        let ql = j.eigen_decompose().unwrap();
        let bis = j.eigenvalues_bisection();
        for (a, b) in ql.eigenvalues().iter().zip(&bis) {
            assert_close(*a, *b, 1e-12);
        }
    }

    #[test]
    fn from_roots_evaluates_to_zero_at_roots() {
        let p = Polynomial::from_roots(&[2.0, -1.0, 0.5]);
        assert_eq!(p.degree(), 3);
        for r in [2.0, -1.0, 0.5] {
            assert_close(p.eval(r), 0.0, 1e-14);
        }
    }
}
