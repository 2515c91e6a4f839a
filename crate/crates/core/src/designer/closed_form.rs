use std::f64::consts::{PI, SQRT_2};

use super::spectrum::target_spectrum;
use super::{require_param_count, require_positive, CouplingSolution, DesignRequest};
use crate::error::{Error, Result};

/// Four-site XX chain (1, J, 1) from the integer pair (k₁, k₂).
///
/// The two positive levels are E₁,₂ = (J ± √(J² + 4)) / 2 and transfer is
/// perfect when E₁/E₂ = (2k₁+1)/(2k₂+1) with k₁ - k₂ even. Returns
/// `(J, t)` where t = (2k₁+1)π / (2E₁) is the transfer time at unit boundary
/// couplings.
pub fn xx4_natural_design(k1: i64, k2: i64) -> Result<(f64, f64)> {
    if (k1 - k2) % 2 != 0 {
        return Err(Error::InvalidParams(format!(
            "k1 - k2 must be even, got k1 = {k1}, k2 = {k2}"
        )));
    }
    let sum = k1 + k2 + 1;
    let diff = k1 - k2;
    if sum <= 0 {
        return Err(Error::InvalidParams(format!(
            "k1 + k2 + 1 > 0 required (so that E1 is the larger level), got {sum}"
        )));
    }
    if diff * diff <= sum * sum {
        return Err(Error::InvalidParams(format!(
            "(k1 - k2)^2 > (k1 + k2 + 1)^2 required, got {} <= {}",
            diff * diff,
            sum * sum
        )));
    }
    let j = (4.0 * (sum * sum) as f64 / (diff * diff - sum * sum) as f64).sqrt();
    let e1 = 0.5 * (j + (j * j + 4.0).sqrt());
    let t = (2 * k1 + 1) as f64 * PI / (2.0 * e1);
    Ok((j, t))
}

/// Closed-form perfect-transfer couplings for 3 to 8 sites.
///
/// Parameter layouts:
/// * N=3: none (uniform chain J = π / (√2 t_p));
/// * N=4: `[k1, k2]`, see [`xx4_natural_design`]; the (1, J, 1) chain is
///   rescaled to transfer at the requested t_p;
/// * N=5: `[k]`, J₁ = π/t_p, J₂ = √((4k² - 1)/2)·π/t_p;
/// * N=6, N=8: `[n]`;
/// * N=7: `[n1, n2, n3]` with A = (2n₁-1)² + (2n₂-1)² - (2n₃)² > 0 and
///   (2n₃)²A > (2n₁-1)²(2n₂-1)².
pub fn design_closed_form(req: &DesignRequest) -> Result<CouplingSolution> {
    let t_p = req.t_p;
    let unit = PI / t_p;
    let (half, target) = match req.n_sites {
        3 => {
            require_param_count(req, 0, "uniform chain")?;
            (vec![unit / SQRT_2], vec![-unit, 0.0, unit])
        }
        4 => {
            require_param_count(req, 2, "k1, k2")?;
            let (j, t_natural) = xx4_natural_design(req.params[0], req.params[1])?;
            let scale = t_natural / t_p;
            let root = (j * j + 4.0).sqrt();
            let e1 = 0.5 * (j + root) * scale;
            let e2 = 0.5 * (j - root) * scale;
            (vec![scale, j * scale], vec![-e1, e2, -e2, e1])
        }
        5 => {
            require_param_count(req, 1, "k")?;
            require_positive(req)?;
            let k = req.params[0] as f64;
            let j2 = ((4.0 * k * k - 1.0) / 2.0).sqrt() * unit;
            let top = 2.0 * k * unit;
            (vec![unit, j2], vec![-top, -unit, 0.0, unit, top])
        }
        6 => {
            require_param_count(req, 1, "n")?;
            require_positive(req)?;
            let n = req.params[0] as f64;
            let couplings = vec![
                ((16.0 * n * n - 1.0) / 12.0).sqrt() * unit,
                ((8.0 * n * n - 2.0) / 3.0).sqrt() * unit,
                1.5 * unit,
            ];
            (couplings, target_spectrum(req)?)
        }
        7 => {
            require_param_count(req, 3, "n1, n2, n3")?;
            require_positive(req)?;
            let r1 = (2 * req.params[0] - 1) as f64;
            let r2 = (2 * req.params[1] - 1) as f64;
            let e = (2 * req.params[2]) as f64;
            let a = r1 * r1 + r2 * r2 - e * e;
            if a <= 0.0 {
                return Err(Error::InvalidParams(format!(
                    "A = (2n1-1)^2 + (2n2-1)^2 - (2n3)^2 must be > 0, got {a}"
                )));
            }
            let inner = e * e * a - r1 * r1 * r2 * r2;
            if inner <= 0.0 {
                return Err(Error::InvalidParams(format!(
                    "(2n3)^2·A > (2n1-1)^2·(2n2-1)^2 required, got difference {inner}"
                )));
            }
            let couplings = vec![
                unit * r1 * r2 / a.sqrt(),
                unit * inner.sqrt() / a.sqrt(),
                unit * (a / 2.0).sqrt(),
            ];
            (couplings, target_spectrum(req)?)
        }
        8 => {
            require_param_count(req, 1, "n")?;
            require_positive(req)?;
            let n = req.params[0] as f64;
            let half_unit = 0.5 * unit;
            let couplings = vec![
                half_unit * ((32.0 * n * n + 4.0 * n - 1.0) / 5.0).sqrt(),
                half_unit * ((48.0 * n * n + 16.0 * n - 4.0) / 5.0).sqrt(),
                half_unit * (20.0 * n - 5.0).sqrt(),
                half_unit * (8.0 * n - 4.0),
            ];
            (couplings, target_spectrum(req)?)
        }
        other => {
            return Err(Error::InvalidParams(format!(
                "closed forms exist for 3..=8 sites, got {other}"
            )))
        }
    };
    CouplingSolution::from_couplings(mirror(&half, req.n_sites), target, t_p)
}

/// Expand the first ⌈(N-1)/2⌉ couplings to the full mirror-symmetric list.
fn mirror(half: &[f64], n_sites: usize) -> Vec<f64> {
    let bonds = n_sites - 1;
    (0..bonds).map(|i| half[i.min(bonds - 1 - i)]).collect()
}
