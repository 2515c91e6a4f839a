use std::f64::consts::PI;

use super::{require_param_count, require_positive, DesignRequest, Parity};
use crate::error::{Error, Result};

/// Eigenvalue in units of `unit`, tagged with the block it belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Level {
    pub multiple: i64,
    pub parity: Parity,
}

/// Parameter layout for odd N = 2k + 1: (odd-class count, even-class count).
///
/// The block of odd dimension holds the zero eigenvalue and takes the even
/// class; the other block takes the odd class.
pub(crate) fn odd_layout(n_sites: usize) -> (usize, usize) {
    let k = (n_sites - 1) / 2;
    (k.div_ceil(2), k / 2)
}

/// Labelled target levels and the energy unit they are measured in.
pub(crate) fn target_levels(req: &DesignRequest) -> Result<(Vec<Level>, f64)> {
    let n = req.n_sites;
    let mut levels = Vec::with_capacity(n);
    let unit;
    if n.is_multiple_of(2) {
        require_param_count(req, 1, "progression step n")?;
        require_positive(req)?;
        let step = req.params[0];
        unit = PI / (2.0 * req.t_p);
        let (offset, range) = if n.is_multiple_of(4) {
            let k = (n / 4) as i64;
            (-1, -(k - 1)..=k)
        } else {
            let k = ((n + 2) / 4) as i64;
            (1, -(k - 1)..=(k - 1))
        };
        for i in range {
            let e = offset + 4 * i * step;
            levels.push(Level {
                multiple: e,
                parity: Parity::Symmetric,
            });
            levels.push(Level {
                multiple: -e,
                parity: Parity::Antisymmetric,
            });
        }
    } else {
        let (odd_count, even_count) = odd_layout(n);
        require_param_count(
            req,
            odd_count + even_count,
            &format!("{odd_count} odd-class then {even_count} even-class integers"),
        )?;
        require_positive(req)?;
        unit = PI / req.t_p;
        let k = (n - 1) / 2;
        let (zero_block, other_block) = if k.is_multiple_of(2) {
            (Parity::Symmetric, Parity::Antisymmetric)
        } else {
            (Parity::Antisymmetric, Parity::Symmetric)
        };
        for &p in &req.params[..odd_count] {
            for sign in [1, -1] {
                levels.push(Level {
                    multiple: sign * (2 * p - 1),
                    parity: other_block,
                });
            }
        }
        levels.push(Level {
            multiple: 0,
            parity: zero_block,
        });
        for &p in &req.params[odd_count..] {
            for sign in [1, -1] {
                levels.push(Level {
                    multiple: sign * 2 * p,
                    parity: zero_block,
                });
            }
        }
    }

    levels.sort_by_key(|l| std::cmp::Reverse(l.multiple));
    if let Some(w) = levels.windows(2).find(|w| w[0].multiple == w[1].multiple) {
        return Err(Error::DuplicateEigenvalue(format!(
            "level {}·{unit} requested twice",
            w[0].multiple
        )));
    }
    // Sorted eigenvectors of a persymmetric Jacobi matrix alternate between
    // the two blocks, starting with the symmetric one at the top.
    for (i, level) in levels.iter().enumerate() {
        let expected = if i % 2 == 0 {
            Parity::Symmetric
        } else {
            Parity::Antisymmetric
        };
        if level.parity != expected {
            return Err(Error::InvalidParams(format!(
                "spectral classes must interlace: level {} would need the {:?} block",
                level.multiple, expected
            )));
        }
    }
    Ok((levels, unit))
}

/// Ascending target spectrum for the general even/odd families.
pub fn target_spectrum(req: &DesignRequest) -> Result<Vec<f64>> {
    let (levels, unit) = target_levels(req)?;
    Ok(levels
        .iter()
        .rev()
        .map(|l| l.multiple as f64 * unit)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spectrum(n: usize, t_p: f64, params: &[i64]) -> Result<Vec<f64>> {
        target_spectrum(&DesignRequest::new(n, t_p, params.to_vec()).unwrap())
    }

    fn assert_levels(got: &[f64], expected: &[f64]) {
        assert_eq!(got.len(), expected.len());
        for (g, e) in got.iter().zip(expected) {
            assert!((g - e).abs() < 1e-12, "{got:?} vs {expected:?}");
        }
    }

    #[test]
    fn eight_sites_linear() {
        let s = spectrum(8, PI / 2.0, &[1]).unwrap();
        assert_levels(&s, &[-7.0, -5.0, -3.0, -1.0, 1.0, 3.0, 5.0, 7.0]);
    }

    #[test]
    fn six_sites() {
        assert_levels(
            &spectrum(6, PI / 2.0, &[1]).unwrap(),
            &[-5.0, -3.0, -1.0, 1.0, 3.0, 5.0],
        );
        assert_levels(
            &spectrum(6, PI / 2.0, &[2]).unwrap(),
            &[-9.0, -7.0, -1.0, 1.0, 7.0, 9.0],
        );
    }

    #[test]
    fn odd_sites() {
        assert_levels(
            &spectrum(5, PI / 2.0, &[1, 1]).unwrap(),
            &[-4.0, -2.0, 0.0, 2.0, 4.0],
        );
        assert_levels(&spectrum(3, PI / 2.0, &[1]).unwrap(), &[-2.0, 0.0, 2.0]);
        assert_levels(
            &spectrum(7, PI / 2.0, &[1, 2, 1]).unwrap(),
            &[-6.0, -4.0, -2.0, 0.0, 2.0, 4.0, 6.0],
        );
    }

    #[test]
    fn layouts() {
        assert_eq!(odd_layout(3), (1, 0));
        assert_eq!(odd_layout(5), (1, 1));
        assert_eq!(odd_layout(7), (2, 1));
        assert_eq!(odd_layout(9), (2, 2));
    }

    #[test]
    fn duplicates_rejected() {
        assert!(matches!(
            spectrum(7, 1.0, &[2, 2, 1]),
            Err(Error::DuplicateEigenvalue(_))
        ));
    }

    #[test]
    fn non_interlacing_rejected() {
        // N=7 needs 2·n3 strictly between the two odd levels
        assert!(matches!(
            spectrum(7, 1.0, &[1, 2, 3]),
            Err(Error::InvalidParams(_))
        ));
        // N=5 with the even level below the odd one
        assert!(matches!(
            spectrum(5, 1.0, &[3, 1]),
            Err(Error::InvalidParams(_))
        ));
    }

    #[test]
    fn wrong_param_count() {
        assert!(matches!(
            spectrum(6, 1.0, &[]),
            Err(Error::InvalidParams(_))
        ));
        assert!(matches!(
            spectrum(6, 1.0, &[0]),
            Err(Error::InvalidParams(_))
        ));
        assert!(matches!(
            spectrum(5, 1.0, &[1]),
            Err(Error::InvalidParams(_))
        ));
    }
}
