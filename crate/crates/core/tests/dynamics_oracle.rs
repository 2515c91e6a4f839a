mod common;

use std::f64::consts::{PI, SQRT_2};

use pstchain::{
    fidelity_scan, fidelity_scan_window, transition_amplitude, verify_perfect_transfer, BasisState,
    BoundaryPropagator, ChainSpec, Error, Model,
};
use rand::Rng;

fn random_chain(rng: &mut impl Rng) -> ChainSpec {
    let n = rng.gen_range(2..=8);
    let couplings = (0..n - 1).map(|_| rng.gen_range(0.2..3.0)).collect();
    let model = if rng.gen_bool(0.5) {
        Model::Xx
    } else {
        Model::Xxx
    };
    ChainSpec::new(model, couplings).unwrap()
}

#[test]
fn amplitude_matches_matrix_exponential() {
    let mut rng = common::rng(7);
    for _ in 0..40 {
        let spec = random_chain(&mut rng);
        let h = spec.hamiltonian();
        for _ in 0..5 {
            let t = rng.gen_range(0.0..20.0 * PI);
            let got = transition_amplitude(&spec, t).unwrap();
            let oracle = common::amplitude_by_expm(h.diag(), h.offdiag(), t);
            assert!(
                (got - oracle).norm() <= 1e-9,
                "{:?} t={t}: {got} vs {oracle}",
                spec.couplings()
            );
        }
    }
}

#[test]
fn two_site_amplitude_is_sine() {
    for j in [0.3, 1.0, 2.5] {
        let spec = ChainSpec::xx(vec![j]).unwrap();
        for t in [0.0, 0.4, 1.3, 7.9] {
            let f = transition_amplitude(&spec, t).unwrap();
            assert!((f.norm() - (j * t).sin().abs()).abs() < 1e-13);
        }
    }
}

#[test]
fn unitarity_and_completeness() {
    let mut rng = common::rng(11);
    for _ in 0..30 {
        let spec = random_chain(&mut rng);
        let n = spec.n_sites();
        let prop = BoundaryPropagator::new(&spec).unwrap();
        let weight: f64 = prop
            .decomposition()
            .eigenvectors()
            .iter()
            .map(|v| v[0] * v[0])
            .sum();
        assert!((weight - 1.0).abs() <= 1e-10);
        let t = rng.gen_range(0.0..30.0);
        assert!(prop.fidelity(t) <= 1.0 + 1e-12);
        let from = BasisState::new(1, n).unwrap();
        let total: f64 = (1..=n)
            .map(|s| {
                prop.site_amplitude(from, BasisState::new(s, n).unwrap(), t)
                    .norm_sqr()
            })
            .sum();
        assert!((total - 1.0).abs() <= 1e-10);
    }
}

#[test]
fn rescaling_couplings_rescales_time() {
    let spec = ChainSpec::xx(common::linear_spectrum_couplings(7)).unwrap();
    let base = BoundaryPropagator::new(&spec).unwrap();
    for s in [0.5, 2.0, 10.0] {
        let scaled = BoundaryPropagator::new(&spec.scaled(s).unwrap()).unwrap();
        for t in [0.1, 0.9, PI / 2.0, 4.2] {
            assert!((base.fidelity(t) - scaled.fidelity(t / s)).abs() < 1e-12);
        }
    }
}

#[test]
fn amplitude_is_imaginary_at_even_perfect_transfer() {
    for n in [2usize, 4, 6, 8, 10] {
        let spec = ChainSpec::xx(common::linear_spectrum_couplings(n)).unwrap();
        let report = verify_perfect_transfer(&spec, PI / 2.0, 1e-9).unwrap();
        assert!(report.is_perfect);
        let f = transition_amplitude(&spec, PI / 2.0).unwrap();
        assert!(f.re.abs() <= 1e-9, "N={n}: {f}");
    }
}

#[test]
fn scan_finds_xxx_four_site_maximum() {
    let spec = ChainSpec::xxx(vec![1.0, 3.0, 1.0]).unwrap();
    // the local maximum near 6π is 0.99914; later revivals on [0, 40π] go higher
    let local = fidelity_scan_window(&spec, 5.0 * PI, 7.0 * PI, 10_000, 1e-9).unwrap();
    assert!((local.max_fidelity - 0.99914).abs() < 1e-5);
    assert!((local.argmax_time - 6.0 * PI).abs() < 0.1);
    let report = fidelity_scan(&spec, 40.0 * PI, 100_000, 1e-9).unwrap();
    assert!(report.max_fidelity >= local.max_fidelity - 1e-12);
    assert!(report.max_fidelity < 1.0 - 1e-5);
    assert!(!report.is_perfect);
    assert_eq!(report.samples.len(), 100_000);
}

#[test]
fn scan_finds_three_site_perfect_transfer() {
    let spec = ChainSpec::xx(vec![1.0, 1.0]).unwrap();
    let report = fidelity_scan(&spec, 4.0, 10_000, 1e-9).unwrap();
    assert!(report.is_perfect);
    assert!((report.argmax_time - PI / SQRT_2).abs() < 1e-6);
}

#[test]
fn scan_finds_two_site_perfect_transfer() {
    let spec = ChainSpec::xx(vec![1.0]).unwrap();
    let report = fidelity_scan(&spec, PI, 1_000, 1e-9).unwrap();
    assert!(report.is_perfect);
    assert!((report.argmax_time - PI / 2.0).abs() < 1e-6);
}

#[test]
fn verify_examples() {
    let s6 = ChainSpec::xx(vec![
        5f64.sqrt(),
        8f64.sqrt(),
        3.0,
        8f64.sqrt(),
        5f64.sqrt(),
    ])
    .unwrap();
    let r = verify_perfect_transfer(&s6, PI / 2.0, 1e-9).unwrap();
    assert!(r.is_perfect);
    assert!(r
        .phase_misalignments
        .as_ref()
        .unwrap()
        .iter()
        .all(|a| a.abs() < 1e-9));

    let s6v = 6f64.sqrt();
    let s5 = ChainSpec::xx(vec![2.0, s6v, s6v, 2.0]).unwrap();
    assert!(
        verify_perfect_transfer(&s5, PI / 2.0, 1e-9)
            .unwrap()
            .is_perfect
    );

    let xxx = ChainSpec::xxx(vec![1.0, 1.0, 1.0]).unwrap();
    let r = verify_perfect_transfer(&xxx, 29.0 * PI, 1e-9).unwrap();
    assert!(!r.is_perfect);
    assert!(r.max_fidelity < 1.0 - 1e-5);
}

#[test]
fn range_errors() {
    let spec = ChainSpec::xx(vec![1.0]).unwrap();
    assert!(matches!(
        transition_amplitude(&spec, -1.0),
        Err(Error::InvalidRange(_))
    ));
    assert!(matches!(
        fidelity_scan(&spec, 0.0, 10, 1e-9),
        Err(Error::InvalidRange(_))
    ));
    assert!(matches!(
        fidelity_scan(&spec, 1.0, 1, 1e-9),
        Err(Error::InvalidRange(_))
    ));
    assert!(matches!(
        verify_perfect_transfer(&spec, 0.0, 1e-9),
        Err(Error::InvalidRange(_))
    ));
}
