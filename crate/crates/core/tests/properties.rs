use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, TAU};

use groverian_core::grover::{diffusion_apply, grover_step, oracle_apply};
use groverian_core::hadamard::hadamard_all;
use groverian_core::qstate::{
    inner_product, overlap_gradient, overlap_probability, product_amplitudes,
};
use groverian_core::zoo;
use groverian_core::{Complex64, MarkedSet, ProductAngles, RegisterState};
use proptest::prelude::*;

fn state_from(parts: &[(f64, f64)]) -> RegisterState {
    let amps = parts
        .iter()
        .map(|&(re, im)| Complex64::new(re, im))
        .collect();
    RegisterState::normalized(amps).unwrap()
}

fn complex_state(max_n: usize) -> impl Strategy<Value = RegisterState> {
    (1..=max_n)
        .prop_flat_map(|n| {
            (
                Just(n),
                prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 1 << n),
            )
        })
        .prop_filter("norm bounded away from zero", |(_, p)| {
            p.iter().map(|(a, b)| a * a + b * b).sum::<f64>() > 1e-2
        })
        .prop_map(|(_, p)| state_from(&p))
}

fn real_state(max_n: usize) -> impl Strategy<Value = RegisterState> {
    (1..=max_n)
        .prop_flat_map(|n| (Just(n), prop::collection::vec(-1.0..1.0f64, 1 << n)))
        .prop_filter("norm bounded away from zero", |(_, p)| {
            p.iter().map(|a| a * a).sum::<f64>() > 1e-2
        })
        .prop_map(|(_, p)| {
            let norm = p.iter().map(|a| a * a).sum::<f64>().sqrt();
            let v: Vec<f64> = p.iter().map(|a| a / norm).collect();
            RegisterState::from_real(&v).unwrap()
        })
}

fn max_diff(a: &RegisterState, b: &RegisterState) -> f64 {
    a.amplitudes()
        .iter()
        .zip(b.amplitudes())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

fn marked_for(n: usize, raw: &[usize]) -> Option<MarkedSet> {
    let dim = 1usize << n;
    let mut idx: Vec<usize> = raw.iter().map(|i| i % dim).collect();
    idx.sort_unstable();
    idx.dedup();
    if idx.is_empty() || idx.len() >= dim {
        return None;
    }
    MarkedSet::new(n, idx).ok()
}

const H: f64 = 1e-6;

fn relative_error(analytic: &[f64], numeric: &[f64]) -> f64 {
    let diff: f64 = analytic
        .iter()
        .zip(numeric)
        .map(|(a, b)| (a - b).powi(2))
        .sum::<f64>()
        .sqrt();
    let scale: f64 = numeric.iter().map(|b| b * b).sum::<f64>().sqrt();
    diff / scale.max(1e-8)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn complex_gradient_matches_central_differences(
        psi in complex_state(4),
        seeds in prop::collection::vec((1e-3..FRAC_PI_2 - 1e-3, 0.0..TAU), 4),
    ) {
        let n = psi.n();
        let thetas: Vec<f64> = seeds[..n].iter().map(|s| s.0).collect();
        let phis: Vec<f64> = seeds[..n].iter().map(|s| s.1).collect();
        let angles = ProductAngles::complex(thetas.clone(), phis.clone()).unwrap();
        let analytic = overlap_gradient(&angles, &psi).unwrap();
        let p = |t: &[f64], f: &[f64]| {
            overlap_probability(&ProductAngles::complex(t.to_vec(), f.to_vec()).unwrap(), &psi)
                .unwrap()
        };
        let mut numeric = vec![0.0; 2 * n];
        for k in 0..n {
            let (mut up, mut down) = (thetas.clone(), thetas.clone());
            up[k] += H;
            down[k] -= H;
            numeric[k] = (p(&up, &phis) - p(&down, &phis)) / (2.0 * H);
            let (mut up, mut down) = (phis.clone(), phis.clone());
            up[k] += H;
            down[k] -= H;
            numeric[n + k] = (p(&thetas, &up) - p(&thetas, &down)) / (2.0 * H);
        }
        prop_assert!(relative_error(&analytic, &numeric) < 1e-5);
    }

    #[test]
    fn real_gradient_matches_central_differences(
        psi in real_state(4),
        thetas in prop::collection::vec(-FRAC_PI_2 + 1e-3..FRAC_PI_2 - 1e-3, 4),
    ) {
        let n = psi.n();
        let thetas = thetas[..n].to_vec();
        let angles = ProductAngles::real(thetas.clone()).unwrap();
        let analytic = overlap_gradient(&angles, &psi).unwrap();
        prop_assert_eq!(analytic.len(), n);
        let p = |t: &[f64]| {
            overlap_probability(&ProductAngles::real(t.to_vec()).unwrap(), &psi).unwrap()
        };
        let numeric: Vec<f64> = (0..n)
            .map(|k| {
                let (mut up, mut down) = (thetas.clone(), thetas.clone());
                up[k] += H;
                down[k] -= H;
                (p(&up) - p(&down)) / (2.0 * H)
            })
            .collect();
        prop_assert!(relative_error(&analytic, &numeric) < 1e-5);
    }

    #[test]
    fn oracle_and_diffusion_are_unitary_involutions(
        psi in complex_state(8),
        raw in prop::collection::vec(0usize..256, 1..6),
    ) {
        let n = psi.n();
        let Some(marked) = marked_for(n, &raw) else { return Ok(()); };
        let o = oracle_apply(&psi, &marked).unwrap();
        let d = diffusion_apply(&psi);
        prop_assert!((o.norm_sqr() - 1.0).abs() < 1e-12);
        prop_assert!((d.norm_sqr() - 1.0).abs() < 1e-12);
        prop_assert!(max_diff(&oracle_apply(&o, &marked).unwrap(), &psi) < 1e-12);
        prop_assert!(max_diff(&diffusion_apply(&d), &psi) < 1e-12);
        let g = grover_step(&psi, &marked).unwrap();
        prop_assert!((g.norm_sqr() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn diffusion_preserves_inner_products(a in complex_state(6), seed in any::<u64>()) {
        let b = zoo::random_state(&zoo::RandomStateSpec::new(a.n(), seed)).unwrap();
        let before = inner_product(&a, &b).unwrap();
        let after = inner_product(&diffusion_apply(&a), &diffusion_apply(&b)).unwrap();
        prop_assert!((before - after).norm() < 1e-12);
    }

    #[test]
    fn hadamard_is_an_involution(psi in complex_state(8)) {
        let back = hadamard_all(&hadamard_all(&psi));
        prop_assert!(max_diff(&back, &psi) < 1e-12);
    }

    #[test]
    fn product_states_are_normalized(
        seeds in prop::collection::vec((0.0..=FRAC_PI_2, 0.0..TAU), 1..10),
    ) {
        let n = seeds.len();
        let angles = ProductAngles::complex(
            seeds.iter().map(|s| s.0).collect(),
            seeds.iter().map(|s| s.1).collect(),
        ).unwrap();
        let e = product_amplitudes(&angles, n).unwrap();
        prop_assert!((e.norm_sqr() - 1.0).abs() < 1e-12);
        let p = overlap_probability(&angles, &e).unwrap();
        prop_assert!((p - 1.0).abs() < 1e-12);
    }

    #[test]
    fn overlap_is_invariant_under_qubit_relabeling(
        psi in complex_state(5),
        seeds in prop::collection::vec((0.0..=FRAC_PI_2, 0.0..TAU), 5),
        shift in 0usize..5,
    ) {
        // Cyclic relabeling of the qubits applied to both the state and the angles.
        let n = psi.n();
        let perm = |k: usize| (k + shift) % n;
        let dim = psi.dim();
        let mut moved = vec![Complex64::new(0.0, 0.0); dim];
        for (i, a) in psi.amplitudes().iter().enumerate() {
            let mut j = 0;
            for k in 0..n {
                let bit = (i >> (n - 1 - k)) & 1;
                j |= bit << (n - 1 - perm(k));
            }
            moved[j] = *a;
        }
        let moved = RegisterState::new(moved).unwrap();
        let thetas: Vec<f64> = seeds[..n].iter().map(|s| s.0).collect();
        let phis: Vec<f64> = seeds[..n].iter().map(|s| s.1).collect();
        let mut t2 = vec![0.0; n];
        let mut f2 = vec![0.0; n];
        for k in 0..n {
            t2[perm(k)] = thetas[k];
            f2[perm(k)] = phis[k];
        }
        let p1 = overlap_probability(&ProductAngles::complex(thetas, phis).unwrap(), &psi).unwrap();
        let p2 = overlap_probability(&ProductAngles::complex(t2, f2).unwrap(), &moved).unwrap();
        prop_assert!((p1 - p2).abs() < 1e-12);
    }

    #[test]
    fn text_round_trip_is_exact(psi in complex_state(5)) {
        let back = RegisterState::from_text(&psi.to_text()).unwrap();
        prop_assert_eq!(back, psi);
    }
}

#[test]
fn constructors_are_normalized() {
    let mut states = Vec::new();
    for n in 1..=12 {
        states.push(zoo::eta(n).unwrap());
        states.push(zoo::ghz(n).unwrap());
        states.push(zoo::even_odd_mix(n, 0.3).unwrap());
        states.push(zoo::eta_ghz_mix(n, 0.8).unwrap());
        states.push(zoo::random_state(&zoo::RandomStateSpec::new(n, n as u64)).unwrap());
        if n >= 2 {
            states.push(zoo::w_state(n).unwrap());
        }
        if n % 2 == 0 {
            states.push(zoo::balanced_state(n).unwrap());
        }
    }
    for s in &states {
        assert!(
            (s.norm_sqr() - 1.0).abs() < 1e-12,
            "n={} norm={}",
            s.n(),
            s.norm_sqr()
        );
    }
}

#[test]
fn even_part_one_is_hadamard_of_ghz() {
    for n in 1..=12 {
        let mix = zoo::even_odd_mix(n, 1.0).unwrap();
        let hghz = hadamard_all(&zoo::ghz(n).unwrap());
        assert!(mix.fidelity(&hghz).unwrap() >= 1.0 - 1e-12, "n={n}");
    }
}

#[test]
fn single_marked_amplitude_follows_sine_law() {
    for n in 1..=12 {
        let dim = 1usize << n;
        let theta = (dim as f64).sqrt().recip().asin();
        let m = dim / 3;
        let marked = MarkedSet::single(n, m).unwrap();
        let mut psi = zoo::eta(n).unwrap();
        for t in 0..=60 {
            let expected = ((2 * t + 1) as f64 * theta).sin().abs();
            let got = psi.amplitudes()[m].norm();
            assert!((got - expected).abs() < 1e-10, "n={n} t={t}");
            psi = grover_step(&psi, &marked).unwrap();
        }
    }
}

#[test]
fn eta_is_a_product_state() {
    let angles = ProductAngles::uniform(6);
    let eta = zoo::eta(6).unwrap();
    assert!((overlap_probability(&angles, &eta).unwrap() - 1.0).abs() < 1e-12);
    let h = FRAC_1_SQRT_2;
    assert!((zoo::ghz(1).unwrap().amplitudes()[1].re - h).abs() < 1e-15);
}
