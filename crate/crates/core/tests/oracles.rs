//! Independent reference computations checked against the library routes.

use approx::assert_relative_eq;
use num_complex::Complex64;

use monogamy::harness::tripartite_concurrences;
use monogamy::linalg::{herm_eigvals, trace_norm, ComplexMatrix, DEFAULT_TOL};
use monogamy::measures::{
    concurrence_of_assistance_2q, concurrence_pure, concurrence_wootters, convex_roof, eof_2q,
    negativity, negativity_pure, spin_flip_roots, spin_flip_roots_via_product, Direction,
    MeasureKind, OptimizerBudget,
};
use monogamy::qstate::{
    complex_gaussian, density_from_pure, gsd_state, partial_transpose, random_pure, sample_rng,
    PartitionSpec, PureState,
};

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn random_hermitian(n: usize, seed: u64) -> ComplexMatrix {
    let mut rng = sample_rng(seed, 0);
    let g: Vec<Complex64> = (0..n * n).map(|_| complex_gaussian(&mut rng)).collect();
    let g = ComplexMatrix::from_row_major(n, &g).unwrap();
    (&g + &g.adjoint()).scale(0.5)
}

/// Characteristic polynomial coefficients `c[0..=n]` (monic) by Faddeev-LeVerrier.
fn char_poly(a: &ComplexMatrix) -> Vec<Complex64> {
    let n = a.dim();
    let mut coef = vec![c(0.0); n + 1];
    coef[n] = c(1.0);
    let mut m = ComplexMatrix::zeros(n);
    for k in 1..=n {
        let mut next = a * &m;
        for i in 0..n {
            next[(i, i)] += coef[n - k + 1];
        }
        m = next;
        coef[n - k] = -(a * &m).trace() / k as f64;
    }
    coef
}

/// All roots of a monic polynomial by Durand-Kerner iteration.
fn durand_kerner(coef: &[Complex64]) -> Vec<Complex64> {
    let n = coef.len() - 1;
    let eval = |z: Complex64| coef.iter().rev().fold(c(0.0), |acc, &k| acc * z + k);
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..n).map(|i| seed.powu(i as u32 + 1)).collect();
    for _ in 0..2000 {
        let mut delta = 0.0f64;
        for i in 0..n {
            let denom = (0..n).filter(|&j| j != i).fold(c(1.0), |acc, j| acc * (z[i] - z[j]));
            let step = eval(z[i]) / denom;
            z[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-15 {
            break;
        }
    }
    z
}

#[test]
fn hermitian_eigenvalues_match_characteristic_roots() {
    for seed in 0..20 {
        let a = random_hermitian(4, seed);
        let mut roots: Vec<f64> = durand_kerner(&char_poly(&a)).iter().map(|z| z.re).collect();
        roots.sort_by(|x, y| y.total_cmp(x));
        let eig = herm_eigvals(&a, DEFAULT_TOL).unwrap();
        for (r, e) in roots.iter().zip(&eig) {
            assert!((r - e).abs() < 1e-9, "seed {seed}: {roots:?} vs {eig:?}");
        }
    }
}

#[test]
fn two_by_two_trace_norm_closed_form() {
    // sigma1 + sigma2 = sqrt(|M|_F^2 + 2 |det M|)
    let mut rng = sample_rng(5, 0);
    for _ in 0..200 {
        let e: Vec<Complex64> = (0..4).map(|_| complex_gaussian(&mut rng)).collect();
        let m = ComplexMatrix::from_row_major(2, &e).unwrap();
        let frob: f64 = e.iter().map(|z| z.norm_sqr()).sum();
        let det = (e[0] * e[3] - e[1] * e[2]).norm();
        assert_relative_eq!(trace_norm(&m), (frob + 2.0 * det).sqrt(), epsilon = 1e-12);
    }
}

#[test]
fn trace_norm_equals_sum_sqrt_eig_of_gram() {
    for seed in 0..20 {
        let mut rng = sample_rng(seed, 1);
        let e: Vec<Complex64> = (0..25).map(|_| complex_gaussian(&mut rng)).collect();
        let m = ComplexMatrix::from_row_major(5, &e).unwrap();
        let gram = &m.adjoint() * &m;
        let want: f64 = herm_eigvals(&gram, 1e-8).unwrap().iter().map(|v| v.max(0.0).sqrt()).sum();
        assert_relative_eq!(trace_norm(&m), want, epsilon = 1e-9);
    }
}

#[test]
fn haar_mean_purity_two_qubits() {
    // E[tr rho_A^2] = (dA + dB) / (dA dB + 1) = 4/5 for two qubits
    let n = 10_000;
    let purities: Vec<f64> = (0..n)
        .map(|i| random_pure(&[2, 2], 1_000 + i).unwrap().reduced(&[0]).unwrap().purity())
        .collect();
    let mean = purities.iter().sum::<f64>() / n as f64;
    let var = purities.iter().map(|p| (p - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
    let sigma = (var / n as f64).sqrt();
    assert!((mean - 0.8).abs() < 3.0 * sigma, "mean {mean}, sigma {sigma}");
}

#[test]
fn wootters_routes_agree() {
    for seed in 0..50 {
        let rho = random_pure(&[2, 2, 2], seed).unwrap().reduced(&[0, 1]).unwrap();
        let a = spin_flip_roots(&rho).unwrap();
        let b = spin_flip_roots_via_product(&rho).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).abs() < 1e-6);
        }
    }
}

#[test]
fn generalized_schmidt_closed_forms() {
    let steps = [0.0, 0.3, 0.7, 1.0];
    for &a1 in &steps {
        for &a2 in &steps {
            for &a3 in &steps {
                for &a4 in &steps {
                    for theta in [0.0, 1.1, std::f64::consts::PI] {
                        let raw = [0.8, a1, a2, a3, a4];
                        let norm = raw.iter().map(|x| x * x).sum::<f64>().sqrt();
                        let l = raw.map(|x| x / norm);
                        let psi = gsd_state(l, theta).unwrap();
                        let (joint, c12, c13) = tripartite_concurrences(&psi).unwrap();
                        let want = 2.0 * l[0] * (l[2] * l[2] + l[3] * l[3] + l[4] * l[4]).sqrt();
                        assert!((joint - want).abs() < 1e-10);
                        assert!((c12 - 2.0 * l[0] * l[2]).abs() < 1e-10);
                        assert!((c13 - 2.0 * l[0] * l[3]).abs() < 1e-10);
                    }
                }
            }
        }
    }
}

#[test]
fn w_state_concurrences() {
    let w = PureState::w(3).unwrap();
    let (joint, c12, c13) = tripartite_concurrences(&w).unwrap();
    assert_relative_eq!(c12, 2.0 / 3.0, epsilon = 1e-12);
    assert_relative_eq!(c13, 2.0 / 3.0, epsilon = 1e-12);
    assert_relative_eq!(joint, 2.0 * 2f64.sqrt() / 3.0, epsilon = 1e-12);
    assert!((joint * joint - c12 * c12 - c13 * c13).abs() < 1e-12);
}

#[test]
fn pure_negativity_and_partial_transpose_trace_norm() {
    // Schmidt coefficients (3/5, 4/5): N = 2 s1 s2 = 0.96
    let psi = PureState::from_real(&[0.6, 0.0, 0.0, 0.8], vec![2, 2]).unwrap();
    let cut = PartitionSpec::first_vs_rest(2).unwrap();
    assert_relative_eq!(negativity_pure(&psi, &cut).unwrap(), 0.96, epsilon = 1e-12);
    for seed in 0..50 {
        let psi = random_pure(&[2, 2], seed).unwrap();
        let lam = psi.reduced(&[0]).unwrap().spectrum().unwrap();
        let pt = partial_transpose(&density_from_pure(&psi), &cut).unwrap();
        assert_relative_eq!(trace_norm(&pt), 1.0 + 2.0 * (lam[0] * lam[1]).sqrt(), epsilon = 1e-10);
        // two-qubit pure negativity equals concurrence
        assert_relative_eq!(
            negativity(&density_from_pure(&psi), &cut).unwrap(),
            concurrence_pure(&psi, &cut).unwrap(),
            epsilon = 1e-10
        );
    }
}

#[test]
fn roof_maximum_is_bracketed_by_assistance_closed_form() {
    let cut = PartitionSpec::first_vs_rest(2).unwrap();
    for seed in 0..20 {
        let rho = random_pure(&[2, 2, 2], 300 + seed).unwrap().reduced(&[0, 2]).unwrap();
        let exact = concurrence_of_assistance_2q(&rho).unwrap();
        for kind in [MeasureKind::Concurrence, MeasureKind::Negativity] {
            let (v, ens) =
                convex_roof(&rho, &cut, kind, Direction::Max, &OptimizerBudget::default().with_seed(seed))
                    .unwrap();
            assert!(v <= exact + 1e-9 && v >= exact - 5e-3, "{kind:?}: {v} vs {exact}");
            assert!(ens.reconstruct().max_abs_diff(rho.matrix()) < 1e-10);
        }
    }
}

#[test]
fn formation_entanglement_endpoints() {
    let bell = density_from_pure(&PureState::bell());
    assert_relative_eq!(eof_2q(&bell).unwrap(), 1.0, epsilon = 1e-12);
    let prod = density_from_pure(&PureState::basis(vec![2, 2], &[0, 1]).unwrap());
    assert_eq!(eof_2q(&prod).unwrap(), 0.0);
    assert_eq!(concurrence_wootters(&prod).unwrap(), 0.0);
}
