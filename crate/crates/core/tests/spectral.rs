use std::f64::consts::PI;

use catmap::cli::{fourier_multiplicities, standard_test_matrices};
use catmap::spectral::{
    equidistribution_from_phases, multiplicities, quantum_period, quantum_period_by_iteration, weyl_sums,
    MatrixElements,
};
use catmap::{eig_unitary, lifted_period, quantize, quantize_s, Conventions, Error, IntegerSymplecticMatrix};
use num_complex::Complex64;
use proptest::prelude::*;

fn conv() -> Conventions {
    Conventions::default()
}

fn words() -> impl Strategy<Value = IntegerSymplecticMatrix> {
    proptest::collection::vec(0u8..4, 1..8).prop_map(|w| {
        w.iter().fold(IntegerSymplecticMatrix::identity(1), |acc, l| {
            let step = match l {
                0 => IntegerSymplecticMatrix::s(),
                1 => IntegerSymplecticMatrix::s().inverse(),
                2 => IntegerSymplecticMatrix::t(),
                _ => IntegerSymplecticMatrix::t().inverse(),
            };
            acc.compose(&step).unwrap()
        })
    })
}

#[test]
fn eigenvalues_lie_on_the_circle() {
    for g in standard_test_matrices() {
        for n in [1, 2, 7, 16, 33] {
            let eig = eig_unitary(&quantize(&g, n, &conv()).unwrap().operator).unwrap();
            assert!(eig.max_modulus_deviation <= 1e-10);
            assert!(eig.max_residual <= 1e-10, "{g} N={n}");
            assert!(eig.phases.iter().all(|t| (0.0..2.0 * PI).contains(t)));
            assert!(eig.phases.windows(2).all(|w| w[0] <= w[1]));
        }
    }
}

/// Counts of eigenvalues nearest to `1, -1, -i, i`.
fn fourier_counts(n: u64) -> ([usize; 4], f64) {
    let eig = eig_unitary(&quantize_s(n)).unwrap();
    let targets = [Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0), Complex64::new(0.0, -1.0), Complex64::new(0.0, 1.0)];
    let mut counts = [0; 4];
    let mut worst = 0.0f64;
    for t in &eig.phases {
        let z = Complex64::from_polar(1.0, *t);
        let (k, d) = targets
            .iter()
            .map(|w| (z - w).norm())
            .enumerate()
            .fold((0, f64::INFINITY), |best, (k, d)| if d < best.1 { (k, d) } else { best });
        counts[k] += 1;
        worst = worst.max(d);
    }
    (counts, worst)
}

#[test]
fn fourier_multiplicity_table() {
    for n in 1..=64 {
        let (counts, worst) = fourier_counts(n);
        assert!(worst <= 1e-8, "N={n}");
        assert_eq!(counts, fourier_multiplicities(n), "N={n}");
    }
    // for N = 4m the spread between the largest and smallest count is two
    let [a, _, _, d] = fourier_multiplicities(8);
    assert_eq!(a - d, 2);
}

#[test]
fn multiplicity_clusters_wrap_around() {
    assert_eq!(multiplicities(&[0.0, 1e-12, 1.0, 2.0 * PI - 1e-12], 1e-9), vec![3, 1]);
    assert_eq!(multiplicities(&[], 1e-9), Vec::<usize>::new());
}

#[test]
fn fourier_period_is_at_most_four() {
    for n in 1..=64 {
        let u = quantize_s(n);
        let eig = eig_unitary(&u).unwrap();
        let p = quantum_period(&u, &eig, 8).unwrap();
        assert!(p.period <= 4, "N={n}");
    }
}

#[test]
fn period_from_spectrum_matches_iteration() {
    let maps = [IntegerSymplecticMatrix::cat(), IntegerSymplecticMatrix::s(), IntegerSymplecticMatrix::sl2(3, 2, 1, 1).unwrap()];
    for g in &maps {
        for n in 1..=32 {
            let u = quantize(g, n, &conv()).unwrap().operator;
            let eig = eig_unitary(&u).unwrap();
            let cap = 2 * lifted_period(g, n, 10_000).unwrap();
            let a = quantum_period(&u, &eig, cap).unwrap();
            let b = quantum_period_by_iteration(&u, cap).unwrap();
            assert_eq!(a.period, b.period, "{g} N={n}");
            assert!((a.scalar_phase - b.scalar_phase).norm() <= 1e-8);
            assert_eq!(lifted_period(g, n, 10_000).unwrap() % a.period, 0, "{g} N={n}");
        }
    }
}

#[test]
fn weyl_sums_and_discrepancy() {
    assert!(weyl_sums(&[0.1, 0.2], 0).is_empty());
    let n = 12;
    let uniform: Vec<f64> = (0..n).map(|j| 2.0 * PI * j as f64 / n as f64).collect();
    let sums = weyl_sums(&uniform, n - 1);
    assert!(sums.iter().all(|s| *s <= 1e-12));
    let stats = equidistribution_from_phases(&IntegerSymplecticMatrix::cat(), &uniform, 3);
    assert!(stats.hyperbolic);
    assert!((stats.star_discrepancy - 1.0 / n as f64).abs() <= 1e-12);
}

#[test]
fn weyl_sums_are_trace_moduli() {
    let cat = IntegerSymplecticMatrix::cat();
    for n in [5, 16, 31] {
        let u = quantize(&cat, n, &conv()).unwrap().operator;
        let eig = eig_unitary(&u).unwrap();
        let sums = weyl_sums(&eig.phases, 1);
        assert!((sums[0] - u.trace().norm() / n as f64).abs() <= 1e-10);
    }
}

#[test]
fn matrix_elements_basic_facts() {
    let cat = IntegerSymplecticMatrix::cat();
    for n in [8, 16, 31] {
        let eig = eig_unitary(&quantize(&cat, n, &conv()).unwrap().operator).unwrap();
        let m = MatrixElements::new(&eig, [1, 0]).unwrap();
        assert!((m.parseval() - 1.0).abs() <= 1e-10);
        assert!(m.diagonal_variance() <= m.max_diagonal_sq() + 1e-15);
        // a window of width two around every gap covers the whole circle
        let all = m.offdiagonal_sum(0.0, 2.0).unwrap();
        assert!((all + m.diagonal_variance() - m.parseval()).abs() <= 1e-10, "N={n}");
        assert!(m.offdiagonal_sum(0.0, 0.0).is_err());
    }
    let eig = eig_unitary(&quantize_s(4)).unwrap();
    assert!(matches!(MatrixElements::new(&eig, [0, 0]), Err(Error::InvalidParameter(_))));
}

#[test]
fn variance_shrinks_for_cat_map() {
    let cat = IntegerSymplecticMatrix::cat();
    let v = |n| {
        let eig = eig_unitary(&quantize(&cat, n, &conv()).unwrap().operator).unwrap();
        MatrixElements::new(&eig, [1, 0]).unwrap().diagonal_variance()
    };
    assert!(v(128) < v(8));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn parseval_holds(g in words(), n in 1u64..24, a in -5i64..5, b in 1i64..5) {
        let eig = eig_unitary(&quantize(&g, n, &conv()).unwrap().operator).unwrap();
        let m = MatrixElements::new(&eig, [a, b]).unwrap();
        prop_assert!((m.parseval() - 1.0).abs() <= 1e-10);
    }
}
