use std::f64::consts::PI;

use catmap::heisenberg::{commutator, projective_rep_check, weyl_cocycle};
use catmap::{heisenberg_multiply, splitting_phase, weyl_operator, CMatrix, HeisenbergElement, WeylOperator};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use proptest::prelude::*;

fn unit(theta: f64) -> Complex64 {
    Complex64::from_polar(1.0, theta)
}

fn scalar_deviation(m: &CMatrix) -> f64 {
    let c = m[(0, 0)];
    let n = m.nrows();
    (m - CMatrix::identity(n, n) * c).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

#[test]
fn central_and_cocycle_examples() {
    let n = 7;
    let z = HeisenbergElement::new(n, vec![0], vec![0], 2).unwrap();
    let z2 = HeisenbergElement::new(n, vec![0], vec![0], 4).unwrap();
    assert_eq!(heisenberg_multiply(&z, &z2).unwrap(), HeisenbergElement::new(n, vec![0], vec![0], 6).unwrap());

    let x = HeisenbergElement::new(n, vec![1], vec![0], 0).unwrap();
    let y = HeisenbergElement::new(n, vec![0], vec![1], 0).unwrap();
    let xy = heisenberg_multiply(&x, &y).unwrap();
    // sigma((1,0),(0,1)) = <0,0> - <1,1> = -1
    assert!((xy.phase() - unit(-2.0 * PI / n as f64)).norm() < 1e-14);
    let k = commutator(&x, &y).unwrap();
    assert_eq!((k.a.clone(), k.b.clone()), (vec![0], vec![0]));
    assert!((k.phase() - unit(-4.0 * PI / n as f64)).norm() < 1e-14);
}

#[test]
fn splitting_examples() {
    assert!((splitting_phase(&[0, 0]) - Complex64::new(1.0, 0.0)).norm() < 1e-15);
    assert!((splitting_phase(&[2, 3]) - Complex64::new(1.0, 0.0)).norm() < 1e-15);
    assert!((splitting_phase(&[1, 1]) - Complex64::new(-1.0, 0.0)).norm() < 1e-15);
}

#[test]
fn associativity_is_exhaustive_for_small_moduli() {
    for n in 1..=5u64 {
        let step = if n % 2 == 0 { 2 } else { 1 };
        let els: Vec<HeisenbergElement> = (0..n as i64)
            .flat_map(|a| (0..n as i64).map(move |b| (a, b)))
            .flat_map(|(a, b)| (0..2 * n as i64).step_by(step).map(move |j| (a, b, j)))
            .map(|(a, b, j)| HeisenbergElement::new(n, vec![a], vec![b], j).unwrap())
            .collect();
        for x in &els {
            for y in &els {
                let xy = heisenberg_multiply(x, y).unwrap();
                for z in &els {
                    let l = heisenberg_multiply(&xy, z).unwrap();
                    let r = heisenberg_multiply(x, &heisenberg_multiply(y, z).unwrap()).unwrap();
                    assert_eq!(l, r);
                }
            }
        }
    }
}

#[test]
fn weyl_examples_and_unitarity() {
    assert_eq!(weyl_operator(5, 0, 0).matrix(), &CMatrix::identity(5, 5));
    for n in 1..=24u64 {
        for a in -3..=3 {
            for b in -3..=3 {
                assert!(weyl_operator(n, a, b).unitarity_residual() <= 1e-12);
            }
        }
    }
    assert!(projective_rep_check(1, &[([1, 2], [3, 4])]) == 0.0);
    assert!(projective_rep_check(6, &[([0, 0], [0, 0])]) == 0.0);
}

#[test]
fn basis_translations_at_four() {
    let basis: Vec<[i64; 2]> = vec![[0, 0], [1, 0], [0, 1], [1, 1]];
    let pairs: Vec<_> = basis.iter().flat_map(|&v| basis.iter().map(move |&w| (v, w))).collect();
    assert_eq!(pairs.len(), 16);
    assert!(projective_rep_check(4, &pairs) <= 1e-12);
}

#[test]
fn nth_power_is_scalar() {
    for n in 1..=64u64 {
        for (a, b) in [(1, 0), (0, 1), (1, 1), (2, 3), (n as i64 - 1, 5)] {
            let w = weyl_operator(n, a, b);
            let mut p = CMatrix::identity(n as usize, n as usize);
            for _ in 0..n {
                p = catmap::operator::mul(&p, w.matrix());
            }
            assert!(scalar_deviation(&p) <= 1e-10, "N={n} ({a},{b})");
        }
    }
}

/// Dimension of the commutant of the two clock/shift generators, from the
/// null space of the linear map `X -> (UX - XU, VX - XV)`.
fn commutant_dimension(n: usize) -> usize {
    let u = weyl_operator(n as u64, 1, 0).into_matrix();
    let v = weyl_operator(n as u64, 0, 1).into_matrix();
    let nn = n * n;
    let mut system = DMatrix::<Complex64>::zeros(2 * nn, nn);
    for k in 0..nn {
        let mut e = CMatrix::zeros(n, n);
        e[(k % n, k / n)] = Complex64::new(1.0, 0.0);
        let cu = &u * &e - &e * &u;
        let cv = &v * &e - &e * &v;
        for r in 0..nn {
            system[(r, k)] = cu[(r % n, r / n)];
            system[(nn + r, k)] = cv[(r % n, r / n)];
        }
    }
    let sv = system.svd(false, false).singular_values;
    sv.iter().filter(|&&s| s < 1e-9).count()
}

#[test]
fn generators_act_irreducibly() {
    for n in 1..=16 {
        assert_eq!(commutant_dimension(n), 1, "N={n}");
    }
}

#[test]
fn monomial_actions_match_dense() {
    let n = 9;
    let w = WeylOperator::new(n, 4, -2);
    let dense = w.to_matrix();
    let x = DVector::from_fn(n as usize, |i, _| Complex64::new(i as f64, 1.0 - i as f64 * 0.5));
    assert!((w.apply(&x) - &dense * &x).norm() < 1e-12);
    let m = CMatrix::from_fn(n as usize, n as usize, |i, j| Complex64::new((i + 2 * j) as f64, i as f64 - j as f64));
    assert!((w.left_mul(&m) - &dense * &m).norm() < 1e-10);
    assert!((w.right_mul(&m) - &m * &dense).norm() < 1e-10);
}

proptest! {
    #[test]
    fn weyl_products_follow_cocycle(n in 1u64..20, v in prop::array::uniform2(-30i64..30), w in prop::array::uniform2(-30i64..30)) {
        let lhs = weyl_operator(n, v[0], v[1]).matrix() * weyl_operator(n, w[0], w[1]).matrix();
        let rhs = weyl_operator(n, v[0] + w[0], v[1] + w[1]).into_matrix() * weyl_cocycle(n, v, w);
        prop_assert!((lhs - rhs).iter().map(|z| z.norm()).fold(0.0, f64::max) <= 1e-10);
    }

    #[test]
    fn inverse_cancels(n in 1u64..12, a in 0i64..12, b in 0i64..12, j in 0i64..24) {
        let j = if n % 2 == 0 { 2 * (j / 2) } else { j };
        let x = HeisenbergElement::new(n, vec![a], vec![b], j).unwrap();
        let e = heisenberg_multiply(&x, &x.inverse()).unwrap();
        prop_assert_eq!(e, HeisenbergElement::identity(n, 1));
    }
}
