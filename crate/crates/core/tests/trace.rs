use std::f64::consts::PI;

use catmap::cli::standard_test_matrices;
use catmap::trace::{calibrate_trace_phase, TraceFormula};
use catmap::{gauss_sum, quantize, quantize_s, trace_compare, trace_theorem_e, Conventions, Error, IntegerSymplecticMatrix};
use num_complex::Complex64;

fn conv() -> Conventions {
    Conventions::default()
}

#[test]
fn gauss_sum_identity() {
    let two = gauss_sum(2);
    assert!(two.direct.norm() < 1e-15 && two.closed_form.norm() < 1e-15);
    for n in 1..=256 {
        let g = gauss_sum(n);
        assert!((g.direct - g.closed_form).norm() <= 1e-12, "N={n}");
    }
}

#[test]
fn fourier_trace_is_conjugate_gauss_sum() {
    for n in 1..=64 {
        let t = quantize_s(n).trace();
        assert!((t - gauss_sum(n).direct.conj()).norm() <= 1e-10, "N={n}");
    }
}

#[test]
fn fourier_phase_is_constant() {
    let c = calibrate_trace_phase(&conv()).unwrap();
    assert!((c - Complex64::from_polar(1.0, PI / 4.0)).norm() < 1e-12);
    for n in 1..=16 {
        let r = trace_compare(&IntegerSymplecticMatrix::s(), n, &conv()).unwrap();
        assert!(r.magnitude_error <= 1e-10);
        if let Some(p) = r.phase_discrepancy {
            assert!((p - c).norm() <= 1e-10, "N={n}");
        }
    }
}

#[test]
fn cat_map_trace_has_unit_modulus() {
    let cat = IntegerSymplecticMatrix::cat();
    for n in [2, 4, 8] {
        assert!(trace_compare(&cat, n, &conv()).unwrap().magnitude_error <= 1e-8);
    }
    for n in 1..=128 {
        let q = quantize(&cat, n, &conv()).unwrap();
        assert!((q.operator.trace().norm() - 1.0).abs() <= 1e-10, "N={n}");
    }
}

#[test]
fn degenerate_maps_are_rejected() {
    assert!(matches!(trace_theorem_e(&IntegerSymplecticMatrix::identity(1), 3), Err(Error::Degenerate(_))));
    assert!(matches!(trace_theorem_e(&IntegerSymplecticMatrix::t(), 3), Err(Error::Degenerate(_))));
}

#[test]
fn magnitude_agrees_and_bound_holds_on_grid() {
    for g in standard_test_matrices() {
        let Ok(formula) = TraceFormula::new(&g) else { continue };
        let bound = (formula.determinant().abs() as f64).sqrt();
        for n in 1..=64 {
            let value = formula.evaluate(n);
            assert!(value.norm() <= bound + 1e-10);
            let direct = quantize(&g, n, &conv()).unwrap().operator.trace();
            assert!((value.norm() - direct.norm()).abs() <= 1e-8, "{g} N={n}");
        }
    }
}

#[test]
fn phase_ratio_is_constant_on_theta_points() {
    for g in standard_test_matrices() {
        let Ok(formula) = TraceFormula::new(&g) else { continue };
        let mut first: Option<Complex64> = None;
        for n in 1..=64 {
            if !catmap::theta_group_member(&g, n) {
                continue;
            }
            let direct = quantize(&g, n, &conv()).unwrap().operator.trace();
            let value = formula.evaluate(n);
            if direct.norm() < 1e-9 || value.norm() < 1e-9 {
                continue;
            }
            let r = value / direct;
            let r = r / r.norm();
            match first {
                None => first = Some(r),
                Some(f) => assert!((r - f).norm() <= 1e-8, "{g} N={n}"),
            }
        }
    }
}

/// Shifting a representative by `(g - I) w` leaves the summand unchanged
/// for even `N`.
#[test]
fn summand_is_a_coset_function_for_even_moduli() {
    let shifts: Vec<[i64; 2]> = vec![[1, 0], [0, 1], [1, 1], [-2, 3]];
    for g in standard_test_matrices() {
        let Ok(formula) = TraceFormula::new(&g) else { continue };
        let m = g.minus_identity().unwrap();
        for n in (2..=32).step_by(2) {
            for v in &formula.cosets().representatives {
                let base = formula.summand(n, v);
                for w in &shifts {
                    let d = m.apply(w);
                    let shifted = [v[0] + d[0] as i64, v[1] + d[1] as i64];
                    assert!((formula.summand(n, &shifted) - base).norm() <= 1e-10, "{g} N={n} v={v:?} w={w:?}");
                }
            }
        }
    }
}

#[test]
fn exponent_is_exact_rational_mod_two() {
    let f = TraceFormula::new(&IntegerSymplecticMatrix::sl2(7, 4, 5, 3).unwrap()).unwrap();
    for n in 1..20 {
        for v in &f.cosets().representatives {
            let e = f.exponent(n, v);
            assert!(e >= num_rational::BigRational::from_integer(0.into()));
            assert!(e < num_rational::BigRational::from_integer(2.into()));
        }
    }
}
