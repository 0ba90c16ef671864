use std::collections::HashSet;

use catmap::symplectic::{Generator, Word};
use catmap::{
    arithmetic_period, coset_representatives, generator_decomposition, is_integer_symplectic, theta_group_member,
    IntMatrix, IntegerSymplecticMatrix,
};
use proptest::prelude::*;

fn letter() -> impl Strategy<Value = Generator> {
    prop_oneof![Just(Generator::S), Just(Generator::SInv), Just(Generator::T), Just(Generator::TInv)]
}

fn sl2() -> impl Strategy<Value = IntegerSymplecticMatrix> {
    proptest::collection::vec(letter(), 0..12).prop_map(|w| Word(w).product().unwrap())
}

fn mod_n(g: &IntegerSymplecticMatrix, n: i64) -> [i64; 4] {
    let (a, b, c, d) = g.entries().unwrap();
    [a.rem_euclid(n), b.rem_euclid(n), c.rem_euclid(n), d.rem_euclid(n)]
}

/// `2x2` integer product reduced mod `n`.
fn mul_mod(x: [i64; 4], y: [i64; 4], n: i64) -> [i64; 4] {
    [
        (x[0] * y[0] + x[1] * y[2]).rem_euclid(n),
        (x[0] * y[1] + x[1] * y[3]).rem_euclid(n),
        (x[2] * y[0] + x[3] * y[2]).rem_euclid(n),
        (x[2] * y[1] + x[3] * y[3]).rem_euclid(n),
    ]
}

fn brute_force_period(g: &IntegerSymplecticMatrix, n: i64) -> u64 {
    let base = mod_n(g, n);
    let one = [1 % n, 0, 0, 1 % n];
    let mut p = base;
    let mut k = 1;
    while p != one {
        p = mul_mod(p, base, n);
        k += 1;
    }
    k
}

#[test]
fn symplectic_examples() {
    let id = IntMatrix::identity(2);
    assert!(is_integer_symplectic(&id).unwrap());
    let cat = IntMatrix::from_row_major(2, vec![2, 1, 1, 1]).unwrap();
    assert!(is_integer_symplectic(&cat).unwrap());
    let singular = IntMatrix::from_row_major(2, vec![1, 1, 1, 1]).unwrap();
    assert!(!is_integer_symplectic(&singular).unwrap());
    assert!(IntegerSymplecticMatrix::sl2(1, 1, 1, 1).is_err());
}

#[test]
fn theta_group_examples() {
    let s = IntegerSymplecticMatrix::s();
    let cat = IntegerSymplecticMatrix::cat();
    assert!(theta_group_member(&s, 3));
    assert!(theta_group_member(&cat, 2));
    assert!(!theta_group_member(&cat, 3));
    assert!(!theta_group_member(&IntegerSymplecticMatrix::t(), 3));
    assert!(theta_group_member(&IntegerSymplecticMatrix::t(), 4));
}

#[test]
fn coset_examples() {
    let cat = IntegerSymplecticMatrix::cat();
    let cs = coset_representatives(&cat.minus_identity().unwrap()).unwrap();
    assert_eq!(cs.index, 1);
    assert_eq!(cs.representatives, vec![vec![0, 0]]);

    let s = IntegerSymplecticMatrix::s();
    let cs = coset_representatives(&s.minus_identity().unwrap()).unwrap();
    assert_eq!(cs.index, 2);

    assert!(coset_representatives(&IntMatrix::zeros(2)).is_err());
}

/// Two vectors are congruent mod `M Z^2` iff `adj(M) (v - w) = 0 mod det`.
fn congruent(m: &IntMatrix, v: &[i64], w: &[i64]) -> bool {
    let (a, b, c, d) = (m.get(0, 0), m.get(0, 1), m.get(1, 0), m.get(1, 1));
    let det = (a * d - b * c).abs();
    let (x, y) = (v[0] - w[0], v[1] - w[1]);
    (d * x - b * y).rem_euclid(det) == 0 && (-c * x + a * y).rem_euclid(det) == 0
}

#[test]
fn cosets_match_box_enumeration() {
    let mut checked = 0;
    for a in -5i64..=5 {
        for b in -5i64..=5 {
            for c in -5i64..=5 {
                for d in -5i64..=5 {
                    let det = (a * d - b * c).abs();
                    if det == 0 || det > 64 {
                        continue;
                    }
                    let m = IntMatrix::from_row_major(2, vec![a, b, c, d]).unwrap();
                    let cs = coset_representatives(&m).unwrap();
                    assert_eq!(cs.index, det as u64);
                    assert_eq!(cs.representatives.len() as i64, det);
                    for (i, v) in cs.representatives.iter().enumerate() {
                        for w in &cs.representatives[i + 1..] {
                            assert!(!congruent(&m, v, w), "{m} {v:?} {w:?}");
                        }
                    }
                    // every box point lands on exactly one representative
                    let mut hit = HashSet::new();
                    for x in 0..det {
                        for y in 0..det {
                            let r: Vec<&Vec<i64>> =
                                cs.representatives.iter().filter(|rep| congruent(&m, &[x, y], rep)).collect();
                            assert_eq!(r.len(), 1);
                            hit.insert(r[0].clone());
                            assert_eq!(&cs.reduce(&[x as i128, y as i128]), r[0]);
                        }
                    }
                    assert_eq!(hit.len() as i64, det);
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 1000);
}

#[test]
fn four_dimensional_cosets() {
    let m = IntMatrix::from_rows(vec![vec![2, 1, 0, 0], vec![0, 3, 0, 1], vec![1, 0, 2, 0], vec![0, 0, 1, 1]]).unwrap();
    let det = m.det();
    let cs = coset_representatives(&m).unwrap();
    assert_eq!(num_bigint::BigInt::from(cs.index), det.magnitude().clone().into());
    let reps: HashSet<Vec<i64>> = cs.representatives.iter().cloned().collect();
    assert_eq!(reps.len() as u64, cs.index);
}

#[test]
fn period_examples() {
    assert_eq!(arithmetic_period(&IntegerSymplecticMatrix::identity(1), 7, 100).unwrap(), 1);
    assert_eq!(arithmetic_period(&IntegerSymplecticMatrix::s(), 2, 100).unwrap(), 2);
    let cat = IntegerSymplecticMatrix::cat();
    assert_eq!(arithmetic_period(&cat, 5, 1000).unwrap(), brute_force_period(&cat, 5));
    assert!(arithmetic_period(&cat, 1_000_003, 3).is_err());
}

#[test]
fn period_matches_iteration() {
    for g in [IntegerSymplecticMatrix::cat(), IntegerSymplecticMatrix::s(), IntegerSymplecticMatrix::sl2(7, 4, 5, 3).unwrap()] {
        for n in 1..=32u64 {
            assert_eq!(arithmetic_period(&g, n, 1_000_000).unwrap(), brute_force_period(&g, n as i64), "{g} N={n}");
        }
    }
}

#[test]
fn decomposition_examples() {
    assert_eq!(generator_decomposition(&IntegerSymplecticMatrix::s()).unwrap().letters(), &[Generator::S]);
    assert_eq!(generator_decomposition(&IntegerSymplecticMatrix::t()).unwrap().letters(), &[Generator::T]);
    let cat = IntegerSymplecticMatrix::cat();
    assert_eq!(generator_decomposition(&cat).unwrap().product().unwrap(), cat);
    assert!(generator_decomposition(&IntegerSymplecticMatrix::identity(1)).unwrap().product().unwrap()
        == IntegerSymplecticMatrix::identity(1));
}

proptest! {
    #[test]
    fn inverse_and_products_stay_symplectic(g in sl2(), h in sl2()) {
        prop_assert!(is_integer_symplectic(g.inverse().matrix()).unwrap());
        let gh = g.compose(&h).unwrap();
        prop_assert!(is_integer_symplectic(gh.matrix()).unwrap());
        prop_assert_eq!(g.compose(&g.inverse()).unwrap(), IntegerSymplecticMatrix::identity(1));
    }

    #[test]
    fn words_round_trip(letters in proptest::collection::vec(letter(), 0..=20)) {
        let g = Word(letters).product().unwrap();
        let w = generator_decomposition(&g).unwrap();
        prop_assert_eq!(w.product().unwrap(), g);
    }

    #[test]
    fn period_is_minimal(g in sl2(), n in 1u64..40) {
        let p = arithmetic_period(&g, n, 1_000_000).unwrap();
        let base = mod_n(&g, n as i64);
        let one = [1 % n as i64, 0, 0, 1 % n as i64];
        let mut power = base;
        for k in 1..p {
            prop_assert_ne!(power, one, "smaller period {}", k);
            power = mul_mod(power, base, n as i64);
        }
        prop_assert_eq!(power, one);
    }

    #[test]
    fn json_round_trip(g in sl2()) {
        let text = serde_json::to_string(&g).unwrap();
        let back: IntegerSymplecticMatrix = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, g);
    }
}
