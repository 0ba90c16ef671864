//! Quantum periods of U_{g,N} against the order of g mod N.
use catmap::spectral::{period_relation, quantum_period};
use catmap::{arithmetic_period, eig_unitary, lifted_period, quantize, Conventions, IntegerSymplecticMatrix};

fn main() -> catmap::Result<()> {
    let conv = Conventions::default();
    let cat = IntegerSymplecticMatrix::cat();
    for n in 1..=12 {
        let u = quantize(&cat, n, &conv)?.operator;
        let eig = eig_unitary(&u)?;
        let arithmetic = arithmetic_period(&cat, n, 10_000)?;
        let lifted = lifted_period(&cat, n, 10_000)?;
        match quantum_period(&u, &eig, 2 * lifted) {
            Some(p) => println!(
                "N={n:>2}: quantum {:>3} arithmetic {arithmetic:>3} lifted {lifted:>3} {:?}",
                p.period,
                period_relation(p.period, arithmetic)
            ),
            None => println!("N={n:>2}: no period below {}", 2 * lifted),
        }
    }
    Ok(())
}
