//! Cosets of (g - I) Z^2, generator words and periods mod N.
use catmap::{arithmetic_period, coset_representatives, generator_decomposition, lifted_period, IntegerSymplecticMatrix};

fn main() -> catmap::Result<()> {
    let g = IntegerSymplecticMatrix::sl2(7, 4, 5, 3)?;
    let cosets = coset_representatives(&g.minus_identity()?)?;
    println!("g = {g}");
    println!("index {} representatives {:?}", cosets.index, cosets.representatives);

    let word = generator_decomposition(&g)?;
    println!("word {word} ({} letters), multiplies back: {}", word.letters().len(), word.product()? == g);

    for n in [2, 3, 4, 5, 8, 10] {
        println!("N={n:>2}: order mod N {:>3}, lifted order {:>3}", arithmetic_period(&g, n, 10_000)?, lifted_period(&g, n, 10_000)?);
    }
    Ok(())
}
