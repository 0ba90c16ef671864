//! Quantize the Arnold cat map and compare the three construction paths.
use catmap::operator::phase_aligned_distance;
use catmap::{quantize_with, Construction, Conventions, IntegerSymplecticMatrix};

fn main() -> catmap::Result<()> {
    let conv = Conventions::default();
    let cat = IntegerSymplecticMatrix::cat();
    for n in [2, 3, 8, 17] {
        let word = quantize_with(&cat, n, &conv, Construction::GeneratorWord)?;
        let averaged = quantize_with(&cat, n, &conv, Construction::Intertwiner)?;
        let (_, gap) = phase_aligned_distance(word.matrix(), averaged.matrix());
        println!(
            "N={n:>2} theta_group={:<5} unitarity {:.1e} egorov {:.1e} word vs intertwiner {:.1e}",
            word.theta_group, word.unitarity_residual, word.egorov_residual, gap
        );
    }
    let q = quantize_with(&cat, 4, &conv, Construction::TransformationLaw)?;
    println!("Tr U at N=4 via the transformation law: {:.6}", q.operator.trace());
    Ok(())
}
