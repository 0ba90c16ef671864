//! Eigenfunction matrix elements of a Weyl observable for the cat map.
use catmap::spectral::MatrixElements;
use catmap::{eig_unitary, quantize, Conventions, IntegerSymplecticMatrix};

fn main() -> catmap::Result<()> {
    let conv = Conventions::default();
    let cat = IntegerSymplecticMatrix::cat();
    println!("{:>5} {:>12} {:>12} {:>12}", "N", "diagonal", "offdiag", "parseval");
    for n in [8, 16, 32, 64, 128] {
        let eig = eig_unitary(&quantize(&cat, n, &conv)?.operator)?;
        let m = MatrixElements::new(&eig, [1, 0])?;
        let window = 2.0 * std::f64::consts::PI / n as f64;
        println!("{n:>5} {:>12.6} {:>12.6} {:>12.2e}", m.diagonal_variance(), m.offdiagonal_sum(0.0, window)?, m.parseval() - 1.0);
    }
    Ok(())
}
