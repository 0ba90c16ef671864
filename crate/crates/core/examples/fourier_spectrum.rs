//! Eigenvalues of the discrete Fourier transform F(N).
use std::f64::consts::PI;

use catmap::spectral::multiplicities;
use catmap::{eig_unitary, quantize_s};

fn main() -> catmap::Result<()> {
    for n in [4, 5, 6, 7, 16] {
        let eig = eig_unitary(&quantize_s(n))?;
        let quarter: Vec<i64> = eig.phases.iter().map(|t| (t / (PI / 2.0)).round() as i64).collect();
        let counts: Vec<usize> = (0..4).map(|k| quarter.iter().filter(|&&q| q.rem_euclid(4) == k).count()).collect();
        println!(
            "N={n:>2}: counts for 1, i, -1, -i = {counts:?}, clusters {:?}, residual {:.1e}",
            multiplicities(&eig.phases, 1e-8),
            eig.max_residual
        );
    }
    Ok(())
}
