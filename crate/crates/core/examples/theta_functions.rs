//! Theta functions: Gram matrices and the transformation law for S.
use catmap::operator::phase_aligned_distance;
use catmap::theta::{calibrate_gaussian_normalization, theta_gram, transformation_law_estimate, UpperHalfPlanePoint};
use catmap::{quantize_s, Conventions, IntegerSymplecticMatrix};
use num_complex::Complex64;

fn main() -> catmap::Result<()> {
    let kappa = calibrate_gaussian_normalization();
    println!("gaussian normalization {kappa:.12}");
    let tau = UpperHalfPlanePoint::new(Complex64::new(1.0, 2.0))?;
    let gram = theta_gram(tau, tau, 3, 128);
    println!("Gram diagonal at N=3: {:.8}", gram[(0, 0)]);

    let conv = Conventions::default();
    for n in 1..=4 {
        let est = transformation_law_estimate(&IntegerSymplecticMatrix::s(), n, UpperHalfPlanePoint::i(), 20, 1, &conv)?;
        let (_, d) = phase_aligned_distance(&est.normalized, quantize_s(n).matrix());
        println!("N={n}: fit residual {:.1e}, |nu| {:.6}, distance to F(N) {d:.1e}", est.residual, est.nu.map_or(0.0, |v| v.norm()));
    }
    Ok(())
}
