//! Weyl operators and the finite Heisenberg group.
use catmap::heisenberg::{commutator, projective_rep_check};
use catmap::{heisenberg_multiply, weyl_operator, HeisenbergElement};

fn main() -> catmap::Result<()> {
    let n = 5;
    let x = HeisenbergElement::new(n, vec![1], vec![0], 0)?;
    let y = HeisenbergElement::new(n, vec![0], vec![1], 0)?;
    let xy = heisenberg_multiply(&x, &y)?;
    println!("x*y phase exponent {} (mod {})", xy.phase_exponent, 2 * n);
    let k = commutator(&x, &y)?;
    println!("commutator phase {:.6}", k.phase());

    for n in [3, 4, 8] {
        let pairs = [([1, 0], [0, 1]), ([2, 3], [1, -1]), ([1, 1], [1, 1])];
        let w = weyl_operator(n, 1, 1);
        println!("N={n}: projective residual {:.2e}, unitarity {:.2e}", projective_rep_check(n, &pairs), w.unitarity_residual());
    }
    Ok(())
}
