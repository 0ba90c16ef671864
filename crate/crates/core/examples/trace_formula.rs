//! Fixed-point trace formula against direct traces.
use catmap::trace::calibrate_trace_phase;
use catmap::{gauss_sum, trace_compare, Conventions, IntegerSymplecticMatrix};

fn main() -> catmap::Result<()> {
    let conv = Conventions::default();
    for n in [1, 2, 3, 4, 5] {
        let s = gauss_sum(n);
        println!("Gauss sum N={n}: {:.6} vs {:.6}", s.direct, s.closed_form);
    }
    let c = calibrate_trace_phase(&conv)?;
    println!("reference phase {c:.6}");
    let g = IntegerSymplecticMatrix::sl2(3, 2, 1, 1)?;
    for n in 2..=8 {
        let r = trace_compare(&g, n, &conv)?;
        let ratio = r.phase_discrepancy.map(|p| format!("{:.6}", p / c)).unwrap_or_else(|| "-".into());
        println!("N={n}: |formula| {:.6} |direct| {:.6} ratio/ref {ratio}", r.formula_value.norm(), r.direct_value.norm());
    }
    Ok(())
}
