//! Rectangular partial sums: decay of `(T_n - T_m) f` against `grad f`, and
//! the `n`-uniform `L^q` bound of `T_n`.
//!
//! `cargo run --example partial_sums`

use snse::diagnostics::{decay_corpus, operator_decay_study, uniform_bound_study, uniform_corpus};
use snse::fourier::Grid;

fn main() -> snse::Result<()> {
    let grid = Grid::new(1, 512)?;
    let ladder = [4, 8, 16, 32, 64];
    for q in [2.0, 4.0] {
        let s = operator_decay_study(q, &ladder, &decay_corpus(grid, q, 0.5, 10, 3))?;
        println!("q={q}: measured decay exponent {:.3}, guaranteed {:.3}", s.measured_alpha, s.predicted_alpha);
        for p in &s.pairs {
            println!("  (m, n) = ({:>2}, {:>2})  sup ratio {:.4e}", p.m, p.n, p.sup_ratio);
        }
    }
    let corpus = uniform_corpus(grid, 100, 4);
    for q in [2.0, 4.0] {
        let s = uniform_bound_study(q, &ladder, &corpus)?;
        println!("q={q}: max |T_n f|/|f| per n {:?}, variation {:.3}", s.max_ratio, s.variation);
    }
    Ok(())
}
