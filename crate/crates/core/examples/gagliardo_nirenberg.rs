//! The ratio `|f|_{3p}^p / |grad(|f|^{p/2})|_2^2` over band-limited fields,
//! its scale invariance and its stability under grid refinement.
//!
//! `cargo run --example gagliardo_nirenberg`

use snse::diagnostics::gn_study;

fn main() -> snse::Result<()> {
    for dim in [2, 3] {
        let s = gn_study(dim, 4.0, 2, 20, 32, 5)?;
        println!(
            "d={dim}: max ratio {:.5e} (N={}) vs {:.5e} (N={}); scale defect {:.1e}",
            s.max_ratio_coarse, s.coarse_points, s.max_ratio_fine, s.fine_points, s.scale_defect
        );
    }
    Ok(())
}
