//! Projection, truncation, Riesz and Bessel identities on random fields,
//! and the cancellation of the convective term.
//!
//! `cargo run --example operator_identities`

use snse::diagnostics::{cancellation_check, identity_checks, IdentityParams};

fn main() -> snse::Result<()> {
    let params = IdentityParams { dims: vec![1, 2, 3], fields_per_dim: 10, seed: 1, tolerance: 1e-10 };
    for c in identity_checks(&params)? {
        println!("d={} {:<40} max relative error {:.2e}", c.dim, c.identity, c.max_relative_error);
    }
    let c = cancellation_check(3, 8, 5, 2)?;
    println!("|<u, (v.grad)u>| / (|u|^2 |grad v|) <= {:.2e} over {} pairs", c.max_ratio, c.pairs);
    Ok(())
}
