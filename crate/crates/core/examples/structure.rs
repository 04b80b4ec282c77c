//! Bundle structure and Galois group for a few choices of Σ.

use elliquot::{describe, theta_kernel_structure, SigmaSubgroup};

fn main() -> elliquot::Result<()> {
    let cases = [
        ("(7,3)", elliquot::hj_expand(7, 3)?.sigma()),
        ("blocks 2,4", SigmaSubgroup::from_block_sizes(&[2, 4], 0)?),
        ("blocks 3,3 + fixed", SigmaSubgroup::from_block_sizes(&[3, 3], 1)?),
        ("full Σ_4", SigmaSubgroup::full(4)?),
    ];
    for (name, sigma) in cases {
        let d = describe(&sigma.orbit_decomposition())?;
        println!(
            "{name:<20} g={} J={:?} sizes={:?}  {} over E^{}  Galois {} (order {})",
            d.g, d.fixed, d.sizes, d.cover_domain, d.base_dim, d.galois, d.galois_order
        );
    }

    let k = theta_kernel_structure(&[2, 4])?;
    println!("ker Θ for sizes (2,4): d = {}, {} components", k.d, k.component_count);
    Ok(())
}
