//! Fibers of the étale cover over random torsion points, compared with
//! deck-group orbits.

use elliquot::{verify_cover, OrbitData};

fn main() -> elliquot::Result<()> {
    let configs = [
        ("(7,3)", elliquot::hj_expand(7, 3)?.sigma().orbit_decomposition()),
        ("blocks 2,4", OrbitData::from_block_sizes(&[2, 4], 0)?),
        ("blocks 2,3", OrbitData::from_block_sizes(&[2, 3], 0)?),
    ];
    for (name, od) in configs {
        let report = verify_cover(&od, 2, 10, 1)?;
        let sizes: Vec<usize> = report.checks.iter().map(|c| c.fiber_size).collect();
        println!(
            "{name}: Galois {} (from fibers: {})",
            report.galois, report.galois_from_fibers
        );
        println!("  fiber sizes {sizes:?}, all free orbits: {}", report.pass);
    }
    Ok(())
}
