//! The full pipeline behind the `report` subcommand, plus a small sweep.

use elliquot::report::SigmaSource;
use elliquot::{batch_sweep, run, Mode, RunConfig};

fn main() -> elliquot::Result<()> {
    let mut config = RunConfig::new(Mode::Report, SigmaSource::Pair { n: 12, k: 5 });
    config.samples = 5;
    let report = run(&config)?;
    println!(
        "{}",
        serde_json::to_string_pretty(&report.to_json()).expect("serializable")
    );

    for row in batch_sweep(8)? {
        let d = &row.descriptor;
        println!(
            "{:>2}/{:<2} {:?} -> {} over E^{}, |G| = {}",
            row.n, row.k, row.entries, d.cover_domain, d.base_dim, d.galois_order
        );
    }
    Ok(())
}
