//! Lifting a translation of E^g/Σ to the cover and checking the square commutes.

use elliquot::lift::random_datum;
use elliquot::parallel::sample_rng;
use elliquot::{verify_lift, OrbitData};

fn main() -> elliquot::Result<()> {
    for sizes in [vec![3, 2], vec![2, 4]] {
        let od = OrbitData::from_block_sizes(&sizes, 0)?;
        let t = random_datum(&od, 6, &mut sample_rng(3, 0));
        let report = verify_lift(&od, &t, 6, 50, 3)?;
        let show = |p: Option<elliquot::TorusPoint>| p.map_or("-".into(), |p| p.to_string());
        println!(
            "sizes {sizes:?}: t = {:?}",
            t.expand(&od)?.iter().map(|p| p.to_string()).collect::<Vec<_>>()
        );
        println!(
            "  q = {}, other choice {}, differ by a deck element: {:?}",
            show(report.q),
            show(report.alt_q),
            report.alt_q_differs_by_deck
        );
        println!("  {} points checked, pass = {}", report.checks.len(), report.pass);
    }
    Ok(())
}
