//! The r^2-sheeted map Φ: Sym^r_0 E × E → Sym^r E, (x, z) ↦ x + z.

use elliquot::covers::{phi_fiber_scan, xi_orbit};
use elliquot::{SymPoint, TorusPoint};

fn main() -> elliquot::Result<()> {
    let w = SymPoint::new(vec![
        TorusPoint::from_fracs(1, 3, 0, 1),
        TorusPoint::from_fracs(1, 6, 1, 2),
        TorusPoint::from_fracs(0, 1, 2, 3),
    ]);
    let fiber = phi_fiber_scan(&w, 18)?;
    println!("fiber of Φ over {w}: {} points", fiber.len());
    for (x, z) in fiber.iter().take(4) {
        println!("  x = {x}, z = {z}");
    }
    let (x0, z0) = &fiber[0];
    let orbit = xi_orbit(x0, *z0)?;
    println!("E[3]-orbit of the first point has {} elements", orbit.len());
    Ok(())
}
