//! Exact arithmetic on E = (Q/Z)^2: orders, torsion subgroups, division.

use elliquot::{torsion_subgroup, TorusPoint};

fn main() -> elliquot::Result<()> {
    let p = TorusPoint::from_fracs(1, 6, 3, 4);
    let q: TorusPoint = "5/6,1/2".parse()?;
    println!("p = {p}, q = {q}");
    println!("p + q = {}, p - q = {}, 5p = {}", p + q, p - q, p.scalar_mul(5));
    println!("order of p = {}", p.order());

    println!("|E[6]| = {}", torsion_subgroup(6)?.len());

    // the r^2 points x with r x = p
    let roots = p.division_preimages(3)?;
    println!("{} points x with 3x = {p}:", roots.len());
    for x in &roots {
        assert_eq!(x.scalar_mul(3), p);
        println!("  {x}");
    }
    Ok(())
}
