//! Negative continued fraction of n/k, the word in S and T, and the
//! transpositions it selects.
//!
//!     cargo run --example decompose -- 17 5

use elliquot::hj_expand;

fn main() -> elliquot::Result<()> {
    let args: Vec<i64> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let (n, k) = match args[..] {
        [n, k] => (n, k),
        _ => (7, 3),
    };
    let e = hj_expand(n, k)?;
    let fraction: Vec<String> = e.entries.iter().map(|x| x.to_string()).collect();
    println!("{n}/{k} = [[{}]]", fraction.join(", "));

    let m = e.word();
    println!("word matrix [[{}, {}], [{}, {}]], det {}", m.a, m.b, m.c, m.d, m.det());
    println!("word applied to 0/1 gives {:?}", elliquot::verify_word(&e)?);

    let sigma = e.sigma();
    let gens: Vec<String> = sigma.generators.iter().map(|i| format!("({i} {})", i + 1)).collect();
    println!(
        "Σ ⊆ Σ_{} generated by {}",
        sigma.g_plus_1,
        if gens.is_empty() {
            "nothing".into()
        } else {
            gens.join(" ")
        }
    );
    println!("line bundle on E^{}: {}", e.g, e.line_bundle_recipe());
    Ok(())
}
