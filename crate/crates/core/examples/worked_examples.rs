//! Monogamy and polygamy worked examples over their parameter grids.
//!
//! `cargo run --release --example worked_examples -- [out_dir]`

use std::path::PathBuf;

use monogamy::harness::{
    example1_state, example1_table, example2_state, example2_table, tripartite_concurrences,
    SweepConfig,
};

fn main() -> monogamy::Result<()> {
    let dir = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(std::env::temp_dir);

    let (joint, c12, c13) = tripartite_concurrences(&example1_state())?;
    println!("example 1: C(A|BC) = {joint:.6}, C(AB) = {c12:.6}, C(AC) = {c13:.6}");
    let cfg = SweepConfig::example1_default();
    let run = example1_table(&cfg.exponent_grid, &cfg.r_grid)?;
    let worst = run.rows.iter().min_by(|a, b| a.zprime.total_cmp(&b.zprime)).unwrap();
    println!(
        "  {} points, min z1 - z2 = {:.3e} at alpha = {}, r = {}",
        run.rows.len(),
        worst.zprime,
        worst.exponent,
        worst.power
    );
    run.write_csv(&dir.join("example1.csv"))?;

    let (joint, c12, c13) = tripartite_concurrences(&example2_state())?;
    println!("example 2: C(A|BC) = {joint:.6}, C(AB) = {c12:.6}, C(AC) = {c13:.6}");
    let cfg = SweepConfig::example2_default();
    let run = example2_table(&cfg.exponent_grid, &cfg.r_grid)?;
    let above = run.rows.iter().filter(|r| r.lhs > r.z1).count();
    let behind = run.rows.iter().filter(|r| r.zprime < 0.0).count();
    println!("  {} points, lhs above z1 at {above}, z1 above the comparator at {behind}", run.rows.len());
    run.write_csv(&dir.join("example2.csv"))?;

    println!("CSV written to {}", dir.display());
    Ok(())
}
