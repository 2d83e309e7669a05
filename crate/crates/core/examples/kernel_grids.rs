//! Grid scans of the two scalar inequalities behind the bounds.
//!
//! `cargo run --release --example kernel_grids`

use monogamy::bounds::{lemma1_gap, lemma2_gap};
use monogamy::harness::{lemma_grid, LemmaGrid};

fn main() -> monogamy::Result<()> {
    for which in [1u8, 2] {
        let s = lemma_grid(which, &LemmaGrid::default_for(which)?)?;
        println!(
            "inequality {which}: {} points, min gap {:.3e} at {:?}",
            s.samples_total,
            s.worst_slack.unwrap(),
            s.worst_location
        );
    }

    // The gap closes at t = k and opens as t grows.
    for t in [1.5, 2.0, 4.0, 8.0] {
        println!(
            "k = 1.5, x = 0.3: t = {t}: gap1 = {:.6}, gap2 (q = 0.5, x = 2) = {:.6}",
            lemma1_gap(t, 1.5, 0.7, 0.3)?,
            lemma2_gap(t, 1.5, 0.5, 2.0)?
        );
    }
    Ok(())
}
