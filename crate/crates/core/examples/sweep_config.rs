//! Config-driven sweep of a pair bound over named or random states.
//!
//! `cargo run --release --example sweep_config`

use monogamy::harness::{sweep, SweepConfig};

const CONFIG: &str = r#"{
    "family": "concurrence_polygamy",
    "exponent_grid": [-1.0, 0.0, 0.25],
    "s_grid": [2.0, 4.0, 1.0],
    "q": 0.5,
    "k": 1.0,
    "source": {"random": {"seed": 3, "count": 4}}
}"#;

fn main() -> monogamy::Result<()> {
    let mut cfg = SweepConfig::from_json(CONFIG)?;
    cfg.out = Some(std::env::temp_dir().join("sweep.csv"));
    let run = sweep(&cfg, None)?;
    for row in run.rows.iter().filter(|r| r.exponent == -1.0) {
        println!(
            "state {} beta {:>5} s {}: lhs {:>9.5} bound {:>9.5} ref {:>9.5} {}",
            row.state,
            row.exponent,
            row.power,
            row.lhs.unwrap_or(f64::NAN),
            row.bound.unwrap_or(f64::NAN),
            row.comparator.unwrap_or(f64::NAN),
            row.branch
        );
    }
    println!("{}", run.summary.to_json_pretty());
    Ok(())
}
