//! Monte Carlo check of the monogamy inequalities on Haar-random three-qubit states.
//!
//! `cargo run --release --example haar_monogamy -- [samples] [seed]`

use monogamy::bounds::BoundParams;
use monogamy::harness::{verify_monogamy, VerifyOptions};

fn main() -> monogamy::Result<()> {
    let mut args = std::env::args().skip(1);
    let samples = args.next().and_then(|s| s.parse().ok()).unwrap_or(2000);
    let seed = args.next().and_then(|s| s.parse().ok()).unwrap_or(1);

    let params = BoundParams::monogamy(std::f64::consts::SQRT_2, 0.5, 1.0, 2.0);
    let run = verify_monogamy(&VerifyOptions::new(samples, seed), &params, 3)?;
    println!("{}", run.summary.to_json_pretty());

    let tightest = run
        .records
        .iter()
        .filter(|r| r.slack.is_some())
        .min_by(|a, b| a.slack.unwrap().total_cmp(&b.slack.unwrap()))
        .unwrap();
    println!("tightest sample: {tightest:?}");
    Ok(())
}
