//! n-partite chained bounds and their branch classification.
//!
//! `cargo run --example chain_bounds`

use monogamy::bounds::{mono_chain_bound, mono_pair_bound, poly_chain_bound, BoundDomain, BoundParams};
use monogamy::Error;

fn main() -> monogamy::Result<()> {
    let params = BoundParams::monogamy(1.2, 0.5, 1.0, 2.0);

    // Three qubits: the chain with one tail is the pair bound.
    let pair = mono_pair_bound(0.3, 0.6, &params)?;
    let chain = mono_chain_bound(&[0.3, 0.6], &[0.6], &params)?;
    println!("pair {:.12} ({:?}), chain {:.12} ({:?})", pair.bound, pair.branch, chain.bound, chain.branch);

    // Four qubits: pairs C(A1A2), C(A1A3), C(A1A4) and tails C(A1|A3A4), C(A1|A4).
    let cases: [(&str, [f64; 3], [f64; 2]); 4] = [
        ("all tail-dominant", [0.1, 0.2, 0.5], [0.6, 0.5]),
        ("all pair-dominant", [0.6, 0.5, 0.1], [0.3, 0.1]),
        ("mixed", [0.1, 0.5, 0.1], [0.6, 0.1]),
        ("unsupported", [0.6, 0.1, 0.5], [0.3, 0.5]),
    ];
    for (name, pairs, tails) in cases {
        match mono_chain_bound(&pairs, &tails, &params) {
            Ok(rep) => {
                let rep = rep.against(0.9)?;
                println!("{name:>18}: {:?}, bound {:.6}, slack at C = 0.9: {:.6}", rep.branch, rep.bound, rep.slack.unwrap());
            }
            Err(e @ (Error::PatternUnsupported(_) | Error::NoBranch(_))) => println!("{name:>18}: {e}"),
            Err(e) => return Err(e),
        }
    }

    let poly = BoundParams::polygamy(1.0, 0.5, 2.0, 1.0);
    let rep = poly_chain_bound(&[0.4, 0.5, 0.3], &[0.6, 0.3], &poly, BoundDomain::NegativityPolygamy)?;
    println!("polygamy chain: {:?}, upper bound {:.6}", rep.branch, rep.bound);
    Ok(())
}
