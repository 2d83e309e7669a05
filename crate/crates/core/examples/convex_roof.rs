//! Convex-roof optimization over pure-state ensembles.
//!
//! `cargo run --release --example convex_roof`

use monogamy::measures::{
    concurrence_of_assistance_2q, concurrence_wootters, convex_roof, Direction, MeasureKind,
    OptimizerBudget,
};
use monogamy::qstate::{random_pure, PartitionSpec};

fn main() -> monogamy::Result<()> {
    let cut = PartitionSpec::first_vs_rest(2)?;
    let rho = random_pure(&[2, 2, 2], 7)?.reduced(&[0, 1])?;
    let budget = OptimizerBudget::default().with_seed(1);

    let (roof, ens) = convex_roof(&rho, &cut, MeasureKind::Concurrence, Direction::Min, &budget)?;
    println!("min over ensembles: {roof:.10}  Wootters: {:.10}", concurrence_wootters(&rho)?);
    println!("  optimal ensemble has {} members, weights {:?}", ens.len(), ens.weights);
    println!("  reconstruction error {:.2e}", ens.reconstruct().max_abs_diff(rho.matrix()));

    let (assist, _) = convex_roof(&rho, &cut, MeasureKind::Concurrence, Direction::Max, &budget)?;
    println!("max over ensembles: {assist:.10}  closed form: {:.10}", concurrence_of_assistance_2q(&rho)?);

    let (noa, _) = convex_roof(&rho, &cut, MeasureKind::Negativity, Direction::Max, &budget)?;
    println!("negativity of assistance: {noa:.10}");
    Ok(())
}
