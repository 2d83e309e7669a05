//! Concurrence of pure and two-qubit mixed states.
//!
//! `cargo run --example concurrence`

use monogamy::harness::tripartite_concurrences;
use monogamy::measures::{concurrence_pure, concurrence_wootters, eof_2q, spin_flip_roots};
use monogamy::qstate::{density_from_pure, gsd_state, PartitionSpec, PureState};

fn main() -> monogamy::Result<()> {
    let cut = PartitionSpec::first_vs_rest(2)?;
    println!("Bell state: C = {:.6}", concurrence_pure(&PureState::bell(), &cut)?);

    // Reduced two-qubit states of W are mixed; Wootters gives their concurrence.
    let w = PureState::w(3)?;
    let rho12 = w.reduced(&[0, 1])?;
    println!("W, rho_12 spin-flip roots: {:?}", spin_flip_roots(&rho12)?);
    println!("W, C(rho_12) = {:.6}, EoF = {:.6}", concurrence_wootters(&rho12)?, eof_2q(&rho12)?);
    let (joint, c12, c13) = tripartite_concurrences(&w)?;
    println!("W: C(A|BC) = {joint:.6}, C(AB) = {c12:.6}, C(AC) = {c13:.6}");
    println!("   C^2 - C12^2 - C13^2 = {:.3e}", joint * joint - c12 * c12 - c13 * c13);

    // Generalized Schmidt form with amplitudes (l0, l1, l2, l3, l4) and phase theta.
    let psi = gsd_state([0.5, 0.3, 0.5, 0.4, (1.0f64 - 0.25 - 0.09 - 0.25 - 0.16).sqrt()], 0.7)?;
    let (joint, c12, c13) = tripartite_concurrences(&psi)?;
    println!("GSD: C(A|BC) = {joint:.6}, C(AB) = {c12:.6} (2 l0 l2 = 0.5), C(AC) = {c13:.6} (2 l0 l3 = 0.4)");

    let product = density_from_pure(&PureState::basis(vec![2, 2], &[0, 1])?);
    println!("product |01>: C = {}", concurrence_wootters(&product)?);
    Ok(())
}
