//! Partial transpose, trace norm and negativity.
//!
//! `cargo run --example negativity`

use monogamy::linalg::{herm_eigvals, trace_norm, DEFAULT_TOL};
use monogamy::measures::{negativity, negativity_pure, negativity_pure_forms};
use monogamy::qstate::{density_from_pure, partial_transpose, random_pure, DensityMatrix, PartitionSpec, PureState};

fn main() -> monogamy::Result<()> {
    let cut = PartitionSpec::first_vs_rest(2)?;

    // Schmidt coefficients (0.6, 0.8): N = 2 * 0.6 * 0.8
    let psi = PureState::from_real(&[0.6, 0.0, 0.0, 0.8], vec![2, 2])?;
    let pt = partial_transpose(&density_from_pure(&psi), &cut)?;
    println!("spectrum of rho^T_A: {:?}", herm_eigvals(&pt, DEFAULT_TOL)?);
    println!("||rho^T_A||_1 = {:.6}, N = {:.6}", trace_norm(&pt), negativity_pure(&psi, &cut)?);

    // Pure-state forms agree with the mixed-state route in any dimension.
    let psi = random_pure(&[3, 3], 42)?;
    let (pairwise, trace_form) = negativity_pure_forms(&psi, &cut)?;
    let mixed = negativity(&density_from_pure(&psi), &cut)?;
    println!("3x3 random: pairwise {pairwise:.12}, (tr sqrt rho_A)^2 - 1 {trace_form:.12}, ||.||_1 - 1 {mixed:.12}");

    // Mixing with white noise kills negativity below the PPT threshold.
    let bell = PureState::bell();
    let white = DensityMatrix::maximally_mixed(vec![2, 2])?;
    for p in [1.0, 0.6, 1.0 / 3.0, 0.2] {
        let rho = DensityMatrix::new(
            &density_from_pure(&bell).matrix().scale(p) + &white.matrix().scale(1.0 - p),
            vec![2, 2],
        )?;
        println!("Werner p = {p:.3}: N = {:.6}", negativity(&rho, &cut)?);
    }
    Ok(())
}
