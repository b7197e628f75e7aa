//! Splitting `G = A <v>` from generators alone.

use grpiso::blackbox::{build_group, ClassSGroupSpec, Regenerated};
use grpiso::decompose::{standard_decompose_traced, verify_standard_decomposition};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> grpiso::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let specs = [
        ClassSGroupSpec::new(vec![3, 3, 3, 3], 4, vec![vec![0, 2, 0, 0], vec![1, 0, 0, 0], vec![0, 0, 1, 0], vec![0, 0, 0, 2]], 1),
        ClassSGroupSpec::new(vec![7, 5], 6, vec![vec![3, 0], vec![0, 4]], 2),
        ClassSGroupSpec::new(vec![5], 4, vec![vec![4]], 3),
        ClassSGroupSpec::abelian(vec![12], 1),
    ];
    for spec in specs {
        let g = Regenerated::random(build_group(&spec)?, &mut rng)?;
        let (sd, state) = standard_decompose_traced(&g)?;
        println!(
            "|A| = {} (input), m = {}: {} generators for A, v = {}, kappa = {}, verified: {}",
            spec.abelian_orders.iter().product::<u64>(),
            sd.m,
            sd.a_gens.len(),
            sd.v,
            state.kappa,
            verify_standard_decomposition(&g, &sd)
        );
    }
    Ok(())
}
