//! Deciding isomorphism of two scrambled groups and checking the map.

use grpiso::blackbox::{build_group, ClassSGroupSpec, Regenerated};
use grpiso::iso::{group_isomorphism, verify_isomorphism, IsoOutcome};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> grpiso::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let t = vec![vec![0, 2, 0, 0], vec![1, 0, 0, 0], vec![0, 0, 1, 0], vec![0, 0, 0, 2]];
    // inverse of t: same group, different presentation
    let t_inv = vec![vec![0, 1, 0, 0], vec![2, 0, 0, 0], vec![0, 0, 1, 0], vec![0, 0, 0, 2]];
    let other = vec![vec![2, 0, 0, 0], vec![0, 2, 0, 0], vec![0, 0, 1, 0], vec![0, 0, 0, 1]];
    let g = build_group(&ClassSGroupSpec::new(vec![3; 4], 4, t, 1))?;
    let h = Regenerated::random(build_group(&ClassSGroupSpec::new(vec![3; 4], 4, t_inv, 2))?, &mut rng)?;
    let k = build_group(&ClassSGroupSpec::new(vec![3; 4], 4, other, 3))?;

    match group_isomorphism(&g, &h)? {
        IsoOutcome::Isomorphic(iso) => {
            println!("G ~ H with k = {}", iso.k);
            for (i, x) in iso.gen_images.iter().enumerate() {
                println!("  g{i} -> {x}");
            }
            println!("verified: {}", verify_isomorphism(&g, &h, &iso));
        }
        IsoOutcome::NotIsomorphic(why) => println!("G !~ H: {why}"),
    }
    match group_isomorphism(&g, &k)? {
        IsoOutcome::Isomorphic(_) => println!("G ~ K"),
        IsoOutcome::NotIsomorphic(why) => println!("G !~ K: {why}"),
    }
    Ok(())
}
