//! Sorting random semidirect products `Z3^4 x| Z4` into isomorphism classes.

use grpiso::blackbox::build_group;
use grpiso::gen::{random_specs, Sampler};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> grpiso::Result<()> {
    let n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(60);
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let specs = random_specs(&[3, 3, 3, 3], 4, n, Sampler::Semisimple, &mut rng)?;
    let groups = specs.iter().map(build_group).collect::<grpiso::Result<Vec<_>>>()?;
    let c = grpiso::selftest::census(&groups, false)?;
    println!("{n} groups, {} classes", c.classes);
    println!("{} positive answers, {} certificates verified, {} negatives", c.positives, c.verified, c.negatives.len());
    let mut sizes = vec![0usize; c.classes];
    for &i in &c.class_of {
        sizes[i] += 1;
    }
    println!("class sizes: {sizes:?}");
    Ok(())
}
