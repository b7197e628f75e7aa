//! Simulated period finding for `7 mod 15` and friends, with the
//! per-trial transcript.

use grpiso::quantum_sim::{shor_order_traced, ShorTrial};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> grpiso::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for (a, n) in [(7, 15), (2, 21), (3, 64), (5, 63)] {
        let mut trace: Vec<ShorTrial> = Vec::new();
        let r = shor_order_traced(a, n, 20, &mut rng, &mut trace)?;
        println!("order of {a} mod {n} = {r} after {} trial(s)", trace.len());
        for t in &trace {
            println!(
                "  Q={} x0={} |support|={} measured={} denominators={:?}",
                t.register, t.x0, t.support, t.measured, t.denominators
            );
        }
    }
    Ok(())
}
