//! Building scrambled class-S groups from specs, reading one from a
//! multiplication table and regenerating with random generators.

use grpiso::blackbox::{
    build_group, group_order, is_abelian, power, BlackBoxGroup, ClassSGroupSpec, Regenerated, TableGroup,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> grpiso::Result<()> {
    let spec = ClassSGroupSpec::parse("abelian = 7\nm = 3\naction = 2\nscramble_seed = 11\n")?;
    let g = build_group(&spec)?;
    println!("spec:\n{spec}");
    let gens = g.generators();
    println!("|G| = {}, abelian: {}", group_order(&g)?, is_abelian(&g, &gens)?);
    for x in &gens {
        let mut n = 1;
        while power(&g, x, n)? != g.identity() {
            n += 1;
        }
        println!("  {x} has order {n}");
    }

    // same group, opaque table encoding
    let t = TableGroup::from_group(&g)?;
    println!("table copy has {} elements", t.order());
    let text = t.to_text();
    println!("second line of the table file: {}", text.lines().nth(1).unwrap_or(""));

    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let r = Regenerated::random(g, &mut rng)?;
    println!("regenerated with {} random generators", r.generators().len());
    Ok(())
}
