//! Bases of abelian black-box groups, coset intersection and the three
//! hidden subgroup backends.

use grpiso::abelian_engine::{
    abelian_basis, coset_intersection, decompose_over_basis, hidden_subgroup, HspBackend,
};
use grpiso::blackbox::{build_group, BlackBoxGroup, ClassSGroupSpec};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> grpiso::Result<()> {
    let g = build_group(&ClassSGroupSpec::abelian(vec![12, 18], 1).with_seed(5))?;
    let gens = g.generators();
    let basis = abelian_basis(&g, &gens)?;
    println!("Z12 x Z18 has prime-power basis orders {:?}", basis.orders);
    let z = g.multiply(&gens[0], &gens[1])?;
    println!("g0 g1 = {z} has coordinates {:?}", decompose_over_basis(&g, &z, &basis)?);

    let (a, b) = (gens[0].clone(), gens[1].clone());
    let b6 = grpiso::blackbox::power(&g, &b, 6)?;
    let a6 = grpiso::blackbox::power(&g, &a, 6)?;
    let ab6 = g.multiply(&a, &b6)?;
    // a<b^6> meets ab^6<a^6> in the single element ab^6
    match coset_intersection(&g, &a, &[b6.clone()], &ab6, &[a6.clone()])? {
        Some(c) => println!("a<b^6> & ab^6<a^6>: rep {} with {} generators", c.rep, c.gens.len()),
        None => println!("a<b^6> & ab^6<a^6> is empty"),
    }
    match coset_intersection(&g, &a, &[a6.clone()], &b6, &[b6.clone()])? {
        Some(c) => println!("a<a^6> & <b^6>: rep {}", c.rep),
        None => println!("a<a^6> & <b^6> is empty"),
    }

    // hidden subgroup of Z4 x Z6 behind the quotient map onto Z2 x Z3
    let h = build_group(&ClassSGroupSpec::abelian(vec![2, 3], 1).with_seed(2))?;
    let hg = h.generators();
    let f = |v: &[u64]| -> grpiso::Result<grpiso::blackbox::Element> {
        let x = grpiso::blackbox::power(&h, &hg[0], v[0])?;
        h.multiply(&x, &grpiso::blackbox::power(&h, &hg[1], v[1])?)
    };
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for backend in [HspBackend::Structured, HspBackend::Exhaustive, HspBackend::QuantumSim] {
        let k = hidden_subgroup(&h, &[4, 6], f, backend, &mut rng)?;
        println!("{backend:?}: kernel generated by {k:?}");
    }
    Ok(())
}
