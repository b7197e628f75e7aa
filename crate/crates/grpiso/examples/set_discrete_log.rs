//! Solving `T_h^k = S_h` for multisets of field elements, with the full
//! solution coset.

use grpiso::field_poly::ExtField;
use grpiso::setdlog::set_discrete_log;

fn main() -> grpiso::Result<()> {
    let k = ExtField::canonical(3, 2)?;
    let w = k.generator();
    // w generates GF(9)^*, order 8
    let t = vec![vec![w.pow(1), w.pow(3)], vec![w.pow(2)]];
    let s: Vec<Vec<_>> = t.iter().map(|b| b.iter().map(|x| x.pow(3)).collect()).collect();
    match set_discrete_log(&s, &t)? {
        Some(c) => println!("k in {} * <{:?}> mod {}: {:?}", c.rep, c.gens, c.m, c.members()),
        None => println!("no solution"),
    }
    // squares can never reach a generator
    let bad = vec![vec![w.pow(1)]];
    let sq = vec![vec![w.pow(2)]];
    println!("w from w^2: {:?}", set_discrete_log(&bad, &sq)?);
    Ok(())
}
