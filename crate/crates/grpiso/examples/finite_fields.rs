//! Arithmetic in GF(2^4) and polynomial factorization over small fields.

use grpiso::field_poly::{factor_poly, ExtField, FiniteField, Poly, PrimeField};

fn main() -> grpiso::Result<()> {
    let k = ExtField::canonical(2, 4)?;
    println!("GF(16) modulo {}", k.modulus());
    let x = k.generator();
    for e in [1u128, 4, 5, 15] {
        println!("  x^{e} = {}", x.pow(e));
    }
    let y = k.elem(&[1, 1, 0, 1]);
    println!("  y = {y}, order {}, lives in GF(2^{})", y.mult_order()?, y.minimal_subfield_degree());
    println!("  y * y^-1 = {}", k.mul(&y, &k.inv(&y).unwrap()));

    let f3 = PrimeField::new(3)?;
    // x^8 - 1 over GF(3)
    let f = Poly::from_ints(&f3, &[-1, 0, 0, 0, 0, 0, 0, 0, 1]);
    println!("x^8 - 1 over GF(3):");
    for (q, e) in factor_poly(&f)? {
        println!("  ({q})^{e}");
    }
    Ok(())
}
