//! Invariant factors, rational normal form, elementary divisor buckets and
//! an explicit conjugator between two similar matrices.

use grpiso::field_poly::{Poly, PrimeField};
use grpiso::matrix_forms::{
    companion, conjugator, elementary_divisors, invariant_factors, mat_order, rational_normal_form, Matrix,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> grpiso::Result<()> {
    let f = PrimeField::new(2)?;
    let f1 = Poly::from_ints(&f, &[1, 1, 1]);
    let f2 = &f1.pow(2) * &Poly::from_ints(&f, &[1, 1, 0, 1]);
    let c1 = companion(&f1)?;
    let m = Matrix::block_diag(&f, &[c1.clone(), c1, companion(&f2)?]);

    // hide the block structure
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let p = Matrix::random_invertible(&f, m.dim(), &mut rng);
    let hidden = p.mul(&m).mul(&p.inverse()?);

    println!("invariant factors:");
    for a in invariant_factors(&hidden)?.factors() {
        println!("  {a}");
    }
    println!("order {}", mat_order(&hidden)?);
    println!("rational normal form:\n{}", rational_normal_form(&hidden)?);
    for ((d, l), roots) in elementary_divisors(&hidden)?.iter() {
        let shown: Vec<String> = roots.iter().map(|r| r.to_string()).collect();
        println!("bucket d={d} l={l}: {}", shown.join(", "));
    }

    let x = conjugator(&m, &hidden)?;
    assert_eq!(x.mul(&m), hidden.mul(&x));
    println!("conjugator found, X M = M' X holds");
    Ok(())
}
