//! Finding `k` with `M1 ~ M2^k`, plus the conjugating matrix.

use grpiso::dlog_conj::{dlog_up_to_conjugacy, ConjLogInstance};
use grpiso::field_poly::PrimeField;
use grpiso::matrix_forms::{mat_order, Matrix};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> grpiso::Result<()> {
    let f = PrimeField::new(5)?;
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let m2 = Matrix::from_ints(&f, &[vec![0, 1], vec![3, 1]])?;
    println!("M2 has order {}", mat_order(&m2)?);
    let p = Matrix::random_invertible(&f, 2, &mut rng);
    let m1 = p.mul(&m2.pow(7)).mul(&p.inverse()?);
    let inst = ConjLogInstance::new(vec![(m1.clone(), m2.clone())])?;
    match dlog_up_to_conjugacy(&inst)? {
        Some(sol) => {
            println!("k = {}, scale {}", sol.k, sol.scale);
            // powers in the same Frobenius orbit give similar matrices
            println!("all exponents: {:?}", sol.coset.exponents(sol.scale));
            let x = &sol.xs[0];
            assert_eq!(x.mul(&m1), m2.pow(sol.k as u128).mul(x));
            println!("X =\n{x}");
        }
        None => println!("no exponent"),
    }
    let id = Matrix::identity(&f, 2);
    let none = ConjLogInstance::new(vec![(m2.clone(), id)])?;
    println!("M2 from I: {:?}", dlog_up_to_conjugacy(&none)?.map(|s| s.k));
    Ok(())
}
