//! Random class-`S` specs: an abelian group, a cyclic order `m` and a
//! random automorphism `T` with `T^m = I`.

use std::str::FromStr;

use rand::Rng;

use crate::abelian_engine::span;
use crate::arith;
use crate::blackbox::ClassSGroupSpec;
use crate::error::{Error, Result};
use crate::field_poly::{factor_poly, Poly, PrimeField};
use crate::iso::HomMatrix;
use crate::matrix_forms::{companion, Matrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sampler {
    /// `M^(|M| / gcd(|M|, m))` for a uniformly random automorphism `M`.
    Power,
    /// Random conjugate of a block diagonal of companion matrices of
    /// irreducible factors of `x^m - 1`, the factor multiset drawn
    /// uniformly; needs `A` elementary abelian.
    Semisimple,
    /// `Semisimple` when it applies, `Power` otherwise.
    Auto,
}

impl FromStr for Sampler {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "power" => Ok(Sampler::Power),
            "semisimple" => Ok(Sampler::Semisimple),
            "auto" => Ok(Sampler::Auto),
            _ => Err(Error::InvalidSpec(format!("unknown sampler `{s}`"))),
        }
    }
}

fn elementary_prime(orders: &[u64]) -> Option<u64> {
    let p = *orders.first()?;
    (arith::is_prime(p) && orders.iter().all(|&n| n == p)).then_some(p)
}

/// A uniformly random automorphism of `A`.
pub fn random_automorphism<R: Rng + ?Sized>(orders: &[u64], rng: &mut R) -> HomMatrix {
    let s = orders.len();
    let size: usize = orders.iter().product::<u64>() as usize;
    loop {
        let rows: Vec<Vec<u64>> = (0..s)
            .map(|i| {
                (0..s)
                    .map(|j| {
                        // entries must send an element of order n_j to one of order dividing n_j
                        let step = orders[i] / arith::gcd(orders[i], orders[j]);
                        step * rng.gen_range(0..orders[i] / step)
                    })
                    .collect()
            })
            .collect();
        let h = HomMatrix::new(rows, orders.to_vec(), orders.to_vec());
        let cols: Vec<Vec<u64>> = (0..s).map(|j| h.column(j)).collect();
        if span(&cols, orders).len() == size {
            return h;
        }
    }
}

fn power_action<R: Rng + ?Sized>(orders: &[u64], m: u64, rng: &mut R) -> Vec<Vec<i64>> {
    let h = random_automorphism(orders, rng);
    let o = h.order();
    let t = h.pow(o / arith::gcd(o, m));
    t.rows().iter().map(|r| r.iter().map(|&x| x as i64).collect()).collect()
}

fn semisimple_action<R: Rng + ?Sized>(p: u64, r: usize, m: u64, rng: &mut R) -> Result<Vec<Vec<i64>>> {
    let f = PrimeField::new(p)?;
    let mut coeffs = vec![0i64; m as usize + 1];
    coeffs[0] = -1;
    coeffs[m as usize] = 1;
    let factors: Vec<Poly<PrimeField>> = factor_poly(&Poly::from_ints(&f, &coeffs))?
        .into_iter()
        .map(|(q, _)| q)
        .collect();
    // uniform over conjugacy types, i.e. multisets of factors of total degree r
    let mut types: Vec<Vec<usize>> = Vec::new();
    multisets(&factors, 0, r, &mut Vec::new(), &mut types);
    let pick = &types[rng.gen_range(0..types.len())];
    let blocks = pick.iter().map(|&i| companion(&factors[i])).collect::<Result<Vec<_>>>()?;
    let d = Matrix::block_diag(&f, &blocks);
    let pm = Matrix::random_invertible(&f, r, rng);
    let t = pm.mul(&d).mul(&pm.inverse()?);
    Ok(t.to_ints().into_iter().map(|row| row.into_iter().map(|x| x as i64).collect()).collect())
}

fn multisets(factors: &[Poly<PrimeField>], from: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if left == 0 {
        out.push(cur.clone());
        return;
    }
    for i in from..factors.len() {
        if factors[i].deg() <= left {
            cur.push(i);
            multisets(factors, i, left - factors[i].deg(), cur, out);
            cur.pop();
        }
    }
}

/// A random action matrix `T` on `A` with `T^m = I`.
pub fn random_action<R: Rng + ?Sized>(orders: &[u64], m: u64, sampler: Sampler, rng: &mut R) -> Result<Vec<Vec<i64>>> {
    if orders.contains(&0) || m == 0 {
        return Err(Error::InvalidSpec("orders must be positive".into()));
    }
    let a: u64 = orders.iter().product();
    if arith::gcd(a, m) != 1 {
        return Err(Error::InvalidSpec(format!("gcd(|A|, m) = gcd({a}, {m}) != 1")));
    }
    match (sampler, elementary_prime(orders)) {
        (Sampler::Semisimple | Sampler::Auto, Some(p)) => semisimple_action(p, orders.len(), m, rng),
        (Sampler::Semisimple, None) => Err(Error::InvalidSpec("semisimple sampler needs A = Z_p^r".into())),
        _ => Ok(power_action(orders, m, rng)),
    }
}

/// `count` validated specs with random actions and scramble seeds.
pub fn random_specs<R: Rng + ?Sized>(
    orders: &[u64],
    m: u64,
    count: usize,
    sampler: Sampler,
    rng: &mut R,
) -> Result<Vec<ClassSGroupSpec>> {
    (0..count)
        .map(|_| {
            let action = random_action(orders, m, sampler, rng)?;
            let spec = ClassSGroupSpec::new(orders.to_vec(), m, action, rng.gen_range(1..u32::MAX as u64));
            spec.validate()?;
            Ok(spec)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn census_parameters() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for sampler in [Sampler::Power, Sampler::Semisimple] {
            let specs = random_specs(&[3, 3, 3, 3], 4, 50, sampler, &mut rng).unwrap();
            assert_eq!(specs.len(), 50);
            assert!(specs.iter().all(|s| s.order() == 324));
        }
    }

    #[test]
    fn mixed_orders_and_trivial_m() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for s in random_specs(&[9, 3, 5], 4, 20, Sampler::Auto, &mut rng).unwrap() {
            s.validate().unwrap();
        }
        let s = random_specs(&[7, 7], 1, 1, Sampler::Auto, &mut rng).unwrap();
        assert_eq!(s[0].action, vec![vec![1, 0], vec![0, 1]]);
    }

    #[test]
    fn gcd_violation() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        assert!(random_specs(&[2], 2, 1, Sampler::Auto, &mut rng).is_err());
        assert!(random_action(&[3, 9], 2, Sampler::Semisimple, &mut rng).is_err());
    }
}
