//! Discrete logarithm up to conjugacy: for lists of invertible matrices
//! find `k` and `X_h` with `X_h M1_h = (M2_h)^k X_h` for every block.

use std::collections::BTreeSet;

use crate::arith;
use crate::error::{Error, Result};
use crate::field_poly::{ExtFieldElem, PrimeField};
use crate::matrix_forms::{conjugator, elementary_divisors, parse_matrices, EDTable, Matrix};
use crate::setdlog::{set_discrete_log, SetElement, SolutionCoset};

pub use crate::matrix_forms::common_exponent;

/// Pairs `(M1_h, M2_h)` over prime fields.
#[derive(Clone, Debug)]
pub struct ConjLogInstance {
    pub blocks: Vec<(Matrix<PrimeField>, Matrix<PrimeField>)>,
}

#[derive(Clone, Debug)]
pub struct ConjLogSolution {
    /// `X_h M1_h = M2_h^k X_h`.
    pub k: u64,
    pub xs: Vec<Matrix<PrimeField>>,
    /// Units `j` mod `m1` with `M1 ~ (M2^(m2/m1))^j` blockwise.
    pub coset: SolutionCoset,
    /// `m2 / m1`; every valid exponent is `scale * j` for `j` in `coset`.
    pub scale: u64,
}

impl ConjLogInstance {
    pub fn new(blocks: Vec<(Matrix<PrimeField>, Matrix<PrimeField>)>) -> Result<Self> {
        for (a, b) in &blocks {
            if a.field() != b.field() || a.dim() != b.dim() {
                return Err(Error::DimensionMismatch(format!(
                    "block of size {} over GF({}) paired with size {} over GF({})",
                    a.dim(),
                    a.field().p(),
                    b.dim(),
                    b.field().p()
                )));
            }
            if !a.is_invertible() || !b.is_invertible() {
                return Err(Error::Singular);
            }
        }
        Ok(ConjLogInstance { blocks })
    }

    /// Pairs up consecutive matrices of a matrix file.
    pub fn parse(text: &str) -> Result<Self> {
        let ms = parse_matrices(text)?;
        if ms.len() % 2 != 0 {
            return Err(Error::Parse {
                line: text.lines().count(),
                msg: "expected an even number of matrices".into(),
            });
        }
        let mut it = ms.into_iter();
        let mut blocks = Vec::new();
        while let (Some(a), Some(b)) = (it.next(), it.next()) {
            blocks.push((a, b));
        }
        Self::new(blocks)
    }

    pub fn exponents(&self) -> Result<(u64, u64)> {
        let m1 = common_exponent(&self.blocks.iter().map(|b| b.0.clone()).collect::<Vec<_>>())?;
        let m2 = common_exponent(&self.blocks.iter().map(|b| b.1.clone()).collect::<Vec<_>>())?;
        Ok((m1, m2))
    }
}

fn root_lcm(tables: &[EDTable]) -> Result<u64> {
    let mut m = 1;
    for t in tables {
        for (_, roots) in t.iter() {
            for r in roots {
                m = arith::lcm(m, r.order()?);
            }
        }
    }
    Ok(m)
}

pub fn dlog_up_to_conjugacy(inst: &ConjLogInstance) -> Result<Option<ConjLogSolution>> {
    let (m1, m2) = inst.exponents()?;
    if m2 % m1 != 0 {
        return Ok(None);
    }
    let scale = m2 / m1;
    let seconds: Vec<Matrix<PrimeField>> = inst.blocks.iter().map(|(_, b)| b.pow(scale as u128)).collect();

    let t1: Vec<EDTable> = inst.blocks.iter().map(|(a, _)| elementary_divisors(a)).collect::<Result<_>>()?;
    let t2: Vec<EDTable> = seconds.iter().map(elementary_divisors).collect::<Result<_>>()?;
    // unit powers keep every root order, so the root exponents must agree
    let me = root_lcm(&t1)?;
    if me != root_lcm(&t2)? {
        return Ok(None);
    }
    let mut s_list: Vec<Vec<ExtFieldElem>> = Vec::new();
    let mut t_list: Vec<Vec<ExtFieldElem>> = Vec::new();
    for (a, b) in t1.iter().zip(&t2) {
        let keys: BTreeSet<(u32, u32)> = a.keys().chain(b.keys()).collect();
        for (d, l) in keys {
            let (s, t) = (a.get(d, l), b.get(d, l));
            if s.len() != t.len() {
                return Ok(None);
            }
            s_list.push(s.to_vec());
            t_list.push(t.to_vec());
        }
    }
    let Some(coset) = set_discrete_log(&s_list, &t_list)? else {
        return Ok(None);
    };
    debug_assert_eq!(coset.m, me);
    let coset = coset.lift(m1);
    let j = coset.rep;
    let mut xs = Vec::with_capacity(inst.blocks.len());
    for ((a, _), b) in inst.blocks.iter().zip(&seconds) {
        let target = b.pow(j as u128);
        let x = conjugator(a, &target)?;
        if x.mul(a) != target.mul(&x) {
            return Err(Error::Verification("conjugator".into()));
        }
        xs.push(x);
    }
    let k = (scale * j) % m2.max(1);
    let k = if k == 0 { m2 } else { k };
    for ((a, b), x) in inst.blocks.iter().zip(&xs) {
        if x.mul(a) != b.pow(k as u128).mul(x) {
            return Err(Error::Verification("conjugator for the original exponent".into()));
        }
    }
    Ok(Some(ConjLogSolution { k, xs, coset, scale }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix_forms::{companion, similar};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn gf(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn brute(inst: &ConjLogInstance) -> Option<Vec<u64>> {
        let (m1, m2) = inst.exponents().unwrap();
        if m2 % m1 != 0 {
            return None;
        }
        let ks: Vec<u64> = arith::units(m1)
            .into_iter()
            .map(|k| k.max(1))
            .filter(|&k| {
                inst.blocks
                    .iter()
                    .all(|(a, b)| similar(a, &b.pow((k * (m2 / m1)) as u128)).unwrap())
            })
            .collect();
        Some(ks)
    }

    #[test]
    fn identical_blocks() {
        let f = gf(3);
        let m = Matrix::from_ints(&f, &[vec![0, 2], vec![1, 0]]).unwrap();
        let sol = dlog_up_to_conjugacy(&ConjLogInstance::new(vec![(m.clone(), m.clone())]).unwrap())
            .unwrap()
            .unwrap();
        assert!(sol.coset.members().contains(&1));
    }

    #[test]
    fn conjugated_cube() {
        let f = gf(3);
        let m2 = Matrix::from_ints(&f, &[vec![0, 2], vec![1, 0]]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let p = Matrix::random_invertible(&f, 2, &mut rng);
        let m1 = p.mul(&m2.pow(3)).mul(&p.inverse().unwrap());
        let sol = dlog_up_to_conjugacy(&ConjLogInstance::new(vec![(m1.clone(), m2.clone())]).unwrap())
            .unwrap()
            .unwrap();
        // x^2 + 1 has roots i, -i, so k = 1 works as well
        assert_eq!(sol.coset.members(), vec![1, 3]);
        assert_eq!(sol.xs[0].mul(&m1), m2.pow(sol.k as u128).mul(&sol.xs[0]));
    }

    #[test]
    fn order_mismatch() {
        let f = gf(3);
        let m1 = Matrix::from_ints(&f, &[vec![2]]).unwrap();
        let m2 = Matrix::identity(&f, 1);
        assert!(dlog_up_to_conjugacy(&ConjLogInstance::new(vec![(m1, m2)]).unwrap()).unwrap().is_none());
    }

    #[test]
    fn common_exponents() {
        let f2 = gf(2);
        let c = companion(&crate::field_poly::Poly::from_ints(&f2, &[1, 1, 1])).unwrap();
        assert_eq!(common_exponent(&[c]).unwrap(), 3);
        let f = gf(5);
        let a = Matrix::from_ints(&f, &[vec![2]]).unwrap();
        let b = Matrix::from_ints(&f, &[vec![0, 4], vec![1, 4]]).unwrap();
        assert_eq!(common_exponent(&[Matrix::identity(&f, 2)]).unwrap(), 1);
        assert_eq!(common_exponent(&[a, b]).unwrap(), 12);
    }

    #[test]
    fn random_instances_match_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..60 {
            let p = [2u64, 3, 5][rng.gen_range(0..3)];
            let f = gf(p);
            let u = rng.gen_range(1..=2);
            let mut blocks = Vec::new();
            for _ in 0..u {
                let r = rng.gen_range(1..=3);
                let b = Matrix::random_invertible(&f, r, &mut rng);
                let a = if rng.gen_bool(0.6) {
                    let q = Matrix::random_invertible(&f, r, &mut rng);
                    q.mul(&b.pow(rng.gen_range(1..30))).mul(&q.inverse().unwrap())
                } else {
                    Matrix::random_invertible(&f, r, &mut rng)
                };
                blocks.push((a, b));
            }
            let inst = ConjLogInstance::new(blocks).unwrap();
            let got = dlog_up_to_conjugacy(&inst).unwrap();
            match (got, brute(&inst)) {
                (None, None) => {}
                (None, Some(ks)) => assert!(ks.is_empty(), "{inst:?}"),
                (Some(sol), Some(ks)) => assert_eq!(sol.coset.members(), ks),
                (Some(_), None) => panic!("solution despite exponent mismatch"),
            }
        }
    }

    #[test]
    fn parse_pairs() {
        let inst = ConjLogInstance::parse("3 2\n0 2\n1 0\n3 2\n0 2\n1 0\n").unwrap();
        assert_eq!(inst.blocks.len(), 1);
        assert!(ConjLogInstance::parse("3 1\n1\n").is_err());
        assert!(ConjLogInstance::parse("3 1\n1\n3 1\n0\n").is_err());
    }
}
