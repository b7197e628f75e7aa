//! Irreducibility testing and Cantor-Zassenhaus factorization.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::ext::{ExtField, ExtFieldElem};
use super::field::{FiniteField, PrimeField};
use super::poly::Poly;
use crate::arith;
use crate::error::{Error, Result};

const DEFAULT_SEED: u64 = 0x5eed_cafe;

/// `x^(q^k) mod f` by `k` repeated `q`-th powers.
fn frobenius_x<F: FiniteField>(f: &Poly<F>, k: usize) -> Poly<F> {
    let q = f.field().size();
    let mut h = Poly::x(f.field()).rem(f).unwrap();
    for _ in 0..k {
        h = h.pow_mod(q, f);
    }
    h
}

/// Rabin's test: `f` of degree `n` is irreducible iff `x^(q^n) = x mod f`
/// and `gcd(x^(q^(n/r)) - x, f) = 1` for each prime `r | n`.
pub fn is_irreducible<F: FiniteField>(f: &Poly<F>) -> bool {
    let n = match f.degree() {
        None | Some(0) => return false,
        Some(1) => return true,
        Some(n) => n,
    };
    let f = f.monic();
    let x = Poly::x(f.field());
    if frobenius_x(&f, n) != x.rem(&f).unwrap() {
        return false;
    }
    for r in arith::prime_divisors(n as u64) {
        let h = frobenius_x(&f, n / r as usize);
        if !f.gcd(&(&h - &x)).is_one() {
            return false;
        }
    }
    true
}

/// Lexicographically first monic irreducible of degree `d`: candidates are
/// counted with the constant coefficient as the lowest base-`p` digit.
pub fn smallest_irreducible(field: &PrimeField, d: usize) -> Poly<PrimeField> {
    let p = field.p();
    let mut n: u128 = 0;
    loop {
        let mut c = Vec::with_capacity(d + 1);
        let mut t = n;
        for _ in 0..d {
            c.push((t % p as u128) as u64);
            t /= p as u128;
        }
        c.push(1);
        let f = Poly::new(field, c);
        if is_irreducible(&f) {
            return f;
        }
        n += 1;
    }
}

/// Random monic irreducible of degree `d` over `GF(p)`, reproducible from `seed`.
pub fn find_irreducible(p: u64, d: usize, seed: u64) -> Result<Poly<PrimeField>> {
    let field = PrimeField::new(p)?;
    if d == 0 {
        return Err(Error::DimensionMismatch("degree must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let f = Poly::random_monic(&field, d, &mut rng);
        if is_irreducible(&f) {
            return Ok(f);
        }
    }
}

/// `a^(1/p)` in a field of size `p^D`, i.e. `a^(p^(D-1))`.
fn pth_root<F: FiniteField>(field: &F, a: &F::Elem) -> F::Elem {
    let p = field.characteristic() as u128;
    field.pow(a, p.pow(field.degree() - 1))
}

/// Squarefree decomposition of a monic polynomial: pairs `(g, i)` with
/// pairwise coprime squarefree `g` and `f = prod g^i`.
pub fn squarefree_decomposition<F: FiniteField>(f: &Poly<F>) -> Vec<(Poly<F>, u32)> {
    let field = f.field().clone();
    let p = field.characteristic() as usize;
    let mut out = Vec::new();
    if f.deg() == 0 {
        return out;
    }
    let mut c = f.gcd(&f.derivative());
    let mut w = f.div_rem(&c).unwrap().0;
    let mut i = 1u32;
    while !w.is_one() {
        let y = w.gcd(&c);
        let z = w.div_rem(&y).unwrap().0;
        if z.deg() > 0 {
            out.push((z, i));
        }
        i += 1;
        w = y.clone();
        c = c.div_rem(&y).unwrap().0;
    }
    if !c.is_one() {
        let root: Vec<F::Elem> = c
            .coeffs()
            .iter()
            .step_by(p)
            .map(|a| pth_root(&field, a))
            .collect();
        let r = Poly::new(&field, root);
        for (g, m) in squarefree_decomposition(&r) {
            out.push((g, m * p as u32));
        }
    }
    out
}

/// Distinct-degree split of a squarefree monic polynomial into `(g, d)` where
/// `g` is the product of all irreducible factors of degree `d`.
pub fn distinct_degree<F: FiniteField>(f: &Poly<F>) -> Vec<(Poly<F>, usize)> {
    let q = f.field().size();
    let x = Poly::x(f.field());
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = x.rem(&rest).unwrap();
    let mut d = 1;
    while rest.deg() >= 2 * d {
        h = h.pow_mod(q, &rest);
        let g = rest.gcd(&(&h - &x));
        if !g.is_one() {
            rest = rest.div_rem(&g).unwrap().0;
            h = h.rem(&rest).unwrap();
            out.push((g, d));
        }
        d += 1;
    }
    if rest.deg() > 0 {
        let n = rest.deg();
        out.push((rest, n));
    }
    out
}

/// Equal-degree split: `f` is a product of distinct irreducibles of degree `d`.
pub fn equal_degree<F: FiniteField, R: Rng + ?Sized>(
    f: &Poly<F>,
    d: usize,
    rng: &mut R,
) -> Vec<Poly<F>> {
    let n = f.deg();
    if n == d {
        return vec![f.clone()];
    }
    if n == 0 {
        return vec![];
    }
    let field = f.field().clone();
    let q = field.size();
    let p = field.characteristic();
    loop {
        let coeffs: Vec<F::Elem> = (0..n).map(|_| field.random(rng)).collect();
        let a = Poly::new(&field, coeffs);
        if a.deg() == 0 {
            continue;
        }
        let mut g = a.gcd(f);
        if g.is_one() {
            let b = if p == 2 {
                // trace map to GF(2)
                let k = field.degree() as usize * d;
                let mut t = a.rem(f).unwrap();
                let mut acc = t.clone();
                for _ in 1..k {
                    t = t.mul_mod(&t, f);
                    acc = &acc + &t;
                }
                acc
            } else {
                let e = (q.pow(d as u32) - 1) / 2;
                &a.pow_mod(e, f) - &Poly::one(&field)
            };
            g = b.gcd(f);
        }
        if g.deg() > 0 && g.deg() < n {
            let h = f.div_rem(&g).unwrap().0;
            let mut out = equal_degree(&g, d, rng);
            out.extend(equal_degree(&h, d, rng));
            return out;
        }
    }
}

/// Full factorization with an explicit RNG.
pub fn factor_poly_with<F: FiniteField, R: Rng + ?Sized>(
    f: &Poly<F>,
    rng: &mut R,
) -> Result<Vec<(Poly<F>, u32)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    let mut out: Vec<(Poly<F>, u32)> = Vec::new();
    for (g, mult) in squarefree_decomposition(f) {
        for (h, d) in distinct_degree(&g) {
            for irr in equal_degree(&h, d, rng) {
                match out.iter_mut().find(|(e, _)| *e == irr) {
                    Some(slot) => slot.1 += mult,
                    None => out.push((irr, mult)),
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Factorization of a monic polynomial into irreducibles with multiplicities,
/// sorted by degree then coefficients.
pub fn factor_poly<F: FiniteField>(f: &Poly<F>) -> Result<Vec<(Poly<F>, u32)>> {
    factor_poly_with(f, &mut ChaCha8Rng::seed_from_u64(DEFAULT_SEED))
}

/// Roots of `f` lying in `field` (with multiplicity ignored), ascending.
pub fn roots_in<F: FiniteField>(f: &Poly<F>) -> Vec<F::Elem> {
    let field = f.field();
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    let mut roots: Vec<F::Elem> = Vec::new();
    for (g, _) in squarefree_decomposition(&f.monic()) {
        for (h, d) in distinct_degree(&g) {
            if d != 1 {
                continue;
            }
            for lin in equal_degree(&h, 1, &mut rng) {
                roots.push(field.neg(&lin.coeff(0)));
            }
        }
    }
    roots.sort();
    roots.dedup();
    roots
}

/// The `d` distinct roots of an irreducible `f` of degree `d`, inside the
/// canonical copy of `GF(p^d)`.
pub fn roots_in_splitting_ext(f: &Poly<PrimeField>) -> Result<Vec<ExtFieldElem>> {
    if !is_irreducible(f) {
        return Err(Error::Reducible(f.deg()));
    }
    let f = f.monic();
    let k = ExtField::canonical(f.field().p(), f.deg() as u32)?;
    let lifted = f.map_field(&k, |c| k.from_prime(*c));
    Ok(roots_in(&lifted))
}
