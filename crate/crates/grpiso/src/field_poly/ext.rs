use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, Mutex, OnceLock};

use rand::Rng;

use super::factor::{is_irreducible, smallest_irreducible};
use super::field::{FiniteField, PrimeField};
use super::poly::Poly;
use crate::arith;
use crate::error::{Error, Result};

struct ExtInner {
    base: PrimeField,
    d: u32,
    modulus: Poly<PrimeField>,
}

/// `GF(p^d)` realized as `GF(p)[x] / (modulus)`.
#[derive(Clone)]
pub struct ExtField {
    inner: Arc<ExtInner>,
}

impl ExtField {
    /// Builds the extension defined by a monic irreducible `modulus`.
    pub fn new(modulus: Poly<PrimeField>) -> Result<Self> {
        if !modulus.is_monic() {
            return Err(Error::NotMonic);
        }
        let d = modulus.deg();
        if d == 0 {
            return Err(Error::DimensionMismatch("extension degree must be at least 1".into()));
        }
        if !is_irreducible(&modulus) {
            return Err(Error::Reducible(d));
        }
        Ok(Self::new_unchecked(modulus))
    }

    fn new_unchecked(modulus: Poly<PrimeField>) -> Self {
        ExtField {
            inner: Arc::new(ExtInner {
                base: *modulus.field(),
                d: modulus.deg() as u32,
                modulus,
            }),
        }
    }

    /// The shared representative of `GF(p^d)`, defined by the
    /// lexicographically first monic irreducible polynomial of degree `d`.
    /// Elementary-divisor tables from different matrices live in these
    /// fields so their entries can be compared directly.
    pub fn canonical(p: u64, d: u32) -> Result<Self> {
        static CACHE: OnceLock<Mutex<HashMap<(u64, u32), ExtField>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(f) = cache.lock().unwrap().get(&(p, d)) {
            return Ok(f.clone());
        }
        let base = PrimeField::new(p)?;
        let field = Self::new_unchecked(smallest_irreducible(&base, d as usize));
        cache.lock().unwrap().insert((p, d), field.clone());
        Ok(field)
    }

    pub fn base(&self) -> PrimeField {
        self.inner.base
    }

    pub fn p(&self) -> u64 {
        self.inner.base.p()
    }

    pub fn d(&self) -> u32 {
        self.inner.d
    }

    pub fn modulus(&self) -> &Poly<PrimeField> {
        &self.inner.modulus
    }

    /// Element from coefficients (lowest first); longer inputs are reduced.
    pub fn elem(&self, coeffs: &[u64]) -> ExtFieldElem {
        let p = self.p();
        let mut c: Vec<u64> = coeffs.iter().map(|v| v % p).collect();
        self.reduce(&mut c);
        ExtFieldElem {
            field: self.clone(),
            coeffs: c,
        }
    }

    /// The class of `x`, a root of the defining polynomial.
    pub fn generator(&self) -> ExtFieldElem {
        self.elem(&[0, 1])
    }

    pub fn from_prime(&self, c: u64) -> ExtFieldElem {
        self.elem(&[c])
    }

    /// All field elements, in coefficient order. Desk-scale only.
    pub fn elements(&self) -> Vec<ExtFieldElem> {
        let (p, d) = (self.p(), self.d() as usize);
        let total = p.pow(d as u32);
        (0..total)
            .map(|mut n| {
                let mut c = vec![0u64; d];
                for slot in c.iter_mut() {
                    *slot = n % p;
                    n /= p;
                }
                ExtFieldElem {
                    field: self.clone(),
                    coeffs: c,
                }
            })
            .collect()
    }

    fn reduce(&self, c: &mut Vec<u64>) {
        let d = self.d() as usize;
        let p = self.p();
        let m = self.modulus().coeffs();
        if c.len() > d {
            for i in (d..c.len()).rev() {
                let lead = c[i];
                if lead == 0 {
                    continue;
                }
                for j in 0..d {
                    let t = arith::mul_mod(lead, m[j], p);
                    c[i - d + j] = (c[i - d + j] + p - t) % p;
                }
                c[i] = 0;
            }
        }
        c.resize(d, 0);
    }

    fn check(&self, a: &ExtFieldElem) -> Result<()> {
        if a.field == *self {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }
}

impl PartialEq for ExtField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.modulus == other.inner.modulus
    }
}

impl Eq for ExtField {}

impl fmt::Debug for ExtField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})[{}]", self.p(), self.d(), self.modulus().pretty())
    }
}

/// An element of `GF(p^d)`: exactly `d` reduced coefficients, lowest first.
#[derive(Clone)]
pub struct ExtFieldElem {
    field: ExtField,
    coeffs: Vec<u64>,
}

impl ExtFieldElem {
    pub fn field(&self) -> &ExtField {
        &self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    pub fn pow(&self, e: u128) -> ExtFieldElem {
        self.field.pow(self, e)
    }

    pub fn frobenius(&self) -> ExtFieldElem {
        self.pow(self.field.p() as u128)
    }

    /// Smallest `k >= 1` with `a^k = 1`.
    pub fn mult_order(&self) -> Result<u64> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        let q = self.field.size();
        if q > (1u128 << 63) {
            return Err(Error::GuardExceeded {
                what: "field size",
                limit: 1 << 63,
            });
        }
        let group = (q - 1) as u64;
        Ok(arith::order_from_exponent(group, |e| self.pow(e as u128).is_one()))
    }

    /// Smallest `e` with `a^(p^e) = a`: the degree of the smallest subfield
    /// containing `a`. Always divides `d`.
    pub fn minimal_subfield_degree(&self) -> u32 {
        let d = self.field.d() as u64;
        for e in arith::divisors(d) {
            let q_e = (self.field.p() as u128).pow(e as u32);
            if self.pow(q_e) == *self {
                return e as u32;
            }
        }
        d as u32
    }

    /// Minimal polynomial over the prime field.
    pub fn minimal_polynomial(&self) -> Poly<PrimeField> {
        let k = &self.field;
        let e = self.minimal_subfield_degree();
        let mut acc = Poly::one(k);
        let mut conj = self.clone();
        for _ in 0..e {
            acc = &acc * &Poly::linear(k, &conj);
            conj = conj.frobenius();
        }
        let base = self.field.base();
        acc.map_field(&base, |c| c.coeffs[0])
    }

    /// Frobenius conjugates `a, a^p, a^(p^2), ...` (one full orbit).
    pub fn conjugates(&self) -> Vec<ExtFieldElem> {
        let mut out = vec![self.clone()];
        let mut c = self.frobenius();
        while c != *self {
            out.push(c.clone());
            c = c.frobenius();
        }
        out
    }
}

impl PartialEq for ExtFieldElem {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && self.field == other.field
    }
}

impl Eq for ExtFieldElem {}

impl Hash for ExtFieldElem {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl PartialOrd for ExtFieldElem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Coefficient-lexicographic order (lowest coefficient most significant).
impl Ord for ExtFieldElem {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs.cmp(&other.coeffs).then_with(|| {
            self.field
                .modulus()
                .coeffs()
                .cmp(other.field.modulus().coeffs())
        })
    }
}

impl fmt::Debug for ExtFieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Comma-separated coefficients, lowest first; a bare integer when `d = 1`.
impl fmt::Display for ExtFieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FiniteField for ExtField {
    type Elem = ExtFieldElem;

    fn characteristic(&self) -> u64 {
        self.p()
    }
    fn degree(&self) -> u32 {
        self.d()
    }
    fn zero(&self) -> ExtFieldElem {
        self.elem(&[])
    }
    fn one(&self) -> ExtFieldElem {
        self.elem(&[1])
    }
    fn from_int(&self, v: i64) -> ExtFieldElem {
        self.elem(&[v.rem_euclid(self.p() as i64) as u64])
    }
    fn add(&self, a: &ExtFieldElem, b: &ExtFieldElem) -> ExtFieldElem {
        let p = self.p();
        ExtFieldElem {
            field: self.clone(),
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| (x + y) % p).collect(),
        }
    }
    fn neg(&self, a: &ExtFieldElem) -> ExtFieldElem {
        let p = self.p();
        ExtFieldElem {
            field: self.clone(),
            coeffs: a.coeffs.iter().map(|x| (p - x) % p).collect(),
        }
    }
    fn mul(&self, a: &ExtFieldElem, b: &ExtFieldElem) -> ExtFieldElem {
        let p = self.p();
        let d = self.d() as usize;
        let mut c = vec![0u64; 2 * d - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                c[i + j] = (c[i + j] + arith::mul_mod(*x, *y, p)) % p;
            }
        }
        self.reduce(&mut c);
        ExtFieldElem {
            field: self.clone(),
            coeffs: c,
        }
    }
    fn inv(&self, a: &ExtFieldElem) -> Option<ExtFieldElem> {
        if a.is_zero() {
            None
        } else {
            Some(self.pow(a, self.size() - 2))
        }
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> ExtFieldElem {
        let p = self.p();
        let c: Vec<u64> = (0..self.d()).map(|_| rng.gen_range(0..p)).collect();
        ExtFieldElem {
            field: self.clone(),
            coeffs: c,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Checked field arithmetic on two elements of the same field.
pub fn ff_arith(a: &ExtFieldElem, b: &ExtFieldElem, op: ArithOp) -> Result<ExtFieldElem> {
    let k = &a.field;
    k.check(b)?;
    Ok(match op {
        ArithOp::Add => k.add(a, b),
        ArithOp::Sub => k.sub(a, b),
        ArithOp::Mul => k.mul(a, b),
        ArithOp::Div => {
            let inv = k.inv(b).ok_or(Error::DivisionByZero)?;
            k.mul(a, &inv)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf4() -> ExtField {
        ExtField::canonical(2, 2).unwrap()
    }

    #[test]
    fn canonical_moduli_match_small_irreducibles() {
        assert_eq!(gf4().modulus().to_string(), "1,1,1");
        assert_eq!(ExtField::canonical(2, 3).unwrap().modulus().to_string(), "1,1,0,1");
        assert_eq!(ExtField::canonical(5, 1).unwrap().modulus().to_string(), "0,1");
    }

    #[test]
    fn alpha_cubed_is_one_in_gf4() {
        let k = gf4();
        let a = k.generator();
        let a2 = ff_arith(&a, &a, ArithOp::Mul).unwrap();
        assert_eq!(ff_arith(&a, &a2, ArithOp::Mul).unwrap(), k.one());
        assert_eq!(ff_arith(&a, &k.zero(), ArithOp::Add).unwrap(), a);
    }

    #[test]
    fn prime_field_product() {
        let k = ExtField::canonical(7, 1).unwrap();
        let r = ff_arith(&k.from_prime(3), &k.from_prime(5), ArithOp::Mul).unwrap();
        assert_eq!(r, k.one());
    }

    #[test]
    fn arithmetic_errors() {
        let k = gf4();
        let other = ExtField::canonical(2, 3).unwrap();
        assert_eq!(
            ff_arith(&k.one(), &other.one(), ArithOp::Add),
            Err(Error::FieldMismatch)
        );
        assert_eq!(
            ff_arith(&k.one(), &k.zero(), ArithOp::Div),
            Err(Error::DivisionByZero)
        );
        assert_eq!(k.zero().mult_order(), Err(Error::ZeroElement));
    }

    #[test]
    fn orders_from_worked_example() {
        assert_eq!(gf4().one().mult_order().unwrap(), 1);
        assert_eq!(gf4().generator().mult_order().unwrap(), 3);
        assert_eq!(ExtField::canonical(2, 3).unwrap().generator().mult_order().unwrap(), 7);
    }

    #[test]
    fn subfield_degrees() {
        let k8 = ExtField::canonical(2, 3).unwrap();
        assert_eq!(k8.one().minimal_subfield_degree(), 1);
        assert_eq!(gf4().generator().minimal_subfield_degree(), 2);
        let k = ExtField::canonical(3, 4).unwrap();
        for a in k.elements() {
            let e = a.minimal_subfield_degree();
            assert_eq!(4 % e, 0);
            if a.coeffs()[1..].iter().all(|&c| c == 0) {
                assert_eq!(e, 1);
            }
        }
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        for (p, d) in [(2u64, 2u32), (2, 3), (3, 2), (2, 6), (7, 2)] {
            let k = ExtField::canonical(p, d).unwrap();
            let els = k.elements();
            assert!(els.len() <= 64);
            let q = k.size() as u64;
            for a in &els {
                if !a.is_zero() {
                    assert_eq!(k.mul(a, &k.inv(a).unwrap()), k.one());
                    assert_eq!((q - 1) % a.mult_order().unwrap(), 0);
                }
                for b in &els {
                    assert_eq!(k.mul(a, b), k.mul(b, a));
                    // sampled third operand keeps the triple loop cheap
                    let c = &els[(a.coeffs()[0] as usize * 7 + b.coeffs()[0] as usize) % els.len()];
                    assert_eq!(k.mul(&k.mul(a, b), c), k.mul(a, &k.mul(b, c)));
                    assert_eq!(k.mul(a, &k.add(b, c)), k.add(&k.mul(a, b), &k.mul(a, c)));
                }
            }
        }
    }

    #[test]
    fn minimal_polynomial_of_generator_is_modulus() {
        let k = ExtField::canonical(3, 3).unwrap();
        assert_eq!(k.generator().minimal_polynomial(), *k.modulus());
    }
}
