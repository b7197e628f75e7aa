//! Canonical forms of invertible matrices over finite fields.

mod matrix;
mod smith;
mod text;

use std::collections::BTreeMap;

pub use matrix::Matrix;
pub use text::{matrix_to_text, parse_matrices};

use crate::arith;
use crate::error::{Error, Result};
use crate::field_poly::{
    factor_poly, roots_in_splitting_ext, ExtFieldElem, FiniteField, Poly, PrimeField,
};

/// Companion matrix of a monic polynomial: ones on the subdiagonal, the
/// negated low coefficients in the last column.
pub fn companion<F: FiniteField>(a: &Poly<F>) -> Result<Matrix<F>> {
    if !a.is_monic() {
        return Err(Error::NotMonic);
    }
    let n = a.deg();
    if n == 0 {
        return Err(Error::DimensionMismatch("companion of a constant".into()));
    }
    let f = a.field();
    let mut m = Matrix::zero(f, n);
    for i in 1..n {
        m.set(i, i - 1, f.one());
    }
    for i in 0..n {
        m.set(i, n - 1, f.neg(&a.coeff(i)));
    }
    Ok(m)
}

/// The divisibility chain `a_1 | a_2 | ... | a_s` of monic invariant factors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct InvariantFactors<F: FiniteField>(pub Vec<Poly<F>>);

impl<F: FiniteField> InvariantFactors<F> {
    pub fn factors(&self) -> &[Poly<F>] {
        &self.0
    }

    pub fn minimal_polynomial(&self) -> Option<&Poly<F>> {
        self.0.last()
    }

    pub fn dimension(&self) -> usize {
        self.0.iter().map(|a| a.deg()).sum()
    }
}

pub fn invariant_factors<F: FiniteField>(m: &Matrix<F>) -> Result<InvariantFactors<F>> {
    m.require_invertible()?;
    Ok(InvariantFactors(smith::cyclic_decomposition(m).factors))
}

/// Invariant factors together with a basis change `P` such that
/// `M P = P R`, where `R` is the block diagonal of their companions.
pub fn rational_form_basis<F: FiniteField>(m: &Matrix<F>) -> (InvariantFactors<F>, Matrix<F>) {
    let dec = smith::cyclic_decomposition(m);
    let mut cols = Vec::with_capacity(m.dim());
    for (a, v) in dec.factors.iter().zip(&dec.vectors) {
        let mut w = v.clone();
        for _ in 0..a.deg() {
            let next = m.mul_vec(&w);
            cols.push(std::mem::replace(&mut w, next));
        }
    }
    let p = Matrix::from_columns(m.field(), &cols).expect("degrees sum to the dimension");
    (InvariantFactors(dec.factors), p)
}

pub fn rational_normal_form<F: FiniteField>(m: &Matrix<F>) -> Result<Matrix<F>> {
    let inv = invariant_factors(m)?;
    let blocks: Vec<Matrix<F>> = inv.0.iter().map(|a| companion(a)).collect::<Result<_>>()?;
    Ok(Matrix::block_diag(m.field(), &blocks))
}

fn check_pair<F: FiniteField>(m1: &Matrix<F>, m2: &Matrix<F>) -> Result<()> {
    if m1.field() != m2.field() {
        return Err(Error::FieldMismatch);
    }
    if m1.dim() != m2.dim() {
        return Err(Error::DimensionMismatch(format!("{} vs {}", m1.dim(), m2.dim())));
    }
    Ok(())
}

/// Similarity in `GL(r, F)`: equal invariant factors.
pub fn similar<F: FiniteField>(m1: &Matrix<F>, m2: &Matrix<F>) -> Result<bool> {
    check_pair(m1, m2)?;
    Ok(invariant_factors(m1)? == invariant_factors(m2)?)
}

/// An invertible `X` with `X M1 = M2 X`.
pub fn conjugator<F: FiniteField>(m1: &Matrix<F>, m2: &Matrix<F>) -> Result<Matrix<F>> {
    check_pair(m1, m2)?;
    m1.require_invertible()?;
    m2.require_invertible()?;
    let (inv1, p1) = rational_form_basis(m1);
    let (inv2, p2) = rational_form_basis(m2);
    if inv1 != inv2 {
        return Err(Error::NotSimilar);
    }
    let x = p2.mul(&p1.inverse()?);
    if x.mul(m1) != m2.mul(&x) {
        return Err(Error::Verification("conjugator check failed".into()));
    }
    Ok(x)
}

/// Elementary divisors over the matrix's own field as `(irreducible g, c)`
/// pairs, one per prime-power factor `g^c` of an invariant factor, sorted.
pub fn elementary_divisor_list<F: FiniteField>(m: &Matrix<F>) -> Result<Vec<(Poly<F>, u32)>> {
    let mut out = Vec::new();
    for a in invariant_factors(m)?.0 {
        out.extend(factor_poly(&a)?);
    }
    out.sort();
    Ok(out)
}

/// Multiplicative order of `x` modulo an irreducible `g` with `g(0) != 0`.
fn root_order<F: FiniteField>(g: &Poly<F>) -> u64 {
    let q = g.field().size();
    let group = (q.pow(g.deg() as u32) - 1) as u64;
    let x = Poly::x(g.field());
    arith::order_from_exponent(group, |e| x.pow_mod(e as u128, g).is_one())
}

/// Smallest `m >= 1` with `M^m = I`, from the elementary divisors: each
/// `g^c` contributes `ord(root of g) * p^ceil(log_p c)`.
pub fn mat_order<F: FiniteField>(m: &Matrix<F>) -> Result<u64> {
    let p = m.field().characteristic();
    let mut order = 1u64;
    for (g, c) in elementary_divisor_list(m)? {
        let part = root_order(&g) * p.pow(arith::ceil_log(p, c as u64));
        order = arith::lcm(order, part);
    }
    Ok(order)
}

/// Order by repeated multiplication, giving up after `cap` steps.
pub fn mat_order_by_powering<F: FiniteField>(m: &Matrix<F>, cap: u64) -> Option<u64> {
    let mut acc = m.clone();
    for k in 1..=cap {
        if acc.is_identity() {
            return Some(k);
        }
        acc = acc.mul(m);
    }
    None
}

/// The `c x c` Jordan block with `lambda` on the diagonal and ones above it.
pub fn jordan_block<F: FiniteField>(field: &F, lambda: &F::Elem, c: usize) -> Matrix<F> {
    let mut j = Matrix::zero(field, c);
    for i in 0..c {
        j.set(i, i, lambda.clone());
        if i + 1 < c {
            j.set(i, i + 1, field.one());
        }
    }
    j
}

/// Elementary-divisor roots bucketed by `(d, l)`: `d` is the degree of the
/// smallest field containing the root, `l` the exponent of its divisor.
/// Roots of degree `d` live in the canonical `GF(p^d)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EDTable {
    buckets: BTreeMap<(u32, u32), Vec<ExtFieldElem>>,
}

impl EDTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, d: u32, l: u32, root: ExtFieldElem) {
        let b = self.buckets.entry((d, l)).or_default();
        let pos = b.binary_search(&root).unwrap_or_else(|e| e);
        b.insert(pos, root);
    }

    /// Sorted multiset in bucket `(d, l)`; empty if absent.
    pub fn get(&self, d: u32, l: u32) -> &[ExtFieldElem] {
        self.buckets.get(&(d, l)).map_or(&[], |v| v.as_slice())
    }

    pub fn keys(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.buckets.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = ((u32, u32), &[ExtFieldElem])> {
        self.buckets.iter().map(|(k, v)| (*k, v.as_slice()))
    }

    /// `sum l * |bucket|`, the dimension of the underlying space.
    pub fn dimension(&self) -> usize {
        self.buckets.iter().map(|((_, l), v)| *l as usize * v.len()).sum()
    }

    /// Every root raised to `k`, keys unchanged. Meaningful when `k` is
    /// coprime with the root orders.
    pub fn power(&self, k: u64) -> EDTable {
        let mut out = EDTable::new();
        for ((d, l), v) in &self.buckets {
            for x in v {
                out.insert(*d, *l, x.pow(k as u128));
            }
        }
        out
    }
}

/// The table `Sigma_{d,l}(M)` for `M` over a prime field.
pub fn elementary_divisors(m: &Matrix<PrimeField>) -> Result<EDTable> {
    let mut table = EDTable::new();
    for (g, c) in elementary_divisor_list(m)? {
        let d = g.deg() as u32;
        for root in roots_in_splitting_ext(&g)? {
            table.insert(d, c, root);
        }
    }
    Ok(table)
}

/// Elementary divisors of `J(lambda, c)^k`: the single divisor
/// `(x - lambda^k)^c`, valid when `k` is coprime with the block's order.
pub fn jordan_power_eds(lambda: &ExtFieldElem, c: u32, k: u64) -> Result<EDTable> {
    let p = lambda.field().p();
    let order = lambda.mult_order()? * p.pow(arith::ceil_log(p, c as u64));
    if arith::gcd(k % order, order) != 1 {
        return Err(Error::NotCoprime { k, order });
    }
    let mu = lambda.pow(k as u128);
    let mut table = EDTable::new();
    table.insert(mu.minimal_subfield_degree(), c, mu);
    Ok(table)
}

/// Least common multiple of the matrix orders.
pub fn common_exponent<F: FiniteField>(mats: &[Matrix<F>]) -> Result<u64> {
    let mut m = 1;
    for a in mats {
        m = arith::lcm(m, mat_order(a)?);
    }
    Ok(m)
}
