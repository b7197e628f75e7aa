//! Isomorphism testing for groups `A x| Z_m` with `gcd(|A|, m) = 1`:
//! decompose both sides, compare the abelian parts, then match the
//! conjugation actions up to a unit power and a change of basis.

mod hom;

use std::collections::{HashMap, VecDeque};

pub use hom::HomMatrix;

use crate::abelian_engine::{abelian_basis, decompose_over_basis, AbelianBasis};
use crate::arith;
use crate::blackbox::{conjugate, elements, inverse, power, BlackBoxGroup, Element};
use crate::decompose::{standard_decompose, StandardDecomposition};
use crate::dlog_conj::{dlog_up_to_conjugacy, ConjLogInstance};
use crate::error::{Error, Result};
use crate::field_poly::PrimeField;
use crate::matrix_forms::{conjugator, Matrix};

/// Conjugation by `v` on `A`, as the exponent matrix over `basis`:
/// column `j` holds the coordinates of `v b_j v^-1`.
#[derive(Clone, Debug)]
pub struct ConjugationAction {
    pub basis: AbelianBasis,
    pub matrix: HomMatrix,
}

impl ConjugationAction {
    pub fn new<G: BlackBoxGroup + ?Sized>(g: &G, basis: AbelianBasis, v: &Element) -> Result<Self> {
        let s = basis.len();
        let mut cols = Vec::with_capacity(s);
        for b in &basis.elements {
            cols.push(decompose_over_basis(g, &conjugate(g, v, b)?, &basis)?);
        }
        let entries = (0..s).map(|i| (0..s).map(|j| cols[j][i]).collect()).collect();
        let matrix = HomMatrix::new(entries, basis.orders.clone(), basis.orders.clone());
        Ok(ConjugationAction { basis, matrix })
    }

    pub fn order(&self) -> u64 {
        self.matrix.order()
    }
}

/// Basis positions grouped by prime-power order, `(p, p^f, indices)`.
pub fn homocyclic_types(orders: &[u64]) -> Vec<(u64, u64, Vec<usize>)> {
    let mut out: Vec<(u64, u64, Vec<usize>)> = Vec::new();
    for (i, &q) in orders.iter().enumerate() {
        match out.iter_mut().find(|t| t.1 == q) {
            Some(t) => t.2.push(i),
            None => {
                let p = arith::prime_divisors(q)[0];
                out.push((p, q, vec![i]));
            }
        }
    }
    out
}

/// One matrix over `GF(p)` per homocyclic type: the type's diagonal block
/// of the exponent matrix, reduced mod `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiImage {
    pub types: Vec<(u64, u64, Vec<usize>)>,
    pub mats: Vec<Matrix<PrimeField>>,
}

pub fn phi_image(h: &HomMatrix) -> Result<PhiImage> {
    let types = homocyclic_types(h.source_orders());
    let mut mats = Vec::with_capacity(types.len());
    for (p, _, idx) in &types {
        let f = PrimeField::new(*p)?;
        let rows: Vec<Vec<i64>> = idx
            .iter()
            .map(|&i| idx.iter().map(|&j| (h.get(i, j) % p) as i64).collect())
            .collect();
        let m = Matrix::from_ints(&f, &rows)?;
        if !m.is_invertible() {
            return Err(Error::Promise("automorphism order is not coprime with |A|".into()));
        }
        mats.push(m);
    }
    Ok(PhiImage { types, mats })
}

/// Everything about one group the tester needs; reusable across comparisons.
#[derive(Clone, Debug)]
pub struct IsoContext {
    pub decomposition: StandardDecomposition,
    pub action: ConjugationAction,
    pub phi: PhiImage,
    pub order: u64,
}

impl IsoContext {
    pub fn new<G: BlackBoxGroup + ?Sized>(g: &G) -> Result<Self> {
        let decomposition = standard_decompose(g)?;
        let basis = abelian_basis(g, &decomposition.a_gens)?;
        let order = basis.size() * decomposition.m;
        let action = ConjugationAction::new(g, basis, &decomposition.v)?;
        let phi = phi_image(&action.matrix)?;
        Ok(IsoContext {
            decomposition,
            action,
            phi,
            order,
        })
    }

    pub fn m(&self) -> u64 {
        self.decomposition.m
    }

    pub fn basis(&self) -> &AbelianBasis {
        &self.action.basis
    }

    /// Writes `g = x v^j` with `x` in `A`; returns coordinates of `x` and `j`.
    pub fn split<G: BlackBoxGroup + ?Sized>(&self, g: &G, x: &Element) -> Result<(Vec<u64>, u64)> {
        let v = &self.decomposition.v;
        let vinv = inverse(g, v)?;
        let mut cur = x.clone();
        for j in 0..self.m() {
            if self.basis().contains(&cur) {
                return Ok((decompose_over_basis(g, &cur, self.basis())?, j));
            }
            cur = g.multiply(&cur, &vinv)?;
        }
        Err(Error::NotInSubgroup)
    }
}

/// `mu(x v1^j) = chi(x) v2^{k j}`, stored as images of `G`'s generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isomorphism {
    /// Column `j`: coordinates over the second basis of the image of `b_j`.
    pub chi: HomMatrix,
    pub chi_images: Vec<Element>,
    pub k: u64,
    pub gen_images: Vec<Element>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoOutcome {
    Isomorphic(Isomorphism),
    NotIsomorphic(String),
}

impl IsoOutcome {
    pub fn is_isomorphic(&self) -> bool {
        matches!(self, IsoOutcome::Isomorphic(_))
    }
}

/// The sum `m^-1 sum_i beta^i C alpha^-i`, which intertwines `alpha` and `beta`.
fn average(c: &HomMatrix, alpha: &HomMatrix, beta: &HomMatrix, m: u64) -> Result<HomMatrix> {
    let a_inv = alpha.pow(m.max(1) - 1);
    let mut total = HomMatrix::zero(c.target_orders().to_vec(), c.source_orders().to_vec());
    let mut left = HomMatrix::identity(c.target_orders().to_vec());
    let mut right = HomMatrix::identity(c.source_orders().to_vec());
    for _ in 0..m.max(1) {
        total = total.add(&left.compose(c).compose(&right));
        left = left.compose(beta);
        right = right.compose(&a_inv);
    }
    let exp = arith::lcm_all(c.target_orders().iter().copied()).max(1);
    let inv = arith::inv_mod(m.max(1) % exp, exp)
        .ok_or_else(|| Error::Promise("m is not coprime with |A|".into()))?;
    Ok(total.scale(inv))
}

/// `chi: A1 -> A2` with `chi phi1 = phi2^k chi`, built from block
/// conjugators `X_t` (`X_t Phi1_t = Phi2_t^k X_t`); verified before return.
pub fn chi_from_conjugator(c1: &IsoContext, c2: &IsoContext, xs: &[Matrix<PrimeField>], k: u64) -> Result<HomMatrix> {
    let orders = c1.basis().orders.clone();
    if orders != c2.basis().orders {
        return Err(Error::DimensionMismatch("abelian parts differ".into()));
    }
    let s = orders.len();
    let mut entries = vec![vec![0u64; s]; s];
    for ((_, _, idx), x) in c1.phi.types.iter().zip(xs) {
        let ints = x.to_ints();
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                entries[i][j] = ints[a][b];
            }
        }
    }
    let c0 = HomMatrix::new(entries, orders.clone(), orders.clone());
    let alpha = &c1.action.matrix;
    let beta = c2.action.matrix.pow(k);
    let chi = average(&c0, alpha, &beta, c1.m().max(c2.m()))?;
    if chi.compose(alpha) != beta.compose(&chi) {
        return Err(Error::Verification("chi does not intertwine the actions".into()));
    }
    phi_image(&chi).map_err(|_| Error::Verification("chi is not invertible".into()))?;
    Ok(chi)
}

/// Decides `G ~= H`; positive answers carry a verified isomorphism.
pub fn group_isomorphism<G, H>(g: &G, h: &H) -> Result<IsoOutcome>
where
    G: BlackBoxGroup + ?Sized,
    H: BlackBoxGroup + ?Sized,
{
    let c1 = IsoContext::new(g)?;
    let c2 = IsoContext::new(h)?;
    isomorphism_with(g, &c1, h, &c2)
}

pub fn isomorphism_with<G, H>(g: &G, c1: &IsoContext, h: &H, c2: &IsoContext) -> Result<IsoOutcome>
where
    G: BlackBoxGroup + ?Sized,
    H: BlackBoxGroup + ?Sized,
{
    if c1.order != c2.order {
        return Ok(IsoOutcome::NotIsomorphic(format!("orders differ: {} vs {}", c1.order, c2.order)));
    }
    let m = c1.m();
    if m != c2.m() {
        return Ok(IsoOutcome::NotIsomorphic(format!("cyclic parts differ: {m} vs {}", c2.m())));
    }
    if c1.basis().orders != c2.basis().orders {
        return Ok(IsoOutcome::NotIsomorphic(format!(
            "abelian parts differ: {:?} vs {:?}",
            c1.basis().orders,
            c2.basis().orders
        )));
    }
    if c1.action.order() != c2.action.order() {
        return Ok(IsoOutcome::NotIsomorphic(format!(
            "actions have different orders: {} vs {}",
            c1.action.order(),
            c2.action.order()
        )));
    }
    let blocks: Vec<_> = c1.phi.mats.iter().cloned().zip(c2.phi.mats.iter().cloned()).collect();
    let Some(sol) = dlog_up_to_conjugacy(&ConjLogInstance::new(blocks)?)? else {
        return Ok(IsoOutcome::NotIsomorphic("actions are not conjugate up to a unit power".into()));
    };
    if sol.scale != 1 {
        return Err(Error::Verification("projected actions have different orders".into()));
    }
    let candidates = sol.coset.lift(m).members();
    let mut last_err = None;
    for k in candidates {
        let xs: Vec<Matrix<PrimeField>> = c1
            .phi
            .mats
            .iter()
            .zip(&c2.phi.mats)
            .map(|(a, b)| conjugator(a, &b.pow(k as u128)))
            .collect::<Result<_>>()?;
        match chi_from_conjugator(c1, c2, &xs, k) {
            Ok(chi) => {
                let iso = assemble(g, c1, h, c2, chi, k)?;
                if verify_isomorphism(g, h, &iso) {
                    return Ok(IsoOutcome::Isomorphic(iso));
                }
                last_err = Some(Error::Verification("assembled map is not an isomorphism".into()));
            }
            Err(e) => last_err = Some(e),
        }
    }
    Err(last_err.unwrap_or_else(|| Error::Verification("no exponent produced an isomorphism".into())))
}

fn assemble<G, H>(g: &G, c1: &IsoContext, h: &H, c2: &IsoContext, chi: HomMatrix, k: u64) -> Result<Isomorphism>
where
    G: BlackBoxGroup + ?Sized,
    H: BlackBoxGroup + ?Sized,
{
    let b2 = c2.basis();
    let s = b2.len();
    let chi_images: Vec<Element> = (0..s)
        .map(|j| b2.combine(h, &chi.column(j)))
        .collect::<Result<_>>()?;
    let yk = power(h, &c2.decomposition.v, k)?;
    let mut gen_images = Vec::new();
    for x in g.generators() {
        let (coords, j) = c1.split(g, &x)?;
        let a = b2.combine(h, &chi.apply(&coords))?;
        gen_images.push(h.multiply(&a, &power(h, &yk, j)?)?);
    }
    Ok(Isomorphism {
        chi,
        chi_images,
        k,
        gen_images,
    })
}

/// Extends the generator images along the Cayley graph of `G` and checks
/// that the result is well defined and injective with `|G| = |H|`.
pub fn verify_isomorphism<G, H>(g: &G, h: &H, iso: &Isomorphism) -> bool
where
    G: BlackBoxGroup + ?Sized,
    H: BlackBoxGroup + ?Sized,
{
    verify_images(g, h, &iso.gen_images).unwrap_or(false)
}

/// Same check for an arbitrary table of generator images.
pub fn verify_images<G, H>(g: &G, h: &H, images: &[Element]) -> Result<bool>
where
    G: BlackBoxGroup + ?Sized,
    H: BlackBoxGroup + ?Sized,
{
    let gens = g.generators();
    if gens.len() != images.len() || images.iter().any(|x| !h.is_valid(x)) {
        return Ok(false);
    }
    let mut map: HashMap<Element, Element> = HashMap::from([(g.identity(), h.identity())]);
    let mut queue = VecDeque::from([g.identity()]);
    let limit = crate::blackbox::max_group_order();
    while let Some(u) = queue.pop_front() {
        let mu = map[&u].clone();
        for (x, img) in gens.iter().zip(images) {
            let ux = g.multiply(&u, x)?;
            let target = h.multiply(&mu, img)?;
            match map.get(&ux) {
                Some(t) if *t != target => return Ok(false),
                Some(_) => {}
                None => {
                    if map.len() as u64 >= limit {
                        return Err(Error::GuardExceeded {
                            what: "isomorphism check",
                            limit,
                        });
                    }
                    map.insert(ux.clone(), target);
                    queue.push_back(ux);
                }
            }
        }
    }
    let image: std::collections::HashSet<&Element> = map.values().collect();
    if image.len() != map.len() {
        return Ok(false);
    }
    Ok(elements(h)?.len() == map.len())
}

#[cfg(test)]
mod tests;
