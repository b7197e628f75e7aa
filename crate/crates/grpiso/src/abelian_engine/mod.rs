//! Algorithms for abelian subgroups of black-box groups: element orders,
//! prime-power bases, coordinates, coset intersection and hidden subgroups.

mod units;

use std::collections::{HashMap, HashSet, VecDeque};

use rand::Rng;

pub use units::UnitGroup;

use crate::arith;
use crate::blackbox::{inverse, is_abelian, max_group_order, power, BlackBoxGroup, Element};
use crate::error::{Error, Result};
use crate::intmat::{self, Lattice};

/// Largest order `order_of` will search for.
pub const ORDER_CAP: u64 = 1_000_000;

/// Order of `x`, by baby-step giant-step with a doubling window.
pub fn order_of<G: BlackBoxGroup + ?Sized>(g: &G, x: &Element) -> Result<u64> {
    if !g.is_valid(x) {
        return Err(Error::InvalidEncoding);
    }
    let e = g.identity();
    if *x == e {
        return Ok(1);
    }
    let mut baby: HashMap<Element, u64> = HashMap::new();
    let mut cur = e.clone();
    let mut s: u64 = 1;
    let mut built: u64 = 0;
    loop {
        // baby steps x^j for j < s
        while built < s {
            if built > 0 && cur == e {
                return Ok(built);
            }
            baby.entry(cur.clone()).or_insert(built);
            cur = g.multiply(&cur, x)?;
            built += 1;
        }
        if cur == e {
            return Ok(s);
        }
        // cur = x^s
        let mut giant = cur.clone();
        for i in 1..=s {
            if let Some(&j) = baby.get(&giant) {
                let n = i * s - j;
                if n > 0 {
                    return Ok(n);
                }
            }
            giant = g.multiply(&giant, &cur)?;
        }
        if s.saturating_mul(s) >= ORDER_CAP {
            return Err(Error::GuardExceeded {
                what: "element order",
                limit: ORDER_CAP,
            });
        }
        s *= 2;
    }
}

/// Discrete log of `target` to `base` (of known `order`), if it exists.
pub fn discrete_log<G: BlackBoxGroup + ?Sized>(
    g: &G,
    base: &Element,
    target: &Element,
    order: u64,
) -> Result<Option<u64>> {
    let m = (order as f64).sqrt().ceil().max(1.0) as u64;
    let mut table: HashMap<Element, u64> = HashMap::new();
    let mut cur = g.identity();
    for j in 0..m {
        table.entry(cur.clone()).or_insert(j);
        cur = g.multiply(&cur, base)?;
    }
    let step = power(g, base, order - m % order.max(1))?; // base^-m
    let mut gamma = target.clone();
    for i in 0..=m {
        if let Some(&j) = table.get(&gamma) {
            return Ok(Some((i * m + j) % order));
        }
        gamma = g.multiply(&gamma, &step)?;
    }
    Ok(None)
}

/// A basis of an abelian subgroup whose elements have prime-power order.
#[derive(Clone, Debug)]
pub struct AbelianBasis {
    pub elements: Vec<Element>,
    pub orders: Vec<u64>,
    lookup: HashMap<Element, Vec<u64>>,
}

impl AbelianBasis {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Order of the spanned subgroup.
    pub fn size(&self) -> u64 {
        self.orders.iter().product()
    }

    pub fn contains(&self, x: &Element) -> bool {
        self.lookup.contains_key(x)
    }

    pub fn members(&self) -> impl Iterator<Item = &Element> {
        self.lookup.keys()
    }

    /// `prod b_i^{v_i}`.
    pub fn combine<G: BlackBoxGroup + ?Sized>(&self, g: &G, v: &[u64]) -> Result<Element> {
        let mut acc = g.identity();
        for (b, &k) in self.elements.iter().zip(v) {
            if k != 0 {
                acc = g.multiply(&acc, &power(g, b, k)?)?;
            }
        }
        Ok(acc)
    }
}

/// Prime-power basis of `<gens>`; the generators must commute.
pub fn abelian_basis<G: BlackBoxGroup + ?Sized>(g: &G, gens: &[Element]) -> Result<AbelianBasis> {
    let e = g.identity();
    let mut xs: Vec<Element> = Vec::new();
    for x in gens {
        if !g.is_valid(x) {
            return Err(Error::InvalidEncoding);
        }
        if *x != e && !xs.contains(x) {
            xs.push(x.clone());
        }
    }
    if !is_abelian(g, &xs)? {
        return Err(Error::NonCommuting);
    }
    let t = xs.len();
    let ords = xs.iter().map(|x| order_of(g, x)).collect::<Result<Vec<u64>>>()?;

    // relation lattice of the generators, from the Cayley graph of <xs>
    let limit = max_group_order();
    let mut lat = Lattice::new(&ords);
    let mut seen: HashMap<Element, Vec<u64>> = HashMap::from([(e.clone(), vec![0; t])]);
    let mut queue = VecDeque::from([e.clone()]);
    while let Some(u) = queue.pop_front() {
        let a = seen[&u].clone();
        for i in 0..t {
            let y = g.multiply(&u, &xs[i])?;
            let mut ai = a.clone();
            ai[i] = (ai[i] + 1) % ords[i];
            match seen.get(&y) {
                Some(b) => {
                    if *b != ai {
                        let rel: Vec<i128> =
                            ai.iter().zip(b).map(|(p, q)| *p as i128 - *q as i128).collect();
                        lat.insert(&rel);
                    }
                }
                None => {
                    if seen.len() as u64 >= limit {
                        return Err(Error::GuardExceeded {
                            what: "subgroup size",
                            limit,
                        });
                    }
                    seen.insert(y.clone(), ai);
                    queue.push_back(y);
                }
            }
        }
    }
    let size = seen.len() as u64;

    let (d, _v, vinv) = intmat::smith(lat.rows());
    let mut basis: Vec<(u64, u64, Element)> = Vec::new();
    for (j, &dj) in d.iter().enumerate() {
        let dj = dj as u64;
        if dj <= 1 {
            continue;
        }
        let mut z = e.clone();
        for i in 0..t {
            let k = vinv[j][i].rem_euclid(ords[i] as i128) as u64;
            if k != 0 {
                z = g.multiply(&z, &power(g, &xs[i], k)?)?;
            }
        }
        for (p, a) in arith::factorize(dj)? {
            let q = p.pow(a);
            basis.push((p, q, power(g, &z, dj / q)?));
        }
    }
    basis.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
    let elements: Vec<Element> = basis.iter().map(|b| b.2.clone()).collect();
    let orders: Vec<u64> = basis.iter().map(|b| b.1).collect();

    // coordinates of every member
    let mut lookup: HashMap<Element, Vec<u64>> = HashMap::from([(e, vec![0; elements.len()])]);
    for (i, b) in elements.iter().enumerate() {
        let current: Vec<(Element, Vec<u64>)> = lookup.iter().map(|(k, v)| (k.clone(), v.clone())).collect();
        let mut step = b.clone();
        for k in 1..orders[i] {
            for (x, v) in &current {
                let mut w = v.clone();
                w[i] = k;
                lookup.insert(g.multiply(x, &step)?, w);
            }
            step = g.multiply(&step, b)?;
        }
    }
    if lookup.len() as u64 != size || orders.iter().product::<u64>() != size {
        return Err(Error::Verification("abelian basis does not span the subgroup".into()));
    }
    Ok(AbelianBasis {
        elements,
        orders,
        lookup,
    })
}

/// Coordinates of `x` over `basis`.
pub fn decompose_over_basis<G: BlackBoxGroup + ?Sized>(
    g: &G,
    x: &Element,
    basis: &AbelianBasis,
) -> Result<Vec<u64>> {
    let v = basis.lookup.get(x).ok_or(Error::NotInSubgroup)?;
    debug_assert_eq!(basis.combine(g, v)?, *x);
    let _ = g;
    Ok(v.clone())
}

/// A coset `rep * <gens>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetDescriptor {
    pub rep: Element,
    pub gens: Vec<Element>,
}

impl CosetDescriptor {
    /// All elements of the coset (small cases only).
    pub fn elements<G: BlackBoxGroup + ?Sized>(&self, g: &G) -> Result<HashSet<Element>> {
        crate::blackbox::closure(g, &self.gens)?
            .iter()
            .map(|h| g.multiply(&self.rep, h))
            .collect()
    }
}

/// `x <gens1>  ∩  y <gens2>` inside an abelian group.
pub fn coset_intersection<G: BlackBoxGroup + ?Sized>(
    g: &G,
    x: &Element,
    gens1: &[Element],
    y: &Element,
    gens2: &[Element],
) -> Result<Option<CosetDescriptor>> {
    let mut all: Vec<Element> = vec![x.clone(), y.clone()];
    all.extend_from_slice(gens1);
    all.extend_from_slice(gens2);
    if !is_abelian(g, &all)? {
        return Err(Error::NonCommuting);
    }
    let w = g.multiply(&inverse(g, x)?, y)?;
    // source columns: w, gens1, gens2
    let mut src: Vec<Element> = vec![w];
    src.extend_from_slice(gens1);
    src.extend_from_slice(gens2);
    let basis = abelian_basis(g, &src)?;
    let s = basis.len();
    let n = src.len();
    let src_orders = src.iter().map(|z| order_of(g, z)).collect::<Result<Vec<u64>>>()?;
    let mut moduli = basis.orders.clone();
    moduli.extend_from_slice(&src_orders);
    let mut lat = Lattice::new(&moduli);
    for (j, z) in src.iter().enumerate() {
        let mut v = vec![0i128; s + n];
        for (i, c) in decompose_over_basis(g, z, &basis)?.into_iter().enumerate() {
            v[i] = c as i128;
        }
        v[s + j] = 1;
        lat.insert(&v);
    }
    let first = lat.row(s);
    if first[s] != 1 {
        return Ok(None);
    }
    // w = prod gens1^{-a_i} * prod gens2^{-b_j}, so x * prod gens1^{-a_i} lies in both
    let mut rep = x.clone();
    for (i, h) in gens1.iter().enumerate() {
        let o = src_orders[1 + i];
        let k = (-first[s + 1 + i]).rem_euclid(o as i128) as u64;
        rep = g.multiply(&rep, &power(g, h, k)?)?;
    }
    let e = g.identity();
    let mut gens = Vec::new();
    for k in s + 1..s + n {
        let row = lat.row(k);
        let mut z = e.clone();
        for (i, h) in gens1.iter().enumerate() {
            let o = src_orders[1 + i];
            let c = row[s + 1 + i].rem_euclid(o as i128) as u64;
            z = g.multiply(&z, &power(g, h, c)?)?;
        }
        if z != e && !gens.contains(&z) {
            gens.push(z);
        }
    }
    Ok(Some(CosetDescriptor { rep, gens }))
}

/// How `hidden_subgroup` finds the kernel.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HspBackend {
    /// Uses that the oracle is a homomorphism into an abelian group.
    Structured,
    /// Enumerates the whole domain.
    Exhaustive,
    /// Simulated Fourier sampling.
    QuantumSim,
}

impl std::str::FromStr for HspBackend {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "structured" => Ok(HspBackend::Structured),
            "exhaustive" => Ok(HspBackend::Exhaustive),
            "quantum" | "quantum_sim" | "quantum-sim" => Ok(HspBackend::QuantumSim),
            _ => Err(Error::InvalidSpec(format!("unknown backend {s}"))),
        }
    }
}

pub const EXHAUSTIVE_CAP: u64 = 1_000_000;

fn domain_size(orders: &[u64]) -> Option<u64> {
    orders.iter().try_fold(1u64, |acc, &n| acc.checked_mul(n))
}

/// Mixed-radix digits, last coordinate fastest.
fn unrank(mut r: u64, orders: &[u64]) -> Vec<u64> {
    let mut v = vec![0; orders.len()];
    for (slot, &n) in v.iter_mut().zip(orders).rev() {
        *slot = r % n;
        r /= n;
    }
    v
}

/// Hidden subgroup of `P = Z_{n_1} x ... x Z_{n_k}` for an oracle `f` into
/// the abelian black-box group `g` that is constant exactly on cosets of it.
/// Returns generators as vectors over `P`.
pub fn hidden_subgroup<G, F, R>(
    g: &G,
    orders: &[u64],
    f: F,
    backend: HspBackend,
    rng: &mut R,
) -> Result<Vec<Vec<u64>>>
where
    G: BlackBoxGroup + ?Sized,
    F: Fn(&[u64]) -> Result<Element>,
    R: Rng + ?Sized,
{
    let k = orders.len();
    let zero = vec![0u64; k];
    let f0 = f(&zero)?;
    let gens = match backend {
        HspBackend::Structured => {
            let f0inv = inverse(g, &f0)?;
            let mut images = Vec::with_capacity(k);
            for j in 0..k {
                let mut ej = zero.clone();
                ej[j] = 1 % orders[j].max(1);
                images.push(g.multiply(&f(&ej)?, &f0inv)?);
            }
            let basis = abelian_basis(g, &images)?;
            let coords = images
                .iter()
                .map(|h| decompose_over_basis(g, h, &basis))
                .collect::<Result<Vec<_>>>()?;
            intmat::kernel(&coords, &basis.orders, orders)
        }
        HspBackend::Exhaustive => {
            let size = domain_size(orders).filter(|&s| s <= EXHAUSTIVE_CAP).ok_or(Error::GuardExceeded {
                what: "hidden subgroup domain",
                limit: EXHAUSTIVE_CAP,
            })?;
            let mut kernel_elems = Vec::new();
            let mut classes: HashMap<Element, u64> = HashMap::new();
            for r in 0..size {
                let v = unrank(r, orders);
                let fv = f(&v)?;
                if fv == f0 {
                    kernel_elems.push(v);
                }
                *classes.entry(fv).or_default() += 1;
            }
            let kn = kernel_elems.len() as u64;
            if classes.values().any(|&c| c != kn) {
                return Err(Error::Promise("level sets have unequal sizes".into()));
            }
            reduce_generators(&kernel_elems, orders)
        }
        HspBackend::QuantumSim => {
            let mut labels: HashMap<Element, usize> = HashMap::new();
            let label = |v: &[u64], labels: &mut HashMap<Element, usize>| -> Result<usize> {
                let fv = f(v)?;
                let n = labels.len();
                Ok(*labels.entry(fv).or_insert(n))
            };
            let size = domain_size(orders).unwrap_or(u64::MAX);
            if size > crate::quantum_sim::MAX_STATE {
                return Err(Error::GuardExceeded {
                    what: "simulated register",
                    limit: crate::quantum_sim::MAX_STATE,
                });
            }
            let mut table = Vec::with_capacity(size as usize);
            for r in 0..size {
                table.push(label(&unrank(r, orders), &mut labels)?);
            }
            crate::quantum_sim::hsp_solve(orders, &table, rng)?
        }
    };
    // every generator must lie in a level set of f
    for v in &gens {
        if f(v)? != f0 {
            return Err(Error::Promise("oracle is not constant on the hidden subgroup".into()));
        }
    }
    Ok(gens)
}

/// A small generating set for the subgroup of `Z_{n_1} x ... x Z_{n_k}`
/// spanned by `vs`.
pub fn reduce_generators(vs: &[Vec<u64>], orders: &[u64]) -> Vec<Vec<u64>> {
    let mut lat = Lattice::new(orders);
    for v in vs {
        lat.insert(&v.iter().map(|&x| x as i128).collect::<Vec<_>>());
    }
    lat.rows()
        .iter()
        .map(|row| {
            row.iter()
                .zip(orders)
                .map(|(x, &n)| x.rem_euclid(n.max(1) as i128) as u64)
                .collect::<Vec<u64>>()
        })
        .filter(|v| v.iter().any(|&x| x != 0))
        .collect()
}

/// All members of the subgroup of `Z_{n_1} x ... x Z_{n_k}` spanned by `gens`.
pub fn span(gens: &[Vec<u64>], orders: &[u64]) -> HashSet<Vec<u64>> {
    let zero = vec![0u64; orders.len()];
    let mut out = HashSet::from([zero.clone()]);
    let mut queue = VecDeque::from([zero]);
    while let Some(v) = queue.pop_front() {
        for h in gens {
            let w: Vec<u64> = v.iter().zip(h).zip(orders).map(|((a, b), n)| (a + b) % n).collect();
            if out.insert(w.clone()) {
                queue.push_back(w);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blackbox::{build_group, closure, ClassSGroupSpec};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn cyclic(n: u64) -> crate::blackbox::SpecGroup {
        build_group(&ClassSGroupSpec::abelian(vec![n], 1).with_seed(11)).unwrap()
    }

    #[test]
    fn orders_in_cyclic_group() {
        for n in [1u64, 2, 7, 12, 97, 360] {
            let g = cyclic(n);
            let x = g.generators()[0].clone();
            for k in 0..n.min(40) {
                let y = power(&g, &x, k).unwrap();
                assert_eq!(order_of(&g, &y).unwrap(), n / arith::gcd(k, n));
            }
        }
    }

    #[test]
    fn discrete_logs() {
        let g = cyclic(91);
        let x = g.generators()[0].clone();
        for k in [0u64, 1, 5, 50, 90] {
            let y = power(&g, &x, k).unwrap();
            assert_eq!(discrete_log(&g, &x, &y, 91).unwrap(), Some(k));
        }
        let sq = power(&g, &x, 7).unwrap();
        assert_eq!(discrete_log(&g, &sq, &x, 13).unwrap(), None);
    }

    #[test]
    fn basis_of_product() {
        let g = build_group(&ClassSGroupSpec::abelian(vec![12, 18], 1).with_seed(5)).unwrap();
        let b = abelian_basis(&g, &g.generators()).unwrap();
        let mut o = b.orders.clone();
        o.sort();
        assert_eq!(o, vec![2, 3, 4, 9]);
        assert_eq!(b.size(), 216);
        for x in closure(&g, &g.generators()).unwrap() {
            let v = decompose_over_basis(&g, &x, &b).unwrap();
            assert_eq!(b.combine(&g, &v).unwrap(), x);
        }
    }

    #[test]
    fn basis_errors() {
        let s3 = build_group(&ClassSGroupSpec::new(vec![3], 2, vec![vec![2]], 3)).unwrap();
        assert_eq!(abelian_basis(&s3, &s3.generators()).unwrap_err(), Error::NonCommuting);
        let a = s3.a_generators();
        let b = abelian_basis(&s3, &a).unwrap();
        assert_eq!(decompose_over_basis(&s3, &s3.y(), &b).unwrap_err(), Error::NotInSubgroup);
        assert_eq!(abelian_basis(&s3, &[]).unwrap().size(), 1);
    }

    #[test]
    fn coset_intersection_in_z12() {
        let g = cyclic(12);
        let one = g.generators()[0].clone();
        let el = |k: u64| power(&g, &one, k).unwrap();
        let c = coset_intersection(&g, &el(1), &[el(4)], &el(3), &[el(6)]).unwrap().unwrap();
        assert_eq!(c.elements(&g).unwrap(), HashSet::from([el(9)]));
        assert!(coset_intersection(&g, &el(1), &[el(2)], &el(0), &[el(2)]).unwrap().is_none());
    }

    #[test]
    fn coset_intersection_brute_force() {
        let g = build_group(&ClassSGroupSpec::abelian(vec![4, 6, 3], 1).with_seed(9)).unwrap();
        let all = closure(&g, &g.generators()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..60 {
            let pick = |rng: &mut ChaCha8Rng| all[rng.gen_range(0..all.len())].clone();
            let x = pick(&mut rng);
            let y = pick(&mut rng);
            let g1: Vec<Element> = (0..rng.gen_range(0..3)).map(|_| pick(&mut rng)).collect();
            let g2: Vec<Element> = (0..rng.gen_range(0..3)).map(|_| pick(&mut rng)).collect();
            let c1 = CosetDescriptor { rep: x.clone(), gens: g1.clone() }.elements(&g).unwrap();
            let c2 = CosetDescriptor { rep: y.clone(), gens: g2.clone() }.elements(&g).unwrap();
            let expect: HashSet<Element> = c1.intersection(&c2).cloned().collect();
            match coset_intersection(&g, &x, &g1, &y, &g2).unwrap() {
                None => assert!(expect.is_empty()),
                Some(c) => assert_eq!(c.elements(&g).unwrap(), expect),
            }
        }
    }

    #[test]
    fn hidden_subgroup_backends_agree() {
        // f: Z_12 x Z_6 -> Z_12, (a, b) -> 2a + 4b
        let g = cyclic(12);
        let one = g.generators()[0].clone();
        let f = |v: &[u64]| power(&g, &one, (2 * v[0] + 4 * v[1]) % 12);
        let orders = [12u64, 6];
        let expect: HashSet<Vec<u64>> = (0..12u64)
            .flat_map(|a| (0..6u64).map(move |b| vec![a, b]))
            .filter(|v| (2 * v[0] + 4 * v[1]) % 12 == 0)
            .collect();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for backend in [HspBackend::Structured, HspBackend::Exhaustive, HspBackend::QuantumSim] {
            let gens = hidden_subgroup(&g, &orders, &f, backend, &mut rng).unwrap();
            assert_eq!(span(&gens, &orders), expect, "{backend:?}");
        }
    }

    #[test]
    fn hidden_subgroup_detects_broken_promise() {
        let g = cyclic(12);
        let one = g.generators()[0].clone();
        // not constant on cosets of any subgroup
        let f = |v: &[u64]| power(&g, &one, u64::from(v[0] == 1));
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(matches!(
            hidden_subgroup(&g, &[4], &f, HspBackend::Exhaustive, &mut rng),
            Err(Error::Promise(_))
        ));
    }

    #[test]
    fn unit_group() {
        let u = UnitGroup::new(20).unwrap();
        assert_eq!(crate::blackbox::group_order(&u).unwrap(), 8);
        let three = u.encode(3);
        assert_eq!(order_of(&u, &three).unwrap(), 4);
        assert!(!u.is_valid(&u.encode(4)));
        let b = abelian_basis(&u, &u.generators()).unwrap();
        assert_eq!(b.size(), 8);
    }
}
