//! Set discrete logarithm: given multiset lists `S_h`, `T_h` in finite
//! multiplicative groups, find every unit `k` with `T_h^k = S_h` for all `h`.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt::Debug;
use std::hash::Hash;

use rand::Rng;

use crate::abelian_engine::{abelian_basis, coset_intersection, UnitGroup};
use crate::arith;
use crate::blackbox::{closure, power, BlackBoxGroup, Element};
use crate::error::{Error, Result};
use crate::field_poly::{ExtField, ExtFieldElem, FiniteField};

/// Stabilizers are brute-forced over `Z_m^*` up to this modulus.
pub const BRUTE_FORCE_CAP: u64 = 1_000_000;

/// What the solver needs from an element: multiplication, powers, order.
pub trait SetElement: Clone + Ord + Hash + Debug {
    fn mul(&self, other: &Self) -> Self;
    fn pow(&self, k: u64) -> Self;
    fn order(&self) -> Result<u64>;
}

impl SetElement for ExtFieldElem {
    fn mul(&self, other: &Self) -> Self {
        self.field().mul(self, other)
    }
    fn pow(&self, k: u64) -> Self {
        ExtFieldElem::pow(self, k as u128)
    }
    fn order(&self) -> Result<u64> {
        self.mult_order()
    }
}

/// An element of an arbitrary black-box group, for the generic version.
pub struct GroupElem<'a, G: BlackBoxGroup + ?Sized> {
    pub group: &'a G,
    pub elem: Element,
}

impl<'a, G: BlackBoxGroup + ?Sized> GroupElem<'a, G> {
    pub fn new(group: &'a G, elem: Element) -> Self {
        GroupElem { group, elem }
    }
}

impl<G: BlackBoxGroup + ?Sized> Clone for GroupElem<'_, G> {
    fn clone(&self) -> Self {
        GroupElem::new(self.group, self.elem.clone())
    }
}

impl<G: BlackBoxGroup + ?Sized> Debug for GroupElem<'_, G> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?}", self.elem)
    }
}

impl<G: BlackBoxGroup + ?Sized> PartialEq for GroupElem<'_, G> {
    fn eq(&self, other: &Self) -> bool {
        self.elem == other.elem
    }
}
impl<G: BlackBoxGroup + ?Sized> Eq for GroupElem<'_, G> {}
impl<G: BlackBoxGroup + ?Sized> PartialOrd for GroupElem<'_, G> {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl<G: BlackBoxGroup + ?Sized> Ord for GroupElem<'_, G> {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.elem.cmp(&other.elem)
    }
}
impl<G: BlackBoxGroup + ?Sized> Hash for GroupElem<'_, G> {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.elem.hash(state)
    }
}

impl<G: BlackBoxGroup + ?Sized> SetElement for GroupElem<'_, G> {
    fn mul(&self, other: &Self) -> Self {
        let elem = self
            .group
            .multiply(&self.elem, &other.elem)
            .expect("elements of one group");
        GroupElem::new(self.group, elem)
    }
    fn pow(&self, k: u64) -> Self {
        GroupElem::new(self.group, power(self.group, &self.elem, k).expect("valid element"))
    }
    fn order(&self) -> Result<u64> {
        crate::abelian_engine::order_of(self.group, &self.elem)
    }
}

/// A sorted multiset.
pub type Multiset<T> = Vec<T>;

pub fn canonical<T: SetElement>(mut v: Vec<T>) -> Multiset<T> {
    v.sort();
    v
}

pub fn power_multiset<T: SetElement>(s: &[T], k: u64) -> Multiset<T> {
    canonical(s.iter().map(|x| x.pow(k)).collect())
}

/// The coset `rep * <gens>` inside `Z_m^*`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionCoset {
    pub m: u64,
    pub rep: u64,
    pub gens: Vec<u64>,
}

impl SolutionCoset {
    /// All members, ascending (in `1..=m`, so `m = 1` gives `[1]`).
    pub fn members(&self) -> Vec<u64> {
        let m = self.m;
        let mut seen: HashSet<u64> = HashSet::from([1 % m]);
        let mut stack = vec![1 % m];
        while let Some(x) = stack.pop() {
            for &g in &self.gens {
                let y = arith::mul_mod(x, g, m);
                if seen.insert(y) {
                    stack.push(y);
                }
            }
        }
        let mut out: Vec<u64> = seen
            .into_iter()
            .map(|h| {
                let k = arith::mul_mod(self.rep, h, m);
                if k == 0 {
                    m
                } else {
                    k
                }
            })
            .collect();
        out.sort();
        out
    }

    pub fn size(&self) -> usize {
        self.members().len()
    }

    /// The exponents `scale * j mod scale*m`, `j` in the coset, in
    /// `1..=scale*m`; these are all solutions before normalization.
    pub fn exponents(&self, scale: u64) -> Vec<u64> {
        let big = self.m * scale;
        let mut out: Vec<u64> = self
            .members()
            .into_iter()
            .map(|j| match (scale * j) % big {
                0 => big,
                k => k,
            })
            .collect();
        out.sort();
        out.dedup();
        out
    }

    fn subgroup_residues(&self) -> HashSet<u64> {
        let m = self.m;
        let mut seen: HashSet<u64> = HashSet::from([1 % m]);
        let mut stack = vec![1 % m];
        while let Some(x) = stack.pop() {
            for &g in &self.gens {
                let y = arith::mul_mod(x, g, m);
                if seen.insert(y) {
                    stack.push(y);
                }
            }
        }
        seen
    }

    /// Preimage under reduction `Z_big^* -> Z_m^*`, for `m | big`.
    pub fn lift(&self, big: u64) -> SolutionCoset {
        debug_assert_eq!(big % self.m, 0);
        let m = self.m;
        let sub = self.subgroup_residues();
        let coset: HashSet<u64> = sub.iter().map(|h| arith::mul_mod(self.rep, *h, m)).collect();
        let units = arith::units(big);
        let rep = units
            .iter()
            .copied()
            .find(|k| coset.contains(&(k % m)))
            .map_or(1, |k| k.max(1));
        let sub_big: Vec<u64> = units.into_iter().filter(|k| sub.contains(&(k % m))).collect();
        SolutionCoset {
            m: big,
            rep,
            gens: generators_of(&sub_big, big),
        }
    }
}

/// Discrete log `a` with `base^a = target`, base of order `n`.
pub fn dlog<T: SetElement>(base: &T, target: &T, n: u64) -> Option<u64> {
    let s = (n as f64).sqrt().ceil().max(1.0) as u64;
    let mut table: HashMap<T, u64> = HashMap::new();
    let mut cur = base.pow(0);
    for j in 0..s {
        table.entry(cur.clone()).or_insert(j);
        cur = cur.mul(base);
    }
    let step = base.pow((n - s % n) % n);
    let mut gamma = target.clone();
    for i in 0..=s {
        if let Some(&j) = table.get(&gamma) {
            return Some((i * s + j) % n);
        }
        gamma = gamma.mul(&step);
    }
    None
}

fn lcm_orders<T: SetElement>(lists: &[Vec<T>]) -> Result<u64> {
    let mut m = 1;
    for l in lists {
        for x in l {
            m = arith::lcm(m, x.order()?);
        }
    }
    Ok(m)
}

/// Every `k` in `Z_m^*` whose class mod `o` lies in `small` (a subgroup of `Z_o^*`).
fn lift_subgroup(small: &HashSet<u64>, o: u64, m: u64) -> Vec<u64> {
    arith::units(m).into_iter().filter(|k| small.contains(&(k % o))).collect()
}

/// A generating set for a subgroup of `Z_m^*` given by its members.
fn generators_of(members: &[u64], m: u64) -> Vec<u64> {
    let mut inside: HashSet<u64> = HashSet::from([1 % m]);
    let mut gens = Vec::new();
    for &u in members {
        if inside.contains(&u) {
            continue;
        }
        gens.push(u);
        let mut stack: Vec<u64> = inside.iter().copied().collect();
        while let Some(x) = stack.pop() {
            for &g in &gens {
                let y = arith::mul_mod(x, g, m);
                if inside.insert(y) {
                    stack.push(y);
                }
            }
        }
    }
    gens
}

/// Generators of `{k in Z_m^* : T^k = T}` (elements of `T` share one order dividing `m`).
pub fn stabilizer_subgroup<T: SetElement>(t: &[T], m: u64) -> Result<Vec<u64>> {
    if m > BRUTE_FORCE_CAP {
        return Err(Error::GuardExceeded {
            what: "stabilizer modulus",
            limit: BRUTE_FORCE_CAP,
        });
    }
    let o = common_order(t)?;
    if m % o != 0 {
        return Err(Error::Promise(format!("element order {o} does not divide {m}")));
    }
    let t = canonical(t.to_vec());
    let small: HashSet<u64> = arith::units(o)
        .into_iter()
        .filter(|&k| power_multiset(&t, k) == t)
        .collect();
    Ok(generators_of(&lift_subgroup(&small, o, m), m))
}

/// The stabilizer found by Fourier sampling over `Z_m^*` (small `m` only).
pub fn stabilizer_subgroup_hsp<T: SetElement, R: Rng + ?Sized>(t: &[T], m: u64, rng: &mut R) -> Result<Vec<u64>> {
    common_order(t)?;
    let units = UnitGroup::new(m)?;
    let basis = abelian_basis(&units, &units.generators())?;
    let orders = basis.orders.clone();
    let size: u64 = orders.iter().product();
    let t = canonical(t.to_vec());
    // label each exponent vector by the multiset T^k it produces
    let mut labels = Vec::with_capacity(size as usize);
    let mut ids: BTreeMap<Multiset<T>, usize> = BTreeMap::new();
    for r in 0..size {
        let mut rest = r;
        let mut v = vec![0u64; orders.len()];
        for (slot, &n) in v.iter_mut().zip(&orders).rev() {
            *slot = rest % n;
            rest /= n;
        }
        let k = units.decode(&basis.combine(&units, &v)?)?;
        let n = ids.len();
        labels.push(*ids.entry(power_multiset(&t, k)).or_insert(n));
    }
    let gens = crate::quantum_sim::hsp_solve(&orders, &labels, rng)?;
    gens.iter()
        .map(|v| units.decode(&basis.combine(&units, v)?))
        .filter(|k| !matches!(k, Ok(1)))
        .collect()
}

fn common_order<T: SetElement>(t: &[T]) -> Result<u64> {
    let mut o = None;
    for x in t {
        let ox = x.order()?;
        match o {
            None => o = Some(ox),
            Some(p) if p != ox => {
                return Err(Error::Promise("mixed element orders".into()));
            }
            _ => {}
        }
    }
    Ok(o.unwrap_or(1))
}

/// Some `k` in `Z_m^*` with `T^k = S`, by discrete logs of `S`'s first element.
pub fn coset_representative<T: SetElement>(s: &[T], t: &[T], m: u64) -> Result<Option<u64>> {
    if s.len() != t.len() {
        return Ok(None);
    }
    if s.is_empty() {
        return Ok(Some(1));
    }
    let o = common_order(t)?;
    if common_order(s)? != o || m % o != 0 {
        return Ok(None);
    }
    let s = canonical(s.to_vec());
    let x1 = &s[0];
    let mut tried = HashSet::new();
    for y in t {
        if !tried.insert(y.clone()) {
            continue;
        }
        // y^alpha = x1 pins alpha mod o for any solution sending y to x1
        let Some(alpha) = dlog(y, x1, o) else { continue };
        if arith::gcd(alpha, o) != 1 {
            continue;
        }
        if power_multiset(t, alpha) == s {
            let k = arith::lift_unit(alpha, o, m);
            debug_assert_eq!(arith::gcd(k, m.max(2)), 1);
            return Ok(Some(k));
        }
    }
    Ok(None)
}

/// Solves the instance `T_h^k = S_h`; returns the whole solution coset in
/// `Z_m^*`, `m = lcm` of the orders in `S`, after replacing `T` by
/// `T^{m_T/m_S}`.
pub fn set_discrete_log<T: SetElement>(s_list: &[Vec<T>], t_list: &[Vec<T>]) -> Result<Option<SolutionCoset>> {
    if s_list.len() != t_list.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} S-lists vs {} T-lists",
            s_list.len(),
            t_list.len()
        )));
    }
    if s_list.iter().zip(t_list).any(|(s, t)| s.len() != t.len()) {
        return Ok(None);
    }
    let ms = lcm_orders(s_list)?;
    let mt = lcm_orders(t_list)?;
    if mt % ms != 0 {
        return Ok(None);
    }
    let t_list: Vec<Vec<T>> = if mt != ms {
        t_list.iter().map(|t| power_multiset(t, mt / ms)).collect()
    } else {
        t_list.to_vec()
    };
    let m = ms;

    let units = UnitGroup::new(m)?;
    let mut rep = units.identity();
    let mut gens = units.generators();
    for (s, t) in s_list.iter().zip(&t_list) {
        let mut sb: BTreeMap<u64, Vec<T>> = BTreeMap::new();
        let mut tb: BTreeMap<u64, Vec<T>> = BTreeMap::new();
        for x in s {
            sb.entry(x.order()?).or_default().push(x.clone());
        }
        for y in t {
            tb.entry(y.order()?).or_default().push(y.clone());
        }
        if sb.len() != tb.len() || sb.iter().zip(&tb).any(|((a, u), (b, v))| a != b || u.len() != v.len()) {
            return Ok(None);
        }
        for (o, sblock) in sb {
            if o == 1 {
                continue;
            }
            let tblock = &tb[&o];
            let Some(k) = coset_representative(&sblock, tblock, m)? else {
                return Ok(None);
            };
            let stab: Vec<Element> = stabilizer_subgroup(tblock, m)?
                .into_iter()
                .map(|g| units.encode(g))
                .collect();
            match coset_intersection(&units, &rep, &gens, &units.encode(k), &stab)? {
                Some(c) => {
                    rep = c.rep;
                    gens = c.gens;
                }
                None => return Ok(None),
            }
        }
    }
    let rep = match units.decode(&rep)? {
        0 => 1,
        k => k,
    };
    let gens: Vec<u64> = gens.iter().map(|g| units.decode(g)).collect::<Result<_>>()?;
    // hard post-condition
    for (s, t) in s_list.iter().zip(&t_list) {
        if power_multiset(t, rep) != canonical(s.clone()) {
            return Err(Error::Verification("set discrete log representative".into()));
        }
    }
    Ok(Some(SolutionCoset { m, rep, gens }))
}

/// All of `Z_m^*`'s members as a sorted list, for comparisons.
pub fn full_unit_group(m: u64) -> Result<Vec<u64>> {
    let u = UnitGroup::new(m)?;
    let mut v: Vec<u64> = closure(&u, &u.generators())?
        .iter()
        .map(|e| u.decode(e).map(|k| if k == 0 { m } else { k }))
        .collect::<Result<_>>()?;
    v.sort();
    Ok(v)
}

/// One block of an instance file: a field and the two multisets.
#[derive(Clone, Debug)]
pub struct SetDlogBlock {
    pub field: ExtField,
    pub s: Vec<ExtFieldElem>,
    pub t: Vec<ExtFieldElem>,
}

/// Instance text: per block a `p d` line, then the `S` line and the `T`
/// line, elements separated by spaces, coefficients by commas (low first).
pub fn parse_instance(text: &str) -> Result<Vec<SetDlogBlock>> {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap().trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect();
    if lines.len() % 3 != 0 {
        return Err(Error::Parse {
            line: lines.last().map_or(1, |l| l.0),
            msg: "expected blocks of three lines".into(),
        });
    }
    let mut out = Vec::new();
    for chunk in lines.chunks(3) {
        let (ln, header) = chunk[0];
        let nums: Vec<u64> = header
            .split_whitespace()
            .map(|t| t.parse())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::Parse {
                line: ln,
                msg: "expected `p d`".into(),
            })?;
        if nums.len() != 2 {
            return Err(Error::Parse {
                line: ln,
                msg: "expected `p d`".into(),
            });
        }
        let field = ExtField::canonical(nums[0], nums[1] as u32)?;
        let parse_line = |(ln, l): (usize, &str)| -> Result<Vec<ExtFieldElem>> {
            l.split_whitespace()
                .map(|tok| parse_elem(&field, tok).map_err(|msg| Error::Parse { line: ln, msg }))
                .collect()
        };
        let s = parse_line(chunk[1])?;
        let t = parse_line(chunk[2])?;
        out.push(SetDlogBlock { field, s, t });
    }
    Ok(out)
}

pub fn parse_elem(field: &ExtField, tok: &str) -> std::result::Result<ExtFieldElem, String> {
    let coeffs: Vec<u64> = tok
        .split(',')
        .map(|c| c.parse::<u64>().map_err(|e| format!("`{tok}`: {e}")))
        .collect::<std::result::Result<_, _>>()?;
    if coeffs.len() > field.d() as usize {
        return Err(format!("`{tok}` has more than {} coefficients", field.d()));
    }
    let x = field.elem(&coeffs);
    if x.is_zero() {
        return Err(format!("`{tok}` is zero"));
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn gf(p: u64, d: u32) -> ExtField {
        ExtField::canonical(p, d).unwrap()
    }

    fn brute(s: &[Vec<ExtFieldElem>], t: &[Vec<ExtFieldElem>], m: u64) -> Vec<u64> {
        (1..=m)
            .filter(|&k| arith::gcd(k, m) == 1 || m == 1)
            .filter(|&k| s.iter().zip(t).all(|(a, b)| power_multiset(b, k) == canonical(a.clone())))
            .collect()
    }

    #[test]
    fn identical_lists() {
        let f = gf(7, 1);
        let s = vec![vec![f.from_prime(3), f.from_prime(2)]];
        let c = set_discrete_log(&s, &s).unwrap().unwrap();
        assert!(c.members().contains(&1));
    }

    #[test]
    fn gf7_examples() {
        let f = gf(7, 1);
        let c = set_discrete_log(&[vec![f.from_prime(2)]], &[vec![f.from_prime(4)]]).unwrap().unwrap();
        assert_eq!(c.m, 3);
        assert_eq!(c.members(), vec![2]);
        assert!(set_discrete_log(&[vec![f.from_prime(3)]], &[vec![f.from_prime(2)]]).unwrap().is_none());
    }

    #[test]
    fn stabilizers_in_gf4() {
        let f = gf(2, 2);
        let a = f.generator();
        let a2 = a.pow(2);
        let full = stabilizer_subgroup(&[a.clone(), a2.clone()], 3).unwrap();
        assert_eq!(SolutionCoset { m: 3, rep: 1, gens: full }.members(), vec![1, 2]);
        let one = stabilizer_subgroup(&[a.clone()], 3).unwrap();
        assert_eq!(SolutionCoset { m: 3, rep: 1, gens: one }.members(), vec![1]);
        let ones = stabilizer_subgroup(&[f.from_prime(1)], 12).unwrap();
        assert_eq!(SolutionCoset { m: 12, rep: 1, gens: ones }.size(), 4);
    }

    #[test]
    fn representative_lifts_to_unit() {
        // element of order 3 in GF(13), m = 12
        let f = gf(13, 1);
        let x = f.from_prime(3);
        let y = x.pow(2);
        let k = coset_representative(&[x.clone()], &[y.clone()], 12).unwrap().unwrap();
        assert_eq!(arith::gcd(k, 12), 1);
        assert_eq!(y.pow(k as u128), x);
    }

    #[test]
    fn hsp_stabilizer_matches_brute_force() {
        let f = gf(2, 4);
        let a = f.generator();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let t: Vec<ExtFieldElem> = a.conjugates();
        let b = stabilizer_subgroup(&t, 15).unwrap();
        let q = stabilizer_subgroup_hsp(&t, 15, &mut rng).unwrap();
        assert_eq!(
            SolutionCoset { m: 15, rep: 1, gens: b }.members(),
            SolutionCoset { m: 15, rep: 1, gens: q }.members()
        );
    }

    #[test]
    fn random_instances_match_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let fields = [gf(7, 1), gf(2, 3), gf(3, 2), gf(13, 1), gf(2, 4)];
        for _ in 0..150 {
            let u = rng.gen_range(1..=2);
            let mut s = Vec::new();
            let mut t = Vec::new();
            for _ in 0..u {
                let f = &fields[rng.gen_range(0..fields.len())];
                let n = rng.gen_range(1..=4);
                let q = f.size() as u64 - 1;
                let g = f.elements().into_iter().find(|x| !x.is_zero() && x.mult_order().unwrap() == q).unwrap();
                let tv: Vec<ExtFieldElem> = (0..n).map(|_| g.pow(rng.gen_range(0..q) as u128)).collect();
                let sv: Vec<ExtFieldElem> = if rng.gen_bool(0.6) {
                    let k = rng.gen_range(1..q);
                    tv.iter().map(|x| x.pow(k as u128)).collect()
                } else {
                    (0..n).map(|_| g.pow(rng.gen_range(0..q) as u128)).collect()
                };
                s.push(sv);
                t.push(tv);
            }
            let ms = lcm_orders(&s).unwrap();
            let mt = lcm_orders(&t).unwrap();
            let got = set_discrete_log(&s, &t).unwrap();
            if mt % ms != 0 {
                assert!(got.is_none());
                continue;
            }
            let tn: Vec<Vec<ExtFieldElem>> = t.iter().map(|v| power_multiset(v, mt / ms)).collect();
            let want = brute(&s, &tn, ms);
            match got {
                None => assert!(want.is_empty(), "{s:?} {t:?}"),
                Some(c) => assert_eq!(c.members(), want),
            }
        }
    }

    #[test]
    fn instance_parsing() {
        let blocks = parse_instance("2 2\n1,1 0,1\n0,1 1,1\n").unwrap();
        assert_eq!(blocks.len(), 1);
        assert_eq!(blocks[0].s.len(), 2);
        assert!(parse_instance("2 2\n0,0\n1\n").is_err());
    }
}
