//! Brute-force references used to cross-check the structured algorithms.
//! Everything here enumerates, so it is only meant for small groups.

use std::collections::HashMap;

use crate::arith;
use crate::blackbox::{elements, BlackBoxGroup, Element};
use crate::error::{Error, Result};
use crate::matrix_forms::{similar, Matrix};
use crate::field_poly::PrimeField;
use crate::setdlog::{canonical, power_multiset, SetElement};

/// A group copied into an index-based multiplication table.
#[derive(Clone, Debug)]
pub struct Enumerated {
    pub elems: Vec<Element>,
    pub index: HashMap<Element, usize>,
    pub table: Vec<Vec<usize>>,
    pub identity: usize,
    pub gens: Vec<usize>,
}

impl Enumerated {
    pub fn new<G: BlackBoxGroup + ?Sized>(g: &G) -> Result<Self> {
        let elems = elements(g)?;
        let index: HashMap<Element, usize> = elems.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        let mut table = Vec::with_capacity(elems.len());
        for a in &elems {
            let row = elems
                .iter()
                .map(|b| Ok(index[&g.multiply(a, b)?]))
                .collect::<Result<Vec<usize>>>()?;
            table.push(row);
        }
        let identity = index[&g.identity()];
        let gens = g.generators().iter().map(|x| index[x]).collect();
        Ok(Enumerated {
            elems,
            index,
            table,
            identity,
            gens,
        })
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn order_of(&self, x: usize) -> u64 {
        let mut y = x;
        let mut n = 1;
        while y != self.identity {
            y = self.table[y][x];
            n += 1;
        }
        n
    }

    pub fn power(&self, x: usize, e: u64) -> usize {
        (0..e).fold(self.identity, |acc, _| self.table[acc][x])
    }

    /// `(order, centralizer size)` of every element; an isomorphism invariant.
    pub fn fingerprints(&self) -> Vec<(u64, usize)> {
        (0..self.len())
            .map(|x| {
                let c = (0..self.len()).filter(|&y| self.table[x][y] == self.table[y][x]).count();
                (self.order_of(x), c)
            })
            .collect()
    }
}

/// The smallest `m` such that `G = A <y>` with `A` normal abelian,
/// `|y| = m` and `gcd(|A|, m) = 1`.
///
/// Such an `A` is a normal Hall subgroup, so it must equal the set of
/// elements whose order divides `|G| / m`; only that set is checked.
pub fn gamma<G: BlackBoxGroup + ?Sized>(g: &G) -> Result<u64> {
    let e = Enumerated::new(g)?;
    let n = e.len() as u64;
    let orders: Vec<u64> = (0..e.len()).map(|x| e.order_of(x)).collect();
    for m in arith::divisors(n) {
        let a_size = n / m;
        if arith::gcd(m, a_size) != 1 || !orders.contains(&m) {
            continue;
        }
        let a: Vec<usize> = (0..e.len()).filter(|&x| a_size % orders[x] == 0).collect();
        if a.len() as u64 != a_size {
            continue;
        }
        let inside: Vec<bool> = (0..e.len()).map(|x| a_size % orders[x] == 0).collect();
        let ok = a
            .iter()
            .all(|&x| a.iter().all(|&y| inside[e.table[x][y]] && e.table[x][y] == e.table[y][x]));
        if ok {
            return Ok(m);
        }
    }
    Err(Error::Promise("group is not in the class".into()))
}

/// Greedy small generating set, rarest fingerprints first.
fn search_generators(e: &Enumerated, fp: &[(u64, usize)]) -> Vec<usize> {
    let mut freq: HashMap<(u64, usize), usize> = HashMap::new();
    for f in fp {
        *freq.entry(*f).or_default() += 1;
    }
    let mut cands: Vec<usize> = (0..e.len()).collect();
    cands.sort_by_key(|&x| (freq[&fp[x]], std::cmp::Reverse(fp[x].0), x));
    let mut gens = Vec::new();
    let mut inside = vec![false; e.len()];
    inside[e.identity] = true;
    let mut size = 1;
    while size < e.len() {
        let x = *cands.iter().find(|&&x| !inside[x]).unwrap();
        gens.push(x);
        let mut members: Vec<usize> = (0..e.len()).filter(|&v| inside[v]).collect();
        let mut i = 0;
        while i < members.len() {
            for &s in &gens {
                let y = e.table[members[i]][s];
                if !inside[y] {
                    inside[y] = true;
                    members.push(y);
                }
            }
            i += 1;
        }
        size = members.len();
    }
    gens
}

/// Extends `gens[i] -> images[i]` over the generated subgroup; `None` if
/// the assignment is not a well-defined injective homomorphism there.
fn extend(g: &Enumerated, h: &Enumerated, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
    let none = usize::MAX;
    let mut map = vec![none; g.len()];
    let mut used = vec![false; h.len()];
    map[g.identity] = h.identity;
    used[h.identity] = true;
    let mut queue = vec![g.identity];
    let mut i = 0;
    while i < queue.len() {
        let u = queue[i];
        i += 1;
        for (&s, &t) in gens.iter().zip(images) {
            let x = g.table[u][s];
            let y = h.table[map[u]][t];
            if map[x] == none {
                if used[y] {
                    return None;
                }
                map[x] = y;
                used[y] = true;
                queue.push(x);
            } else if map[x] != y {
                return None;
            }
        }
    }
    Some(map)
}

/// Searches all generator images for an isomorphism `G -> H`. Returns the
/// images of `G`'s own generators when one exists.
pub fn find_isomorphism<G, H>(g: &G, h: &H) -> Result<Option<Vec<Element>>>
where
    G: BlackBoxGroup + ?Sized,
    H: BlackBoxGroup + ?Sized,
{
    let eg = Enumerated::new(g)?;
    let eh = Enumerated::new(h)?;
    if eg.len() != eh.len() {
        return Ok(None);
    }
    let fg = eg.fingerprints();
    let fh = eh.fingerprints();
    let (mut sg, mut sh) = (fg.clone(), fh.clone());
    sg.sort();
    sh.sort();
    if sg != sh {
        return Ok(None);
    }
    let gens = search_generators(&eg, &fg);
    let cands: Vec<Vec<usize>> = gens
        .iter()
        .map(|&x| (0..eh.len()).filter(|&y| fh[y] == fg[x]).collect())
        .collect();
    let mut images = Vec::with_capacity(gens.len());
    let Some(map) = backtrack(&eg, &eh, &gens, &cands, &mut images) else {
        return Ok(None);
    };
    Ok(Some(eg.gens.iter().map(|&x| eh.elems[map[x]].clone()).collect()))
}

fn backtrack(
    g: &Enumerated,
    h: &Enumerated,
    gens: &[usize],
    cands: &[Vec<usize>],
    images: &mut Vec<usize>,
) -> Option<Vec<usize>> {
    let i = images.len();
    if i == gens.len() {
        return extend(g, h, gens, images);
    }
    for &c in &cands[i] {
        images.push(c);
        if let Some(map) = extend(g, h, &gens[..=i], images) {
            if i + 1 == gens.len() {
                return Some(map);
            }
            if let Some(full) = backtrack(g, h, gens, cands, images) {
                return Some(full);
            }
        }
        images.pop();
    }
    None
}

/// Every `k` in `1..=m_T` (with `m_T` standing for 0) such that
/// `T_h^k = S_h` as multisets for all `h`.
pub fn set_dlog_exponents<T: SetElement>(s_list: &[Vec<T>], t_list: &[Vec<T>]) -> Result<Vec<u64>> {
    let mut mt = 1;
    for t in t_list {
        for x in t {
            mt = arith::lcm(mt, x.order()?);
        }
    }
    let want: Vec<_> = s_list.iter().map(|s| canonical(s.clone())).collect();
    Ok((1..=mt)
        .filter(|&k| t_list.iter().zip(&want).all(|(t, s)| power_multiset(t, k) == *s))
        .collect())
}

/// Every `k` in `1..=m2` with `M1_h` similar to `M2_h^k` for all blocks.
pub fn conj_log_exponents(blocks: &[(Matrix<PrimeField>, Matrix<PrimeField>)], m2: u64) -> Result<Vec<u64>> {
    let mut out = Vec::new();
    for k in 1..=m2 {
        let mut ok = true;
        for (a, b) in blocks {
            if !similar(a, &b.pow(k as u128))? {
                ok = false;
                break;
            }
        }
        if ok {
            out.push(k);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blackbox::{build_group, ClassSGroupSpec};

    #[test]
    fn gamma_of_small_groups() {
        let z12 = build_group(&ClassSGroupSpec::abelian(vec![12], 1)).unwrap();
        assert_eq!(gamma(&z12).unwrap(), 1);
        let s3 = build_group(&ClassSGroupSpec::new(vec![3], 2, vec![vec![2]], 1)).unwrap();
        assert_eq!(gamma(&s3).unwrap(), 2);
        // Z3 x| Z4 with y^2 central: A = Z3 x <y^2> fails the gcd test
        let g = build_group(&ClassSGroupSpec::new(vec![3], 4, vec![vec![2]], 1)).unwrap();
        assert_eq!(gamma(&g).unwrap(), 4);
    }

    #[test]
    fn search_finds_and_rejects() {
        let a = build_group(&ClassSGroupSpec::new(vec![7], 3, vec![vec![2]], 1)).unwrap();
        let b = build_group(&ClassSGroupSpec::new(vec![7], 3, vec![vec![4]], 2)).unwrap();
        let c = build_group(&ClassSGroupSpec::abelian(vec![21], 1)).unwrap();
        let imgs = find_isomorphism(&a, &b).unwrap().unwrap();
        assert!(crate::iso::verify_images(&a, &b, &imgs).unwrap());
        assert!(find_isomorphism(&a, &c).unwrap().is_none());
    }
}
