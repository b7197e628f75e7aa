//! Black-box groups with unique opaque encodings, and generic utilities that
//! only use the multiplication oracle.

mod regen;
mod spec;
mod table;

use std::collections::{HashSet, VecDeque};
use std::fmt;

pub use regen::Regenerated;
pub use spec::{build_group, ClassSGroupSpec, SpecGroup};
pub use table::TableGroup;

use crate::abelian_engine::order_of;
use crate::error::{Error, Result};

/// An opaque element encoding.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element(pub Vec<u8>);

impl Element {
    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn from_hex(s: &str) -> Result<Self> {
        if s.len() % 2 != 0 {
            return Err(Error::InvalidEncoding);
        }
        (0..s.len())
            .step_by(2)
            .map(|i| u8::from_str_radix(&s[i..i + 2], 16).map_err(|_| Error::InvalidEncoding))
            .collect::<Result<Vec<u8>>>()
            .map(Element)
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.to_hex())
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_hex())
    }
}

/// Group access through an oracle over unique encodings.
pub trait BlackBoxGroup {
    fn encoding_len(&self) -> usize;
    fn identity(&self) -> Element;
    fn generators(&self) -> Vec<Element>;
    fn multiply(&self, g: &Element, h: &Element) -> Result<Element>;
    fn is_valid(&self, g: &Element) -> bool;

    /// Order when the construction knows it; algorithms must not rely on it.
    fn known_order(&self) -> Option<u64> {
        None
    }
}

impl<G: BlackBoxGroup + ?Sized> BlackBoxGroup for &G {
    fn encoding_len(&self) -> usize {
        (**self).encoding_len()
    }
    fn identity(&self) -> Element {
        (**self).identity()
    }
    fn generators(&self) -> Vec<Element> {
        (**self).generators()
    }
    fn multiply(&self, g: &Element, h: &Element) -> Result<Element> {
        (**self).multiply(g, h)
    }
    fn is_valid(&self, g: &Element) -> bool {
        (**self).is_valid(g)
    }
    fn known_order(&self) -> Option<u64> {
        (**self).known_order()
    }
}

/// Enumeration guard, `GRPISO_MAX_GROUP_ORDER` or 10^5.
pub fn max_group_order() -> u64 {
    std::env::var("GRPISO_MAX_GROUP_ORDER")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(100_000)
}

pub fn power<G: BlackBoxGroup + ?Sized>(g: &G, x: &Element, mut e: u64) -> Result<Element> {
    let mut result = g.identity();
    let mut base = x.clone();
    while e > 0 {
        if e & 1 == 1 {
            result = g.multiply(&result, &base)?;
        }
        e >>= 1;
        if e > 0 {
            base = g.multiply(&base, &base)?;
        }
    }
    Ok(result)
}

/// `x^(|x| - 1)`; the oracle has no inverse operation.
pub fn inverse<G: BlackBoxGroup + ?Sized>(g: &G, x: &Element) -> Result<Element> {
    let n = order_of(g, x)?;
    power(g, x, n - 1)
}

/// `[x, y] = x y x^-1 y^-1`.
pub fn commutator<G: BlackBoxGroup + ?Sized>(g: &G, x: &Element, y: &Element) -> Result<Element> {
    let xy = g.multiply(x, y)?;
    let yx = g.multiply(y, x)?;
    g.multiply(&xy, &inverse(g, &yx)?)
}

/// `x y x^-1`.
pub fn conjugate<G: BlackBoxGroup + ?Sized>(g: &G, x: &Element, y: &Element) -> Result<Element> {
    g.multiply(&g.multiply(x, y)?, &inverse(g, x)?)
}

pub fn commute<G: BlackBoxGroup + ?Sized>(g: &G, x: &Element, y: &Element) -> Result<bool> {
    Ok(g.multiply(x, y)? == g.multiply(y, x)?)
}

/// Elements of `<gens>` by breadth-first closure, identity first.
pub fn closure<G: BlackBoxGroup + ?Sized>(g: &G, gens: &[Element]) -> Result<Vec<Element>> {
    closure_limited(g, gens, max_group_order())
}

pub fn closure_limited<G: BlackBoxGroup + ?Sized>(
    g: &G,
    gens: &[Element],
    limit: u64,
) -> Result<Vec<Element>> {
    let e = g.identity();
    let mut seen: HashSet<Element> = HashSet::from([e.clone()]);
    let mut out = vec![e.clone()];
    let mut queue = VecDeque::from([e]);
    while let Some(x) = queue.pop_front() {
        for s in gens {
            let y = g.multiply(&x, s)?;
            if seen.insert(y.clone()) {
                if seen.len() as u64 > limit {
                    return Err(Error::GuardExceeded {
                        what: "closure size",
                        limit,
                    });
                }
                out.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    Ok(out)
}

/// Every element of the group.
pub fn elements<G: BlackBoxGroup + ?Sized>(g: &G) -> Result<Vec<Element>> {
    closure(g, &g.generators())
}

pub fn group_order<G: BlackBoxGroup + ?Sized>(g: &G) -> Result<u64> {
    Ok(elements(g)?.len() as u64)
}

pub fn is_abelian<G: BlackBoxGroup + ?Sized>(g: &G, gens: &[Element]) -> Result<bool> {
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            if !commute(g, a, b)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Generators of the normal closure of `<gens>` in `<conj_by>`.
pub fn normal_closure<G: BlackBoxGroup + ?Sized>(
    g: &G,
    gens: &[Element],
    conj_by: &[Element],
) -> Result<Vec<Element>> {
    let e = g.identity();
    let mut out: Vec<Element> = Vec::new();
    for x in gens {
        if *x != e && !out.contains(x) {
            out.push(x.clone());
        }
    }
    let mut members: HashSet<Element> = closure(g, &out)?.into_iter().collect();
    let mut i = 0;
    while i < out.len() {
        for c in conj_by {
            let y = conjugate(g, c, &out[i])?;
            if !members.contains(&y) {
                out.push(y);
                members = closure(g, &out)?.into_iter().collect();
            }
        }
        i += 1;
    }
    Ok(out)
}

/// Generators of the derived subgroup `[G, G]`.
pub fn derived_subgroup_gens<G: BlackBoxGroup + ?Sized>(g: &G) -> Result<Vec<Element>> {
    let gens = g.generators();
    let mut comms = Vec::new();
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            comms.push(commutator(g, a, b)?);
        }
    }
    normal_closure(g, &comms, &gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z34_z4(t: Vec<Vec<i64>>) -> SpecGroup {
        build_group(&ClassSGroupSpec::new(vec![3, 3, 3, 3], 4, t, 17)).unwrap()
    }

    #[test]
    fn inverse_examples() {
        let g = build_group(&ClassSGroupSpec::new(vec![3], 2, vec![vec![2]], 3)).unwrap();
        let e = g.identity();
        assert_eq!(inverse(&g, &e).unwrap(), e);
        let y = g.y();
        assert_eq!(inverse(&g, &y).unwrap(), y);
        let a = &g.a_generators()[0];
        assert_eq!(inverse(&g, a).unwrap(), g.multiply(a, a).unwrap());
    }

    #[test]
    fn commutator_examples() {
        let g = build_group(&ClassSGroupSpec::abelian(vec![4, 3], 5)).unwrap();
        let gens = g.generators();
        assert_eq!(commutator(&g, &gens[0], &gens[0]).unwrap(), g.identity());
        assert_eq!(commutator(&g, &gens[0], &gens[2]).unwrap(), g.identity());
    }

    #[test]
    fn derived_subgroups() {
        let ab = build_group(&ClassSGroupSpec::abelian(vec![4, 3], 5)).unwrap();
        assert!(derived_subgroup_gens(&ab).unwrap().is_empty());

        let s3 = build_group(&ClassSGroupSpec::new(vec![3], 2, vec![vec![2]], 3)).unwrap();
        let d = derived_subgroup_gens(&s3).unwrap();
        assert_eq!(closure(&s3, &d).unwrap().len(), 3);

        // T - I invertible mod 3 gives G' = A
        let g = z34_z4(vec![
            vec![0, 2, 0, 0],
            vec![1, 0, 0, 0],
            vec![0, 0, 0, 2],
            vec![0, 0, 1, 0],
        ]);
        let d = derived_subgroup_gens(&g).unwrap();
        let members = closure(&g, &d).unwrap();
        assert_eq!(members.len(), 81);
        for c in g.generators() {
            for x in &d {
                assert!(members.contains(&conjugate(&g, &c, x).unwrap()));
            }
        }
    }

    #[test]
    fn orders_of_small_groups() {
        let trivial = build_group(&ClassSGroupSpec::abelian(vec![], 1)).unwrap();
        assert_eq!(group_order(&trivial).unwrap(), 1);
        let s3 = build_group(&ClassSGroupSpec::new(vec![3], 2, vec![vec![2]], 3)).unwrap();
        assert_eq!(group_order(&s3).unwrap(), 6);
    }

    #[test]
    fn closure_guard() {
        let g = build_group(&ClassSGroupSpec::abelian(vec![1000], 1)).unwrap();
        assert!(matches!(
            closure_limited(&g, &g.generators(), 10),
            Err(Error::GuardExceeded { .. })
        ));
    }

    #[test]
    fn hex_round_trip() {
        let e = Element(vec![0, 171, 255]);
        assert_eq!(e.to_hex(), "00abff");
        assert_eq!(Element::from_hex("00abff").unwrap(), e);
        assert!(Element::from_hex("0g").is_err());
    }
}
