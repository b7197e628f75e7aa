//! Standard decompositions `G = A <v>` with `A` normal abelian and
//! `gcd(|A|, |v|) = 1`, computed from generators only.

use std::collections::HashSet;

use crate::abelian_engine::{discrete_log, order_of};
use crate::arith;
use crate::blackbox::{
    closure, commute, conjugate, derived_subgroup_gens, elements, power, BlackBoxGroup, Element,
};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardDecomposition {
    pub a_gens: Vec<Element>,
    pub v: Element,
    pub m: u64,
}

/// Where each element ended up during a run, for diagnostics.
#[derive(Clone, Debug, Default)]
pub struct DecompositionState {
    pub u: Vec<Element>,
    pub v: Vec<Element>,
    pub sigma: Vec<Element>,
    pub kappa: u64,
    pub gammas: Vec<(u64, Vec<Element>)>,
}

fn push_unique(set: &mut Vec<Element>, x: &Element) {
    if !set.contains(x) {
        set.push(x.clone());
    }
}

fn commutes_with_all<G: BlackBoxGroup + ?Sized>(g: &G, xs: &[Element], ys: &[Element]) -> Result<bool> {
    for x in xs {
        for y in ys {
            if !commute(g, x, y)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `z w z^-1` lies in `<w>`; the discrete log found is re-checked by powering.
pub fn zw_membership_test<G: BlackBoxGroup + ?Sized>(g: &G, w: &Element, z: &Element) -> Result<bool> {
    let c = conjugate(g, z, w)?;
    let n = order_of(g, w)?;
    match discrete_log(g, w, &c, n)? {
        Some(k) => Ok(power(g, w, k)? == c),
        None => Ok(false),
    }
}

/// Runs the decomposition and returns the final state with the result.
pub fn standard_decompose_traced<G: BlackBoxGroup + ?Sized>(
    g: &G,
) -> Result<(StandardDecomposition, DecompositionState)> {
    let e = g.identity();
    let gens: Vec<Element> = g.generators();
    let derived = derived_subgroup_gens(g)?;
    let derived_order = closure(g, &derived)?.len() as u64;

    let mut kappa = 1u64;
    for x in &gens {
        kappa = arith::lcm(kappa, order_of(g, x)?);
    }
    let mut st = DecompositionState {
        u: derived.clone(),
        kappa,
        ..Default::default()
    };
    for (p, ex) in arith::factorize(kappa)? {
        let q = p.pow(ex);
        let mut gamma: Vec<Element> = Vec::new();
        for x in &gens {
            push_unique(&mut gamma, &power(g, x, kappa / q)?);
        }
        st.gammas.push((p, gamma.clone()));
        let centralizes = commutes_with_all(g, &gamma, &derived)?;
        if centralizes && derived_order % p == 0 {
            // p-elements whose order meets |G'| can only lie in A
            for x in &gamma {
                push_unique(&mut st.u, x);
            }
        } else if centralizes {
            let mut both = gamma.clone();
            both.extend(derived.iter().cloned());
            let target = closure(g, &both)?.len();
            let mut found = None;
            for x in &gamma {
                let mut with = vec![x.clone()];
                with.extend(derived.iter().cloned());
                if closure(g, &with)?.len() == target {
                    found = Some(x.clone());
                    break;
                }
            }
            match found {
                Some(x) => push_unique(&mut st.sigma, &x),
                None => {
                    for x in &gamma {
                        push_unique(&mut st.u, x);
                    }
                }
            }
        } else {
            let mut best: Option<(u64, Element)> = None;
            for x in &gamma {
                let o = order_of(g, x)?;
                if best.as_ref().map_or(true, |(b, _)| o > *b) {
                    best = Some((o, x.clone()));
                }
            }
            if let Some((_, x)) = best {
                push_unique(&mut st.v, &x);
            }
        }
    }

    let sigma = st.sigma.clone();
    for w in &sigma {
        let mut witness = None;
        for z in &sigma {
            if !commute(g, w, z)? {
                witness = Some(z.clone());
                break;
            }
        }
        if let Some(z) = witness {
            if zw_membership_test(g, w, &z)? {
                push_unique(&mut st.u, w);
            } else {
                push_unique(&mut st.v, w);
            }
        }
    }
    for w in &sigma {
        if st.u.contains(w) || st.v.contains(w) {
            continue;
        }
        if commutes_with_all(g, std::slice::from_ref(w), &st.u)? {
            st.u.push(w.clone());
        } else {
            st.v.push(w.clone());
        }
    }

    let mut b = 1u64;
    let mut z = e.clone();
    for x in &st.v {
        b *= order_of(g, x)?;
        z = g.multiply(&z, x)?;
    }
    let zo = order_of(g, &z)?;
    if zo % b != 0 {
        return Err(Error::DecompositionFailed(
            "not in class or procedure failure: |z| is not a multiple of b".into(),
        ));
    }
    let v = power(g, &z, zo / b)?;
    let mut a_gens: Vec<Element> = Vec::new();
    for x in &st.u {
        if *x != e {
            push_unique(&mut a_gens, x);
        }
    }
    let m = order_of(g, &v)?;
    Ok((StandardDecomposition { a_gens, v, m }, st))
}

/// A verified standard decomposition.
pub fn standard_decompose<G: BlackBoxGroup + ?Sized>(g: &G) -> Result<StandardDecomposition> {
    let (sd, _) = standard_decompose_traced(g)?;
    if !verify_standard_decomposition(g, &sd) {
        return Err(Error::DecompositionFailed(
            "not in class or procedure failure: output does not verify".into(),
        ));
    }
    Ok(sd)
}

/// Checks `<A>` abelian and normal, `gcd(|A|, |v|) = 1` and `|A| |v| = |G|`.
pub fn verify_standard_decomposition<G: BlackBoxGroup + ?Sized>(g: &G, sd: &StandardDecomposition) -> bool {
    check(g, sd).unwrap_or(false)
}

fn check<G: BlackBoxGroup + ?Sized>(g: &G, sd: &StandardDecomposition) -> Result<bool> {
    if !commutes_with_all(g, &sd.a_gens, &sd.a_gens)? {
        return Ok(false);
    }
    let a: HashSet<Element> = closure(g, &sd.a_gens)?.into_iter().collect();
    for c in g.generators() {
        for x in &sd.a_gens {
            if !a.contains(&conjugate(g, &c, x)?) {
                return Ok(false);
            }
        }
    }
    let m = order_of(g, &sd.v)?;
    if m != sd.m || arith::gcd(a.len() as u64, m) != 1 {
        return Ok(false);
    }
    let mut y = sd.v.clone();
    for _ in 1..m {
        if a.contains(&y) {
            return Ok(false);
        }
        y = g.multiply(&y, &sd.v)?;
    }
    let n = elements(g)?.len() as u64;
    Ok(a.len() as u64 * m == n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blackbox::{build_group, ClassSGroupSpec, SpecGroup};

    fn group(spec: ClassSGroupSpec) -> SpecGroup {
        build_group(&spec).unwrap()
    }

    #[test]
    fn abelian_group() {
        let g = group(ClassSGroupSpec::abelian(vec![4, 3], 5).with_seed(7));
        let sd = standard_decompose(&g).unwrap();
        assert_eq!(sd.m, 1);
        assert_eq!(sd.v, g.identity());
        assert_eq!(closure(&g, &sd.a_gens).unwrap().len(), 60);
    }

    #[test]
    fn s3_and_z5_z4() {
        let s3 = group(ClassSGroupSpec::new(vec![3], 2, vec![vec![2]], 5));
        let sd = standard_decompose(&s3).unwrap();
        assert_eq!(closure(&s3, &sd.a_gens).unwrap().len(), 3);
        assert_eq!(sd.m, 2);

        let f20 = group(ClassSGroupSpec::new(vec![5], 4, vec![vec![2]], 9));
        let sd = standard_decompose(&f20).unwrap();
        assert_eq!(closure(&f20, &sd.a_gens).unwrap().len(), 5);
        assert_eq!(sd.m, 4);
    }

    #[test]
    fn verifier_rejects() {
        let s3 = group(ClassSGroupSpec::new(vec![3], 2, vec![vec![2]], 5));
        let a = s3.a_generators();
        let good = StandardDecomposition {
            a_gens: a.clone(),
            v: s3.y(),
            m: 2,
        };
        assert!(verify_standard_decomposition(&s3, &good));
        let bad = StandardDecomposition {
            a_gens: a,
            v: s3.identity(),
            m: 1,
        };
        assert!(!verify_standard_decomposition(&s3, &bad));
        let nonabelian = StandardDecomposition {
            a_gens: s3.generators(),
            v: s3.identity(),
            m: 1,
        };
        assert!(!verify_standard_decomposition(&s3, &nonabelian));
    }

    #[test]
    fn zw_test_examples() {
        let s3 = group(ClassSGroupSpec::new(vec![3], 2, vec![vec![2]], 5));
        let w = s3.y();
        let z = s3.a_generators()[0].clone();
        assert!(zw_membership_test(&s3, &w, &s3.identity()).unwrap());
        assert!(zw_membership_test(&s3, &w, &w).unwrap());
        assert!(!zw_membership_test(&s3, &w, &z).unwrap());
    }

    #[test]
    fn cyclic_part_fragments_lie_over_derived_subgroup() {
        // elements put in V are a * y^alpha with a in G'
        let spec = ClassSGroupSpec::new(vec![7, 5], 6, vec![vec![3, 0], vec![0, 4]], 0);
        let g = group(spec);
        let (sd, st) = standard_decompose_traced(&g).unwrap();
        assert!(verify_standard_decomposition(&g, &sd));
        let derived: HashSet<Element> = closure(&g, &derived_subgroup_gens(&g).unwrap()).unwrap().into_iter().collect();
        for w in &st.v {
            let (a, i) = g.internal(w).unwrap();
            assert_ne!(i, 0);
            assert!(derived.contains(&g.encode_internal(&a, 0)));
        }
    }

    #[test]
    fn deterministic() {
        let spec = ClassSGroupSpec::new(vec![7, 5], 6, vec![vec![3, 0], vec![0, 4]], 12);
        let g = group(spec);
        assert_eq!(standard_decompose(&g).unwrap(), standard_decompose(&g).unwrap());
    }
}
