use super::*;
use crate::blackbox::{build_group, ClassSGroupSpec, Regenerated, SpecGroup};
use crate::matrix_forms::similar;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn group(spec: ClassSGroupSpec) -> SpecGroup {
    build_group(&spec).unwrap()
}

/// Every automorphism of the abelian group with these cyclic orders.
fn automorphisms(orders: &[u64]) -> Vec<HomMatrix> {
    let s = orders.len();
    let mut slots: Vec<Vec<u64>> = Vec::new();
    for i in 0..s {
        for j in 0..s {
            slots.push((0..orders[i]).filter(|x| (x * orders[j]) % orders[i] == 0).collect());
        }
    }
    let total: usize = slots.iter().map(Vec::len).product();
    let size: u64 = orders.iter().product();
    let mut out = Vec::new();
    for mut idx in 0..total {
        let mut flat = Vec::with_capacity(s * s);
        for sl in &slots {
            flat.push(sl[idx % sl.len()]);
            idx /= sl.len();
        }
        let rows: Vec<Vec<u64>> = flat.chunks(s).map(<[u64]>::to_vec).collect();
        let h = HomMatrix::new(rows, orders.to_vec(), orders.to_vec());
        // injective iff the kernel is trivial
        let mut injective = true;
        for mut v in 1..size {
            let mut x = vec![0; s];
            for (slot, &n) in x.iter_mut().zip(orders).rev() {
                *slot = v % n;
                v /= n;
            }
            if h.apply(&x).iter().all(|&c| c == 0) {
                injective = false;
                break;
            }
        }
        if injective {
            out.push(h);
        }
    }
    out
}

#[test]
fn automorphism_counts() {
    assert_eq!(automorphisms(&[7]).len(), 6);
    assert_eq!(automorphisms(&[3, 3]).len(), 48);
    assert_eq!(automorphisms(&[3, 9]).len(), 108);
}

#[test]
fn phi_is_multiplicative() {
    let auts = automorphisms(&[3, 9]);
    for a in auts.iter().step_by(7) {
        for b in auts.iter().step_by(5) {
            let (pa, pb, pab) = (phi_image(a).unwrap(), phi_image(b).unwrap(), phi_image(&a.compose(b)).unwrap());
            for t in 0..pa.mats.len() {
                assert_eq!(pab.mats[t], pa.mats[t].mul(&pb.mats[t]));
            }
        }
    }
}

/// `chi alpha = beta^k chi` has a solution in `Aut(A)` exactly when the
/// projections are blockwise similar, for every coprime-order pair.
fn check_equivalence(orders: &[u64], m: u64) {
    let auts = automorphisms(orders);
    let coprime: Vec<&HomMatrix> = auts.iter().filter(|a| m % a.order() == 0).collect();
    for alpha in &coprime {
        for beta in &coprime {
            for k in arith::units(m) {
                let bk = beta.pow(k);
                let exists = auts.iter().any(|c| c.compose(alpha) == bk.compose(c));
                let (pa, pb) = (phi_image(alpha).unwrap(), phi_image(&bk).unwrap());
                let projected = pa.mats.iter().zip(&pb.mats).all(|(x, y)| similar(x, y).unwrap());
                assert_eq!(exists, projected, "{alpha:?} {beta:?} k={k}");
            }
        }
    }
}

#[test]
fn projection_detects_conjugacy() {
    check_equivalence(&[3, 9], 4);
    check_equivalence(&[2, 4], 3);
    check_equivalence(&[3, 3], 8);
}

#[test]
fn cyclic_versus_nonabelian() {
    let g = group(ClassSGroupSpec::new(vec![7], 3, vec![vec![2]], 1));
    let h = group(ClassSGroupSpec::abelian(vec![7], 3).with_seed(2));
    assert!(!group_isomorphism(&g, &h).unwrap().is_isomorphic());
    let z21 = group(ClassSGroupSpec::abelian(vec![21], 1).with_seed(3));
    assert!(group_isomorphism(&h, &z21).unwrap().is_isomorphic());
}

#[test]
fn scrambled_copies_are_isomorphic() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let specs = [
        ClassSGroupSpec::new(vec![3, 3, 3, 3], 4, vec![vec![0, 2, 0, 0], vec![1, 0, 0, 0], vec![0, 0, 1, 0], vec![0, 0, 0, 2]], 1),
        ClassSGroupSpec::new(vec![7, 5], 6, vec![vec![3, 0], vec![0, 4]], 2),
        ClassSGroupSpec::new(vec![9, 3], 2, vec![vec![8, 0], vec![0, 1]], 3),
        ClassSGroupSpec::new(vec![5], 4, vec![vec![2]], 4),
    ];
    for spec in specs {
        let g = group(spec.clone());
        let h = Regenerated::random(group(spec.with_seed(spec.scramble_seed + 100)), &mut rng).unwrap();
        match group_isomorphism(&g, &h).unwrap() {
            IsoOutcome::Isomorphic(iso) => assert!(verify_isomorphism(&g, &h, &iso)),
            IsoOutcome::NotIsomorphic(r) => panic!("{spec}: {r}"),
        }
    }
}

#[test]
fn unit_power_of_action_is_isomorphic() {
    // y -> y^2 in Z7 x| Z3 and y -> y^4 give the same group
    let g = group(ClassSGroupSpec::new(vec![7], 3, vec![vec![2]], 1));
    let h = group(ClassSGroupSpec::new(vec![7], 3, vec![vec![4]], 8));
    let IsoOutcome::Isomorphic(iso) = group_isomorphism(&g, &h).unwrap() else {
        panic!("expected isomorphic")
    };
    assert_eq!(iso.k, 2);
}

#[test]
fn different_eigenvalue_patterns() {
    let g = group(ClassSGroupSpec::new(vec![7, 7], 3, vec![vec![2, 0], vec![0, 2]], 1));
    let h = group(ClassSGroupSpec::new(vec![7, 7], 3, vec![vec![2, 0], vec![0, 4]], 2));
    let out = group_isomorphism(&g, &h).unwrap();
    assert!(!out.is_isomorphic(), "{out:?}");
}

#[test]
fn verifier_rejects_bad_images() {
    let g = group(ClassSGroupSpec::new(vec![5], 4, vec![vec![2]], 4));
    let IsoOutcome::Isomorphic(mut iso) = group_isomorphism(&g, &g).unwrap() else {
        panic!()
    };
    assert!(verify_isomorphism(&g, &g, &iso));
    iso.gen_images[0] = g.identity();
    assert!(!verify_isomorphism(&g, &g, &iso));
    iso.gen_images.pop();
    assert!(!verify_isomorphism(&g, &g, &iso));
}
