//! The acceptance checks, runnable from tests and from the command line.
//! Each check compares an algorithm against an independent reference and
//! has a fixed time budget.

use std::collections::HashSet;
use std::fmt;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::abelian_engine::{coset_intersection, span};
use crate::arith;
use crate::blackbox::{build_group, closure, BlackBoxGroup, ClassSGroupSpec, Element, SpecGroup};
use crate::decompose::{standard_decompose, verify_standard_decomposition};
use crate::dlog_conj::{dlog_up_to_conjugacy, ConjLogInstance};
use crate::error::Result;
use crate::field_poly::{ExtField, ExtFieldElem, FiniteField, Poly, PrimeField};
use crate::gen::{random_specs, Sampler};
use crate::iso::{isomorphism_with, verify_isomorphism, IsoContext, IsoOutcome};
use crate::matrix_forms::{
    companion, elementary_divisor_list, elementary_divisors, invariant_factors, jordan_block, Matrix,
};
use crate::quantum_sim::{hsp_sample, orthogonal, shor_order};
use crate::reference;
use crate::setdlog::set_discrete_log;

/// Knobs shared by all checks.
#[derive(Clone, Copy, Debug, Default)]
pub struct Options {
    pub seed: u64,
    /// Corrupt certificates before they are verified; every check that
    /// verifies a certificate must then fail.
    pub inject_fault: bool,
}

#[derive(Clone, Debug)]
pub struct Report {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub budget: Duration,
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {} {:<28} {:>8.2}s / {:>4}s  {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.elapsed.as_secs_f64(),
            self.budget.as_secs(),
            self.detail
        )
    }
}

pub const NAMES: [&str; 9] = [
    "worked example buckets",
    "census of Z3^4 x| Z4",
    "set discrete log",
    "discrete log up to conjugacy",
    "Jordan block powers",
    "standard decomposition",
    "coset intersection",
    "quantum simulator",
    "scramble invariance",
];

const BUDGETS: [u64; 9] = [1, 600, 60, 120, 60, 300, 60, 120, 300];

/// Runs check `id` (1-based).
pub fn run(id: usize, opts: Options) -> Report {
    let start = Instant::now();
    let outcome = match id {
        1 => worked_example(),
        2 => census_check(opts),
        3 => set_dlog_check(opts),
        4 => conj_log_check(opts),
        5 => jordan_check(opts),
        6 => decompose_check(opts),
        7 => coset_check(opts),
        8 => quantum_check(opts),
        9 => scramble_check(opts),
        _ => Ok((false, format!("no check {id}"))),
    };
    let elapsed = start.elapsed();
    let budget = Duration::from_secs(BUDGETS.get(id.wrapping_sub(1)).copied().unwrap_or(0));
    let (ok, mut detail) = outcome.unwrap_or_else(|e| (false, format!("error: {e}")));
    if elapsed > budget {
        detail.push_str(" (over time budget)");
    }
    Report {
        id,
        name: NAMES.get(id.wrapping_sub(1)).copied().unwrap_or("unknown"),
        passed: ok && elapsed <= budget,
        detail,
        elapsed,
        budget,
    }
}

pub fn run_all(opts: Options) -> Vec<Report> {
    (1..=9).map(|id| run(id, opts)).collect()
}

type Check = Result<(bool, String)>;

fn rng_for(opts: Options, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(opts.seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

fn worked_example() -> Check {
    let f = PrimeField::new(2)?;
    let f1 = Poly::from_ints(&f, &[1, 1, 1]);
    let f2 = &f1.pow(2) * &Poly::from_ints(&f, &[1, 1, 0, 1]);
    let c1 = companion(&f1)?;
    let m = Matrix::block_diag(&f, &[c1.clone(), c1, companion(&f2)?]);
    let inv = invariant_factors(&m)?;
    if inv.0 != vec![f1.clone(), f1, f2] {
        return Ok((false, "invariant factors differ".into()));
    }
    let t = elementary_divisors(&m)?;
    let keys: Vec<(u32, u32)> = t.keys().collect();
    let sizes: Vec<usize> = keys.iter().map(|&(d, l)| t.get(d, l).len()).collect();
    if keys != vec![(2, 1), (2, 2), (3, 1)] || sizes != vec![4, 2, 3] {
        return Ok((false, format!("buckets {keys:?} sizes {sizes:?}")));
    }
    // each bucket is a union of Frobenius orbits of full length d
    for ((d, _), roots) in t.iter() {
        let mut left: Vec<ExtFieldElem> = roots.to_vec();
        while let Some(x) = left.first().cloned() {
            let orbit = x.conjugates();
            if orbit.len() != d as usize {
                return Ok((false, format!("orbit of length {} in degree {d}", orbit.len())));
            }
            for c in orbit {
                match left.iter().position(|y| *y == c) {
                    Some(i) => {
                        left.remove(i);
                    }
                    None => return Ok((false, "bucket not closed under Frobenius".into())),
                }
            }
        }
    }
    Ok((true, "buckets (2,1):4 (2,2):2 (3,1):3, Frobenius-closed".into()))
}

/// Outcome of partitioning a list of groups into isomorphism classes.
#[derive(Clone, Debug)]
pub struct Census {
    /// Class index of each group.
    pub class_of: Vec<usize>,
    pub classes: usize,
    pub positives: usize,
    pub verified: usize,
    /// Pairs `(i, j)` with a negative verdict.
    pub negatives: Vec<(usize, usize)>,
}

/// Compares every group against one representative per class found so far.
pub fn census<G: BlackBoxGroup>(groups: &[G], corrupt: bool) -> Result<Census> {
    let ctxs: Vec<IsoContext> = groups.iter().map(IsoContext::new).collect::<Result<_>>()?;
    let mut reps: Vec<usize> = Vec::new();
    let mut class_of = Vec::with_capacity(groups.len());
    let (mut positives, mut verified) = (0, 0);
    let mut negatives = Vec::new();
    for i in 0..groups.len() {
        let mut found = None;
        for (c, &r) in reps.iter().enumerate() {
            match isomorphism_with(&groups[r], &ctxs[r], &groups[i], &ctxs[i])? {
                IsoOutcome::Isomorphic(mut iso) => {
                    positives += 1;
                    if corrupt {
                        iso.gen_images[0] = groups[i].identity();
                    }
                    if verify_isomorphism(&groups[r], &groups[i], &iso) {
                        verified += 1;
                    }
                    found = Some(c);
                    break;
                }
                IsoOutcome::NotIsomorphic(_) => negatives.push((r, i)),
            }
        }
        match found {
            Some(c) => class_of.push(c),
            None => {
                class_of.push(reps.len());
                reps.push(i);
            }
        }
    }
    Ok(Census {
        class_of,
        classes: reps.len(),
        positives,
        verified,
        negatives,
    })
}

/// The census corpus: random `Z3^4 x| Z4` specs plus the direct product.
pub fn census_specs(count: usize, seed: u64) -> Result<Vec<ClassSGroupSpec>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut specs = random_specs(&[3, 3, 3, 3], 4, count, Sampler::Semisimple, &mut rng)?;
    specs.push(ClassSGroupSpec::abelian(vec![3, 3, 3, 3], 4).with_seed(rng.gen_range(1..1 << 30)));
    Ok(specs)
}

fn census_check(opts: Options) -> Check {
    let specs = census_specs(200, opts.seed)?;
    let groups: Vec<SpecGroup> = specs.iter().map(build_group).collect::<Result<_>>()?;
    let c = census(&groups, opts.inject_fault)?;
    let mut rng = rng_for(opts, 2);
    let mut sample = c.negatives.clone();
    sample.shuffle(&mut rng);
    sample.truncate(20);
    let mut confirmed = 0;
    for &(a, b) in &sample {
        if reference::find_isomorphism(&groups[a], &groups[b])?.is_none() {
            confirmed += 1;
        }
    }
    let ok = c.classes == 9 && c.verified == c.positives && confirmed == sample.len() && sample.len() == 20;
    Ok((
        ok,
        format!(
            "{} groups, {} classes, {}/{} certificates verified, {}/{} negatives confirmed",
            groups.len(),
            c.classes,
            c.verified,
            c.positives,
            confirmed,
            sample.len()
        ),
    ))
}

/// Fields whose multiplicative groups have order at most 500.
fn small_fields() -> Result<Vec<ExtField>> {
    [(2, 8), (3, 5), (7, 3), (19, 2), (5, 3), (11, 2), (2, 6), (13, 1), (101, 1), (3, 4)]
        .iter()
        .map(|&(p, d)| ExtField::canonical(p, d))
        .collect()
}

fn primitive(f: &ExtField) -> Result<ExtFieldElem> {
    let q = f.size() as u64 - 1;
    for x in f.elements() {
        if !x.is_zero() && x.mult_order()? == q {
            return Ok(x);
        }
    }
    unreachable!("finite fields have primitive elements")
}

fn set_dlog_check(opts: Options) -> Check {
    let mut rng = rng_for(opts, 3);
    let fields = small_fields()?;
    let gens: Vec<ExtFieldElem> = fields.iter().map(primitive).collect::<Result<_>>()?;
    let (mut done, mut mismatches, mut solvable) = (0, 0, 0);
    while done < 500 {
        let u = rng.gen_range(1..=3);
        let mut s = Vec::new();
        let mut t = Vec::new();
        for _ in 0..u {
            let i = rng.gen_range(0..fields.len());
            let q = fields[i].size() as u64 - 1;
            // elements from a random subgroup so that orders vary
            let sub = arith::divisors(q);
            let step = sub[rng.gen_range(0..sub.len())];
            let n = rng.gen_range(1..=6);
            let tv: Vec<ExtFieldElem> = (0..n).map(|_| gens[i].pow((step * rng.gen_range(0..q)) as u128)).collect();
            let sv = if rng.gen_bool(0.7) {
                let k = rng.gen_range(1..=q);
                tv.iter().map(|x| x.pow(k as u128)).collect()
            } else {
                (0..n).map(|_| gens[i].pow((step * rng.gen_range(0..q)) as u128)).collect()
            };
            s.push(sv);
            t.push(tv);
        }
        let order = |l: &[Vec<ExtFieldElem>]| -> Result<u64> {
            let mut m = 1;
            for x in l.iter().flatten() {
                m = arith::lcm(m, x.mult_order()?);
            }
            Ok(m)
        };
        let (ms, mt) = (order(&s)?, order(&t)?);
        if mt > 500 {
            continue;
        }
        done += 1;
        let want = reference::set_dlog_exponents(&s, &t)?;
        let got = match set_discrete_log(&s, &t)? {
            Some(mut c) => {
                if opts.inject_fault {
                    c.rep = (c.rep + 1) % c.m.max(1);
                }
                solvable += 1;
                c.exponents(mt / ms)
            }
            None => Vec::new(),
        };
        if got != want {
            mismatches += 1;
        }
    }
    Ok((
        mismatches == 0,
        format!("{done} instances ({solvable} solvable), {mismatches} mismatches"),
    ))
}

fn conj_log_check(opts: Options) -> Check {
    let mut rng = rng_for(opts, 4);
    let (mut mismatches, mut bad_x, mut solvable) = (0, 0, 0);
    for _ in 0..200 {
        let f = PrimeField::new([2u64, 3, 5][rng.gen_range(0..3)])?;
        let u = rng.gen_range(1..=2);
        let mut blocks = Vec::new();
        for _ in 0..u {
            let r = rng.gen_range(1..=3);
            let b = Matrix::random_invertible(&f, r, &mut rng);
            let a = if rng.gen_bool(0.6) {
                let q = Matrix::random_invertible(&f, r, &mut rng);
                q.mul(&b.pow(rng.gen_range(1..40))).mul(&q.inverse()?)
            } else {
                Matrix::random_invertible(&f, r, &mut rng)
            };
            blocks.push((a, b));
        }
        let inst = ConjLogInstance::new(blocks)?;
        let (_, m2) = inst.exponents()?;
        let want = reference::conj_log_exponents(&inst.blocks, m2)?;
        let got = match dlog_up_to_conjugacy(&inst)? {
            Some(mut sol) => {
                solvable += 1;
                if opts.inject_fault {
                    sol.k += 1;
                }
                for ((a, b), x) in inst.blocks.iter().zip(&sol.xs) {
                    if !x.is_invertible() || x.mul(a) != b.pow(sol.k as u128).mul(x) {
                        bad_x += 1;
                    }
                }
                sol.coset.exponents(sol.scale)
            }
            None => Vec::new(),
        };
        if got != want {
            mismatches += 1;
        }
    }
    Ok((
        mismatches == 0 && bad_x == 0,
        format!("200 instances ({solvable} solvable), {mismatches} k-set mismatches, {bad_x} bad conjugators"),
    ))
}

fn jordan_check(opts: Options) -> Check {
    let mut rng = rng_for(opts, 5);
    let mut failures = 0;
    for case in 0..200 {
        let (p, d) = [(2u64, 2u32), (3, 1), (3, 2), (2, 3), (5, 1), (5, 2), (7, 1), (2, 4)][case % 8];
        let k = ExtField::canonical(p, d)?;
        let lambda = loop {
            let l = k.random(&mut rng);
            if !l.is_zero() {
                break l;
            }
        };
        let c = rng.gen_range(1..=4u32);
        let order = lambda.mult_order()? * p.pow(arith::ceil_log(p, c as u64));
        let e = loop {
            let e = rng.gen_range(1..200u64);
            if arith::gcd(e, order) == 1 {
                break e;
            }
        };
        let power = jordan_block(&k, &lambda, c as usize).pow(e as u128);
        let mut mu = lambda.pow(e as u128);
        if opts.inject_fault {
            mu = k.add(&mu, &k.one());
        }
        let want = vec![(Poly::linear(&k, &mu), c)];
        if elementary_divisor_list(&power)? != want {
            failures += 1;
        }
    }
    Ok((failures == 0, format!("200 cases, {failures} failures")))
}

/// Spec-built groups of assorted shapes, orders up to a few thousand.
pub fn corpus(seed: u64) -> Result<Vec<ClassSGroupSpec>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut specs = vec![
        ClassSGroupSpec::abelian(vec![3], 1),
        ClassSGroupSpec::abelian(vec![1], 1),
        ClassSGroupSpec::new(vec![3], 2, vec![vec![2]], 5),
        ClassSGroupSpec::new(vec![5], 4, vec![vec![2]], 6),
        ClassSGroupSpec::new(vec![7], 3, vec![vec![2]], 7),
        ClassSGroupSpec::abelian(vec![7], 3).with_seed(8),
        ClassSGroupSpec::abelian(vec![21], 1).with_seed(9),
        ClassSGroupSpec::new(vec![3], 4, vec![vec![2]], 10),
    ];
    let shapes: [(&[u64], u64, usize); 22] = [
        (&[5], 2, 3),
        (&[7], 6, 3),
        (&[2, 2], 3, 3),
        (&[4, 4], 3, 3),
        (&[2, 4], 3, 3),
        (&[3, 3], 4, 4),
        (&[3, 3], 8, 4),
        (&[9], 2, 3),
        (&[3, 9], 4, 4),
        (&[5, 5], 3, 3),
        (&[11], 5, 3),
        (&[13], 12, 3),
        (&[7, 7], 3, 3),
        (&[2, 2, 2], 7, 3),
        (&[25], 4, 2),
        (&[3, 3, 3, 3], 4, 6),
        (&[7, 7], 6, 3),
        (&[5, 5, 5], 4, 3),
        (&[9, 9], 8, 2),
        (&[11, 11], 10, 2),
        (&[13, 13], 12, 2),
        (&[7, 49], 3, 2),
    ];
    for (orders, m, count) in shapes {
        specs.extend(random_specs(orders, m, count, Sampler::Auto, &mut rng)?);
    }
    Ok(specs)
}

fn decompose_check(opts: Options) -> Check {
    let specs = corpus(opts.seed)?;
    let (mut verified, mut gamma_checked, mut gamma_bad, mut total) = (0, 0, 0, 0);
    for spec in &specs {
        if spec.order() > 5000 {
            continue;
        }
        total += 1;
        let g = build_group(spec)?;
        let mut sd = standard_decompose(&g)?;
        if opts.inject_fault {
            sd.a_gens.push(sd.v.clone());
        }
        if verify_standard_decomposition(&g, &sd) {
            verified += 1;
        }
        if spec.order() <= 200 {
            gamma_checked += 1;
            if reference::gamma(&g)? != sd.m {
                gamma_bad += 1;
            }
        }
    }
    Ok((
        verified == total && gamma_bad == 0,
        format!("{verified}/{total} verified, gamma matched on {}/{gamma_checked}", gamma_checked - gamma_bad),
    ))
}

fn coset_check(opts: Options) -> Check {
    let mut rng = rng_for(opts, 7);
    let ambients: [&[u64]; 7] = [&[12], &[4, 6, 3], &[12, 18], &[2, 2, 2, 5], &[8, 9, 5], &[100, 100], &[3, 3, 3, 3, 3, 3]];
    let (mut cases, mut mismatches) = (0, 0);
    for (a, orders) in ambients.iter().enumerate() {
        let g = build_group(&ClassSGroupSpec::abelian(orders.to_vec(), 1).with_seed(a as u64 + 1))?;
        let all = g.all_elements();
        let pick = |rng: &mut ChaCha8Rng| all[rng.gen_range(0..all.len())].clone();
        for _ in 0..30 {
            let x = pick(&mut rng);
            let y = pick(&mut rng);
            let g1: Vec<Element> = (0..rng.gen_range(0..=2)).map(|_| pick(&mut rng)).collect();
            let g2: Vec<Element> = (0..rng.gen_range(0..=2)).map(|_| pick(&mut rng)).collect();
            let coset = |x: &Element, gens: &[Element]| -> Result<HashSet<Element>> {
                closure(&g, gens)?.iter().map(|h| g.multiply(x, h)).collect()
            };
            let want: HashSet<Element> = coset(&x, &g1)?.intersection(&coset(&y, &g2)?).cloned().collect();
            let got = match coset_intersection(&g, &x, &g1, &y, &g2)? {
                Some(c) => {
                    let mut e = c.elements(&g)?;
                    if opts.inject_fault {
                        e.insert(g.identity());
                        e.insert(x.clone());
                    }
                    e
                }
                None => HashSet::new(),
            };
            cases += 1;
            if got != want {
                mismatches += 1;
            }
        }
    }
    Ok((mismatches == 0, format!("{cases} instances over 7 ambient groups, {mismatches} mismatches")))
}

fn quantum_check(opts: Options) -> Check {
    let mut rng = rng_for(opts, 8);
    let mut correct = 0;
    for _ in 0..500 {
        let n = rng.gen_range(2..=64u64);
        let a = loop {
            let a = rng.gen_range(1..n.max(2));
            if arith::gcd(a, n) == 1 {
                break a;
            }
        };
        let want = (1..=n).find(|&r| arith::pow_mod(a, r as u128, n) == 1 % n).unwrap_or(1);
        if let Ok(mut r) = shor_order(a, n, &mut rng) {
            if opts.inject_fault {
                r += 1;
            }
            if r == want {
                correct += 1;
            }
        }
    }
    let mut samples = 0;
    let mut orthogonal_ok = 0;
    let shapes: [&[u64]; 5] = [&[8], &[4, 6], &[12, 10], &[3, 3, 9], &[2, 4, 8]];
    for orders in shapes {
        for _ in 0..20 {
            let size: u64 = orders.iter().product();
            let k: Vec<Vec<u64>> = (0..rng.gen_range(1..=2))
                .map(|_| orders.iter().map(|&n| rng.gen_range(0..n)).collect())
                .collect();
            let members = span(&k, orders);
            // label = canonical coset representative
            let mut labels = vec![usize::MAX; size as usize];
            let mut next = 0;
            for idx in 0..size as usize {
                if labels[idx] != usize::MAX {
                    continue;
                }
                let mut v = vec![0u64; orders.len()];
                let mut r = idx;
                for (slot, &n) in v.iter_mut().zip(orders.iter()).rev() {
                    *slot = (r as u64) % n;
                    r /= n as usize;
                }
                for h in &members {
                    let w: Vec<u64> = v.iter().zip(h).zip(orders.iter()).map(|((a, b), n)| (a + b) % n).collect();
                    let j = w.iter().zip(orders.iter()).fold(0usize, |acc, (x, n)| acc * *n as usize + *x as usize);
                    labels[j] = next;
                }
                next += 1;
            }
            let y = hsp_sample(orders, &labels, &mut rng)?;
            samples += 1;
            if k.iter().all(|g| orthogonal(orders, &y, g)) {
                orthogonal_ok += 1;
            }
        }
    }
    let ok = correct * 100 >= 99 * 500 && orthogonal_ok == samples;
    Ok((
        ok,
        format!("shor correct {correct}/500, orthogonal samples {orthogonal_ok}/{samples}"),
    ))
}

fn relabeled(spec: &ClassSGroupSpec, rng: &mut ChaCha8Rng) -> Result<ClassSGroupSpec> {
    // conjugate the action by a random automorphism and raise it to a unit power
    let orders = &spec.abelian_orders;
    let t = crate::iso::HomMatrix::new(
        spec.action
            .iter()
            .zip(orders)
            .map(|(r, &n)| r.iter().map(|&x| x.rem_euclid(n as i64) as u64).collect())
            .collect(),
        orders.clone(),
        orders.clone(),
    );
    let units = arith::units(spec.m);
    let k = units[rng.gen_range(0..units.len())].max(1);
    let p = crate::gen::random_automorphism(orders, rng);
    let pinv = p.pow(p.order() - 1);
    let new = p.compose(&t.pow(k)).compose(&pinv);
    let action = new.rows().iter().map(|r| r.iter().map(|&x| x as i64).collect()).collect();
    let out = ClassSGroupSpec::new(orders.clone(), spec.m, action, spec.scramble_seed);
    out.validate()?;
    Ok(out)
}

fn scramble_check(opts: Options) -> Check {
    let mut rng = rng_for(opts, 9);
    let shapes: [(&[u64], u64); 6] = [(&[3, 3, 3, 3], 4), (&[7, 7], 3), (&[5], 4), (&[3, 9], 4), (&[2, 2, 2], 7), (&[13], 12)];
    let mut pairs = Vec::new();
    for i in 0..30 {
        let (orders, m) = shapes[i % shapes.len()];
        let a = random_specs(orders, m, 1, Sampler::Auto, &mut rng)?.remove(0);
        let b = if i % 2 == 0 {
            relabeled(&a, &mut rng)?
        } else {
            random_specs(orders, m, 1, Sampler::Auto, &mut rng)?.remove(0)
        };
        pairs.push((a, b));
    }
    let (mut consistent, mut positives, mut verified) = (0, 0, 0);
    for (a, b) in &pairs {
        let mut verdicts = Vec::new();
        for _ in 0..3 {
            let g = build_group(&a.with_seed(rng.gen_range(1..1 << 40)))?;
            let h = build_group(&b.with_seed(rng.gen_range(1..1 << 40)))?;
            let out = isomorphism_with(&g, &IsoContext::new(&g)?, &h, &IsoContext::new(&h)?)?;
            match out {
                IsoOutcome::Isomorphic(mut iso) => {
                    positives += 1;
                    if opts.inject_fault {
                        iso.gen_images[0] = h.identity();
                    }
                    if verify_isomorphism(&g, &h, &iso) {
                        verified += 1;
                    }
                    verdicts.push(String::from("isomorphic"));
                }
                IsoOutcome::NotIsomorphic(reason) => verdicts.push(reason),
            }
        }
        if verdicts.iter().all(|v| *v == verdicts[0]) {
            consistent += 1;
        }
    }
    Ok((
        consistent == pairs.len() && verified == positives,
        format!("{consistent}/30 pairs consistent, {verified}/{positives} certificates verified"),
    ))
}
