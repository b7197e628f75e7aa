use std::fmt;

use super::{BlackBoxGroup, Element};
use crate::arith;
use crate::error::{Error, Result};

/// Declarative description of `A x| Z_m` with `A = Z_{n_1} x ... x Z_{n_s}`
/// and `y g_j y^-1 = prod_i g_i^{T_ij}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ClassSGroupSpec {
    pub abelian_orders: Vec<u64>,
    pub m: u64,
    pub action: Vec<Vec<i64>>,
    pub scramble_seed: u64,
}

impl ClassSGroupSpec {
    pub fn new(abelian_orders: Vec<u64>, m: u64, action: Vec<Vec<i64>>, scramble_seed: u64) -> Self {
        ClassSGroupSpec {
            abelian_orders,
            m,
            action,
            scramble_seed,
        }
    }

    /// Direct product `A x Z_m` with trivial action.
    pub fn abelian(abelian_orders: Vec<u64>, m: u64) -> Self {
        let s = abelian_orders.len();
        let action = (0..s)
            .map(|i| (0..s).map(|j| i64::from(i == j)).collect())
            .collect();
        ClassSGroupSpec::new(abelian_orders, m, action, 0)
    }

    pub fn with_seed(&self, seed: u64) -> Self {
        ClassSGroupSpec {
            scramble_seed: seed,
            ..self.clone()
        }
    }

    pub fn order(&self) -> u64 {
        self.abelian_orders.iter().product::<u64>() * self.m
    }

    /// Checks every structural constraint, naming the one that fails.
    pub fn validate(&self) -> Result<()> {
        let s = self.abelian_orders.len();
        if self.m == 0 || self.abelian_orders.iter().any(|&n| n == 0) {
            return Err(Error::InvalidSpec("orders must be positive".into()));
        }
        let a_order: u64 = self.abelian_orders.iter().product();
        if arith::gcd(a_order, self.m) != 1 {
            return Err(Error::InvalidSpec(format!(
                "gcd(|A|, m) = gcd({a_order}, {}) != 1",
                self.m
            )));
        }
        if self.action.len() != s || self.action.iter().any(|row| row.len() != s) {
            return Err(Error::InvalidSpec(format!("action must be a {s}x{s} matrix")));
        }
        // column j is the image of g_j and must have order dividing n_j
        for j in 0..s {
            for i in 0..s {
                let n_i = self.abelian_orders[i] as i128;
                let v = self.action[i][j] as i128 * self.abelian_orders[j] as i128;
                if v.rem_euclid(n_i) != 0 {
                    return Err(Error::InvalidSpec(format!(
                        "action entry ({i},{j}) is not compatible with the cyclic orders"
                    )));
                }
            }
        }
        let t = ActionMatrix::new(&self.abelian_orders, &self.action);
        if !t.pow(self.m).is_identity() {
            return Err(Error::InvalidSpec(format!(
                "action does not satisfy T^m = I for m = {}",
                self.m
            )));
        }
        Ok(())
    }

    /// Parses the `key = value` text format.
    pub fn parse(text: &str) -> Result<Self> {
        let mut abelian = None;
        let mut m = None;
        let mut action = None;
        let mut seed = 0u64;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let perr = |msg: String| Error::Parse {
                line: lineno + 1,
                msg,
            };
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| perr("expected key = value".into()))?;
            let value = value.trim();
            match key.trim() {
                "abelian" => {
                    abelian = Some(parse_list::<u64>(value).map_err(|e| perr(e))?);
                }
                "m" => m = Some(value.parse::<u64>().map_err(|e| perr(e.to_string()))?),
                "action" => {
                    let rows = value
                        .split(';')
                        .map(str::trim)
                        .filter(|r| !r.is_empty())
                        .map(parse_list::<i64>)
                        .collect::<std::result::Result<Vec<_>, _>>()
                        .map_err(|e| perr(e))?;
                    action = Some(rows);
                }
                "scramble_seed" => seed = value.parse().map_err(|e: std::num::ParseIntError| perr(e.to_string()))?,
                other => return Err(perr(format!("unknown key `{other}`"))),
            }
        }
        let abelian = abelian.unwrap_or_default();
        let m = m.unwrap_or(1);
        let spec = match action {
            Some(rows) => ClassSGroupSpec::new(abelian, m, rows, seed),
            None => ClassSGroupSpec::abelian(abelian, m).with_seed(seed),
        };
        spec.validate()?;
        Ok(spec)
    }
}

fn parse_list<T: std::str::FromStr>(s: &str) -> std::result::Result<Vec<T>, String>
where
    T::Err: fmt::Display,
{
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<T>().map_err(|e| format!("`{t}`: {e}")))
        .collect()
}

impl fmt::Display for ClassSGroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[i64]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
        let orders: Vec<String> = self.abelian_orders.iter().map(|n| n.to_string()).collect();
        writeln!(f, "abelian = {}", orders.join(","))?;
        writeln!(f, "m = {}", self.m)?;
        let rows: Vec<String> = self.action.iter().map(|r| join(r)).collect();
        writeln!(f, "action = {}", rows.join("; "))?;
        writeln!(f, "scramble_seed = {}", self.scramble_seed)
    }
}

/// Integer action matrix acting on exponent vectors, rows reduced mod `n_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct ActionMatrix {
    orders: Vec<u64>,
    t: Vec<Vec<u64>>,
}

impl ActionMatrix {
    pub fn new(orders: &[u64], rows: &[Vec<i64>]) -> Self {
        let t = rows
            .iter()
            .enumerate()
            .map(|(i, r)| r.iter().map(|&v| v.rem_euclid(orders[i] as i64) as u64).collect())
            .collect();
        ActionMatrix {
            orders: orders.to_vec(),
            t,
        }
    }

    pub fn identity(orders: &[u64]) -> Self {
        let s = orders.len();
        let rows: Vec<Vec<i64>> = (0..s).map(|i| (0..s).map(|j| i64::from(i == j)).collect()).collect();
        Self::new(orders, &rows)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(&self.orders)
    }

    pub fn apply(&self, b: &[u64]) -> Vec<u64> {
        self.t
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let n = self.orders[i] as u128;
                (row.iter().zip(b).map(|(&x, &y)| x as u128 * y as u128).sum::<u128>() % n) as u64
            })
            .collect()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let s = self.orders.len();
        let mut rows = vec![vec![0i64; s]; s];
        for (i, row) in rows.iter_mut().enumerate() {
            let n = self.orders[i] as u128;
            for (j, slot) in row.iter_mut().enumerate() {
                let v: u128 = (0..s).map(|k| self.t[i][k] as u128 * other.t[k][j] as u128).sum();
                *slot = (v % n) as i64;
            }
        }
        Self::new(&self.orders, &rows)
    }

    pub fn pow(&self, e: u64) -> Self {
        let mut acc = Self::identity(&self.orders);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

/// Seeded balanced Feistel permutation of `bits`-bit integers; the
/// identity when the seed is zero.
#[derive(Clone, Debug)]
pub(crate) struct Scrambler {
    seed: u64,
    half: u32,
}

const ROUNDS: u64 = 4;

fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

impl Scrambler {
    pub fn new(seed: u64, bits: u32) -> Self {
        Scrambler { seed, half: bits / 2 }
    }

    fn round(&self, r: u64, x: u64) -> u64 {
        let mask = (1u64 << self.half) - 1;
        mix(self.seed ^ mix(r.wrapping_mul(0x1000_0001) ^ x)) & mask
    }

    pub fn forward(&self, v: u64) -> u64 {
        if self.seed == 0 {
            return v;
        }
        let mask = (1u64 << self.half) - 1;
        let (mut l, mut r) = (v >> self.half, v & mask);
        for k in 0..ROUNDS {
            let nl = r;
            r = l ^ self.round(k, r);
            l = nl;
        }
        (l << self.half) | r
    }

    pub fn backward(&self, v: u64) -> u64 {
        if self.seed == 0 {
            return v;
        }
        let mask = (1u64 << self.half) - 1;
        let (mut l, mut r) = (v >> self.half, v & mask);
        for k in (0..ROUNDS).rev() {
            let nr = l;
            l = r ^ self.round(k, l);
            r = nr;
        }
        (l << self.half) | r
    }
}

/// A spec-built group behind a scrambled unique encoding.
#[derive(Clone, Debug)]
pub struct SpecGroup {
    spec: ClassSGroupSpec,
    powers: Vec<ActionMatrix>,
    order: u64,
    len: usize,
    scrambler: Scrambler,
}

/// Builds the black-box group of a validated spec.
pub fn build_group(spec: &ClassSGroupSpec) -> Result<SpecGroup> {
    spec.validate()?;
    let order = spec.order();
    let bits = 64 - order.leading_zeros().min(64);
    let len = (bits as usize).div_ceil(8) + 1;
    if len > 8 {
        return Err(Error::GuardExceeded {
            what: "group order",
            limit: 1 << 56,
        });
    }
    let t = ActionMatrix::new(&spec.abelian_orders, &spec.action);
    let mut powers = vec![ActionMatrix::identity(&spec.abelian_orders)];
    for i in 1..spec.m as usize {
        let next = powers[i - 1].mul(&t);
        powers.push(next);
    }
    Ok(SpecGroup {
        spec: spec.clone(),
        powers,
        order,
        len,
        scrambler: Scrambler::new(spec.scramble_seed, 8 * len as u32),
    })
}

impl SpecGroup {
    pub fn spec(&self) -> &ClassSGroupSpec {
        &self.spec
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    fn index_of(&self, a: &[u64], i: u64) -> u64 {
        let mut idx = 0u64;
        for (x, n) in a.iter().zip(&self.spec.abelian_orders) {
            idx = idx * n + x;
        }
        idx * self.spec.m + i
    }

    fn unindex(&self, mut idx: u64) -> (Vec<u64>, u64) {
        let i = idx % self.spec.m;
        idx /= self.spec.m;
        let mut a = vec![0u64; self.spec.abelian_orders.len()];
        for (slot, n) in a.iter_mut().zip(&self.spec.abelian_orders).rev() {
            *slot = idx % n;
            idx /= n;
        }
        (a, i)
    }

    /// Encoding of `(a, i)`, the element `a * y^i`.
    pub fn encode_internal(&self, a: &[u64], i: u64) -> Element {
        let reduced: Vec<u64> = a
            .iter()
            .zip(&self.spec.abelian_orders)
            .map(|(x, n)| x % n)
            .collect();
        let v = self.scrambler.forward(self.index_of(&reduced, i % self.spec.m));
        Element(v.to_be_bytes()[8 - self.len..].to_vec())
    }

    /// The hidden `(a, i)` behind an encoding. Test and diagnostics use only.
    pub fn internal(&self, g: &Element) -> Result<(Vec<u64>, u64)> {
        if g.0.len() != self.len {
            return Err(Error::InvalidEncoding);
        }
        let mut buf = [0u8; 8];
        buf[8 - self.len..].copy_from_slice(&g.0);
        let idx = self.scrambler.backward(u64::from_be_bytes(buf));
        if idx >= self.order {
            return Err(Error::InvalidEncoding);
        }
        Ok(self.unindex(idx))
    }

    /// The cyclic generator `y`.
    pub fn y(&self) -> Element {
        self.encode_internal(&vec![0; self.spec.abelian_orders.len()], 1)
    }

    /// Generators of the cyclic factors of `A`.
    pub fn a_generators(&self) -> Vec<Element> {
        let s = self.spec.abelian_orders.len();
        (0..s)
            .map(|j| {
                let mut a = vec![0; s];
                a[j] = 1;
                self.encode_internal(&a, 0)
            })
            .collect()
    }

    /// Every element, in internal index order.
    pub fn all_elements(&self) -> Vec<Element> {
        (0..self.order)
            .map(|idx| {
                let (a, i) = self.unindex(idx);
                self.encode_internal(&a, i)
            })
            .collect()
    }
}

impl BlackBoxGroup for SpecGroup {
    fn encoding_len(&self) -> usize {
        self.len
    }

    fn identity(&self) -> Element {
        self.encode_internal(&vec![0; self.spec.abelian_orders.len()], 0)
    }

    fn generators(&self) -> Vec<Element> {
        let mut g = self.a_generators();
        g.push(self.y());
        g
    }

    fn multiply(&self, g: &Element, h: &Element) -> Result<Element> {
        let (a, i) = self.internal(g)?;
        let (b, j) = self.internal(h)?;
        let tb = self.powers[i as usize].apply(&b);
        let sum: Vec<u64> = a
            .iter()
            .zip(&tb)
            .zip(&self.spec.abelian_orders)
            .map(|((x, y), n)| (x + y) % n)
            .collect();
        Ok(self.encode_internal(&sum, (i + j) % self.spec.m))
    }

    fn is_valid(&self, g: &Element) -> bool {
        self.internal(g).is_ok()
    }

    fn known_order(&self) -> Option<u64> {
        Some(self.order)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blackbox::{commutator, group_order};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    pub(crate) fn s3(seed: u64) -> ClassSGroupSpec {
        ClassSGroupSpec::new(vec![3], 2, vec![vec![2]], seed)
    }

    #[test]
    fn feistel_is_a_permutation() {
        let s = Scrambler::new(77, 16);
        let mut seen = vec![false; 1 << 16];
        for v in 0..(1u64 << 16) {
            let w = s.forward(v);
            assert_eq!(s.backward(w), v);
            assert!(!seen[w as usize]);
            seen[w as usize] = true;
        }
    }

    #[test]
    fn build_examples() {
        let z3 = build_group(&ClassSGroupSpec::new(vec![3], 1, vec![vec![1]], 0)).unwrap();
        assert_eq!(z3.order(), 3);
        let g = build_group(&s3(9)).unwrap();
        assert_eq!(g.order(), 6);
        let a = &g.a_generators()[0];
        let y = g.y();
        assert_ne!(g.multiply(a, &y).unwrap(), g.multiply(&y, a).unwrap());
        assert_eq!(group_order(&g).unwrap(), 6);
        let c = commutator(&g, a, &y).unwrap();
        let (cv, ci) = g.internal(&c).unwrap();
        assert_eq!(ci, 0);
        assert_ne!(cv, vec![0]);
    }

    #[test]
    fn validation_names_constraint() {
        let bad_gcd = ClassSGroupSpec::abelian(vec![2], 2);
        assert!(matches!(bad_gcd.validate(), Err(Error::InvalidSpec(m)) if m.contains("gcd")));
        let bad_order = ClassSGroupSpec::new(vec![7], 2, vec![vec![2]], 0);
        assert!(matches!(bad_order.validate(), Err(Error::InvalidSpec(m)) if m.contains("T^m")));
        let bad_compat = ClassSGroupSpec::new(vec![3, 9], 1, vec![vec![1, 0], vec![1, 1]], 0);
        assert!(matches!(bad_compat.validate(), Err(Error::InvalidSpec(m)) if m.contains("compatible")));
    }

    #[test]
    fn text_round_trip() {
        let spec = ClassSGroupSpec::new(
            vec![3, 3],
            2,
            vec![vec![2, 0], vec![0, 2]],
            42,
        );
        let back = ClassSGroupSpec::parse(&spec.to_string()).unwrap();
        assert_eq!(back, spec);
        let plain = ClassSGroupSpec::parse("abelian = 5\nm = 4\naction = 2\n").unwrap();
        assert_eq!(plain.order(), 20);
        assert!(matches!(
            ClassSGroupSpec::parse("abelian = 5\nfoo = 1"),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn oracle_axioms_sampled() {
        let spec = ClassSGroupSpec::new(
            vec![3, 3, 3, 3],
            4,
            vec![
                vec![0, 2, 0, 0],
                vec![1, 0, 0, 0],
                vec![0, 0, 0, 2],
                vec![0, 0, 1, 0],
            ],
            1234,
        );
        let g = build_group(&spec).unwrap();
        assert_eq!(g.order(), 324);
        let els = g.all_elements();
        let e = g.identity();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..1000 {
            let a = &els[rng.gen_range(0..els.len())];
            let b = &els[rng.gen_range(0..els.len())];
            let c = &els[rng.gen_range(0..els.len())];
            let ab_c = g.multiply(&g.multiply(a, b).unwrap(), c).unwrap();
            let a_bc = g.multiply(a, &g.multiply(b, c).unwrap()).unwrap();
            assert_eq!(ab_c, a_bc);
        }
        for a in &els {
            assert_eq!(&g.multiply(a, &e).unwrap(), a);
            assert_eq!(&g.multiply(&e, a).unwrap(), a);
            let inv = crate::blackbox::inverse(&g, a).unwrap();
            assert_eq!(g.multiply(a, &inv).unwrap(), e);
        }
        let mut sorted = els.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 324);
        let valid = (0..1u32 << 24)
            .filter(|v| g.is_valid(&Element(v.to_be_bytes()[1..].to_vec())))
            .count();
        assert_eq!(g.encoding_len(), 3);
        assert_eq!(valid, 324);
    }

    #[test]
    fn scramble_hides_transparent_layout() {
        let plain = build_group(&s3(0)).unwrap();
        let mixed = build_group(&s3(5)).unwrap();
        assert_eq!(plain.identity(), Element(vec![0, 0]));
        assert_ne!(plain.all_elements(), mixed.all_elements());
    }
}
