//! Integer helpers: gcd/lcm, modular powers, primality, factorization and
//! unit-group lifting.

use crate::error::{Error, Result};

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

pub fn lcm_all<I: IntoIterator<Item = u64>>(it: I) -> u64 {
    it.into_iter().fold(1, lcm)
}

/// Extended Euclid: returns `(g, x, y)` with `a*x + b*y = g`.
pub fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        if a < 0 {
            (-a, -1, 0)
        } else {
            (a, 1, 0)
        }
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        (g, y, x - a.div_euclid(b) * y)
    }
}

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(base: u64, mut exp: u128, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut result = 1u64;
    let mut b = base % m;
    while exp > 0 {
        if exp & 1 == 1 {
            result = mul_mod(result, b, m);
        }
        b = mul_mod(b, b, m);
        exp >>= 1;
    }
    result
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (g, x, _) = ext_gcd(a as i128, m as i128);
    if g != 1 {
        return None;
    }
    Some(x.rem_euclid(m as i128) as u64)
}

/// Deterministic Miller-Rabin for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d as u128, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primality by trial division, used where the check doubles as input
/// validation at desk scale.
pub fn is_prime_trial(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn pollard_rho(n: u64, seed: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    let mut c = seed % (n - 1) + 1;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
        c = c % (n - 1) + 1;
    }
}

const FACTOR_GUARD: u64 = 1 << 63;

/// Prime factorization as sorted `(prime, exponent)` pairs.
///
/// Trial division for small primes, then Pollard rho with a fixed seed so
/// results are reproducible.
pub fn factorize(n: u64) -> Result<Vec<(u64, u32)>> {
    if n >= FACTOR_GUARD {
        return Err(Error::GuardExceeded {
            what: "factorization input",
            limit: FACTOR_GUARD,
        });
    }
    let mut out: Vec<(u64, u32)> = Vec::new();
    let mut n = n;
    let push = |p: u64, out: &mut Vec<(u64, u32)>| match out.iter_mut().find(|(q, _)| *q == p) {
        Some(e) => e.1 += 1,
        None => out.push((p, 1)),
    };
    for p in 2..1000u64 {
        while n % p == 0 {
            push(p, &mut out);
            n /= p;
        }
    }
    let mut stack = vec![n];
    while let Some(x) = stack.pop() {
        if x == 1 {
            continue;
        }
        if is_prime(x) {
            push(x, &mut out);
            continue;
        }
        let d = pollard_rho(x, 0x9e37_79b9);
        stack.push(d);
        stack.push(x / d);
    }
    out.sort_unstable();
    Ok(out)
}

pub fn prime_divisors(n: u64) -> Vec<u64> {
    factorize(n)
        .map(|f| f.into_iter().map(|(p, _)| p).collect())
        .unwrap_or_default()
}

/// All positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut ds = vec![1u64];
    for (p, e) in factorize(n).unwrap_or_default() {
        let cur = ds.clone();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            ds.extend(cur.iter().map(|d| d * pk));
        }
    }
    ds.sort_unstable();
    ds
}

/// Order of `x` in a group of exponent dividing `exponent`, given a power
/// oracle. Strips primes from `exponent` while the power stays trivial.
pub fn order_from_exponent<F: Fn(u64) -> bool>(exponent: u64, is_identity_at: F) -> u64 {
    let mut order = exponent;
    for (p, _) in factorize(exponent).unwrap_or_default() {
        while order % p == 0 && is_identity_at(order / p) {
            order /= p;
        }
    }
    order
}

/// Elements of `Z_m^*`, ascending. `Z_1^*` is represented by `{0}`.
pub fn units(m: u64) -> Vec<u64> {
    if m == 1 {
        return vec![0];
    }
    (1..m).filter(|&k| gcd(k, m) == 1).collect()
}

/// Lift a unit `alpha` modulo `small` (which divides `big`) to a unit modulo
/// `big` congruent to it: `alpha + small * prod(q^delta)` over the primes of
/// `big` dividing neither `small` nor `alpha`.
pub fn lift_unit(alpha: u64, small: u64, big: u64) -> u64 {
    debug_assert!(big % small == 0);
    let alpha = if small == 1 { 1 } else { alpha % small };
    let mut q_part = 1u64;
    for (q, e) in factorize(big).unwrap_or_default() {
        if small % q != 0 && alpha % q != 0 {
            q_part *= q.pow(e);
        }
    }
    ((alpha as u128 + small as u128 * q_part as u128) % big as u128) as u64
}

/// Smallest `e >= 0` with `p^e >= c`.
pub fn ceil_log(p: u64, c: u64) -> u32 {
    let mut e = 0;
    let mut pe = 1u64;
    while pe < c {
        pe *= p;
        e += 1;
    }
    e
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorization_roundtrip() {
        for n in 1..3000u64 {
            let f = factorize(n).unwrap();
            let prod: u64 = f.iter().map(|(p, e)| p.pow(*e)).product();
            assert_eq!(prod, n);
            assert!(f.iter().all(|(p, _)| is_prime_trial(*p)));
        }
        let big = 1_000_000_007u64 * 998_244_353;
        assert_eq!(factorize(big).unwrap(), vec![(998_244_353, 1), (1_000_000_007, 1)]);
    }

    #[test]
    fn miller_rabin_matches_trial() {
        for n in 0..5000 {
            assert_eq!(is_prime(n), is_prime_trial(n), "{n}");
        }
    }

    #[test]
    fn lifted_units_are_units() {
        for big in 1..200u64 {
            for small in divisors(big) {
                for a in units(small) {
                    let k = lift_unit(a, small, big);
                    assert_eq!(gcd(k, big), 1, "{a} {small} {big}");
                    if small > 1 {
                        assert_eq!(k % small, a);
                    }
                }
            }
        }
    }

    #[test]
    fn inverse_and_ext_gcd() {
        assert_eq!(inv_mod(3, 7), Some(5));
        assert_eq!(inv_mod(2, 4), None);
        let (g, x, y) = ext_gcd(240, 46);
        assert_eq!(g, 2);
        assert_eq!(240 * x + 46 * y, 2);
    }
}
