//! A small state-vector simulator for Fourier sampling over finite abelian
//! groups: Shor order finding and the abelian hidden subgroup problem.

use std::collections::HashSet;

use rand::Rng;
use rustfft::num_complex::Complex64;
use rustfft::FftPlanner;

use crate::arith;
use crate::error::{Error, Result};
use crate::intmat;

/// Largest register the simulator will allocate.
pub const MAX_STATE: u64 = 1 << 14;

/// Default number of attempts for the sampling loops.
pub const DEFAULT_RETRIES: usize = 24;

const NORM_TOL: f64 = 1e-9;

/// Amplitudes over `Z_{d_1} x ... x Z_{d_k}`, last coordinate fastest.
#[derive(Clone, Debug)]
pub struct StateVector {
    dims: Vec<usize>,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// `|0>`.
    pub fn zero(dims: &[usize]) -> Result<Self> {
        let n = dims.iter().try_fold(1usize, |a, &d| a.checked_mul(d.max(1)));
        match n {
            Some(n) if n as u64 <= MAX_STATE => {
                let mut amps = vec![Complex64::new(0.0, 0.0); n];
                amps[0] = Complex64::new(1.0, 0.0);
                Ok(StateVector {
                    dims: dims.iter().map(|&d| d.max(1)).collect(),
                    amps,
                })
            }
            _ => Err(Error::GuardExceeded {
                what: "simulated register",
                limit: MAX_STATE,
            }),
        }
    }

    /// Uniform superposition over the given basis indices.
    pub fn uniform_on(dims: &[usize], support: &[usize]) -> Result<Self> {
        let mut s = Self::zero(dims)?;
        s.amps[0] = Complex64::new(0.0, 0.0);
        let a = 1.0 / (support.len() as f64).sqrt();
        for &i in support {
            s.amps[i] = Complex64::new(a, 0.0);
        }
        s.check_norm()?;
        Ok(s)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn check_norm(&self) -> Result<()> {
        let n = self.norm();
        if (n - 1.0).abs() > NORM_TOL {
            return Err(Error::Verification(format!("state norm {n} drifted from 1")));
        }
        Ok(())
    }

    pub fn index(&self, v: &[usize]) -> usize {
        v.iter().zip(&self.dims).fold(0, |acc, (x, d)| acc * d + x % d)
    }

    pub fn coords(&self, mut idx: usize) -> Vec<usize> {
        let mut v = vec![0; self.dims.len()];
        for (slot, d) in v.iter_mut().zip(&self.dims).rev() {
            *slot = idx % d;
            idx /= d;
        }
        v
    }

    /// Fourier transform on one component, `|x> -> d^-1/2 sum_y w^{xy} |y>`.
    pub fn qft_axis(&mut self, axis: usize, planner: &mut FftPlanner<f64>) {
        let d = self.dims[axis];
        if d == 1 {
            return;
        }
        let stride: usize = self.dims[axis + 1..].iter().product();
        let fft = planner.plan_fft_inverse(d);
        let scale = 1.0 / (d as f64).sqrt();
        let block = stride * d;
        let mut line = vec![Complex64::new(0.0, 0.0); d];
        for start in (0..self.amps.len()).step_by(block) {
            for off in 0..stride {
                for (k, slot) in line.iter_mut().enumerate() {
                    *slot = self.amps[start + off + k * stride];
                }
                fft.process(&mut line);
                for (k, v) in line.iter().enumerate() {
                    self.amps[start + off + k * stride] = v * scale;
                }
            }
        }
    }

    /// Fourier transform on every component.
    pub fn qft(&mut self) -> Result<()> {
        let mut planner = FftPlanner::new();
        for axis in 0..self.dims.len() {
            self.qft_axis(axis, &mut planner);
        }
        self.check_norm()
    }

    /// Samples a basis index from the Born distribution.
    pub fn measure<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        let mut u: f64 = rng.gen::<f64>() * self.norm().powi(2);
        let mut last = 0;
        for (i, a) in self.amps.iter().enumerate() {
            let p = a.norm_sqr();
            if p > 0.0 {
                last = i;
                if u < p {
                    return i;
                }
                u -= p;
            }
        }
        last
    }
}

/// Convergent denominators of `num / den`.
pub fn convergent_denominators(num: u64, den: u64) -> Vec<u64> {
    let (mut a, mut b) = (num, den);
    let (mut k2, mut k1) = (1u64, 0u64);
    let mut out = Vec::new();
    while b != 0 {
        let t = a / b;
        (a, b) = (b, a % b);
        let k = t.saturating_mul(k1).saturating_add(k2);
        (k2, k1) = (k1, k);
        out.push(k);
    }
    out.retain(|&d| d > 0);
    out.dedup();
    out
}

/// Multiplicative order of `a` mod `n` (n <= 64) by simulated period finding.
pub fn shor_order<R: Rng + ?Sized>(a: u64, n: u64, rng: &mut R) -> Result<u64> {
    shor_order_with_budget(a, n, DEFAULT_RETRIES, rng)
}

pub fn shor_order_with_budget<R: Rng + ?Sized>(a: u64, n: u64, retries: usize, rng: &mut R) -> Result<u64> {
    shor_order_traced(a, n, retries, rng, &mut Vec::new())
}

/// One simulated run of the period-finding circuit.
#[derive(Clone, Debug)]
pub struct ShorTrial {
    pub register: usize,
    /// Offset of the collapsed superposition `x0 + j r`.
    pub x0: usize,
    pub support: usize,
    pub measured: u64,
    pub denominators: Vec<u64>,
}

/// As `shor_order_with_budget`, recording every trial.
pub fn shor_order_traced<R: Rng + ?Sized>(
    a: u64,
    n: u64,
    retries: usize,
    rng: &mut R,
    trace: &mut Vec<ShorTrial>,
) -> Result<u64> {
    if !(2..=64).contains(&n) {
        return Err(Error::InvalidSpec(format!("modulus {n} outside 2..=64")));
    }
    let a = a % n;
    if arith::gcd(a, n) != 1 {
        return Err(Error::NotCoprime { k: a, order: n });
    }
    let is_one = |e: u64| arith::pow_mod(a, e as u128, n) == 1;
    if a == 1 {
        return Ok(1);
    }
    // register size Q with n^2 <= Q < 2 n^2
    let q = (n * n).next_power_of_two() as usize;
    let mut planner = FftPlanner::new();
    let mut best = 1u64;
    for _ in 0..retries {
        // measuring a^x collapses to {x0 + j r}
        let x0 = rng.gen_range(0..q);
        let target = arith::pow_mod(a, x0 as u128, n);
        let support: Vec<usize> = (0..q)
            .filter(|&x| arith::pow_mod(a, x as u128, n) == target)
            .collect();
        let mut st = StateVector::uniform_on(&[q], &support)?;
        st.qft_axis(0, &mut planner);
        st.check_norm()?;
        let c = st.measure(rng) as u64;
        let denominators = convergent_denominators(c, q as u64);
        trace.push(ShorTrial {
            register: q,
            x0,
            support: support.len(),
            measured: c,
            denominators: denominators.clone(),
        });
        for d in denominators {
            if d >= n {
                break;
            }
            let cand = arith::lcm(best, d);
            if is_one(cand) {
                // strip any surplus factors
                let mut r = cand;
                for p in arith::prime_divisors(cand) {
                    while r % p == 0 && is_one(r / p) {
                        r /= p;
                    }
                }
                return Ok(r);
            }
            if cand < n {
                best = cand;
            }
        }
    }
    Err(Error::RetryBudget(retries))
}

/// One Fourier sample for the hidden subgroup of `P = prod Z_{orders}`;
/// `labels[idx]` is the oracle value at the mixed-radix index `idx`.
/// Returns a character `y` with `sum y_i k_i / n_i` integral on the kernel.
pub fn hsp_sample<R: Rng + ?Sized>(orders: &[u64], labels: &[usize], rng: &mut R) -> Result<Vec<u64>> {
    let dims: Vec<usize> = orders.iter().map(|&n| n as usize).collect();
    let x0 = rng.gen_range(0..labels.len());
    let support: Vec<usize> = (0..labels.len()).filter(|&i| labels[i] == labels[x0]).collect();
    let mut st = StateVector::uniform_on(&dims, &support)?;
    st.qft()?;
    let y = st.measure(rng);
    Ok(st.coords(y).into_iter().map(|v| v as u64).collect())
}

/// Annihilator of a set of characters: the `x` with `sum y_i x_i / n_i` integral.
pub fn annihilator(orders: &[u64], chars: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let l = arith::lcm_all(orders.iter().copied()).max(1);
    let images: Vec<Vec<u64>> = (0..orders.len())
        .map(|j| chars.iter().map(|y| (y[j] * (l / orders[j])) % l).collect())
        .collect();
    intmat::kernel(&images, &vec![l; chars.len()], orders)
}

/// Character test: is `sum y_i k_i / n_i` an integer.
pub fn orthogonal(orders: &[u64], y: &[u64], k: &[u64]) -> bool {
    let l = arith::lcm_all(orders.iter().copied()).max(1) as u128;
    let s: u128 = orders
        .iter()
        .zip(y)
        .zip(k)
        .map(|((&n, &a), &b)| a as u128 * b as u128 * (l / n as u128))
        .sum();
    s % l == 0
}

/// Hidden subgroup by repeated Fourier sampling, verified against the table.
pub fn hsp_solve<R: Rng + ?Sized>(orders: &[u64], labels: &[usize], rng: &mut R) -> Result<Vec<Vec<u64>>> {
    let size = labels.len() as u64;
    let distinct = labels.iter().collect::<HashSet<_>>().len() as u64;
    let rank = |v: &[u64]| v.iter().zip(orders).fold(0usize, |acc, (x, n)| acc * *n as usize + *x as usize);
    let budget = DEFAULT_RETRIES + 4 * (64 - size.leading_zeros()) as usize;
    let mut chars: Vec<Vec<u64>> = Vec::new();
    for _ in 0..budget {
        chars.push(hsp_sample(orders, labels, rng)?);
        let k = annihilator(orders, &chars);
        let ksize = crate::abelian_engine::span(&k, orders).len() as u64;
        if ksize * distinct == size && k.iter().all(|v| labels[rank(v)] == labels[0]) {
            return Ok(k);
        }
    }
    Err(Error::RetryBudget(budget))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn qft_of_zero_is_uniform() {
        let mut s = StateVector::zero(&[4, 3]).unwrap();
        s.qft().unwrap();
        for a in s.amplitudes() {
            assert!((a.norm_sqr() - 1.0 / 12.0).abs() < 1e-12);
        }
    }

    #[test]
    fn continued_fractions() {
        assert_eq!(convergent_denominators(3, 8), vec![1, 2, 3, 8]);
        assert!(convergent_denominators(0, 8).is_empty() || convergent_denominators(0, 8) == vec![1]);
    }

    #[test]
    fn shor_small_moduli() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in 2..=64u64 {
            for a in 1..n {
                if arith::gcd(a, n) != 1 || (a * 7 + n) % 5 != 0 {
                    continue;
                }
                let want = arith::order_from_exponent(arith::units(n).len() as u64, |e| arith::pow_mod(a, e as u128, n) == 1);
                assert_eq!(shor_order(a, n, &mut rng).unwrap(), want, "a={a} n={n}");
            }
        }
        assert!(shor_order(2, 4, &mut rng).is_err());
        assert!(shor_order(2, 65, &mut rng).is_err());
    }

    #[test]
    fn hsp_samples_are_orthogonal() {
        // hidden subgroup <(2, 1)> in Z_4 x Z_2
        let orders = [4u64, 2];
        let labels: Vec<usize> = (0..8).map(|i| (i / 2 + 2 * (i % 2)) % 4).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..50 {
            let y = hsp_sample(&orders, &labels, &mut rng).unwrap();
            assert!(orthogonal(&orders, &y, &[2, 1]));
        }
        let k = hsp_solve(&orders, &labels, &mut rng).unwrap();
        let span = crate::abelian_engine::span(&k, &orders);
        assert_eq!(span, HashSet::from([vec![0, 0], vec![2, 1]]));
    }
}
