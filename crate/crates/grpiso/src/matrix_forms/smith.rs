//! Smith normal form of `xI - M` over `F[x]`, tracking enough of the row
//! transformation to recover a cyclic decomposition of `F^r` under `M`.

use super::matrix::Matrix;
use crate::field_poly::{FiniteField, Poly};

pub(crate) struct CyclicDecomposition<F: FiniteField> {
    /// Nonconstant monic invariant factors, each dividing the next.
    pub factors: Vec<Poly<F>>,
    /// One generator per factor; `factors[j]` annihilates `vectors[j]`.
    pub vectors: Vec<Vec<F::Elem>>,
}

type PMat<F> = Vec<Vec<Poly<F>>>;

pub(crate) fn cyclic_decomposition<F: FiniteField>(m: &Matrix<F>) -> CyclicDecomposition<F> {
    let f = m.field();
    let r = m.dim();
    let x = Poly::x(f);
    let mut a: PMat<F> = (0..r)
        .map(|i| {
            (0..r)
                .map(|j| {
                    let c = Poly::constant(f, f.neg(m.get(i, j)));
                    if i == j {
                        &x + &c
                    } else {
                        c
                    }
                })
                .collect()
        })
        .collect();
    // inverse of the accumulated row transformation
    let mut uinv: PMat<F> = (0..r)
        .map(|i| (0..r).map(|j| if i == j { Poly::one(f) } else { Poly::zero(f) }).collect())
        .collect();

    for t in 0..r {
        loop {
            // smallest-degree nonzero entry of the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in t..r {
                for j in t..r {
                    if !a[i][j].is_zero()
                        && best.map_or(true, |(bi, bj)| a[i][j].deg() < a[bi][bj].deg())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else { break };
            if bi != t {
                a.swap(bi, t);
                for row in uinv.iter_mut() {
                    row.swap(bi, t);
                }
            }
            if bj != t {
                for row in a.iter_mut() {
                    row.swap(bj, t);
                }
            }
            let mut clean = true;
            for i in t + 1..r {
                if a[i][t].is_zero() {
                    continue;
                }
                let (q, _) = a[i][t].div_rem(&a[t][t]).unwrap();
                // row_i -= q * row_t
                for j in t..r {
                    let s = &a[i][j] - &(&q * &a[t][j]);
                    a[i][j] = s;
                }
                // uinv column t += q * column i
                for row in uinv.iter_mut() {
                    let s = &row[t] + &(&q * &row[i]);
                    row[t] = s;
                }
                if !a[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..r {
                if a[t][j].is_zero() {
                    continue;
                }
                let (q, _) = a[t][j].div_rem(&a[t][t]).unwrap();
                for i in t..r {
                    let s = &a[i][j] - &(&q * &a[i][t]);
                    a[i][j] = s;
                }
                if !a[t][j].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // pivot must divide the whole trailing block
            let bad = (t + 1..r).find(|&i| (t + 1..r).any(|j| !a[t][t].divides(&a[i][j])));
            match bad {
                Some(i) => {
                    // row_t += row_i
                    for j in t..r {
                        let s = &a[t][j] + &a[i][j];
                        a[t][j] = s;
                    }
                    for row in uinv.iter_mut() {
                        let s = &row[i] - &row[t];
                        row[i] = s;
                    }
                }
                None => break,
            }
        }
        if let Some(lead) = a[t][t].lead().cloned() {
            let inv = f.inv(&lead).unwrap();
            a[t][t] = a[t][t].scale(&inv);
            for row in uinv.iter_mut() {
                row[t] = row[t].scale(&lead);
            }
        }
    }

    let mut factors = Vec::new();
    let mut vectors = Vec::new();
    for t in 0..r {
        if a[t][t].deg() == 0 {
            continue;
        }
        let mut v = vec![f.zero(); r];
        for (i, row) in uinv.iter().enumerate() {
            let mut e = vec![f.zero(); r];
            e[i] = f.one();
            let w = m.poly_apply(&row[t], &e);
            for (acc, c) in v.iter_mut().zip(w) {
                *acc = f.add(acc, &c);
            }
        }
        factors.push(a[t][t].clone());
        vectors.push(v);
    }
    CyclicDecomposition { factors, vectors }
}
