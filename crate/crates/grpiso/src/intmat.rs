//! Integer lattices that contain `M_j e_j` for fixed moduli, kept in
//! Hermite form, plus a Smith form with column-transform tracking.

use crate::arith::ext_gcd;

/// Row lattice in `Z^n` containing `moduli[j] * e_j` for every column
/// (moduli must be positive),
/// stored as an upper-triangular Hermite basis (one pivot row per column).
#[derive(Clone, Debug)]
pub struct Lattice {
    rows: Vec<Vec<i128>>,
}

impl Lattice {
    pub fn new(moduli: &[u64]) -> Self {
        let n = moduli.len();
        let rows = (0..n)
            .map(|j| {
                let mut r = vec![0i128; n];
                r[j] = moduli[j].max(1) as i128;
                r
            })
            .collect();
        Lattice { rows }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Reduce entries after column `k` of `v` by the pivot rows.
    fn reduce_tail(&self, v: &mut [i128], k: usize) {
        for j in k + 1..v.len() {
            let p = self.rows[j][j];
            let q = v[j].div_euclid(p);
            if q != 0 {
                for (x, y) in v[j..].iter_mut().zip(&self.rows[j][j..]) {
                    *x -= q * y;
                }
            }
        }
    }

    pub fn insert(&mut self, v: &[i128]) {
        let n = self.dim();
        let mut v = v.to_vec();
        for k in 0..n {
            if v[k] == 0 {
                continue;
            }
            let b = self.rows[k].clone();
            let (g, a, c) = ext_gcd(b[k], v[k]);
            let (bk, vk) = (b[k] / g, v[k] / g);
            let mut nb: Vec<i128> = b.iter().zip(&v).map(|(x, y)| a * x + c * y).collect();
            let mut nv: Vec<i128> = b.iter().zip(&v).map(|(x, y)| vk * x - bk * y).collect();
            self.reduce_tail(&mut nb, k);
            self.rows[k] = nb;
            self.reduce_tail(&mut nv, k);
            v = nv;
        }
    }

    /// Pivot row of column `k`.
    pub fn row(&self, k: usize) -> &[i128] {
        &self.rows[k]
    }

    pub fn rows(&self) -> &[Vec<i128>] {
        &self.rows
    }

    pub fn contains(&self, v: &[i128]) -> bool {
        let mut v = v.to_vec();
        for k in 0..self.dim() {
            let p = self.rows[k][k];
            if v[k].rem_euclid(p) != 0 {
                return false;
            }
            let q = v[k] / p;
            for (x, y) in v[k..].iter_mut().zip(&self.rows[k][k..]) {
                *x -= q * y;
            }
        }
        true
    }
}

/// Kernel of `Z^N -> Z_{o_1} x ... x Z_{o_s}`, `e_j -> images[j]`, taken
/// inside `Z_{n_1} x ... x Z_{n_N}`. Returns generators reduced mod `n_j`.
pub fn kernel(images: &[Vec<u64>], target_orders: &[u64], source_orders: &[u64]) -> Vec<Vec<u64>> {
    let s = target_orders.len();
    let n = source_orders.len();
    let mut moduli = target_orders.to_vec();
    moduli.extend_from_slice(source_orders);
    let mut lat = Lattice::new(&moduli);
    for (j, img) in images.iter().enumerate() {
        let mut v = vec![0i128; s + n];
        for (i, x) in img.iter().enumerate() {
            v[i] = *x as i128;
        }
        v[s + j] = 1;
        lat.insert(&v);
    }
    let mut out = Vec::new();
    for k in s..s + n {
        let row = lat.row(k);
        debug_assert!(row[..s].iter().all(|&x| x == 0));
        let gen: Vec<u64> = (0..n)
            .map(|j| row[s + j].rem_euclid(source_orders[j].max(1) as i128) as u64)
            .collect();
        if gen.iter().any(|&x| x != 0) {
            out.push(gen);
        }
    }
    out
}

/// Smith form `U A V = D` of a square nonsingular integer matrix, returning
/// the diagonal of `D` (nonnegative), `V` and `V^-1`.
pub fn smith(a: &[Vec<i128>]) -> (Vec<i128>, Vec<Vec<i128>>, Vec<Vec<i128>>) {
    let n = a.len();
    let mut a: Vec<Vec<i128>> = a.to_vec();
    let ident = |n: usize| -> Vec<Vec<i128>> {
        (0..n).map(|i| (0..n).map(|j| i128::from(i == j)).collect()).collect()
    };
    let mut v = ident(n);
    let mut vinv = ident(n);

    // column_b -= q * column_a, tracked in V and V^-1
    let col_op = |a: &mut Vec<Vec<i128>>, v: &mut Vec<Vec<i128>>, vinv: &mut Vec<Vec<i128>>, dst: usize, src: usize, q: i128| {
        for row in a.iter_mut() {
            row[dst] -= q * row[src];
        }
        for row in v.iter_mut() {
            row[dst] -= q * row[src];
        }
        // inverse: row_src += q * row_dst
        let d = vinv[dst].clone();
        for (x, y) in vinv[src].iter_mut().zip(d) {
            *x += q * y;
        }
    };

    for t in 0..n {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..n {
                for j in t..n {
                    if a[i][j] != 0 && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else { break };
            a.swap(bi, t);
            if bj != t {
                for row in a.iter_mut() {
                    row.swap(bj, t);
                }
                for row in v.iter_mut() {
                    row.swap(bj, t);
                }
                vinv.swap(bj, t);
            }
            let mut clean = true;
            for i in t + 1..n {
                let q = a[i][t].div_euclid(a[t][t]);
                if q != 0 {
                    let pr = a[t].clone();
                    for (x, y) in a[i].iter_mut().zip(&pr) {
                        *x -= q * y;
                    }
                }
                if a[i][t] != 0 {
                    clean = false;
                }
            }
            for j in t + 1..n {
                let q = a[t][j].div_euclid(a[t][t]);
                if q != 0 {
                    col_op(&mut a, &mut v, &mut vinv, j, t, q);
                }
                if a[t][j] != 0 {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            let bad = (t + 1..n).find(|&i| (t + 1..n).any(|j| a[i][j] % a[t][t] != 0));
            match bad {
                Some(i) => {
                    let r = a[i].clone();
                    for (x, y) in a[t].iter_mut().zip(&r) {
                        *x += y;
                    }
                }
                None => break,
            }
        }
        if a[t][t] < 0 {
            for x in a[t].iter_mut() {
                *x = -*x;
            }
        }
    }
    let d = (0..n).map(|i| a[i][i]).collect();
    (d, v, vinv)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn matmul(a: &[Vec<i128>], b: &[Vec<i128>]) -> Vec<Vec<i128>> {
        let n = a.len();
        (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect())
            .collect()
    }

    #[test]
    fn smith_small() {
        let a = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]];
        let (d, v, vinv) = smith(&a);
        assert_eq!(d, vec![2, 6, 12]);
        let id: Vec<Vec<i128>> = (0..3).map(|i| (0..3).map(|j| i128::from(i == j)).collect()).collect();
        assert_eq!(matmul(&v, &vinv), id);
    }

    #[test]
    fn kernel_of_parity() {
        // Z_6 -> Z_2, 1 -> 1: kernel <2>
        let k = kernel(&[vec![1]], &[2], &[6]);
        assert_eq!(k.len(), 1);
        assert_eq!(k[0][0] % 2, 0);
        assert_eq!(crate::arith::gcd(k[0][0], 6), 2);
    }

    #[test]
    fn kernel_two_dims() {
        // Z_4 x Z_2 -> Z_4, (a, b) -> a + 2b: kernel generated by (2, 1)
        let k = kernel(&[vec![1], vec![2]], &[4], &[4, 2]);
        let mut members = std::collections::HashSet::new();
        for a in 0..4u64 {
            for b in 0..2u64 {
                if (a + 2 * b) % 4 == 0 {
                    members.insert((a, b));
                }
            }
        }
        let mut span = std::collections::HashSet::from([(0u64, 0u64)]);
        loop {
            let before = span.len();
            for &(x, y) in span.clone().iter() {
                for g in &k {
                    span.insert(((x + g[0]) % 4, (y + g[1]) % 2));
                }
            }
            if span.len() == before {
                break;
            }
        }
        assert_eq!(span, members);
    }

    #[test]
    fn lattice_membership() {
        let mut l = Lattice::new(&[12, 12]);
        l.insert(&[4, 6]);
        assert!(l.contains(&[8, 0]));
        assert!(l.contains(&[4, 6]));
        assert!(l.contains(&[4, 0]));
        assert!(!l.contains(&[2, 0]));
        assert!(!l.contains(&[0, 3]));
    }
}
