use std::fmt;
use std::hash::{Hash, Hasher};

use rand::Rng;

use crate::error::{Error, Result};
use crate::field_poly::{FiniteField, Poly, PrimeField};

/// Dense square matrix over a finite field, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<F: FiniteField> {
    field: F,
    r: usize,
    entries: Vec<F::Elem>,
}

impl<F: FiniteField> Matrix<F> {
    pub fn from_rows(field: &F, rows: Vec<Vec<F::Elem>>) -> Result<Self> {
        let r = rows.len();
        if rows.iter().any(|row| row.len() != r) {
            return Err(Error::DimensionMismatch("matrix rows must have length r".into()));
        }
        Ok(Matrix {
            field: field.clone(),
            r,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_ints(field: &F, rows: &[Vec<i64>]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|row| row.iter().map(|&v| field.from_int(v)).collect())
            .collect();
        Self::from_rows(field, rows)
    }

    pub fn zero(field: &F, r: usize) -> Self {
        Matrix {
            field: field.clone(),
            r,
            entries: vec![field.zero(); r * r],
        }
    }

    pub fn identity(field: &F, r: usize) -> Self {
        let mut m = Self::zero(field, r);
        for i in 0..r {
            m.set(i, i, field.one());
        }
        m
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(field: &F, cols: &[Vec<F::Elem>]) -> Result<Self> {
        let r = cols.len();
        let mut m = Self::zero(field, r);
        for (j, c) in cols.iter().enumerate() {
            if c.len() != r {
                return Err(Error::DimensionMismatch("column length".into()));
            }
            for (i, v) in c.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        Ok(m)
    }

    /// Block-diagonal matrix with the given blocks in order.
    pub fn block_diag(field: &F, blocks: &[Matrix<F>]) -> Self {
        let r = blocks.iter().map(|b| b.r).sum();
        let mut m = Self::zero(field, r);
        let mut off = 0;
        for b in blocks {
            for i in 0..b.r {
                for j in 0..b.r {
                    m.set(off + i, off + j, b.get(i, j).clone());
                }
            }
            off += b.r;
        }
        m
    }

    pub fn random<R: Rng + ?Sized>(field: &F, r: usize, rng: &mut R) -> Self {
        Matrix {
            field: field.clone(),
            r,
            entries: (0..r * r).map(|_| field.random(rng)).collect(),
        }
    }

    pub fn random_invertible<R: Rng + ?Sized>(field: &F, r: usize, rng: &mut R) -> Self {
        loop {
            let m = Self::random(field, r, rng);
            if m.is_invertible() {
                return m;
            }
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.r
    }

    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.entries[i * self.r + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F::Elem) {
        self.entries[i * self.r + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F::Elem] {
        &self.entries[i * self.r..(i + 1) * self.r]
    }

    pub fn column(&self, j: usize) -> Vec<F::Elem> {
        (0..self.r).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(&self.field, self.r)
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.r != other.r {
            return Err(Error::DimensionMismatch(format!("{} vs {}", self.r, other.r)));
        }
        Ok(())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.mul(other))
    }

    /// Product; panics on mismatched dimensions.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.r, other.r, "dimension mismatch");
        let f = &self.field;
        let r = self.r;
        let mut out = Self::zero(f, r);
        for i in 0..r {
            for k in 0..r {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..r {
                    let t = f.mul(a, other.get(k, j));
                    let s = f.add(out.get(i, j), &t);
                    out.set(i, j, s);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let f = &self.field;
        Matrix {
            field: f.clone(),
            r: self.r,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| f.add(a, b)).collect(),
        }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = &self.field;
        Matrix {
            field: f.clone(),
            r: self.r,
            entries: self.entries.iter().map(|a| f.mul(a, c)).collect(),
        }
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        (0..self.r)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b)))
            })
            .collect()
    }

    pub fn pow(&self, mut e: u128) -> Self {
        let mut result = Self::identity(&self.field, self.r);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        result
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(&self.field, self.r);
        for i in 0..self.r {
            for j in 0..self.r {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// `q(M) v` by Horner's rule.
    pub fn poly_apply(&self, q: &Poly<F>, v: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let mut acc = vec![f.zero(); self.r];
        for c in q.coeffs().iter().rev() {
            acc = self.mul_vec(&acc);
            for (a, x) in acc.iter_mut().zip(v) {
                *a = f.add(a, &f.mul(c, x));
            }
        }
        acc
    }

    /// Row-reduces a copy; returns (rank, determinant).
    fn eliminate(&self, mut companion: Option<&mut Self>) -> (usize, F::Elem) {
        let f = &self.field;
        let r = self.r;
        let mut a = self.clone();
        let mut det = f.one();
        let mut rank = 0;
        for col in 0..r {
            let Some(piv) = (rank..r).find(|&i| !f.is_zero(a.get(i, col))) else {
                det = f.zero();
                continue;
            };
            if piv != rank {
                a.swap_rows(piv, rank);
                if let Some(c) = companion.as_deref_mut() {
                    c.swap_rows(piv, rank);
                }
                det = f.neg(&det);
            }
            let pv = a.get(rank, col).clone();
            det = f.mul(&det, &pv);
            let inv = f.inv(&pv).unwrap();
            a.scale_row(rank, &inv);
            if let Some(c) = companion.as_deref_mut() {
                c.scale_row(rank, &inv);
            }
            for i in 0..r {
                if i != rank && !f.is_zero(a.get(i, col)) {
                    let factor = f.neg(a.get(i, col));
                    a.add_row_multiple(i, rank, &factor);
                    if let Some(c) = companion.as_deref_mut() {
                        c.add_row_multiple(i, rank, &factor);
                    }
                }
            }
            rank += 1;
        }
        (rank, det)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.r {
            self.entries.swap(a * self.r + j, b * self.r + j);
        }
    }

    fn scale_row(&mut self, a: usize, c: &F::Elem) {
        for j in 0..self.r {
            let v = self.field.mul(self.get(a, j), c);
            self.set(a, j, v);
        }
    }

    /// `row_a += c * row_b`.
    fn add_row_multiple(&mut self, a: usize, b: usize, c: &F::Elem) {
        for j in 0..self.r {
            let t = self.field.mul(c, self.get(b, j));
            let v = self.field.add(self.get(a, j), &t);
            self.set(a, j, v);
        }
    }

    pub fn det(&self) -> F::Elem {
        self.eliminate(None).1
    }

    pub fn rank(&self) -> usize {
        self.eliminate(None).0
    }

    pub fn is_invertible(&self) -> bool {
        self.rank() == self.r
    }

    pub fn inverse(&self) -> Result<Self> {
        let mut inv = Self::identity(&self.field, self.r);
        let (rank, _) = self.eliminate(Some(&mut inv));
        if rank < self.r {
            return Err(Error::Singular);
        }
        Ok(inv)
    }

    pub(crate) fn require_invertible(&self) -> Result<()> {
        if self.is_invertible() {
            Ok(())
        } else {
            Err(Error::Singular)
        }
    }
}

impl<F: FiniteField> Hash for Matrix<F> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.r.hash(state);
        self.entries.hash(state);
    }
}

impl Matrix<PrimeField> {
    /// Entries as integers in `0..p`.
    pub fn to_ints(&self) -> Vec<Vec<u64>> {
        (0..self.r).map(|i| self.row(i).to_vec()).collect()
    }
}

/// Rows of space-separated entries.
impl<F: FiniteField> fmt::Display for Matrix<F>
where
    F::Elem: fmt::Display,
{
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.r {
            let row: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn inverse_roundtrip() {
        let f = PrimeField::new(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for r in 1..6 {
            let m = Matrix::random_invertible(&f, r, &mut rng);
            let inv = m.inverse().unwrap();
            assert!(m.mul(&inv).is_identity());
            assert!(inv.mul(&m).is_identity());
            assert_ne!(m.det(), 0);
        }
        let sing = Matrix::from_ints(&f, &[vec![1, 2], vec![2, 4]]).unwrap();
        assert_eq!(sing.inverse(), Err(Error::Singular));
        assert_eq!(sing.det(), 0);
    }

    #[test]
    fn det_is_multiplicative() {
        let f = PrimeField::new(7).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let a = Matrix::random(&f, 3, &mut rng);
            let b = Matrix::random(&f, 3, &mut rng);
            assert_eq!(a.mul(&b).det(), f.mul(&a.det(), &b.det()));
        }
    }

    #[test]
    fn poly_apply_matches_powers() {
        let f = PrimeField::new(3).unwrap();
        let m = Matrix::from_ints(&f, &[vec![0, 2], vec![1, 0]]).unwrap();
        let q = Poly::from_ints(&f, &[1, 2, 1]);
        let v = vec![1, 2];
        let direct = m
            .pow(2)
            .add(&m.scale(&2))
            .add(&Matrix::identity(&f, 2))
            .mul_vec(&v);
        assert_eq!(m.poly_apply(&q, &v), direct);
    }
}
