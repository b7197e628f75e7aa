/// A homomorphism between finite abelian groups given by cyclic bases:
/// entry `(i, j)` is the `i`-th coordinate of the image of the `j`-th
/// source generator, reduced mod `target_orders[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomMatrix {
    entries: Vec<Vec<u64>>,
    target: Vec<u64>,
    source: Vec<u64>,
}

impl HomMatrix {
    pub fn new(entries: Vec<Vec<u64>>, target: Vec<u64>, source: Vec<u64>) -> Self {
        let entries = entries
            .into_iter()
            .zip(&target)
            .map(|(row, &q)| row.into_iter().map(|x| x % q).collect())
            .collect();
        HomMatrix { entries, target, source }
    }

    pub fn zero(target: Vec<u64>, source: Vec<u64>) -> Self {
        let entries = vec![vec![0; source.len()]; target.len()];
        HomMatrix { entries, target, source }
    }

    pub fn identity(orders: Vec<u64>) -> Self {
        let s = orders.len();
        let entries = (0..s).map(|i| (0..s).map(|j| u64::from(i == j) % orders[i]).collect()).collect();
        HomMatrix {
            entries,
            target: orders.clone(),
            source: orders,
        }
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.entries
    }

    pub fn target_orders(&self) -> &[u64] {
        &self.target
    }

    pub fn source_orders(&self) -> &[u64] {
        &self.source
    }

    pub fn column(&self, j: usize) -> Vec<u64> {
        self.entries.iter().map(|r| r[j]).collect()
    }

    pub fn apply(&self, v: &[u64]) -> Vec<u64> {
        self.entries
            .iter()
            .zip(&self.target)
            .map(|(row, &q)| {
                row.iter()
                    .zip(v)
                    .fold(0u128, |acc, (&a, &b)| (acc + a as u128 * b as u128) % q as u128) as u64
            })
            .collect()
    }

    /// `self o other`.
    pub fn compose(&self, other: &HomMatrix) -> HomMatrix {
        let cols: Vec<Vec<u64>> = (0..other.source.len()).map(|j| self.apply(&other.column(j))).collect();
        let entries = (0..self.target.len()).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
        HomMatrix {
            entries,
            target: self.target.clone(),
            source: other.source.clone(),
        }
    }

    pub fn add(&self, other: &HomMatrix) -> HomMatrix {
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .zip(&self.target)
            .map(|((a, b), &q)| a.iter().zip(b).map(|(x, y)| (x + y) % q).collect())
            .collect();
        HomMatrix {
            entries,
            target: self.target.clone(),
            source: self.source.clone(),
        }
    }

    pub fn scale(&self, c: u64) -> HomMatrix {
        let entries = self
            .entries
            .iter()
            .zip(&self.target)
            .map(|(row, &q)| row.iter().map(|&x| ((x as u128 * c as u128) % q as u128) as u64).collect())
            .collect();
        HomMatrix {
            entries,
            target: self.target.clone(),
            source: self.source.clone(),
        }
    }

    pub fn pow(&self, mut e: u64) -> HomMatrix {
        let mut result = HomMatrix::identity(self.source.clone());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.compose(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.compose(&base);
            }
        }
        result
    }

    pub fn is_identity(&self) -> bool {
        *self == HomMatrix::identity(self.source.clone())
    }

    /// Multiplicative order of an endomorphism, by repeated composition.
    pub fn order(&self) -> u64 {
        let mut cur = self.clone();
        let mut n = 1;
        while !cur.is_identity() {
            cur = cur.compose(self);
            n += 1;
        }
        n
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_and_order() {
        let h = HomMatrix::new(vec![vec![0, 8], vec![1, 0]], vec![9, 9], vec![9, 9]);
        assert_eq!(h.order(), 4);
        assert_eq!(h.pow(2), HomMatrix::identity(vec![9, 9]).scale(8));
        assert_eq!(h.apply(&[1, 2]), vec![7, 1]);
    }
}
