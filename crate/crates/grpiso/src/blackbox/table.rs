use super::{BlackBoxGroup, Element};
use crate::error::{Error, Result};

/// A group given by its full multiplication table over `0..n`.
#[derive(Clone, Debug)]
pub struct TableGroup {
    n: usize,
    table: Vec<Vec<usize>>,
    identity: usize,
    gens: Vec<usize>,
}

impl TableGroup {
    /// Validates closure, identity, inverses and associativity.
    pub fn new(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidSpec("empty table".into()));
        }
        if table.iter().any(|row| row.len() != n || row.iter().any(|&v| v >= n)) {
            return Err(Error::InvalidSpec("table must be n x n with entries in 0..n".into()));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| Error::InvalidSpec("no identity element".into()))?;
        for x in 0..n {
            if !(0..n).any(|y| table[x][y] == identity) {
                return Err(Error::InvalidSpec(format!("element {x} has no inverse")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a][b];
                for c in 0..n {
                    if table[ab][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidSpec("table is not associative".into()));
                    }
                }
            }
        }
        // greedy generating set: add anything outside the current subgroup
        let mut gens = Vec::new();
        let mut inside = vec![false; n];
        inside[identity] = true;
        for x in 0..n {
            if inside[x] {
                continue;
            }
            gens.push(x);
            let mut members: Vec<usize> = (0..n).filter(|&v| inside[v]).collect();
            let mut i = 0;
            while i < members.len() {
                for &g in &gens {
                    let y = table[members[i]][g];
                    if !inside[y] {
                        inside[y] = true;
                        members.push(y);
                    }
                }
                i += 1;
            }
        }
        Ok(TableGroup {
            n,
            table,
            identity,
            gens,
        })
    }

    /// Text form: first line `n`, then `n` rows of `n` indices.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (ln, first) = lines.next().ok_or(Error::Parse {
            line: 1,
            msg: "missing order".into(),
        })?;
        let n: usize = first.parse().map_err(|_| Error::Parse {
            line: ln,
            msg: "expected the group order".into(),
        })?;
        let mut table = Vec::with_capacity(n);
        for (ln, l) in lines.take(n) {
            let row = l
                .split_whitespace()
                .map(|t| t.parse::<usize>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| Error::Parse {
                    line: ln,
                    msg: e.to_string(),
                })?;
            table.push(row);
        }
        if table.len() != n {
            return Err(Error::Parse {
                line: ln,
                msg: format!("expected {n} rows"),
            });
        }
        Self::new(table)
    }

    /// Cayley table of any enumerable black-box group.
    pub fn from_group<G: BlackBoxGroup + ?Sized>(g: &G) -> Result<Self> {
        let els = super::elements(g)?;
        let index: std::collections::HashMap<&Element, usize> =
            els.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let mut table = vec![vec![0; els.len()]; els.len()];
        for (i, a) in els.iter().enumerate() {
            for (j, b) in els.iter().enumerate() {
                table[i][j] = index[&g.multiply(a, b)?];
            }
        }
        Self::new(table)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    fn len(&self) -> usize {
        if self.n <= 1 << 16 {
            2
        } else {
            4
        }
    }

    pub fn encode(&self, i: usize) -> Element {
        let bytes = (i as u32).to_be_bytes();
        Element(bytes[4 - self.len()..].to_vec())
    }

    pub fn decode(&self, g: &Element) -> Result<usize> {
        if g.0.len() != self.len() {
            return Err(Error::InvalidEncoding);
        }
        let v = g.0.iter().fold(0usize, |acc, b| (acc << 8) | *b as usize);
        if v < self.n {
            Ok(v)
        } else {
            Err(Error::InvalidEncoding)
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.n);
        for row in &self.table {
            let r: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            s.push_str(&r.join(" "));
            s.push('\n');
        }
        s
    }
}

impl BlackBoxGroup for TableGroup {
    fn encoding_len(&self) -> usize {
        self.len()
    }

    fn identity(&self) -> Element {
        self.encode(self.identity)
    }

    fn generators(&self) -> Vec<Element> {
        self.gens.iter().map(|&g| self.encode(g)).collect()
    }

    fn multiply(&self, g: &Element, h: &Element) -> Result<Element> {
        Ok(self.encode(self.table[self.decode(g)?][self.decode(h)?]))
    }

    fn is_valid(&self, g: &Element) -> bool {
        self.decode(g).is_ok()
    }

    fn known_order(&self) -> Option<u64> {
        Some(self.n as u64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blackbox::{build_group, group_order, ClassSGroupSpec};

    #[test]
    fn cyclic_table() {
        let n = 6;
        let table: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        let g = TableGroup::new(table).unwrap();
        assert_eq!(group_order(&g).unwrap(), 6);
        let back = TableGroup::parse(&g.to_text()).unwrap();
        assert_eq!(back.order(), 6);
    }

    #[test]
    fn rejects_non_groups() {
        assert!(TableGroup::new(vec![vec![0, 0], vec![0, 0]]).is_err());
        assert!(TableGroup::parse("2\n0 1\n").is_err());
    }

    #[test]
    fn table_of_spec_group() {
        let s3 = build_group(&ClassSGroupSpec::new(vec![3], 2, vec![vec![2]], 8)).unwrap();
        let t = TableGroup::from_group(&s3).unwrap();
        assert_eq!(t.order(), 6);
        assert!(!crate::blackbox::is_abelian(&t, &t.generators()).unwrap());
    }
}
