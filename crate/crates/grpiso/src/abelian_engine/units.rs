use crate::arith;
use crate::blackbox::{BlackBoxGroup, Element};
use crate::error::{Error, Result};

/// The unit group `Z_m^*` as a black-box group (multiplication mod `m`).
#[derive(Clone, Debug)]
pub struct UnitGroup {
    m: u64,
    gens: Vec<u64>,
}

impl UnitGroup {
    pub fn new(m: u64) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidSpec("modulus must be positive".into()));
        }
        let units = arith::units(m);
        let mut inside = std::collections::HashSet::from([1 % m]);
        let mut gens = Vec::new();
        for &u in &units {
            if inside.contains(&u) {
                continue;
            }
            gens.push(u);
            let mut frontier: Vec<u64> = inside.iter().copied().collect();
            while let Some(x) = frontier.pop() {
                for &g in &gens {
                    let y = arith::mul_mod(x, g, m);
                    if inside.insert(y) {
                        frontier.push(y);
                    }
                }
            }
        }
        Ok(UnitGroup { m, gens })
    }

    pub fn modulus(&self) -> u64 {
        self.m
    }

    pub fn encode(&self, k: u64) -> Element {
        Element((k % self.m).to_be_bytes().to_vec())
    }

    pub fn decode(&self, g: &Element) -> Result<u64> {
        let bytes: [u8; 8] = g.0.as_slice().try_into().map_err(|_| Error::InvalidEncoding)?;
        let k = u64::from_be_bytes(bytes);
        if k < self.m.max(2) && (self.m == 1 || arith::gcd(k, self.m) == 1) {
            Ok(k)
        } else {
            Err(Error::InvalidEncoding)
        }
    }
}

impl BlackBoxGroup for UnitGroup {
    fn encoding_len(&self) -> usize {
        8
    }

    fn identity(&self) -> Element {
        self.encode(1)
    }

    fn generators(&self) -> Vec<Element> {
        self.gens.iter().map(|&g| self.encode(g)).collect()
    }

    fn multiply(&self, g: &Element, h: &Element) -> Result<Element> {
        Ok(self.encode(arith::mul_mod(self.decode(g)?, self.decode(h)?, self.m)))
    }

    fn is_valid(&self, g: &Element) -> bool {
        self.decode(g).is_ok()
    }

    fn known_order(&self) -> Option<u64> {
        Some(arith::units(self.m).len() as u64)
    }
}
