use rand::seq::SliceRandom;
use rand::Rng;

use super::{closure, elements, BlackBoxGroup, Element};
use crate::error::{Error, Result};

/// The same group behind a different generating set.
#[derive(Clone, Debug)]
pub struct Regenerated<G> {
    inner: G,
    gens: Vec<Element>,
}

impl<G: BlackBoxGroup> Regenerated<G> {
    /// Fails unless `gens` generates the whole group.
    pub fn new(inner: G, gens: Vec<Element>) -> Result<Self> {
        let n = elements(&inner)?.len();
        if gens.iter().any(|g| !inner.is_valid(g)) || closure(&inner, &gens)?.len() != n {
            return Err(Error::InvalidSpec("elements do not generate the group".into()));
        }
        Ok(Regenerated { inner, gens })
    }

    /// Random elements added until they generate, then shuffled.
    pub fn random<R: Rng + ?Sized>(inner: G, rng: &mut R) -> Result<Self> {
        let all = elements(&inner)?;
        let mut gens: Vec<Element> = Vec::new();
        while closure(&inner, &gens)?.len() != all.len() {
            gens.push(all[rng.gen_range(0..all.len())].clone());
        }
        gens.shuffle(rng);
        Ok(Regenerated { inner, gens })
    }

    pub fn inner(&self) -> &G {
        &self.inner
    }
}

impl<G: BlackBoxGroup> BlackBoxGroup for Regenerated<G> {
    fn encoding_len(&self) -> usize {
        self.inner.encoding_len()
    }
    fn identity(&self) -> Element {
        self.inner.identity()
    }
    fn generators(&self) -> Vec<Element> {
        self.gens.clone()
    }
    fn multiply(&self, g: &Element, h: &Element) -> Result<Element> {
        self.inner.multiply(g, h)
    }
    fn is_valid(&self, g: &Element) -> bool {
        self.inner.is_valid(g)
    }
    fn known_order(&self) -> Option<u64> {
        self.inner.known_order()
    }
}
