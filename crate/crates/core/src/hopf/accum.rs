use std::collections::BTreeMap;

use crate::cyclotomic::Cyc;

/// Sparse accumulator that drops cancelled entries on extraction.
pub struct Accumulator<K: Ord> {
    map: BTreeMap<K, Cyc>,
}

impl<K: Ord + Copy> Default for Accumulator<K> {
    fn default() -> Self {
        Self::new()
    }
}

impl<K: Ord + Copy> Accumulator<K> {
    pub fn new() -> Self {
        Accumulator { map: BTreeMap::new() }
    }

    pub fn add(&mut self, k: K, c: &Cyc) {
        if c.is_zero() {
            return;
        }
        match self.map.get_mut(&k) {
            Some(v) => *v += c,
            None => {
                self.map.insert(k, c.clone());
            }
        }
    }

    /// Adds `a·b` at `k`.
    pub fn add_product(&mut self, k: K, a: &Cyc, b: &Cyc) {
        match self.map.get_mut(&k) {
            Some(v) => v.add_product(a, b),
            None => {
                let p = a * b;
                if !p.is_zero() {
                    self.map.insert(k, p);
                }
            }
        }
    }

    pub fn into_map(mut self) -> BTreeMap<K, Cyc> {
        self.map.retain(|_, v| !v.is_zero());
        self.map
    }

    pub fn into_terms(self) -> Vec<(K, Cyc)> {
        self.into_map().into_iter().collect()
    }
}
