//! Concurrent memo table.
//!
//! Values are computed outside any lock; when two threads race on the same
//! key the first insertion wins and both callers get that value. Readers only
//! ever see completed entries.

use dashmap::DashMap;
use std::hash::Hash;

pub struct Memo<K, V> {
    map: DashMap<K, V>,
}

impl<K: Eq + Hash + Clone, V: Clone> Memo<K, V> {
    pub fn new() -> Self {
        Memo { map: DashMap::new() }
    }

    pub fn get(&self, k: &K) -> Option<V> {
        self.map.get(k).map(|e| e.value().clone())
    }

    pub fn get_or_compute(&self, k: &K, f: impl FnOnce() -> V) -> V {
        if let Some(v) = self.get(k) {
            return v;
        }
        let v = f();
        self.map.entry(k.clone()).or_insert(v).value().clone()
    }

    pub fn insert_if_absent(&self, k: K, v: V) {
        self.map.entry(k).or_insert(v);
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn entries(&self) -> Vec<(K, V)> {
        self.map.iter().map(|e| (e.key().clone(), e.value().clone())).collect()
    }
}

impl<K: Eq + Hash + Clone, V: Clone> Default for Memo<K, V> {
    fn default() -> Self {
        Self::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_writer_wins() {
        let m: Memo<u32, u32> = Memo::new();
        assert_eq!(m.get_or_compute(&1, || 10), 10);
        assert_eq!(m.get_or_compute(&1, || 20), 10);
        m.insert_if_absent(1, 30);
        assert_eq!(m.get(&1), Some(10));
        assert_eq!(m.len(), 1);
    }
}
