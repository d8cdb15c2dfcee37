use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use super::disc::{disc_poly, DiscPolyTable};

/// Shared store of disc-polynomial tables keyed by `(p, q, alpha)`.
///
/// Concurrent inserts of the same key race harmlessly: every writer stores
/// an identical table and the last one wins.
#[derive(Debug, Default)]
pub struct DiscPolyCache {
    tables: RwLock<HashMap<(usize, usize, usize), Arc<DiscPolyTable>>>,
}

impl DiscPolyCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// Process-wide cache.
    pub fn global() -> &'static DiscPolyCache {
        static CACHE: OnceLock<DiscPolyCache> = OnceLock::new();
        CACHE.get_or_init(DiscPolyCache::new)
    }

    pub fn get(&self, p: usize, q: usize, alpha: usize) -> Arc<DiscPolyTable> {
        let key = (p, q, alpha);
        if let Some(t) = self
            .tables
            .read()
            .unwrap_or_else(|e| e.into_inner())
            .get(&key)
        {
            return Arc::clone(t);
        }
        let table = Arc::new(disc_poly(p, q, alpha));
        self.tables
            .write()
            .unwrap_or_else(|e| e.into_inner())
            .insert(key, Arc::clone(&table));
        table
    }

    pub fn len(&self) -> usize {
        self.tables.read().unwrap_or_else(|e| e.into_inner()).len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rayon::prelude::*;

    #[test]
    fn concurrent_fill_is_consistent() {
        let cache = DiscPolyCache::new();
        (0..400).into_par_iter().for_each(|i| {
            let (p, q) = (i % 7, (i / 7) % 5);
            let t = cache.get(p, q, 2);
            assert_eq!(*t, disc_poly(p, q, 2));
        });
        assert_eq!(cache.len(), 35);
    }
}
