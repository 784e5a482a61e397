use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use super::cache::HornCache;
use super::{enumerate_u, filter_by, HornTriple, StMode};
use crate::error::HornError;

/// Largest ambient size built without an explicit override.
pub const DEFAULT_LIMIT: usize = 7;

/// All `T^n_p` for a fixed `n`, indexed by `p - 1`.
pub type Level = Arc<Vec<Vec<HornTriple>>>;

/// Memoized `T^n_p` tables, optionally backed by an on-disk cache.
///
/// Levels are built in increasing `n`; once built they are shared read-only.
#[derive(Debug)]
pub struct HornTable {
    limit: usize,
    cache: Option<HornCache>,
    memo: Mutex<HashMap<usize, Level>>,
}

impl Default for HornTable {
    fn default() -> Self {
        Self::new()
    }
}

impl HornTable {
    /// In-memory table with the default size limit and no disk cache.
    pub fn new() -> Self {
        Self { limit: DEFAULT_LIMIT, cache: None, memo: Mutex::new(HashMap::new()) }
    }

    /// Raises (or lowers) the ambient size limit.
    pub fn with_limit(mut self, limit: usize) -> Self {
        self.limit = limit;
        self
    }

    pub fn with_cache(mut self, cache: Option<HornCache>) -> Self {
        self.cache = cache;
        self
    }

    pub fn limit(&self) -> usize {
        self.limit
    }

    pub fn cache(&self) -> Option<&HornCache> {
        self.cache.as_ref()
    }

    /// `T^n_1, ..., T^n_n`.
    pub fn level(&self, n: usize) -> Result<Level, HornError> {
        if n == 0 {
            return Err(HornError::BadCardinality { n, p: 0 });
        }
        if n > self.limit {
            return Err(HornError::DeskScale { n, limit: self.limit });
        }
        if let Some(level) = self.memo.lock().expect("horn memo poisoned").get(&n) {
            return Ok(level.clone());
        }
        let level: Level = match self.cache.as_ref().and_then(|c| c.load(n)) {
            Some(levels) => Arc::new(levels),
            None => {
                let built = Arc::new(self.build(n)?);
                if let Some(cache) = &self.cache {
                    // The cache is advisory; a failed write only costs a rebuild later.
                    let _ = cache.store(n, &built);
                }
                built
            }
        };
        let mut memo = self.memo.lock().expect("horn memo poisoned");
        Ok(memo.entry(n).or_insert(level).clone())
    }

    fn build(&self, n: usize) -> Result<Vec<Vec<HornTriple>>, HornError> {
        let mut levels: Vec<Vec<HornTriple>> = Vec::with_capacity(n);
        for p in 1..=n {
            let candidates = enumerate_u(n, p)?;
            let kept = if p == 1 {
                candidates
            } else {
                let tests: Vec<HornTriple> =
                    if p < n { self.level(p)?.iter().flatten().filter(|t| t.p() < p).cloned().collect() } else { levels.iter().flatten().cloned().collect() };
                filter_by(candidates, &tests)
            };
            levels.push(kept);
        }
        Ok(levels)
    }

    /// `T^n_p` in canonical order.
    pub fn enumerate_t(&self, n: usize, p: usize) -> Result<Vec<HornTriple>, HornError> {
        if p == 0 || p > n {
            return Err(HornError::BadCardinality { n, p });
        }
        Ok(self.level(n)?[p - 1].clone())
    }

    /// Members of `T^{s+t}_p` admitted by `mode`.
    pub fn enumerate_t_st(&self, s: usize, t: usize, p: usize, mode: StMode) -> Result<Vec<HornTriple>, HornError> {
        if s == 0 || t == 0 {
            return Err(HornError::EmptyBlock { s, t });
        }
        let all = self.enumerate_t(s + t, p)?;
        Ok(all.into_iter().filter(|x| mode.admits(x, s, t)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triple(n: usize, i: &[usize], j: &[usize], k: &[usize]) -> HornTriple {
        HornTriple::from_vecs(n, i.to_vec(), j.to_vec(), k.to_vec()).unwrap()
    }

    #[test]
    fn base_case_is_u() {
        let table = HornTable::new();
        for n in 1..=6 {
            assert_eq!(table.enumerate_t(n, 1).unwrap(), enumerate_u(n, 1).unwrap());
        }
    }

    #[test]
    fn t42_examples() {
        let t = HornTable::new().enumerate_t(4, 2).unwrap();
        assert!(t.contains(&triple(4, &[2, 4], &[1, 3], &[3, 4])));
        assert!(!t.contains(&triple(4, &[2, 3], &[1, 2], &[1, 4])));
    }

    #[test]
    fn top_level_is_full_sets() {
        let table = HornTable::new();
        for n in 1..=5 {
            let full: Vec<usize> = (1..=n).collect();
            assert_eq!(table.enumerate_t(n, n).unwrap(), vec![triple(n, &full, &full, &full)]);
        }
    }

    #[test]
    fn limit_guard() {
        let table = HornTable::new().with_limit(4);
        assert!(matches!(table.enumerate_t(5, 1), Err(HornError::DeskScale { n: 5, limit: 4 })));
        assert!(table.enumerate_t(4, 5).is_err());
    }

    #[test]
    fn st_examples() {
        let table = HornTable::new();
        let s1 = table.enumerate_t_st(4, 2, 1, StMode::Strict).unwrap();
        assert!(s1.contains(&triple(6, &[2], &[3], &[4])));
        let s2 = table.enumerate_t_st(4, 2, 2, StMode::Strict).unwrap();
        assert!(s2.contains(&triple(6, &[1, 5], &[1, 3], &[1, 6])));
        assert!(table.enumerate_t_st(0, 2, 1, StMode::Strict).is_err());
    }
}
