use isotropic_core::count::nu_with;
use isotropic_core::{CountValue, EnumerationBudget, PolarizationType, Strategy};

use crate::cache::Cache;
use crate::failure::Failure;
use crate::report::Runtime;

/// ν with an optional cache in front. Only `Strategy::Auto` results are
/// cached or served from cache, so explicit strategies always recompute.
pub struct Counter {
    pub budget: EnumerationBudget,
    pub strategy: Strategy,
    pub cache: Option<Cache>,
    pub hits: u64,
    pub misses: u64,
}

impl Counter {
    pub fn new(budget: EnumerationBudget, strategy: Strategy, cache: Option<Cache>) -> Self {
        Self { budget, strategy, cache, hits: 0, misses: 0 }
    }

    pub fn nu(&mut self, ptype: &PolarizationType) -> Result<CountValue, Failure> {
        let cacheable = self.strategy == Strategy::Auto;
        if let (true, Some(cache)) = (cacheable, &self.cache) {
            if let Some(v) = cache.get(ptype) {
                self.hits += 1;
                return Ok(v.clone());
            }
            self.misses += 1;
        }
        let value = nu_with(ptype, self.strategy, &self.budget)?;
        if let (true, Some(cache)) = (cacheable, &mut self.cache) {
            cache.insert(ptype.clone(), value.clone());
        }
        Ok(value)
    }

    pub fn finish(&mut self, runtime: &mut Runtime) -> Result<(), Failure> {
        runtime.cache_hits = self.hits;
        runtime.cache_misses = self.misses;
        if let Some(cache) = &mut self.cache {
            cache.flush()?;
        }
        Ok(())
    }

    /// Records rejected cache lines as a warning-worthy count.
    pub fn rejected_entries(&self) -> usize {
        self.cache.as_ref().map_or(0, |c| c.rejected)
    }
}
