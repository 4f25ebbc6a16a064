//! Cached lists of feasible patterns with their sequential components.

use std::sync::OnceLock;

use crate::patterns::{enumerate_patterns, Pattern, SubPattern, Universe};

use super::SolveError;

/// Largest k for which the pattern catalog is materialized.
pub const MAX_CATALOG_K: usize = 8;

/// A feasible admissible pattern together with derived structure.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub pattern: Pattern,
    /// Sequential components, sorted by minimum slot.
    pub components: Vec<SubPattern>,
    pub reducible: bool,
}

impl CatalogEntry {
    /// Component index of every slot.
    pub fn owner(&self) -> Vec<usize> {
        let mut owner = vec![0; self.pattern.k()];
        for (c, comp) in self.components.iter().enumerate() {
            for &s in &comp.slots {
                owner[s] = c;
            }
        }
        owner
    }

    /// Component sizes in ascending order.
    pub fn shape(&self) -> Vec<usize> {
        let mut sizes: Vec<usize> = self.components.iter().map(|c| c.slots.len()).collect();
        sizes.sort_unstable();
        sizes
    }
}

static CATALOG: [OnceLock<Vec<CatalogEntry>>; MAX_CATALOG_K + 1] =
    [const { OnceLock::new() }; MAX_CATALOG_K + 1];

/// All feasible admissible k-patterns in canonical order.
pub fn pattern_catalog(k: usize) -> Result<&'static [CatalogEntry], SolveError> {
    if !(2..=MAX_CATALOG_K).contains(&k) {
        return Err(SolveError::KOutOfRange {
            k,
            min: 2,
            max: MAX_CATALOG_K,
        });
    }
    Ok(CATALOG[k].get_or_init(|| {
        enumerate_patterns(k, Universe::Admissible)
            .expect("k is in range")
            .filter(Pattern::is_feasible)
            .map(|pattern| CatalogEntry {
                components: pattern.sequential_decomposition(),
                reducible: pattern.is_reducible(),
                pattern,
            })
            .collect()
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_sizes_for_small_k() {
        // Feasible admissible patterns: sequential ones plus multi-component ones.
        assert_eq!(pattern_catalog(2).unwrap().len(), 1);
        assert_eq!(pattern_catalog(4).unwrap().len(), 25);
        assert_eq!(pattern_catalog(5).unwrap().len(), 208);
        let six = pattern_catalog(6).unwrap();
        assert_eq!(six.len(), 1348 + 408 + 324 + 41);
        assert!(six
            .iter()
            .filter(|e| e.components.len() == 3)
            .all(|e| e.reducible));
    }
}
