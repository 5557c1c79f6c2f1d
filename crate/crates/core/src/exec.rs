//! Execution strategy for the data-parallel inner loops (per-facet nerve
//! assembly, per-simplex predicate suites, search branches).
//!
//! With the `parallel` feature (default) [`Strategy::Parallel`] fans out over
//! the rayon pool; without it every strategy runs sequentially. Results are
//! identical either way: all helpers preserve input order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strategy {
    Sequential,
    Parallel,
}

impl Default for Strategy {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Strategy::Parallel
        } else {
            Strategy::Sequential
        }
    }
}

impl Strategy {
    /// Whether this strategy actually runs on more than one thread in the
    /// current build.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Strategy::Parallel
    }

    /// Order-preserving map.
    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self == Strategy::Parallel {
            return items.par_iter().map(f).collect();
        }
        items.iter().map(f).collect()
    }

    /// First item (in input order) for which `f` returns `Some`.
    pub fn find_map_first<T, R, F>(self, items: &[T], f: F) -> Option<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> Option<R> + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self == Strategy::Parallel {
            return items.par_iter().find_map_first(f);
        }
        items.iter().find_map(f)
    }

    pub fn all<T, F>(self, items: &[T], f: F) -> bool
    where
        T: Sync,
        F: Fn(&T) -> bool + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self == Strategy::Parallel {
            return items.par_iter().all(f);
        }
        items.iter().all(f)
    }
}
