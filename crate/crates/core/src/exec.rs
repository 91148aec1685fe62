//! Execution strategy for the data-parallel loops.
//!
//! With the `parallel` feature enabled, [`Exec::Parallel`] runs on the current
//! rayon pool. Without it, both variants run sequentially. Every parallel map
//! preserves input order so results never depend on the thread count.

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

impl Exec {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }

    /// Order-preserving map.
    pub fn map<T, R, F>(self, items: Vec<T>, f: F) -> Vec<R>
    where
        T: Send,
        R: Send,
        F: Fn(T) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        {
            if self == Exec::Parallel {
                use rayon::prelude::*;
                return items.into_par_iter().map(f).collect();
            }
        }
        items.into_iter().map(f).collect()
    }

    /// Order-preserving fallible map; the first error in input order wins.
    pub fn try_map<T, R, E, F>(self, items: Vec<T>, f: F) -> Result<Vec<R>, E>
    where
        T: Send,
        R: Send,
        E: Send,
        F: Fn(T) -> Result<R, E> + Sync + Send,
    {
        self.map(items, f).into_iter().collect()
    }
}

/// Default cap on the number of lattice points any single enumeration visits.
pub const DEFAULT_GUARD: usize = 1_000_000;

/// Enumeration budget plus execution strategy, threaded through every search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub guard: usize,
    pub exec: Exec,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { guard: DEFAULT_GUARD, exec: Exec::default() }
    }
}

impl Limits {
    pub fn sequential() -> Self {
        Limits { exec: Exec::Sequential, ..Limits::default() }
    }
}
