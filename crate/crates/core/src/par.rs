//! Execution policy for the data-parallel loops.
//!
//! With the `parallel` feature the loops run on rayon's pool; without it
//! every policy degrades to a plain sequential iterator. Output order is the
//! input order either way.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Exec {
    Sequential,
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

impl Exec {
    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => items.par_iter().map(f).collect(),
            _ => items.iter().map(f).collect(),
        }
    }

    /// Order-preserving filter.
    pub fn filter<T, F>(self, items: Vec<T>, keep: F) -> Vec<T>
    where
        T: Send + Sync,
        F: Fn(&T) -> bool + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => items.into_par_iter().filter(|x| keep(x)).collect(),
            _ => items.into_iter().filter(|x| keep(x)).collect(),
        }
    }

    /// Fallible order-preserving filter; returns the first error in input
    /// order.
    pub fn try_filter<T, E, F>(self, items: Vec<T>, keep: F) -> Result<Vec<T>, E>
    where
        T: Send + Sync,
        E: Send,
        F: Fn(&T) -> Result<bool, E> + Sync + Send,
    {
        let verdicts: Vec<Result<bool, E>> = self.map(&items, keep);
        let mut out = Vec::new();
        for (item, v) in items.into_iter().zip(verdicts) {
            if v? {
                out.push(item);
            }
        }
        Ok(out)
    }
}
