//! Data-parallel execution of the crate's batch loops.
//!
//! With the `parallel` feature (on by default) [`Execution::Parallel`] runs
//! on the rayon global pool. Without it, every mode runs sequentially.
//! Results never depend on the mode: maps preserve input order and sums are
//! exact.

use num_traits::Zero;
#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::num::Integer;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

impl Execution {
    /// Whether this mode actually fans out to worker threads.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }

    /// Order-preserving map over a slice.
    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return items.par_iter().map(f).collect();
        }
        items.iter().map(f).collect()
    }

    /// Order-preserving map over `0..len`.
    pub fn map_range<R, F>(self, len: usize, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(usize) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return (0..len).into_par_iter().map(f).collect();
        }
        (0..len).map(f).collect()
    }

    /// Exact sum of `f(i)` over `0..len`.
    pub fn sum_range<F>(self, len: usize, f: F) -> Integer
    where
        F: Fn(usize) -> Integer + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return (0..len)
                .into_par_iter()
                .map(f)
                .reduce(Integer::zero, |a, b| a + b);
        }
        (0..len).map(f).fold(Integer::zero(), |a, b| a + b)
    }

    /// Exact sum of `f(x)` over a slice.
    pub fn sum<T, F>(self, items: &[T], f: F) -> Integer
    where
        T: Sync,
        F: Fn(&T) -> Integer + Sync + Send,
    {
        self.sum_range(items.len(), |i| f(&items[i]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree() {
        let xs: Vec<u64> = (0..1000).collect();
        let a = Execution::Sequential.map(&xs, |x| x * x);
        let b = Execution::Parallel.map(&xs, |x| x * x);
        assert_eq!(a, b);
        let s1 = Execution::Sequential.sum_range(1000, |i| Integer::from(i));
        let s2 = Execution::Parallel.sum_range(1000, |i| Integer::from(i));
        assert_eq!(s1, s2);
        assert_eq!(s1, Integer::from(499_500));
    }
}
