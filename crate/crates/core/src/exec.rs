//! Execution strategy for the data-parallel loops (per-degree kernels and
//! parameter sweeps).
//!
//! With the `parallel` feature the [`Exec::Parallel`] strategy fans work out
//! over rayon's global pool. Without it, both strategies run sequentially, so
//! callers never need their own `cfg` gates. Results always come back in input
//! order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
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
    /// True when this strategy actually runs on more than one thread.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }

    pub fn map<I, T, F>(self, items: Vec<I>, f: F) -> Vec<T>
    where
        I: Send,
        T: Send,
        F: Fn(I) -> T + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self == Exec::Parallel {
            return items.into_par_iter().map(f).collect();
        }
        items.into_iter().map(f).collect()
    }

    pub fn map_range<T, F>(self, range: std::ops::Range<usize>, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self == Exec::Parallel {
            return range.into_par_iter().map(f).collect();
        }
        range.map(f).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strategies_agree_and_keep_order() {
        let seq = Exec::Sequential.map_range(0..100, |i| i * i);
        let par = Exec::Parallel.map_range(0..100, |i| i * i);
        assert_eq!(seq, par);
        assert_eq!(seq[7], 49);
        let words = Exec::Parallel.map(vec!["a", "bb", "ccc"], str::len);
        assert_eq!(words, vec![1, 2, 3]);
    }
}
