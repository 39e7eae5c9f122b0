//! Sequential and data-parallel sweeps over index ranges.
//!
//! Every sweep returns the same result under either strategy: `find_first` reports the
//! lowest matching index and `map_range` preserves index order.

use std::ops::Range;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Sequential,
    #[cfg(feature = "parallel")]
    Parallel,
}

#[allow(clippy::derivable_impls)]
impl Default for Strategy {
    fn default() -> Self {
        #[cfg(feature = "parallel")]
        {
            Strategy::Parallel
        }
        #[cfg(not(feature = "parallel"))]
        {
            Strategy::Sequential
        }
    }
}

impl Strategy {
    /// Lowest index in `range` satisfying `pred`.
    pub fn find_first<F>(self, range: Range<u64>, pred: F) -> Option<u64>
    where
        F: Fn(u64) -> bool + Sync + Send,
    {
        match self {
            Strategy::Sequential => range.into_iter().find(|&i| pred(i)),
            #[cfg(feature = "parallel")]
            Strategy::Parallel => {
                use rayon::prelude::*;
                range.into_par_iter().find_first(|&i| pred(i))
            }
        }
    }

    /// `f` applied to each index, in index order.
    pub fn map_range<T, F>(self, range: Range<u64>, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(u64) -> T + Sync + Send,
    {
        match self {
            Strategy::Sequential => range.map(f).collect(),
            #[cfg(feature = "parallel")]
            Strategy::Parallel => {
                use rayon::prelude::*;
                range.into_par_iter().map(f).collect()
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn strategies() -> Vec<Strategy> {
        vec![
            Strategy::Sequential,
            #[cfg(feature = "parallel")]
            Strategy::Parallel,
        ]
    }

    #[test]
    fn find_first_is_lowest_index() {
        for s in strategies() {
            assert_eq!(s.find_first(0..100_000, |i| i % 7919 == 7918 || i == 50_000), Some(7918));
            assert_eq!(s.find_first(1..10, |_| false), None);
            assert_eq!(s.find_first(5..5, |_| true), None);
        }
    }

    #[test]
    fn map_range_keeps_order() {
        for s in strategies() {
            let v = s.map_range(0..1000, |i| i * i);
            assert_eq!(v.len(), 1000);
            assert!(v.iter().enumerate().all(|(i, &x)| x == (i as u64) * (i as u64)));
        }
    }
}
