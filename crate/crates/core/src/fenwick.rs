//! Binary indexed tree over a fixed number of slots.

use std::ops::AddAssign;

#[derive(Debug, Clone)]
pub struct Fenwick<T> {
    tree: Vec<T>,
}

impl<T: Copy + Default + AddAssign> Fenwick<T> {
    pub fn new(len: usize) -> Self {
        Fenwick {
            tree: vec![T::default(); len + 1],
        }
    }

    pub fn len(&self) -> usize {
        self.tree.len() - 1
    }

    /// Adds `value` to slot `index` (0-based).
    pub fn add(&mut self, index: usize, value: T) {
        let mut i = index + 1;
        while i < self.tree.len() {
            self.tree[i] += value;
            i += i & i.wrapping_neg();
        }
    }

    /// Sum of slots `0..end`.
    pub fn prefix(&self, end: usize) -> T {
        let mut acc = T::default();
        let mut i = end.min(self.len());
        while i > 0 {
            acc += self.tree[i];
            i &= i - 1;
        }
        acc
    }
}
