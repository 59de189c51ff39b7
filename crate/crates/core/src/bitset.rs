//! Dense bit rows used for neighbor sets and composition masks.

use alloc::vec;
use alloc::vec::Vec;

const BITS: usize = 64;

#[inline]
pub fn words_for(bits: usize) -> usize {
    bits.div_ceil(BITS)
}

/// `rows` bitsets of `width` bits each, stored contiguously.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitRows {
    width: usize,
    stride: usize,
    words: Vec<u64>,
}

impl BitRows {
    pub fn new(rows: usize, width: usize) -> Self {
        let stride = words_for(width);
        BitRows {
            width,
            stride,
            words: vec![0; rows * stride],
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rows(&self) -> usize {
        self.words.len().checked_div(self.stride).unwrap_or(0)
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[u64] {
        &self.words[r * self.stride..(r + 1) * self.stride]
    }

    #[inline]
    pub fn insert(&mut self, r: usize, bit: usize) {
        debug_assert!(bit < self.width);
        self.words[r * self.stride + bit / BITS] |= 1 << (bit % BITS);
    }

    #[inline]
    pub fn remove(&mut self, r: usize, bit: usize) {
        debug_assert!(bit < self.width);
        self.words[r * self.stride + bit / BITS] &= !(1 << (bit % BITS));
    }

    #[inline]
    pub fn contains(&self, r: usize, bit: usize) -> bool {
        self.words[r * self.stride + bit / BITS] >> (bit % BITS) & 1 == 1
    }

    /// Whether rows `a` and `b` share a set bit.
    #[inline]
    pub fn intersects(&self, a: usize, b: usize) -> bool {
        intersects(self.row(a), self.row(b))
    }

    pub fn ones(&self, r: usize) -> Ones<'_> {
        Ones::new(self.row(r))
    }

    pub fn count(&self, r: usize) -> usize {
        self.row(r).iter().map(|w| w.count_ones() as usize).sum()
    }
}

#[inline]
pub fn intersects(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).any(|(x, y)| x & y != 0)
}

/// First common set bit of two equal-width rows.
#[inline]
pub fn first_common(a: &[u64], b: &[u64]) -> Option<usize> {
    a.iter().zip(b).enumerate().find_map(|(i, (x, y))| {
        let w = x & y;
        (w != 0).then(|| i * BITS + w.trailing_zeros() as usize)
    })
}

/// Iterator over set bits in ascending order.
#[derive(Debug)]
pub struct Ones<'a> {
    words: &'a [u64],
    idx: usize,
    cur: u64,
}

impl<'a> Ones<'a> {
    fn new(words: &'a [u64]) -> Self {
        Ones {
            words,
            idx: 0,
            cur: words.first().copied().unwrap_or(0),
        }
    }
}

impl Iterator for Ones<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.cur != 0 {
                let bit = self.cur.trailing_zeros() as usize;
                self.cur &= self.cur - 1;
                return Some(self.idx * BITS + bit);
            }
            self.idx += 1;
            if self.idx >= self.words.len() {
                return None;
            }
            self.cur = self.words[self.idx];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;

    #[test]
    fn insert_remove_iterate() {
        let mut rows = BitRows::new(3, 130);
        for b in [0, 63, 64, 129] {
            rows.insert(1, b);
        }
        rows.insert(2, 129);
        assert_eq!(rows.ones(1).collect::<Vec<_>>(), [0, 63, 64, 129]);
        assert_eq!(rows.count(1), 4);
        assert!(rows.intersects(1, 2));
        assert_eq!(first_common(rows.row(1), rows.row(2)), Some(129));
        rows.remove(1, 129);
        assert!(!rows.intersects(1, 2));
        assert!(!rows.contains(1, 129));
        assert_eq!(rows.ones(0).next(), None);
        assert_eq!(rows.rows(), 3);
    }
}
