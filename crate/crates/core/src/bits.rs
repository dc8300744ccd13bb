//! Fixed-width bit rows used by the exhaustive searches.

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct BitRow {
    words: Vec<u64>,
}

impl BitRow {
    pub(crate) fn zeros(bits: usize) -> Self {
        BitRow { words: vec![0; bits.div_ceil(64).max(1)] }
    }

    pub(crate) fn from_indices(bits: usize, idx: &[usize]) -> Self {
        let mut row = Self::zeros(bits);
        for &i in idx {
            row.set(i);
        }
        row
    }

    #[inline]
    pub(crate) fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    #[inline]
    pub(crate) fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    pub(crate) fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// `self = a | b`, returning the popcount of the result.
    #[inline]
    pub(crate) fn assign_union(&mut self, a: &BitRow, b: &BitRow) -> usize {
        let mut c = 0;
        for ((dst, x), y) in self.words.iter_mut().zip(&a.words).zip(&b.words) {
            *dst = x | y;
            c += dst.count_ones() as usize;
        }
        c
    }

    #[inline]
    pub(crate) fn intersects(&self, other: &BitRow) -> bool {
        self.words.iter().zip(&other.words).any(|(x, y)| x & y != 0)
    }

    pub(crate) fn union_with(&mut self, other: &BitRow) {
        for (dst, x) in self.words.iter_mut().zip(&other.words) {
            *dst |= x;
        }
    }
}
