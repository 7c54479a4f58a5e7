//! Subsets of a ground set `{0, .., n-1}` as `u32` bitmasks.

/// A subset of a ground set, one bit per element.
pub type Mask = u32;

/// Mask containing all of `0..n`.
#[inline]
pub fn full(n: usize) -> Mask {
    debug_assert!(n <= 32);
    if n == 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

#[inline]
pub fn bit(i: usize) -> Mask {
    1u32 << i
}

#[inline]
pub fn contains(mask: Mask, i: usize) -> bool {
    mask & bit(i) != 0
}

#[inline]
pub fn count(mask: Mask) -> usize {
    mask.count_ones() as usize
}

/// Build a mask from element indices, checking the range.
pub fn from_indices(indices: &[usize], n: usize) -> Option<Mask> {
    let mut m = 0;
    for &i in indices {
        if i >= n {
            return None;
        }
        m |= bit(i);
    }
    Some(m)
}

/// Element indices of a mask in increasing order.
pub fn to_indices(mask: Mask) -> Vec<usize> {
    BitIter(mask).collect()
}

/// Iterator over the set bits of a mask, low to high.
#[derive(Clone, Copy)]
pub struct BitIter(pub Mask);

impl Iterator for BitIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }
}

pub fn bits(mask: Mask) -> BitIter {
    BitIter(mask)
}

/// Iterator over all subsets of `set` (including the empty set and `set`
/// itself), by the carry-rippler trick.
pub struct SubsetIter {
    set: Mask,
    subset: Mask,
    done: bool,
}

impl Iterator for SubsetIter {
    type Item = Mask;

    #[inline]
    fn next(&mut self) -> Option<Mask> {
        if self.done {
            return None;
        }
        let current = self.subset;
        self.subset = self.subset.wrapping_sub(self.set) & self.set;
        self.done = self.subset == 0;
        Some(current)
    }
}

pub fn subsets_of(set: Mask) -> SubsetIter {
    SubsetIter { set, subset: 0, done: false }
}

/// Iterator over all k-element subsets of `0..n` in increasing mask order
/// (Gosper's hack).
pub struct CombinationIter {
    current: Mask,
    limit: Mask,
    done: bool,
}

impl Iterator for CombinationIter {
    type Item = Mask;

    fn next(&mut self) -> Option<Mask> {
        if self.done {
            return None;
        }
        let v = self.current;
        if v == 0 {
            // k == 0: the empty set is the only combination.
            self.done = true;
            return Some(0);
        }
        let c = v & v.wrapping_neg();
        let r = v + c;
        let next = (((r ^ v) >> 2) / c) | r;
        if next > self.limit || next < v {
            self.done = true;
        } else {
            self.current = next;
        }
        Some(v)
    }
}

pub fn combinations(n: usize, k: usize) -> CombinationIter {
    debug_assert!(n <= 32);
    if k > n {
        return CombinationIter { current: 0, limit: 0, done: true };
    }
    CombinationIter {
        current: if k == 0 { 0 } else { full(k) },
        limit: full(n),
        done: false,
    }
}
