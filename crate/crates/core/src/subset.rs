use std::cmp::Ordering;
use std::fmt;

/// A subset of a ground set `{0, .., 63}` stored as a bitmask.
///
/// Ordering is by cardinality first, then lexicographic on the sorted
/// element lists. Display is 1-based: `{1,2,4}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Subset(pub u64);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        let mut mask = 0u64;
        for i in indices {
            assert!(i < 64, "subset element {i} exceeds the 64-element ground set");
            mask |= 1 << i;
        }
        Subset(mask)
    }

    /// `{0, .., m-1}`.
    pub fn full(m: usize) -> Self {
        if m >= 64 {
            Subset(u64::MAX)
        } else {
            Subset((1u64 << m) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        Subset(1 << i)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        i < 64 && self.0 >> i & 1 == 1
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn intersection(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    pub fn difference(self, other: Subset) -> Subset {
        Subset(self.0 & !other.0)
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Subset) -> bool {
        self.0 & other.0 == 0
    }

    pub fn insert(self, i: usize) -> Subset {
        Subset(self.0 | 1 << i)
    }

    pub fn remove(self, i: usize) -> Subset {
        Subset(self.0 & !(1 << i))
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut mask = self.0;
        std::iter::from_fn(move || {
            if mask == 0 {
                None
            } else {
                let i = mask.trailing_zeros() as usize;
                mask &= mask - 1;
                Some(i)
            }
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Sorted 1-based element list, the serialized form.
    pub fn to_one_based(self) -> Vec<usize> {
        self.iter().map(|i| i + 1).collect()
    }

    /// All subsets of `{0, .., m-1}` with exactly `k` elements, in
    /// lexicographic order.
    pub fn k_subsets(m: usize, k: usize) -> Vec<Subset> {
        let mut out = Vec::new();
        if k > m {
            return out;
        }
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            out.push(Subset::from_indices(idx.iter().copied()));
            let mut i = k;
            while i > 0 && idx[i - 1] == m - k + i - 1 {
                i -= 1;
            }
            if i == 0 {
                return out;
            }
            idx[i - 1] += 1;
            for j in i..k {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }

    /// Every subset of `self` (including the empty set and `self`).
    pub fn subsets(self) -> impl Iterator<Item = Subset> {
        let full = self.0;
        let mut sub = 0u64;
        let mut done = false;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let current = sub;
            sub = sub.wrapping_sub(full) & full;
            if sub == 0 {
                done = true;
            }
            Some(Subset(current))
        })
    }
}

impl Ord for Subset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.iter().cmp(other.iter()))
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (t, i) in self.iter().enumerate() {
            if t > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k_subsets_counts_and_order() {
        assert_eq!(Subset::k_subsets(4, 2).len(), 6);
        assert_eq!(Subset::k_subsets(4, 0), vec![Subset::EMPTY]);
        assert_eq!(Subset::k_subsets(3, 3), vec![Subset::full(3)]);
        assert!(Subset::k_subsets(2, 3).is_empty());
        let v: Vec<Vec<usize>> = Subset::k_subsets(4, 2).iter().map(|s| s.to_vec()).collect();
        assert_eq!(
            v,
            vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]
        );
    }

    #[test]
    fn subsets_of_mask() {
        let s = Subset::from_indices([0, 2, 5]);
        let all: Vec<Subset> = s.subsets().collect();
        assert_eq!(all.len(), 8);
        assert!(all.iter().all(|t| t.is_subset_of(s)));
        assert_eq!(Subset::EMPTY.subsets().count(), 1);
    }

    #[test]
    fn ordering_is_by_size_then_lex() {
        let a = Subset::from_indices([3]);
        let b = Subset::from_indices([0, 1]);
        let c = Subset::from_indices([0, 2]);
        assert!(a < b && b < c);
        assert_eq!(format!("{}", Subset::from_indices([0, 1, 3])), "{1,2,4}");
    }
}
