//! Subsets of a small finite base set `{0, .., n-1}`, stored as bitmasks.

use std::fmt;

/// Largest base set a [`Subset`] can describe.
pub const MAX_BASE: usize = 64;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subset(pub u64);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn full(base: usize) -> Subset {
        debug_assert!(base <= MAX_BASE);
        if base >= 64 {
            Subset(u64::MAX)
        } else {
            Subset((1u64 << base) - 1)
        }
    }

    pub fn singleton(x: usize) -> Subset {
        Subset(1u64 << x)
    }

    pub fn from_elems<I: IntoIterator<Item = usize>>(elems: I) -> Subset {
        elems.into_iter().fold(Subset::EMPTY, |s, x| s.with(x))
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, x: usize) -> bool {
        x < 64 && (self.0 >> x) & 1 == 1
    }

    pub fn with(self, x: usize) -> Subset {
        Subset(self.0 | (1u64 << x))
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn intersection(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    pub fn complement(self, base: usize) -> Subset {
        Subset(!self.0 & Subset::full(base).0)
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// True iff every element lies below `base`.
    pub fn within(self, base: usize) -> bool {
        self.is_subset_of(Subset::full(base))
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..64).filter(move |&i| self.contains(i))
    }

    /// Preimage under a map given as a lookup table `f[x]`.
    pub fn preimage(self, f: &[usize]) -> Subset {
        Subset::from_elems(f.iter().enumerate().filter(|(_, &y)| self.contains(y)).map(|(x, _)| x))
    }

    /// All subsets of a base set of size `base`, in bitmask order.
    pub fn all(base: usize) -> impl Iterator<Item = Subset> {
        assert!(base < 64, "base set too large to enumerate");
        (0..(1u64 << base)).map(Subset)
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, x) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_is_sorted_and_comma_separated() {
        assert_eq!(Subset::from_elems([2, 0]).to_string(), "{0,2}");
        assert_eq!(Subset::EMPTY.to_string(), "{}");
    }

    #[test]
    fn complement_stays_in_base() {
        let a = Subset::from_elems([1]);
        assert_eq!(a.complement(3), Subset::from_elems([0, 2]));
        assert!(a.complement(3).within(3));
    }

    #[test]
    fn preimage_under_map() {
        // f = [0, 1, 1]: preimage of {1} is {1, 2}
        assert_eq!(Subset::singleton(1).preimage(&[0, 1, 1]), Subset::from_elems([1, 2]));
    }
}
