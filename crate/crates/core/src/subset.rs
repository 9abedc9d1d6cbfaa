//! Subsets of a fixed finite carrier, stored as bit blocks.

/// A subset of `{0, .., carrier-1}`.
///
/// Carriers may exceed 64 elements (frames of product topologies do), so the
/// mask is a vector of blocks rather than a single word.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ElementSubset {
    carrier: usize,
    bits: Vec<u64>,
}

impl ElementSubset {
    pub fn empty(carrier: usize) -> Self {
        ElementSubset {
            carrier,
            bits: vec![0; carrier.div_ceil(64)],
        }
    }

    pub fn full(carrier: usize) -> Self {
        let mut s = Self::empty(carrier);
        for i in 0..carrier {
            s.insert(i);
        }
        s
    }

    pub fn singleton(carrier: usize, i: usize) -> Self {
        let mut s = Self::empty(carrier);
        s.insert(i);
        s
    }

    pub fn from_indices(carrier: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty(carrier);
        for i in indices {
            s.insert(i);
        }
        s
    }

    /// Decode the low `carrier` bits of `mask` (carrier must be <= 64).
    pub fn from_mask(carrier: usize, mask: u64) -> Self {
        assert!(carrier <= 64);
        let mut s = Self::empty(carrier);
        for i in 0..carrier {
            if mask >> i & 1 == 1 {
                s.insert(i);
            }
        }
        s
    }

    pub fn carrier(&self) -> usize {
        self.carrier
    }

    pub fn insert(&mut self, i: usize) {
        assert!(i < self.carrier, "index {i} outside carrier {}", self.carrier);
        self.bits[i / 64] |= 1 << (i % 64);
    }

    pub fn remove(&mut self, i: usize) {
        assert!(i < self.carrier);
        self.bits[i / 64] &= !(1 << (i % 64));
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.carrier && self.bits[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&b| b == 0)
    }

    pub fn count(&self) -> usize {
        self.bits.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn union(&self, other: &Self) -> Self {
        assert_eq!(self.carrier, other.carrier);
        ElementSubset {
            carrier: self.carrier,
            bits: self
                .bits
                .iter()
                .zip(&other.bits)
                .map(|(a, b)| a | b)
                .collect(),
        }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        assert_eq!(self.carrier, other.carrier);
        ElementSubset {
            carrier: self.carrier,
            bits: self
                .bits
                .iter()
                .zip(&other.bits)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        assert_eq!(self.carrier, other.carrier);
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        let carrier = self.carrier;
        self.bits
            .iter()
            .enumerate()
            .flat_map(move |(blk, &word)| {
                (0..64).filter_map(move |off| {
                    let i = blk * 64 + off;
                    (i < carrier && word >> off & 1 == 1).then_some(i)
                })
            })
    }

    pub fn indices(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

/// Iterate over all `2^carrier` subsets of a small carrier.
///
/// Panics if the carrier is larger than 25 elements; exhaustive subset loops
/// are only ever meant for desk-scale carriers.
pub fn all_subsets(carrier: usize) -> impl Iterator<Item = ElementSubset> {
    assert!(carrier <= 25, "subset enumeration over {carrier} elements");
    (0u64..1 << carrier).map(move |mask| {
        let mut s = ElementSubset::empty(carrier);
        for i in 0..carrier {
            if mask >> i & 1 == 1 {
                s.insert(i);
            }
        }
        s
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn basic_ops() {
        let mut s = ElementSubset::empty(100);
        s.insert(3);
        s.insert(99);
        assert!(s.contains(3) && s.contains(99) && !s.contains(4));
        assert_eq!(s.count(), 2);
        assert_eq!(s.indices(), vec![3, 99]);
        s.remove(3);
        assert_eq!(s.count(), 1);
    }

    #[test]
    fn enumeration_count() {
        assert_eq!(all_subsets(4).count(), 16);
        assert_eq!(all_subsets(0).count(), 1);
    }

    proptest! {
        #[test]
        fn union_intersection_lattice_laws(a in prop::collection::vec(0usize..80, 0..20),
                                           b in prop::collection::vec(0usize..80, 0..20)) {
            let x = ElementSubset::from_indices(80, a.iter().copied());
            let y = ElementSubset::from_indices(80, b.iter().copied());
            prop_assert_eq!(x.union(&y), y.union(&x));
            prop_assert_eq!(x.intersection(&y), y.intersection(&x));
            prop_assert_eq!(x.union(&x.intersection(&y)), x.clone());
            prop_assert!(x.intersection(&y).is_subset_of(&x));
            prop_assert!(x.is_subset_of(&x.union(&y)));
        }
    }
}
