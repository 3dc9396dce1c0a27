use std::collections::BTreeSet;

use serde::{Serialize, Serializer};

/// A vertex subset `Ω ⊆ V`.
///
/// Universes of at most 64 vertices use a single-word bitset; larger ones use
/// a sorted index set.
#[derive(Debug, Clone)]
pub struct Subset {
    universe: usize,
    repr: Repr,
}

#[derive(Debug, Clone)]
enum Repr {
    Bits(u64),
    Indices(BTreeSet<usize>),
}

impl Subset {
    pub fn empty(universe: usize) -> Self {
        let repr = if universe <= 64 {
            Repr::Bits(0)
        } else {
            Repr::Indices(BTreeSet::new())
        };
        Subset { universe, repr }
    }

    pub fn full(universe: usize) -> Self {
        let mut s = Subset::empty(universe);
        for v in 0..universe {
            s.insert(v);
        }
        s
    }

    /// Panics if an index is outside the universe.
    pub fn from_indices(universe: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Subset::empty(universe);
        for v in indices {
            s.insert(v);
        }
        s
    }

    /// Subset whose bit `v` of `mask` marks membership of vertex `v`.
    /// Panics if `universe > 64` or `mask` has bits beyond the universe.
    pub fn from_mask(universe: usize, mask: u64) -> Self {
        assert!(universe <= 64, "bitmask subsets need universe <= 64");
        assert!(
            universe == 64 || mask >> universe == 0,
            "mask has bits outside the universe"
        );
        Subset {
            universe,
            repr: Repr::Bits(mask),
        }
    }

    pub fn mask(&self) -> Option<u64> {
        match self.repr {
            Repr::Bits(m) => Some(m),
            Repr::Indices(_) => None,
        }
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn insert(&mut self, v: usize) {
        assert!(
            v < self.universe,
            "vertex {v} outside universe {}",
            self.universe
        );
        match &mut self.repr {
            Repr::Bits(m) => *m |= 1 << v,
            Repr::Indices(s) => {
                s.insert(v);
            }
        }
    }

    pub fn remove(&mut self, v: usize) {
        match &mut self.repr {
            Repr::Bits(m) => {
                if v < 64 {
                    *m &= !(1 << v)
                }
            }
            Repr::Indices(s) => {
                s.remove(&v);
            }
        }
    }

    pub fn contains(&self, v: usize) -> bool {
        match &self.repr {
            Repr::Bits(m) => v < self.universe && (m >> v) & 1 == 1,
            Repr::Indices(s) => s.contains(&v),
        }
    }

    pub fn len(&self) -> usize {
        match &self.repr {
            Repr::Bits(m) => m.count_ones() as usize,
            Repr::Indices(s) => s.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn iter(&self) -> Box<dyn Iterator<Item = usize> + '_> {
        match &self.repr {
            Repr::Bits(m) => {
                let m = *m;
                Box::new((0..self.universe).filter(move |&v| (m >> v) & 1 == 1))
            }
            Repr::Indices(s) => Box::new(s.iter().copied()),
        }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// `V − Ω`.
    pub fn complement(&self) -> Self {
        Subset::from_indices(
            self.universe,
            (0..self.universe).filter(|&v| !self.contains(v)),
        )
    }

    pub fn is_subset_of(&self, other: &Subset) -> bool {
        self.iter().all(|v| other.contains(v))
    }

    pub fn is_disjoint(&self, other: &Subset) -> bool {
        self.iter().all(|v| !other.contains(v))
    }
}

impl PartialEq for Subset {
    fn eq(&self, other: &Self) -> bool {
        self.universe == other.universe && self.len() == other.len() && self.is_subset_of(other)
    }
}

impl Eq for Subset {}

impl Serialize for Subset {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}
