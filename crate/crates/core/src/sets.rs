//! Fixed-width bit sets over clause ids and variable ids.
//!
//! All sets belonging to one formula share the same width, so equality,
//! ordering and the set operations are plain word-wise operations. The
//! ordering compares the word vectors lexicographically (word 0 first,
//! words numerically), which gives a deterministic total order used to
//! canonicalize families of sets.

use std::fmt;

const WORD_BITS: usize = 64;

fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD_BITS)
}

macro_rules! bitset_type {
    ($name:ident, $idx:ty, $doc:literal, $render:literal) => {
        #[doc = $doc]
        #[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub struct $name {
            bits: usize,
            words: Vec<u64>,
        }

        impl $name {
            /// Empty set over a universe of `bits` elements.
            pub fn empty(bits: usize) -> Self {
                $name {
                    bits,
                    words: vec![0; words_for(bits)],
                }
            }

            pub fn from_ids<I: IntoIterator<Item = $idx>>(bits: usize, ids: I) -> Self {
                let mut s = Self::empty(bits);
                for id in ids {
                    s.insert(id);
                }
                s
            }

            /// Number of elements the universe can hold.
            pub fn universe(&self) -> usize {
                self.bits
            }

            pub fn insert(&mut self, id: $idx) {
                let id = id as usize;
                assert!(id < self.bits, "id {} out of range 0..{}", id, self.bits);
                self.words[id / WORD_BITS] |= 1u64 << (id % WORD_BITS);
            }

            pub fn remove(&mut self, id: $idx) {
                let id = id as usize;
                assert!(id < self.bits, "id {} out of range 0..{}", id, self.bits);
                self.words[id / WORD_BITS] &= !(1u64 << (id % WORD_BITS));
            }

            pub fn contains(&self, id: $idx) -> bool {
                let id = id as usize;
                id < self.bits && self.words[id / WORD_BITS] >> (id % WORD_BITS) & 1 == 1
            }

            pub fn len(&self) -> usize {
                self.words.iter().map(|w| w.count_ones() as usize).sum()
            }

            pub fn is_empty(&self) -> bool {
                self.words.iter().all(|&w| w == 0)
            }

            pub fn union(&self, other: &Self) -> Self {
                self.zip_words(other, |a, b| a | b)
            }

            pub fn intersection(&self, other: &Self) -> Self {
                self.zip_words(other, |a, b| a & b)
            }

            pub fn difference(&self, other: &Self) -> Self {
                self.zip_words(other, |a, b| a & !b)
            }

            /// All universe elements not in the set.
            pub fn complement(&self) -> Self {
                let mut out = self.zip_words(self, |a, _| !a);
                out.trim();
                out
            }

            pub fn is_subset_of(&self, other: &Self) -> bool {
                debug_assert_eq!(self.bits, other.bits);
                self.words
                    .iter()
                    .zip(&other.words)
                    .all(|(a, b)| a & !b == 0)
            }

            pub fn is_disjoint_from(&self, other: &Self) -> bool {
                debug_assert_eq!(self.bits, other.bits);
                self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
            }

            pub fn iter(&self) -> impl Iterator<Item = $idx> + '_ {
                self.words.iter().enumerate().flat_map(|(wi, &w)| {
                    (0..WORD_BITS)
                        .filter(move |b| w >> b & 1 == 1)
                        .map(move |b| (wi * WORD_BITS + b) as $idx)
                })
            }

            fn zip_words(&self, other: &Self, f: impl Fn(u64, u64) -> u64) -> Self {
                debug_assert_eq!(
                    self.bits, other.bits,
                    "set operation across different universes"
                );
                $name {
                    bits: self.bits,
                    words: self
                        .words
                        .iter()
                        .zip(&other.words)
                        .map(|(&a, &b)| f(a, b))
                        .collect(),
                }
            }

            // clear bits past the universe after a complement
            fn trim(&mut self) {
                let spare = self.words.len() * WORD_BITS - self.bits;
                if spare > 0 {
                    if let Some(last) = self.words.last_mut() {
                        *last &= u64::MAX >> spare;
                    }
                }
            }
        }

        impl fmt::Debug for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{{")?;
                for (i, id) in self.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, concat!($render, "{}"), id)?;
                }
                write!(f, "}}")
            }
        }
    };
}

bitset_type!(
    ClauseSet,
    usize,
    "A set of clause ids in the global clause-id space of a formula.",
    "c"
);
bitset_type!(
    VarSet,
    u32,
    "A set of variable ids (variables are numbered from 1).",
    "v"
);

impl VarSet {
    /// Universe sized for variables `1..=max_var` (bit 0 stays unused).
    pub fn for_max_var(max_var: u32) -> Self {
        VarSet::empty(max_var as usize + 1)
    }
}
