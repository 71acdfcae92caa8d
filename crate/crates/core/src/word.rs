//! Words, generator subsets and group elements.

use std::cmp::Ordering;
use std::fmt;

/// Index of a Coxeter generator within its system.
pub type Generator = u8;

/// Largest rank supported. Generator subsets are stored as 32-bit masks.
pub const MAX_RANK: usize = 32;

/// A finite sequence of generator indices, not necessarily reduced.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<Generator>);

impl Word {
    pub fn new(letters: Vec<Generator>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Generator] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// `s_k … s_d s_1 … s_{k-1}` for `k = shift + 1`.
    pub fn rotated(&self, shift: usize) -> Word {
        let mut v = self.0.clone();
        if !v.is_empty() {
            let k = shift % v.len();
            v.rotate_left(k);
        }
        Word(v)
    }

    /// True if two adjacent letters coincide.
    pub fn has_square(&self) -> bool {
        self.0.windows(2).any(|p| p[0] == p[1])
    }
}

impl From<Vec<Generator>> for Word {
    fn from(v: Vec<Generator>) -> Self {
        Word(v)
    }
}

impl From<&[Generator]> for Word {
    fn from(v: &[Generator]) -> Self {
        Word(v.to_vec())
    }
}

/// A subset of the generating set, stored as a bitmask.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GenSubset(pub u32);

impl GenSubset {
    pub const EMPTY: GenSubset = GenSubset(0);

    pub fn full(rank: usize) -> Self {
        if rank >= 32 {
            GenSubset(u32::MAX)
        } else {
            GenSubset((1u32 << rank) - 1)
        }
    }

    pub fn singleton(s: Generator) -> Self {
        GenSubset(1 << s)
    }

    pub fn from_gens<I: IntoIterator<Item = Generator>>(gens: I) -> Self {
        GenSubset(gens.into_iter().fold(0, |m, s| m | (1 << s)))
    }

    pub fn contains(self, s: Generator) -> bool {
        self.0 & (1 << s) != 0
    }

    pub fn insert(&mut self, s: Generator) {
        self.0 |= 1 << s;
    }

    pub fn remove(&mut self, s: Generator) {
        self.0 &= !(1 << s);
    }

    pub fn with(self, s: Generator) -> Self {
        GenSubset(self.0 | (1 << s))
    }

    pub fn without(self, s: Generator) -> Self {
        GenSubset(self.0 & !(1 << s))
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn union(self, other: GenSubset) -> Self {
        GenSubset(self.0 | other.0)
    }

    pub fn intersection(self, other: GenSubset) -> Self {
        GenSubset(self.0 & other.0)
    }

    pub fn difference(self, other: GenSubset) -> Self {
        GenSubset(self.0 & !other.0)
    }

    pub fn is_subset(self, other: GenSubset) -> bool {
        self.0 & !other.0 == 0
    }

    /// Smallest member, if any.
    pub fn first(self) -> Option<Generator> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as Generator)
        }
    }

    /// Members in increasing order.
    pub fn iter(self) -> impl Iterator<Item = Generator> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let s = bits.trailing_zeros();
                bits &= bits - 1;
                Some(s as Generator)
            }
        })
    }

    /// All subsets of `{0, …, rank-1}` in increasing mask order.
    pub fn all(rank: usize) -> impl Iterator<Item = GenSubset> {
        (0..(1u64 << rank)).map(|m| GenSubset(m as u32))
    }
}

/// A group element, stored as its canonical normal form: the reduced word
/// obtained by repeatedly stripping the smallest left descent.
///
/// Elements are plain values. They remember which system produced them so
/// that mixing elements of different systems is detected.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Element {
    pub(crate) system: u64,
    pub(crate) nf: Word,
}

impl Element {
    pub fn nf(&self) -> &Word {
        &self.nf
    }

    pub fn letters(&self) -> &[Generator] {
        &self.nf.0
    }

    pub fn length(&self) -> usize {
        self.nf.len()
    }

    pub fn is_identity(&self) -> bool {
        self.nf.is_empty()
    }

    pub fn system_id(&self) -> u64 {
        self.system
    }
}

/// Shortlex order on normal forms: shorter first, then lexicographic in the
/// generator indices.
impl Ord for Element {
    fn cmp(&self, other: &Self) -> Ordering {
        self.nf
            .len()
            .cmp(&other.nf.len())
            .then_with(|| self.nf.0.cmp(&other.nf.0))
            .then_with(|| self.system.cmp(&other.system))
    }
}

impl PartialOrd for Element {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subset_iteration_is_increasing() {
        let i = GenSubset::from_gens([4, 0, 2]);
        assert_eq!(i.iter().collect::<Vec<_>>(), vec![0, 2, 4]);
        assert_eq!(i.len(), 3);
        assert_eq!(i.first(), Some(0));
        assert!(GenSubset::EMPTY.first().is_none());
        assert_eq!(GenSubset::all(3).count(), 8);
        assert_eq!(GenSubset::full(3), GenSubset(0b111));
    }

    #[test]
    fn rotation_and_squares() {
        let w = Word::new(vec![0, 1, 2]);
        assert_eq!(w.rotated(1).letters(), &[1, 2, 0]);
        assert_eq!(w.rotated(3), w);
        assert!(!w.has_square());
        assert!(Word::new(vec![0, 1, 1]).has_square());
        assert_eq!(Word::empty().rotated(2), Word::empty());
    }
}
