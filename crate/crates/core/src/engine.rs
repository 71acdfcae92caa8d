//! Exact, incremental multiplication engine.
//!
//! Elements are interned as they are discovered. Each interned element knows
//! its length, its right descent set and one "down" neighbour `w·a` where `a`
//! is its smallest right descent. Everything else is derived from the
//! dihedral structure of pairs of generators:
//!
//! * if `s ∉ D_R(w)` then `t ∈ D_R(ws)` (for `t ≠ s`) exactly when the
//!   `{s,t}`-part of `w`, peeled off from the right starting with `t`, has
//!   `m_st - 1` letters;
//! * if `a, s ∈ D_R(w)` then `w = u · w_{a,s}` with `w_{a,s}` the longest
//!   element of the dihedral parabolic, which gives `ws` from `u`.
//!
//! Both facts are consequences of the exchange condition, so the engine is
//! exact for every Coxeter matrix, including `∞` labels. Interning is keyed
//! by the right-greedy reduced word (strip the smallest right descent), which
//! is canonical. The left-greedy normal form used by [`crate::Element`] is
//! the reversal of the right-greedy word of the inverse.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::word::{GenSubset, Generator, Word};

/// Handle of an interned element. Only meaningful for the engine that
/// produced it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElemId(pub u32);

impl ElemId {
    pub const IDENTITY: ElemId = ElemId(0);
}

const NONE: u32 = u32::MAX;

/// Default bound on the number of interned elements.
pub const DEFAULT_NODE_CAP: usize = 8_000_000;

#[derive(Debug)]
struct Node {
    key: Box<[Generator]>,
    rdesc: u32,
    down_gen: Generator,
    down: u32,
    inv: u32,
    right: Box<[u32]>,
    left: Box<[u32]>,
}

#[derive(Debug)]
pub struct Engine {
    rank: usize,
    /// Row-major Coxeter matrix, `0` encodes `∞`.
    m: Vec<u32>,
    nodes: Vec<Node>,
    index: HashMap<Box<[Generator]>, u32>,
    cap: usize,
}

impl Engine {
    pub(crate) fn new(rank: usize, m: Vec<u32>) -> Self {
        let mut e = Engine {
            rank,
            m,
            nodes: Vec::new(),
            index: HashMap::new(),
            cap: DEFAULT_NODE_CAP,
        };
        e.nodes.push(Node {
            key: Box::new([]),
            rdesc: 0,
            down_gen: 0,
            down: NONE,
            inv: 0,
            right: vec![NONE; rank].into_boxed_slice(),
            left: vec![NONE; rank].into_boxed_slice(),
        });
        e.index.insert(Box::new([]), 0);
        e
    }

    pub fn set_cap(&mut self, cap: usize) {
        self.cap = cap;
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of elements interned so far.
    pub fn interned(&self) -> usize {
        self.nodes.len()
    }

    fn order(&self, s: Generator, t: Generator) -> u32 {
        self.m[s as usize * self.rank + t as usize]
    }

    pub fn len(&self, w: ElemId) -> usize {
        self.nodes[w.0 as usize].key.len()
    }

    pub fn right_descents(&self, w: ElemId) -> GenSubset {
        GenSubset(self.nodes[w.0 as usize].rdesc)
    }

    pub fn left_descents(&mut self, w: ElemId) -> Result<GenSubset> {
        let i = self.inverse(w)?;
        Ok(self.right_descents(i))
    }

    fn check_gen(&self, s: Generator) -> Result<()> {
        if (s as usize) < self.rank {
            Ok(())
        } else {
            Err(Error::GeneratorOutOfRange {
                index: s as usize,
                rank: self.rank,
            })
        }
    }

    /// `w · s`.
    pub fn rmul(&mut self, w: ElemId, s: Generator) -> Result<ElemId> {
        self.check_gen(s)?;
        let cached = self.nodes[w.0 as usize].right[s as usize];
        if cached != NONE {
            return Ok(ElemId(cached));
        }
        let r = if self.nodes[w.0 as usize].rdesc & (1 << s) != 0 {
            self.down_mul(w, s)?
        } else {
            self.up_mul(w, s)?
        };
        self.link(w, s, r);
        Ok(r)
    }

    fn link(&mut self, w: ElemId, s: Generator, r: ElemId) {
        self.nodes[w.0 as usize].right[s as usize] = r.0;
        self.nodes[r.0 as usize].right[s as usize] = w.0;
    }

    /// Alternating word in `a`, `b` of the given length whose last letter is `last`.
    fn alternating_ending(a: Generator, b: Generator, len: usize, last: Generator) -> Vec<Generator> {
        let other = if last == a { b } else { a };
        let mut v = vec![0; len];
        for (i, x) in v.iter_mut().enumerate() {
            *x = if (len - 1 - i) % 2 == 0 { last } else { other };
        }
        v
    }

    /// Strip `count` letters from the right of `w`, alternating `first`, `second`, ….
    fn strip(&mut self, mut w: ElemId, first: Generator, second: Generator, count: usize) -> Result<ElemId> {
        let mut next = first;
        for _ in 0..count {
            w = self.rmul(w, next)?;
            next = if next == first { second } else { first };
        }
        Ok(w)
    }

    fn climb(&mut self, mut w: ElemId, letters: &[Generator]) -> Result<ElemId> {
        for &s in letters {
            w = self.rmul(w, s)?;
        }
        Ok(w)
    }

    /// `w · s` for a right descent `s` of `w`.
    fn down_mul(&mut self, w: ElemId, s: Generator) -> Result<ElemId> {
        let node = &self.nodes[w.0 as usize];
        let a = node.down_gen;
        let wa = node.down;
        if a == s {
            return Ok(ElemId(wa));
        }
        let m = self.order(a, s);
        if m == 0 {
            return Err(Error::Internal(format!(
                "generators {a} and {s} with infinite order are both right descents"
            )));
        }
        let m = m as usize;
        // w = u · w_{a,s}; peel the longest element off, then rebuild w_{a,s}·s.
        let u = self.strip(w, a, s, m)?;
        let tail = Self::alternating_ending(a, s, m, s);
        self.climb(u, &tail[..m - 1])
    }

    /// `w · s` for `s` not a right descent of `w`; interns the result.
    fn up_mul(&mut self, w: ElemId, s: Generator) -> Result<ElemId> {
        let mut rdesc = 1u32 << s;
        let wdesc = self.nodes[w.0 as usize].rdesc;
        for t in 0..self.rank as Generator {
            if t == s {
                continue;
            }
            let m = self.order(s, t);
            if m == 0 {
                continue;
            }
            let need = m as usize - 1;
            if need == 1 {
                if wdesc & (1 << t) != 0 {
                    rdesc |= 1 << t;
                }
                continue;
            }
            let mut x = w;
            let mut next = t;
            let mut depth = 0;
            while depth < need && self.nodes[x.0 as usize].rdesc & (1 << next) != 0 {
                x = self.rmul(x, next)?;
                depth += 1;
                next = if next == t { s } else { t };
            }
            if depth == need {
                rdesc |= 1 << t;
            }
        }
        let a = rdesc.trailing_zeros() as Generator;
        let za = if a == s {
            w
        } else {
            // z = w·s = u · w_{a,s}; z·a = u · (alternating of length m-1 ending in s).
            let m = self.order(a, s) as usize;
            let u = self.strip(w, a, s, m - 1)?;
            let tail = Self::alternating_ending(a, s, m - 1, s);
            self.climb(u, &tail)?
        };
        let mut key = Vec::with_capacity(self.len(za) + 1);
        key.extend_from_slice(&self.nodes[za.0 as usize].key);
        key.push(a);
        if let Some(&id) = self.index.get(key.as_slice()) {
            return Ok(ElemId(id));
        }
        if self.nodes.len() >= self.cap {
            return Err(Error::ResourceCap {
                what: "interned elements",
                cap: self.cap,
            });
        }
        let id = self.nodes.len() as u32;
        let key: Box<[Generator]> = key.into_boxed_slice();
        self.nodes.push(Node {
            key: key.clone(),
            rdesc,
            down_gen: a,
            down: za.0,
            inv: NONE,
            right: vec![NONE; self.rank].into_boxed_slice(),
            left: vec![NONE; self.rank].into_boxed_slice(),
        });
        self.index.insert(key, id);
        self.link(ElemId(id), a, za);
        Ok(ElemId(id))
    }

    pub fn inverse(&mut self, w: ElemId) -> Result<ElemId> {
        let cached = self.nodes[w.0 as usize].inv;
        if cached != NONE {
            return Ok(ElemId(cached));
        }
        let key = self.nodes[w.0 as usize].key.clone();
        let mut x = ElemId::IDENTITY;
        for &s in key.iter().rev() {
            x = self.rmul(x, s)?;
        }
        self.nodes[w.0 as usize].inv = x.0;
        self.nodes[x.0 as usize].inv = w.0;
        Ok(x)
    }

    /// `s · w`.
    pub fn lmul(&mut self, w: ElemId, s: Generator) -> Result<ElemId> {
        self.check_gen(s)?;
        let cached = self.nodes[w.0 as usize].left[s as usize];
        if cached != NONE {
            return Ok(ElemId(cached));
        }
        let wi = self.inverse(w)?;
        let p = self.rmul(wi, s)?;
        let r = self.inverse(p)?;
        self.nodes[w.0 as usize].left[s as usize] = r.0;
        self.nodes[r.0 as usize].left[s as usize] = w.0;
        Ok(r)
    }

    /// `s · w · s`.
    pub fn conj_gen(&mut self, w: ElemId, s: Generator) -> Result<ElemId> {
        let ws = self.rmul(w, s)?;
        self.lmul(ws, s)
    }

    pub fn mul(&mut self, a: ElemId, b: ElemId) -> Result<ElemId> {
        let key = self.nodes[b.0 as usize].key.clone();
        self.climb_any(a, &key)
    }

    /// Right-multiplies by every letter of an arbitrary word.
    pub fn climb_any(&mut self, mut w: ElemId, letters: &[Generator]) -> Result<ElemId> {
        for &s in letters {
            w = self.rmul(w, s)?;
        }
        Ok(w)
    }

    pub fn from_word(&mut self, letters: &[Generator]) -> Result<ElemId> {
        self.climb_any(ElemId::IDENTITY, letters)
    }

    /// Interns an element given its left-greedy normal form.
    pub fn from_normal_form(&mut self, nf: &[Generator]) -> Result<ElemId> {
        let rev: Vec<Generator> = nf.iter().rev().copied().collect();
        if let Some(&inv) = self.index.get(rev.as_slice()) {
            return self.inverse(ElemId(inv));
        }
        self.from_word(nf)
    }

    /// The right-greedy reduced word (interning key).
    pub fn right_word(&self, w: ElemId) -> &[Generator] {
        &self.nodes[w.0 as usize].key
    }

    /// The left-greedy normal form: the lexicographically least reduced word.
    pub fn normal_form(&mut self, w: ElemId) -> Result<Word> {
        let i = self.inverse(w)?;
        Ok(Word(self.nodes[i.0 as usize].key.iter().rev().copied().collect()))
    }

    /// `v⁻¹ w v` where `v` is given by any word.
    pub fn conjugate_by(&mut self, w: ElemId, v: &[Generator]) -> Result<ElemId> {
        let mut x = w;
        for &s in v {
            x = self.conj_gen(x, s)?;
        }
        Ok(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dihedral(m: u32) -> Engine {
        Engine::new(2, vec![1, m, m, 1])
    }

    #[test]
    fn dihedral_order_matches_2m() {
        for m in 2..8 {
            let mut e = dihedral(m);
            let mut frontier = vec![ElemId::IDENTITY];
            let mut seen = std::collections::HashSet::from([ElemId::IDENTITY]);
            while let Some(w) = frontier.pop() {
                for s in 0..2 {
                    let ws = e.rmul(w, s).unwrap();
                    if seen.insert(ws) {
                        frontier.push(ws);
                    }
                }
            }
            assert_eq!(seen.len(), 2 * m as usize, "I2({m})");
        }
    }

    #[test]
    fn infinite_dihedral_alternating_words_are_reduced() {
        let mut e = dihedral(0);
        let w = e.from_word(&[0, 1, 0, 1, 0, 1, 0, 1, 0]).unwrap();
        assert_eq!(e.len(w), 9);
        assert_eq!(e.right_descents(w), GenSubset::singleton(0));
        let back = e.rmul(w, 0).unwrap();
        assert_eq!(e.len(back), 8);
    }

    #[test]
    fn a2_longest_element_has_both_descents() {
        let mut e = dihedral(3);
        let sts = e.from_word(&[0, 1, 0]).unwrap();
        let tst = e.from_word(&[1, 0, 1]).unwrap();
        assert_eq!(sts, tst);
        assert_eq!(e.right_descents(sts), GenSubset(0b11));
        assert_eq!(e.normal_form(sts).unwrap(), Word(vec![0, 1, 0]));
        let st = e.from_word(&[0, 1, 0, 1]).unwrap();
        assert_eq!(e.normal_form(st).unwrap(), Word(vec![1, 0]));
    }

    #[test]
    fn cap_is_reported() {
        let mut e = Engine::new(3, vec![1, 0, 0, 0, 1, 0, 0, 0, 1]);
        e.set_cap(5);
        let r = e.from_word(&[0, 1, 2, 0, 1, 2]);
        assert!(matches!(r, Err(Error::ResourceCap { .. })));
    }
}
