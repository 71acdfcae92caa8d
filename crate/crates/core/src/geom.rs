//! Numeric length and descent tests through the reflection representation.
//!
//! `σ_s(v) = v − 2 B(α_s, v) α_s` with `B(α_s, α_t) = −cos(π / m_st)`, and
//! `−1` for `m_st = ∞`. A word `s_1 … s_d` is reduced iff every
//! `s_1 … s_{i−1}(α_{s_i})` is a positive root.

use crate::error::{Error, Result};
use crate::system::{CoxeterSystem, Order};
use crate::word::{Element, GenSubset, Generator, Word};

/// Tolerance for sign tests.
pub const TOL: f64 = 1e-9;

/// Longest word accepted by the numeric tests.
pub const DEPTH_CAP: usize = 64;

#[derive(Debug, Clone, PartialEq)]
pub struct GramMatrix {
    rank: usize,
    entries: Vec<f64>,
}

impl GramMatrix {
    pub fn new(sys: &CoxeterSystem) -> Self {
        let n = sys.rank();
        let mut entries = vec![0.0; n * n];
        for s in sys.generators() {
            for t in sys.generators() {
                entries[s as usize * n + t as usize] = if s == t {
                    1.0
                } else {
                    match sys.order(s, t) {
                        Order::Finite(m) => -(std::f64::consts::PI / m as f64).cos(),
                        Order::Infinite => -1.0,
                    }
                };
            }
        }
        GramMatrix { rank: n, entries }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn get(&self, s: Generator, t: Generator) -> f64 {
        self.entries[s as usize * self.rank + t as usize]
    }

    /// `B(α_s, v)`.
    fn pair(&self, s: Generator, v: &RootVector) -> f64 {
        let row = &self.entries[s as usize * self.rank..(s as usize + 1) * self.rank];
        row.iter().zip(&v.0).map(|(a, b)| a * b).sum()
    }

    pub fn simple_root(&self, s: Generator) -> RootVector {
        let mut v = vec![0.0; self.rank];
        v[s as usize] = 1.0;
        RootVector(v)
    }

    pub fn reflect(&self, s: Generator, v: &RootVector) -> RootVector {
        let c = 2.0 * self.pair(s, v);
        let mut out = v.clone();
        out.0[s as usize] -= c;
        out
    }

    /// Applies `s_1 s_2 … s_k` to `v`, i.e. `s_k` first.
    pub fn apply_word(&self, w: &[Generator], v: &RootVector) -> RootVector {
        w.iter().rev().fold(v.clone(), |acc, &s| self.reflect(s, &acc))
    }
}

/// Coordinates in the basis of simple roots.
#[derive(Debug, Clone, PartialEq)]
pub struct RootVector(pub Vec<f64>);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Positive,
    Negative,
}

impl RootVector {
    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn neg(&self) -> RootVector {
        RootVector(self.0.iter().map(|x| -x).collect())
    }

    pub fn max_abs_diff(&self, other: &RootVector) -> f64 {
        self.0.iter().zip(&other.0).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    }

    /// Sign of a root. Mixed signs beyond tolerance are reported as an error.
    pub fn sign(&self) -> Result<Sign> {
        let pos = self.0.iter().all(|&x| x >= -TOL);
        let neg = self.0.iter().all(|&x| x <= TOL);
        match (pos, neg) {
            (true, false) => Ok(Sign::Positive),
            (false, true) => Ok(Sign::Negative),
            _ => Err(Error::Numeric(format!("root coordinates {:?}", self.0))),
        }
    }
}

fn check_depth(len: usize) -> Result<()> {
    if len > DEPTH_CAP {
        Err(Error::ResourceCap {
            what: "numeric word length",
            cap: DEPTH_CAP,
        })
    } else {
        Ok(())
    }
}

pub fn is_reduced_geom(g: &GramMatrix, w: &Word) -> Result<bool> {
    check_depth(w.len())?;
    let letters = w.letters();
    for i in 0..letters.len() {
        let v = g.apply_word(&letters[..i], &g.simple_root(letters[i]));
        if v.sign()? == Sign::Negative {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `s ∈ D_L(a)` iff `a⁻¹(α_s)` is negative. `w` must be a reduced word for `a`.
pub fn left_descents_word(g: &GramMatrix, w: &Word) -> Result<GenSubset> {
    check_depth(w.len())?;
    let inv: Vec<Generator> = w.letters().iter().rev().copied().collect();
    let mut out = GenSubset::EMPTY;
    for s in 0..g.rank() as Generator {
        if g.apply_word(&inv, &g.simple_root(s)).sign()? == Sign::Negative {
            out.insert(s);
        }
    }
    Ok(out)
}

/// `s ∈ D_R(a)` iff `a(α_s)` is negative.
pub fn right_descents_word(g: &GramMatrix, w: &Word) -> Result<GenSubset> {
    check_depth(w.len())?;
    let mut out = GenSubset::EMPTY;
    for s in 0..g.rank() as Generator {
        if g.apply_word(w.letters(), &g.simple_root(s)).sign()? == Sign::Negative {
            out.insert(s);
        }
    }
    Ok(out)
}

pub fn left_descents_geom(g: &GramMatrix, a: &Element) -> Result<GenSubset> {
    left_descents_word(g, a.nf())
}

pub fn right_descents_geom(g: &GramMatrix, a: &Element) -> Result<GenSubset> {
    right_descents_word(g, a.nf())
}
