use std::collections::{HashSet, VecDeque};

use super::conj_min_ids;
use crate::engine::ElemId;
use crate::error::{Error, Result};
use crate::system::CoxeterSystem;
use crate::word::Element;

/// Default bound for straightness checks.
pub const DEFAULT_NMAX: usize = 8;

/// Bounded straightness certificate: `ℓ(wᵏ) = k ℓ(w)` holds for all
/// `k ≤ straight_up_to`; `fails_at` is the first `k ≤ nmax` where it fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Straightness {
    pub nmax: usize,
    pub straight_up_to: usize,
    pub fails_at: Option<usize>,
}

impl Straightness {
    pub fn is_straight(&self) -> bool {
        self.fails_at.is_none()
    }
}

pub fn straightness(sys: &CoxeterSystem, w: &Element, nmax: usize) -> Result<Straightness> {
    if nmax < 2 {
        return Err(Error::Precondition("nmax must be at least 2".into()));
    }
    let mut e = sys.locked();
    let id = sys.id_of(&mut e, w)?;
    let l = e.len(id);
    let mut acc = ElemId::IDENTITY;
    for k in 1..=nmax {
        acc = e.climb_any(acc, w.letters())?;
        if e.len(acc) != k * l {
            return Ok(Straightness {
                nmax,
                straight_up_to: k - 1,
                fails_at: Some(k),
            });
        }
    }
    Ok(Straightness {
        nmax,
        straight_up_to: nmax,
        fails_at: None,
    })
}

pub fn is_straight_bounded(sys: &CoxeterSystem, w: &Element, nmax: usize) -> Result<bool> {
    Ok(straightness(sys, w, nmax)?.is_straight())
}

/// Whether the minimal set of the class of `w` is connected under
/// length-preserving shift steps.
pub fn straight_class_shift_connected(sys: &CoxeterSystem, w: &Element) -> Result<bool> {
    let mut e = sys.locked();
    let id = sys.id_of(&mut e, w)?;
    let (_, _, o_min) = conj_min_ids(sys, &mut e, id)?;
    let members: HashSet<ElemId> = o_min.iter().copied().collect();
    let mut seen = HashSet::from([o_min[0]]);
    let mut queue = VecDeque::from([o_min[0]]);
    while let Some(x) = queue.pop_front() {
        for s in sys.generators() {
            let y = e.conj_gen(x, s)?;
            if members.contains(&y) && seen.insert(y) {
                queue.push_back(y);
            }
        }
    }
    Ok(seen.len() == members.len())
}
