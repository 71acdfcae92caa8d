//! Cyclic shifts, tight conjugation and minimal-length conjugates.
//!
//! Every operation works on engine handles while holding the system lock
//! once, and converts to [`Element`] values at the boundary.

mod certificate;
mod graph;
mod oracle;
mod straight;
mod subsets;
mod twisted;

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use crate::braid;
use crate::engine::{ElemId, Engine};
use crate::error::{Error, Result};
use crate::parabolic::normalizes_id;
use crate::system::CoxeterSystem;
use crate::word::{Element, GenSubset, Generator, Word};

pub use certificate::{are_conjugate, CertStep, ConjCertificate};
pub use graph::{tight_graph, ConjGraph, EdgeKind, GraphEdge};
pub use oracle::{omin_oracle, omin_oracle_stable, omin_oracle_window, OracleResult};
pub use straight::{
    is_straight_bounded, straight_class_shift_connected, straightness, Straightness, DEFAULT_NMAX,
};
pub use subsets::{parabolic_conjugator, subset_conjugator_in_ball, ParabolicConjugator, SubsetMove};
pub use twisted::{twisted_class_brute, twisted_min_closure, twisted_shift_step};

/// Largest rank for which tight steps of type (2) enumerate all subsets.
pub const MAX_TIGHT_RANK: usize = 12;

/// `to = s · from · s` with `ℓ(to) ≤ ℓ(from)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ShiftStep {
    pub s: Generator,
    pub from: Element,
    pub to: Element,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TightKind {
    /// `to = s · from · s`.
    Shift(Generator),
    /// `to = x⁻¹ · from · x` with `x ∈ W_I`, `I` spherical and `from ∈ N_W(W_I)`.
    Parabolic { subset: GenSubset, x: Element },
}

/// An elementary tight conjugation between elements of equal length.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TightStep {
    pub kind: TightKind,
    pub from: Element,
    pub to: Element,
}

/// Minimal-length conjugates of an element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjClassSummary {
    pub min_length: usize,
    /// Least minimal element reachable from the input by cyclic shifts.
    pub representative: Element,
    /// Sorted in shortlex order.
    pub o_min: Vec<Element>,
    /// `Some(n)` when `ℓ(wᵏ) = k ℓ(w)` was checked for all `k ≤ n`.
    pub straight_up_to: Option<usize>,
}

// ---- handle-level helpers ----

pub(crate) fn sort_ids(e: &mut Engine, ids: impl IntoIterator<Item = ElemId>) -> Result<Vec<ElemId>> {
    let mut keyed = ids
        .into_iter()
        .map(|id| Ok((e.normal_form(id)?, id)))
        .collect::<Result<Vec<_>>>()?;
    keyed.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
    keyed.dedup_by(|a, b| a.1 == b.1);
    Ok(keyed.into_iter().map(|(_, id)| id).collect())
}

pub(crate) fn to_elements(sys: &CoxeterSystem, e: &mut Engine, ids: &[ElemId]) -> Result<Vec<Element>> {
    ids.iter().map(|&id| sys.element_of(e, id)).collect()
}

pub(crate) fn shift_id(e: &mut Engine, w: ElemId, s: Generator) -> Result<Option<ElemId>> {
    let c = e.conj_gen(w, s)?;
    Ok((e.len(c) <= e.len(w)).then_some(c))
}

/// Shift closure: elements in discovery order and the step that first
/// reached each of them.
pub(crate) struct ShiftClosure {
    pub order: Vec<ElemId>,
    pub parent: HashMap<ElemId, (ElemId, Generator)>,
    pub min_length: usize,
}

impl ShiftClosure {
    pub fn minimal(&self, e: &Engine) -> Vec<ElemId> {
        self.order.iter().copied().filter(|&x| e.len(x) == self.min_length).collect()
    }

    /// Steps from the root to `target`.
    pub fn path(&self, target: ElemId) -> Vec<(ElemId, Generator, ElemId)> {
        let mut out = Vec::new();
        let mut cur = target;
        while let Some(&(p, s)) = self.parent.get(&cur) {
            out.push((p, s, cur));
            cur = p;
        }
        out.reverse();
        out
    }
}

pub(crate) fn shift_closure_ids(e: &mut Engine, w: ElemId) -> Result<ShiftClosure> {
    let rank = e.rank() as Generator;
    let mut order = vec![w];
    let mut seen = HashSet::from([w]);
    let mut parent = HashMap::new();
    let mut queue = VecDeque::from([w]);
    let mut min_length = e.len(w);
    while let Some(x) = queue.pop_front() {
        for s in 0..rank {
            if let Some(y) = shift_id(e, x, s)? {
                if seen.insert(y) {
                    parent.insert(y, (x, s));
                    min_length = min_length.min(e.len(y));
                    order.push(y);
                    queue.push_back(y);
                }
            }
        }
    }
    Ok(ShiftClosure {
        order,
        parent,
        min_length,
    })
}

/// Nonempty spherical subsets, in increasing mask order.
pub(crate) fn spherical_subsets(sys: &CoxeterSystem) -> Result<Vec<GenSubset>> {
    if sys.rank() > MAX_TIGHT_RANK {
        return Err(Error::ResourceCap {
            what: "rank for subset enumeration",
            cap: MAX_TIGHT_RANK,
        });
    }
    Ok(GenSubset::all(sys.rank())
        .filter(|i| !i.is_empty() && sys.is_spherical(*i))
        .collect())
}

/// Handle-level tight step: `Shift(s)` or `Parabolic(I, x)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub(crate) enum TightId {
    Shift(Generator),
    Parabolic(GenSubset, ElemId),
}

pub(crate) fn strong_additive(e: &mut Engine, w: ElemId, x: ElemId) -> Result<bool> {
    let (lw, lx) = (e.len(w), e.len(x));
    let xi = e.inverse(x)?;
    let a = e.mul(xi, w)?;
    if e.len(a) == lx + lw {
        return Ok(true);
    }
    let b = e.mul(w, x)?;
    Ok(e.len(b) == lw + lx)
}

/// All elementary tight steps out of `w`, including those that fix `w`.
pub(crate) fn tight_neighbors_ids(
    sys: &CoxeterSystem,
    e: &mut Engine,
    w: ElemId,
    subsets: &[GenSubset],
) -> Result<Vec<(TightId, ElemId)>> {
    let mut out = Vec::new();
    let lw = e.len(w);
    for s in sys.generators() {
        let c = e.conj_gen(w, s)?;
        if e.len(c) == lw {
            out.push((TightId::Shift(s), c));
        }
    }
    for &i in subsets {
        if !normalizes_id(e, w, i)? {
            continue;
        }
        for x in sys.parabolic_ids(e, i)? {
            let xw = e.right_word(x).to_vec();
            let c = e.conjugate_by(w, &xw)?;
            if e.len(c) == lw && strong_additive(e, w, x)? {
                out.push((TightId::Parabolic(i, x), c));
            }
        }
    }
    Ok(out)
}

pub(crate) struct TightClosure {
    pub order: Vec<ElemId>,
    pub parent: HashMap<ElemId, (ElemId, TightId)>,
}

impl TightClosure {
    pub fn path(&self, target: ElemId) -> Vec<(ElemId, TightId, ElemId)> {
        let mut out = Vec::new();
        let mut cur = target;
        while let Some(&(p, k)) = self.parent.get(&cur) {
            out.push((p, k, cur));
            cur = p;
        }
        out.reverse();
        out
    }
}

pub(crate) fn tight_closure_ids(sys: &CoxeterSystem, e: &mut Engine, w: ElemId) -> Result<TightClosure> {
    let subsets = spherical_subsets(sys)?;
    let mut order = vec![w];
    let mut seen = HashSet::from([w]);
    let mut parent = HashMap::new();
    let mut queue = VecDeque::from([w]);
    while let Some(x) = queue.pop_front() {
        for (k, y) in tight_neighbors_ids(sys, e, x, &subsets)? {
            if seen.insert(y) {
                parent.insert(y, (x, k));
                order.push(y);
                queue.push_back(y);
            }
        }
    }
    Ok(TightClosure { order, parent })
}

pub(crate) fn tight_kind(sys: &CoxeterSystem, e: &mut Engine, k: TightId) -> Result<TightKind> {
    Ok(match k {
        TightId::Shift(s) => TightKind::Shift(s),
        TightId::Parabolic(subset, x) => TightKind::Parabolic {
            subset,
            x: sys.element_of(e, x)?,
        },
    })
}

/// Minimal-length data of the class of `w`, handle level: the shift closure,
/// the chosen representative and the sorted `O_min`.
pub(crate) fn conj_min_ids(
    sys: &CoxeterSystem,
    e: &mut Engine,
    w: ElemId,
) -> Result<(ShiftClosure, ElemId, Vec<ElemId>)> {
    let sc = shift_closure_ids(e, w)?;
    let minimal = sc.minimal(e);
    let rep = sort_ids(e, minimal)?[0];
    let tc = tight_closure_ids(sys, e, rep)?;
    let o_min = sort_ids(e, tc.order)?;
    Ok((sc, rep, o_min))
}

// ---- public element-level API ----

/// `s · w · s` if its length does not exceed `ℓ(w)`.
pub fn shift_step(sys: &CoxeterSystem, w: &Element, s: Generator) -> Result<Option<Element>> {
    let mut e = sys.locked();
    let id = sys.id_of(&mut e, w)?;
    sys.check_word(&Word(vec![s]))?;
    match shift_id(&mut e, id, s)? {
        Some(c) => Ok(Some(sys.element_of(&mut e, c)?)),
        None => Ok(None),
    }
}

/// Closure of `{w}` under shift steps (sorted) and its least length.
pub fn shift_closure(sys: &CoxeterSystem, w: &Element) -> Result<(Vec<Element>, usize)> {
    let mut e = sys.locked();
    let id = sys.id_of(&mut e, w)?;
    let sc = shift_closure_ids(&mut e, id)?;
    let sorted = sort_ids(&mut e, sc.order)?;
    Ok((to_elements(sys, &mut e, &sorted)?, sc.min_length))
}

/// Closure under cyclic shifts of reduced words. Every reduced word of each
/// element is generated by braid moves, so this is independent of the
/// shift-step machinery.
pub fn kappa_closure(sys: &CoxeterSystem, w: &Element, braid_cap: usize) -> Result<Vec<Element>> {
    let mut seen: BTreeSet<Element> = BTreeSet::from([w.clone()]);
    let mut queue = VecDeque::from([w.clone()]);
    while let Some(x) = queue.pop_front() {
        for word in braid::braid_closure(sys, x.nf(), braid_cap)? {
            for k in 1..word.len().max(1) {
                let y = sys.reduce(&word.rotated(k))?;
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// Whether `w' = x⁻¹ w x` with `ℓ(w') = ℓ(w)` and one of the additivity
/// conditions `ℓ(x⁻¹w) = ℓ(x) + ℓ(w)` or `ℓ(wx) = ℓ(w) + ℓ(x)`.
pub fn is_elem_strongly_conjugate(sys: &CoxeterSystem, w: &Element, w2: &Element, x: &Element) -> Result<bool> {
    if w.length() != w2.length() {
        return Ok(false);
    }
    let mut e = sys.locked();
    let (iw, iw2, ix) = (sys.id_of(&mut e, w)?, sys.id_of(&mut e, w2)?, sys.id_of(&mut e, x)?);
    let c = e.conjugate_by(iw, x.letters())?;
    Ok(c == iw2 && strong_additive(&mut e, iw, ix)?)
}

/// All elementary tight steps out of `w`, sorted by target, then kind.
pub fn tight_neighbors(sys: &CoxeterSystem, w: &Element) -> Result<Vec<TightStep>> {
    let mut e = sys.locked();
    let id = sys.id_of(&mut e, w)?;
    let subsets = spherical_subsets(sys)?;
    let steps = tight_neighbors_ids(sys, &mut e, id, &subsets)?;
    let mut out = steps
        .into_iter()
        .map(|(k, c)| {
            Ok(TightStep {
                kind: tight_kind(sys, &mut e, k)?,
                from: w.clone(),
                to: sys.element_of(&mut e, c)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    out.sort_by(|a, b| a.to.cmp(&b.to).then_with(|| a.kind.cmp(&b.kind)));
    Ok(out)
}

/// Closure of `{w}` under elementary tight conjugation (sorted).
pub fn tight_closure(sys: &CoxeterSystem, w: &Element) -> Result<Vec<Element>> {
    let mut e = sys.locked();
    let id = sys.id_of(&mut e, w)?;
    let tc = tight_closure_ids(sys, &mut e, id)?;
    let sorted = sort_ids(&mut e, tc.order)?;
    to_elements(sys, &mut e, &sorted)
}

/// Minimal length of the class of `w` (reached by cyclic shifts) and the set
/// of all minimal-length conjugates (the tight closure of one of them).
pub fn conj_min(sys: &CoxeterSystem, w: &Element) -> Result<ConjClassSummary> {
    let (min_length, rep, o_min) = {
        let mut e = sys.locked();
        let id = sys.id_of(&mut e, w)?;
        let (sc, rep, o_min) = conj_min_ids(sys, &mut e, id)?;
        (
            sc.min_length,
            sys.element_of(&mut e, rep)?,
            to_elements(sys, &mut e, &o_min)?,
        )
    };
    let straight_up_to = is_straight_bounded(sys, &rep, DEFAULT_NMAX)?.then_some(DEFAULT_NMAX);
    Ok(ConjClassSummary {
        min_length,
        representative: rep,
        o_min,
        straight_up_to,
    })
}

impl TightStep {
    /// Checks the step against its defining conditions.
    pub fn is_valid(&self, sys: &CoxeterSystem) -> Result<bool> {
        if self.from.length() != self.to.length() {
            return Ok(false);
        }
        match &self.kind {
            TightKind::Shift(s) => Ok(sys.conjugate_gen(&self.from, *s)? == self.to),
            TightKind::Parabolic { subset, x } => {
                if !sys.is_spherical(*subset) || !crate::parabolic::in_standard_parabolic(x, *subset) {
                    return Ok(false);
                }
                let mut e = sys.locked();
                let iw = sys.id_of(&mut e, &self.from)?;
                if !normalizes_id(&mut e, iw, *subset)? {
                    return Ok(false);
                }
                drop(e);
                is_elem_strongly_conjugate(sys, &self.from, &self.to, x)
            }
        }
    }
}

impl ShiftStep {
    pub fn is_valid(&self, sys: &CoxeterSystem) -> Result<bool> {
        Ok(self.to.length() <= self.from.length() && sys.conjugate_gen(&self.from, self.s)? == self.to)
    }
}
