//! Conjugating one standard parabolic generator subset onto another by
//! elementary moves `x = w_{K∖{s}} · w_K`.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap, HashSet, VecDeque};

use crate::engine::{ElemId, Engine};
use crate::error::Result;
use crate::finite_type::components;
use crate::parabolic::{conjugate_generator, longest_id};
use crate::system::{ball_ids, CoxeterSystem, DEFAULT_BALL_CAP};
use crate::word::{Element, GenSubset, Generator, Word};

/// Longest conjugator considered by the search.
const MAX_CONJUGATOR_LENGTH: usize = 64;
/// Bound on the number of search states.
const MAX_STATES: usize = 200_000;

/// One elementary move: `to = x⁻¹ · from · x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetMove {
    pub from: GenSubset,
    pub s: Generator,
    pub x: Element,
    pub to: GenSubset,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParabolicConjugator {
    /// Product of the move elements; `x⁻¹ I x = J`.
    pub x: Element,
    pub moves: Vec<SubsetMove>,
}

#[derive(Clone, Copy)]
struct MoveId {
    s: Generator,
    x: ElemId,
    to: GenSubset,
}

/// Image of `I` under conjugation by `x`, if every generator lands on a
/// generator.
fn conjugate_subset(e: &mut Engine, i: GenSubset, x: ElemId) -> Result<Option<GenSubset>> {
    let mut out = GenSubset::EMPTY;
    for t in i.iter() {
        match conjugate_generator(e, t, x)? {
            Some(u) => out.insert(u),
            None => return Ok(None),
        }
    }
    Ok((out.len() == i.len()).then_some(out))
}

fn moves_from(sys: &CoxeterSystem, e: &mut Engine, i: GenSubset) -> Result<Vec<MoveId>> {
    let mut out = Vec::new();
    for s in sys.all_generators().difference(i).iter() {
        let with = i.with(s);
        let k = components(sys, with)
            .into_iter()
            .find(|c| c.contains(s))
            .expect("s lies in some component");
        if !sys.is_spherical(k) {
            continue;
        }
        let wk = longest_id(sys, e, k)?;
        let wks = longest_id(sys, e, k.without(s))?;
        let x = e.mul(wks, wk)?;
        if let Some(to) = conjugate_subset(e, i, x)? {
            out.push(MoveId { s, x, to });
        }
    }
    Ok(out)
}

/// Finds `x` with `x⁻¹ I x = J` as a product of elementary moves whose
/// lengths add up to `ℓ(x)`. Among such products the shortest `x` is
/// returned. `None` if `J` is not reachable from `I`.
pub fn parabolic_conjugator(sys: &CoxeterSystem, i: GenSubset, j: GenSubset) -> Result<Option<ParabolicConjugator>> {
    if i == j {
        return Ok(Some(ParabolicConjugator {
            x: sys.identity(),
            moves: Vec::new(),
        }));
    }
    if i.len() != j.len() {
        return Ok(None);
    }
    let mut e = sys.locked();
    // Reachability on subsets alone.
    let mut graph: BTreeMap<GenSubset, Vec<MoveId>> = BTreeMap::new();
    let mut queue = VecDeque::from([i]);
    let mut seen = HashSet::from([i]);
    while let Some(k) = queue.pop_front() {
        let moves = moves_from(sys, &mut e, k)?;
        for m in &moves {
            if seen.insert(m.to) {
                queue.push_back(m.to);
            }
        }
        graph.insert(k, moves);
    }
    if !seen.contains(&j) {
        return Ok(None);
    }
    // Least-length search over (subset, x) keeping only additive products.
    type Key = (usize, Word, GenSubset);
    let mut heap: BinaryHeap<Reverse<(Key, usize)>> = BinaryHeap::new();
    let mut states: Vec<(GenSubset, ElemId, Option<(usize, MoveId)>)> = vec![(i, ElemId::IDENTITY, None)];
    let mut visited = HashSet::new();
    heap.push(Reverse(((0, Word::empty(), i), 0)));
    while let Some(Reverse(((_, _, k), idx))) = heap.pop() {
        let x = states[idx].1;
        if !visited.insert((k, x)) {
            continue;
        }
        if k == j {
            let mut moves = Vec::new();
            let mut cur = idx;
            while let Some((p, m)) = states[cur].2 {
                moves.push(SubsetMove {
                    from: states[p].0,
                    s: m.s,
                    x: sys.element_of(&mut e, m.x)?,
                    to: m.to,
                });
                cur = p;
            }
            moves.reverse();
            return Ok(Some(ParabolicConjugator {
                x: sys.element_of(&mut e, x)?,
                moves,
            }));
        }
        for m in graph[&k].clone() {
            let y = e.mul(x, m.x)?;
            if e.len(y) != e.len(x) + e.len(m.x) || e.len(y) > MAX_CONJUGATOR_LENGTH {
                continue;
            }
            if visited.contains(&(m.to, y)) || states.len() >= MAX_STATES {
                continue;
            }
            states.push((m.to, y, Some((idx, m))));
            let key = (e.len(y), e.normal_form(y)?, m.to);
            heap.push(Reverse((key, states.len() - 1)));
        }
    }
    Ok(None)
}

/// Brute-force search for `v ∈ ball(radius)` with `v⁻¹ I v = J`; returns
/// the shortlex-least such `v`.
pub fn subset_conjugator_in_ball(
    sys: &CoxeterSystem,
    i: GenSubset,
    j: GenSubset,
    radius: usize,
) -> Result<Option<Element>> {
    if i.len() != j.len() {
        return Ok(None);
    }
    let mut e = sys.locked();
    let spheres = ball_ids(&mut e, radius, DEFAULT_BALL_CAP, None)?;
    for (v, _) in spheres.into_iter().flatten() {
        if conjugate_subset(&mut e, i, v)? == Some(j) {
            return Ok(Some(sys.element_of(&mut e, v)?));
        }
    }
    Ok(None)
}
