//! Twisted conjugacy `z ↦ δ(x)⁻¹ z x` inside a finite standard parabolic.

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::parabolic::{in_standard_parabolic, DiagramAutomorphism};
use crate::system::CoxeterSystem;
use crate::word::{Element, Generator};

fn check(sys: &CoxeterSystem, z: &Element, delta: &DiagramAutomorphism) -> Result<()> {
    let i = delta.domain();
    if !in_standard_parabolic(z, i) {
        return Err(Error::Precondition(format!(
            "{} is not in W_{}",
            sys.format_element(z),
            sys.format_subset(i)
        )));
    }
    if !delta.is_diagram_automorphism(sys) {
        return Err(Error::Precondition(format!("{delta} is not a diagram automorphism")));
    }
    Ok(())
}

fn step(sys: &CoxeterSystem, z: &Element, s: Generator, delta: &DiagramAutomorphism) -> Result<Option<Element>> {
    let left = sys.generator(delta.apply(s));
    let y = sys.product(&[&left, z, &sys.generator(s)])?;
    Ok((y.length() <= z.length()).then_some(y))
}

/// `δ(s) · z · s` if its length does not exceed `ℓ(z)`. The subset is the
/// domain of `delta`.
pub fn twisted_shift_step(
    sys: &CoxeterSystem,
    z: &Element,
    s: Generator,
    delta: &DiagramAutomorphism,
) -> Result<Option<Element>> {
    check(sys, z, delta)?;
    if !delta.domain().contains(s) {
        return Err(Error::Precondition(format!(
            "{} is not in {}",
            sys.label(s),
            sys.format_subset(delta.domain())
        )));
    }
    step(sys, z, s, delta)
}

/// Closure of `{z}` under twisted shift steps (sorted) and its least length.
pub fn twisted_min_closure(
    sys: &CoxeterSystem,
    z: &Element,
    delta: &DiagramAutomorphism,
) -> Result<(Vec<Element>, usize)> {
    check(sys, z, delta)?;
    let mut seen = BTreeSet::from([z.clone()]);
    let mut queue = VecDeque::from([z.clone()]);
    while let Some(x) = queue.pop_front() {
        for s in delta.domain().iter() {
            if let Some(y) = step(sys, &x, s, delta)? {
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
    }
    let min = seen.iter().map(Element::length).min().unwrap_or(0);
    Ok((seen.into_iter().collect(), min))
}

/// The full twisted class `{δ(x)⁻¹ z x : x ∈ W_I}` (sorted), by enumeration
/// of the finite group `W_I`.
pub fn twisted_class_brute(sys: &CoxeterSystem, z: &Element, delta: &DiagramAutomorphism) -> Result<Vec<Element>> {
    check(sys, z, delta)?;
    let mut out = BTreeSet::new();
    for x in sys.parabolic_elements(delta.domain())? {
        let dx = sys.reduce(&delta.apply_word(x.nf()))?;
        let dxi = sys.inverse(&dx)?;
        out.insert(sys.product(&[&dxi, z, &x])?);
    }
    Ok(out.into_iter().collect())
}
