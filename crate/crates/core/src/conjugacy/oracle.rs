use super::sort_ids;
use crate::engine::ElemId;
use crate::error::Result;
use crate::system::{ball_ids, CoxeterSystem, DEFAULT_BALL_CAP};
use crate::word::Element;

/// Brute-force minimal conjugates `{v⁻¹ w v : v ∈ ball(radius)}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub radius: usize,
    pub min_length: usize,
    /// Sorted in shortlex order.
    pub minimal: Vec<Element>,
    /// Whether the minimal set over a smaller ball (radius − 1 for
    /// [`omin_oracle`]) already equals this one. Always true once the ball
    /// covers a finite group.
    pub stable: bool,
}

/// Minimal conjugates over `ball(radius)`, with the stabilization flag
/// comparing radius − 1 and radius.
pub fn omin_oracle(sys: &CoxeterSystem, w: &Element, radius: usize) -> Result<OracleResult> {
    omin_oracle_window(sys, w, radius, 1)
}

/// As [`omin_oracle`], comparing against radius − `window`.
pub fn omin_oracle_window(sys: &CoxeterSystem, w: &Element, radius: usize, window: usize) -> Result<OracleResult> {
    let window = window.clamp(1, radius.max(1));
    let mut e = sys.locked();
    let w = sys.id_of(&mut e, w)?;
    let spheres = ball_ids(&mut e, radius, DEFAULT_BALL_CAP, None)?;
    let mut prev_vals: Vec<ElemId> = vec![w];
    // Minimal set over the ball of radius k, for k = radius - window and radius.
    let mut best: Option<(usize, Vec<ElemId>)> = None;
    let mut before_last: Option<(usize, Vec<ElemId>)> = None;
    let absorb = |best: &mut Option<(usize, Vec<ElemId>)>, len: usize, x: ElemId| match best {
        Some((l, v)) if *l == len => v.push(x),
        Some((l, _)) if *l < len => {}
        _ => *best = Some((len, vec![x])),
    };
    absorb(&mut best, e.len(w), w);
    if radius < window || radius == 0 {
        before_last = best.clone();
    }
    for (k, sphere) in spheres.iter().enumerate().skip(1) {
        if k + window == radius + 1 {
            before_last = best.clone();
        }
        let mut vals = Vec::with_capacity(sphere.len());
        for &(_, parent) in sphere {
            let (pi, s) = parent.expect("non-root");
            let c = e.conj_gen(prev_vals[pi], s)?;
            let len = e.len(c);
            absorb(&mut best, len, c);
            vals.push(c);
        }
        prev_vals = vals;
    }
    if spheres.len() <= radius {
        // The group ended before the radius: the result is exact.
        before_last = best.clone();
    }
    let (min_length, v) = best.expect("nonempty");
    let minimal = sort_ids(&mut e, v)?;
    let stable = match before_last {
        Some((l, pv)) => l == min_length && sort_ids(&mut e, pv)? == minimal,
        None => false,
    };
    Ok(OracleResult {
        radius,
        min_length,
        minimal: super::to_elements(sys, &mut e, &minimal)?,
        stable,
    })
}

/// Runs the oracle from radius `ℓ(w) + 4`, growing the radius until the
/// minimal set has not changed over the last `ℓ(w) + 2` radii, or
/// `max_radius` is reached.
pub fn omin_oracle_stable(sys: &CoxeterSystem, w: &Element, max_radius: usize) -> Result<OracleResult> {
    let window = w.length() + 2;
    let mut r = (w.length() + 4).min(max_radius);
    loop {
        let res = omin_oracle_window(sys, w, r, window)?;
        if res.stable || r >= max_radius {
            return Ok(res);
        }
        r += 1;
    }
}
