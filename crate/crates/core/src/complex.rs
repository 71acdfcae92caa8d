//! Chambers, residues and projections in the Coxeter complex, and the
//! chamber sets `CMin(w)`.
//!
//! A chamber `v C₀` is identified with the element `v`; the chamber distance
//! is `dc(u, v) = ℓ(u⁻¹ v)`. A residue `v W_I` is stored by its minimal
//! coset representative.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use crate::conjugacy::{self, conj_min};
use crate::engine::{ElemId, Engine};
use crate::error::{Error, Result};
use crate::parabolic::{in_parabolic_id, min_coset_left_id, min_coset_right_id, normalizes_id};
use crate::system::{ball_ids, CoxeterSystem, DEFAULT_BALL_CAP};
use crate::word::{Element, GenSubset};

pub type Chamber = Element;

/// A residue `base · W_typ` with `base` the minimal coset representative.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Residue {
    base: Element,
    typ: GenSubset,
}

impl Residue {
    /// The residue of type `typ` containing the chamber `v`.
    pub fn new(sys: &CoxeterSystem, v: &Chamber, typ: GenSubset) -> Result<Self> {
        let mut e = sys.locked();
        let id = sys.id_of(&mut e, v)?;
        let (m, _) = min_coset_right_id(&mut e, id, typ)?;
        Ok(Residue {
            base: sys.element_of(&mut e, m)?,
            typ,
        })
    }

    pub fn base(&self) -> &Element {
        &self.base
    }

    pub fn typ(&self) -> GenSubset {
        self.typ
    }

    pub fn contains(&self, sys: &CoxeterSystem, d: &Chamber) -> Result<bool> {
        let mut e = sys.locked();
        let (b, d) = (sys.id_of(&mut e, &self.base)?, sys.id_of(&mut e, d)?);
        let bi = e.inverse(b)?;
        let r = e.mul(bi, d)?;
        Ok(in_parabolic_id(&e, r, self.typ))
    }

    /// All chambers of a spherical residue, sorted.
    pub fn chambers(&self, sys: &CoxeterSystem) -> Result<Vec<Chamber>> {
        let mut out: Vec<Chamber> = sys
            .parabolic_elements(self.typ)?
            .iter()
            .map(|z| sys.multiply(&self.base, z))
            .collect::<Result<_>>()?;
        out.sort();
        Ok(out)
    }

    fn require_spherical(&self, sys: &CoxeterSystem) -> Result<()> {
        if sys.is_spherical(self.typ) {
            Ok(())
        } else {
            Err(Error::NotSpherical(sys.format_subset(self.typ)))
        }
    }
}

/// Chamber distance `ℓ(c⁻¹ d)`.
pub fn distance(sys: &CoxeterSystem, c: &Chamber, d: &Chamber) -> Result<usize> {
    let mut e = sys.locked();
    let (c, d) = (sys.id_of(&mut e, c)?, sys.id_of(&mut e, d)?);
    dist_id(&mut e, c, d)
}

fn dist_id(e: &mut Engine, c: ElemId, d: ElemId) -> Result<usize> {
    let ci = e.inverse(c)?;
    let x = e.mul(ci, d)?;
    Ok(e.len(x))
}

fn project_id(e: &mut Engine, base: ElemId, typ: GenSubset, d: ElemId) -> Result<ElemId> {
    let bi = e.inverse(base)?;
    let u = e.mul(bi, d)?;
    let (wi, _) = min_coset_left_id(e, typ, u)?;
    e.mul(base, wi)
}

/// The chamber of `r` closest to `d`.
pub fn project(sys: &CoxeterSystem, r: &Residue, d: &Chamber) -> Result<Chamber> {
    let mut e = sys.locked();
    let (b, d) = (sys.id_of(&mut e, &r.base)?, sys.id_of(&mut e, d)?);
    let p = project_id(&mut e, b, r.typ, d)?;
    sys.element_of(&mut e, p)
}

/// Whether two spherical residues have the same stabilizer. When they do,
/// the mutual projections are checked to be inverse bijections.
pub fn parallel(sys: &CoxeterSystem, r: &Residue, r2: &Residue) -> Result<bool> {
    r.require_spherical(sys)?;
    r2.require_spherical(sys)?;
    let same = {
        let mut e = sys.locked();
        let b1 = sys.id_of(&mut e, &r.base)?;
        let b2 = sys.id_of(&mut e, &r2.base)?;
        // Stab(R) = b1 W_I b1⁻¹ ⊆ Stab(R') iff b2⁻¹ b1 s b1⁻¹ b2 ∈ W_J for s ∈ I.
        let b1i = e.inverse(b1)?;
        let b2i = e.inverse(b2)?;
        let c = e.mul(b1i, b2)?;
        let ci = e.mul(b2i, b1)?;
        stab_included(&mut e, r.typ, c, r2.typ)? && stab_included(&mut e, r2.typ, ci, r.typ)?
    };
    if !same {
        return Ok(false);
    }
    for d in r2.chambers(sys)? {
        let p = project(sys, r, &d)?;
        if project(sys, r2, &p)? != d {
            return Err(Error::Internal("projections between parallel residues are not inverse".into()));
        }
    }
    for d in r.chambers(sys)? {
        let p = project(sys, r2, &d)?;
        if project(sys, r, &p)? != d {
            return Err(Error::Internal("projections between parallel residues are not inverse".into()));
        }
    }
    Ok(true)
}

/// `c⁻¹ s c ∈ W_J` for every `s ∈ I`.
fn stab_included(e: &mut Engine, i: GenSubset, c: ElemId, j: GenSubset) -> Result<bool> {
    let cw = e.right_word(c).to_vec();
    for s in i.iter() {
        let g = e.rmul(ElemId::IDENTITY, s)?;
        let x = e.conjugate_by(g, &cw)?;
        if !in_parabolic_id(e, x, j) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn interval_id(e: &mut Engine, c: ElemId, d: ElemId, cap: usize) -> Result<Vec<ElemId>> {
    let ci = e.inverse(c)?;
    let u = e.mul(ci, d)?;
    // Prefixes y of u in the weak order, tracked with the remainder y⁻¹ u.
    let mut seen = HashSet::from([ElemId::IDENTITY]);
    let mut queue = VecDeque::from([(ElemId::IDENTITY, u)]);
    let mut out = vec![c];
    while let Some((y, r)) = queue.pop_front() {
        for s in e.left_descents(r)?.iter() {
            let y2 = e.rmul(y, s)?;
            if seen.insert(y2) {
                if seen.len() > cap {
                    return Err(Error::ResourceCap {
                        what: "interval size",
                        cap,
                    });
                }
                let r2 = e.lmul(r, s)?;
                out.push(e.mul(c, y2)?);
                queue.push_back((y2, r2));
            }
        }
    }
    Ok(out)
}

/// Chambers on minimal galleries from `c` to `d`, sorted.
pub fn interval(sys: &CoxeterSystem, c: &Chamber, d: &Chamber) -> Result<Vec<Chamber>> {
    let mut e = sys.locked();
    let (c, d) = (sys.id_of(&mut e, c)?, sys.id_of(&mut e, d)?);
    let ids = interval_id(&mut e, c, d, DEFAULT_BALL_CAP)?;
    let ids = conjugacy::sort_ids(&mut e, ids)?;
    conjugacy::to_elements(sys, &mut e, &ids)
}

/// The chambers `v` of `ball(radius)` with `ℓ(v⁻¹ w v)` minimal in the class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CMinSample {
    pub w: Element,
    pub class_min: usize,
    pub radius: usize,
    /// Sorted.
    pub members: BTreeSet<Chamber>,
}

pub fn cmin_in_ball(sys: &CoxeterSystem, w: &Element, radius: usize) -> Result<CMinSample> {
    let class_min = conj_min(sys, w)?.min_length;
    let mut e = sys.locked();
    let wid = sys.id_of(&mut e, w)?;
    let spheres = ball_ids(&mut e, radius, DEFAULT_BALL_CAP, None)?;
    let mut members = BTreeSet::new();
    let mut prev = vec![wid];
    for (k, sphere) in spheres.iter().enumerate() {
        let mut vals = Vec::with_capacity(sphere.len());
        for &(v, parent) in sphere {
            let pi = match parent {
                Some((pi, s)) => e.conj_gen(prev[pi], s)?,
                None => wid,
            };
            if e.len(pi) == class_min {
                members.insert(sys.element_of(&mut e, v)?);
            }
            vals.push(pi);
        }
        debug_assert!(k > 0 || vals.len() == 1);
        prev = vals;
    }
    Ok(CMinSample {
        w: w.clone(),
        class_min,
        radius,
        members,
    })
}

impl CMinSample {
    /// Connected components of the members under adjacency `v ~ vs`.
    pub fn gallery_components(&self, sys: &CoxeterSystem) -> Result<Vec<BTreeSet<Chamber>>> {
        let mut left = self.members.clone();
        let mut out = Vec::new();
        while let Some(start) = left.pop_first() {
            let mut comp = BTreeSet::from([start.clone()]);
            let mut queue = VecDeque::from([start]);
            while let Some(c) = queue.pop_front() {
                for s in sys.generators() {
                    let d = sys.multiply(&c, &sys.generator(s))?;
                    if left.remove(&d) {
                        comp.insert(d.clone());
                        queue.push_back(d);
                    }
                }
            }
            out.push(comp);
        }
        Ok(out)
    }

    /// Removes the chamber `w · D` for the first member `D` with margin. Used
    /// as a negative control for the convexity check.
    pub fn corrupted(&self, sys: &CoxeterSystem) -> Result<CMinSample> {
        let mut out = self.clone();
        for d in &self.members {
            if d.length() + self.w.length() > self.radius {
                continue;
            }
            let wd = sys.multiply(&self.w, d)?;
            if &wd != d && out.members.remove(&wd) {
                return Ok(out);
            }
        }
        Err(Error::Precondition("sample has no member to corrupt".into()))
    }
}

/// Checks that `Γ(D, w^ε D) ⊆ members` for every member `D` with
/// `ℓ(D) + ℓ(w) ≤ radius`.
pub fn check_w_convexity_sample(sys: &CoxeterSystem, sample: &CMinSample) -> Result<bool> {
    let mut e = sys.locked();
    let w = sys.id_of(&mut e, &sample.w)?;
    let wi = e.inverse(w)?;
    let members: HashSet<ElemId> = sample
        .members
        .iter()
        .map(|d| sys.id_of(&mut e, d))
        .collect::<Result<_>>()?;
    for d in &sample.members {
        if d.length() + sample.w.length() > sample.radius {
            continue;
        }
        let did = sys.id_of(&mut e, d)?;
        for x in [w, wi] {
            let target = e.mul(x, did)?;
            for c in interval_id(&mut e, did, target, DEFAULT_BALL_CAP)? {
                if !members.contains(&c) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

pub fn check_w_convexity(sys: &CoxeterSystem, w: &Element, radius: usize) -> Result<bool> {
    check_w_convexity_sample(sys, &cmin_in_ball(sys, w, radius)?)
}

/// `π_w(v) = v⁻¹ w v`.
pub fn pi_w(sys: &CoxeterSystem, w: &Element, v: &Chamber) -> Result<Element> {
    sys.conjugate(w, v)
}

/// For members `C`, `D` joined by a gallery inside the sample, checks that
/// `π_w(C) → π_w(D)`.
pub fn gallery_shift_consistency(sys: &CoxeterSystem, sample: &CMinSample, c: &Chamber, d: &Chamber) -> Result<bool> {
    if !sample.members.contains(c) || !sample.members.contains(d) {
        return Err(Error::Precondition("chambers must lie in the sample".into()));
    }
    let comps = sample.gallery_components(sys)?;
    if !comps.iter().any(|k| k.contains(c) && k.contains(d)) {
        return Err(Error::Precondition("chambers are not gallery-connected in the sample".into()));
    }
    let pc = pi_w(sys, &sample.w, c)?;
    let pd = pi_w(sys, &sample.w, d)?;
    let (closure, _) = conjugacy::shift_closure(sys, &pc)?;
    Ok(closure.binary_search(&pd).is_ok())
}

/// Whether `Stab(R) = Stab(wR)`, i.e. `base⁻¹ w base ∈ N_W(W_typ)`.
pub fn stab_condition(sys: &CoxeterSystem, w: &Element, r: &Residue) -> Result<bool> {
    r.require_spherical(sys)?;
    let mut e = sys.locked();
    let (w, b) = (sys.id_of(&mut e, w)?, sys.id_of(&mut e, &r.base)?);
    let bw = e.right_word(b).to_vec();
    let c = e.conjugate_by(w, &bw)?;
    normalizes_id(&mut e, c, r.typ)
}

/// Outcome of a bounded exploration of the chambers reachable by steps (I)
/// and (II).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CwExploration {
    /// Sorted.
    pub chambers: Vec<Chamber>,
    pub expansions: usize,
    /// True if the budget ran out before the closure was reached.
    pub exhausted: bool,
}

/// Breadth-first exploration from `C₀`: step (I) adds `Γ(C, w^{±1} C)`;
/// step (II) adds `R ∩ CMin(w)` for every spherical residue `R ∋ C` with
/// `Stab(R) = Stab(wR)`. At most `budget` chambers are expanded.
pub fn cw_explore(sys: &CoxeterSystem, w: &Element, budget: usize) -> Result<CwExploration> {
    let class_min = conj_min(sys, w)?.min_length;
    let subsets = conjugacy::spherical_subsets(sys)?;
    let mut e = sys.locked();
    let w = sys.id_of(&mut e, w)?;
    let wi = e.inverse(w)?;
    let mut seen = HashSet::from([ElemId::IDENTITY]);
    let mut queue = VecDeque::from([ElemId::IDENTITY]);
    let mut expansions = 0;
    let mut exhausted = false;
    let mut pi_cache: HashMap<ElemId, usize> = HashMap::new();
    while let Some(c) = queue.pop_front() {
        if expansions >= budget {
            exhausted = true;
            break;
        }
        expansions += 1;
        let mut found = Vec::new();
        for x in [w, wi] {
            let target = e.mul(x, c)?;
            found.extend(interval_id(&mut e, c, target, DEFAULT_BALL_CAP)?);
        }
        for &i in &subsets {
            let (base, _) = min_coset_right_id(&mut e, c, i)?;
            let bw = e.right_word(base).to_vec();
            let conj = e.conjugate_by(w, &bw)?;
            if !normalizes_id(&mut e, conj, i)? {
                continue;
            }
            for z in sys.parabolic_ids(&mut e, i)? {
                let d = e.mul(base, z)?;
                let len = match pi_cache.get(&d) {
                    Some(&l) => l,
                    None => {
                        let dw = e.right_word(d).to_vec();
                        let p = e.conjugate_by(w, &dw)?;
                        let l = e.len(p);
                        pi_cache.insert(d, l);
                        l
                    }
                };
                if len == class_min {
                    found.push(d);
                }
            }
        }
        for d in found {
            if seen.insert(d) {
                queue.push_back(d);
            }
        }
    }
    let ids = conjugacy::sort_ids(&mut e, seen)?;
    Ok(CwExploration {
        chambers: conjugacy::to_elements(sys, &mut e, &ids)?,
        expansions,
        exhausted,
    })
}

/// With `C = proj_R(D)` and `wR = R`, checks `dc(C, wC) ≤ dc(D, wD)`.
pub fn projection_monotonicity(sys: &CoxeterSystem, w: &Element, r: &Residue, d: &Chamber) -> Result<bool> {
    r.require_spherical(sys)?;
    let mut e = sys.locked();
    let (wid, b, did) = (sys.id_of(&mut e, w)?, sys.id_of(&mut e, &r.base)?, sys.id_of(&mut e, d)?);
    let bw = e.right_word(b).to_vec();
    let c = e.conjugate_by(wid, &bw)?;
    if !in_parabolic_id(&e, c, r.typ) {
        return Err(Error::Precondition(format!("{} does not stabilize the residue", sys.format_element(w))));
    }
    let p = project_id(&mut e, b, r.typ, did)?;
    let pw = e.right_word(p).to_vec();
    let dw = e.right_word(did).to_vec();
    let lp = e.conjugate_by(wid, &pw)?;
    let ld = e.conjugate_by(wid, &dw)?;
    Ok(e.len(lp) <= e.len(ld))
}

#[cfg(test)]
mod tests;
