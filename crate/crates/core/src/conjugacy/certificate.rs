use super::{conj_min_ids, tight_closure_ids, tight_kind, ShiftStep, TightStep};
use crate::error::{Error, Result};
use crate::system::CoxeterSystem;
use crate::word::Element;

/// One link of a conjugacy certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CertStep {
    /// Cyclic shift, `from → to`.
    Shift(ShiftStep),
    /// Elementary tight conjugation.
    Tight(TightStep),
    /// A cyclic shift traversed backwards: the chain moves from `step.to`
    /// to `step.from`.
    Unshift(ShiftStep),
}

impl CertStep {
    pub fn source(&self) -> &Element {
        match self {
            CertStep::Shift(s) => &s.from,
            CertStep::Tight(t) => &t.from,
            CertStep::Unshift(s) => &s.to,
        }
    }

    pub fn target(&self) -> &Element {
        match self {
            CertStep::Shift(s) => &s.to,
            CertStep::Tight(t) => &t.to,
            CertStep::Unshift(s) => &s.from,
        }
    }

    pub fn is_valid(&self, sys: &CoxeterSystem) -> Result<bool> {
        match self {
            CertStep::Shift(s) | CertStep::Unshift(s) => s.is_valid(sys),
            CertStep::Tight(t) => t.is_valid(sys),
        }
    }
}

/// A chain of steps from `start` to `end`: shifts down to a minimal
/// element, tight steps across the minimal set, then shifts back up.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjCertificate {
    pub start: Element,
    pub end: Element,
    pub chain: Vec<CertStep>,
}

impl ConjCertificate {
    /// Replays the chain: every step must be valid and consecutive steps
    /// must compose from `start` to `end`.
    pub fn replay(&self, sys: &CoxeterSystem) -> Result<bool> {
        let mut cur = &self.start;
        for step in &self.chain {
            if step.source() != cur || !step.is_valid(sys)? {
                return Ok(false);
            }
            cur = step.target();
        }
        Ok(cur == &self.end)
    }
}

/// Decides conjugacy. Returns a replay-verified certificate, or `None` if
/// the elements are not conjugate.
pub fn are_conjugate(sys: &CoxeterSystem, w: &Element, w2: &Element) -> Result<Option<ConjCertificate>> {
    if w == w2 {
        return Ok(Some(ConjCertificate {
            start: w.clone(),
            end: w2.clone(),
            chain: Vec::new(),
        }));
    }
    let cert = {
        let mut e = sys.locked();
        let a = sys.id_of(&mut e, w)?;
        let b = sys.id_of(&mut e, w2)?;
        let (sa, ra, _) = conj_min_ids(sys, &mut e, a)?;
        let sb = super::shift_closure_ids(&mut e, b)?;
        if sa.min_length != sb.min_length {
            return Ok(None);
        }
        let rb = if e.len(b) == sb.min_length {
            b
        } else {
            let minimal = sb.minimal(&e);
            super::sort_ids(&mut e, minimal)?[0]
        };
        let tc = tight_closure_ids(sys, &mut e, ra)?;
        if !tc.parent.contains_key(&rb) && rb != ra {
            return Ok(None);
        }
        let mut chain = Vec::new();
        for (x, s, y) in sa.path(ra) {
            chain.push(CertStep::Shift(ShiftStep {
                s,
                from: sys.element_of(&mut e, x)?,
                to: sys.element_of(&mut e, y)?,
            }));
        }
        for (x, k, y) in tc.path(rb) {
            chain.push(CertStep::Tight(TightStep {
                kind: tight_kind(sys, &mut e, k)?,
                from: sys.element_of(&mut e, x)?,
                to: sys.element_of(&mut e, y)?,
            }));
        }
        for (x, s, y) in sb.path(rb).into_iter().rev() {
            chain.push(CertStep::Unshift(ShiftStep {
                s,
                from: sys.element_of(&mut e, x)?,
                to: sys.element_of(&mut e, y)?,
            }));
        }
        ConjCertificate {
            start: w.clone(),
            end: w2.clone(),
            chain,
        }
    };
    if !cert.replay(sys)? {
        return Err(Error::Internal("conjugacy certificate failed to replay".into()));
    }
    Ok(Some(cert))
}
