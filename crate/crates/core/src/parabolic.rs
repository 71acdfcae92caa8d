//! Standard parabolic subgroups: membership, coset representatives, longest
//! elements, normalizers and the Lusztig decomposition.

use std::fmt;

use crate::engine::{ElemId, Engine};
use crate::error::{Error, Result};
use crate::system::CoxeterSystem;
use crate::word::{Element, GenSubset, Generator, Word};

/// Whether the element lies in `W_I`. Any reduced word of an element of
/// `W_I` only uses letters of `I`, so the interning key can be tested.
pub(crate) fn in_parabolic_id(e: &Engine, w: ElemId, subset: GenSubset) -> bool {
    e.right_word(w).iter().all(|&s| subset.contains(s))
}

/// `w = w_I · m` with `m` the minimal element of `W_I w`.
pub(crate) fn min_coset_left_id(e: &mut Engine, subset: GenSubset, w: ElemId) -> Result<(ElemId, ElemId)> {
    let mut m = w;
    let mut wi = ElemId::IDENTITY;
    while let Some(s) = e.left_descents(m)?.intersection(subset).first() {
        m = e.lmul(m, s)?;
        wi = e.rmul(wi, s)?;
    }
    Ok((wi, m))
}

/// `w = m · w_I` with `m` the minimal element of `w W_I`.
pub(crate) fn min_coset_right_id(e: &mut Engine, w: ElemId, subset: GenSubset) -> Result<(ElemId, ElemId)> {
    let mut m = w;
    let mut wi = ElemId::IDENTITY;
    while let Some(s) = e.right_descents(m).intersection(subset).first() {
        m = e.rmul(m, s)?;
        wi = e.lmul(wi, s)?;
    }
    Ok((m, wi))
}

pub(crate) fn longest_id(sys: &CoxeterSystem, e: &mut Engine, subset: GenSubset) -> Result<ElemId> {
    if !sys.is_spherical(subset) {
        return Err(Error::NotSpherical(sys.format_subset(subset)));
    }
    let mut w = ElemId::IDENTITY;
    while let Some(s) = subset.difference(e.right_descents(w)).first() {
        w = e.rmul(w, s)?;
    }
    Ok(w)
}

/// Two-sided test `w s w⁻¹ ∈ W_I` and `w⁻¹ s w ∈ W_I` for all `s ∈ I`.
pub(crate) fn normalizes_id(e: &mut Engine, w: ElemId, subset: GenSubset) -> Result<bool> {
    let wi = e.inverse(w)?;
    let w_word = e.right_word(w).to_vec();
    let wi_word = e.right_word(wi).to_vec();
    for s in subset.iter() {
        let g = e_gen(e, s)?;
        let a = e.conjugate_by(g, &wi_word)?;
        if !in_parabolic_id(e, a, subset) {
            return Ok(false);
        }
        let b = e.conjugate_by(g, &w_word)?;
        if !in_parabolic_id(e, b, subset) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn e_gen(e: &mut Engine, s: Generator) -> Result<ElemId> {
    e.rmul(ElemId::IDENTITY, s)
}

/// `x⁻¹ s x` if it is a single generator.
pub(crate) fn conjugate_generator(e: &mut Engine, s: Generator, x: ElemId) -> Result<Option<Generator>> {
    let g = e_gen(e, s)?;
    let xw = e.right_word(x).to_vec();
    let c = e.conjugate_by(g, &xw)?;
    Ok(match e.right_word(c) {
        [t] => Some(*t),
        _ => None,
    })
}

pub fn in_standard_parabolic(a: &Element, subset: GenSubset) -> bool {
    a.letters().iter().all(|&s| subset.contains(s))
}

/// Returns `(w_I, m)` with `w = w_I · m`, `w_I ∈ W_I` and `m` the unique
/// minimal-length element of the coset `W_I w`.
pub fn min_coset_rep_left(sys: &CoxeterSystem, subset: GenSubset, w: &Element) -> Result<(Element, Element)> {
    let mut e = sys.locked();
    let id = sys.id_of(&mut e, w)?;
    let (wi, m) = min_coset_left_id(&mut e, subset, id)?;
    Ok((sys.element_of(&mut e, wi)?, sys.element_of(&mut e, m)?))
}

/// Returns `(m, w_I)` with `w = m · w_I` and `m` minimal in `w W_I`.
pub fn min_coset_rep_right(sys: &CoxeterSystem, w: &Element, subset: GenSubset) -> Result<(Element, Element)> {
    let mut e = sys.locked();
    let id = sys.id_of(&mut e, w)?;
    let (m, wi) = min_coset_right_id(&mut e, id, subset)?;
    Ok((sys.element_of(&mut e, m)?, sys.element_of(&mut e, wi)?))
}

/// The longest element of a finite `W_I`.
pub fn longest_element(sys: &CoxeterSystem, subset: GenSubset) -> Result<Element> {
    let mut e = sys.locked();
    let w = longest_id(sys, &mut e, subset)?;
    sys.element_of(&mut e, w)
}

/// Whether `w` normalizes `W_I`.
pub fn normalizer_test(sys: &CoxeterSystem, w: &Element, subset: GenSubset) -> Result<bool> {
    let mut e = sys.locked();
    let id = sys.id_of(&mut e, w)?;
    normalizes_id(&mut e, id, subset)
}

/// A permutation of a generator subset.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DiagramAutomorphism {
    domain: GenSubset,
    image: Vec<Generator>,
}

impl DiagramAutomorphism {
    pub fn identity(domain: GenSubset) -> Self {
        let n = domain.iter().last().map_or(0, |s| s as usize + 1);
        DiagramAutomorphism {
            domain,
            image: (0..n as Generator).collect(),
        }
    }

    /// Builds the map from `(s, δ(s))` pairs. Fails unless the pairs define
    /// a permutation of their domain.
    pub fn from_pairs(pairs: &[(Generator, Generator)]) -> Result<Self> {
        let domain = GenSubset::from_gens(pairs.iter().map(|p| p.0));
        let codomain = GenSubset::from_gens(pairs.iter().map(|p| p.1));
        if domain != codomain || domain.len() != pairs.len() {
            return Err(Error::Precondition("pairs do not define a permutation".into()));
        }
        let mut d = DiagramAutomorphism::identity(domain);
        for &(s, t) in pairs {
            d.image[s as usize] = t;
        }
        Ok(d)
    }

    pub fn domain(&self) -> GenSubset {
        self.domain
    }

    pub fn apply(&self, s: Generator) -> Generator {
        debug_assert!(self.domain.contains(s));
        self.image[s as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.domain.iter().all(|s| self.apply(s) == s)
    }

    /// Whether the permutation preserves all Coxeter labels on its domain.
    pub fn is_diagram_automorphism(&self, sys: &CoxeterSystem) -> bool {
        self.domain.iter().all(|s| self.domain.contains(self.apply(s)))
            && self.domain.iter().all(|s| {
                self.domain
                    .iter()
                    .all(|t| sys.order(s, t) == sys.order(self.apply(s), self.apply(t)))
            })
    }

    /// Image of a word letter by letter.
    pub fn apply_word(&self, w: &Word) -> Word {
        Word(w.letters().iter().map(|&s| self.apply(s)).collect())
    }

    pub fn pairs(&self) -> Vec<(Generator, Generator)> {
        self.domain.iter().map(|s| (s, self.apply(s))).collect()
    }
}

impl fmt::Display for DiagramAutomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.pairs().iter().map(|(s, t)| format!("{s}->{t}")).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// `w = w_I · n_I` for `w ∈ N_W(W_I)`, with `n_I⁻¹ s n_I = δ(s)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LusztigDecomposition {
    pub w_i: Element,
    pub n_i: Element,
    pub subset: GenSubset,
    pub delta: DiagramAutomorphism,
}

pub fn lusztig_decompose(sys: &CoxeterSystem, w: &Element, subset: GenSubset) -> Result<LusztigDecomposition> {
    let mut e = sys.locked();
    let id = sys.id_of(&mut e, w)?;
    if !normalizes_id(&mut e, id, subset)? {
        return Err(Error::Precondition(format!(
            "{} does not normalize W_{}",
            sys.format_element(w),
            sys.format_subset(subset)
        )));
    }
    let (wi, n) = min_coset_left_id(&mut e, subset, id)?;
    let mut pairs = Vec::with_capacity(subset.len());
    for s in subset.iter() {
        match conjugate_generator(&mut e, s, n)? {
            Some(t) if subset.contains(t) => pairs.push((s, t)),
            _ => {
                return Err(Error::Internal(format!(
                    "coset representative does not stabilize the simple roots of {}",
                    sys.format_subset(subset)
                )))
            }
        }
    }
    let delta = DiagramAutomorphism::from_pairs(&pairs).map_err(|e| Error::Internal(e.to_string()))?;
    Ok(LusztigDecomposition {
        w_i: sys.element_of(&mut e, wi)?,
        n_i: sys.element_of(&mut e, n)?,
        subset,
        delta,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;

    fn subset(sys: &CoxeterSystem, labels: &str) -> GenSubset {
        GenSubset::from_gens(labels.split_whitespace().map(|l| sys.generator_index(l).unwrap()))
    }

    #[test]
    fn affine_a2_lusztig_decomposition() {
        let sys = zoo::affine_a2();
        let w = sys.element("s u t s u t u").unwrap();
        let u = subset(&sys, "u");
        assert!(normalizer_test(&sys, &w, u).unwrap());
        let d = lusztig_decompose(&sys, &w, u).unwrap();
        assert_eq!(sys.format_element(&d.w_i), "u");
        assert_eq!(d.n_i, sys.element("s u t s u t").unwrap());
        assert!(d.delta.is_identity());
        let (wi, m) = min_coset_rep_left(&sys, u, &w).unwrap();
        assert_eq!((wi, m), (d.w_i, d.n_i));
    }

    #[test]
    fn trivial_decompositions() {
        let sys = zoo::affine_a2();
        let w = sys.element("s t s").unwrap();
        let st = subset(&sys, "s t");
        let d = lusztig_decompose(&sys, &w, st).unwrap();
        assert_eq!((d.w_i, d.n_i.is_identity()), (w.clone(), true));
        let d = lusztig_decompose(&sys, &w, GenSubset::EMPTY).unwrap();
        assert_eq!((d.w_i.is_identity(), d.n_i), (true, w));
    }

    #[test]
    fn normalizer_examples() {
        let a2 = zoo::a2();
        let s = a2.generator(0);
        assert!(!normalizer_test(&a2, &s, GenSubset::singleton(1)).unwrap());
        assert!(normalizer_test(&a2, &s, GenSubset::EMPTY).unwrap());
        let err = lusztig_decompose(&a2, &s, GenSubset::singleton(1)).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
    }

    #[test]
    fn longest_elements() {
        let a2 = zoo::a2();
        assert_eq!(a2.format_element(&longest_element(&a2, a2.all_generators()).unwrap()), "s t s");
        let i4 = zoo::i2(4);
        assert_eq!(longest_element(&i4, i4.all_generators()).unwrap().length(), 4);
        let h3 = zoo::h3();
        assert_eq!(longest_element(&h3, h3.all_generators()).unwrap().length(), 15);
        let at = zoo::affine_a2();
        assert!(matches!(longest_element(&at, at.all_generators()), Err(Error::NotSpherical(_))));
        assert_eq!(longest_element(&at, GenSubset::singleton(2)).unwrap(), at.generator(2));
    }

    #[test]
    fn delta_swaps_in_a2() {
        let a2 = zoo::a2();
        let w0 = longest_element(&a2, a2.all_generators()).unwrap();
        let d = lusztig_decompose(&a2, &w0, a2.all_generators()).unwrap();
        assert!(d.delta.is_identity());
        let a3 = zoo::a3();
        let w0 = longest_element(&a3, a3.all_generators()).unwrap();
        let su = subset(&a3, "s u");
        let d = lusztig_decompose(&a3, &w0, su).unwrap();
        assert_eq!(d.delta.pairs(), vec![(0, 2), (2, 0)]);
        assert!(d.delta.is_diagram_automorphism(&a3));
        assert_eq!(a3.multiply(&d.w_i, &d.n_i).unwrap(), w0);
        assert_eq!(d.w_i.length() + d.n_i.length(), w0.length());
    }

    #[test]
    fn parabolic_membership() {
        let at = zoo::affine_a2();
        assert!(in_standard_parabolic(&at.identity(), GenSubset::EMPTY));
        assert!(in_standard_parabolic(&at.element("s t s").unwrap(), subset(&at, "s t")));
        let a2 = zoo::a2();
        assert!(!in_standard_parabolic(&a2.generator(0), GenSubset::singleton(1)));
    }
}
