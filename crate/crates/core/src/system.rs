//! Coxeter systems of finite rank, their text format, and element-level
//! group operations.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Mutex, MutexGuard};

use crate::engine::{ElemId, Engine};
use crate::error::{Error, ParseErrorKind, Result};
use crate::finite_type::{classify_components, FiniteType};
use crate::word::{Element, GenSubset, Generator, Word, MAX_RANK};

/// Default bound on the number of elements enumerated by a ball.
pub const DEFAULT_BALL_CAP: usize = 2_000_000;

static NEXT_SYSTEM_ID: AtomicU64 = AtomicU64::new(1);

/// Entry of a Coxeter matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Order {
    Finite(u32),
    Infinite,
}

impl Order {
    pub fn finite(self) -> Option<u32> {
        match self {
            Order::Finite(m) => Some(m),
            Order::Infinite => None,
        }
    }

    /// File encoding: `∞` is written as `0`.
    pub fn encode(self) -> u32 {
        self.finite().unwrap_or(0)
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(m) => write!(f, "{m}"),
            Order::Infinite => f.write_str("inf"),
        }
    }
}

/// A Coxeter system `(W, S)` of finite rank.
///
/// The system is immutable once built. It owns a lock-protected cache of
/// discovered elements; all public operations are pure functions of their
/// inputs.
pub struct CoxeterSystem {
    id: u64,
    labels: Vec<String>,
    /// Row-major, `0` encodes `∞`.
    matrix: Vec<u32>,
    spherical: Vec<bool>,
    engine: Mutex<Engine>,
    parabolic_cache: Mutex<HashMap<GenSubset, Vec<ElemId>>>,
}

impl fmt::Debug for CoxeterSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CoxeterSystem")
            .field("labels", &self.labels)
            .field("matrix", &self.matrix)
            .finish()
    }
}

/// Sphericity is tabulated for every subset up to this rank.
const SPHERICITY_TABLE_RANK: usize = 16;

fn valid_label(l: &str) -> bool {
    !l.is_empty() && !l.chars().any(char::is_whitespace)
}

impl CoxeterSystem {
    /// Builds a system from labels and a square matrix (`0` encodes `∞`).
    pub fn new<S: Into<String>>(labels: Vec<S>, matrix: Vec<Vec<u32>>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let rank = labels.len();
        if rank == 0 {
            return Err(Error::InvalidSystem("rank must be positive".into()));
        }
        if rank > MAX_RANK {
            return Err(Error::InvalidSystem(format!("rank {rank} exceeds {MAX_RANK}")));
        }
        let mut seen = HashSet::new();
        for l in &labels {
            if !valid_label(l) {
                return Err(Error::InvalidSystem(format!("invalid label {l:?}")));
            }
            if !seen.insert(l.as_str()) {
                return Err(Error::InvalidSystem(format!("duplicate label {l:?}")));
            }
        }
        if matrix.len() != rank || matrix.iter().any(|r| r.len() != rank) {
            return Err(Error::InvalidSystem("matrix must be rank × rank".into()));
        }
        for i in 0..rank {
            for j in 0..rank {
                let v = matrix[i][j];
                if i == j && v != 1 {
                    return Err(Error::InvalidSystem(format!("diagonal entry ({i},{i}) must be 1")));
                }
                if i != j && v == 1 {
                    return Err(Error::InvalidSystem(format!(
                        "off-diagonal entry ({i},{j}) must be 0 or at least 2"
                    )));
                }
                if v != matrix[j][i] {
                    return Err(Error::InvalidSystem(format!("matrix not symmetric at ({i},{j})")));
                }
            }
        }
        let flat: Vec<u32> = matrix.into_iter().flatten().collect();
        let mut sys = CoxeterSystem {
            id: NEXT_SYSTEM_ID.fetch_add(1, Ordering::Relaxed),
            labels,
            engine: Mutex::new(Engine::new(rank, flat.clone())),
            matrix: flat,
            spherical: Vec::new(),
            parabolic_cache: Mutex::new(HashMap::new()),
        };
        if rank <= SPHERICITY_TABLE_RANK {
            sys.spherical = GenSubset::all(rank)
                .map(|i| classify_components(&sys, i).is_some())
                .collect();
        }
        Ok(sys)
    }

    /// Parses the plain-text system format:
    ///
    /// ```text
    /// # comment
    /// generators: s t u
    /// matrix:
    /// 1 3 3
    /// 3 1 3
    /// 3 3 1
    /// ```
    pub fn parse(text: &str) -> Result<Self> {
        let perr = |line: usize, kind| Error::Parse { line, kind };
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        let (gline, gtext) = lines.next().ok_or(perr(1, ParseErrorKind::MissingGenerators))?;
        let rest = gtext
            .strip_prefix("generators:")
            .ok_or_else(|| perr(gline, ParseErrorKind::MissingGenerators))?;
        let labels: Vec<String> = rest.split_whitespace().map(str::to_owned).collect();
        if labels.is_empty() {
            return Err(perr(gline, ParseErrorKind::EmptyGenerators));
        }
        if labels.len() > MAX_RANK {
            return Err(perr(
                gline,
                ParseErrorKind::MalformedHeader(format!("at most {MAX_RANK} generators supported")),
            ));
        }
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(perr(gline, ParseErrorKind::DuplicateLabel(l.clone())));
            }
        }
        let rank = labels.len();

        let (mline, mtext) = lines.next().ok_or(perr(gline + 1, ParseErrorKind::MissingMatrix))?;
        if mtext != "matrix:" {
            if mtext.starts_with("matrix:") {
                return Err(perr(mline, ParseErrorKind::MalformedHeader(mtext.to_owned())));
            }
            return Err(perr(mline, ParseErrorKind::MissingMatrix));
        }

        let mut rows: Vec<(usize, Vec<u32>)> = Vec::with_capacity(rank);
        let mut last_line = mline;
        for (ln, l) in lines {
            last_line = ln;
            if rows.len() == rank {
                return Err(perr(ln, ParseErrorKind::Trailing));
            }
            let row = l
                .split_whitespace()
                .map(|tok| tok.parse::<u32>().map_err(|_| perr(ln, ParseErrorKind::BadEntry(tok.to_owned()))))
                .collect::<Result<Vec<u32>>>()?;
            if row.len() != rank {
                return Err(perr(
                    ln,
                    ParseErrorKind::RowLength {
                        expected: rank,
                        found: row.len(),
                    },
                ));
            }
            rows.push((ln, row));
        }
        if rows.len() != rank {
            return Err(perr(
                last_line,
                ParseErrorKind::RowCount {
                    expected: rank,
                    found: rows.len(),
                },
            ));
        }
        for (i, (ln, row)) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if i == j && v != 1 {
                    return Err(perr(*ln, ParseErrorKind::Diagonal(i)));
                }
                if i != j && v == 1 {
                    return Err(perr(*ln, ParseErrorKind::OffDiagonal(i, j)));
                }
                if j < i && v != rows[j].1[i] {
                    return Err(perr(*ln, ParseErrorKind::NotSymmetric(i, j)));
                }
            }
        }
        CoxeterSystem::new(labels, rows.into_iter().map(|(_, r)| r).collect())
    }

    /// Serializes to the text format, with single spaces and no comments.
    pub fn to_text(&self) -> String {
        let n = self.rank();
        let mut out = format!("generators: {}\nmatrix:\n", self.labels.join(" "));
        for i in 0..n {
            let row: Vec<String> = (0..n).map(|j| self.matrix[i * n + j].to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, s: Generator) -> &str {
        &self.labels[s as usize]
    }

    pub fn generators(&self) -> impl Iterator<Item = Generator> {
        0..self.rank() as Generator
    }

    pub fn all_generators(&self) -> GenSubset {
        GenSubset::full(self.rank())
    }

    pub fn order(&self, s: Generator, t: Generator) -> Order {
        match self.matrix[s as usize * self.rank() + t as usize] {
            0 => Order::Infinite,
            m => Order::Finite(m),
        }
    }

    /// Whether `W_I` is finite, decided from the Coxeter diagram.
    pub fn is_spherical(&self, subset: GenSubset) -> bool {
        if self.spherical.is_empty() {
            classify_components(self, subset).is_some()
        } else {
            self.spherical[subset.0 as usize]
        }
    }

    /// Finite types of the connected components of the diagram on `subset`,
    /// or `None` if some component is of infinite type.
    pub fn classify(&self, subset: GenSubset) -> Option<Vec<FiniteType>> {
        classify_components(self, subset)
    }

    pub fn with_engine<R>(&self, f: impl FnOnce(&mut Engine) -> R) -> R {
        f(&mut self.lock())
    }

    fn lock(&self) -> MutexGuard<'_, Engine> {
        self.engine.lock().unwrap_or_else(|e| e.into_inner())
    }

    /// Bound on the number of elements the engine may discover.
    pub fn set_element_cap(&self, cap: usize) {
        self.lock().set_cap(cap);
    }

    // ---- words and labels ----

    pub fn generator_index(&self, label: &str) -> Result<Generator> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(|i| i as Generator)
            .ok_or_else(|| Error::UnknownLabel(label.to_owned()))
    }

    /// Parses a whitespace-separated list of labels. The empty string is the
    /// empty word.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        text.split_whitespace()
            .map(|l| self.generator_index(l))
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }

    pub fn format_word(&self, w: &Word) -> String {
        w.letters()
            .iter()
            .map(|&s| self.label(s))
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn format_element(&self, e: &Element) -> String {
        self.format_word(e.nf())
    }

    pub fn format_subset(&self, i: GenSubset) -> String {
        let names: Vec<&str> = i.iter().map(|s| self.label(s)).collect();
        format!("{{{}}}", names.join(","))
    }

    pub fn check_word(&self, w: &Word) -> Result<()> {
        for &s in w.letters() {
            if s as usize >= self.rank() {
                return Err(Error::GeneratorOutOfRange {
                    index: s as usize,
                    rank: self.rank(),
                });
            }
        }
        Ok(())
    }

    fn check_same(&self, e: &Element) -> Result<()> {
        if e.system == self.id {
            Ok(())
        } else {
            Err(Error::MixedSystem)
        }
    }

    // ---- element construction ----

    pub fn identity(&self) -> Element {
        Element {
            system: self.id,
            nf: Word::empty(),
        }
    }

    pub fn generator(&self, s: Generator) -> Element {
        Element {
            system: self.id,
            nf: Word(vec![s]),
        }
    }

    pub(crate) fn wrap(&self, nf: Word) -> Element {
        Element { system: self.id, nf }
    }

    /// Interns an element in the engine.
    pub fn id_of(&self, engine: &mut Engine, e: &Element) -> Result<ElemId> {
        self.check_same(e)?;
        engine.from_normal_form(e.letters())
    }

    pub fn element_of(&self, engine: &mut Engine, id: ElemId) -> Result<Element> {
        Ok(self.wrap(engine.normal_form(id)?))
    }

    /// The element represented by an arbitrary word.
    pub fn reduce(&self, w: &Word) -> Result<Element> {
        self.check_word(w)?;
        let mut e = self.lock();
        let id = e.from_word(w.letters())?;
        Ok(self.wrap(e.normal_form(id)?))
    }

    /// Parses and reduces a word given by labels.
    pub fn element(&self, text: &str) -> Result<Element> {
        self.reduce(&self.parse_word(text)?)
    }

    /// Length of the element represented by `w`.
    pub fn word_length(&self, w: &Word) -> Result<usize> {
        self.check_word(w)?;
        let mut e = self.lock();
        let id = e.from_word(w.letters())?;
        Ok(e.len(id))
    }

    pub fn multiply(&self, a: &Element, b: &Element) -> Result<Element> {
        self.check_same(a)?;
        self.check_same(b)?;
        let mut e = self.lock();
        let ia = e.from_normal_form(a.letters())?;
        let r = e.climb_any(ia, b.letters())?;
        Ok(self.wrap(e.normal_form(r)?))
    }

    /// Product of a sequence of elements.
    pub fn product(&self, factors: &[&Element]) -> Result<Element> {
        let mut acc = self.identity();
        for f in factors {
            acc = self.multiply(&acc, f)?;
        }
        Ok(acc)
    }

    pub fn inverse(&self, a: &Element) -> Result<Element> {
        self.check_same(a)?;
        let mut e = self.lock();
        let ia = e.from_normal_form(a.letters())?;
        let inv = e.inverse(ia)?;
        Ok(self.wrap(e.normal_form(inv)?))
    }

    /// `x⁻¹ · w · x`.
    pub fn conjugate(&self, w: &Element, x: &Element) -> Result<Element> {
        self.check_same(w)?;
        self.check_same(x)?;
        let mut e = self.lock();
        let iw = e.from_normal_form(w.letters())?;
        let r = e.conjugate_by(iw, x.letters())?;
        Ok(self.wrap(e.normal_form(r)?))
    }

    /// `s · w · s`.
    pub fn conjugate_gen(&self, w: &Element, s: Generator) -> Result<Element> {
        self.check_same(w)?;
        let mut e = self.lock();
        let iw = e.from_normal_form(w.letters())?;
        let r = e.conj_gen(iw, s)?;
        Ok(self.wrap(e.normal_form(r)?))
    }

    pub fn power(&self, w: &Element, n: usize) -> Result<Element> {
        self.check_same(w)?;
        let mut e = self.lock();
        let iw = e.from_normal_form(w.letters())?;
        let mut acc = ElemId::IDENTITY;
        for _ in 0..n {
            acc = e.mul(acc, iw)?;
        }
        Ok(self.wrap(e.normal_form(acc)?))
    }

    pub fn left_descents(&self, a: &Element) -> Result<GenSubset> {
        self.check_same(a)?;
        let mut e = self.lock();
        let ia = e.from_normal_form(a.letters())?;
        e.left_descents(ia)
    }

    pub fn right_descents(&self, a: &Element) -> Result<GenSubset> {
        self.check_same(a)?;
        let mut e = self.lock();
        let ia = e.from_normal_form(a.letters())?;
        Ok(e.right_descents(ia))
    }

    /// All elements of length exactly `radius`, in lexicographic order of
    /// normal forms.
    pub fn sphere(&self, radius: usize, cap: usize) -> Result<Vec<Element>> {
        let mut spheres = self.spheres(radius, cap)?;
        if spheres.len() == radius + 1 {
            Ok(spheres.pop().unwrap_or_default())
        } else {
            Ok(Vec::new())
        }
    }

    /// All elements of length at most `radius`, sphere by sphere, each sphere
    /// in lexicographic order of normal forms.
    pub fn ball(&self, radius: usize, cap: usize) -> Result<Vec<Element>> {
        Ok(self.spheres(radius, cap)?.into_iter().flatten().collect())
    }

    /// Spheres `0..=radius`.
    pub fn spheres(&self, radius: usize, cap: usize) -> Result<Vec<Vec<Element>>> {
        let mut e = self.lock();
        let ids = ball_ids(&mut e, radius, cap, None)?;
        ids.into_iter()
            .map(|sphere| {
                let mut v = sphere
                    .into_iter()
                    .map(|(id, _)| self.element_of(&mut e, id))
                    .collect::<Result<Vec<_>>>()?;
                v.sort();
                Ok(v)
            })
            .collect()
    }

    /// Elements of the standard parabolic subgroup `W_I`, sorted by normal
    /// form. Requires `I` spherical.
    pub fn parabolic_elements(&self, subset: GenSubset) -> Result<Vec<Element>> {
        let mut e = self.lock();
        let ids = self.parabolic_ids(&mut e, subset)?;
        ids.into_iter().map(|id| self.element_of(&mut e, id)).collect()
    }

    /// Engine handles of `W_I` (cached), sorted by normal form.
    pub(crate) fn parabolic_ids(&self, e: &mut Engine, subset: GenSubset) -> Result<Vec<ElemId>> {
        if !self.is_spherical(subset) {
            return Err(Error::NotSpherical(self.format_subset(subset)));
        }
        if let Some(v) = self.parabolic_cache.lock().unwrap_or_else(|e| e.into_inner()).get(&subset) {
            return Ok(v.clone());
        }
        let ids: Vec<ElemId> = ball_ids(e, usize::MAX, usize::MAX, Some(subset))?
            .into_iter()
            .flatten()
            .map(|(id, _)| id)
            .collect();
        let mut keyed = ids
            .into_iter()
            .map(|id| Ok((e.normal_form(id)?, id)))
            .collect::<Result<Vec<_>>>()?;
        keyed.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
        let v: Vec<ElemId> = keyed.into_iter().map(|(_, id)| id).collect();
        self.parabolic_cache
            .lock()
            .unwrap_or_else(|e| e.into_inner())
            .insert(subset, v.clone());
        Ok(v)
    }

    /// Runs `f` with exclusive access to the engine. Used by the algorithm
    /// modules, which work on engine handles.
    pub(crate) fn locked(&self) -> MutexGuard<'_, Engine> {
        self.lock()
    }
}

/// Breadth-first enumeration of the Cayley graph. Returns spheres of
/// `(element, parent)` pairs, where `parent = (index into previous sphere,
/// generator)` records `element = parent · s`. Restricting to `within`
/// enumerates the standard parabolic subgroup instead; the enumeration then
/// stops at the first empty sphere.
pub(crate) fn ball_ids(
    e: &mut Engine,
    radius: usize,
    cap: usize,
    within: Option<GenSubset>,
) -> Result<Vec<Vec<(ElemId, Option<(usize, Generator)>)>>> {
    let gens = within.unwrap_or(GenSubset::full(e.rank()));
    let mut spheres = vec![vec![(ElemId::IDENTITY, None)]];
    let mut total = 1usize;
    for _ in 0..radius {
        let prev = spheres.last().expect("nonempty");
        let mut next = Vec::new();
        let mut seen = HashSet::new();
        let prev: Vec<ElemId> = prev.iter().map(|&(id, _)| id).collect();
        for (pi, &w) in prev.iter().enumerate() {
            let desc = e.right_descents(w);
            for s in gens.difference(desc).iter() {
                let ws = e.rmul(w, s)?;
                if seen.insert(ws) {
                    next.push((ws, Some((pi, s))));
                }
            }
        }
        if next.is_empty() {
            break;
        }
        total += next.len();
        if total > cap {
            return Err(Error::ResourceCap {
                what: "ball size",
                cap,
            });
        }
        // Deterministic order: by normal form.
        let mut keyed = next
            .into_iter()
            .map(|(id, p)| Ok((e.normal_form(id)?, id, p)))
            .collect::<Result<Vec<_>>>()?;
        keyed.sort_by(|a, b| a.0.cmp(&b.0));
        spheres.push(keyed.into_iter().map(|(_, id, p)| (id, p)).collect());
    }
    Ok(spheres)
}
