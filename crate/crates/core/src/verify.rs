//! Property suites over a Coxeter system. Each suite enumerates its cases,
//! compares the calculus against brute-force oracles, and reports failures
//! with witnesses.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::braid;
use crate::complex::{self, Residue};
use crate::conjugacy::{self, DEFAULT_NMAX};
use crate::error::{Error, Result};
use crate::geom::{self, GramMatrix};
use crate::parabolic::{self, DiagramAutomorphism};
use crate::system::{CoxeterSystem, DEFAULT_BALL_CAP};
use crate::word::{Element, GenSubset, Generator, Word};

/// Names accepted by [`run_suite`]. `lusztig` is accepted as an alias of
/// `lustzig`.
pub const SUITES: &[&str] = &[
    "thmA1", "thmA2", "thmA3", "lemma36", "engines", "gate", "convexity", "lustzig", "parabolic", "twisted",
];

/// Keep at most this many failure witnesses in a report.
const MAX_WITNESSES: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyConfig {
    /// Longest element (or word) enumerated.
    pub max_length: usize,
    /// Oracle radius; `None` grows the radius from `ℓ(w) + 4` until the
    /// minimal set stabilizes.
    pub radius: Option<usize>,
    pub nmax: usize,
    /// Run the convexity suite on corrupted samples (negative control).
    pub corrupt: bool,
    /// Number of sampled triples in the gate suite.
    pub samples: usize,
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            max_length: 8,
            radius: None,
            nmax: DEFAULT_NMAX,
            corrupt: false,
            samples: 10_000,
            seed: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Params {
    pub max_length: usize,
    pub radius: Option<usize>,
    pub nmax: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunReport {
    pub suite: String,
    pub system: String,
    pub params: Params,
    pub cases: usize,
    pub passes: usize,
    pub failures: usize,
    pub witnesses: Vec<String>,
    pub wall_time_ms: u64,
}

impl RunReport {
    pub fn ok(&self) -> bool {
        self.failures == 0
    }
}

struct Tally {
    cases: usize,
    failures: usize,
    witnesses: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            cases: 0,
            failures: 0,
            witnesses: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.witnesses.len() < MAX_WITNESSES {
                self.witnesses.push(witness());
            }
        }
    }
}

/// Runs one suite. `system_name` is only used in the report.
pub fn run_suite(sys: &CoxeterSystem, system_name: &str, suite: &str, cfg: &VerifyConfig) -> Result<RunReport> {
    let start = Instant::now();
    let mut t = Tally::new();
    match suite {
        "thmA1" => shifts_reach_minimum(sys, cfg, &mut t)?,
        "thmA2" => tight_closure_is_minimal_set(sys, cfg, &mut t)?,
        "thmA3" => straight_classes_shift_connected(sys, cfg, &mut t)?,
        "lemma36" => kappa_matches_shift(sys, cfg, &mut t)?,
        "engines" => engines(sys, cfg, &mut t)?,
        "gate" => gate(sys, cfg, &mut t)?,
        "convexity" => convexity(sys, cfg, &mut t)?,
        "lustzig" | "lusztig" => lusztig(sys, cfg, &mut t)?,
        "parabolic" => parabolic_suite(sys, cfg, &mut t)?,
        "twisted" => twisted(sys, cfg, &mut t)?,
        other => return Err(Error::Precondition(format!("unknown suite `{other}`"))),
    }
    Ok(RunReport {
        suite: suite.to_owned(),
        system: system_name.to_owned(),
        params: Params {
            max_length: cfg.max_length,
            radius: cfg.radius,
            nmax: cfg.nmax,
        },
        cases: t.cases,
        passes: t.cases - t.failures,
        failures: t.failures,
        witnesses: t.witnesses,
        wall_time_ms: start.elapsed().as_millis() as u64,
    })
}

fn fmt(sys: &CoxeterSystem, w: &Element) -> String {
    if w.is_identity() {
        "1".to_owned()
    } else {
        sys.format_element(w)
    }
}

fn fmt_set(sys: &CoxeterSystem, v: &[Element]) -> String {
    let parts: Vec<String> = v.iter().map(|x| fmt(sys, x)).collect();
    format!("[{}]", parts.join(", "))
}

fn oracle(sys: &CoxeterSystem, w: &Element, cfg: &VerifyConfig) -> Result<conjugacy::OracleResult> {
    match cfg.radius {
        Some(r) => conjugacy::omin_oracle(sys, w, r),
        None => conjugacy::omin_oracle_stable(sys, w, 2 * w.length() + 12),
    }
}

fn elements(sys: &CoxeterSystem, max_length: usize) -> Result<Vec<Element>> {
    sys.ball(max_length, DEFAULT_BALL_CAP)
}

/// Shift closures reach the class minimum, and cyclically reduced elements
/// are exactly the minimal ones.
fn shifts_reach_minimum(sys: &CoxeterSystem, cfg: &VerifyConfig, t: &mut Tally) -> Result<()> {
    for w in elements(sys, cfg.max_length)? {
        let (closure, min) = conjugacy::shift_closure(sys, &w)?;
        let o = oracle(sys, &w, cfg)?;
        let cyclically_reduced = closure.iter().all(|x| x.length() == w.length());
        let minimal = w.length() == o.min_length;
        t.check(o.stable && min == o.min_length && cyclically_reduced == minimal, || {
            format!(
                "w={}: shift min {min}, oracle min {} (stable {}), cyclically reduced {cyclically_reduced}",
                fmt(sys, &w),
                o.min_length,
                o.stable
            )
        });
    }
    Ok(())
}

/// The tight closure of one minimal element is the whole minimal set.
fn tight_closure_is_minimal_set(sys: &CoxeterSystem, cfg: &VerifyConfig, t: &mut Tally) -> Result<()> {
    let mut classes: BTreeMap<Element, Vec<Element>> = BTreeMap::new();
    for w in elements(sys, cfg.max_length)? {
        let c = conjugacy::conj_min(sys, &w)?;
        classes.entry(c.o_min[0].clone()).or_insert(c.o_min);
    }
    for (key, o_min) in classes {
        let o = oracle(sys, &key, cfg)?;
        t.check(o.stable && o.minimal == o_min, || {
            format!(
                "class of {}: tight closure {}, oracle {}",
                fmt(sys, &key),
                fmt_set(sys, &o_min),
                fmt_set(sys, &o.minimal)
            )
        });
    }
    Ok(())
}

/// Bounded-straight elements have a shift-connected minimal set, and
/// straightness is constant on it.
fn straight_classes_shift_connected(sys: &CoxeterSystem, cfg: &VerifyConfig, t: &mut Tally) -> Result<()> {
    for w in elements(sys, cfg.max_length)? {
        if !conjugacy::is_straight_bounded(sys, &w, cfg.nmax)? {
            continue;
        }
        let connected = conjugacy::straight_class_shift_connected(sys, &w)?;
        let c = conjugacy::conj_min(sys, &w)?;
        let mut constant = true;
        for u in &c.o_min {
            constant &= conjugacy::is_straight_bounded(sys, u, cfg.nmax)?;
        }
        t.check(connected && constant && c.min_length == w.length(), || {
            format!(
                "w={}: connected {connected}, straight on O_min {constant}, min {}",
                fmt(sys, &w),
                c.min_length
            )
        });
    }
    Ok(())
}

/// κ-closures coincide with shift closures.
fn kappa_matches_shift(sys: &CoxeterSystem, cfg: &VerifyConfig, t: &mut Tally) -> Result<()> {
    for w in elements(sys, cfg.max_length.min(6))? {
        let (shift, _) = conjugacy::shift_closure(sys, &w)?;
        let kappa = conjugacy::kappa_closure(sys, &w, braid::DEFAULT_BRAID_CAP)?;
        t.check(shift == kappa, || {
            format!(
                "w={}: shift {}, kappa {}",
                fmt(sys, &w),
                fmt_set(sys, &shift),
                fmt_set(sys, &kappa)
            )
        });
    }
    Ok(())
}

/// All words of length at most `max_length`, in lexicographic order.
fn all_words(rank: usize, max_length: usize) -> impl Iterator<Item = Word> {
    (0..=max_length).flat_map(move |len| {
        let total = rank.pow(len as u32);
        (0..total).map(move |mut code| {
            let mut v = vec![0 as Generator; len];
            for x in v.iter_mut().rev() {
                *x = (code % rank) as Generator;
                code /= rank;
            }
            Word(v)
        })
    })
}

/// Braid closures are only cross-checked up to this length.
const BRAID_CHECK_LENGTH: usize = 6;

/// The exact engine, the numeric representation and (for short words) the
/// braid-closure rewriter agree on reducedness and descents.
fn engines(sys: &CoxeterSystem, cfg: &VerifyConfig, t: &mut Tally) -> Result<()> {
    let g = GramMatrix::new(sys);
    for w in all_words(sys.rank(), cfg.max_length) {
        let exact = sys.word_length(&w)? == w.len();
        let numeric = geom::is_reduced_geom(&g, &w);
        let mut ok = matches!(numeric, Ok(r) if r == exact);
        if w.len() <= BRAID_CHECK_LENGTH {
            ok &= braid::is_reduced(sys, &w, braid::DEFAULT_BRAID_CAP)? == exact;
        }
        if exact {
            let a = sys.reduce(&w)?;
            let left = geom::left_descents_word(&g, &w);
            let right = geom::right_descents_word(&g, &w);
            ok &= matches!(left, Ok(d) if d == sys.left_descents(&a)?);
            ok &= matches!(right, Ok(d) if d == sys.right_descents(&a)?);
        }
        t.check(ok, || format!("word [{}]: exact reduced {exact}", sys.format_word(&w)));
    }
    Ok(())
}

fn spherical_subsets_with_empty(sys: &CoxeterSystem) -> Vec<GenSubset> {
    GenSubset::all(sys.rank()).filter(|i| sys.is_spherical(*i)).collect()
}

/// Gate property, idempotence and contraction of projections on sampled
/// triples, and projection monotonicity for residues fixed by `w`.
fn gate(sys: &CoxeterSystem, cfg: &VerifyConfig, t: &mut Tally) -> Result<()> {
    let ball = elements(sys, cfg.max_length.min(6))?;
    let types = spherical_subsets_with_empty(sys);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for _ in 0..cfg.samples {
        let d = &ball[rng.gen_range(0..ball.len())];
        let v = &ball[rng.gen_range(0..ball.len())];
        let typ = types[rng.gen_range(0..types.len())];
        let r = Residue::new(sys, v, typ)?;
        let chambers = r.chambers(sys)?;
        let e = &chambers[rng.gen_range(0..chambers.len())];
        let p = complex::project(sys, &r, d)?;
        let dp = complex::distance(sys, d, &p)?;
        let gate_ok = complex::distance(sys, d, e)? == dp + complex::distance(sys, &p, e)?;
        let idem = complex::project(sys, &r, &p)? == p;
        let d2 = &ball[rng.gen_range(0..ball.len())];
        let p2 = complex::project(sys, &r, d2)?;
        let contract = complex::distance(sys, &p, &p2)? <= complex::distance(sys, d, d2)?;
        t.check(gate_ok && idem && contract, || {
            format!(
                "R=({}, {}), D={}, E={}",
                fmt(sys, r.base()),
                sys.format_subset(typ),
                fmt(sys, d),
                fmt(sys, e)
            )
        });
    }
    // Monotonicity: residues v W_I with v⁻¹ w v ∈ W_I.
    let small = elements(sys, cfg.max_length.min(4))?;
    let mut tried = 0;
    for w in &small {
        for v in &small {
            for &typ in &types {
                if typ.is_empty() || tried >= cfg.samples {
                    continue;
                }
                let r = Residue::new(sys, v, typ)?;
                let c = sys.conjugate(w, r.base())?;
                if !parabolic::in_standard_parabolic(&c, typ) {
                    continue;
                }
                tried += 1;
                let d = &ball[rng.gen_range(0..ball.len())];
                let ok = complex::projection_monotonicity(sys, w, &r, d)?;
                t.check(ok, || {
                    format!(
                        "monotonicity w={}, R=({}, {}), D={}",
                        fmt(sys, w),
                        fmt(sys, r.base()),
                        sys.format_subset(typ),
                        fmt(sys, d)
                    )
                });
            }
        }
    }
    Ok(())
}

/// `CMin(w)` is `w`-convex, and galleries inside it induce shifts.
fn convexity(sys: &CoxeterSystem, cfg: &VerifyConfig, t: &mut Tally) -> Result<()> {
    for w in elements(sys, cfg.max_length.min(6))? {
        let radius = cfg.radius.unwrap_or(w.length() + 3);
        let sample = complex::cmin_in_ball(sys, &w, radius)?;
        let sample = if cfg.corrupt {
            match sample.corrupted(sys) {
                Ok(s) => s,
                Err(_) => continue,
            }
        } else {
            sample
        };
        let convex = complex::check_w_convexity_sample(sys, &sample)?;
        t.check(convex, || format!("w={}: CMin sample of radius {radius} is not w-convex", fmt(sys, &w)));
        if cfg.corrupt {
            continue;
        }
        // Each chamber and its in-sample neighbours.
        let mut consistent = true;
        for c in sample.members.iter().take(8) {
            for s in sys.generators() {
                let d = sys.multiply(c, &sys.generator(s))?;
                if sample.members.contains(&d) {
                    consistent &= complex::gallery_shift_consistency(sys, &sample, c, &d)?;
                }
            }
        }
        t.check(consistent, || format!("w={}: gallery does not induce shifts", fmt(sys, &w)));
    }
    Ok(())
}

/// Lusztig decompositions are additive and induce diagram automorphisms.
fn lusztig(sys: &CoxeterSystem, cfg: &VerifyConfig, t: &mut Tally) -> Result<()> {
    for w in elements(sys, cfg.max_length)? {
        for i in GenSubset::all(sys.rank()) {
            if !parabolic::normalizer_test(sys, &w, i)? {
                continue;
            }
            let d = parabolic::lusztig_decompose(sys, &w, i)?;
            let mut ok = sys.multiply(&d.w_i, &d.n_i)? == w
                && d.w_i.length() + d.n_i.length() == w.length()
                && parabolic::in_standard_parabolic(&d.w_i, i)
                && d.delta.is_diagram_automorphism(sys);
            for s in i.iter() {
                ok &= sys.conjugate(&sys.generator(s), &d.n_i)? == sys.generator(d.delta.apply(s));
            }
            t.check(ok, || {
                format!(
                    "w={}, I={}: w_I={}, n_I={}",
                    fmt(sys, &w),
                    sys.format_subset(i),
                    fmt(sys, &d.w_i),
                    fmt(sys, &d.n_i)
                )
            });
        }
    }
    Ok(())
}

/// Radius of the brute-force subset-conjugator search.
const SUBSET_ORACLE_RADIUS: usize = 10;

/// The move search succeeds exactly when a conjugator exists in a ball, and
/// its result is a valid additive product.
fn parabolic_suite(sys: &CoxeterSystem, _cfg: &VerifyConfig, t: &mut Tally) -> Result<()> {
    let subsets: Vec<GenSubset> = GenSubset::all(sys.rank()).collect();
    for &i in &subsets {
        for &j in &subsets {
            if i.len() != j.len() {
                continue;
            }
            let found = conjugacy::parabolic_conjugator(sys, i, j)?;
            let brute = conjugacy::subset_conjugator_in_ball(sys, i, j, SUBSET_ORACLE_RADIUS)?;
            let mut ok = found.is_some() == brute.is_some();
            if let Some(pc) = &found {
                let mut image = GenSubset::EMPTY;
                for s in i.iter() {
                    let c = sys.conjugate(&sys.generator(s), &pc.x)?;
                    match c.letters() {
                        [g] => image.insert(*g),
                        _ => ok = false,
                    }
                }
                let total: usize = pc.moves.iter().map(|m| m.x.length()).sum();
                let product = pc
                    .moves
                    .iter()
                    .try_fold(sys.identity(), |acc, m| sys.multiply(&acc, &m.x))?;
                ok &= image == j && total == pc.x.length() && product == pc.x;
            }
            t.check(ok, || {
                format!(
                    "I={}, J={}: moves {}, ball search {}",
                    sys.format_subset(i),
                    sys.format_subset(j),
                    found.as_ref().map_or("none".into(), |p| fmt(sys, &p.x)),
                    brute.as_ref().map_or("none".into(), |x| fmt(sys, x))
                )
            });
        }
    }
    Ok(())
}

/// All label-preserving permutations of `i`.
pub fn diagram_automorphisms(sys: &CoxeterSystem, i: GenSubset) -> Vec<DiagramAutomorphism> {
    fn perms(items: &[Generator]) -> Vec<Vec<Generator>> {
        if items.is_empty() {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for k in 0..items.len() {
            let mut rest = items.to_vec();
            let x = rest.remove(k);
            for mut p in perms(&rest) {
                p.insert(0, x);
                out.push(p);
            }
        }
        out
    }
    let dom: Vec<Generator> = i.iter().collect();
    perms(&dom)
        .into_iter()
        .filter_map(|img| {
            let pairs: Vec<(Generator, Generator)> = dom.iter().copied().zip(img).collect();
            DiagramAutomorphism::from_pairs(&pairs).ok()
        })
        .filter(|d| d.is_diagram_automorphism(sys))
        .collect()
}

/// Twisted shift closures reach the minimum of the twisted class, for every
/// diagram automorphism of every spherical parabolic and for the
/// automorphisms induced by Lusztig decompositions.
fn twisted(sys: &CoxeterSystem, cfg: &VerifyConfig, t: &mut Tally) -> Result<()> {
    let mut cases: BTreeSet<(GenSubset, Vec<(Generator, Generator)>, Element)> = BTreeSet::new();
    for i in spherical_subsets_with_empty(sys) {
        for d in diagram_automorphisms(sys, i) {
            for z in sys.parabolic_elements(i)? {
                cases.insert((i, d.pairs(), z));
            }
        }
    }
    for w in elements(sys, cfg.max_length)? {
        for i in spherical_subsets_with_empty(sys) {
            if parabolic::normalizer_test(sys, &w, i)? {
                let d = parabolic::lusztig_decompose(sys, &w, i)?;
                cases.insert((i, d.delta.pairs(), d.w_i));
            }
        }
    }
    for (i, pairs, z) in cases {
        let delta = if pairs.is_empty() {
            DiagramAutomorphism::identity(i)
        } else {
            DiagramAutomorphism::from_pairs(&pairs)?
        };
        let (_, min) = conjugacy::twisted_min_closure(sys, &z, &delta)?;
        let brute = conjugacy::twisted_class_brute(sys, &z, &delta)?;
        let brute_min = brute.iter().map(Element::length).min().unwrap_or(0);
        t.check(min == brute_min, || {
            format!(
                "I={}, delta={delta}, z={}: closure min {min}, brute min {brute_min}",
                sys.format_subset(i),
                fmt(sys, &z)
            )
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;

    fn quick(suite: &str, sys: &CoxeterSystem, max_length: usize) -> RunReport {
        let cfg = VerifyConfig {
            max_length,
            samples: 200,
            ..VerifyConfig::default()
        };
        run_suite(sys, "test", suite, &cfg).unwrap()
    }

    #[test]
    fn every_suite_passes_on_a2() {
        let a2 = zoo::a2();
        for suite in SUITES {
            let r = quick(suite, &a2, 3);
            assert!(r.ok(), "{suite}: {:?}", r.witnesses);
            assert!(r.cases > 0, "{suite} ran no cases");
        }
    }

    #[test]
    fn corrupted_convexity_fails() {
        let a2 = zoo::a2();
        let cfg = VerifyConfig {
            max_length: 3,
            corrupt: true,
            ..VerifyConfig::default()
        };
        let r = run_suite(&a2, "A2", "convexity", &cfg).unwrap();
        assert!(r.failures > 0);
    }

    #[test]
    fn unknown_suite_is_rejected() {
        let a2 = zoo::a2();
        assert!(run_suite(&a2, "A2", "nope", &VerifyConfig::default()).is_err());
    }

    #[test]
    fn word_enumeration() {
        let words: Vec<Word> = all_words(2, 2).collect();
        assert_eq!(words.len(), 1 + 2 + 4);
        assert_eq!(words[3], Word(vec![0, 0]));
    }
}
