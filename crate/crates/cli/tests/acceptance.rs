//! Acceptance criteria over the test zoo. Prints one PASS/FAIL line per
//! criterion, then asserts that every criterion passes except the ones
//! listed in `EXPECTED_FAILURES`, which must fail in exactly the recorded way.

use std::collections::BTreeSet;
use std::io::Write;
use std::path::PathBuf;
use std::process::Command;

use coxeter_conj::complex::{self, Residue};
use coxeter_conj::conjugacy;
use coxeter_conj::parabolic::{self, DiagramAutomorphism};
use coxeter_conj::verify::{run_suite, RunReport, VerifyConfig};
use coxeter_conj::{zoo, CoxeterSystem, Element, GenSubset};

/// Criterion 4 fails on these systems: rotating a reduced word by several
/// letters can reach a conjugate of equal length whose intermediate one-letter
/// rotations dip below it, so the kappa closure is strictly larger.
const EXPECTED_FAILURES: &[(usize, &[&str])] = &[(4, &["affine-A2", "hyperbolic-334"])];

const L: usize = 8;

fn cfg(max_length: usize) -> VerifyConfig {
    VerifyConfig {
        max_length,
        ..VerifyConfig::default()
    }
}

struct Outcome {
    number: usize,
    title: &'static str,
    failing_systems: Vec<String>,
    notes: Vec<String>,
}

impl Outcome {
    fn new(number: usize, title: &'static str) -> Self {
        Outcome {
            number,
            title,
            failing_systems: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn pass(&self) -> bool {
        self.failing_systems.is_empty() && self.notes.is_empty()
    }

    fn absorb(&mut self, report: &RunReport) {
        if !report.ok() {
            self.failing_systems.push(report.system.clone());
            self.notes.push(format!(
                "{} {}: {}/{} failed, e.g. {}",
                report.suite,
                report.system,
                report.failures,
                report.cases,
                report.witnesses.first().map_or("", String::as_str)
            ));
        }
    }

    fn fail(&mut self, note: String) {
        self.notes.push(note);
    }
}

fn suite_over(o: &mut Outcome, systems: &[(&str, CoxeterSystem)], suite: &str, config: &VerifyConfig) -> usize {
    let mut cases = 0;
    for (name, sys) in systems {
        let r = run_suite(sys, name, suite, config).unwrap();
        cases += r.cases;
        o.absorb(&r);
    }
    cases
}

fn el(sys: &CoxeterSystem, w: &str) -> Element {
    sys.element(w).unwrap()
}

fn sub(sys: &CoxeterSystem, labels: &str) -> GenSubset {
    GenSubset::from_gens(labels.split_whitespace().map(|l| sys.generator_index(l).unwrap()))
}

fn criterion_4(zoo: &[(&str, CoxeterSystem)]) -> Outcome {
    let mut o = Outcome::new(4, "kappa closure equals shift closure, length <= 6");
    suite_over(&mut o, zoo, "lemma36", &cfg(6));
    // Where the sets differ, the minimum lengths still agree.
    for (name, sys) in zoo {
        for w in sys.ball(6, 1 << 20).unwrap() {
            let (shift, min) = conjugacy::shift_closure(sys, &w).unwrap();
            let kappa = conjugacy::kappa_closure(sys, &w, 200_000).unwrap();
            let kmin = kappa.iter().map(Element::length).min().unwrap();
            let contained = shift.iter().all(|x| kappa.contains(x));
            if kmin != min || !contained {
                o.fail(format!("{name}: w={} has kappa min {kmin}, shift min {min}", sys.format_element(&w)));
            }
        }
    }
    o
}

fn criterion_5(zoo: &[(&str, CoxeterSystem)]) -> Outcome {
    let mut o = Outcome::new(5, "Lusztig decompositions");
    suite_over(&mut o, zoo, "lustzig", &cfg(L));
    let at = zoo::affine_a2();
    let d = parabolic::lusztig_decompose(&at, &el(&at, "s u t s u t u"), sub(&at, "u")).unwrap();
    let got = (at.format_element(&d.w_i), at.format_element(&d.n_i));
    if got != ("u".to_owned(), "s u t s u t".to_owned()) {
        o.fail(format!("affine-A2 s u t s u t u with {{u}}: got {got:?}"));
    }
    o
}

fn criterion_8(zoo: &[(&str, CoxeterSystem)]) -> Outcome {
    let mut o = Outcome::new(8, "complex layer");
    let config = VerifyConfig {
        max_length: L,
        samples: 10_000,
        ..VerifyConfig::default()
    };
    let gate_cases = suite_over(&mut o, zoo, "gate", &config);
    if gate_cases < 10_000 * zoo.len() {
        o.fail(format!("only {gate_cases} gate cases"));
    }
    suite_over(&mut o, zoo, "convexity", &cfg(6));
    let at = zoo::affine_a2();
    let r = Residue::new(&at, &el(&at, "u s t u"), sub(&at, "s t")).unwrap();
    let p = complex::project(&at, &r, &at.identity()).unwrap();
    if at.format_element(&p) != "u s t u" {
        o.fail(format!("projection of C0 is {}", at.format_element(&p)));
    }
    let a2 = zoo::a2();
    let sample = complex::cmin_in_ball(&a2, &el(&a2, "s"), 3).unwrap();
    if sample.gallery_components(&a2).unwrap().len() < 2 {
        o.fail("CMin(s) in A2 is gallery-connected".into());
    }
    o
}

fn criterion_9() -> Outcome {
    let mut o = Outcome::new(9, "twisted minimal closures");
    for m in [3, 4, 5] {
        let sys = zoo::i2(m);
        let swap = DiagramAutomorphism::from_pairs(&[(0, 1), (1, 0)]).unwrap();
        for z in sys.parabolic_elements(sys.all_generators()).unwrap() {
            let (_, min) = conjugacy::twisted_min_closure(&sys, &z, &swap).unwrap();
            let brute = conjugacy::twisted_class_brute(&sys, &z, &swap).unwrap();
            let bmin = brute.iter().map(Element::length).min().unwrap();
            if min != bmin {
                o.fail(format!("I2({m}) swap, z={}: {min} vs {bmin}", sys.format_element(&z)));
            }
        }
    }
    let systems = [
        ("A2", zoo::a2()),
        ("I2(4)", zoo::i2(4)),
        ("I2(5)", zoo::i2(5)),
        ("affine-A2", zoo::affine_a2()),
    ];
    suite_over(&mut o, &systems, "twisted", &cfg(L));
    o
}

fn coxconj(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_coxconj")).args(args).output().unwrap();
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap())
}

fn system_file(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "systems", name].iter().collect();
    p.to_str().unwrap().to_owned()
}

fn criterion_10() -> Outcome {
    let mut o = Outcome::new(10, "CLI golden outputs");
    let a2 = system_file("a2.cox");
    let (code, out) = coxconj(&["conj-test", &a2, "s", "t"]);
    if code != 0 {
        o.fail(format!("conj-test A2 s t exited {code}"));
    }
    // Replay the printed chain independently.
    let json: serde_json::Value = serde_json::from_str(&out).unwrap();
    let sys = zoo::a2();
    let mut cur = el(&sys, json["start"].as_str().unwrap());
    for step in json["chain"].as_array().unwrap() {
        let from = el(&sys, step["from"].as_str().unwrap());
        let to = el(&sys, step["to"].as_str().unwrap());
        let x = match step["kind"].as_str().unwrap() {
            "tight2" => el(&sys, step["x"].as_str().unwrap()),
            _ => el(&sys, step["generator"].as_str().unwrap()),
        };
        let lengths_ok = match step["kind"].as_str().unwrap() {
            "shift" => to.length() <= from.length(),
            "unshift" => to.length() >= from.length(),
            _ => to.length() == from.length(),
        };
        let ok = from == cur && sys.conjugate(&from, &x).unwrap() == to && lengths_ok;
        if !ok {
            o.fail(format!("step {step} does not replay"));
        }
        cur = to;
    }
    if cur != el(&sys, "t") {
        o.fail("certificate does not end at t".into());
    }
    let (code, _) = coxconj(&["conj-test", &system_file("i2-4.cox"), "s", "t"]);
    if code != 1 {
        o.fail(format!("conj-test I2(4) s t exited {code}"));
    }
    let dir = std::env::temp_dir();
    let dots: Vec<String> = (0..2)
        .map(|i| {
            let path = dir.join(format!("coxconj-acceptance-{}-{i}.dot", std::process::id()));
            let p = path.to_str().unwrap().to_owned();
            coxconj(&["tight-graph", &system_file("affine-a2.cox"), "s t u", "--dot", &p]);
            let text = std::fs::read_to_string(&path).unwrap();
            let _ = std::fs::remove_file(&path);
            text
        })
        .collect();
    if dots[0] != dots[1] || dots[0].is_empty() {
        o.fail("DOT output differs between runs".into());
    }
    let runs = [
        vec!["conj-min", &a2, "s", "--all"],
        vec!["conj-test", &a2, "s", "t"],
        vec!["reduce", &a2, "s t s t"],
        vec!["straight", &a2, "s t"],
        vec!["verify", &a2, "--suite", "thmA1", "--max-length", "3"],
    ];
    for args in runs {
        let (c1, a) = coxconj(&args);
        let (c2, b) = coxconj(&args);
        // Wall time is the one field allowed to differ.
        let strip = |s: &str| s.lines().filter(|l| !l.contains("wall_time_ms")).collect::<Vec<_>>().join("\n");
        if c1 != c2 || strip(&a) != strip(&b) {
            o.fail(format!("{args:?} is not stable"));
        }
    }
    o
}

#[test]
fn acceptance() {
    let zoo = zoo::all();
    let mut outcomes = Vec::new();

    let mut o = Outcome::new(1, "shift closures reach the class minimum");
    suite_over(&mut o, &zoo, "thmA1", &cfg(L));
    outcomes.push(o);

    let mut o = Outcome::new(2, "tight closure equals the minimal set");
    suite_over(&mut o, &zoo, "thmA2", &cfg(L));
    outcomes.push(o);

    let mut o = Outcome::new(3, "straight classes are shift-connected");
    suite_over(&mut o, &zoo, "thmA3", &cfg(L));
    outcomes.push(o);

    outcomes.push(criterion_4(&zoo));
    outcomes.push(criterion_5(&zoo));

    let mut o = Outcome::new(6, "parabolic subset conjugators");
    suite_over(&mut o, &zoo, "parabolic", &cfg(L));
    outcomes.push(o);

    let mut o = Outcome::new(7, "exact and numeric engines agree, words <= 10");
    suite_over(&mut o, &zoo, "engines", &cfg(10));
    outcomes.push(o);

    outcomes.push(criterion_8(&zoo));
    outcomes.push(criterion_9());
    outcomes.push(criterion_10());

    // Written to stderr directly so the report survives output capture.
    let mut err = std::io::stderr().lock();
    let mut unexpected = Vec::new();
    for o in &outcomes {
        let status = if o.pass() { "PASS" } else { "FAIL" };
        writeln!(err, "criterion {:>2}: {status}  {}", o.number, o.title).unwrap();
        for n in &o.notes {
            writeln!(err, "    {n}").unwrap();
        }
        let expected = EXPECTED_FAILURES.iter().find(|(k, _)| *k == o.number);
        match expected {
            None if !o.pass() => unexpected.push(o.number),
            Some((_, systems)) => {
                let want: BTreeSet<&str> = systems.iter().copied().collect();
                let got: BTreeSet<&str> = o.failing_systems.iter().map(String::as_str).collect();
                if got != want || o.notes.len() != o.failing_systems.len() {
                    unexpected.push(o.number);
                }
            }
            None => {}
        }
    }
    assert!(unexpected.is_empty(), "criteria with unexpected outcomes: {unexpected:?}");
}
