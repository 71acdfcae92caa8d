use super::*;
use crate::zoo;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn el(sys: &CoxeterSystem, w: &str) -> Element {
    sys.element(w).unwrap()
}

fn sub(sys: &CoxeterSystem, labels: &str) -> GenSubset {
    GenSubset::from_gens(labels.split_whitespace().map(|l| sys.generator_index(l).unwrap()))
}

#[test]
fn projection_onto_vertex_residue() {
    let at = zoo::affine_a2();
    let r = Residue::new(&at, &el(&at, "u s t u"), sub(&at, "s t")).unwrap();
    assert_eq!(r.base(), &el(&at, "u s t u"));
    let p = project(&at, &r, &at.identity()).unwrap();
    assert_eq!(at.format_element(&p), "u s t u");
    let inside = el(&at, "u s t u s");
    assert_eq!(project(&at, &r, &inside).unwrap(), inside);
}

#[test]
fn gate_property_on_random_triples() {
    let at = zoo::affine_a2();
    let ball = at.ball(5, 10_000).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..300 {
        let d = &ball[rng.gen_range(0..ball.len())];
        let v = &ball[rng.gen_range(0..ball.len())];
        let typ = GenSubset(rng.gen_range(0..7));
        let r = Residue::new(&at, v, typ).unwrap();
        let p = project(&at, &r, d).unwrap();
        assert!(r.contains(&at, &p).unwrap());
        let dp = distance(&at, d, &p).unwrap();
        for x in r.chambers(&at).unwrap() {
            assert_eq!(distance(&at, d, &x).unwrap(), dp + distance(&at, &p, &x).unwrap());
        }
    }
}

#[test]
fn parallel_residues() {
    let at = zoo::affine_a2();
    let u = sub(&at, "u");
    let w = el(&at, "s u t s u t u");
    let r1 = Residue::new(&at, &at.identity(), u).unwrap();
    let r2 = Residue::new(&at, &w, u).unwrap();
    assert!(parallel(&at, &r1, &r1).unwrap());
    assert!(parallel(&at, &r1, &r2).unwrap());
    let uw = at.multiply(&at.generator(2), &w).unwrap();
    assert_eq!(project(&at, &r2, &at.identity()).unwrap(), uw);
    assert_eq!(project(&at, &r2, &at.generator(2)).unwrap(), w);
    let r3 = Residue::new(&at, &at.identity(), sub(&at, "s")).unwrap();
    assert!(!parallel(&at, &r1, &r3).unwrap());
    let big = Residue::new(&at, &at.identity(), at.all_generators()).unwrap();
    assert!(matches!(parallel(&at, &big, &r1), Err(Error::NotSpherical(_))));
}

#[test]
fn intervals() {
    let a2 = zoo::a2();
    let one = a2.identity();
    assert_eq!(interval(&a2, &one, &one).unwrap(), vec![one.clone()]);
    assert_eq!(interval(&a2, &one, &el(&a2, "s t s")).unwrap().len(), 6);
    let s = a2.generator(0);
    assert_eq!(interval(&a2, &s, &one).unwrap(), vec![one.clone(), s.clone()]);
    // Independent check against the defining distance identity.
    let at = zoo::affine_a2();
    let ball = at.ball(4, 1000).unwrap();
    let (c, d) = (el(&at, "t"), el(&at, "t s u t"));
    let dcd = distance(&at, &c, &d).unwrap();
    let expected: Vec<Element> = ball
        .iter()
        .filter(|x| distance(&at, &c, x).unwrap() + distance(&at, x, &d).unwrap() == dcd)
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    assert_eq!(interval(&at, &c, &d).unwrap(), expected);
}

#[test]
fn cmin_of_a_reflection_in_a2() {
    let a2 = zoo::a2();
    let sample = cmin_in_ball(&a2, &el(&a2, "s"), 3).unwrap();
    let got: Vec<String> = sample.members.iter().map(|x| a2.format_element(x)).collect();
    assert_eq!(got, vec!["", "s", "t s", "s t s"]);
    assert_eq!(sample.gallery_components(&a2).unwrap().len(), 2);
    let all = cmin_in_ball(&a2, &a2.identity(), 3).unwrap();
    assert_eq!(all.members.len(), 6);
}

#[test]
fn convexity_and_negative_control() {
    let a2 = zoo::a2();
    assert!(check_w_convexity(&a2, &a2.identity(), 3).unwrap());
    let sample = cmin_in_ball(&a2, &el(&a2, "s"), 3).unwrap();
    assert!(check_w_convexity_sample(&a2, &sample).unwrap());
    let bad = sample.corrupted(&a2).unwrap();
    assert!(!check_w_convexity_sample(&a2, &bad).unwrap());
    let at = zoo::affine_a2();
    assert!(check_w_convexity(&at, &el(&at, "s t u"), 7).unwrap());
}

#[test]
fn gallery_consistency() {
    let at = zoo::affine_a2();
    let w = el(&at, "s t u");
    let sample = cmin_in_ball(&at, &w, 5).unwrap();
    let comps = sample.gallery_components(&at).unwrap();
    for comp in comps.iter().take(3) {
        let v: Vec<&Element> = comp.iter().take(6).collect();
        for c in &v {
            for d in &v {
                assert!(gallery_shift_consistency(&at, &sample, c, d).unwrap());
            }
        }
    }
}

#[test]
fn stabilizer_condition() {
    let at = zoo::affine_a2();
    let r = Residue::new(&at, &at.identity(), sub(&at, "u")).unwrap();
    assert!(stab_condition(&at, &at.identity(), &r).unwrap());
    assert!(stab_condition(&at, &el(&at, "s u t s u t u"), &r).unwrap());
    assert!(!stab_condition(&at, &el(&at, "s"), &r).unwrap());
}

#[test]
fn exploration() {
    let a2 = zoo::a2();
    // For w = 1 every spherical residue qualifies for step (II) and every
    // chamber lies in CMin(1), so the closure is the whole finite group.
    let x = cw_explore(&a2, &a2.identity(), 100).unwrap();
    assert_eq!(x.chambers, a2.ball(3, 10).unwrap().into_iter().collect::<BTreeSet<_>>().into_iter().collect::<Vec<_>>());
    assert!(!x.exhausted);
    let s = el(&a2, "s");
    let x = cw_explore(&a2, &s, 100).unwrap();
    assert!(x.chambers.iter().any(|c| pi_w(&a2, &s, c).unwrap() == a2.generator(1)));
    let at = zoo::affine_a2();
    let w = el(&at, "s t u");
    let x = cw_explore(&at, &w, 5).unwrap();
    assert!(x.exhausted);
    assert_eq!(x.expansions, 5);
}

#[test]
fn projections_do_not_increase_displacement() {
    let a2 = zoo::a2();
    let w0 = el(&a2, "s t s");
    for (v, typ) in [("t", "s"), ("s", "t")] {
        let r = Residue::new(&a2, &el(&a2, v), sub(&a2, typ)).unwrap();
        for d in a2.ball(3, 10).unwrap() {
            assert!(projection_monotonicity(&a2, &w0, &r, &d).unwrap());
        }
    }
    let r = Residue::new(&a2, &a2.identity(), sub(&a2, "s")).unwrap();
    assert!(matches!(
        projection_monotonicity(&a2, &w0, &r, &a2.identity()),
        Err(Error::Precondition(_))
    ));
}
