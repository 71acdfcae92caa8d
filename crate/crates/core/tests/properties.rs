use coxeter_conj::conjugacy;
use coxeter_conj::parabolic;
use coxeter_conj::{zoo, CoxeterSystem, GenSubset, Word};
use proptest::prelude::*;

fn system(index: usize) -> (&'static str, CoxeterSystem) {
    let mut all = zoo::all();
    all.swap_remove(index % all.len())
}

fn word(rank: usize, raw: &[u8]) -> Word {
    Word::new(raw.iter().map(|&x| x % rank as u8).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn reduction_is_a_congruence(k in 0usize..10, a in prop::collection::vec(any::<u8>(), 0..12), b in prop::collection::vec(any::<u8>(), 0..12)) {
        let (_, sys) = system(k);
        let (a, b) = (word(sys.rank(), &a), word(sys.rank(), &b));
        let ea = sys.reduce(&a).unwrap();
        let eb = sys.reduce(&b).unwrap();
        prop_assert_eq!(sys.reduce(&a.concat(&b)).unwrap(), sys.multiply(&ea, &eb).unwrap());
        prop_assert!(ea.length() <= a.len());
        prop_assert_eq!(ea.length() % 2, a.len() % 2);
        prop_assert!(sys.multiply(&ea, &sys.inverse(&ea).unwrap()).unwrap().is_identity());
    }

    #[test]
    fn descents_lower_the_length(k in 0usize..10, a in prop::collection::vec(any::<u8>(), 0..14)) {
        let (_, sys) = system(k);
        let w = sys.reduce(&word(sys.rank(), &a)).unwrap();
        let right = sys.right_descents(&w).unwrap();
        let left = sys.left_descents(&w).unwrap();
        for s in sys.generators() {
            let g = sys.generator(s);
            prop_assert_eq!(right.contains(s), sys.multiply(&w, &g).unwrap().length() < w.length());
            prop_assert_eq!(left.contains(s), sys.multiply(&g, &w).unwrap().length() < w.length());
        }
    }

    #[test]
    fn conjugates_share_their_minimal_set(k in 0usize..10, a in prop::collection::vec(any::<u8>(), 0..8), x in prop::collection::vec(any::<u8>(), 0..5)) {
        let (_, sys) = system(k);
        let w = sys.reduce(&word(sys.rank(), &a)).unwrap();
        let x = sys.reduce(&word(sys.rank(), &x)).unwrap();
        let v = sys.conjugate(&w, &x).unwrap();
        let cw = conjugacy::conj_min(&sys, &w).unwrap();
        let cv = conjugacy::conj_min(&sys, &v).unwrap();
        prop_assert_eq!(&cw.o_min, &cv.o_min);
        let cert = conjugacy::are_conjugate(&sys, &w, &v).unwrap().expect("conjugate");
        prop_assert!(cert.replay(&sys).unwrap());
    }

    #[test]
    fn coset_decompositions_are_additive(k in 0usize..10, a in prop::collection::vec(any::<u8>(), 0..12), mask in 0u32..8) {
        let (_, sys) = system(k);
        let w = sys.reduce(&word(sys.rank(), &a)).unwrap();
        let i = GenSubset(mask & ((1 << sys.rank()) - 1));
        let (wi, m) = parabolic::min_coset_rep_left(&sys, i, &w).unwrap();
        prop_assert_eq!(sys.multiply(&wi, &m).unwrap(), w.clone());
        prop_assert_eq!(wi.length() + m.length(), w.length());
        prop_assert!(parabolic::in_standard_parabolic(&wi, i));
        prop_assert!(sys.left_descents(&m).unwrap().intersection(i).is_empty());
    }
}

#[test]
fn longest_elements_of_spherical_parabolics() {
    for (name, sys) in zoo::all() {
        for i in GenSubset::all(sys.rank()).filter(|i| sys.is_spherical(*i)) {
            let w0 = parabolic::longest_element(&sys, i).unwrap();
            let elems = sys.parabolic_elements(i).unwrap();
            let max = elems.iter().map(|e| e.length()).max().unwrap();
            assert_eq!(w0.length(), max, "{name}");
            assert!(sys.multiply(&w0, &w0).unwrap().is_identity());
            assert_eq!(sys.right_descents(&w0).unwrap(), i);
            assert_eq!(sys.left_descents(&w0).unwrap(), i);
        }
    }
}

#[test]
fn system_text_round_trips() {
    for (name, sys) in zoo::all() {
        let text = sys.to_text();
        let back = CoxeterSystem::parse(&text).unwrap();
        assert_eq!(back.to_text(), text, "{name}");
    }
}
