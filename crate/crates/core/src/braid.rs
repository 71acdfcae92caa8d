//! Braid-move closures of words (Tits' solution of the word problem).

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::system::{CoxeterSystem, Order};
use crate::word::{Generator, Word};

/// Default bound on the size of a braid closure.
pub const DEFAULT_BRAID_CAP: usize = 200_000;

/// Words obtained from `w` by one braid move.
fn braid_neighbours(sys: &CoxeterSystem, w: &[Generator]) -> Vec<Vec<Generator>> {
    let mut out = Vec::new();
    for i in 0..w.len().saturating_sub(1) {
        let (a, b) = (w[i], w[i + 1]);
        if a == b {
            continue;
        }
        let m = match sys.order(a, b) {
            Order::Finite(m) => m as usize,
            Order::Infinite => continue,
        };
        if i + m > w.len() {
            continue;
        }
        if (0..m).all(|k| w[i + k] == if k % 2 == 0 { a } else { b }) {
            let mut v = w.to_vec();
            for k in 0..m {
                v[i + k] = if k % 2 == 0 { b } else { a };
            }
            out.push(v);
        }
    }
    out
}

fn explore(
    sys: &CoxeterSystem,
    w: &Word,
    cap: usize,
    mut stop: impl FnMut(&[Generator]) -> bool,
) -> Result<(BTreeSet<Word>, bool)> {
    sys.check_word(w)?;
    let mut seen = BTreeSet::from([w.clone()]);
    if stop(w.letters()) {
        return Ok((seen, true));
    }
    let mut queue = VecDeque::from([w.0.clone()]);
    while let Some(v) = queue.pop_front() {
        for n in braid_neighbours(sys, &v) {
            let n = Word(n);
            if seen.contains(&n) {
                continue;
            }
            if seen.len() >= cap {
                return Err(Error::ResourceCap {
                    what: "braid closure size",
                    cap,
                });
            }
            let hit = stop(n.letters());
            queue.push_back(n.0.clone());
            seen.insert(n);
            if hit {
                return Ok((seen, true));
            }
        }
    }
    Ok((seen, false))
}

/// All words obtainable from `w` by braid moves, without cancellations.
pub fn braid_closure(sys: &CoxeterSystem, w: &Word, cap: usize) -> Result<BTreeSet<Word>> {
    Ok(explore(sys, w, cap, |_| false)?.0)
}

/// A word is reduced iff no word in its braid closure contains a square.
/// Stops as soon as a square is found.
pub fn is_reduced(sys: &CoxeterSystem, w: &Word, cap: usize) -> Result<bool> {
    Ok(!explore(sys, w, cap, |v| Word::from(v).has_square())?.1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;

    #[test]
    fn a2_braid_closure() {
        let sys = zoo::a2();
        let c = braid_closure(&sys, &sys.parse_word("s t s").unwrap(), 10).unwrap();
        let words: Vec<String> = c.iter().map(|w| sys.format_word(w)).collect();
        assert_eq!(words, vec!["s t s", "t s t"]);
        assert_eq!(braid_closure(&sys, &Word::empty(), 10).unwrap().len(), 1);
    }

    #[test]
    fn reducedness_by_closure() {
        let a2 = zoo::a2();
        assert!(is_reduced(&a2, &a2.parse_word("s t s").unwrap(), 100).unwrap());
        assert!(!is_reduced(&a2, &a2.parse_word("s s").unwrap(), 100).unwrap());
        assert!(!is_reduced(&a2, &a2.parse_word("s t s t").unwrap(), 100).unwrap());
        let at = zoo::affine_a2();
        assert!(is_reduced(&at, &at.parse_word("s u t s u t u").unwrap(), 1000).unwrap());
    }

    #[test]
    fn closure_size_is_stable_under_larger_cap() {
        let at = zoo::affine_a2();
        let w = at.parse_word("s u t s u t").unwrap();
        let small = braid_closure(&at, &w, DEFAULT_BRAID_CAP).unwrap();
        let large = braid_closure(&at, &w, 2 * DEFAULT_BRAID_CAP).unwrap();
        assert_eq!(small, large);
        assert!(small.contains(&w));
        assert!(small.iter().all(|v| v.len() == 6));
    }

    #[test]
    fn cap_is_reported() {
        let b3 = zoo::b3();
        let w = b3.parse_word("s t u s t u s t u").unwrap();
        assert!(matches!(braid_closure(&b3, &w, 3), Err(Error::ResourceCap { .. })));
    }
}
