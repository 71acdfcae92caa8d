//! Recognition of finite Coxeter diagrams.

use std::fmt;

use crate::system::{CoxeterSystem, Order};
use crate::word::{GenSubset, Generator};

/// Irreducible finite Coxeter types.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FiniteType {
    A(usize),
    B(usize),
    D(usize),
    E(usize),
    F4,
    H(usize),
    I2(u32),
}

impl fmt::Display for FiniteType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiniteType::A(n) => write!(f, "A{n}"),
            FiniteType::B(n) => write!(f, "B{n}"),
            FiniteType::D(n) => write!(f, "D{n}"),
            FiniteType::E(n) => write!(f, "E{n}"),
            FiniteType::F4 => f.write_str("F4"),
            FiniteType::H(n) => write!(f, "H{n}"),
            FiniteType::I2(m) => write!(f, "I2({m})"),
        }
    }
}

/// Connected components of the Coxeter diagram restricted to `subset`
/// (edges join generators with `m_st ≥ 3` or `∞`).
pub fn components(sys: &CoxeterSystem, subset: GenSubset) -> Vec<GenSubset> {
    let mut left = subset;
    let mut out = Vec::new();
    while let Some(start) = left.first() {
        let mut comp = GenSubset::singleton(start);
        let mut stack = vec![start];
        while let Some(s) = stack.pop() {
            for t in left.iter() {
                if !comp.contains(t) && sys.order(s, t) != Order::Finite(2) && s != t {
                    comp.insert(t);
                    stack.push(t);
                }
            }
        }
        left = left.difference(comp);
        out.push(comp);
    }
    out
}

/// Classifies every component of the diagram on `subset`. Returns `None`
/// as soon as one component is not of finite type.
pub fn classify_components(sys: &CoxeterSystem, subset: GenSubset) -> Option<Vec<FiniteType>> {
    components(sys, subset)
        .into_iter()
        .map(|c| classify_irreducible(sys, c))
        .collect()
}

fn label(sys: &CoxeterSystem, s: Generator, t: Generator) -> Option<u32> {
    sys.order(s, t).finite()
}

fn classify_irreducible(sys: &CoxeterSystem, comp: GenSubset) -> Option<FiniteType> {
    let nodes: Vec<Generator> = comp.iter().collect();
    let n = nodes.len();
    if n == 1 {
        return Some(FiniteType::A(1));
    }
    let mut edges = Vec::new();
    for (i, &s) in nodes.iter().enumerate() {
        for &t in &nodes[i + 1..] {
            match sys.order(s, t) {
                Order::Infinite => return None,
                Order::Finite(2) => {}
                Order::Finite(m) => edges.push((s, t, m)),
            }
        }
    }
    if n == 2 {
        let m = edges[0].2;
        return Some(match m {
            3 => FiniteType::A(2),
            4 => FiniteType::B(2),
            _ => FiniteType::I2(m),
        });
    }
    // Connected with n nodes: must be a tree.
    if edges.len() != n - 1 {
        return None;
    }
    if edges.iter().any(|e| e.2 > 5) {
        return None;
    }
    let degree = |s: Generator| edges.iter().filter(|e| e.0 == s || e.1 == s).count();
    let branch: Vec<Generator> = nodes.iter().copied().filter(|&s| degree(s) >= 3).collect();
    if branch.iter().any(|&s| degree(s) > 3) || branch.len() > 1 {
        return None;
    }
    if let Some(&centre) = branch.first() {
        if edges.iter().any(|e| e.2 != 3) {
            return None;
        }
        let mut arms: Vec<usize> = nodes
            .iter()
            .copied()
            .filter(|&t| t != centre && label(sys, centre, t).is_some_and(|m| m >= 3))
            .map(|t| arm_length(sys, comp, centre, t))
            .collect();
        arms.sort_unstable();
        return match arms.as_slice() {
            [1, 1, k] => Some(FiniteType::D(k + 3)),
            [1, 2, 2] => Some(FiniteType::E(6)),
            [1, 2, 3] => Some(FiniteType::E(7)),
            [1, 2, 4] => Some(FiniteType::E(8)),
            _ => None,
        };
    }
    // A path: read the labels from one end to the other.
    let end = nodes.iter().copied().find(|&s| degree(s) == 1)?;
    let mut labels = Vec::with_capacity(n - 1);
    let mut prev = end;
    let mut cur = edges
        .iter()
        .find_map(|e| if e.0 == end { Some(e.1) } else if e.1 == end { Some(e.0) } else { None })?;
    labels.push(label(sys, prev, cur)?);
    while labels.len() < n - 1 {
        let next = nodes
            .iter()
            .copied()
            .find(|&t| t != prev && t != cur && label(sys, cur, t).is_some_and(|m| m >= 3))?;
        labels.push(label(sys, cur, next)?);
        prev = cur;
        cur = next;
    }
    let special: Vec<(usize, u32)> = labels
        .iter()
        .copied()
        .enumerate()
        .filter(|&(_, m)| m != 3)
        .collect();
    match special.as_slice() {
        [] => Some(FiniteType::A(n)),
        [(i, 4)] if *i == 0 || *i == n - 2 => Some(FiniteType::B(n)),
        [(1, 4)] if n == 4 => Some(FiniteType::F4),
        [(i, 5)] if (*i == 0 || *i == n - 2) && (n == 3 || n == 4) => Some(FiniteType::H(n)),
        _ => None,
    }
}

/// Number of nodes on the arm starting at `first`, walking away from `centre`.
fn arm_length(sys: &CoxeterSystem, comp: GenSubset, centre: Generator, first: Generator) -> usize {
    let mut len = 1;
    let mut prev = centre;
    let mut cur = first;
    loop {
        let next = comp
            .iter()
            .find(|&t| t != prev && t != cur && label(sys, cur, t).is_some_and(|m| m >= 3));
        match next {
            Some(t) => {
                len += 1;
                prev = cur;
                cur = t;
            }
            None => return len,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn linear(labels: &[u32]) -> CoxeterSystem {
        let n = labels.len() + 1;
        let mut m = vec![vec![2; n]; n];
        for i in 0..n {
            m[i][i] = 1;
        }
        for (i, &l) in labels.iter().enumerate() {
            m[i][i + 1] = l;
            m[i + 1][i] = l;
        }
        let names: Vec<String> = (0..n).map(|i| format!("g{i}")).collect();
        CoxeterSystem::new(names, m).unwrap()
    }

    fn star(arms: &[usize]) -> CoxeterSystem {
        let n = 1 + arms.iter().sum::<usize>();
        let mut m = vec![vec![2; n]; n];
        for i in 0..n {
            m[i][i] = 1;
        }
        let mut next = 1;
        for &a in arms {
            let mut prev = 0;
            for _ in 0..a {
                m[prev][next] = 3;
                m[next][prev] = 3;
                prev = next;
                next += 1;
            }
        }
        let names: Vec<String> = (0..n).map(|i| format!("g{i}")).collect();
        CoxeterSystem::new(names, m).unwrap()
    }

    fn ty(sys: &CoxeterSystem) -> Option<Vec<FiniteType>> {
        classify_components(sys, sys.all_generators())
    }

    #[test]
    fn recognizes_linear_types() {
        assert_eq!(ty(&linear(&[3, 3])), Some(vec![FiniteType::A(3)]));
        assert_eq!(ty(&linear(&[3, 4])), Some(vec![FiniteType::B(3)]));
        assert_eq!(ty(&linear(&[4, 3, 3])), Some(vec![FiniteType::B(4)]));
        assert_eq!(ty(&linear(&[3, 4, 3])), Some(vec![FiniteType::F4]));
        assert_eq!(ty(&linear(&[5, 3])), Some(vec![FiniteType::H(3)]));
        assert_eq!(ty(&linear(&[3, 3, 5])), Some(vec![FiniteType::H(4)]));
        assert_eq!(ty(&linear(&[6])), Some(vec![FiniteType::I2(6)]));
        assert_eq!(ty(&linear(&[0])), None);
        assert_eq!(ty(&linear(&[4, 4])), None, "affine C2");
        assert_eq!(ty(&linear(&[3, 3, 3, 5])), None, "H5 does not exist");
        assert_eq!(ty(&linear(&[3, 4, 3, 3])), None, "affine F4");
        assert_eq!(ty(&linear(&[6, 3])), None, "affine G2");
    }

    #[test]
    fn recognizes_branched_types() {
        assert_eq!(ty(&star(&[1, 1, 1])), Some(vec![FiniteType::D(4)]));
        assert_eq!(ty(&star(&[1, 1, 3])), Some(vec![FiniteType::D(6)]));
        assert_eq!(ty(&star(&[1, 2, 2])), Some(vec![FiniteType::E(6)]));
        assert_eq!(ty(&star(&[1, 2, 4])), Some(vec![FiniteType::E(8)]));
        assert_eq!(ty(&star(&[2, 2, 2])), None, "affine E6");
        assert_eq!(ty(&star(&[1, 2, 5])), None, "affine E8");
    }

    #[test]
    fn triangle_and_disconnected_subsets() {
        let sys = CoxeterSystem::new(
            vec!["s", "t", "u"],
            vec![vec![1, 3, 3], vec![3, 1, 3], vec![3, 3, 1]],
        )
        .unwrap();
        assert_eq!(ty(&sys), None);
        assert_eq!(classify_components(&sys, GenSubset(0b011)), Some(vec![FiniteType::A(2)]));
        assert_eq!(classify_components(&sys, GenSubset(0b100)), Some(vec![FiniteType::A(1)]));
        assert_eq!(classify_components(&sys, GenSubset::EMPTY), Some(vec![]));
        let ra = CoxeterSystem::new(
            vec!["s", "t", "u"],
            vec![vec![1, 0, 0], vec![0, 1, 2], vec![0, 2, 1]],
        )
        .unwrap();
        assert_eq!(
            classify_components(&ra, GenSubset(0b110)),
            Some(vec![FiniteType::A(1), FiniteType::A(1)])
        );
        assert_eq!(classify_components(&ra, GenSubset(0b011)), None);
    }
}
