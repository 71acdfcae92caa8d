//! Small test systems.

use crate::system::CoxeterSystem;

fn build(labels: &[&str], edges: &[(usize, usize, u32)]) -> CoxeterSystem {
    let n = labels.len();
    let mut m = vec![vec![2u32; n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1;
    }
    for &(i, j, v) in edges {
        m[i][j] = v;
        m[j][i] = v;
    }
    CoxeterSystem::new(labels.to_vec(), m).expect("zoo systems are valid")
}

/// Dihedral group of order `2m`; `m = 0` gives the infinite dihedral group.
pub fn dihedral(m: u32) -> CoxeterSystem {
    build(&["s", "t"], &[(0, 1, m)])
}

pub fn a2() -> CoxeterSystem {
    dihedral(3)
}

pub fn i2(m: u32) -> CoxeterSystem {
    dihedral(m)
}

pub fn infinite_dihedral() -> CoxeterSystem {
    dihedral(0)
}

pub fn a3() -> CoxeterSystem {
    build(&["s", "t", "u"], &[(0, 1, 3), (1, 2, 3)])
}

pub fn b3() -> CoxeterSystem {
    build(&["s", "t", "u"], &[(0, 1, 3), (1, 2, 4)])
}

pub fn h3() -> CoxeterSystem {
    build(&["s", "t", "u"], &[(0, 1, 5), (1, 2, 3)])
}

/// Affine `Ã2`: a triangle with all labels 3.
pub fn affine_a2() -> CoxeterSystem {
    build(&["s", "t", "u"], &[(0, 1, 3), (1, 2, 3), (0, 2, 3)])
}

/// Right-angled rank 3: `s` has infinite order with both `t` and `u`, which commute.
pub fn right_angled() -> CoxeterSystem {
    build(&["s", "t", "u"], &[(0, 1, 0), (0, 2, 0), (1, 2, 2)])
}

/// Hyperbolic triangle group with labels `(3, 3, 4)`.
pub fn hyperbolic_334() -> CoxeterSystem {
    build(&["s", "t", "u"], &[(0, 1, 3), (1, 2, 3), (0, 2, 4)])
}

/// The full test zoo as `(name, system)` pairs.
pub fn all() -> Vec<(&'static str, CoxeterSystem)> {
    vec![
        ("A2", a2()),
        ("I2(4)", i2(4)),
        ("I2(5)", i2(5)),
        ("I2(inf)", infinite_dihedral()),
        ("A3", a3()),
        ("B3", b3()),
        ("H3", h3()),
        ("affine-A2", affine_a2()),
        ("right-angled", right_angled()),
        ("hyperbolic-334", hyperbolic_334()),
    ]
}
