//! Bundled cone families used by the examples, the tests and the fixture files.

use crate::cones::{ConeFamily, PolyhedralCone};
use crate::geometry::Vector;

/// Rays through `e₁`, `e₂` and `−(e₁+e₂)` in the plane: generating, every
/// decomposition is forced up to one free parameter.
pub fn three_rays() -> ConeFamily {
    ConeFamily::new(
        2,
        vec![
            PolyhedralCone::from_rows("e1", &[&[1.0, 0.0]]),
            PolyhedralCone::from_rows("e2", &[&[0.0, 1.0]]),
            PolyhedralCone::from_rows("-(e1+e2)", &[&[-1.0, -1.0]]),
        ],
    )
    .expect("valid family")
}

/// The first quadrant together with the wedge `{(u, v) : u ≥ |v|}`:
/// every pair of translates meets.
pub fn quadrant_and_wedge() -> ConeFamily {
    ConeFamily::new(
        2,
        vec![
            PolyhedralCone::from_rows("C1", &[&[1.0, 0.0], &[0.0, 1.0]]),
            PolyhedralCone::from_rows("C2", &[&[1.0, 1.0], &[1.0, -1.0]]),
        ],
    )
    .expect("valid family")
}

pub fn orthant(dim: usize) -> PolyhedralCone {
    PolyhedralCone::new("C", (0..dim).map(|i| Vector::basis(dim, i, 1.0)).collect())
        .expect("valid cone")
}

/// `{C, −C}` for the positive orthant of `R^dim`: the lattice decomposition
/// `x = x⁺ − x⁻` is the unique minimal one under `l1`.
pub fn orthant_pair(dim: usize) -> ConeFamily {
    let c = orthant(dim);
    let neg = c.negated("-C");
    ConeFamily::new(dim, vec![c, neg]).expect("valid family")
}

/// `{C, C}` for the positive orthant: every pair of translates meets above
/// the coordinatewise maximum.
pub fn orthant_twice(dim: usize) -> ConeFamily {
    let mut second = orthant(dim);
    second.label = "C'".into();
    ConeFamily::new(dim, vec![orthant(dim), second]).expect("valid family")
}

/// Rays through `e₁` and `e₂`: neither generating nor coadditive.
pub fn two_rays() -> ConeFamily {
    ConeFamily::new(
        2,
        vec![
            PolyhedralCone::from_rows("e1", &[&[1.0, 0.0]]),
            PolyhedralCone::from_rows("e2", &[&[0.0, 1.0]]),
        ],
    )
    .expect("valid family")
}

/// One cone generated by `±e_i`, i.e. the whole space.
pub fn whole_space(dim: usize) -> ConeFamily {
    let gens = (0..dim)
        .flat_map(|i| [Vector::basis(dim, i, 1.0), Vector::basis(dim, i, -1.0)])
        .collect();
    ConeFamily::new(dim, vec![PolyhedralCone::new("X", gens).expect("valid cone")])
        .expect("valid family")
}
