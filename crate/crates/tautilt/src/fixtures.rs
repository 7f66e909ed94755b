//! Built-in algebras used throughout the tests and by the command-line tool.

use std::sync::Arc;

use crate::algebra::{build_algebra, path_algebra, tensor_construction, Algebra, Quiver, Relation};
use crate::error::{Error, Result};

pub const NAMES: &[&str] = &[
    "a1",
    "a2",
    "a3",
    "a3-rad2",
    "dual-numbers",
    "r-xy",
    "example-7",
    "a2-dual-numbers",
    "a3-dual-numbers",
];

pub fn a1() -> Algebra {
    path_algebra(Quiver::linear(1)).unwrap()
}

/// Path algebra of `1 → 2`.
pub fn a2() -> Algebra {
    path_algebra(Quiver::linear(2)).unwrap()
}

/// Path algebra of `1 → 2 → 3`.
pub fn a3() -> Algebra {
    path_algebra(Quiver::linear(3)).unwrap()
}

/// `k(1 → 2 → 3)` modulo the square of the arrow ideal.
pub fn a3_rad2() -> Algebra {
    let q = Quiver::linear(3);
    let r = Relation::from_labels(&q, &[(1, &["a1", "a2"])]).unwrap();
    build_algebra(q, vec![r], 2).unwrap()
}

/// `k[x]/(x²)`.
pub fn dual_numbers() -> Algebra {
    let q = Quiver::from_labels(&["1"], &[("x", "1", "1")]).unwrap();
    let r = Relation::from_labels(&q, &[(1, &["x", "x"])]).unwrap();
    build_algebra(q, vec![r], 2).unwrap()
}

/// `k[x, y]/(x², y², xy − yx)`.
pub fn r_xy() -> Algebra {
    let q = Quiver::from_labels(&["1"], &[("x", "1", "1"), ("y", "1", "1")]).unwrap();
    let rels = vec![
        Relation::from_labels(&q, &[(1, &["x", "x"])]).unwrap(),
        Relation::from_labels(&q, &[(1, &["y", "y"])]).unwrap(),
        Relation::from_labels(&q, &[(1, &["x", "y"]), (-1, &["y", "x"])]).unwrap(),
    ];
    build_algebra(q, rels, 3).unwrap()
}

/// The field itself, as a one-vertex algebra.
pub fn trivial_local() -> Algebra {
    build_algebra(Quiver::linear(1), Vec::new(), 2).unwrap()
}

/// `k[x, y]/(x², y², xy − yx) ⊗ k(1 → 2)`.
pub fn example7() -> Algebra {
    tensor_construction(&Arc::new(r_xy()), &Quiver::linear(2)).unwrap()
}

pub fn a2_dual_numbers() -> Algebra {
    tensor_construction(&Arc::new(dual_numbers()), &Quiver::linear(2)).unwrap()
}

pub fn a3_dual_numbers() -> Algebra {
    tensor_construction(&Arc::new(dual_numbers()), &Quiver::linear(3)).unwrap()
}

pub fn by_name(name: &str) -> Result<Algebra> {
    Ok(match name {
        "a1" => a1(),
        "a2" => a2(),
        "a3" => a3(),
        "a3-rad2" => a3_rad2(),
        "dual-numbers" => dual_numbers(),
        "r-xy" => r_xy(),
        "example-7" => example7(),
        "a2-dual-numbers" => a2_dual_numbers(),
        "a3-dual-numbers" => a3_dual_numbers(),
        _ => {
            return Err(Error::Parse(format!(
                "unknown fixture {name:?}; known: {}",
                NAMES.join(", ")
            )))
        }
    })
}
