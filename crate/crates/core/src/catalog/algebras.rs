//! The five six-dimensional nilpotent algebras admitting neither symplectic
//! nor complex structures, by their bracket lists.

use crate::lie_algebra::LieAlg;

pub const ALGEBRA_IDS: [&str; 6] = ["g1", "g2", "g3", "g4", "g5", "abelian6"];

fn brackets(id: &str) -> Option<&'static [(usize, usize, usize, i64)]> {
    Some(match id {
        "g1" => &[(1, 2, 3, 1), (1, 3, 4, 1), (1, 4, 5, 1), (2, 3, 5, 1), (3, 4, 6, 1), (2, 5, 6, -1)],
        "g2" => &[(1, 2, 3, 1), (1, 3, 4, 1), (1, 4, 5, 1), (3, 4, 6, 1), (2, 5, 6, -1)],
        "g3" => &[(1, 2, 4, 1), (1, 3, 5, 1), (1, 4, 6, 1), (3, 5, 6, 1)],
        "g4" => &[(1, 2, 4, 1), (2, 3, 5, 1), (1, 4, 6, 1), (3, 5, 6, 1)],
        "g5" => &[(1, 2, 5, 1), (1, 5, 6, 1), (3, 4, 6, 1)],
        "abelian6" => &[],
        _ => return None,
    })
}

/// Catalog algebra by id (`g1`..`g5`, `abelian6`).
pub fn algebra(id: &str) -> Option<LieAlg> {
    brackets(id).map(|b| LieAlg::from_basis_brackets(6, b).expect("catalog brackets are valid"))
}

pub fn g1() -> LieAlg {
    algebra("g1").expect("known id")
}

pub fn g2() -> LieAlg {
    algebra("g2").expect("known id")
}

pub fn g3() -> LieAlg {
    algebra("g3").expect("known id")
}

pub fn g4() -> LieAlg {
    algebra("g4").expect("known id")
}

pub fn g5() -> LieAlg {
    algebra("g5").expect("known id")
}
