//! The fixture algebras used across tests, examples and golden reports.
//!
//! All are built over the default prime field F_101. The JSON files under
//! `fixtures/` are the single source of truth; they are parsed through the
//! same code path as user input.

use crate::algebra::FinDimAlgebra;
use crate::io;

pub const A2_JSON: &str = include_str!("../fixtures/a2.json");
pub const A3_JSON: &str = include_str!("../fixtures/a3.json");
pub const N3_JSON: &str = include_str!("../fixtures/n3.json");
pub const KRONECKER_JSON: &str = include_str!("../fixtures/kronecker.json");
pub const A3_REL_JSON: &str = include_str!("../fixtures/a3rel.json");

fn parse(doc: &str) -> FinDimAlgebra {
    io::parse_algebra_str(doc).expect("fixture algebra must parse")
}

/// Quiver 1 --a--> 2, no relations.
pub fn a2() -> FinDimAlgebra {
    parse(A2_JSON)
}

/// Linear quiver 1 --a--> 2 --b--> 3, no relations.
pub fn a3() -> FinDimAlgebra {
    parse(A3_JSON)
}

/// One vertex, one loop x, relation x*x*x.
pub fn n3() -> FinDimAlgebra {
    parse(N3_JSON)
}

/// Two parallel arrows 1 => 2; g-infinite.
pub fn kronecker() -> FinDimAlgebra {
    parse(KRONECKER_JSON)
}

/// Linear A3 with the composite a*b killed.
pub fn a3_rel() -> FinDimAlgebra {
    parse(A3_REL_JSON)
}

pub fn all() -> Vec<FinDimAlgebra> {
    vec![a2(), a3(), n3(), kronecker(), a3_rel()]
}

/// The g-finite fixtures, with display names.
pub fn g_finite() -> Vec<(&'static str, FinDimAlgebra)> {
    vec![("a2", a2()), ("a3", a3()), ("n3", n3()), ("a3rel", a3_rel())]
}
