//! Fixture graphs shared by the criterion benches.

use tihany_core::harness::{generate, FamilySpec};
use tihany_core::Multigraph;

pub fn fixture(spec: FamilySpec) -> Multigraph {
    generate(&spec).expect("valid fixture").next().expect("fixture yields a graph")
}
