//! Shared fixtures for the benchmarks.

use wmp_cli::parse_matrix_file;
use wmp_core::{RfMatrix, WeightedProblem};

macro_rules! fixture {
    ($name:literal) => {
        parse_matrix_file(include_str!(concat!("../../cli/tests/fixtures/", $name))).expect($name)
    };
}

/// A named weighted problem with polynomial or rational entries.
pub struct Case {
    pub name: &'static str,
    pub problem: WeightedProblem,
    pub polynomial: bool,
}

pub fn cases() -> Vec<Case> {
    let m41: RfMatrix = fixture!("wpoly_m.txt");
    let n41: RfMatrix = fixture!("wpoly_n.txt");
    let w43: RfMatrix = fixture!("wsym_w.txt");
    let case = |name, a, m, n, polynomial| Case {
        name,
        problem: WeightedProblem::new(a, m, n).expect(name),
        polynomial,
    };
    vec![
        case("wpoly", fixture!("wpoly_a.txt"), m41.clone(), n41.clone(), true),
        case("wrat", fixture!("wrat_a.txt"), m41, n41, false),
        case("wsym", fixture!("wsym_a.txt"), w43.clone(), w43, true),
        Case {
            name: "hess",
            problem: WeightedProblem::unweighted(fixture!("hess_a.txt")),
            polynomial: true,
        },
    ]
}

/// A symmetric weight for the inverse benchmarks.
pub fn weight() -> RfMatrix {
    fixture!("wsym_w.txt")
}

/// Text of the largest example output, for parser benchmarks.
pub fn sample_output() -> &'static str {
    include_str!("../../cli/tests/fixtures/wpoly_x.txt")
}
