//! The six water-jug style cases shipped with the crate: hand-encoded
//! specifications and their natural-language problem descriptions.

use crate::dsl::{parse, Diagnostic, SpecDocument};
use crate::space::ProblemInstance;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Case {
    /// File stem and instance label, e.g. `f_4_9_to_6`.
    pub label: &'static str,
    /// Short display name, e.g. `F(4,9)->6`.
    pub name: &'static str,
    pub spec: &'static str,
    pub problem: &'static str,
    /// Known minimum solution length.
    pub min_solution: usize,
}

macro_rules! case {
    ($label:literal, $name:literal, $len:expr) => {
        Case {
            label: $label,
            name: $name,
            spec: include_str!(concat!("../data/specs/", $label, ".pspace")),
            problem: include_str!(concat!("../data/problems/", $label, ".txt")),
            min_solution: $len,
        }
    };
}

pub const CASES: [Case; 6] = [
    case!("f_4_9_to_6", "F(4,9)->6", 8),
    case!("f_3_5_to_4", "F(3,5)->4", 6),
    case!("f_9_17_to_5", "F(9,17)->5", 20),
    case!("v_4qt_9gal_to_6gal", "V(4qt,9gal)->6gal", 6),
    case!("v_2_3_5_to_4", "V(2,3,5)->4", 4),
    case!("a_4_9_to_6", "A(4,9)->6", 8),
];

pub fn case(label: &str) -> Option<&'static Case> {
    CASES.iter().find(|c| c.label == label)
}

impl Case {
    pub fn document(&self) -> Result<SpecDocument, Diagnostic> {
        parse(self.spec)
    }

    /// The case's instance. Bundled specs are known to parse.
    pub fn instance(&self) -> ProblemInstance {
        self.document()
            .expect("bundled spec parses")
            .instance(Some(self.label))
            .expect("bundled instance builds")
    }

    /// Problem description with the trailing newline removed.
    pub fn problem_text(&self) -> &'static str {
        self.problem.strip_suffix('\n').unwrap_or(self.problem)
    }
}
