//! Small named schemes used by tests, examples and the command line.

use super::ProjectiveScheme;

/// `(name, ambient variable count, generators)`.
pub const CATALOG: &[(&str, usize, &[&str])] = &[
    ("p1", 2, &[]),
    ("conic", 3, &["x1*x3 - x2^2"]),
    ("two_lines", 3, &["x1*x2"]),
    ("double_line", 3, &["x1^2"]),
    ("nodal_cubic", 3, &["x2^2*x3 - x1^3 - x1^2*x3"]),
    (
        "twisted_cubic",
        4,
        &["x1*x3 - x2^2", "x1*x4 - x2*x3", "x2*x4 - x3^2"],
    ),
];

pub fn by_name(name: &str) -> Option<ProjectiveScheme> {
    CATALOG
        .iter()
        .find(|(n, _, _)| *n == name)
        .map(|(_, m, g)| ProjectiveScheme::parse(*m, g).expect("catalog entries parse"))
}

pub fn all() -> Vec<(&'static str, ProjectiveScheme)> {
    CATALOG
        .iter()
        .map(|(n, _, _)| (*n, by_name(n).unwrap()))
        .collect()
}
